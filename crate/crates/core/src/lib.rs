//! Chip-firing on based oriented multigraphs: divisors and theta divisors, partial
//! orientations and their Chern classes, signed cyclic bijections, rigidity, and
//! lifting rigid morphisms or matroid isomorphisms to graph isomorphisms.

pub mod divisor;
pub mod error;
pub mod fixtures;
mod flow;
pub mod homology;
pub mod io;
pub mod multigraph;
pub mod orcyc;
pub mod orientation;

pub use divisor::{Divisor, DivisorClass, Speciality};
pub use error::{Error, Result};
pub use homology::{Cochain, CycleLattice};
pub use multigraph::{build_graph, Arch, EdgePath, Multigraph};
pub use orcyc::{OrCycMorphism, RigidityReport, Witness};
pub use orientation::{EdgeState, PartialOrientation};
