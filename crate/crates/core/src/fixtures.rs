//! The two worked pairs (G, H) and (J, K), plus a three-edge theta graph.

use crate::io::parse_graph;
use crate::multigraph::Multigraph;
use crate::orcyc::OrCycMorphism;

pub const G: &str = include_str!("../fixtures/g.graph");
pub const H: &str = include_str!("../fixtures/h.graph");
pub const J: &str = include_str!("../fixtures/j.graph");
pub const K: &str = include_str!("../fixtures/k.graph");
pub const THETA: &str = include_str!("../fixtures/theta.graph");

fn load(text: &str) -> Multigraph {
    parse_graph(text).expect("bundled fixture parses")
}

pub fn g() -> Multigraph {
    load(G)
}

pub fn h() -> Multigraph {
    load(H)
}

pub fn j() -> Multigraph {
    load(J)
}

pub fn k() -> Multigraph {
    load(K)
}

pub fn theta() -> Multigraph {
    load(THETA)
}

fn by_index(a: &Multigraph, b: &Multigraph) -> OrCycMorphism {
    // edge ids e1.. and r1.. sort identically, so index i maps to index i
    let ids: Vec<usize> = (0..a.num_edges()).collect();
    OrCycMorphism::new(a, b, &ids).expect("fixture morphism is valid")
}

/// G → H with e_i ↦ r_i.
pub fn rigid_morphism() -> OrCycMorphism {
    by_index(&g(), &h())
}

/// J → K with e_i ↦ r_i.
pub fn nonrigid_morphism() -> OrCycMorphism {
    by_index(&j(), &k())
}
