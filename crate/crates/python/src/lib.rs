//! Python bindings. Divisors cross the boundary as `{vertex: int}` dicts, orientations as
//! `{edge: "F" | "B" | "U" | "X"}` dicts, and edge maps as `{source_edge: target_edge}`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rigidlift_core::divisor::{self, Speciality};
use rigidlift_core::multigraph::{self, Multigraph};
use rigidlift_core::orcyc::{self, MatroidLift};
use rigidlift_core::orientation::{self, Certificate, EdgeState, LiftOutcome, PartialOrientation};
use rigidlift_core::{fixtures, io, Divisor, DivisorClass, OrCycMorphism};

pyo3::create_exception!(rigidlift, RigidliftError, PyValueError);

fn err(e: rigidlift_core::Error) -> PyErr {
    RigidliftError::new_err(e.to_string())
}

type Dmap = BTreeMap<String, i64>;

fn to_divisor(g: &Multigraph, d: &Dmap) -> PyResult<Divisor> {
    let mut out = Divisor::zero(g.num_vertices());
    for (v, k) in d {
        out[g.vertex(v).map_err(err)?] += k;
    }
    Ok(out)
}

fn from_divisor(g: &Multigraph, d: &Divisor) -> Dmap {
    (0..g.num_vertices())
        .filter(|&v| d[v] != 0)
        .map(|v| (g.vertex_name(v).to_string(), d[v]))
        .collect()
}

fn to_orientation(g: &Multigraph, u: &BTreeMap<String, String>) -> PyResult<PartialOrientation> {
    let mut states = vec![EdgeState::Unoriented; g.num_edges()];
    for (e, s) in u {
        let state = s
            .chars()
            .next()
            .filter(|_| s.len() == 1)
            .and_then(EdgeState::from_letter)
            .ok_or_else(|| RigidliftError::new_err(format!("bad edge state `{s}` for {e}")))?;
        states[g.edge(e).map_err(err)?] = state;
    }
    Ok(PartialOrientation(states))
}

fn from_orientation(g: &Multigraph, u: &PartialOrientation) -> BTreeMap<String, String> {
    (0..g.num_edges())
        .map(|e| (g.edge_name(e).to_string(), u.state(e).letter().to_string()))
        .collect()
}

fn names(g: &Multigraph, h: &Multigraph, map: &[usize], vertices: bool) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(a, &b)| {
            if vertices {
                (g.vertex_name(a).to_string(), h.vertex_name(b).to_string())
            } else {
                (g.edge_name(a).to_string(), h.edge_name(b).to_string())
            }
        })
        .collect()
}

/// A connected multigraph with named, directed edges and a base edge.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(Multigraph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(edges: Vec<(String, String, String)>, base: &str) -> PyResult<Self> {
        multigraph::build_graph(&edges, base).map(PyGraph).map_err(err)
    }

    /// Parses the `edge <id> <tail> <head>` / `base <id>` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_graph(text).map(PyGraph).map_err(err)
    }

    /// Bundled example graphs: "g", "h", "j", "k" or "theta".
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyGraph(match name {
            "g" => fixtures::g(),
            "h" => fixtures::h(),
            "j" => fixtures::j(),
            "k" => fixtures::k(),
            "theta" => fixtures::theta(),
            _ => return Err(RigidliftError::new_err(format!("no fixture named {name}"))),
        }))
    }

    fn to_text(&self) -> String {
        io::format_graph(&self.0)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.0.vertex_names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        self.0.edge_list()
    }

    #[getter]
    fn base_edge(&self) -> String {
        self.0.edge_name(self.0.base_edge()).to_string()
    }

    #[getter]
    fn base_vertex(&self) -> String {
        self.0.vertex_name(self.0.base_vertex()).to_string()
    }

    #[getter]
    fn genus(&self) -> i64 {
        multigraph::genus(&self.0)
    }

    fn is_two_connected(&self) -> bool {
        multigraph::is_two_connected(&self.0)
    }

    fn edge_connectivity(&self) -> usize {
        multigraph::edge_connectivity(&self.0)
    }

    fn series_classes(&self) -> PyResult<Vec<Vec<String>>> {
        let classes = multigraph::series_classes(&self.0).map_err(err)?;
        Ok(classes
            .iter()
            .map(|c| c.iter().map(|&e| self.0.edge_name(e).to_string()).collect())
            .collect())
    }

    /// Number of spanning trees, equal to the order of the Picard group.
    fn spanning_trees(&self) -> num_bigint::BigInt {
        divisor::picard_order(&self.0)
    }

    /// q-reduced form; q defaults to the head of the base edge.
    #[pyo3(signature = (d, q=None))]
    fn reduce(&self, d: Dmap, q: Option<&str>) -> PyResult<Dmap> {
        let q = match q {
            Some(name) => self.0.vertex(name).map_err(err)?,
            None => self.0.base_vertex(),
        };
        let d = to_divisor(&self.0, &d)?;
        Ok(from_divisor(&self.0, &divisor::q_reduce(&self.0, &d, q)))
    }

    fn equivalent(&self, a: Dmap, b: Dmap) -> PyResult<bool> {
        Ok(divisor::linearly_equivalent(&self.0, &to_divisor(&self.0, &a)?, &to_divisor(&self.0, &b)?))
    }

    fn is_effective(&self, d: Dmap) -> PyResult<bool> {
        Ok(divisor::is_effective_class(&self.0, &to_divisor(&self.0, &d)?))
    }

    /// "special" or "nonspecial" for a divisor of degree g - 1.
    fn classify(&self, d: Dmap) -> PyResult<&'static str> {
        Ok(match divisor::classify_gminus1(&self.0, &to_divisor(&self.0, &d)?).map_err(err)? {
            Speciality::Special => "special",
            Speciality::Nonspecial => "nonspecial",
        })
    }

    /// Degree-0 classes of the theta divisor based at the base edge, reduced at its head.
    #[pyo3(signature = (max_classes=divisor::DEFAULT_MAX_CLASSES))]
    fn theta(&self, max_classes: usize) -> PyResult<Vec<Dmap>> {
        let classes = divisor::theta_divisor(&self.0, self.0.base_edge(), max_classes).map_err(err)?;
        Ok(classes.iter().map(|c| from_divisor(&self.0, c.rep())).collect())
    }

    /// Degree-k classes of the Picard group.
    #[pyo3(signature = (degree=0, max_classes=divisor::DEFAULT_MAX_CLASSES))]
    fn picard(&self, degree: i64, max_classes: usize) -> PyResult<Vec<Dmap>> {
        let classes = divisor::enumerate_picard(&self.0, degree, max_classes).map_err(err)?;
        Ok(classes.iter().map(|c| from_divisor(&self.0, c.rep())).collect())
    }

    /// The base orientation: every edge points from tail to head.
    fn base_orientation(&self) -> BTreeMap<String, String> {
        from_orientation(&self.0, &PartialOrientation::base(&self.0))
    }

    fn chern_class(&self, u: BTreeMap<String, String>) -> PyResult<Dmap> {
        let u = to_orientation(&self.0, &u)?;
        Ok(from_divisor(&self.0, &orientation::chern_class(&self.0, &u).map_err(err)?))
    }

    fn is_acyclic(&self, u: BTreeMap<String, String>) -> PyResult<bool> {
        Ok(orientation::is_acyclic(&self.0, &to_orientation(&self.0, &u)?))
    }

    fn is_sourceless(&self, u: BTreeMap<String, String>) -> PyResult<bool> {
        Ok(orientation::is_sourceless(&self.0, &to_orientation(&self.0, &u)?))
    }

    /// Orientation leaving exactly `unoriented` unoriented with Chern class equivalent to d,
    /// or None when there is none.
    #[pyo3(signature = (d, unoriented=Vec::new()))]
    fn lift_divisor(&self, d: Dmap, unoriented: Vec<String>) -> PyResult<Option<BTreeMap<String, String>>> {
        let d = to_divisor(&self.0, &d)?;
        let x = unoriented
            .iter()
            .map(|e| self.0.edge(e))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(match orientation::lift_divisor_to_orientation(&self.0, &d, &x).map_err(err)? {
            LiftOutcome::Lifted(u) => Some(from_orientation(&self.0, &u)),
            _ => None,
        })
    }

    /// Sourceless (effective) or acyclic (not effective) certificate for deg d <= g - 1.
    fn certificate<'py>(&self, py: Python<'py>, d: Dmap) -> PyResult<Bound<'py, PyDict>> {
        let d = to_divisor(&self.0, &d)?;
        let c = orientation::effectiveness_certificate(&self.0, &d).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("branch", if matches!(c, Certificate::Sourceless { .. }) { "sourceless" } else { "acyclic" })?;
        out.set_item("orientation", from_orientation(&self.0, c.orientation()))?;
        out.set_item("divisor", from_divisor(&self.0, c.divisor()))?;
        out.set_item("verified", c.verify(&self.0, &d))?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={}, base={})",
            self.0.num_vertices(),
            self.0.num_edges(),
            self.0.edge_name(self.0.base_edge())
        )
    }
}

/// A base-preserving cyclic bijection between based oriented graphs, with its signs.
#[pyclass(name = "Morphism", frozen)]
struct PyMorphism(OrCycMorphism);

#[pymethods]
impl PyMorphism {
    #[new]
    fn new(source: &PyGraph, target: &PyGraph, edge_map: BTreeMap<String, String>) -> PyResult<Self> {
        let pairs: Vec<(&String, &String)> = edge_map.iter().collect();
        OrCycMorphism::from_names(&source.0, &target.0, &pairs).map(PyMorphism).map_err(err)
    }

    /// G -> H (rigid) or J -> K (not rigid), both by matching edge indices.
    #[staticmethod]
    fn fixture(rigid: bool) -> Self {
        PyMorphism(if rigid {
            fixtures::rigid_morphism()
        } else {
            fixtures::nonrigid_morphism()
        })
    }

    #[getter]
    fn source(&self) -> PyGraph {
        PyGraph(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyGraph {
        PyGraph(self.0.target().clone())
    }

    #[getter]
    fn edge_map(&self) -> BTreeMap<String, String> {
        names(self.0.source(), self.0.target(), self.0.edge_map(), false)
    }

    #[getter]
    fn signs(&self) -> BTreeMap<String, i8> {
        let g = self.0.source();
        (0..g.num_edges()).map(|e| (g.edge_name(e).to_string(), self.0.sign(e))).collect()
    }

    fn inverse(&self) -> Self {
        PyMorphism(self.0.inverse())
    }

    /// Self ∘ first.
    fn after(&self, first: &PyMorphism) -> PyResult<Self> {
        orcyc::compose(&self.0, &first.0).map(PyMorphism).map_err(err)
    }

    /// Pushforward of a degree-0 divisor class.
    fn push_divisor(&self, d: Dmap) -> PyResult<Dmap> {
        let (g, h) = (self.0.source(), self.0.target());
        let pushed = orcyc::push_divisor(&self.0, &to_divisor(g, &d)?);
        Ok(from_divisor(h, DivisorClass::of(h, &pushed).rep()))
    }

    fn push_orientation(&self, u: BTreeMap<String, String>) -> PyResult<BTreeMap<String, String>> {
        let u = to_orientation(self.0.source(), &u)?;
        Ok(from_orientation(self.0.target(), &orcyc::pushforward_orientation(&self.0, &u)))
    }

    /// Rigidity divisor, reduced at the head of the target base edge.
    fn rigidity_divisor(&self) -> Dmap {
        from_divisor(self.0.target(), orcyc::rigidity_divisor(&self.0).rep())
    }

    fn is_rigid(&self) -> PyResult<bool> {
        orcyc::is_rigid(&self.0).map_err(err)
    }

    fn witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let w = orcyc::nonrigidity_witness(&self.0).map_err(err)?;
        let (g, h) = (self.0.source(), self.0.target());
        let out = PyDict::new(py);
        out.set_item("source_class", from_divisor(g, w.source_class.rep()))?;
        out.set_item("image_class", from_divisor(h, w.image_class.rep()))?;
        out.set_item("target_divisor", from_divisor(h, &w.target_divisor))?;
        out.set_item("source_orientation", from_orientation(g, &w.source_orientation))?;
        out.set_item("verified", w.verify(&self.0))?;
        Ok(out)
    }

    fn lift<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let l = orcyc::lift_to_graph_isomorphism(&self.0).map_err(err)?;
        let (g, h) = (self.0.source(), self.0.target());
        let out = PyDict::new(py);
        out.set_item("psi", names(h, h, &l.psi, false))?;
        out.set_item("edge_map", names(g, h, &l.edge_map(&self.0), false))?;
        out.set_item("vertex_map", names(g, h, &l.vertex_map, true))?;
        out.set_item("unique", l.unique)?;
        out.set_item("reverses_base", l.reverses_base)?;
        out.set_item("verified", l.verify(&self.0))?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Morphism({} edges)", self.0.edge_map().len())
    }
}

/// Tries each base image in the series class of φ(ê); returns the first graph isomorphism
/// found, or None with nothing liftable.
#[pyfunction]
fn lift_matroid<'py>(
    py: Python<'py>,
    source: &PyGraph,
    target: &PyGraph,
    edge_map: BTreeMap<String, String>,
) -> PyResult<Bound<'py, PyDict>> {
    let (g, h) = (&source.0, &target.0);
    let mut map = vec![usize::MAX; g.num_edges()];
    for (a, b) in &edge_map {
        map[g.edge(a).map_err(err)?] = h.edge(b).map_err(err)?;
    }
    if map.contains(&usize::MAX) {
        return Err(RigidliftError::new_err("some source edges are unmapped"));
    }
    let out = PyDict::new(py);
    match orcyc::lift_matroid_isomorphism(g, h, &map).map_err(err)? {
        MatroidLift::Lifted {
            base_image,
            edge_map,
            vertex_map,
            unique,
        } => {
            out.set_item("lifted", true)?;
            out.set_item("base_image", h.edge_name(base_image))?;
            out.set_item("edge_map", names(g, h, &edge_map, false))?;
            out.set_item("vertex_map", names(g, h, &vertex_map, true))?;
            out.set_item("unique", unique)?;
        }
        MatroidLift::NotLiftable { tried } => {
            out.set_item("lifted", false)?;
            out.set_item("tried", tried.iter().map(|&w| h.edge_name(w)).collect::<Vec<_>>())?;
        }
    }
    Ok(out)
}

#[pymodule]
fn rigidlift(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(lift_matroid, m)?)?;
    m.add("RigidliftError", m.py().get_type::<RigidliftError>())?;
    Ok(())
}
