use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rigidlift::divisor::{
    classify_gminus1, is_effective_class, linearly_equivalent, picard_order, q_reduce, theta_divisor,
};
use rigidlift::io::{format_divisor, format_orientation, parse_divisor, parse_orientation};
use rigidlift::multigraph::{connectivity_profile, genus, series_classes};
use rigidlift::orcyc::{self, GraphLift, MatroidLift};
use rigidlift::orientation::{
    chern_class, effectiveness_certificate, lift_divisor_to_orientation, Certificate, LiftOutcome,
};
use rigidlift::{fixtures, DivisorClass, Multigraph, OrCycMorphism, PartialOrientation, Speciality, Witness};
use serde_json::{json, Value};

use crate::report::{AnalysisOutput, InfoReport, LiftReport, MatroidReport, Timings, WitnessReport, SCHEMA};
use crate::{load, CliError, DivisorCmd, OrientCmd, Outcome};

pub struct Options {
    pub timings: bool,
    pub max_classes: usize,
}

impl Options {
    fn timings(&self, start: Instant) -> Option<Timings> {
        self.timings.then(|| Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    }
}

fn to_value<T: serde::Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn with_input(path: &Path, r: rigidlift::Result<rigidlift::Divisor>) -> Result<rigidlift::Divisor, CliError> {
    r.map_err(|e| CliError::at(path, e))
}

fn class_text(g: &Multigraph, c: &DivisorClass) -> String {
    format_divisor(g, c.rep())
}

fn edge_names(g: &Multigraph, h: &Multigraph, map: &[usize]) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(e, &r)| (g.edge_name(e).to_string(), h.edge_name(r).to_string()))
        .collect()
}

fn vertex_names(g: &Multigraph, h: &Multigraph, map: &[usize]) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .map(|(v, &w)| (g.vertex_name(v).to_string(), h.vertex_name(w).to_string()))
        .collect()
}

pub fn info_report(g: &Multigraph) -> InfoReport {
    let (two_connected, edge_connectivity) = connectivity_profile(g);
    let series = series_classes(g).ok().map(|classes| {
        classes
            .iter()
            .map(|c| c.iter().map(|&e| g.edge_name(e).to_string()).collect())
            .collect()
    });
    InfoReport {
        schema: SCHEMA.into(),
        command: "info".into(),
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        base_edge: g.edge_name(g.base_edge()).to_string(),
        genus: genus(g),
        two_connected,
        edge_connectivity,
        series_classes: series,
        spanning_trees: picard_order(g).to_string(),
    }
}

pub fn info(path: &Path) -> Result<Outcome, CliError> {
    let g = load::graph(path)?;
    Ok(Outcome::ok(to_value(&info_report(&g))))
}

fn witness_report(m: &OrCycMorphism, w: &Witness) -> WitnessReport {
    let (g, h) = (m.source(), m.target());
    WitnessReport {
        source_class: class_text(g, &w.source_class),
        image_class: class_text(h, &w.image_class),
        target_divisor: format_divisor(h, &w.target_divisor),
        source_orientation: format_orientation(g, &w.source_orientation),
        verified: w.verify(m),
    }
}

fn lift_report(m: &OrCycMorphism, l: &GraphLift) -> LiftReport {
    let (g, h) = (m.source(), m.target());
    let psi = l
        .psi
        .iter()
        .enumerate()
        .filter(|&(r, &s)| r != s)
        .map(|(r, &s)| (h.edge_name(r).to_string(), h.edge_name(s).to_string()))
        .collect();
    LiftReport {
        psi,
        edge_map: edge_names(g, h, &l.edge_map(m)),
        vertex_map: vertex_names(g, h, &l.vertex_map),
        unique: l.unique,
        reverses_base: l.reverses_base,
        verified: l.verify(m),
    }
}

/// Rigidity analysis; the witness and lift are computed only when asked for.
pub fn analysis(m: &OrCycMorphism, want_witness: bool, want_lift: bool) -> rigidlift::Result<AnalysisOutput> {
    let (g, h) = (m.source(), m.target());
    let rigid = orcyc::is_rigid(m)?;
    let e = orcyc::rigidity_divisor(m);
    let witness = if want_witness && !rigid {
        Some(witness_report(m, &orcyc::nonrigidity_witness(m)?))
    } else {
        None
    };
    let (lift_status, lift) = if want_lift && rigid {
        match orcyc::lift_to_graph_isomorphism(m) {
            Ok(l) => ("lifted", Some(lift_report(m, &l))),
            Err(rigidlift::Error::NoIsomorphismLift) => ("no_isomorphism", None),
            Err(err) => return Err(err),
        }
    } else {
        ("not_requested", None)
    };
    Ok(AnalysisOutput {
        schema: SCHEMA.into(),
        command: "rigidity".into(),
        source_base: g.edge_name(g.base_edge()).to_string(),
        target_base: h.edge_name(h.base_edge()).to_string(),
        edge_map: edge_names(g, h, m.edge_map()),
        signs: (0..g.num_edges()).map(|e| (g.edge_name(e).to_string(), m.sign(e))).collect(),
        rigidity_divisor: class_text(h, &e),
        reduced_at: h.vertex_name(h.base_vertex()).to_string(),
        is_rigid: rigid,
        witness,
        lift_status: lift_status.into(),
        lift,
        timings: None,
    })
}

pub fn rigidity(opts: &Options, path: &Path, witness: bool, lift: bool, expect_rigid: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let m = load::morphism(path)?;
    let mut out = analysis(&m, witness, lift)?;
    out.timings = opts.timings(start);
    let failure = if expect_rigid && !out.is_rigid {
        Some("morphism is not rigid".to_string())
    } else if out.lift_status == "no_isomorphism" {
        Some(rigidlift::Error::NoIsomorphismLift.to_string())
    } else {
        None
    };
    Ok(Outcome {
        json: to_value(&out),
        failure,
    })
}

pub fn matroid_report(g: &Multigraph, h: &Multigraph, map: &[usize]) -> rigidlift::Result<MatroidReport> {
    let mut r = MatroidReport {
        schema: SCHEMA.into(),
        command: "lift-matroid".into(),
        result: String::new(),
        base_image: None,
        edge_map: None,
        vertex_map: None,
        unique: None,
        tried: Vec::new(),
        timings: None,
    };
    match orcyc::lift_matroid_isomorphism(g, h, map)? {
        MatroidLift::Lifted {
            base_image,
            edge_map,
            vertex_map,
            unique,
        } => {
            r.result = "lifted".into();
            r.base_image = Some(h.edge_name(base_image).to_string());
            r.edge_map = Some(edge_names(g, h, &edge_map));
            r.vertex_map = Some(vertex_names(g, h, &vertex_map));
            r.unique = Some(unique);
        }
        MatroidLift::NotLiftable { tried } => {
            r.result = "not_liftable".into();
            r.tried = tried.iter().map(|&w| h.edge_name(w).to_string()).collect();
        }
    }
    Ok(r)
}

pub fn lift_matroid(opts: &Options, source: &Path, target: &Path, map: &Path) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let g = load::graph(source)?;
    let h = load::graph(target)?;
    let pairs = load::map_file(map)?;
    let map = load::edge_map(&g, &h, &pairs)?;
    let mut r = matroid_report(&g, &h, &map)?;
    r.timings = opts.timings(start);
    let failure = (r.result == "not_liftable").then(|| format!("no base choice lifts (tried {})", r.tried.join(", ")));
    Ok(Outcome {
        json: to_value(&r),
        failure,
    })
}

fn head(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    m
}

pub fn divisor(opts: &Options, cmd: DivisorCmd) -> Result<Outcome, CliError> {
    let mut out;
    match cmd {
        DivisorCmd::Reduce { graph, divisor, q } => {
            let g = load::graph(&graph)?;
            let d = with_input(&graph, parse_divisor(&g, &divisor))?;
            let q = match q {
                Some(name) => g.vertex(&name)?,
                None => g.base_vertex(),
            };
            out = head("divisor reduce");
            out.insert("q".into(), g.vertex_name(q).into());
            out.insert("reduced".into(), format_divisor(&g, &q_reduce(&g, &d, q)).into());
        }
        DivisorCmd::Equiv { graph, a, b } => {
            let g = load::graph(&graph)?;
            let da = with_input(&graph, parse_divisor(&g, &a))?;
            let db = with_input(&graph, parse_divisor(&g, &b))?;
            out = head("divisor equiv");
            out.insert("equivalent".into(), linearly_equivalent(&g, &da, &db).into());
        }
        DivisorCmd::Effective { graph, divisor } => {
            let g = load::graph(&graph)?;
            let d = with_input(&graph, parse_divisor(&g, &divisor))?;
            out = head("divisor effective");
            out.insert("effective".into(), is_effective_class(&g, &d).into());
            out.insert("reduced".into(), class_text(&g, &DivisorClass::of(&g, &d)).into());
        }
        DivisorCmd::Classify { graph, divisor } => {
            let g = load::graph(&graph)?;
            let d = with_input(&graph, parse_divisor(&g, &divisor))?;
            let kind = match classify_gminus1(&g, &d)? {
                Speciality::Special => "special",
                Speciality::Nonspecial => "nonspecial",
            };
            out = head("divisor classify");
            out.insert("speciality".into(), kind.into());
        }
        DivisorCmd::Theta { graph } => {
            let g = load::graph(&graph)?;
            let classes = theta_divisor(&g, g.base_edge(), opts.max_classes)?;
            out = head("divisor theta");
            out.insert("count".into(), classes.len().into());
            out.insert("reduced_at".into(), g.vertex_name(g.base_vertex()).into());
            let list: Vec<Value> = classes.iter().map(|c| class_text(&g, c).into()).collect();
            out.insert("classes".into(), list.into());
        }
    }
    Ok(Outcome::ok(Value::Object(out)))
}

fn certificate_json(g: &Multigraph, q: &rigidlift::Divisor, c: &Certificate) -> Value {
    json!({
        "branch": if c.is_sourceless() { "sourceless" } else { "acyclic" },
        "orientation": format_orientation(g, c.orientation()),
        "divisor": format_divisor(g, c.divisor()),
        "verified": c.verify(g, q),
    })
}

pub fn orient(cmd: OrientCmd) -> Result<Outcome, CliError> {
    let mut out;
    match cmd {
        OrientCmd::Chern { graph, orientation } => {
            let g = load::graph(&graph)?;
            let u = parse_orientation(&g, &orientation).map_err(|e| CliError::at(&graph, e))?;
            let c = chern_class(&g, &u)?;
            out = head("orient chern");
            out.insert("chern".into(), format_divisor(&g, &c).into());
            out.insert("reduced".into(), class_text(&g, &DivisorClass::of(&g, &c)).into());
        }
        OrientCmd::Liftdiv {
            graph,
            divisor,
            unoriented,
        } => {
            let g = load::graph(&graph)?;
            let d = with_input(&graph, parse_divisor(&g, &divisor))?;
            let x = unoriented.iter().map(|e| g.edge(e)).collect::<rigidlift::Result<Vec<_>>>()?;
            out = head("orient liftdiv");
            match lift_divisor_to_orientation(&g, &d, &x)? {
                LiftOutcome::Lifted(u) => {
                    out.insert("result".into(), "lifted".into());
                    out.insert("orientation".into(), format_orientation(&g, &u).into());
                }
                LiftOutcome::NotPartiallyOrientable => {
                    out.insert("result".into(), "not_partially_orientable".into());
                }
                LiftOutcome::NotRealizableWithUnorientedSet => {
                    out.insert("result".into(), "not_realizable_with_unoriented_set".into());
                }
            }
        }
        OrientCmd::Certify { graph, divisor } => {
            let g = load::graph(&graph)?;
            let d = with_input(&graph, parse_divisor(&g, &divisor))?;
            let cert = effectiveness_certificate(&g, &d)?;
            out = head("orient certify");
            out.insert("effective".into(), cert.is_sourceless().into());
            out.insert("certificate".into(), certificate_json(&g, &d, &cert));
        }
    }
    Ok(Outcome::ok(Value::Object(out)))
}

struct Checks(Vec<(String, bool)>);

impl Checks {
    fn check(&mut self, name: &str, ok: bool) {
        self.0.push((name.to_string(), ok));
    }
}

fn base_chern(g: &Multigraph) -> String {
    let c = chern_class(g, &PartialOrientation::base(g)).expect("base orientation has no bioriented edges");
    format_divisor(g, &c)
}

fn fixture_checks(max_classes: usize) -> rigidlift::Result<Checks> {
    let mut c = Checks(Vec::new());

    let m = fixtures::rigid_morphism();
    let (g, h) = (m.source(), m.target());
    c.check("rigid pair signs", m.signs() == [1, 1, -1, -1, 1, -1, 1]);
    c.check("source base Chern class", base_chern(g) == "div v3:1 v4:1");
    c.check("target base Chern class", base_chern(h) == "div w2:1 w5:1");
    c.check("rigid pair is rigid", orcyc::is_rigid(&m)?);
    let lift = orcyc::lift_to_graph_isomorphism(&m)?;
    let moved: Vec<(&str, &str)> = (0..h.num_edges())
        .filter(|&r| lift.psi[r] != r)
        .map(|r| (h.edge_name(r), h.edge_name(lift.psi[r])))
        .collect();
    c.check("lift swaps r3 and r7", moved == [("r3", "r7"), ("r7", "r3")]);
    c.check("lift is a graph isomorphism", lift.verify(&m));

    let m = fixtures::nonrigid_morphism();
    let (j, k) = (m.source(), m.target());
    c.check("non-rigid pair signs", m.signs() == [1, 1, -1, 1, -1, 1]);
    c.check("non-rigid source Chern class", base_chern(j) == "div v1:-1 v3:1 v4:2");
    c.check("non-rigid target Chern class", base_chern(k) == "div w3:1 w4:1");
    c.check("non-rigid pair is not rigid", !orcyc::is_rigid(&m)?);
    c.check("witness verifies", orcyc::nonrigidity_witness(&m)?.verify(&m));
    let d = rigidlift::io::parse_divisor(k, "div w2:1 w3:3 w4:-4")?;
    let reduced = q_reduce(k, &d, k.vertex("w4")?);
    c.check("reduction on K", format_divisor(k, &reduced) == "div w1:1 w3:1 w4:-2");

    let t = fixtures::theta();
    c.check("theta graph has two theta classes", theta_divisor(&t, t.base_edge(), max_classes)?.len() == 2);
    Ok(c)
}

pub fn selftest(opts: &Options) -> Result<Outcome, CliError> {
    let checks = fixture_checks(opts.max_classes)?;
    let failed: Vec<&str> = checks.0.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    let mut out = head("selftest");
    let results: serde_json::Map<String, Value> = checks.0.iter().map(|(n, ok)| (n.clone(), (*ok).into())).collect();
    out.insert("checks".into(), Value::Object(results));
    out.insert("passed".into(), failed.is_empty().into());
    let failure = (!failed.is_empty()).then(|| format!("selftest failed: {}", failed.join(", ")));
    Ok(Outcome {
        json: Value::Object(out),
        failure,
    })
}
