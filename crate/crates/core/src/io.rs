//! Line-oriented text formats for graphs, divisors, orientations and cochains.

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::homology::{format_rational, Cochain};
use crate::multigraph::{build_graph, Multigraph};
use crate::orientation::{EdgeState, PartialOrientation};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// `edge <id> <tail> <head>` records plus one `base <edge-id>` line; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut edges = Vec::new();
    let mut base: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["edge", id, t, h] => edges.push((id.to_string(), t.to_string(), h.to_string())),
            ["base", id] => {
                if base.replace(id.to_string()).is_some() {
                    return Err(perr(i + 1, "more than one base line"));
                }
            }
            _ => return Err(perr(i + 1, format!("unrecognised record `{line}`"))),
        }
    }
    let base = base.ok_or_else(|| perr(0, "missing base line"))?;
    build_graph(&edges, &base)
}

pub fn format_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    for (id, t, h) in g.edge_list() {
        out.push_str(&format!("edge {id} {t} {h}\n"));
    }
    out.push_str(&format!("base {}\n", g.edge_name(g.base_edge())));
    out
}

fn records<'a>(text: &'a str, keyword: &str) -> Result<Vec<(&'a str, &'a str)>> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(perr(1, format!("expected `{keyword}`")));
    }
    toks.map(|t| t.split_once(':').ok_or_else(|| perr(1, format!("expected name:value, got `{t}`"))))
        .collect()
}

/// `div <vertex>:<int> ...`; vertices not listed are 0, repeats accumulate.
pub fn parse_divisor(g: &Multigraph, text: &str) -> Result<Divisor> {
    let mut d = Divisor::zero(g.num_vertices());
    for (v, k) in records(text, "div")? {
        let k: i64 = k.parse().map_err(|_| perr(1, format!("bad integer `{k}`")))?;
        d[g.vertex(v)?] += k;
    }
    Ok(d)
}

pub fn format_divisor(g: &Multigraph, d: &Divisor) -> String {
    let mut out = String::from("div");
    for (v, &k) in d.0.iter().enumerate() {
        if k != 0 {
            out.push_str(&format!(" {}:{}", g.vertex_name(v), k));
        }
    }
    out
}

/// `orient <edge>:<F|B|U|X> ...`; unlisted edges are unoriented.
pub fn parse_orientation(g: &Multigraph, text: &str) -> Result<PartialOrientation> {
    let mut u = vec![EdgeState::Unoriented; g.num_edges()];
    for (e, s) in records(text, "orient")? {
        let mut chars = s.chars();
        let state = match (chars.next(), chars.next()) {
            (Some(c), None) => EdgeState::from_letter(c),
            _ => None,
        };
        u[g.edge(e)?] = state.ok_or_else(|| perr(1, format!("bad edge state `{s}`")))?;
    }
    Ok(PartialOrientation(u))
}

pub fn format_orientation(g: &Multigraph, u: &PartialOrientation) -> String {
    let mut out = String::from("orient");
    for (e, s) in u.0.iter().enumerate() {
        out.push_str(&format!(" {}:{}", g.edge_name(e), s.letter()));
    }
    out
}

/// Debug output only; zero coordinates are skipped.
pub fn format_cochain(g: &Multigraph, x: &Cochain) -> String {
    let mut out = String::from("cochain");
    for (e, a) in x.0.iter().enumerate() {
        if !num_traits::Zero::is_zero(a) {
            out.push_str(&format!(" {}:{}", g.edge_name(e), format_rational(a)));
        }
    }
    out
}
