//! Partial orientations and their Chern classes.

use std::collections::VecDeque;

use crate::divisor::{burning_order, is_effective_class, linearly_equivalent, q_reduce, Divisor};
use crate::error::{Error, Result};
use crate::flow::FlowNet;
use crate::multigraph::{components, genus, Multigraph};

/// Candidate divisors examined by the exhaustive fallbacks before giving up.
pub const SEARCH_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    /// Oriented as in the base orientation.
    Forward,
    /// Oriented against the base orientation.
    Backward,
    Unoriented,
    Bioriented,
}

impl EdgeState {
    /// +1, -1 or 0 relative to the base orientation. Bioriented edges have no sign.
    pub fn sign(self) -> i8 {
        match self {
            EdgeState::Forward => 1,
            EdgeState::Backward => -1,
            _ => 0,
        }
    }

    pub fn from_sign(s: i8) -> Self {
        match s {
            1 => EdgeState::Forward,
            -1 => EdgeState::Backward,
            _ => EdgeState::Unoriented,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeState::Forward => 'F',
            EdgeState::Backward => 'B',
            EdgeState::Unoriented => 'U',
            EdgeState::Bioriented => 'X',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'F' => Some(EdgeState::Forward),
            'B' => Some(EdgeState::Backward),
            'U' => Some(EdgeState::Unoriented),
            'X' => Some(EdgeState::Bioriented),
            _ => None,
        }
    }

    fn is_oriented(self) -> bool {
        matches!(self, EdgeState::Forward | EdgeState::Backward)
    }

    fn reversed(self) -> Self {
        match self {
            EdgeState::Forward => EdgeState::Backward,
            EdgeState::Backward => EdgeState::Forward,
            s => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialOrientation(pub Vec<EdgeState>);

impl PartialOrientation {
    /// The base orientation Γ itself.
    pub fn base(g: &Multigraph) -> Self {
        PartialOrientation(vec![EdgeState::Forward; g.num_edges()])
    }

    /// Γ with the given edges left unoriented.
    pub fn base_without(g: &Multigraph, unoriented: &[usize]) -> Self {
        let mut u = Self::base(g);
        for &e in unoriented {
            u.0[e] = EdgeState::Unoriented;
        }
        u
    }

    pub fn state(&self, e: usize) -> EdgeState {
        self.0[e]
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|s| s.is_oriented())
    }

    pub fn unoriented(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&e| self.0[e] == EdgeState::Unoriented).collect()
    }

    /// (from, to) of an oriented edge.
    pub fn arrow(&self, g: &Multigraph, e: usize) -> Option<(usize, usize)> {
        match self.0[e] {
            EdgeState::Forward => Some((g.tail(e), g.head(e))),
            EdgeState::Backward => Some((g.head(e), g.tail(e))),
            _ => None,
        }
    }

    fn oriented_toward(g: &Multigraph, e: usize, v: usize) -> EdgeState {
        if g.head(e) == v {
            EdgeState::Forward
        } else {
            EdgeState::Backward
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationMove {
    CycleReversal(Vec<usize>),
    CutReversal(Vec<usize>),
    /// Deorient `oriented` (which points at `pivot`) and point `unoriented` at `pivot`.
    EdgeSlide { oriented: usize, unoriented: usize, pivot: usize },
}

/// c(U) = Σ heads of oriented edges - Σ vertices.
pub fn chern_class(g: &Multigraph, u: &PartialOrientation) -> Result<Divisor> {
    if u.0.contains(&EdgeState::Bioriented) {
        return Err(Error::BiorientedPresent);
    }
    Ok(chern_class_extended(g, u))
}

/// Chern class where a bioriented edge contributes both of its endpoints.
pub fn chern_class_extended(g: &Multigraph, u: &PartialOrientation) -> Divisor {
    let mut d = Divisor(vec![-1; g.num_vertices()]);
    for e in 0..g.num_edges() {
        match u.0[e] {
            EdgeState::Forward => d[g.head(e)] += 1,
            EdgeState::Backward => d[g.tail(e)] += 1,
            EdgeState::Bioriented => {
                d[g.head(e)] += 1;
                d[g.tail(e)] += 1;
            }
            EdgeState::Unoriented => {}
        }
    }
    d
}

/// Reverses oriented edges, and swaps unoriented with bioriented.
pub fn dual_orientation(u: &PartialOrientation) -> PartialOrientation {
    PartialOrientation(
        u.0.iter()
            .map(|s| match s {
                EdgeState::Unoriented => EdgeState::Bioriented,
                EdgeState::Bioriented => EdgeState::Unoriented,
                s => s.reversed(),
            })
            .collect(),
    )
}

fn indegrees(g: &Multigraph, u: &PartialOrientation) -> Vec<usize> {
    let mut inn = vec![0; g.num_vertices()];
    for e in 0..g.num_edges() {
        match u.0[e] {
            EdgeState::Forward => inn[g.head(e)] += 1,
            EdgeState::Backward => inn[g.tail(e)] += 1,
            EdgeState::Bioriented => {
                inn[g.head(e)] += 1;
                inn[g.tail(e)] += 1;
            }
            EdgeState::Unoriented => {}
        }
    }
    inn
}

pub fn is_sourceless(g: &Multigraph, u: &PartialOrientation) -> bool {
    indegrees(g, u).iter().all(|&k| k > 0)
}

/// No directed cycle among oriented edges (a bioriented edge is a 2-cycle by itself).
pub fn is_acyclic(g: &Multigraph, u: &PartialOrientation) -> bool {
    if u.0.contains(&EdgeState::Bioriented) {
        return false;
    }
    let n = g.num_vertices();
    let mut inn = indegrees(g, u);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.num_edges() {
        if let Some((a, b)) = u.arrow(g, e) {
            out[a].push(b);
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| inn[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = stack.pop() {
        done += 1;
        for &w in &out[v] {
            inn[w] -= 1;
            if inn[w] == 0 {
                stack.push(w);
            }
        }
    }
    done == n
}

/// Full orientation pointing every edge from the earlier to the later vertex of `order`.
pub fn orientation_from_order(g: &Multigraph, order: &[usize]) -> PartialOrientation {
    let mut rank = vec![0; g.num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    PartialOrientation(
        (0..g.num_edges())
            .map(|e| {
                if rank[g.tail(e)] < rank[g.head(e)] {
                    EdgeState::Forward
                } else {
                    EdgeState::Backward
                }
            })
            .collect(),
    )
}

pub fn apply_move(g: &Multigraph, u: &PartialOrientation, m: &OrientationMove) -> Result<PartialOrientation> {
    let bad = |msg: &str| Error::InvalidMove(msg.to_string());
    if u.0.contains(&EdgeState::Bioriented) {
        return Err(Error::BiorientedPresent);
    }
    let mut out = u.clone();
    match m {
        OrientationMove::CycleReversal(edges) => {
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != edges.len() {
                return Err(bad("cycle must be a nonempty set of distinct edges"));
            }
            let n = g.num_vertices();
            let (mut inn, mut outd) = (vec![0; n], vec![0; n]);
            for &e in &sorted {
                let (a, b) = u.arrow(g, e).ok_or_else(|| bad("cycle edge is not oriented"))?;
                outd[a] += 1;
                inn[b] += 1;
            }
            if (0..n).any(|v| inn[v] != outd[v] || inn[v] > 1) {
                return Err(bad("edges do not form a consistently oriented cycle"));
            }
            let used: Vec<bool> = (0..g.num_edges()).map(|e| sorted.binary_search(&e).is_ok()).collect();
            let (label, _) = components(g, |e| used[e], |_| true);
            let first = label[g.tail(sorted[0])];
            if sorted.iter().any(|&e| label[g.tail(e)] != first) {
                return Err(bad("edges form more than one cycle"));
            }
            for &e in &sorted {
                out.0[e] = out.0[e].reversed();
            }
        }
        OrientationMove::CutReversal(edges) => {
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() {
                return Err(bad("cut is empty"));
            }
            let in_cut: Vec<bool> = (0..g.num_edges()).map(|e| sorted.binary_search(&e).is_ok()).collect();
            let (label, count) = components(g, |e| !in_cut[e], |_| true);
            // side[c] = Some(true) when component c is on the tail side of the cut
            let mut side: Vec<Option<bool>> = vec![None; count];
            for &e in &sorted {
                let (a, b) = u.arrow(g, e).ok_or_else(|| bad("cut edge is not oriented"))?;
                let (ca, cb) = (label[a], label[b]);
                if ca == cb {
                    return Err(bad("edge set is not a cut"));
                }
                for (c, s) in [(ca, true), (cb, false)] {
                    match side[c] {
                        None => side[c] = Some(s),
                        Some(x) if x != s => return Err(bad("cut is not consistently oriented")),
                        _ => {}
                    }
                }
            }
            for &e in &sorted {
                out.0[e] = out.0[e].reversed();
            }
        }
        OrientationMove::EdgeSlide {
            oriented,
            unoriented,
            pivot,
        } => {
            let (l, r, v) = (*oriented, *unoriented, *pivot);
            if l == r || l >= g.num_edges() || r >= g.num_edges() {
                return Err(bad("slide needs two distinct edges"));
            }
            match u.arrow(g, l) {
                Some((_, h)) if h == v => {}
                _ => return Err(bad("slid edge does not point at the pivot")),
            }
            if u.0[r] != EdgeState::Unoriented || (g.tail(r) != v && g.head(r) != v) {
                return Err(bad("target edge must be unoriented and touch the pivot"));
            }
            out.0[l] = EdgeState::Unoriented;
            out.0[r] = PartialOrientation::oriented_toward(g, r, v);
        }
    }
    Ok(out)
}

/// Oriented edges reachable from p, with the edge used to reach each vertex.
fn reach(g: &Multigraph, u: &PartialOrientation, p: usize) -> Vec<Option<Option<usize>>> {
    let mut via: Vec<Option<Option<usize>>> = vec![None; g.num_vertices()];
    via[p] = Some(None);
    let mut queue = VecDeque::from([p]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.neighbors(v) {
            if via[w].is_none() && u.arrow(g, e) == Some((v, w)) {
                via[w] = Some(Some(e));
                queue.push_back(w);
            }
        }
    }
    via
}

/// Changes the class of c(u) by p - q: reverse cuts until q is reachable from p,
/// then reverse an oriented p→q path. None if an unoriented edge blocks a cut.
fn move_chip(g: &Multigraph, u: &PartialOrientation, p: usize, q: usize) -> Result<Option<PartialOrientation>> {
    let mut u = u.clone();
    let cap = g.num_vertices() * g.num_edges() + 1;
    for _ in 0..cap {
        let via = reach(g, &u, p);
        if via[q].is_some() {
            let mut at = q;
            while let Some(Some(e)) = via[at] {
                u.0[e] = u.0[e].reversed();
                at = g.other_end(e, at);
            }
            return Ok(Some(u));
        }
        let cut: Vec<usize> = (0..g.num_edges())
            .filter(|&e| via[g.tail(e)].is_some() != via[g.head(e)].is_some())
            .collect();
        if cut.iter().any(|&e| !u.0[e].is_oriented()) {
            return Ok(None);
        }
        u = apply_move(g, &u, &OrientationMove::CutReversal(cut))?;
    }
    Err(Error::Internal("cut reversal did not reach the target vertex".into()))
}

fn chip_pairs(d: &Divisor) -> Vec<(usize, usize)> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (v, &c) in d.0.iter().enumerate() {
        for _ in 0..c.max(0) {
            plus.push(v);
        }
        for _ in 0..(-c).max(0) {
            minus.push(v);
        }
    }
    plus.into_iter().zip(minus).collect()
}

/// Acts by a degree-0 divisor d on a full orientation: the result has Chern class ~ c(u) + d.
pub fn torsor_act(g: &Multigraph, d: &Divisor, u: &PartialOrientation) -> Result<PartialOrientation> {
    if !u.is_full() {
        return Err(Error::NotFullOrientation);
    }
    if d.degree() != 0 {
        return Err(Error::WrongDegree {
            expected: 0,
            found: d.degree(),
        });
    }
    let mut u = u.clone();
    for (p, q) in chip_pairs(d) {
        u = move_chip(g, &u, p, q)?.ok_or_else(|| Error::Internal("full orientation blocked".into()))?;
    }
    Ok(u)
}

/// Orientation of exactly the allowed edges whose indegrees are `target`, if one exists.
pub fn realize_indegrees(g: &Multigraph, allowed: &[bool], target: &[i64]) -> Option<PartialOrientation> {
    let m = g.num_edges();
    let n = g.num_vertices();
    if target.iter().any(|&t| t < 0) {
        return None;
    }
    let need: i64 = target.iter().sum();
    let (src, sink) = (m + n, m + n + 1);
    let mut net = FlowNet::new(m + n + 2);
    let mut arcs = Vec::new();
    for e in 0..m {
        if allowed[e] {
            net.add(src, e, 1);
            arcs.push((e, net.add(e, m + g.tail(e), 1), net.add(e, m + g.head(e), 1)));
        }
    }
    for (v, &t) in target.iter().enumerate() {
        net.add(m + v, sink, t);
    }
    if net.max_flow(src, sink, need) != need {
        return None;
    }
    let mut u = PartialOrientation(vec![EdgeState::Unoriented; m]);
    for (e, to_tail, to_head) in arcs {
        if net.flow_on(to_head) > 0 {
            u.0[e] = EdgeState::Forward;
        } else if net.flow_on(to_tail) > 0 {
            u.0[e] = EdgeState::Backward;
        }
    }
    Some(u)
}

/// Calls `f` on every vector with 0 <= x[i] <= caps[i] and Σ x = total, until `f` returns true.
fn search_box(caps: &[i64], total: i64, limit: usize, mut f: impl FnMut(&[i64]) -> bool) -> Result<bool> {
    fn rec(
        caps: &[i64],
        suffix: &[i64],
        i: usize,
        left: i64,
        cur: &mut Vec<i64>,
        budget: &mut usize,
        f: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Option<bool> {
        if i == caps.len() {
            if left != 0 {
                return Some(false);
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            return Some(f(cur));
        }
        let lo = (left - suffix[i + 1]).max(0);
        let hi = caps[i].min(left);
        for c in lo..=hi {
            cur[i] = c;
            if rec(caps, suffix, i + 1, left - c, cur, budget, f)? {
                return Some(true);
            }
        }
        Some(false)
    }
    let mut suffix = vec![0i64; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix[i] = suffix[i + 1] + caps[i].max(0);
    }
    if total < 0 || total > suffix[0] {
        return Ok(false);
    }
    let mut budget = limit;
    rec(caps, &suffix, 0, total, &mut vec![0; caps.len()], &mut budget, &mut f)
        .ok_or(Error::EnumerationBoundExceeded(limit))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    /// An orientation of every edge outside X, with Chern class equivalent to the input.
    Lifted(PartialOrientation),
    /// |d + Σv| is empty, so no partial orientation of any kind has this class.
    NotPartiallyOrientable,
    /// Some partial orientation has this class, but none leaves exactly X unoriented.
    NotRealizableWithUnorientedSet,
}

/// Finds U in O(G, X) with c(U) ~ d.
///
/// Starts from Γ with X unoriented and moves chips with cut and path reversals. When an
/// unoriented edge blocks a cut, falls back to searching the class of d + Σv for an
/// indegree sequence of G∖X.
pub fn lift_divisor_to_orientation(g: &Multigraph, d: &Divisor, unoriented: &[usize]) -> Result<LiftOutcome> {
    let mut xs = unoriented.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let expected = (g.num_edges() - xs.len()) as i64 - g.num_vertices() as i64;
    if d.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: d.degree(),
        });
    }
    let plus_one = Divisor(d.0.iter().map(|c| c + 1).collect());
    if !is_effective_class(g, &plus_one) {
        return Ok(LiftOutcome::NotPartiallyOrientable);
    }
    let start = PartialOrientation::base_without(g, &xs);
    let diff = d - &chern_class(g, &start)?;
    let mut u = Some(start);
    for (p, q) in chip_pairs(&diff) {
        u = match u {
            Some(cur) => move_chip(g, &cur, p, q)?,
            None => None,
        };
    }
    let found = match u {
        Some(u) => Some(u),
        None => {
            let allowed: Vec<bool> = (0..g.num_edges()).map(|e| xs.binary_search(&e).is_err()).collect();
            let caps: Vec<i64> = (0..g.num_vertices())
                .map(|v| g.neighbors(v).iter().filter(|&&(_, e)| allowed[e]).count() as i64)
                .collect();
            let mut hit = None;
            search_box(&caps, expected + g.num_vertices() as i64, SEARCH_LIMIT, |cand| {
                if !linearly_equivalent(g, &Divisor(cand.to_vec()), &plus_one) {
                    return false;
                }
                hit = realize_indegrees(g, &allowed, cand);
                hit.is_some()
            })?;
            hit
        }
    };
    match found {
        None => Ok(LiftOutcome::NotRealizableWithUnorientedSet),
        Some(u) => {
            let c = chern_class(g, &u)?;
            if u.unoriented() != xs || !linearly_equivalent(g, &c, d) {
                return Err(Error::Internal("lifted orientation failed verification".into()));
            }
            Ok(LiftOutcome::Lifted(u))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Sourceless W with c(W) = divisor, an effective divisor equivalent to the input.
    Sourceless { orientation: PartialOrientation, divisor: Divisor },
    /// Acyclic U and A equivalent to the input with c(U) >= A.
    Acyclic { orientation: PartialOrientation, divisor: Divisor },
}

impl Certificate {
    pub fn orientation(&self) -> &PartialOrientation {
        match self {
            Certificate::Sourceless { orientation, .. } | Certificate::Acyclic { orientation, .. } => orientation,
        }
    }

    pub fn divisor(&self) -> &Divisor {
        match self {
            Certificate::Sourceless { divisor, .. } | Certificate::Acyclic { divisor, .. } => divisor,
        }
    }

    pub fn is_sourceless(&self) -> bool {
        matches!(self, Certificate::Sourceless { .. })
    }

    /// Re-checks the structural claims against the graph and the original divisor.
    pub fn verify(&self, g: &Multigraph, q: &Divisor) -> bool {
        let c = match chern_class(g, self.orientation()) {
            Ok(c) => c,
            Err(_) => return false,
        };
        match self {
            Certificate::Sourceless { orientation, divisor } => {
                divisor.is_effective()
                    && c == *divisor
                    && is_sourceless(g, orientation)
                    && linearly_equivalent(g, divisor, q)
            }
            Certificate::Acyclic { orientation, divisor } => {
                is_acyclic(g, orientation) && c.dominates(divisor) && linearly_equivalent(g, divisor, q)
            }
        }
    }
}

/// Proves or refutes that q is equivalent to an effective divisor (deg q <= g - 1).
pub fn effectiveness_certificate(g: &Multigraph, q: &Divisor) -> Result<Certificate> {
    let max = genus(g) - 1;
    if q.degree() > max {
        return Err(Error::DegreeTooHigh {
            max,
            found: q.degree(),
        });
    }
    let n = g.num_vertices();
    let cert = if is_effective_class(g, q) {
        let all = vec![true; g.num_edges()];
        let plus_one = |b: &[i64]| -> Vec<i64> { b.iter().map(|c| c + 1).collect() };
        let mut found = None;
        // reduced forms are cheap effective candidates
        for v in 0..n {
            let r = q_reduce(g, q, v);
            if r.is_effective() {
                if let Some(w) = realize_indegrees(g, &all, &plus_one(&r.0)) {
                    found = Some((w, r));
                    break;
                }
            }
        }
        if found.is_none() {
            let caps: Vec<i64> = (0..n).map(|v| g.degree(v) as i64 - 1).collect();
            search_box(&caps, q.degree(), SEARCH_LIMIT, |cand| {
                let b = Divisor(cand.to_vec());
                if !linearly_equivalent(g, &b, q) {
                    return false;
                }
                if let Some(w) = realize_indegrees(g, &all, &plus_one(cand)) {
                    found = Some((w, b));
                    return true;
                }
                false
            })?;
        }
        let (orientation, divisor) = found.ok_or_else(|| Error::Internal("no sourceless representative".into()))?;
        Certificate::Sourceless { orientation, divisor }
    } else {
        let negatives: Vec<usize> = (0..n).filter(|&v| q[v] < 0).collect();
        let s = match negatives.as_slice() {
            [s] if q_reduce(g, q, *s) == *q => *s,
            _ => g.base_vertex(),
        };
        let a = q_reduce(g, q, s);
        let orientation = orientation_from_order(g, &burning_order(g, &a, s));
        Certificate::Acyclic { orientation, divisor: a }
    };
    if !cert.verify(g, q) {
        return Err(Error::Internal("effectiveness certificate failed verification".into()));
    }
    Ok(cert)
}

/// T >= 0 with q + T nonspecial of degree g - 1, read off an acyclic certificate.
pub fn extend_to_nonspecial(g: &Multigraph, q: &Divisor) -> Result<Divisor> {
    if is_effective_class(g, q) {
        return Err(Error::QIsEffective);
    }
    match effectiveness_certificate(g, q)? {
        Certificate::Acyclic { orientation, divisor } => {
            let t = &chern_class(g, &orientation)? - &divisor;
            debug_assert!(t.is_effective());
            Ok(t)
        }
        Certificate::Sourceless { .. } => Err(Error::Internal("non-effective divisor got a sourceless witness".into())),
    }
}
