//! Morphisms of based oriented graphs: cyclic bijections with their signs, the
//! pushforwards they induce, rigidity, and lifting to graph isomorphisms.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::divisor::{is_effective_class, theta_divisor, Divisor, DivisorClass};
use crate::error::{Error, Result};
use crate::homology::{iota, iota_inverse_class, Cochain, CycleLattice};
use crate::multigraph::{
    cycle_through_edges_ranked, edge_connectivity, fundamental_cycles, genus, is_two_connected, series_labels,
    Multigraph,
};
use crate::orientation::{
    chern_class, extend_to_nonspecial, lift_divisor_to_orientation, EdgeState, LiftOutcome, PartialOrientation,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrCycMorphism {
    source: Multigraph,
    target: Multigraph,
    edge_map: Vec<usize>,
    signs: Vec<i8>,
}

fn check_bijection(g: &Multigraph, h: &Multigraph, edge_map: &[usize]) -> Result<()> {
    if edge_map.len() != g.num_edges() || g.num_edges() != h.num_edges() {
        return Err(Error::NotBijection("edge counts differ".into()));
    }
    let mut hit = vec![false; h.num_edges()];
    for &r in edge_map {
        if r >= h.num_edges() || std::mem::replace(&mut hit[r], true) {
            return Err(Error::NotBijection("an edge is hit twice or is out of range".into()));
        }
    }
    Ok(())
}

/// Unbased check: the GF(2) image of every fundamental cycle of g is an even subgraph of h,
/// and the cycle spaces have equal dimension.
pub fn is_cyclic_bijection(g: &Multigraph, h: &Multigraph, edge_map: &[usize]) -> Result<bool> {
    check_bijection(g, h, edge_map)?;
    if genus(g) != genus(h) {
        return Ok(false);
    }
    for c in fundamental_cycles(g) {
        let mut parity = vec![0u8; h.num_vertices()];
        for &e in &c.edges {
            let r = edge_map[e];
            parity[h.tail(r)] ^= 1;
            parity[h.head(r)] ^= 1;
        }
        if parity.iter().any(|&p| p != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn validate_cyclic_bijection(g: &Multigraph, h: &Multigraph, edge_map: &[usize]) -> Result<bool> {
    check_bijection(g, h, edge_map)?;
    if edge_map[g.base_edge()] != h.base_edge() {
        return Err(Error::BaseNotPreserved);
    }
    is_cyclic_bijection(g, h, edge_map)
}

fn check_object(g: &Multigraph) -> Result<()> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if edge_connectivity(g) < 2 {
        return Err(Error::NotTwoEdgeConnected);
    }
    Ok(())
}

/// Walks the simple cycle formed by `edges` in h, crossing `first` forwards first.
/// Returns the crossing sign of each edge, or None if the edges are not a simple cycle.
fn traverse_cycle(h: &Multigraph, edges: &[usize], first: usize) -> Option<HashMap<usize, i8>> {
    let set: BTreeSet<usize> = edges.iter().copied().collect();
    let mut signs = HashMap::from([(first, 1i8)]);
    let start = h.tail(first);
    let mut at = h.head(first);
    let mut last = first;
    while at != start {
        let next: Vec<usize> = h
            .neighbors(at)
            .iter()
            .map(|&(_, e)| e)
            .filter(|e| set.contains(e) && *e != last)
            .collect();
        if next.len() != 1 || signs.contains_key(&next[0]) {
            return None;
        }
        let e = next[0];
        signs.insert(e, if h.tail(e) == at { 1 } else { -1 });
        at = h.other_end(e, at);
        last = e;
    }
    (signs.len() == set.len()).then_some(signs)
}

/// sgn(u) for every edge: take a simple cycle through ê and u, traverse it with ê forwards
/// and its image with ŵ forwards, and compare how u and φ(u) are crossed.
pub fn compute_signs(g: &Multigraph, h: &Multigraph, edge_map: &[usize], rank: Option<&[usize]>) -> Result<Vec<i8>> {
    let base = g.base_edge();
    let mut signs = vec![0i8; g.num_edges()];
    signs[base] = 1;
    for u in 0..g.num_edges() {
        if u == base {
            continue;
        }
        let c = cycle_through_edges_ranked(g, base, u, rank)?;
        let image: Vec<usize> = c.edges.iter().map(|&e| edge_map[e]).collect();
        let crossed = traverse_cycle(h, &image, h.base_edge()).ok_or(Error::InvalidCyclicBijection)?;
        let pos = c.edges.iter().position(|&e| e == u).expect("cycle contains u");
        signs[u] = crossed[&edge_map[u]] * c.signs[pos];
    }
    // the signed permutation must carry cycles to cycles
    let m = g.num_edges();
    for b in fundamental_cycles(g) {
        let mut image = vec![0i64; m];
        for (e, c) in b.cochain(m).into_iter().enumerate() {
            image[edge_map[e]] += signs[e] as i64 * c;
        }
        if h.boundary_int(&image).iter().any(|&x| x != 0) {
            return Err(Error::Internal("signed image of a cycle is not a cycle".into()));
        }
    }
    Ok(signs)
}

impl OrCycMorphism {
    pub fn new(g: &Multigraph, h: &Multigraph, edge_map: &[usize]) -> Result<Self> {
        Self::with_ranking(g, h, edge_map, None)
    }

    /// Builds the morphism, using `rank` to steer which covering cycles the sign computation uses.
    pub fn with_ranking(g: &Multigraph, h: &Multigraph, edge_map: &[usize], rank: Option<&[usize]>) -> Result<Self> {
        if !validate_cyclic_bijection(g, h, edge_map)? {
            return Err(Error::InvalidCyclicBijection);
        }
        check_object(g)?;
        check_object(h)?;
        let signs = compute_signs(g, h, edge_map, rank)?;
        Ok(OrCycMorphism {
            source: g.clone(),
            target: h.clone(),
            edge_map: edge_map.to_vec(),
            signs,
        })
    }

    /// Builds from (source edge id, target edge id) pairs.
    pub fn from_names<S: AsRef<str>>(g: &Multigraph, h: &Multigraph, pairs: &[(S, S)]) -> Result<Self> {
        let mut map = vec![usize::MAX; g.num_edges()];
        for (a, b) in pairs {
            let e = g.edge(a.as_ref())?;
            if map[e] != usize::MAX {
                return Err(Error::NotBijection(format!("{} is mapped twice", a.as_ref())));
            }
            map[e] = h.edge(b.as_ref())?;
        }
        if map.contains(&usize::MAX) {
            return Err(Error::NotBijection("some source edges are unmapped".into()));
        }
        Self::new(g, h, &map)
    }

    pub fn source(&self) -> &Multigraph {
        &self.source
    }

    pub fn target(&self) -> &Multigraph {
        &self.target
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    pub fn image(&self, e: usize) -> usize {
        self.edge_map[e]
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.signs[e]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn inverse(&self) -> OrCycMorphism {
        let m = self.edge_map.len();
        let mut map = vec![0; m];
        let mut signs = vec![0; m];
        for e in 0..m {
            map[self.edge_map[e]] = e;
            signs[self.edge_map[e]] = self.signs[e];
        }
        OrCycMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            edge_map: map,
            signs,
        }
    }
}

pub fn identity_morphism(g: &Multigraph) -> Result<OrCycMorphism> {
    let ids: Vec<usize> = (0..g.num_edges()).collect();
    OrCycMorphism::new(g, g, &ids)
}

/// m2 ∘ m1, with signs multiplied along the way.
pub fn compose(m2: &OrCycMorphism, m1: &OrCycMorphism) -> Result<OrCycMorphism> {
    if m1.target != m2.source {
        return Err(Error::CompositionMismatch);
    }
    let edge_map: Vec<usize> = m1.edge_map.iter().map(|&r| m2.edge_map[r]).collect();
    let signs = (0..edge_map.len()).map(|e| m2.signs[m1.edge_map[e]] * m1.signs[e]).collect();
    Ok(OrCycMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        edge_map,
        signs,
    })
}

/// φ_*: ℓ* ↦ sgn(ℓ) φ(ℓ)*.
pub fn pushforward_cochain(m: &OrCycMorphism, x: &Cochain) -> Cochain {
    let mut out = Cochain::zero(m.target.num_edges());
    for (e, a) in x.0.iter().enumerate() {
        out.0[m.edge_map[e]] = if m.signs[e] > 0 { a.clone() } else { -a.clone() };
    }
    out
}

fn pushforward_ints(m: &OrCycMorphism, a: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len()];
    for (e, &x) in a.iter().enumerate() {
        out[m.edge_map[e]] = m.signs[e] as i64 * x;
    }
    out
}

/// Image of a degree-0 divisor: lift to an integer cochain, push it, take the boundary.
/// Since φ_* commutes with projection this is ι⁻¹ ∘ φ_* ∘ ι on degree-0 classes.
pub fn push_divisor(m: &OrCycMorphism, d: &Divisor) -> Divisor {
    debug_assert_eq!(d.degree(), 0);
    let a = m.source.spanning_tree().lift(&m.source, &d.0);
    Divisor(m.target.boundary_int(&pushforward_ints(m, &a)))
}

/// sgn_{φ(U)}(φ(ℓ)) = sgn_φ(ℓ) sgn_U(ℓ); unoriented and bioriented edges stay so.
pub fn pushforward_orientation(m: &OrCycMorphism, u: &PartialOrientation) -> PartialOrientation {
    let mut out = vec![EdgeState::Unoriented; m.target.num_edges()];
    for (e, &s) in u.0.iter().enumerate() {
        out[m.edge_map[e]] = match s {
            EdgeState::Bioriented => EdgeState::Bioriented,
            s => EdgeState::from_sign(s.sign() * m.signs[e]),
        };
    }
    PartialOrientation(out)
}

fn base_shift(g: &Multigraph, d: &Divisor) -> Divisor {
    let k = d.degree();
    d.clone().add_at(g.base_vertex(), -k)
}

/// Σ_{sgn = -1} (t(φℓ) - o(φℓ)), the divisor of Σ h_{φ(ℓ)} over reversed edges.
fn reversed_edges_divisor(m: &OrCycMorphism) -> Divisor {
    let h = &m.target;
    let mut d = Divisor::zero(h.num_vertices());
    for e in 0..m.edge_map.len() {
        if m.signs[e] < 0 {
            let r = m.edge_map[e];
            d[h.head(r)] += 1;
            d[h.tail(r)] -= 1;
        }
    }
    d
}

/// E_φ = φ_* ι c(Γ) - ι c(Γ') + Σ_{sgn=-1} h_{φ(ℓ)}, as a degree-0 class on the target.
pub fn rigidity_divisor(m: &OrCycMorphism) -> DivisorClass {
    let (g, h) = (&m.source, &m.target);
    let cg = chern_class(g, &PartialOrientation::base(g)).expect("base orientation");
    let ch = chern_class(h, &PartialOrientation::base(h)).expect("base orientation");
    let pushed = push_divisor(m, &base_shift(g, &cg));
    let d = &(&pushed - &base_shift(h, &ch)) + &reversed_edges_divisor(m);
    DivisorClass::of(h, &d)
}

/// The same class computed through rational cochains and ι⁻¹.
pub fn rigidity_divisor_via_cochains(m: &OrCycMorphism) -> Result<DivisorClass> {
    let (g, h) = (&m.source, &m.target);
    let (lg, lh) = (CycleLattice::new(g), CycleLattice::new(h));
    let cg = chern_class(g, &PartialOrientation::base(g))?;
    let ch = chern_class(h, &PartialOrientation::base(h))?;
    let (xg, _) = iota(g, &lg, g.base_edge(), &cg);
    let (xh, _) = iota(h, &lh, h.base_edge(), &ch);
    let mut x = pushforward_cochain(m, &xg).sub(&xh);
    for e in 0..m.edge_map.len() {
        if m.signs[e] < 0 {
            x = x.add(&lh.h_edge(m.edge_map[e]));
        }
    }
    iota_inverse_class(h, &lh, h.base_edge(), &x, 0)
}

/// Head of φ(ℓ) when it carries the orientation φ_O gives it: t(φℓ) if sgn = +1, o(φℓ) otherwise.
pub fn image_head(m: &OrCycMorphism, e: usize) -> usize {
    let r = m.edge_map[e];
    if m.signs[e] > 0 {
        m.target.head(r)
    } else {
        m.target.tail(r)
    }
}

/// L_X = Σ_{ℓ∈X} (P_{t(φℓ)} - φ_* P_{t(ℓ)}), as a degree-0 class on the target, where φℓ is
/// oriented as φ_O(Γ) orients it.
pub fn lowering_divisor(m: &OrCycMorphism, x: &[usize]) -> DivisorClass {
    let (g, h) = (&m.source, &m.target);
    let mut d = Divisor::zero(h.num_vertices());
    for &e in x {
        d[image_head(m, e)] += 1;
        d[h.base_vertex()] -= 1;
        let pv = Divisor::unit(g.num_vertices(), g.head(e)).add_at(g.base_vertex(), -1);
        d = &d - &push_divisor(m, &pv);
    }
    DivisorClass::of(h, &d)
}

/// φ_* ι c(U) - ι c(φ_O U) for a partial orientation U of the source.
pub fn diagram_defect(m: &OrCycMorphism, u: &PartialOrientation) -> Result<DivisorClass> {
    let (g, h) = (&m.source, &m.target);
    let cu = chern_class(g, u)?;
    let cv = chern_class(h, &pushforward_orientation(m, u))?;
    let d = &push_divisor(m, &base_shift(g, &cu)) - &base_shift(h, &cv);
    Ok(DivisorClass::of(h, &d))
}

fn require_genus(m: &OrCycMorphism) -> Result<()> {
    if genus(&m.source) < 2 {
        return Err(Error::GenusTooSmall);
    }
    Ok(())
}

pub fn is_rigid(m: &OrCycMorphism) -> Result<bool> {
    require_genus(m)?;
    Ok(rigidity_divisor(m).is_zero())
}

/// Whether φ_* carries θ_ê onto θ_ŵ, by enumeration.
pub fn theta_preserved(m: &OrCycMorphism, bound: usize) -> Result<bool> {
    require_genus(m)?;
    let (g, h) = (&m.source, &m.target);
    let tg = theta_divisor(g, g.base_edge(), bound)?;
    let th = theta_divisor(h, h.base_edge(), bound)?;
    Ok(tg.len() == th.len()
        && tg.iter().all(|c| th.contains(&DivisorClass::of(h, &push_divisor(m, c.rep())))))
}

/// Whether φ_* carries the image of S¹_ê onto the image of S¹_ŵ.
pub fn s1_image_preserved(m: &OrCycMorphism) -> bool {
    let (g, h) = (&m.source, &m.target);
    let from: BTreeSet<DivisorClass> = (0..g.num_vertices())
        .map(|v| {
            let d = Divisor::unit(g.num_vertices(), v).add_at(g.base_vertex(), -1);
            DivisorClass::of(h, &push_divisor(m, &d))
        })
        .collect();
    let to: BTreeSet<DivisorClass> = (0..h.num_vertices())
        .map(|w| DivisorClass::of(h, &Divisor::unit(h.num_vertices(), w).add_at(h.base_vertex(), -1)))
        .collect();
    from == to
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Degree-0 class on the source lying in θ_ê.
    pub source_class: DivisorClass,
    /// Its image on the target, which lies outside θ_ŵ.
    pub image_class: DivisorClass,
    /// Effective divisor v + T of degree g - 1 on the target that was pulled back.
    pub target_divisor: Divisor,
    /// Full orientation of the source whose Chern class gives `source_class`.
    pub source_orientation: PartialOrientation,
}

impl Witness {
    pub fn verify(&self, m: &OrCycMorphism) -> bool {
        let (g, h) = (&m.source, &m.target);
        let k = genus(g) - 1;
        let lifted = self.source_class.rep().clone().add_at(g.base_vertex(), k);
        let pushed = DivisorClass::of(h, &push_divisor(m, self.source_class.rep()));
        let image = self.image_class.rep().clone().add_at(h.base_vertex(), k);
        pushed == self.image_class && is_effective_class(g, &lifted) && !is_effective_class(h, &image)
    }
}

/// A theta element of the source whose image leaves θ_ŵ.
///
/// Picks the first vertex v with E_φ + v not effective, extends it to a nonspecial divisor
/// E_φ + v + T, orients v + T on the target and pulls that orientation back.
pub fn nonrigidity_witness(m: &OrCycMorphism) -> Result<Witness> {
    require_genus(m)?;
    let (g, h) = (&m.source, &m.target);
    let e = rigidity_divisor(m);
    if e.is_zero() {
        return Err(Error::MorphismIsRigid);
    }
    let k = genus(g) - 1;
    let inverse = m.inverse();
    for v in 0..h.num_vertices() {
        let q = e.rep().clone().add_at(v, 1);
        if is_effective_class(h, &q) {
            continue;
        }
        let t = extend_to_nonspecial(h, &q)?;
        let target_divisor = t.add_at(v, 1);
        let u_h = match lift_divisor_to_orientation(h, &target_divisor, &[])? {
            LiftOutcome::Lifted(u) => u,
            _ => return Err(Error::Internal("degree g-1 divisor has no full orientation".into())),
        };
        let u_g = pushforward_orientation(&inverse, &u_h);
        let s = chern_class(g, &u_g)?.add_at(g.base_vertex(), -k);
        let source_class = DivisorClass::of(g, &s);
        let image_class = DivisorClass::of(h, &push_divisor(m, source_class.rep()));
        let w = Witness {
            source_class,
            image_class,
            target_divisor,
            source_orientation: u_g,
        };
        if w.verify(m) {
            return Ok(w);
        }
        return Err(Error::Internal("witness failed verification".into()));
    }
    Err(Error::Internal("every vertex translate of the rigidity divisor is effective".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphLift {
    /// Series-fixing permutation of the target's edges.
    pub psi: Vec<usize>,
    pub vertex_map: Vec<usize>,
    /// False on two-vertex graphs, where other extensions exist.
    pub unique: bool,
    /// The vertex bijection sends the head of ê to the tail of ŵ.
    pub reverses_base: bool,
}

impl GraphLift {
    /// ψ ∘ φ as a map of edge indices.
    pub fn edge_map(&self, m: &OrCycMorphism) -> Vec<usize> {
        m.edge_map.iter().map(|&r| self.psi[r]).collect()
    }

    /// Checks that ψ fixes series classes and that ψ ∘ φ with the vertex map is an isomorphism.
    pub fn verify(&self, m: &OrCycMorphism) -> bool {
        let (g, h) = (&m.source, &m.target);
        let labels = match series_labels(h) {
            Ok(l) => l,
            Err(_) => return false,
        };
        let is_perm = |p: &[usize], n: usize| {
            let s: BTreeSet<usize> = p.iter().copied().collect();
            p.len() == n && s.len() == n && s.iter().all(|&x| x < n)
        };
        if !is_perm(&self.psi, h.num_edges()) || !is_perm(&self.vertex_map, h.num_vertices()) {
            return false;
        }
        if g.num_vertices() != h.num_vertices() || (0..h.num_edges()).any(|r| labels[self.psi[r]] != labels[r]) {
            return false;
        }
        self.edge_map(m).iter().enumerate().all(|(e, &r)| {
            let a = [self.vertex_map[g.tail(e)], self.vertex_map[g.head(e)]];
            let b = [h.tail(r), h.head(r)];
            (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
        })
    }
}

/// For a rigid φ, a series-fixing ψ with ψ ∘ φ induced by a vertex bijection.
///
/// Vertices are matched through S¹: p goes to the r with φ_*(p - t(ê)) ~ r - t(ŵ). When φ
/// carries ê onto ŵ head to tail, φ_* is minus the map the isomorphism induces, and the
/// match is instead -φ_*(p - t(ê)) ~ r - o(ŵ).
pub fn lift_to_graph_isomorphism(m: &OrCycMorphism) -> Result<GraphLift> {
    require_genus(m)?;
    if !rigidity_divisor(m).is_zero() {
        return Err(Error::MorphismNotRigid);
    }
    let h = &m.target;
    let mut last = Error::NoIsomorphismLift;
    // ψ may move ŵ inside its series class, so other anchors are tried after the natural one
    let mut attempts = vec![(1, h.base_vertex()), (-1, h.tail(h.base_edge()))];
    for sign in [1, -1] {
        attempts.extend((0..h.num_vertices()).map(|a| (sign, a)));
    }
    for (sign, anchor) in attempts {
        match lift_with(m, sign, anchor) {
            Ok(lift) => return Ok(lift),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn lift_with(m: &OrCycMorphism, sign: i64, anchor: usize) -> Result<GraphLift> {
    let (g, h) = (&m.source, &m.target);
    let nh = h.num_vertices();
    // class of r - anchor determines r, since S¹ is injective
    let by_class: HashMap<DivisorClass, usize> = (0..nh)
        .map(|r| (DivisorClass::of(h, &Divisor::unit(nh, r).add_at(anchor, -1)), r))
        .collect();
    let mut vertex_map = vec![usize::MAX; g.num_vertices()];
    let mut psi = vec![usize::MAX; h.num_edges()];
    let mut used = vec![false; h.num_edges()];
    let labels = series_labels(h)?;
    let locate = |p: usize| -> Result<usize> {
        let d = Divisor::unit(g.num_vertices(), p).add_at(g.base_vertex(), -1);
        by_class
            .get(&DivisorClass::of(h, &push_divisor(m, &d).scaled(sign)))
            .copied()
            .ok_or(Error::NoIsomorphismLift)
    };
    let mut seen_edge = vec![false; g.num_edges()];
    let base = g.base_edge();
    let mut queue = VecDeque::from([base]);
    seen_edge[base] = true;
    while let Some(l) = queue.pop_front() {
        for v in [g.tail(l), g.head(l)] {
            if vertex_map[v] == usize::MAX {
                vertex_map[v] = locate(v)?;
                for &(_, f) in g.neighbors(v) {
                    if !seen_edge[f] {
                        seen_edge[f] = true;
                        queue.push_back(f);
                    }
                }
            }
        }
        let (a, b) = (vertex_map[g.tail(l)], vertex_map[g.head(l)]);
        let phi = m.edge_map[l];
        let choice = (0..h.num_edges()).find(|&r| {
            !used[r]
                && labels[r] == labels[phi]
                && ((h.tail(r) == a && h.head(r) == b) || (h.tail(r) == b && h.head(r) == a))
        });
        let r = choice.ok_or(Error::NoIsomorphismLift)?;
        used[r] = true;
        psi[phi] = r;
    }
    let lift = GraphLift {
        psi,
        vertex_map,
        unique: g.num_vertices() > 2,
        reverses_base: sign < 0,
    };
    if !lift.verify(m) {
        return Err(Error::NoIsomorphismLift);
    }
    Ok(lift)
}

/// Whether a permutation of h's edges only moves edges inside their series classes.
pub fn is_series_fixing(h: &Multigraph, psi: &[usize]) -> Result<bool> {
    let labels = series_labels(h)?;
    Ok((0..h.num_edges()).all(|r| labels[psi[r]] == labels[r]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidLift {
    Lifted {
        /// Target edge the source base edge was sent to by the rigid composite.
        base_image: usize,
        /// Edge map of the resulting graph isomorphism.
        edge_map: Vec<usize>,
        vertex_map: Vec<usize>,
        unique: bool,
    },
    NotLiftable {
        tried: Vec<usize>,
    },
}

/// Tries τ_i ∘ φ for each w_i in the series class of φ(ê); the first rigid one lifts.
pub fn lift_matroid_isomorphism(g: &Multigraph, h: &Multigraph, edge_map: &[usize]) -> Result<MatroidLift> {
    if !is_cyclic_bijection(g, h, edge_map)? {
        return Err(Error::InvalidCyclicBijection);
    }
    if genus(g) < 2 {
        return Err(Error::GenusTooSmall);
    }
    check_object(g)?;
    check_object(h)?;
    let labels = series_labels(h)?;
    let w = edge_map[g.base_edge()];
    let mut tried = Vec::new();
    for wi in (0..h.num_edges()).filter(|&r| labels[r] == labels[w]) {
        let swapped: Vec<usize> = edge_map
            .iter()
            .map(|&r| if r == w { wi } else if r == wi { w } else { r })
            .collect();
        let hi = h.with_base(wi);
        let m = OrCycMorphism::new(g, &hi, &swapped)?;
        if rigidity_divisor(&m).is_zero() {
            match lift_to_graph_isomorphism(&m) {
                Ok(lift) => {
                    return Ok(MatroidLift::Lifted {
                        base_image: wi,
                        edge_map: lift.edge_map(&m),
                        vertex_map: lift.vertex_map,
                        unique: lift.unique,
                    })
                }
                Err(Error::NoIsomorphismLift) => {}
                Err(e) => return Err(e),
            }
        }
        tried.push(wi);
    }
    Ok(MatroidLift::NotLiftable { tried })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub rigidity_divisor: DivisorClass,
    pub is_rigid: bool,
    pub witness: Option<Witness>,
    pub lift: Option<GraphLift>,
}

/// Rigidity divisor plus the witness (non-rigid) or the lifted isomorphism (rigid). A rigid
/// morphism whose vertex classes do not match up gets `lift: None`.
pub fn analyze(m: &OrCycMorphism) -> Result<RigidityReport> {
    require_genus(m)?;
    let e = rigidity_divisor(m);
    let rigid = e.is_zero();
    let lift = if rigid {
        match lift_to_graph_isomorphism(m) {
            Ok(l) => Some(l),
            Err(Error::NoIsomorphismLift) => None,
            Err(err) => return Err(err),
        }
    } else {
        None
    };
    Ok(RigidityReport {
        witness: if rigid { None } else { Some(nonrigidity_witness(m)?) },
        lift,
        rigidity_divisor: e,
        is_rigid: rigid,
    })
}
