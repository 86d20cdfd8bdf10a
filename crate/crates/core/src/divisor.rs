//! Divisors, chip-firing and Picard classes.
//!
//! Class representatives are q-reduced. Reduction first borrows chips layer by layer
//! (farthest BFS layer from q first) until everything off q is nonnegative, then runs
//! Dhar's burning test from q and fires the unburnt set as often as it safely can.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multigraph::{genus, Multigraph};

pub const DEFAULT_MAX_CLASSES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Divisor::zero(n);
        d.0[v] = 1;
        d
    }

    /// Σ points, with repetition.
    pub fn from_points(n: usize, points: &[usize]) -> Self {
        let mut d = Divisor::zero(n);
        for &p in points {
            d.0[p] += 1;
        }
        d
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_at(mut self, v: usize, k: i64) -> Self {
        self.0[v] += k;
        self
    }

    pub fn scaled(&self, k: i64) -> Self {
        Divisor(self.0.iter().map(|c| c * k).collect())
    }

    /// Pointwise a >= b.
    pub fn dominates(&self, other: &Divisor) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.0[v]
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        &self + &rhs
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        &self - &rhs
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor(self.0.into_iter().map(|c| -c).collect())
    }
}

/// A linear equivalence class, stored as its reduced form at `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    rep: Divisor,
    q: usize,
}

impl DivisorClass {
    /// Class of `d`, reduced at the graph's base vertex t(ê).
    pub fn of(g: &Multigraph, d: &Divisor) -> Self {
        let q = g.base_vertex();
        DivisorClass { rep: q_reduce(g, d, q), q }
    }

    pub fn rep(&self) -> &Divisor {
        &self.rep
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> i64 {
        self.rep.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_effective(&self) -> bool {
        self.rep[self.q] >= 0
    }
}

/// Δ(script): vertex u fires script[u] times (negative means borrowing).
pub fn laplacian_fire(g: &Multigraph, script: &[i64]) -> Divisor {
    let mut d = Divisor::zero(g.num_vertices());
    for e in 0..g.num_edges() {
        let (a, b) = (g.tail(e), g.head(e));
        let flow = script[a] - script[b];
        d[a] -= flow;
        d[b] += flow;
    }
    d
}

fn fire_set(g: &Multigraph, d: &mut Divisor, inside: &[bool], times: i64) {
    for e in 0..g.num_edges() {
        let (a, b) = (g.tail(e), g.head(e));
        if inside[a] != inside[b] {
            let (from, to) = if inside[a] { (a, b) } else { (b, a) };
            d[from] -= times;
            d[to] += times;
        }
    }
}

/// Dhar's burning test from q. Returns the unburnt vertices (empty when d is q-reduced).
fn unburnt(g: &Multigraph, d: &Divisor, q: usize) -> Vec<bool> {
    let n = g.num_vertices();
    let mut burnt = vec![false; n];
    let mut hits = vec![0i64; n];
    burnt[q] = true;
    let mut queue = VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if burnt[w] {
                continue;
            }
            hits[w] += 1;
            if hits[w] > d[w] {
                burnt[w] = true;
                queue.push_back(w);
            }
        }
    }
    burnt.iter().map(|b| !b).collect()
}

/// Order in which Dhar's test burns the vertices of a q-reduced divisor (q first).
pub fn burning_order(g: &Multigraph, d: &Divisor, q: usize) -> Vec<usize> {
    let n = g.num_vertices();
    let mut burnt = vec![false; n];
    let mut hits = vec![0i64; n];
    burnt[q] = true;
    let mut order = vec![q];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &(w, _) in g.neighbors(v) {
            if burnt[w] {
                continue;
            }
            hits[w] += 1;
            if hits[w] > d[w] {
                burnt[w] = true;
                order.push(w);
            }
        }
    }
    order
}

pub fn q_reduce(g: &Multigraph, d: &Divisor, q: usize) -> Divisor {
    let n = g.num_vertices();
    let mut d = d.clone();
    // BFS layers from q
    let mut dist = vec![usize::MAX; n];
    dist[q] = 0;
    let mut queue = VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let far = dist.iter().copied().max().unwrap_or(0);
    // Borrowing by {dist >= k} feeds layer k from layer k-1 and touches nothing farther out.
    for k in (1..=far).rev() {
        let mut times = 0i64;
        for v in 0..n {
            if dist[v] == k && d[v] < 0 {
                let inward = g.neighbors(v).iter().filter(|&&(w, _)| dist[w] == k - 1).count() as i64;
                times = times.max((-d[v] + inward - 1) / inward);
            }
        }
        if times > 0 {
            let outer: Vec<bool> = dist.iter().map(|&x| x < k).collect();
            fire_set(g, &mut d, &outer, times);
        }
    }
    loop {
        let legal = unburnt(g, &d, q);
        if !legal.iter().any(|&b| b) {
            return d;
        }
        let mut times = i64::MAX;
        for v in 0..n {
            if legal[v] {
                let out = g.neighbors(v).iter().filter(|&&(w, _)| !legal[w]).count() as i64;
                if out > 0 {
                    times = times.min(d[v] / out);
                }
            }
        }
        debug_assert!(times >= 1);
        fire_set(g, &mut d, &legal, times);
    }
}

pub fn linearly_equivalent(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> bool {
    d1.degree() == d2.degree() && q_reduce(g, &(d1 - d2), g.base_vertex()).is_zero()
}

pub fn is_effective_class(g: &Multigraph, d: &Divisor) -> bool {
    let q = g.base_vertex();
    q_reduce(g, d, q)[q] >= 0
}

/// K(v) = deg(v) - 2.
pub fn canonical_divisor(g: &Multigraph) -> Divisor {
    Divisor((0..g.num_vertices()).map(|v| g.degree(v) as i64 - 2).collect())
}

/// Class of Σ points - n·t(ê) for the given base edge.
pub fn abel_jacobi(g: &Multigraph, base_edge: usize, points: &[usize]) -> DivisorClass {
    let n = g.num_vertices();
    let q = g.head(base_edge);
    let d = Divisor::from_points(n, points).add_at(q, -(points.len() as i64));
    DivisorClass::of(g, &d)
}

/// All classes of the given degree, by closing the reduced forms under chip moves v - q.
pub fn enumerate_picard(g: &Multigraph, degree: i64, bound: usize) -> Result<BTreeSet<DivisorClass>> {
    let n = g.num_vertices();
    let q = g.base_vertex();
    let start = DivisorClass::of(g, &Divisor::zero(n).add_at(q, degree));
    let mut seen: HashSet<Divisor> = HashSet::from([start.rep.clone()]);
    let mut queue = VecDeque::from([start.rep]);
    while let Some(rep) = queue.pop_front() {
        for v in 0..n {
            if v == q {
                continue;
            }
            let next = q_reduce(g, &rep.clone().add_at(v, 1).add_at(q, -1), q);
            if !seen.contains(&next) {
                if seen.len() >= bound {
                    return Err(Error::EnumerationBoundExceeded(bound));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().map(|rep| DivisorClass { rep, q }).collect())
}

/// Degree-0 classes c with c + (g-1)·t(ê) effective, reduced at the graph's base vertex.
pub fn theta_divisor(g: &Multigraph, base_edge: usize, bound: usize) -> Result<BTreeSet<DivisorClass>> {
    let gen = genus(g);
    if gen < 1 {
        return Err(Error::GenusTooSmall);
    }
    let t = g.head(base_edge);
    let q = g.base_vertex();
    Ok(enumerate_picard(g, 0, bound)?
        .into_iter()
        .filter(|c| q_reduce(g, &c.rep.clone().add_at(t, gen - 1), q)[q] >= 0)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Speciality {
    Special,
    Nonspecial,
}

pub fn classify_gminus1(g: &Multigraph, d: &Divisor) -> Result<Speciality> {
    let expected = genus(g) - 1;
    if d.degree() != expected {
        return Err(Error::WrongDegree {
            expected,
            found: d.degree(),
        });
    }
    Ok(if is_effective_class(g, d) {
        Speciality::Special
    } else {
        Speciality::Nonspecial
    })
}

/// Every effective divisor of degree k, in lexicographic order of the chip vector.
pub fn effective_divisors(n: usize, k: i64) -> Vec<Divisor> {
    fn rec(n: usize, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Divisor>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Divisor(cur.clone()));
            cur[i] = 0;
            return;
        }
        for c in (0..=left).rev() {
            cur[i] = c;
            rec(n, i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if k < 0 || n == 0 {
        return out;
    }
    rec(n, 0, k, &mut vec![0; n], &mut out);
    out
}

/// |Pic⁰| as a determinant of the reduced Laplacian (the spanning-tree count).
pub fn picard_order(g: &Multigraph) -> BigInt {
    let n = g.num_vertices();
    let m = n - 1;
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for e in 0..g.num_edges() {
        let (u, v) = (g.tail(e), g.head(e));
        for (x, y) in [(u, v), (v, u)] {
            if x < m {
                a[x][x] += 1;
                if y < m {
                    a[x][y] -= 1;
                }
            }
        }
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..m {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::multigraph::build_graph;
    use proptest::prelude::*;

    fn theta() -> Multigraph {
        build_graph(&[("a", "x", "y"), ("b", "x", "y"), ("c", "x", "y")], "a").unwrap()
    }

    fn div(g: &Multigraph, terms: &[(&str, i64)]) -> Divisor {
        let mut d = Divisor::zero(g.num_vertices());
        for &(v, k) in terms {
            d[g.vertex(v).unwrap()] += k;
        }
        d
    }

    /// Independent check of d ~ 0: solve the reduced Laplacian system over the rationals
    /// with fraction-free elimination and test integrality.
    fn in_laplacian_image(g: &Multigraph, d: &Divisor) -> bool {
        use num_rational::BigRational;
        use num_traits::{One, Zero};
        let n = g.num_vertices();
        if d.degree() != 0 {
            return false;
        }
        let mut m = vec![vec![BigRational::zero(); n]; n - 1];
        for e in 0..g.num_edges() {
            let (a, b) = (g.tail(e), g.head(e));
            for (x, y) in [(a, b), (b, a)] {
                if x < n - 1 {
                    m[x][x] += BigRational::one();
                    if y < n - 1 {
                        m[x][y] -= BigRational::one();
                    }
                }
            }
        }
        for i in 0..n - 1 {
            m[i][n - 1] = BigRational::from_integer(d[i].into());
        }
        let k = n - 1;
        for col in 0..k {
            let piv = (col..k).find(|&r| !m[r][col].is_zero()).unwrap();
            m.swap(col, piv);
            let p = m[col][col].clone();
            for j in col..=k {
                m[col][j] = &m[col][j] / &p;
            }
            for r in 0..k {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in col..=k {
                        let t = &f * &m[col][j];
                        m[r][j] -= t;
                    }
                }
            }
        }
        (0..k).all(|i| m[i][k].is_integer())
    }

    #[test]
    fn firing_examples() {
        let t = theta();
        assert!(laplacian_fire(&t, &[0, 0]).is_zero());
        assert!(laplacian_fire(&t, &[1, 1]).is_zero());
        assert_eq!(laplacian_fire(&t, &[1, 0]).0, vec![-3, 3]);
    }

    #[test]
    fn reduces_fixture_divisor() {
        let k = fixtures::k();
        let w4 = k.vertex("w4").unwrap();
        let d = div(&k, &[("w2", 1), ("w3", 3), ("w4", -4)]);
        assert_eq!(q_reduce(&k, &d, w4), div(&k, &[("w3", 1), ("w1", 1), ("w4", -2)]));
        assert!(!linearly_equivalent(&k, &d, &Divisor::zero(4)));
        assert!(!in_laplacian_image(&k, &d));
        let both = &div(&k, &[("w2", 1), ("w4", 1)]) + &div(&k, &[("w3", 1), ("w1", 1), ("w4", -2)]);
        assert!(!is_effective_class(&k, &both));
        assert_eq!(classify_gminus1(&k, &both), Ok(Speciality::Nonspecial));
        assert_eq!(classify_gminus1(&k, &div(&k, &[("w2", 1), ("w4", 1)])), Ok(Speciality::Special));
        assert!(matches!(
            classify_gminus1(&k, &div(&k, &[("w2", 1)])),
            Err(Error::WrongDegree { .. })
        ));
    }

    #[test]
    fn reduced_form_is_dhar_stable() {
        let g = fixtures::g();
        let q = g.base_vertex();
        for d in effective_divisors(5, 3) {
            let shifted = d.add_at(q, -5);
            let r = q_reduce(&g, &shifted, q);
            assert!((0..5).all(|v| v == q || r[v] >= 0));
            assert!(!unburnt(&g, &r, q).iter().any(|&b| b));
            assert!(in_laplacian_image(&g, &(&r - &shifted)));
        }
    }

    #[test]
    fn theta_graph_differences_are_not_principal() {
        let t = theta();
        let d = Divisor(vec![1, -1]);
        assert!(!linearly_equivalent(&t, &d, &Divisor::zero(2)));
        assert!(!in_laplacian_image(&t, &d));
    }

    #[test]
    fn canonical_divisors() {
        assert_eq!(canonical_divisor(&theta()).0, vec![1, 1]);
        let sq = build_graph(&[("1", "a", "b"), ("2", "b", "c"), ("3", "c", "a")], "1").unwrap();
        assert!(canonical_divisor(&sq).is_zero());
        assert_eq!(canonical_divisor(&fixtures::g()).degree(), 4);
    }

    #[test]
    fn abel_jacobi_basics() {
        let j = fixtures::j();
        let t = j.base_vertex();
        assert!(abel_jacobi(&j, j.base_edge(), &[t, t]).is_zero());
        for g in [fixtures::g(), fixtures::h(), fixtures::j(), fixtures::k()] {
            let images: BTreeSet<DivisorClass> =
                (0..g.num_vertices()).map(|v| abel_jacobi(&g, g.base_edge(), &[v])).collect();
            assert_eq!(images.len(), g.num_vertices());
        }
    }

    #[test]
    fn picard_sizes() {
        assert_eq!(enumerate_picard(&theta(), 0, DEFAULT_MAX_CLASSES).unwrap().len(), 3);
        let tree = build_graph(&[("e", "a", "b"), ("f", "b", "c")], "e").unwrap();
        assert_eq!(enumerate_picard(&tree, 0, DEFAULT_MAX_CLASSES).unwrap().len(), 1);
        assert_eq!(
            enumerate_picard(&theta(), 0, 2),
            Err(Error::EnumerationBoundExceeded(2))
        );
        // spanning trees of G counted by brute force over 4-edge subsets
        let g = fixtures::g();
        let mut trees = 0;
        for mask in 0u32..(1 << 7) {
            if mask.count_ones() == 4 {
                let (_, c) = crate::multigraph::components(&g, |e| mask >> e & 1 == 1, |_| true);
                if c == 1 {
                    trees += 1;
                }
            }
        }
        assert_eq!(enumerate_picard(&g, 0, DEFAULT_MAX_CLASSES).unwrap().len(), trees);
        let p3 = enumerate_picard(&g, 3, DEFAULT_MAX_CLASSES).unwrap();
        assert_eq!(p3.len(), trees);
        assert!(p3.iter().all(|c| c.degree() == 3));
        assert_eq!(picard_order(&g), BigInt::from(trees));
        assert_eq!(picard_order(&theta()), BigInt::from(3));
        assert_eq!(picard_order(&tree), BigInt::from(1));
    }

    #[test]
    fn theta_by_brute_force() {
        let t = theta();
        let th = theta_divisor(&t, t.base_edge(), DEFAULT_MAX_CLASSES).unwrap();
        let ims: BTreeSet<_> = (0..2).map(|v| abel_jacobi(&t, t.base_edge(), &[v])).collect();
        assert_eq!(th, ims);
        for g in [fixtures::g(), fixtures::h(), fixtures::j(), fixtures::k()] {
            let gen = genus(&g) as usize;
            let th = theta_divisor(&g, g.base_edge(), DEFAULT_MAX_CLASSES).unwrap();
            let mut brute = BTreeSet::new();
            for d in effective_divisors(g.num_vertices(), gen as i64 - 1) {
                let pts: Vec<usize> = (0..g.num_vertices()).flat_map(|v| std::iter::repeat_n(v, d[v] as usize)).collect();
                brute.insert(abel_jacobi(&g, g.base_edge(), &pts));
            }
            assert_eq!(th, brute);
            let sizes: BTreeSet<usize> = (0..g.num_edges())
                .map(|e| theta_divisor(&g.with_base(e), e, DEFAULT_MAX_CLASSES).unwrap().len())
                .collect();
            assert_eq!(sizes.len(), 1);
        }
    }

    #[test]
    fn high_degree_is_effective() {
        for g in [fixtures::j(), fixtures::k(), theta()] {
            let gen = genus(&g);
            let n = g.num_vertices();
            for k in gen..gen + 2 {
                // every divisor of degree k in a box around zero
                for d in effective_divisors(n, k + 2 * n as i64) {
                    let shifted = Divisor(d.0.iter().map(|c| c - 2).collect());
                    assert!(is_effective_class(&g, &shifted));
                }
            }
        }
    }

    fn graph_and_divisor() -> impl Strategy<Value = (Multigraph, Divisor, Vec<i64>)> {
        (2usize..6)
            .prop_flat_map(|n| {
                let pairs = prop::collection::vec((0..n, 0..n), n..3 * n);
                (Just(n), pairs, prop::collection::vec(-6i64..6, n), prop::collection::vec(-3i64..3, n))
            })
            .prop_filter_map("connected loopless", |(n, pairs, d, s)| {
                let mut list: Vec<(String, String, String)> = (1..n)
                    .map(|i| (format!("t{i}"), format!("v{}", i - 1), format!("v{i}")))
                    .collect();
                for (i, (a, b)) in pairs.into_iter().enumerate() {
                    if a != b {
                        list.push((format!("x{i}"), format!("v{a}"), format!("v{b}")));
                    }
                }
                let g = build_graph(&list, &list[0].0.clone()).ok()?;
                Some((g, Divisor(d), s))
            })
    }

    proptest! {
        #[test]
        fn reduction_is_a_class_invariant((g, d, s) in graph_and_divisor()) {
            let q = g.base_vertex();
            let r = q_reduce(&g, &d, q);
            prop_assert_eq!(r.degree(), d.degree());
            prop_assert_eq!(q_reduce(&g, &r, q), r.clone());
            let moved = &d + &laplacian_fire(&g, &s);
            prop_assert_eq!(q_reduce(&g, &moved, q), r.clone());
            prop_assert!(linearly_equivalent(&g, &d, &moved));
            prop_assert!(in_laplacian_image(&g, &(&r - &d)));
        }

        #[test]
        fn degree_at_least_genus_is_effective((g, d, _s) in graph_and_divisor()) {
            let gen = genus(&g);
            let shift = gen - d.degree();
            let lifted = d.clone().add_at(0, shift.max(0));
            prop_assert!(is_effective_class(&g, &lifted));
        }
    }
}
