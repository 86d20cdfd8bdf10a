//! Exact rational 1-cochains, the cycle lattice and the maps between Pic and J × Z.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divisor::{Divisor, DivisorClass};
use crate::error::{Error, Result};
use crate::multigraph::{fundamental_cycles, shortest_path, Multigraph};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain(pub Vec<Q>);

impl Cochain {
    pub fn zero(m: usize) -> Self {
        Cochain(vec![Q::zero(); m])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Cochain(v.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect())
    }

    /// The indicator ℓ* of a single edge.
    pub fn indicator(m: usize, e: usize) -> Self {
        let mut c = Cochain::zero(m);
        c.0[e] = Q::one();
        c
    }

    pub fn dot(&self, other: &Cochain) -> Q {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        Cochain(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Q) -> Cochain {
        Cochain(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// Integer coefficients, if every entry is integral and fits in i64.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|a| if a.is_integer() { a.to_integer().to_i64() } else { None }).collect()
    }

    /// Rational boundary: Σ a_e (t(e) - o(e)).
    pub fn boundary(&self, g: &Multigraph) -> Vec<Q> {
        let mut d = vec![Q::zero(); g.num_vertices()];
        for (e, a) in self.0.iter().enumerate() {
            d[g.head(e)] += a;
            d[g.tail(e)] -= a;
        }
        d
    }

    /// The cycle space is exactly the kernel of the boundary map.
    pub fn in_cycle_space(&self, g: &Multigraph) -> bool {
        self.boundary(g).iter().all(|x| x.is_zero())
    }
}

/// H¹(G, Z) with the fundamental-cycle basis and the inverse of its Gram matrix.
#[derive(Debug, Clone)]
pub struct CycleLattice {
    basis: Vec<Cochain>,
    /// cotree[i] is the non-tree edge whose fundamental cycle is basis[i]
    cotree: Vec<usize>,
    gram_inv: Vec<Vec<Q>>,
    num_edges: usize,
}

impl CycleLattice {
    pub fn new(g: &Multigraph) -> Self {
        let m = g.num_edges();
        let cycles = fundamental_cycles(g);
        let cotree = cycles.iter().map(|c| c.edges[0]).collect();
        let basis: Vec<Cochain> = cycles.iter().map(|c| Cochain::from_ints(&c.cochain(m))).collect();
        let gram: Vec<Vec<Q>> = basis.iter().map(|a| basis.iter().map(|b| a.dot(b)).collect()).collect();
        CycleLattice {
            gram_inv: invert(gram),
            basis,
            cotree,
            num_edges: m,
        }
    }

    pub fn basis(&self) -> &[Cochain] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Vec<Vec<Q>> {
        self.basis.iter().map(|a| self.basis.iter().map(|b| a.dot(b)).collect()).collect()
    }

    /// Coefficients c with π(x) = Σ c_i b_i.
    fn coefficients(&self, x: &Cochain) -> Vec<Q> {
        let pairings: Vec<Q> = self.basis.iter().map(|b| b.dot(x)).collect();
        self.gram_inv
            .iter()
            .map(|row| row.iter().zip(&pairings).map(|(a, p)| a * p).sum())
            .collect()
    }

    pub fn project(&self, x: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.num_edges);
        for (c, b) in self.coefficients(x).iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    /// h_ℓ = π(ℓ*)
    pub fn h_edge(&self, e: usize) -> Cochain {
        self.project(&Cochain::indicator(self.num_edges, e))
    }

    /// Whether x - y is an integer combination of the basis cycles.
    pub fn lattice_equivalent(&self, g: &Multigraph, x: &Cochain, y: &Cochain) -> Result<bool> {
        if !x.in_cycle_space(g) || !y.in_cycle_space(g) {
            return Err(Error::NotInCycleSpace);
        }
        let diff = x.sub(y);
        Ok(self.coefficients(&diff).iter().all(|c| c.is_integer()))
    }

    /// Whether ⟨x, b⟩ is an integer for every lattice vector b.
    pub fn pairs_integrally(&self, x: &Cochain) -> bool {
        self.basis.iter().all(|b| b.dot(x).is_integer())
    }
}

fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Gram matrix of a basis is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let s = &f * &a[col][j];
                    a[r][j] -= s;
                    let s = &f * &inv[col][j];
                    inv[r][j] -= s;
                }
            }
        }
    }
    inv
}

/// ι: divisor of degree n ↦ (π of an integer cochain with boundary d - n·t(ê), n).
pub fn iota(g: &Multigraph, lat: &CycleLattice, base_edge: usize, d: &Divisor) -> (Cochain, i64) {
    let n = d.degree();
    let shifted = d.clone().add_at(g.head(base_edge), -n);
    let a = g.spanning_tree().lift(g, &shifted.0);
    (lat.project(&Cochain::from_ints(&a)), n)
}

/// ι⁻¹(x, k) = k·t(ê) + ∂a for an integer cochain a with π(a) = x.
///
/// a is supported on the non-tree edges: the fundamental cycle of f is the only basis
/// cycle meeting f, so a(f) = ⟨x, b_f⟩ reproduces every pairing of x.
pub fn iota_inverse(g: &Multigraph, lat: &CycleLattice, base_edge: usize, x: &Cochain, k: i64) -> Result<Divisor> {
    if !x.in_cycle_space(g) {
        return Err(Error::NotInCycleSpace);
    }
    let mut d = Divisor::zero(g.num_vertices());
    d[g.head(base_edge)] += k;
    for (b, &f) in lat.basis.iter().zip(&lat.cotree) {
        let m = b.dot(x);
        if !m.is_integer() {
            return Err(Error::NonIntegralClass);
        }
        let m = m.to_integer().to_i64().ok_or(Error::NonIntegralClass)?;
        d[g.head(f)] += m;
        d[g.tail(f)] -= m;
    }
    Ok(d)
}

/// Class version of [`iota_inverse`], reduced at the graph's base vertex.
pub fn iota_inverse_class(
    g: &Multigraph,
    lat: &CycleLattice,
    base_edge: usize,
    x: &Cochain,
    k: i64,
) -> Result<DivisorClass> {
    Ok(DivisorClass::of(g, &iota_inverse(g, lat, base_edge, x, k)?))
}

/// P_v: projection of the shortest algebraic path from t(ê) to v.
pub fn p_vertex(g: &Multigraph, lat: &CycleLattice, base_edge: usize, v: usize) -> Cochain {
    let path = shortest_path(g, g.head(base_edge), v);
    lat.project(&Cochain::from_ints(&path.cochain(g.num_edges())))
}

pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        format!("{}", q.to_integer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn abs_eq(a: &Cochain, b: &Cochain) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x.abs() == y.abs())
}
