use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rat};
use super::{hermite_rows, integer_kernel, smith_normal_form, IntMatrix};

/// A subgroup of `Z^ambient_rank` given by generators. The zero sublattice is
/// an empty generator list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sublattice {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<BigInt>>,
}

/// Invariant-factor decomposition `Z^r (+) Z/t_1 (+) ... (+) Z/t_k`, `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }
}

impl Sublattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient_rank, "generator outside the ambient rank");
        }
        Sublattice { ambient_rank, generators }
    }

    pub fn from_i64(ambient_rank: usize, gens: &[Vec<i64>]) -> Self {
        Self::new(ambient_rank, gens.iter().map(|g| super::int_vec(g)).collect())
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, generators: Vec::new() }
    }

    pub fn full(ambient_rank: usize) -> Self {
        let id = IntMatrix::identity(ambient_rank);
        Sublattice { ambient_rank, generators: id.row_vecs() }
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.generators, self.ambient_rank)
    }

    /// Canonical basis (rows of the Hermite normal form).
    pub fn hnf_basis(&self) -> IntMatrix {
        hermite_rows(&self.generator_matrix())
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.hnf_basis().row_vecs()
    }

    pub fn rank(&self) -> usize {
        self.hnf_basis().rows()
    }

    pub fn canonical(&self) -> Sublattice {
        Sublattice { ambient_rank: self.ambient_rank, generators: self.basis() }
    }

    /// The lattice `Z^n ∩ span_Q(L)`.
    pub fn saturation(&self) -> Sublattice {
        let n = self.ambient_rank;
        let perp = integer_kernel(&self.generator_matrix());
        if perp.is_empty() {
            return Sublattice::full(n);
        }
        let back = integer_kernel(&IntMatrix::from_rows(&perp, n));
        Sublattice::new(n, back).canonical()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let coords = self.rational_coordinates(&rational::to_rat_vec(v))?;
        rational::to_int_vec(&coords)
    }

    /// Coordinates of a rational vector in the canonical basis, if it lies in
    /// the rational span.
    pub fn rational_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let b = self.basis();
        let k = b.len();
        // solve sum_i c_i b_i = v, i.e. B^T c = v
        let rows: Vec<Vec<Rat>> = (0..self.ambient_rank)
            .map(|j| (0..k).map(|i| Rat::from_integer(b[i][j].clone())).collect())
            .collect();
        rational::solve(&rows, v, k)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn in_span(&self, v: &[Rat]) -> bool {
        self.rational_coordinates(v).is_some()
    }

    pub fn sum(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Sublattice::new(self.ambient_rank, g).canonical()
    }

    pub fn intersection(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let n = self.ambient_rank;
        let b1 = self.basis();
        let b2 = other.basis();
        if b1.is_empty() || b2.is_empty() {
            return Sublattice::zero(n);
        }
        // (u, w) with u B1 = w B2  <=>  [B1; -B2]^T (u, w) = 0
        let mut stacked = b1.clone();
        stacked.extend(b2.iter().map(|r| r.iter().map(|x| -x).collect()));
        let m = IntMatrix::from_rows(&stacked, n).transpose();
        let kern = integer_kernel(&m);
        let gens = kern
            .iter()
            .map(|z| {
                (0..n)
                    .map(|j| (0..b1.len()).map(|i| &z[i] * &b1[i][j]).sum())
                    .collect()
            })
            .collect();
        Sublattice::new(n, gens).canonical()
    }

    /// Index `[self : sub]` when `sub ⊆ self` of equal rank.
    pub fn index_of(&self, sub: &Sublattice) -> Option<BigInt> {
        if !self.contains_lattice(sub) || self.rank() != sub.rank() {
            return None;
        }
        let coords: Vec<Vec<BigInt>> =
            sub.basis().iter().map(|g| self.coordinates(g).expect("contained")).collect();
        let k = self.rank();
        use num_traits::Signed;
        Some(IntMatrix::from_rows(&coords, k).determinant().abs())
    }
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.hnf_basis() == other.hnf_basis()
    }
}

impl Eq for Sublattice {}

/// Invariant factors of `Z^ambient / L`.
pub fn quotient_invariants(l: &Sublattice) -> QuotientInvariants {
    let snf = smith_normal_form(&l.generator_matrix());
    let divisors = snf.elementary_divisors();
    QuotientInvariants {
        free_rank: l.ambient_rank - divisors.len(),
        torsion_factors: divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// `L` is a direct summand of `Z^ambient` iff every nonzero elementary divisor is 1.
pub fn is_direct_summand(l: &Sublattice) -> bool {
    smith_normal_form(&l.generator_matrix())
        .elementary_divisors()
        .iter()
        .all(One::is_one)
}

/// `{v : M v = v for all M}` as a canonical (and automatically saturated) sublattice.
pub fn fixed_sublattice(mats: &[IntMatrix], n: usize) -> Sublattice {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for m in mats {
        assert!(m.is_square() && m.rows() == n, "fixed_sublattice needs n x n matrices");
        for i in 0..n {
            let mut r = m.row(i).to_vec();
            r[i] -= BigInt::one();
            if r.iter().any(|x| !x.is_zero()) {
                rows.push(r);
            }
        }
    }
    if rows.is_empty() {
        return Sublattice::full(n);
    }
    Sublattice::new(n, integer_kernel(&IntMatrix::from_rows(&rows, n))).canonical()
}
