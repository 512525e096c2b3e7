//! Root data in coordinates, Weyl groups, Cartan matrices and the
//! combinatorics of the associated abelian group scheme.
//!
//! Conventions used throughout:
//!
//! * `Λ = Z^rank` and `Λ∨ = Z^rank`, paired by the standard dot product.
//! * Weyl group elements act on `Λ` by integer matrices on column vectors;
//!   the reflection of a root `α` is `x ↦ x − ⟨x, α∨⟩ α`.
//! * Cartan matrices are `C[i][j] = ⟨α_i, α_j∨⟩` (row = root, column = coroot).

mod cartan;
pub mod catalog;
mod scheme;
mod special;
mod weyl;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::{self, Rat};
use crate::exact_linalg::{dot, IntMatrix, Sublattice};

pub use cartan::{cartan_from_pairs, cartan_matrix, recognize_finite_type, DynkinComponent, DynkinType, Family};
pub use scheme::{
    component_injectivity_check, fiber_structure, global_sections, lattice_change_group, phi_max,
    phi_max_oriented, DiagonalizableGroupDescriptor, FiberStructure,
};
pub use special::{special_involution, special_roots, ModTwoCharacter, SpecialRoot, TypeBCertificate};
pub use weyl::{enumerate_weyl, enumerate_weyl_with_guard, WeylGroup, WEYL_GUARD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("not a Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not of finite type: {0}")]
    SingularOrAffine(String),
    #[error("group closure exceeded {0} elements")]
    GuardExceeded(usize),
    #[error("generator {0} is not a reflection: {1}")]
    NotReflection(usize, String),
    #[error("no type-B direct summand certificate for special root {0}: {1}")]
    CertificateFailure(usize, String),
    #[error("root {0} is not special")]
    NotSpecial(usize),
    #[error("sublattice has rank {0} < {1}, so the quotient is infinite")]
    InfiniteIndex(usize, usize),
    #[error("root {0} does not lie in the sublattice")]
    RootsNotContained(usize),
}

pub type Result<T> = std::result::Result<T, RootDataError>;

/// A reduced root datum `(Λ, Δ, Λ∨, Δ∨)` with a chosen positive system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<BigInt>>,
    coroots: Vec<Vec<BigInt>>,
    positive: Vec<usize>,
    index: HashMap<Vec<BigInt>, usize>,
}

impl RootDatum {
    /// Validates and builds a root datum. `positive` lists the indices of Δ⁺.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<BigInt>>,
        coroots: Vec<Vec<BigInt>>,
        positive: Vec<usize>,
    ) -> Result<Self> {
        let bad = |s: String| Err(RootDataError::InvalidDatum(s));
        if roots.len() != coroots.len() {
            return bad(format!("{} roots but {} coroots", roots.len(), coroots.len()));
        }
        for (i, (r, c)) in roots.iter().zip(&coroots).enumerate() {
            if r.len() != rank || c.len() != rank {
                return bad(format!("root {i} or its coroot does not have {rank} coordinates"));
            }
            if dot(r, c) != BigInt::from(2) {
                return bad(format!("<α, α∨> != 2 for root {i}"));
            }
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if index.insert(r.clone(), i).is_some() {
                return bad(format!("root {i} is listed twice"));
            }
        }
        let datum = RootDatum { rank, roots, coroots, positive, index };
        datum.validate()?;
        Ok(datum)
    }

    pub fn from_i64(rank: usize, roots: &[Vec<i64>], coroots: &[Vec<i64>], positive: Vec<usize>) -> Result<Self> {
        let conv = |v: &[Vec<i64>]| v.iter().map(|r| crate::exact_linalg::int_vec(r)).collect();
        Self::new(rank, conv(roots), conv(coroots), positive)
    }

    /// Builds a datum whose positive system is the chamber containing
    /// `hint + δ g` for a fixed generic `g` and small `δ > 0`. With no hint
    /// the chamber of `g` itself is used.
    pub fn with_chamber(
        rank: usize,
        roots: Vec<Vec<BigInt>>,
        coroots: Vec<Vec<BigInt>>,
        hint: Option<&[Rat]>,
    ) -> Result<Self> {
        let positive = choose_positive(rank, &coroots, hint);
        Self::new(rank, roots, coroots, positive)
    }

    /// The datum with no roots on `Z^rank`.
    pub fn torus(rank: usize) -> Self {
        RootDatum { rank, roots: vec![], coroots: vec![], positive: vec![], index: HashMap::new() }
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(RootDataError::InvalidDatum(s));
        for i in 0..self.roots.len() {
            let twice: Vec<BigInt> = self.roots[i].iter().map(|x| x * 2).collect();
            if self.index.contains_key(&twice) {
                return bad(format!("not reduced: 2·(root {i}) is a root"));
            }
            for j in 0..self.roots.len() {
                let (r, c) = self.reflect_pair(i, j);
                match self.index.get(&r) {
                    Some(&k) if self.coroots[k] == c => {}
                    _ => return bad(format!("reflection of root {i} does not permute (Δ, Δ∨) at root {j}")),
                }
            }
        }
        let mut sign = vec![0i8; self.roots.len()];
        for &p in &self.positive {
            if p >= self.roots.len() {
                return bad(format!("positive index {p} out of range"));
            }
            if sign[p] != 0 {
                return bad(format!("positive index {p} listed twice"));
            }
            sign[p] = 1;
        }
        for &p in &self.positive {
            let neg: Vec<BigInt> = self.roots[p].iter().map(|x| -x).collect();
            let q = self.index[&neg];
            if sign[q] == 1 {
                return bad(format!("roots {p} and {q} are opposite but both positive"));
            }
            sign[q] = -1;
        }
        if let Some(i) = sign.iter().position(|&s| s == 0) {
            return bad(format!("root {i} is neither positive nor negative"));
        }
        Ok(())
    }

    /// `(s_i(α_j), s_i(α_j∨))`.
    fn reflect_pair(&self, i: usize, j: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        let k = dot(&self.roots[j], &self.coroots[i]);
        let r = self.roots[j].iter().zip(&self.roots[i]).map(|(x, a)| x - &k * a).collect();
        let l = dot(&self.roots[i], &self.coroots[j]);
        let c = self.coroots[j].iter().zip(&self.coroots[i]).map(|(y, a)| y - &l * a).collect();
        (r, c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[BigInt] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[BigInt] {
        &self.coroots[i]
    }

    pub fn roots(&self) -> &[Vec<BigInt>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<BigInt>] {
        &self.coroots
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive.contains(&i)
    }

    pub fn index_of(&self, root: &[BigInt]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let neg: Vec<BigInt> = self.roots[i].iter().map(|x| -x).collect();
        self.index[&neg]
    }

    /// Simple roots: positive roots that are not a sum of two positive roots.
    pub fn simple(&self) -> Vec<usize> {
        let pos: Vec<&Vec<BigInt>> = self.positive.iter().map(|&p| &self.roots[p]).collect();
        let mut out: Vec<usize> = self
            .positive
            .iter()
            .copied()
            .filter(|&p| {
                !pos.iter().any(|a| {
                    let rest: Vec<BigInt> = self.roots[p].iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    self.index.get(&rest).is_some_and(|&k| self.is_positive(k))
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `⟨x, α_i∨⟩` for a rational point `x ∈ Λ ⊗ Q`.
    pub fn pairing(&self, x: &[Rat], i: usize) -> Rat {
        rational::rat_int_dot(x, &self.coroots[i])
    }

    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        reflection(&self.roots[i], &self.coroots[i])
    }

    pub fn reflect_root(&self, i: usize, j: usize) -> usize {
        let (r, _) = self.reflect_pair(i, j);
        self.index[&r]
    }

    pub fn weyl_group(&self) -> Result<WeylGroup> {
        let gens: Vec<IntMatrix> = self.simple().iter().map(|&i| self.reflection_matrix(i)).collect();
        enumerate_weyl(&gens, self.rank)
    }

    pub fn root_lattice(&self) -> Sublattice {
        Sublattice::new(self.rank, self.roots.clone()).canonical()
    }

    /// Roots of the subsystem generated by the given roots: their orbit under
    /// the group generated by their own reflections. Sorted indices.
    pub fn generated_subsystem(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.roots.len()];
        let mut stack: Vec<usize> = gens.to_vec();
        for &g in gens {
            seen[g] = true;
        }
        while let Some(b) = stack.pop() {
            for &g in gens {
                let r = self.reflect_root(g, b);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        (0..self.roots.len()).filter(|&i| seen[i]).collect()
    }

    /// The sub-datum on the same lattice with only the listed roots. Positive
    /// roots are inherited.
    pub fn restrict(&self, subset: &[usize]) -> Result<RootDatum> {
        let roots = subset.iter().map(|&i| self.roots[i].clone()).collect();
        let coroots = subset.iter().map(|&i| self.coroots[i].clone()).collect();
        let positive = subset
            .iter()
            .enumerate()
            .filter(|(_, &i)| self.is_positive(i))
            .map(|(k, _)| k)
            .collect();
        RootDatum::new(self.rank, roots, coroots, positive)
    }
}

/// Reflection matrix `I − α α∨ᵀ` acting on column vectors of `Λ`.
pub fn reflection(root: &[BigInt], coroot: &[BigInt]) -> IntMatrix {
    let n = root.len();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &root[i] * &coroot[j];
        }
    }
    m
}

/// A fixed vector `g` with `⟨g, α∨⟩ ≠ 0` for every nonzero coroot listed.
fn generic_direction(rank: usize, coroots: &[Vec<BigInt>]) -> Vec<BigInt> {
    let bound = coroots.iter().flatten().map(|x| x.abs()).max().unwrap_or_default();
    let base = bound * 2 + 1;
    let mut g = Vec::with_capacity(rank);
    let mut p = BigInt::from(1);
    for _ in 0..rank {
        g.push(p.clone());
        p *= &base;
    }
    g
}

fn choose_positive(rank: usize, coroots: &[Vec<BigInt>], hint: Option<&[Rat]>) -> Vec<usize> {
    let g = generic_direction(rank, coroots);
    coroots
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let at_hint = hint.map(|h| rational::rat_int_dot(h, c)).unwrap_or_else(Rat::zero);
            if at_hint.is_zero() {
                dot(&g, c).is_positive()
            } else {
                at_hint.is_positive()
            }
        })
        .map(|(i, _)| i)
        .collect()
}
