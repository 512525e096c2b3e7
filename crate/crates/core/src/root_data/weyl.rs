use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use super::{Result, RootDataError};
use crate::exact_linalg::rational::{self, Rat};
use crate::exact_linalg::IntMatrix;

/// Upper bound on the closure size before a generator set is declared infinite.
pub const WEYL_GUARD: usize = 1_000_000;

/// A finite group of integer matrices on `Z^rank`, fully enumerated.
/// Elements are sorted, so two groups compare equal iff they have the same
/// element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    rank: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

pub fn enumerate_weyl(generators: &[IntMatrix], rank: usize) -> Result<WeylGroup> {
    enumerate_weyl_with_guard(generators, rank, WEYL_GUARD)
}

pub fn enumerate_weyl_with_guard(generators: &[IntMatrix], rank: usize, guard: usize) -> Result<WeylGroup> {
    let id = IntMatrix::identity(rank);
    for (k, g) in generators.iter().enumerate() {
        if g.rows() != rank || g.cols() != rank {
            return Err(RootDataError::NotReflection(k, format!("expected a {rank}x{rank} matrix")));
        }
        if (g * g) != id {
            return Err(RootDataError::NotReflection(k, "generator does not square to the identity".into()));
        }
    }
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let p = g * &w;
            if !seen.contains(&p) {
                if seen.len() >= guard {
                    return Err(RootDataError::GuardExceeded(guard));
                }
                seen.insert(p.clone());
                queue.push_back(p);
            }
        }
    }
    let mut elements: Vec<IntMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(WeylGroup { rank, generators: generators.to_vec(), elements })
}

impl WeylGroup {
    pub fn trivial(rank: usize) -> Self {
        WeylGroup { rank, generators: vec![], elements: vec![IntMatrix::identity(rank)] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    /// Elements `s ≠ 1` with `s² = 1` fixing a hyperplane.
    pub fn reflections(&self) -> Vec<IntMatrix> {
        let id = IntMatrix::identity(self.rank);
        self.elements
            .iter()
            .filter(|s| **s != id && (*s * *s) == id && is_reflection(s))
            .cloned()
            .collect()
    }

    /// Brute-force stabilizer of a rational point of `Λ ⊗ Q`.
    pub fn stabilizer(&self, x: &[Rat]) -> Vec<IntMatrix> {
        self.elements.iter().filter(|w| act_rational(w, x) == x).cloned().collect()
    }

    /// Whether every element maps the sublattice spanned by `basis` into itself.
    pub fn stabilizes(&self, lattice: &crate::exact_linalg::Sublattice) -> bool {
        self.generators
            .iter()
            .all(|g| lattice.generators.iter().all(|v| lattice.contains(&g.mul_vec(v))))
    }
}

pub fn act_rational(w: &IntMatrix, x: &[Rat]) -> Vec<Rat> {
    (0..w.rows())
        .map(|i| rational::rat_int_dot(x, w.row(i)))
        .collect()
}

/// `s` fixes a subspace of codimension exactly one.
pub fn is_reflection(s: &IntMatrix) -> bool {
    let n = s.rows();
    let mut d = s.clone();
    for i in 0..n {
        d[(i, i)] -= BigInt::one();
    }
    crate::exact_linalg::rational::int_rank(&d.row_vecs()) == 1
}
