//! Group-scheme combinatorics: maximal root systems, fibers, global sections
//! and change of lattice, all reduced to quotient invariants of sublattices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::weyl::is_reflection;
use super::{Result, RootDataError, RootDatum, WeylGroup};
use crate::exact_linalg::rational::Rat;
use crate::exact_linalg::{primitive, quotient_invariants, IntMatrix, QuotientInvariants, Sublattice};

/// `Hom(Λ/L, C^×)` for a sublattice `L`: a torus of rank `torus_rank` times
/// the finite group `⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalizableGroupDescriptor {
    pub torus_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

impl From<QuotientInvariants> for DiagonalizableGroupDescriptor {
    fn from(q: QuotientInvariants) -> Self {
        DiagonalizableGroupDescriptor { torus_rank: q.free_rank, torsion_factors: q.torsion_factors }
    }
}

impl DiagonalizableGroupDescriptor {
    pub fn of_quotient(l: &Sublattice) -> Self {
        quotient_invariants(l).into()
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.torsion_factors.is_empty()
    }

    pub fn component_count(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }

    /// Whether `self` can be a quotient of `other` through a surjection: equal
    /// torus rank and, aligning invariant factors from the largest, each of
    /// ours divides the corresponding one of `other`.
    pub fn is_quotient_of(&self, other: &DiagonalizableGroupDescriptor) -> bool {
        use num_integer::Integer;
        if self.torus_rank != other.torus_rank || self.torsion_factors.len() > other.torsion_factors.len() {
            return false;
        }
        self.torsion_factors
            .iter()
            .rev()
            .zip(other.torsion_factors.iter().rev())
            .all(|(a, b)| b.is_multiple_of(a))
    }
}

/// Fiber of the group scheme over the image of a point `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberStructure {
    pub semisimple: DiagonalizableGroupDescriptor,
    pub unipotent_rank: usize,
    /// Indices of the roots with `⟨a, α∨⟩ = 0`.
    pub local_roots: Vec<usize>,
}

/// Roots vanishing at `a`, with the lattice invariants of `Λ/⟨Δ_a⟩`.
pub fn fiber_structure(datum: &RootDatum, a: &[Rat]) -> FiberStructure {
    assert_eq!(a.len(), datum.rank(), "point has the wrong number of coordinates");
    let local: Vec<usize> = (0..datum.num_roots()).filter(|&i| datum.pairing(a, i).is_zero()).collect();
    let lattice = Sublattice::new(datum.rank(), local.iter().map(|&i| datum.root(i).to_vec()).collect());
    FiberStructure {
        semisimple: DiagonalizableGroupDescriptor::of_quotient(&lattice),
        unipotent_rank: lattice.rank(),
        local_roots: local,
    }
}

/// `A^Φ = Hom(Λ/⟨Δ⟩, C^×)`.
pub fn global_sections(datum: &RootDatum) -> DiagonalizableGroupDescriptor {
    DiagonalizableGroupDescriptor::of_quotient(&datum.root_lattice())
}

/// `E = Hom(Λ/Λ', C^×)` for a finite-index sublattice containing every root.
pub fn lattice_change_group(datum: &RootDatum, sub: &Sublattice) -> Result<DiagonalizableGroupDescriptor> {
    let n = datum.rank();
    assert_eq!(sub.ambient_rank, n, "sublattice lives in a different ambient rank");
    let r = sub.rank();
    if r < n {
        return Err(RootDataError::InfiniteIndex(r, n));
    }
    if let Some(i) = (0..datum.num_roots()).find(|&i| !sub.contains(datum.root(i))) {
        return Err(RootDataError::RootsNotContained(i));
    }
    Ok(DiagonalizableGroupDescriptor::of_quotient(sub))
}

/// Whether the torsion of `Λ/⟨Δ'⟩` injects into `Λ/⟨Δ⟩`. The kernel is
/// `(sat⟨Δ'⟩ ∩ ⟨Δ⟩) / ⟨Δ'⟩`.
pub fn component_injectivity_check(datum: &RootDatum, sub_roots: &[usize]) -> bool {
    let n = datum.rank();
    let small = Sublattice::new(n, sub_roots.iter().map(|&i| datum.root(i).to_vec()).collect()).canonical();
    let big = datum.root_lattice();
    small.saturation().intersection(&big) == small
}

/// The root datum on `Z^n` with Weyl group `W` whose coroots are all
/// primitive, with the positive system of a generic chamber.
pub fn phi_max(w: &WeylGroup) -> Result<RootDatum> {
    phi_max_oriented(w, None)
}

/// As [`phi_max`], with positive roots taken from the chamber whose closure
/// contains `hint` (ties broken generically).
pub fn phi_max_oriented(w: &WeylGroup, hint: Option<&[Rat]>) -> Result<RootDatum> {
    let n = w.rank();
    for (k, g) in w.generators().iter().enumerate() {
        if !is_reflection(g) {
            return Err(RootDataError::NotReflection(k, "fixed space is not a hyperplane".into()));
        }
    }
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for s in w.reflections() {
        // I − sᵀ has rank one; its image is spanned by α∨
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= &s[(j, i)];
            }
        }
        let col = (0..n)
            .map(|j| m.column(j))
            .find(|c| c.iter().any(|x| !x.is_zero()))
            .expect("reflection differs from identity");
        let mut coroot = primitive(&col);
        if coroot.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            coroot = coroot.iter().map(|x| -x).collect();
        }
        // (I − s) = α α∨ᵀ, so column j of I − s is α∨_j · α
        let j = coroot.iter().position(|x| !x.is_zero()).expect("nonzero coroot");
        let root: Vec<BigInt> = (0..n)
            .map(|i| {
                let v = if i == j { BigInt::from(1) - &s[(i, j)] } else { -&s[(i, j)] };
                v / &coroot[j]
            })
            .collect();
        roots.push(root.iter().map(|x| -x).collect());
        coroots.push(coroot.iter().map(|x| -x).collect());
        roots.push(root);
        coroots.push(coroot);
    }
    RootDatum::with_chamber(n, roots, coroots, hint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int_vec;
    use crate::exact_linalg::rational::rat;
    use crate::root_data::{catalog, enumerate_weyl};

    #[test]
    fn phi_max_rank_one() {
        let w = enumerate_weyl(&[IntMatrix::from_i64_rows(&[vec![-1]], 1)], 1).unwrap();
        let d = phi_max(&w).unwrap();
        let p = d.positive()[0];
        assert_eq!(d.root(p), &int_vec(&[2])[..]);
        assert_eq!(d.coroot(p), &int_vec(&[1])[..]);
        assert_eq!(phi_max(&WeylGroup::trivial(2)).unwrap().num_roots(), 0);
    }

    #[test]
    fn phi_max_a2_root_lattice() {
        let a2 = catalog::a2();
        let d = phi_max(&a2.weyl_group().unwrap()).unwrap();
        assert_eq!(d.num_roots(), 6);
        let mut got: Vec<_> = d.roots().to_vec();
        let mut want: Vec<_> = a2.roots().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn phi_max_rejects_non_reflection_generator() {
        let minus = IntMatrix::from_i64_rows(&[vec![-1, 0], vec![0, -1]], 2);
        let w = enumerate_weyl(&[minus], 2).unwrap();
        assert!(matches!(phi_max(&w), Err(RootDataError::NotReflection(0, _))));
    }

    #[test]
    fn fibers_of_sl2() {
        let d = catalog::sl2();
        let f0 = fiber_structure(&d, &[rat(0)]);
        assert_eq!(f0.semisimple, DiagonalizableGroupDescriptor { torus_rank: 0, torsion_factors: int_vec(&[2]) });
        assert_eq!(f0.unipotent_rank, 1);
        let f1 = fiber_structure(&d, &[rat(1)]);
        assert_eq!(f1.semisimple, DiagonalizableGroupDescriptor { torus_rank: 1, torsion_factors: vec![] });
        assert_eq!(f1.unipotent_rank, 0);
        let t = fiber_structure(&RootDatum::torus(2), &[rat(0), rat(0)]);
        assert_eq!((t.semisimple.torus_rank, t.unipotent_rank), (2, 0));
    }

    #[test]
    fn global_sections_examples() {
        assert_eq!(global_sections(&catalog::sl2()).torsion_factors, int_vec(&[2]));
        assert_eq!(global_sections(&RootDatum::torus(2)).torus_rank, 2);
        assert_eq!(global_sections(&catalog::a1xa1()).torsion_factors, int_vec(&[2, 2]));
        assert!(global_sections(&catalog::pgl2()).is_trivial());
    }

    #[test]
    fn injectivity_examples() {
        let sl2 = catalog::sl2();
        assert!(component_injectivity_check(&sl2, &[0, 1]));
        assert!(component_injectivity_check(&sl2, &[]));
        let a2 = catalog::a2();
        let a1 = a2.simple()[0];
        let sub = a2.generated_subsystem(&[a1]);
        assert!(component_injectivity_check(&a2, &sub));
    }

    #[test]
    fn injectivity_fails_off_simple_subsets() {
        // long-root A1xA1 inside C2-type Φ_max of the B2 Weyl group
        let w = catalog::b2().weyl_group().unwrap();
        let c2 = phi_max(&w).unwrap();
        let long: Vec<usize> =
            (0..c2.num_roots()).filter(|&i| c2.root(i).iter().any(|x| x.abs() == BigInt::from(2))).collect();
        assert_eq!(long.len(), 4);
        assert!(!component_injectivity_check(&c2, &long));
    }

    #[test]
    fn change_of_lattice() {
        let sl2 = catalog::sl2();
        let e = lattice_change_group(&sl2, &Sublattice::from_i64(1, &[vec![2]])).unwrap();
        assert_eq!(e.torsion_factors, int_vec(&[2]));
        assert!(lattice_change_group(&sl2, &Sublattice::full(1)).unwrap().is_trivial());
        let a1 = RootDatum::from_i64(2, &[vec![2, 0], vec![-2, 0]], &[vec![1, 0], vec![-1, 0]], vec![0]).unwrap();
        let l0 = Sublattice::from_i64(2, &[vec![2, 0], vec![0, 1]]);
        assert_eq!(lattice_change_group(&a1, &l0).unwrap().torsion_factors, int_vec(&[2]));
        assert_eq!(
            lattice_change_group(&a1, &Sublattice::from_i64(2, &[vec![2, 0]])),
            Err(RootDataError::InfiniteIndex(1, 2))
        );
        assert_eq!(
            lattice_change_group(&a1, &Sublattice::from_i64(2, &[vec![4, 0], vec![0, 1]])),
            Err(RootDataError::RootsNotContained(0))
        );
    }
}
