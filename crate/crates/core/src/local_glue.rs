//! Local root systems on the faces of a momentum polytope and their gluing
//! into a global Weyl group `W_M` and root datum `Φ_M`.
//!
//! Faces are the sampling unit: each face is represented by the sample point
//! of [`Face`], and local data are constant on relative interiors.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::{self, rat_int_dot, to_int_vec, to_rat_vec, Rat, RatVec};
use crate::exact_linalg::{dot, gcd_of, IntMatrix, Sublattice};
use crate::polytope::{face_lattice, hyperplane_meets, Face, PolytopeError, RationalPolytope};
use crate::root_data::{
    cartan_from_pairs, enumerate_weyl, phi_max_oriented, recognize_finite_type, reflection, DynkinType, RootDataError,
    RootDatum, WeylGroup,
};

/// Upper bound on the number of roots produced by a reflection closure.
const CLOSURE_GUARD: usize = 100_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GlueError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("simple roots {0:?} and {1:?} pair positively, so no chamber-contained manifold realizes them")]
    NonNegativePairing(Vec<BigInt>, Vec<BigInt>),
    #[error("root {0:?} appears with two different coroots")]
    InconsistentCoroot(Vec<BigInt>),
    #[error("local simple roots at face {0:?} are not recovered from the global simple roots")]
    RecoveryFailure(Vec<usize>),
    #[error("face {0:?} is not a face of the polytope")]
    UnknownFace(Vec<usize>),
    #[error("reflection closure exceeded {0} roots")]
    ClosureGuard(usize),
    #[error("lattice must have full rank {0}")]
    LatticeNotFullRank(usize),
    #[error("the Weyl group does not preserve the lattice")]
    LatticeNotStable,
    #[error("local root {0:?} does not lie in the lattice")]
    RootOutsideLattice(Vec<BigInt>),
    #[error("faces disagree on whether critical root {0:?} is halved")]
    InconsistentHalving(Vec<BigInt>),
    #[error("the wall of {0:?} cuts through the polytope without containing a face")]
    WallCrossesInterior(Vec<BigInt>),
    #[error("neither {1:?} nor its half is a local root at face {0:?}")]
    LocalRootMissing(Vec<usize>, Vec<BigInt>),
}

pub type Result<T> = std::result::Result<T, GlueError>;

/// A root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalRoot {
    pub root: Vec<BigInt>,
    pub coroot: Vec<BigInt>,
}

impl LocalRoot {
    pub fn new(root: Vec<BigInt>, coroot: Vec<BigInt>) -> Self {
        LocalRoot { root, coroot }
    }

    pub fn pairing_at(&self, a: &[Rat]) -> Rat {
        rat_int_dot(a, &self.coroot)
    }

    fn negated(&self) -> LocalRoot {
        LocalRoot { root: self.root.iter().map(|x| -x).collect(), coroot: self.coroot.iter().map(|x| -x).collect() }
    }

    /// `s_self(other)` on both the root and the coroot.
    fn reflect(&self, other: &LocalRoot) -> LocalRoot {
        let k = dot(&other.root, &self.coroot);
        let l = dot(&self.root, &other.coroot);
        LocalRoot {
            root: other.root.iter().zip(&self.root).map(|(x, a)| x - &k * a).collect(),
            coroot: other.coroot.iter().zip(&self.coroot).map(|(y, a)| y - &l * a).collect(),
        }
    }
}

/// Local simple roots `Σ(F)` for each face, keyed by the face's tight set.
/// Faces that are not listed carry the empty system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalSystemAssignment {
    pub faces: BTreeMap<Vec<usize>, Vec<LocalRoot>>,
}

impl LocalSystemAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, tight: Vec<usize>, simple: Vec<LocalRoot>) {
        self.faces.insert(tight, simple);
    }

    /// `Σ(F)` as a sorted set.
    pub fn simple_at(&self, face: &Face) -> BTreeSet<LocalRoot> {
        self.faces.get(&face.tight).map(|v| v.iter().cloned().collect()).unwrap_or_default()
    }
}

/// `Δ_a` and its positive and simple roots, as indices into the ambient datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSubsystem {
    pub roots: Vec<usize>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
}

/// `Δ_a = {α : ⟨a, α∨⟩ = 0}` with `Δ_a⁺ = Δ_a ∩ Δ⁺`.
pub fn ambient_local_roots(datum: &RootDatum, a: &[Rat]) -> LocalSubsystem {
    let roots: Vec<usize> = (0..datum.num_roots()).filter(|&i| datum.pairing(a, i).is_zero()).collect();
    let positive: Vec<usize> = roots.iter().copied().filter(|&i| datum.is_positive(i)).collect();
    let pos_vecs: BTreeSet<&[BigInt]> = positive.iter().map(|&i| datum.root(i)).collect();
    let simple = positive
        .iter()
        .copied()
        .filter(|&p| {
            !positive.iter().any(|&q| {
                let rest: Vec<BigInt> = datum.root(p).iter().zip(datum.root(q)).map(|(x, y)| x - y).collect();
                pos_vecs.contains(rest.as_slice())
            })
        })
        .collect();
    LocalSubsystem { roots, positive, simple }
}

/// The assignment `F ↦ Σ(Δ_a⁺)` read off an ambient datum at face samples.
pub fn induced_assignment(datum: &RootDatum, p: &RationalPolytope) -> Result<LocalSystemAssignment> {
    let mut out = LocalSystemAssignment::new();
    for face in face_lattice(p)? {
        let local = ambient_local_roots(datum, &face.sample);
        if !local.simple.is_empty() {
            let simple =
                local.simple.iter().map(|&i| LocalRoot::new(datum.root(i).to_vec(), datum.coroot(i).to_vec())).collect();
            out.insert(face.tight.clone(), simple);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoherenceViolation {
    /// A listed root does not vanish at the face sample.
    NotVanishing { face: Vec<usize>, root: Vec<BigInt> },
    /// Two listed roots of one face pair positively.
    PositivePairing { face: Vec<usize>, first: Vec<BigInt>, second: Vec<BigInt> },
    /// `Σ(F') ≠ {γ ∈ Σ(F) : γ(b) = 0}` for faces `F ⊆ F'`.
    Restriction { face: Vec<usize>, larger: Vec<usize>, expected: Vec<LocalRoot>, found: Vec<LocalRoot> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    pub violations: Vec<CoherenceViolation>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_coherence(l: &LocalSystemAssignment, p: &RationalPolytope) -> Result<CoherenceReport> {
    let faces = face_lattice(p)?;
    let known: BTreeSet<&Vec<usize>> = faces.iter().map(|f| &f.tight).collect();
    if let Some(k) = l.faces.keys().find(|k| !known.contains(k)) {
        return Err(GlueError::UnknownFace(k.clone()));
    }
    let mut violations = Vec::new();
    for f in faces {
        let sigma = l.simple_at(f);
        for r in &sigma {
            if !r.pairing_at(&f.sample).is_zero() {
                violations.push(CoherenceViolation::NotVanishing { face: f.tight.clone(), root: r.root.clone() });
            }
        }
        let listed: Vec<&LocalRoot> = sigma.iter().collect();
        for (i, x) in listed.iter().enumerate() {
            for y in &listed[i + 1..] {
                if dot(&x.root, &y.coroot).is_positive() || dot(&y.root, &x.coroot).is_positive() {
                    violations.push(CoherenceViolation::PositivePairing {
                        face: f.tight.clone(),
                        first: x.root.clone(),
                        second: y.root.clone(),
                    });
                }
            }
        }
    }
    for f in faces {
        let sigma = l.simple_at(f);
        for g in faces {
            if g.vertices == f.vertices || !f.vertices.iter().all(|v| g.vertices.contains(v)) {
                continue;
            }
            let expected: Vec<LocalRoot> = sigma.iter().filter(|r| r.pairing_at(&g.sample).is_zero()).cloned().collect();
            let found: Vec<LocalRoot> = l.simple_at(g).into_iter().collect();
            if expected != found {
                violations.push(CoherenceViolation::Restriction {
                    face: f.tight.clone(),
                    larger: g.tight.clone(),
                    expected,
                    found,
                });
            }
        }
    }
    violations.dedup();
    Ok(CoherenceReport { violations })
}

/// All `(root, coroot)` pairs reachable from `gens` and their negatives under
/// the reflections of `gens`. Sorted.
pub fn reflection_closure(gens: &[LocalRoot]) -> Result<Vec<LocalRoot>> {
    let mut seen: BTreeSet<LocalRoot> = BTreeSet::new();
    let mut stack: Vec<LocalRoot> = Vec::new();
    for g in gens {
        for r in [g.clone(), g.negated()] {
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
    while let Some(b) = stack.pop() {
        for g in gens {
            let r = g.reflect(&b);
            if !seen.contains(&r) {
                if seen.len() >= CLOSURE_GUARD {
                    return Err(GlueError::ClosureGuard(CLOSURE_GUARD));
                }
                seen.insert(r.clone());
                stack.push(r);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Result of gluing local Weyl groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedSystem {
    /// `Σ = ∪ Σ(a)`, sorted.
    pub simple: Vec<LocalRoot>,
    /// All roots generated by `Σ`.
    pub roots: Vec<LocalRoot>,
    pub dynkin: DynkinType,
    pub weyl: WeylGroup,
    pub lattice: Sublattice,
    /// `Δ` as a root datum whose positive roots are the non-negative
    /// combinations of `Σ`.
    pub datum: RootDatum,
}

impl GluedSystem {
    /// `{α ∈ Σ : ⟨a, α∨⟩ = 0}`.
    pub fn simple_vanishing_at(&self, a: &[Rat]) -> Vec<LocalRoot> {
        self.simple.iter().filter(|r| r.pairing_at(a).is_zero()).cloned().collect()
    }
}

pub fn glue_weyl(l: &LocalSystemAssignment, p: &RationalPolytope) -> Result<GluedSystem> {
    let n = p.dim();
    let faces = face_lattice(p)?;
    let known: BTreeSet<&Vec<usize>> = faces.iter().map(|f| &f.tight).collect();
    if let Some(k) = l.faces.keys().find(|k| !known.contains(k)) {
        return Err(GlueError::UnknownFace(k.clone()));
    }
    let mut by_root: BTreeMap<Vec<BigInt>, Vec<BigInt>> = BTreeMap::new();
    for r in l.faces.values().flatten() {
        match by_root.get(&r.root) {
            Some(c) if *c != r.coroot => return Err(GlueError::InconsistentCoroot(r.root.clone())),
            _ => {
                by_root.insert(r.root.clone(), r.coroot.clone());
            }
        }
    }
    let simple: Vec<LocalRoot> = by_root.into_iter().map(|(r, c)| LocalRoot::new(r, c)).collect();
    for a in &simple {
        for b in &simple {
            if a != b && dot(&a.root, &b.coroot).is_positive() {
                return Err(GlueError::NonNegativePairing(a.root.clone(), b.root.clone()));
            }
        }
    }
    let roots_only: Vec<Vec<BigInt>> = simple.iter().map(|r| r.root.clone()).collect();
    let coroots_only: Vec<Vec<BigInt>> = simple.iter().map(|r| r.coroot.clone()).collect();
    let dynkin = recognize_finite_type(&cartan_from_pairs(&roots_only, &coroots_only))?;
    for f in faces {
        let recovered: BTreeSet<LocalRoot> = simple.iter().filter(|r| r.pairing_at(&f.sample).is_zero()).cloned().collect();
        if recovered != l.simple_at(f) {
            return Err(GlueError::RecoveryFailure(f.tight.clone()));
        }
    }
    let roots = reflection_closure(&simple)?;
    let gens: Vec<IntMatrix> = simple.iter().map(|r| reflection(&r.root, &r.coroot)).collect();
    let weyl = if gens.is_empty() { WeylGroup::trivial(n) } else { enumerate_weyl(&gens, n)? };
    let datum = datum_from_simple(n, &simple, &roots)?;
    Ok(GluedSystem { simple, roots, dynkin, weyl, lattice: Sublattice::full(n), datum })
}

/// Positive roots: non-negative rational combinations of the simple roots.
fn datum_from_simple(n: usize, simple: &[LocalRoot], roots: &[LocalRoot]) -> Result<RootDatum> {
    // columns of `basis` are the simple roots
    let basis: Vec<RatVec> =
        (0..n).map(|i| simple.iter().map(|s| Rat::from_integer(s.root[i].clone())).collect()).collect();
    let positive = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            let coeffs = rational::solve(&basis, &to_rat_vec(&r.root), simple.len()).expect("root in the span of Σ");
            coeffs.iter().all(|c| !c.is_negative())
        })
        .map(|(i, _)| i)
        .collect();
    Ok(RootDatum::new(
        n,
        roots.iter().map(|r| r.root.clone()).collect(),
        roots.iter().map(|r| r.coroot.clone()).collect(),
        positive,
    )?)
}

/// Whether the stabilizer `(W_M)_a`, found by brute force, equals the group
/// generated by the reflections of the simple roots vanishing at `a`.
pub fn stabilizer_is_generated_locally(glued: &GluedSystem, a: &[Rat]) -> Result<bool> {
    let n = glued.weyl.rank();
    let stab = glued.weyl.stabilizer(a);
    let gens: Vec<IntMatrix> = glued.simple_vanishing_at(a).iter().map(|r| reflection(&r.root, &r.coroot)).collect();
    let local = if gens.is_empty() { WeylGroup::trivial(n) } else { enumerate_weyl(&gens, n)? };
    Ok(stab.as_slice() == local.elements())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halving {
    One,
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingRecord {
    /// Simple root of `Φ_max`, in lattice coordinates.
    pub root: Vec<BigInt>,
    pub critical: bool,
    pub factor: Halving,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiMWarning {
    /// A critical wall never meets the polytope; `n_α = 1` was used.
    WallMissesPolytope { root: Vec<BigInt> },
}

/// `Φ_M` in the coordinates of a basis of `Λ_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiM {
    /// Columns are the basis of `Λ_M` in ambient coordinates.
    pub basis: IntMatrix,
    pub datum: RootDatum,
    pub halving: Vec<HalvingRecord>,
    pub warnings: Vec<PhiMWarning>,
}

struct Coordinates {
    basis: IntMatrix,
    inverse: Vec<RatVec>,
}

impl Coordinates {
    fn new(lattice: &Sublattice) -> Result<Self> {
        let n = lattice.ambient_rank;
        if lattice.rank() != n {
            return Err(GlueError::LatticeNotFullRank(n));
        }
        let basis = IntMatrix::from_columns(&lattice.basis(), n);
        let rows: Vec<RatVec> = basis.row_vecs().iter().map(|r| to_rat_vec(r)).collect();
        let inverse = rational::inverse(&rows).expect("full-rank basis");
        Ok(Coordinates { basis, inverse })
    }

    fn point(&self, x: &[Rat]) -> RatVec {
        self.inverse.iter().map(|row| rational::rat_dot(row, x)).collect()
    }

    fn lattice_vector(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        to_int_vec(&self.point(&to_rat_vec(v)))
    }

    fn covector(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.basis.transpose().mul_vec(c)
    }

    fn matrix(&self, w: &IntMatrix) -> Option<IntMatrix> {
        let n = w.rows();
        let wb = w * &self.basis;
        let cols: Option<Vec<Vec<BigInt>>> = (0..n).map(|j| self.lattice_vector(&wb.column(j))).collect();
        cols.map(|c| IntMatrix::from_columns(&c, n))
    }
}

/// Assembles `Φ_M` from `Φ_max(W_M)` on `Λ_M`, halving critical simple roots
/// as dictated by the local root systems on their walls.
pub fn construct_phi_m(
    lattice: &Sublattice,
    weyl: &WeylGroup,
    l: &LocalSystemAssignment,
    p: &RationalPolytope,
) -> Result<PhiM> {
    let n = lattice.ambient_rank;
    let coords = Coordinates::new(lattice)?;
    let gens: Option<Vec<IntMatrix>> = weyl.generators().iter().map(|g| coords.matrix(g)).collect();
    let gens = gens.ok_or(GlueError::LatticeNotStable)?;
    let w_m = if gens.is_empty() { WeylGroup::trivial(n) } else { enumerate_weyl(&gens, n)? };
    let faces = face_lattice(p)?;
    let hint = coords.point(&faces.last().expect("a polytope has itself as a face").sample);
    let phi_max = phi_max_oriented(&w_m, Some(&hint))?;

    let mut halving = Vec::new();
    let mut warnings = Vec::new();
    let mut sigma_m = Vec::new();
    for s in phi_max.simple() {
        let root = phi_max.root(s).to_vec();
        let coroot = phi_max.coroot(s).to_vec();
        let critical = gcd_of(&root).is_even();
        let mut factor = Halving::One;
        if critical {
            let mut seen: Option<Halving> = None;
            for f in faces {
                let y = coords.point(&f.sample);
                if !rat_int_dot(&y, &coroot).is_zero() {
                    continue;
                }
                let local: Vec<LocalRoot> = l
                    .simple_at(f)
                    .iter()
                    .map(|r| {
                        coords
                            .lattice_vector(&r.root)
                            .map(|v| LocalRoot::new(v, coords.covector(&r.coroot)))
                            .ok_or_else(|| GlueError::RootOutsideLattice(r.root.clone()))
                    })
                    .collect::<Result<_>>()?;
                let phi_a = reflection_closure(&local)?;
                let half: Vec<BigInt> = root.iter().map(|x| x / 2).collect();
                let here = if phi_a.iter().any(|r| r.root == root) {
                    Halving::One
                } else if phi_a.iter().any(|r| r.root == half) {
                    Halving::Half
                } else {
                    return Err(GlueError::LocalRootMissing(f.tight.clone(), root));
                };
                match seen {
                    Some(prev) if prev != here => return Err(GlueError::InconsistentHalving(root)),
                    _ => seen = Some(here),
                }
            }
            match seen {
                Some(h) => factor = h,
                None => {
                    if hyperplane_meets(p, &wall_in_ambient(&coords, &coroot)).is_some() {
                        return Err(GlueError::WallCrossesInterior(root));
                    }
                    warnings.push(PhiMWarning::WallMissesPolytope { root: root.clone() });
                }
            }
        }
        let (r, c) = match factor {
            Halving::One => (root.clone(), coroot),
            Halving::Half => (root.iter().map(|x| x / 2).collect(), coroot.iter().map(|x| x * 2).collect()),
        };
        sigma_m.push(LocalRoot::new(r, c));
        halving.push(HalvingRecord { root, critical, factor });
    }
    let all = reflection_closure(&sigma_m)?;
    let datum = RootDatum::with_chamber(
        n,
        all.iter().map(|r| r.root.clone()).collect(),
        all.iter().map(|r| r.coroot.clone()).collect(),
        Some(&hint),
    )?;
    Ok(PhiM { basis: coords.basis, datum, halving, warnings })
}

/// A coroot given in `Λ_M∨` coordinates, expressed as a primitive ambient
/// covector with the same kernel.
fn wall_in_ambient(coords: &Coordinates, coroot: &[BigInt]) -> Vec<BigInt> {
    // ⟨y, c⟩ with y = B⁻¹x is ⟨x, B⁻ᵀ c⟩
    let n = coroot.len();
    let v: RatVec = (0..n)
        .map(|j| (0..n).map(|i| &coords.inverse[i][j] * Rat::from_integer(coroot[i].clone())).sum())
        .collect();
    rational::primitive_direction(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int_vec;
    use crate::exact_linalg::rational::{rat, ratio};
    use crate::root_data::catalog;

    fn lr(r: &[i64], c: &[i64]) -> LocalRoot {
        LocalRoot::new(int_vec(r), int_vec(c))
    }

    fn pts(v: &[&[i64]]) -> Vec<RatVec> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn face_at(p: &RationalPolytope, x: &[Rat]) -> Vec<usize> {
        p.tight_at(x)
    }

    #[test]
    fn local_roots_of_b2() {
        let b2 = catalog::b2();
        // (1,0) lies on the wall of the short root ε2
        let l = ambient_local_roots(&b2, &[rat(1), rat(0)]);
        let roots: BTreeSet<Vec<BigInt>> = l.roots.iter().map(|&i| b2.root(i).to_vec()).collect();
        assert_eq!(roots, [int_vec(&[0, 1]), int_vec(&[0, -1])].into_iter().collect());
        assert!(ambient_local_roots(&b2, &[rat(3), rat(1)]).roots.is_empty());
        assert_eq!(ambient_local_roots(&b2, &[rat(0), rat(0)]).roots.len(), 8);
        assert_eq!(ambient_local_roots(&b2, &[rat(0), rat(0)]).simple.len(), 2);
    }

    #[test]
    fn induced_assignment_is_coherent() {
        let b2 = catalog::b2();
        let tri = RationalPolytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[1, 1]])).unwrap();
        let l = induced_assignment(&b2, &tri).unwrap();
        assert!(check_coherence(&l, &tri).unwrap().is_coherent());
        let point = RationalPolytope::from_vertices(&pts(&[&[0]])).unwrap();
        assert!(check_coherence(&LocalSystemAssignment::new(), &point).unwrap().is_coherent());
    }

    #[test]
    fn one_violation_flagged() {
        let sq = RationalPolytope::from_bounds(&[(rat(0), rat(1)), (rat(0), rat(1))]).unwrap();
        let a1 = RootDatum::from_i64(2, &[vec![2, 0], vec![-2, 0]], &[vec![1, 0], vec![-1, 0]], vec![0]).unwrap();
        let mut l = induced_assignment(&a1, &sq).unwrap();
        l.faces.remove(&face_at(&sq, &[rat(0), rat(0)]));
        let report = check_coherence(&l, &sq).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], CoherenceViolation::Restriction { .. }));
    }

    #[test]
    fn glue_triangle_to_a2() {
        let tri = RationalPolytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        // α = (2,-1), β = (-1,2) on the A2 root lattice; coroots are the basis duals
        let alpha = lr(&[2, -1], &[1, 0]);
        let beta = lr(&[-1, 2], &[0, 1]);
        let mut l = LocalSystemAssignment::new();
        // the vertex (0,1) lies on α's wall x = 0, the vertex (1,0) on β's wall y = 0
        l.insert(face_at(&tri, &[rat(0), rat(1)]), vec![alpha.clone()]);
        l.insert(face_at(&tri, &[rat(1), rat(0)]), vec![beta.clone()]);
        // the edges x = 0, y = 0 and the origin also meet the walls
        l.insert(face_at(&tri, &[rat(0), ratio(1, 2)]), vec![alpha.clone()]);
        l.insert(face_at(&tri, &[ratio(1, 2), rat(0)]), vec![beta.clone()]);
        l.insert(face_at(&tri, &[rat(0), rat(0)]), vec![alpha, beta]);
        assert!(check_coherence(&l, &tri).unwrap().is_coherent());
        let g = glue_weyl(&l, &tri).unwrap();
        assert_eq!(g.dynkin.to_string(), "A2");
        assert_eq!(g.weyl.order(), 6);
        assert_eq!(g.roots.len(), 6);
        for f in face_lattice(&tri).unwrap() {
            assert!(stabilizer_is_generated_locally(&g, &f.sample).unwrap());
        }
    }

    #[test]
    fn positive_pairing_rejected() {
        let seg = RationalPolytope::interval(rat(0), rat(1)).unwrap();
        let mut l = LocalSystemAssignment::new();
        l.insert(face_at(&seg, &[rat(0)]), vec![lr(&[2], &[1]), lr(&[4], &[2])]);
        assert!(matches!(glue_weyl(&l, &seg), Err(GlueError::NonNegativePairing(..))));
    }

    #[test]
    fn recovery_failure() {
        let seg = RationalPolytope::interval(rat(0), rat(1)).unwrap();
        let mut l = LocalSystemAssignment::new();
        l.insert(face_at(&seg, &[rat(1)]), vec![lr(&[2], &[1])]);
        assert!(matches!(glue_weyl(&l, &seg), Err(GlueError::RecoveryFailure(_))));
    }

    #[test]
    fn empty_and_rank_one() {
        let seg = RationalPolytope::interval(rat(0), rat(5)).unwrap();
        let g = glue_weyl(&LocalSystemAssignment::new(), &seg).unwrap();
        assert!(g.dynkin.is_trivial());
        assert_eq!(g.weyl.order(), 1);
        let mut l = LocalSystemAssignment::new();
        l.insert(face_at(&seg, &[rat(0)]), vec![lr(&[2], &[1])]);
        let g = glue_weyl(&l, &seg).unwrap();
        assert_eq!(g.dynkin.to_string(), "A1");
        assert_eq!(g.weyl.order(), 2);
    }

    #[test]
    fn phi_m_rank_one() {
        let seg = RationalPolytope::interval(rat(0), rat(1)).unwrap();
        let w = catalog::sl2().weyl_group().unwrap();
        let z = Sublattice::full(1);
        let mut l = LocalSystemAssignment::new();
        l.insert(face_at(&seg, &[rat(0)]), vec![lr(&[2], &[1])]);
        let phi = construct_phi_m(&z, &w, &l, &seg).unwrap();
        let p = phi.datum.positive()[0];
        assert_eq!(phi.datum.root(p), &int_vec(&[2])[..]);
        assert_eq!(phi.halving[0].factor, Halving::One);
        assert!(crate::root_data::global_sections(&phi.datum).torsion_factors == int_vec(&[2]));

        let mut l = LocalSystemAssignment::new();
        l.insert(face_at(&seg, &[rat(0)]), vec![lr(&[1], &[2])]);
        let phi = construct_phi_m(&z, &w, &l, &seg).unwrap();
        let p = phi.datum.positive()[0];
        assert_eq!(phi.datum.root(p), &int_vec(&[1])[..]);
        assert_eq!(phi.halving[0], HalvingRecord { root: int_vec(&[2]), critical: true, factor: Halving::Half });
    }

    #[test]
    fn phi_m_wall_misses() {
        let seg = RationalPolytope::interval(rat(1), rat(2)).unwrap();
        let w = catalog::sl2().weyl_group().unwrap();
        let phi = construct_phi_m(&Sublattice::full(1), &w, &LocalSystemAssignment::new(), &seg).unwrap();
        assert_eq!(phi.warnings, vec![PhiMWarning::WallMissesPolytope { root: int_vec(&[2]) }]);
        let max = phi_max_oriented(&w, None).unwrap();
        assert_eq!(phi.datum.num_roots(), max.num_roots());
    }

    #[test]
    fn local_root_missing() {
        let seg = RationalPolytope::interval(rat(0), rat(1)).unwrap();
        let w = catalog::sl2().weyl_group().unwrap();
        let r = construct_phi_m(&Sublattice::full(1), &w, &LocalSystemAssignment::new(), &seg);
        assert!(matches!(r, Err(GlueError::LocalRootMissing(..))));
    }
}
