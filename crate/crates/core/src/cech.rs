//! Čech cohomology of the sheaf `K⁺` of affine functions `⟨z, γ⟩ + c` on a
//! momentum polytope, computed exactly on finite convex covers.
//!
//! Sections over a piece `U` are `L_U ⊕ Q` with
//! `L_U = {γ ∈ Λ∨ : ⟨α, γ⟩ = 0 for every simple α whose wall meets U ∩ P}`.
//! Restrictions are inclusions, so the lattice and rational parts form two
//! separate cochain complexes.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::{self, Rat, RatVec};
use crate::exact_linalg::{dot, fixed_sublattice, integer_kernel, smith_normal_form, IntMatrix, Sublattice};
use crate::polytope::{face_lattice, hyperplane_meets, lp, Constraint, LpOutcome, PolytopeError, RationalPolytope};
use crate::root_data::{lattice_change_group, DiagonalizableGroupDescriptor, RootDataError, RootDatum};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CechError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("root lattice and invariant lattice intersect in rank {0}, so their sum is not direct")]
    NotDirectSum(usize),
    #[error("piece does not meet the polytope")]
    EmptyIntersection,
    #[error("a cover needs at least one piece")]
    EmptyCover,
    #[error("point {0} of the polytope lies in no piece")]
    NotACover(String),
    #[error("d∘d is nonzero in degree {0}")]
    NotAComplex(usize),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, CechError>;

/// Output of [`reduce_to_phi0`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDatum {
    /// `Λ₀ = R ⊕ Λ^W` inside `Λ`.
    pub lambda0: Sublattice,
    /// `Hom(Λ/Λ₀, C^×)`.
    pub e: DiagonalizableGroupDescriptor,
    /// Columns: a basis of `R` followed by a basis of `Λ^W`, in `Λ` coordinates.
    pub basis: IntMatrix,
    /// The datum rewritten in `Λ₀` coordinates.
    pub datum: RootDatum,
}

impl ReducedDatum {
    /// `{y : B y ∈ P}`.
    pub fn pull_back(&self, p: &RationalPolytope) -> Result<RationalPolytope> {
        Ok(p.preimage(&self.basis)?)
    }

    pub fn pull_back_cover(&self, pieces: &[RationalPolytope]) -> Result<Vec<RationalPolytope>> {
        pieces.iter().map(|u| self.pull_back(u)).collect()
    }
}

/// Passes to `Λ₀ = R ⊕ Λ^W`, where the root lattice is a direct summand.
pub fn reduce_to_phi0(phi: &RootDatum) -> Result<ReducedDatum> {
    let n = phi.rank();
    let r = phi.root_lattice();
    let w = phi.weyl_group()?;
    let fixed = fixed_sublattice(w.generators(), n);
    let meet = r.intersection(&fixed);
    if meet.rank() != 0 {
        return Err(CechError::NotDirectSum(meet.rank()));
    }
    let mut cols = r.basis();
    cols.extend(fixed.basis());
    let lambda0 = Sublattice::new(n, cols.clone()).canonical();
    let e = lattice_change_group(phi, &lambda0)?;
    let basis = IntMatrix::from_columns(&cols, n);
    let rows: Vec<RatVec> = basis.row_vecs().iter().map(|v| rational::to_rat_vec(v)).collect();
    let inv = rational::inverse(&rows).expect("Λ₀ has full rank");
    let bt = basis.transpose();
    let roots = phi
        .roots()
        .iter()
        .map(|a| {
            let y: RatVec = inv.iter().map(|row| rational::rat_int_dot(row, a)).collect();
            rational::to_int_vec(&y).expect("roots lie in R")
        })
        .collect();
    let coroots = phi.coroots().iter().map(|c| bt.mul_vec(c)).collect();
    let datum = RootDatum::new(n, roots, coroots, phi.positive().to_vec())?;
    Ok(ReducedDatum { lambda0, e, basis, datum })
}

/// Which sheaf to compute with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SheafMode {
    /// `K⁺`: wall constraints apply.
    #[default]
    KPlus,
    /// The constant sheaf `Λ∨ ⊕ Q`.
    Constant,
}

/// Sections over one open set: `lattice ⊕ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionGroup {
    pub lattice: Sublattice,
    /// Indices of the simple roots whose walls meet the set.
    pub walls: Vec<usize>,
}

impl SectionGroup {
    pub fn rational_rank(&self) -> usize {
        1
    }
}

fn sections_on(phi0: &RootDatum, region: &RationalPolytope, mode: SheafMode) -> SectionGroup {
    let n = phi0.rank();
    if mode == SheafMode::Constant {
        return SectionGroup { lattice: Sublattice::full(n), walls: vec![] };
    }
    let walls: Vec<usize> =
        phi0.simple().into_iter().filter(|&s| hyperplane_meets(region, phi0.coroot(s)).is_some()).collect();
    let lattice = if walls.is_empty() {
        Sublattice::full(n)
    } else {
        let rows: Vec<Vec<BigInt>> = walls.iter().map(|&s| phi0.root(s).to_vec()).collect();
        Sublattice::new(n, integer_kernel(&IntMatrix::from_rows(&rows, n))).canonical()
    };
    SectionGroup { lattice, walls }
}

/// `K⁺(U ∩ P)`.
pub fn sections_kplus(phi0: &RootDatum, p: &RationalPolytope, u: &RationalPolytope) -> Result<SectionGroup> {
    let region = p.intersect(u).ok_or(CechError::EmptyIntersection)?;
    Ok(sections_on(phi0, &region, SheafMode::KPlus))
}

/// Pieces covering `P`, with the nerve of their traces on `P`.
#[derive(Clone, Debug)]
pub struct ConvexCover {
    pub pieces: Vec<RationalPolytope>,
    /// Non-empty index sets, ordered by size and then lexicographically.
    pub nerve: Vec<Vec<usize>>,
    /// `∩_{i ∈ σ} U_i ∩ P` for each nerve simplex.
    pub traces: Vec<RationalPolytope>,
}

impl ConvexCover {
    /// Builds the nerve after checking exactly that the pieces cover `P`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(pieces: Vec<RationalPolytope>, p: &RationalPolytope) -> Result<Self> {
        if pieces.is_empty() {
            return Err(CechError::EmptyCover);
        }
        if let Some(u) = pieces.iter().find(|u| u.dim() != p.dim()) {
            return Err(CechError::DimensionMismatch { expected: p.dim(), got: u.dim() });
        }
        if let Some(x) = uncovered_point(p, &pieces) {
            let shown = x.iter().map(rational::format_rational).join(",");
            return Err(CechError::NotACover(format!("({shown})")));
        }
        let mut nerve: Vec<Vec<usize>> = Vec::new();
        let mut traces = Vec::new();
        let mut layer: Vec<(Vec<usize>, RationalPolytope)> = Vec::new();
        for (i, u) in pieces.iter().enumerate() {
            if let Some(t) = p.intersect(u) {
                layer.push((vec![i], t));
            }
        }
        while !layer.is_empty() {
            let mut next = Vec::new();
            let present: BTreeSet<Vec<usize>> = layer.iter().map(|(s, _)| s.clone()).collect();
            for (s, t) in &layer {
                let last = *s.last().expect("simplices are non-empty");
                for j in last + 1..pieces.len() {
                    let mut bigger = s.clone();
                    bigger.push(j);
                    // every facet must already be present
                    let facets_ok = (0..bigger.len()).all(|k| {
                        let mut f = bigger.clone();
                        f.remove(k);
                        present.contains(&f)
                    });
                    if !facets_ok {
                        continue;
                    }
                    if let Some(t2) = t.intersect(&pieces[j]) {
                        next.push((bigger, t2));
                    }
                }
            }
            for (s, t) in layer {
                nerve.push(s);
                traces.push(t);
            }
            layer = next;
        }
        Ok(ConvexCover { pieces, nerve, traces })
    }

    /// Replaces each piece by its `eps`-interior relative to `P` before
    /// building the cover: constraints that hold on all of `P` stay put, the
    /// others move inward by `eps`. Pieces that become empty are dropped.
    pub fn strict_open(pieces: Vec<RationalPolytope>, p: &RationalPolytope, eps: &Rat) -> Result<Self> {
        let shrunk: Vec<RationalPolytope> = pieces.iter().filter_map(|u| shrink_within(u, p, eps)).collect();
        Self::new(shrunk, p)
    }

    pub fn simplices_of_degree(&self, q: usize) -> Vec<&Vec<usize>> {
        self.nerve.iter().filter(|s| s.len() == q + 1).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.nerve.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }
}

/// `{x : weak_i(x) ≥ 0, strict_j(x) > 0}` as `(normal, offset)` rows.
#[derive(Clone)]
struct Region {
    weak: Vec<(RatVec, Rat)>,
    strict: Vec<(RatVec, Rat)>,
}

impl Region {
    /// A point of the region, found by maximizing the strict margin.
    fn witness(&self, n: usize) -> Option<RatVec> {
        let mut cs: Vec<Constraint> = Vec::new();
        let widen = |v: &RatVec, s: Rat| {
            let mut w = v.clone();
            w.push(s);
            w
        };
        for (a, b) in &self.weak {
            cs.push(Constraint::AtLeast(widen(a, Rat::zero()), b.clone()));
        }
        for (a, b) in &self.strict {
            cs.push(Constraint::AtLeast(widen(a, -Rat::one()), b.clone()));
        }
        let mut cap = vec![Rat::zero(); n];
        cap.push(-Rat::one());
        cs.push(Constraint::AtLeast(cap, -Rat::one()));
        let mut objective = vec![Rat::zero(); n];
        objective.push(-Rat::one());
        match lp::minimize(&objective, &cs, n + 1) {
            LpOutcome::Optimal { mut point, .. } => {
                let margin = point.pop().expect("margin variable");
                (self.strict.is_empty() || margin.is_positive()).then_some(point)
            }
            _ => None,
        }
    }
}

/// A point of `P` outside every piece, if one exists. Exact: `P` minus each
/// closed piece is split into regions where one inequality of the piece fails
/// strictly and the earlier ones hold.
fn uncovered_point(p: &RationalPolytope, pieces: &[RationalPolytope]) -> Option<RatVec> {
    let n = p.dim();
    let rows = |q: &RationalPolytope| -> Vec<(RatVec, Rat)> {
        q.inequalities().iter().map(|i| (i.normal_rat(), i.offset.clone())).collect()
    };
    let mut regions = vec![Region { weak: rows(p), strict: vec![] }];
    for u in pieces {
        let mut next = Vec::new();
        for r in &regions {
            let ineqs = rows(u);
            for k in 0..ineqs.len() {
                let mut piece = r.clone();
                piece.weak.extend(ineqs[..k].iter().cloned());
                let (a, b) = &ineqs[k];
                piece.strict.push((a.iter().map(|x| -x).collect(), -b.clone()));
                if piece.witness(n).is_some() {
                    next.push(piece);
                }
            }
        }
        regions = next;
        if regions.is_empty() {
            return None;
        }
    }
    regions.first().and_then(|r| r.witness(n))
}

fn shrink_within(u: &RationalPolytope, p: &RationalPolytope, eps: &Rat) -> Option<RationalPolytope> {
    let rows = u
        .inequalities()
        .iter()
        .map(|h| {
            let normal = h.normal_rat();
            let holds_on_p = matches!(p.minimize(&normal), LpOutcome::Optimal { value, .. } if value >= h.offset);
            let offset = if holds_on_p { h.offset.clone() } else { &h.offset + eps };
            (normal, offset)
        })
        .collect();
    RationalPolytope::new(u.dim(), rows).ok()
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub rational_betti: usize,
}

impl DegreeCohomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && self.rational_betti == 0
    }
}

/// The two cochain complexes of a cover.
#[derive(Clone, Debug)]
pub struct CechComplex {
    /// Simplices of each degree.
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// Section groups aligned with `simplices`.
    pub sections: Vec<Vec<SectionGroup>>,
    /// `d^p : C^p → C^{p+1}` on the lattice parts, acting on column vectors.
    pub lattice_d: Vec<IntMatrix>,
    /// Signed incidence matrices for the rational parts.
    pub rational_d: Vec<IntMatrix>,
    offsets: Vec<Vec<usize>>,
}

impl CechComplex {
    pub fn build(phi0: &RootDatum, cover: &ConvexCover, mode: SheafMode) -> Result<Self> {
        let top = cover.max_degree();
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        let mut sections: Vec<Vec<SectionGroup>> = vec![Vec::new(); top + 1];
        for (s, t) in cover.nerve.iter().zip(&cover.traces) {
            simplices[s.len() - 1].push(s.clone());
            sections[s.len() - 1].push(sections_on(phi0, t, mode));
        }
        let offsets: Vec<Vec<usize>> = sections
            .iter()
            .map(|groups| {
                let mut acc = 0;
                let mut out = Vec::with_capacity(groups.len() + 1);
                for g in groups {
                    out.push(acc);
                    acc += g.lattice.rank();
                }
                out.push(acc);
                out
            })
            .collect();
        let mut lattice_d = Vec::new();
        let mut rational_d = Vec::new();
        for p in 0..=top {
            let cols = *offsets[p].last().expect("offsets");
            let (rows, next_simplices) = if p < top {
                (*offsets[p + 1].last().expect("offsets"), &simplices[p + 1])
            } else {
                (0, &Vec::new())
            };
            let mut d = IntMatrix::zeros(rows, cols);
            let mut dq = IntMatrix::zeros(next_simplices.len(), simplices[p].len());
            for (ti, tau) in next_simplices.iter().enumerate() {
                let target = &sections[p + 1][ti].lattice;
                let target_basis_start = offsets[p + 1][ti];
                for k in 0..tau.len() {
                    let mut sigma = tau.clone();
                    sigma.remove(k);
                    let si = simplices[p].iter().position(|s| *s == sigma).expect("nerve is closed under faces");
                    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    dq[(ti, si)] = sign.clone();
                    for (b, v) in sections[p][si].lattice.basis().iter().enumerate() {
                        let coords = target.coordinates(v).expect("restriction is an inclusion");
                        for (r, c) in coords.iter().enumerate() {
                            d[(target_basis_start + r, offsets[p][si] + b)] += &sign * c;
                        }
                    }
                }
            }
            lattice_d.push(d);
            rational_d.push(dq);
        }
        for p in 1..lattice_d.len() {
            if !(&lattice_d[p] * &lattice_d[p - 1]).is_zero() || !(&rational_d[p] * &rational_d[p - 1]).is_zero() {
                return Err(CechError::NotAComplex(p - 1));
            }
        }
        Ok(CechComplex { simplices, sections, lattice_d, rational_d, offsets })
    }

    /// `γ` placed on every piece: the image of a global section in `C⁰`.
    pub fn diagonal(&self, gamma: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut out = Vec::new();
        for g in &self.sections[0] {
            out.extend(g.lattice.coordinates(gamma)?);
        }
        Some(out)
    }

    pub fn cochain_rank(&self, p: usize) -> usize {
        *self.offsets[p].last().expect("offsets")
    }

    /// `ker d⁰` as a sublattice of `C⁰`.
    pub fn h0_lattice(&self) -> Sublattice {
        let n = self.cochain_rank(0);
        Sublattice::new(n, integer_kernel(&self.lattice_d[0])).canonical()
    }

    pub fn cohomology(&self) -> Vec<DegreeCohomology> {
        let ranks: Vec<(usize, Vec<BigInt>)> = self
            .lattice_d
            .iter()
            .map(|d| {
                let snf = smith_normal_form(d);
                (snf.rank(), snf.elementary_divisors())
            })
            .collect();
        let qranks: Vec<usize> = self.rational_d.iter().map(|d| rational::int_rank(&d.row_vecs())).collect();
        (0..self.lattice_d.len())
            .map(|p| {
                let (rank_in, divisors_in) = if p == 0 { (0, vec![]) } else { ranks[p - 1].clone() };
                let q_in = if p == 0 { 0 } else { qranks[p - 1] };
                DegreeCohomology {
                    degree: p,
                    free_rank: self.cochain_rank(p) - ranks[p].0 - rank_in,
                    torsion: divisors_in.into_iter().filter(|x| !x.is_one()).collect(),
                    rational_betti: self.simplices[p].len() - qranks[p] - q_in,
                }
            })
            .collect()
    }
}

/// Per-degree cohomology of `K⁺` (or the constant sheaf) on a cover.
pub fn cech_cohomology(
    phi0: &RootDatum,
    cover: &ConvexCover,
    mode: SheafMode,
) -> Result<Vec<DegreeCohomology>> {
    Ok(CechComplex::build(phi0, cover, mode)?.cohomology())
}

/// Whether `H⁰` equals the diagonal image of the global sections `K⁺(P)`.
pub fn h0_matches_global(phi0: &RootDatum, p: &RationalPolytope, complex: &CechComplex) -> Result<bool> {
    let global = sections_kplus(phi0, p, p)?;
    let diag: Option<Vec<Vec<BigInt>>> = global.lattice.basis().iter().map(|g| complex.diagonal(g)).collect();
    let Some(diag) = diag else { return Ok(false) };
    let image = Sublattice::new(complex.cochain_rank(0), diag).canonical();
    Ok(image == complex.h0_lattice())
}

/// Whether `f(z) = ⟨z, γ⟩ + c` has `(W)_a`-invariant Taylor series at every
/// face sample of `P`: each element of the stabilizer of `a`, found by brute
/// force, must fix `γ` under the dual action.
pub fn taylor_invariance_check(gamma: &[BigInt], _c: &Rat, phi0: &RootDatum, p: &RationalPolytope) -> Result<bool> {
    let w = phi0.weyl_group()?;
    for f in face_lattice(p)? {
        for g in w.stabilizer(&f.sample) {
            if g.transpose().mul_vec(gamma) != gamma {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certificate that `γ ↦ (⟨α, γ⟩)_α`, over the simple roots whose walls
/// meet `P`, maps `Λ∨` onto `Z^walls`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityCertificate {
    pub walls: Vec<usize>,
    pub elementary_divisors: Vec<BigInt>,
}

impl SurjectivityCertificate {
    pub fn is_surjective(&self) -> bool {
        self.elementary_divisors.len() == self.walls.len() && self.elementary_divisors.iter().all(One::is_one)
    }
}

pub fn wall_pairing_surjectivity(phi0: &RootDatum, p: &RationalPolytope) -> SurjectivityCertificate {
    let n = phi0.rank();
    let walls: Vec<usize> =
        phi0.simple().into_iter().filter(|&s| hyperplane_meets(p, phi0.coroot(s)).is_some()).collect();
    let rows: Vec<Vec<BigInt>> = walls.iter().map(|&s| phi0.root(s).to_vec()).collect();
    let elementary_divisors =
        if rows.is_empty() { vec![] } else { smith_normal_form(&IntMatrix::from_rows(&rows, n)).elementary_divisors() };
    SurjectivityCertificate { walls, elementary_divisors }
}

/// `⟨α, γ⟩` for every simple root, in the order of [`RootDatum::simple`].
pub fn simple_pairings(phi0: &RootDatum, gamma: &[BigInt]) -> Vec<BigInt> {
    phi0.simple().iter().map(|&s| dot(phi0.root(s), gamma)).collect()
}
