//! Exact rational convex polyhedra in H-representation.
//!
//! A polytope is a list of inequalities `normal · x ≥ offset` with primitive
//! integer normals. Canonicalization drops duplicates and LP-redundant rows
//! while keeping the relative order of the survivors, so face index sets
//! refer to positions in [`RationalPolytope::inequalities`].

pub mod lp;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::{self, primitive_direction, rat_dot, rat_int_dot, to_rat_vec, Rat, RatVec};
use crate::exact_linalg::IntMatrix;
pub use lp::{Constraint, LpOutcome};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("the inequality system has no solution")]
    Infeasible,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the polyhedron is unbounded")]
    Unbounded,
    #[error("point lies outside the polytope")]
    PointOutside,
    #[error("point is not a vertex")]
    NotVertex,
    #[error("tangent cone at the vertex is not simplicial")]
    NotSimplicial,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("cut of size {0} reaches a vertex not adjacent to the corner")]
    EpsilonTooLarge(String),
    #[error("at least one point is required")]
    NoPoints,
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

/// `normal · x ≥ offset` with `normal` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<BigInt>,
    pub offset: Rat,
}

impl Inequality {
    pub fn value(&self, x: &[Rat]) -> Rat {
        rat_int_dot(x, &self.normal)
    }

    pub fn slack(&self, x: &[Rat]) -> Rat {
        self.value(x) - &self.offset
    }

    pub fn normal_rat(&self) -> RatVec {
        to_rat_vec(&self.normal)
    }

    fn constraint(&self) -> Constraint {
        Constraint::AtLeast(self.normal_rat(), self.offset.clone())
    }
}

/// A face, described by the inequalities tight on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight: Vec<usize>,
    pub dim: usize,
    /// Average of the face's vertices; lies in the relative interior.
    pub sample: RatVec,
    /// Indices into [`RationalPolytope::vertices`].
    pub vertices: Vec<usize>,
}

/// `cone(generators) + span(lineality)`, translated to `apex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCone {
    pub apex: RatVec,
    /// Primitive extreme-ray directions modulo the lineality space, sorted.
    pub generators: Vec<Vec<BigInt>>,
    /// Primitive integer basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
    /// Normals of the inequalities tight at the apex.
    pub normals: Vec<Vec<BigInt>>,
}

impl TangentCone {
    pub fn lineality_rank(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn contains_direction(&self, y: &[Rat]) -> bool {
        self.normals.iter().all(|n| !rat_int_dot(y, n).is_negative())
    }
}

#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
    bounded: bool,
    vertices: OnceLock<Vec<RatVec>>,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.inequalities == other.inequalities
    }
}

impl Eq for RationalPolytope {}

fn scale_to_primitive(normal: &[Rat], offset: &Rat) -> Option<Inequality> {
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let prim = primitive_direction(normal);
    // normal = factor · prim with factor > 0
    let k = normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let factor = &normal[k] / Rat::from_integer(prim[k].clone());
    Some(Inequality { normal: prim, offset: offset / factor })
}

impl RationalPolytope {
    /// `{x : normal_i · x ≥ offset_i}`, canonicalized.
    pub fn new(dim: usize, rows: Vec<(RatVec, Rat)>) -> Result<Self> {
        let mut ineqs: Vec<Inequality> = Vec::new();
        for (normal, offset) in rows {
            if normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch { expected: dim, got: normal.len() });
            }
            match scale_to_primitive(&normal, &offset) {
                Some(q) => {
                    if !ineqs.contains(&q) {
                        ineqs.push(q);
                    }
                }
                None if offset.is_positive() => return Err(PolytopeError::Infeasible),
                None => {}
            }
        }
        let all: Vec<Constraint> = ineqs.iter().map(Inequality::constraint).collect();
        if lp::feasible_point(&all, dim).is_none() {
            return Err(PolytopeError::Infeasible);
        }
        let mut keep = vec![true; ineqs.len()];
        for i in 0..ineqs.len() {
            let others: Vec<Constraint> =
                (0..ineqs.len()).filter(|&j| j != i && keep[j]).map(|j| ineqs[j].constraint()).collect();
            if let LpOutcome::Optimal { value, .. } = lp::minimize(&ineqs[i].normal_rat(), &others, dim) {
                if value >= ineqs[i].offset {
                    keep[i] = false;
                }
            }
        }
        let inequalities: Vec<Inequality> =
            ineqs.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(q, _)| q).collect();
        let constraints: Vec<Constraint> = inequalities.iter().map(Inequality::constraint).collect();
        let bounded = (0..dim).all(|k| {
            [Rat::one(), -Rat::one()].into_iter().all(|s| {
                let mut c = vec![Rat::zero(); dim];
                c[k] = s;
                matches!(lp::minimize(&c, &constraints, dim), LpOutcome::Optimal { .. })
            })
        });
        Ok(RationalPolytope { dim, inequalities, bounded, vertices: OnceLock::new(), faces: OnceLock::new() })
    }

    /// Integer rows `(normal, offset)`.
    pub fn from_i64(dim: usize, rows: &[(Vec<i64>, i64)]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|(n, c)| (n.iter().map(|&x| rational::rat(x)).collect(), rational::rat(*c))).collect())
    }

    /// The box `∏ [lo_k, hi_k]`.
    pub fn from_bounds(bounds: &[(Rat, Rat)]) -> Result<Self> {
        let d = bounds.len();
        let mut rows = Vec::new();
        for (k, (lo, hi)) in bounds.iter().enumerate() {
            let mut e = vec![Rat::zero(); d];
            e[k] = Rat::one();
            rows.push((e.clone(), lo.clone()));
            rows.push((e.into_iter().map(|x| -x).collect(), -hi.clone()));
        }
        Self::new(d, rows)
    }

    pub fn interval(lo: Rat, hi: Rat) -> Result<Self> {
        Self::from_bounds(&[(lo, hi)])
    }

    /// Convex hull of finitely many points.
    pub fn from_vertices(points: &[RatVec]) -> Result<Self> {
        let Some(p0) = points.first() else {
            return Err(PolytopeError::NoPoints);
        };
        let d = p0.len();
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(PolytopeError::DimensionMismatch { expected: d, got: p.len() });
        }
        let diffs: Vec<RatVec> = points.iter().map(|p| sub(p, p0)).collect();
        let mut dirs = diffs.clone();
        let k = rational::rref(&mut dirs).len();
        dirs.truncate(k);
        // equations of the affine hull
        let complement = rational::kernel(&dirs, d);
        let mut rows: Vec<(RatVec, Rat)> = Vec::new();
        for c in &complement {
            let v = rat_dot(c, p0);
            rows.push((c.clone(), v.clone()));
            rows.push((c.iter().map(|x| -x).collect(), -v));
        }
        if k > 0 {
            for subset in (0..points.len()).combinations(k) {
                let base = &points[subset[0]];
                let mut eqs: Vec<RatVec> = subset[1..].iter().map(|&j| sub(&points[j], base)).collect();
                eqs.extend(complement.iter().cloned());
                let ker = rational::kernel(&eqs, d);
                if ker.len() != 1 {
                    continue;
                }
                let n = &ker[0];
                let c = rat_dot(n, base);
                let vals: Vec<Rat> = points.iter().map(|p| rat_dot(n, p)).collect();
                if vals.iter().all(|v| *v >= c) {
                    rows.push((n.clone(), c));
                } else if vals.iter().all(|v| *v <= c) {
                    rows.push((n.iter().map(|x| -x).collect(), -c));
                }
            }
        }
        Self::new(d, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        self.inequalities.iter().map(Inequality::constraint).collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim && self.inequalities.iter().all(|q| !q.slack(x).is_negative())
    }

    /// Indices of the inequalities holding with equality at `x`.
    pub fn tight_at(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.inequalities.len()).filter(|&i| self.inequalities[i].slack(x).is_zero()).collect()
    }

    pub fn minimize(&self, objective: &[Rat]) -> LpOutcome {
        lp::minimize(objective, &self.constraints(), self.dim)
    }

    pub fn some_point(&self) -> RatVec {
        lp::feasible_point(&self.constraints(), self.dim).expect("polytopes are non-empty")
    }

    /// `P ∩ Q`, or `None` when empty.
    pub fn intersect(&self, other: &RationalPolytope) -> Option<RationalPolytope> {
        assert_eq!(self.dim, other.dim, "intersecting polytopes of different dimension");
        let rows = self
            .inequalities
            .iter()
            .chain(&other.inequalities)
            .map(|q| (q.normal_rat(), q.offset.clone()))
            .collect();
        RationalPolytope::new(self.dim, rows).ok()
    }

    /// Adds `normal · x ≥ offset`.
    pub fn with_inequality(&self, normal: RatVec, offset: Rat) -> Result<RationalPolytope> {
        let mut rows: Vec<(RatVec, Rat)> =
            self.inequalities.iter().map(|q| (q.normal_rat(), q.offset.clone())).collect();
        rows.push((normal, offset));
        RationalPolytope::new(self.dim, rows)
    }

    /// Moves every facet inwards by `eps` (in units of its primitive normal).
    pub fn shrink(&self, eps: &Rat) -> Option<RationalPolytope> {
        let rows = self.inequalities.iter().map(|q| (q.normal_rat(), &q.offset + eps)).collect();
        RationalPolytope::new(self.dim, rows).ok()
    }

    /// `{y : B y ∈ P}` for a square integer matrix `B`.
    pub fn preimage(&self, b: &IntMatrix) -> Result<RationalPolytope> {
        if b.rows() != self.dim {
            return Err(PolytopeError::DimensionMismatch { expected: self.dim, got: b.rows() });
        }
        let bt = b.transpose();
        let rows = self.inequalities.iter().map(|q| (to_rat_vec(&bt.mul_vec(&q.normal)), q.offset.clone())).collect();
        RationalPolytope::new(b.cols(), rows)
    }

    /// Indices of inequalities that hold with equality on all of `P`.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        let cs = self.constraints();
        (0..self.inequalities.len())
            .filter(|&i| {
                let neg: RatVec = self.inequalities[i].normal_rat().into_iter().map(|x| -x).collect();
                match lp::minimize(&neg, &cs, self.dim) {
                    LpOutcome::Optimal { value, .. } => -value == self.inequalities[i].offset,
                    _ => false,
                }
            })
            .collect()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let eq: Vec<Vec<BigInt>> = self.implicit_equalities().iter().map(|&i| self.inequalities[i].normal.clone()).collect();
        self.dim - rational::int_rank(&eq)
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> Result<&[RatVec]> {
        if !self.bounded {
            return Err(PolytopeError::Unbounded);
        }
        Ok(self.vertices.get_or_init(|| self.enumerate_vertices()))
    }

    fn enumerate_vertices(&self) -> Vec<RatVec> {
        let d = self.dim;
        let mut found = BTreeSet::new();
        for subset in (0..self.inequalities.len()).combinations(d) {
            let m: Vec<RatVec> = subset.iter().map(|&i| self.inequalities[i].normal_rat()).collect();
            let Some(inv) = (if d == 0 { Some(vec![]) } else { rational::inverse(&m) }) else { continue };
            let rhs: RatVec = subset.iter().map(|&i| self.inequalities[i].offset.clone()).collect();
            let x: RatVec = inv.iter().map(|row| rat_dot(row, &rhs)).collect();
            if self.contains(&x) {
                found.insert(x);
            }
        }
        found.into_iter().collect()
    }

    fn compute_faces(&self, verts: &[RatVec]) -> Vec<Face> {
        let incidence: Vec<BTreeSet<usize>> = self
            .inequalities
            .iter()
            .map(|q| (0..verts.len()).filter(|&v| q.slack(&verts[v]).is_zero()).collect())
            .collect();
        let all: BTreeSet<usize> = (0..verts.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(all.clone());
        queue.push_back(all);
        while let Some(f) = queue.pop_front() {
            for inc in &incidence {
                let g: BTreeSet<usize> = f.intersection(inc).copied().collect();
                if !g.is_empty() && !seen.contains(&g) {
                    seen.insert(g.clone());
                    queue.push_back(g);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vs| {
                let vs: Vec<usize> = vs.into_iter().collect();
                let p0 = &verts[vs[0]];
                let diffs: Vec<RatVec> = vs.iter().map(|&v| sub(&verts[v], p0)).collect();
                let dim = rational::rank(&diffs);
                let count = Rat::from_integer(BigInt::from(vs.len()));
                let sample: RatVec = (0..self.dim)
                    .map(|k| vs.iter().map(|&v| verts[v][k].clone()).sum::<Rat>() / &count)
                    .collect();
                let tight = (0..incidence.len()).filter(|&i| vs.iter().all(|v| incidence[i].contains(v))).collect();
                Face { tight, dim, sample, vertices: vs }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }
}

fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All non-empty faces of a bounded polytope, ordered by dimension and then
/// by vertex set. The last entry is `P` itself.
pub fn face_lattice(p: &RationalPolytope) -> Result<&[Face]> {
    let verts = p.vertices()?;
    Ok(p.faces.get_or_init(|| p.compute_faces(verts)))
}

/// The cone generated by `P − a`.
pub fn tangent_cone(p: &RationalPolytope, a: &[Rat]) -> Result<TangentCone> {
    if a.len() != p.dim {
        return Err(PolytopeError::DimensionMismatch { expected: p.dim, got: a.len() });
    }
    if !p.contains(a) {
        return Err(PolytopeError::PointOutside);
    }
    let n = p.dim;
    let normals: Vec<Vec<BigInt>> = p.tight_at(a).into_iter().map(|i| p.inequalities[i].normal.clone()).collect();
    let rat_normals: Vec<RatVec> = normals.iter().map(|v| to_rat_vec(v)).collect();
    let lin = rational::kernel(&rat_normals, n);
    let lineality: Vec<Vec<BigInt>> = lin.iter().map(|v| primitive_direction(v)).collect();
    let l = lineality.len();
    let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    if l < n {
        let k = n - l - 1;
        for subset in (0..normals.len()).combinations(k) {
            let mut eqs: Vec<RatVec> = subset.iter().map(|&i| rat_normals[i].clone()).collect();
            eqs.extend(lin.iter().cloned());
            let ker = rational::kernel(&eqs, n);
            if ker.len() != 1 {
                continue;
            }
            let y = &ker[0];
            for sign in [Rat::one(), -Rat::one()] {
                let ys: RatVec = y.iter().map(|x| x * &sign).collect();
                if rat_normals.iter().all(|nv| !rat_dot(nv, &ys).is_negative()) {
                    rays.insert(primitive_direction(&ys));
                }
            }
        }
    }
    Ok(TangentCone { apex: a.to_vec(), generators: rays.into_iter().collect(), lineality, normals })
}

/// A rational point of `P` on the hyperplane `⟨x, α∨⟩ = 0`, if any.
pub fn hyperplane_meets(p: &RationalPolytope, coroot: &[BigInt]) -> Option<RatVec> {
    let mut cs = p.constraints();
    cs.push(Constraint::Equal(to_rat_vec(coroot), Rat::zero()));
    lp::feasible_point(&cs, p.dim)
}

/// Whether `⟨x, α∨⟩ ≥ 0` on all of `P` for every listed coroot.
pub fn chamber_containment(p: &RationalPolytope, coroots: &[Vec<BigInt>]) -> bool {
    coroots.iter().all(|c| match p.minimize(&to_rat_vec(c)) {
        LpOutcome::Optimal { value, .. } => !value.is_negative(),
        _ => false,
    })
}

/// Cuts the corner at the vertex `v`: with `e_1..e_n` the primitive edge
/// directions at `v` and `x = v + Σ λ_i e_i`, adds `Σ λ_i ≥ eps`.
pub fn cut_corner(p: &RationalPolytope, v: &[Rat], eps: &Rat) -> Result<RationalPolytope> {
    if !eps.is_positive() {
        return Err(PolytopeError::NonPositiveEpsilon);
    }
    let verts = p.vertices()?;
    if !verts.iter().any(|u| u.as_slice() == v) {
        return Err(PolytopeError::NotVertex);
    }
    let cone = tangent_cone(p, v)?;
    let n = p.dim;
    if !cone.is_pointed() || cone.generators.len() != n {
        return Err(PolytopeError::NotSimplicial);
    }
    // rows of E^T; w = 1^T E^{-1} solves E^T w = 1
    let et: Vec<RatVec> = cone.generators.iter().map(|g| to_rat_vec(g)).collect();
    let w = rational::solve(&et, &vec![Rat::one(); n], n).ok_or(PolytopeError::NotSimplicial)?;
    if rational::rank(&et) < n {
        return Err(PolytopeError::NotSimplicial);
    }
    for u in verts.iter().filter(|u| u.as_slice() != v) {
        if rat_dot(&w, &sub(u, v)) <= *eps {
            return Err(PolytopeError::EpsilonTooLarge(rational::format_rational(eps)));
        }
    }
    let offset = eps + rat_dot(&w, v);
    p.with_inequality(w, offset)
}

/// Lattice-independent helper: `|det|` of square integer matrices built from
/// vectors as rows.
pub fn abs_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    IntMatrix::from_rows(rows, n).determinant().abs()
}

/// Least common denominator of a rational vector.
pub fn common_denominator(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}
