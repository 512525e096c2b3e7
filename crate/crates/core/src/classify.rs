//! Classification front end: weight monoids, the Delzant test, the SU(2)
//! table and a face-by-face multiplicity-free checker with a pluggable table
//! of admissible local cones.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::{self, primitive_direction, to_rat_vec, Rat, RatVec};
use crate::exact_linalg::{dot, smith_normal_form, IntMatrix, Sublattice};
use crate::local_glue::ambient_local_roots;
use crate::polytope::{
    chamber_containment, face_lattice, tangent_cone, PolytopeError, RationalPolytope,
    TangentCone,
};
use crate::root_data::{cartan_matrix, recognize_finite_type, DynkinType, RootDataError, RootDatum};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("no compact multiplicity free SU(2)-manifold has these invariants: {0}")]
    InvalidPair(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the momentum polytope leaves the dominant chamber")]
    NotInChamber,
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

/// A polyhedral cone together with its lattice.
#[derive(Clone, Debug)]
pub struct WeightMonoidData {
    /// `cone(Ξ)` as an H-polyhedron.
    pub cone: RationalPolytope,
    /// Extreme rays and lineality of the cone.
    pub tangent: TangentCone,
    /// `⟨Ξ⟩_Z`.
    pub lattice: Sublattice,
    /// Whether `N Ξ = cone(Ξ) ∩ ⟨Ξ⟩_Z`; `None` for cones containing a line.
    pub saturated: Option<bool>,
}

/// H-representation of `cone(gens)` in `Q^n`.
pub fn cone_from_generators(gens: &[Vec<BigInt>], n: usize) -> Result<RationalPolytope> {
    let gens: Vec<RatVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).map(|g| to_rat_vec(g)).collect();
    let mut span = gens.clone();
    let k = rational::rref(&mut span).len();
    span.truncate(k);
    let complement = rational::kernel(&span, n);
    let mut rows: Vec<(RatVec, Rat)> = Vec::new();
    for c in &complement {
        rows.push((c.clone(), Rat::zero()));
        rows.push((c.iter().map(|x| -x).collect(), Rat::zero()));
    }
    if k > 0 {
        for subset in (0..gens.len()).combinations(k - 1) {
            let mut eqs: Vec<RatVec> = subset.iter().map(|&i| gens[i].clone()).collect();
            eqs.extend(complement.iter().cloned());
            let ker = rational::kernel(&eqs, n);
            if ker.len() != 1 {
                continue;
            }
            let nv = &ker[0];
            let vals: Vec<Rat> = gens.iter().map(|g| rational::rat_dot(nv, g)).collect();
            if vals.iter().all(|v| !v.is_negative()) {
                rows.push((nv.clone(), Rat::zero()));
            } else if vals.iter().all(|v| !v.is_positive()) {
                rows.push((nv.iter().map(|x| -x).collect(), Rat::zero()));
            }
        }
    }
    Ok(RationalPolytope::new(n, rows)?)
}

/// `(cone(Ξ), ⟨Ξ⟩_Z)` and whether `Ξ` generates the saturated monoid
/// `cone(Ξ) ∩ ⟨Ξ⟩_Z`.
pub fn weight_monoid_data(xi: &[Vec<BigInt>], n: usize) -> Result<WeightMonoidData> {
    if let Some(g) = xi.iter().find(|g| g.len() != n) {
        return Err(ClassifyError::InvalidInput(format!("generator {g:?} does not have {n} coordinates")));
    }
    let cone = cone_from_generators(xi, n)?;
    let tangent = tangent_cone(&cone, &vec![Rat::zero(); n])?;
    let lattice = Sublattice::new(n, xi.to_vec()).canonical();
    let saturated = if tangent.is_pointed() { Some(monoid_is_saturated(xi, &lattice, &cone)) } else { None };
    Ok(WeightMonoidData { cone, tangent, lattice, saturated })
}

struct Monoid<'a> {
    gens: Vec<&'a Vec<BigInt>>,
    cone: &'a RationalPolytope,
    memo: HashMap<Vec<BigInt>, bool>,
}

impl Monoid<'_> {
    /// Membership in `N Ξ`; terminates because every generator has positive
    /// height on a pointed cone and the height drops at each step.
    fn contains(&mut self, v: &[BigInt]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if let Some(&b) = self.memo.get(v) {
            return b;
        }
        let mut found = false;
        if self.cone.contains(&to_rat_vec(v)) {
            for i in 0..self.gens.len() {
                let rest: Vec<BigInt> = v.iter().zip(self.gens[i]).map(|(a, b)| a - b).collect();
                if self.cone.contains(&to_rat_vec(&rest)) && self.contains(&rest) {
                    found = true;
                    break;
                }
            }
        }
        self.memo.insert(v.to_vec(), found);
        found
    }
}

/// Every lattice point of every fundamental parallelepiped spanned by a
/// basis of the span chosen from `Ξ` must lie in `N Ξ`.
fn monoid_is_saturated(xi: &[Vec<BigInt>], lattice: &Sublattice, cone: &RationalPolytope) -> bool {
    let gens: Vec<&Vec<BigInt>> = xi.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    let k = lattice.rank();
    if k == 0 {
        return true;
    }
    let mut monoid = Monoid { gens: gens.clone(), cone, memo: HashMap::new() };
    let basis = lattice.basis();
    for subset in (0..gens.len()).combinations(k) {
        // generator coordinates in the lattice basis, as columns of g
        let cols: Vec<Vec<BigInt>> =
            subset.iter().map(|&i| lattice.coordinates(gens[i]).expect("generator in its lattice")).collect();
        let g = IntMatrix::from_columns(&cols, k);
        if g.determinant().is_zero() {
            continue;
        }
        let g_rows: Vec<RatVec> = g.row_vecs().iter().map(|r| to_rat_vec(r)).collect();
        let g_inv = rational::inverse(&g_rows).expect("nonsingular");
        let snf = smith_normal_form(&g);
        let u_rows: Vec<RatVec> = snf.u.row_vecs().iter().map(|r| to_rat_vec(r)).collect();
        let u_inv = rational::inverse(&u_rows).expect("unimodular");
        let diag = snf.diagonal();
        // Z^k / G Z^k ≅ ⊕ Z/d_i through y ↦ U y
        for t in diag.iter().map(num_iter).multi_cartesian_product() {
            let t_rat: RatVec = t.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let y: RatVec = u_inv.iter().map(|row| rational::rat_dot(row, &t_rat)).collect();
            let lambda: RatVec = g_inv.iter().map(|row| rational::rat_dot(row, &y)).collect();
            let frac: RatVec = lambda.iter().map(|l| l - l.floor()).collect();
            // point of the parallelepiped: Σ frac_i · (generator i), in ambient coordinates
            let coords: RatVec = (0..k)
                .map(|r| (0..k).map(|c| &frac[c] * Rat::from_integer(g[(r, c)].clone())).sum())
                .collect();
            let ambient: RatVec = (0..lattice.ambient_rank)
                .map(|j| (0..k).map(|r| &coords[r] * Rat::from_integer(basis[r][j].clone())).sum())
                .collect();
            let v = rational::to_int_vec(&ambient).expect("lattice point");
            if !monoid.contains(&v) {
                return false;
            }
        }
    }
    true
}

fn num_iter(d: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::zero();
    while &i < d {
        out.push(i.clone());
        i += 1;
    }
    out
}

/// Per-vertex evidence for the Delzant test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: RatVec,
    /// Primitive edge directions in lattice coordinates.
    pub edges: Vec<Vec<BigInt>>,
    /// Determinant of the edge matrix when the vertex is simple.
    pub determinant: Option<BigInt>,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantVerdict {
    pub delzant: bool,
    pub vertices: Vec<VertexCertificate>,
}

/// Primitive lattice coordinates of a direction, if it lies in the span.
fn lattice_direction(lattice: &Sublattice, v: &[BigInt]) -> Option<Vec<BigInt>> {
    lattice.rational_coordinates(&to_rat_vec(v)).map(|c| primitive_direction(&c))
}

/// The edge directions at `vertex`, made primitive in `Λ`, must form a
/// basis of `Λ`.
fn simple_regular_at(cone: &TangentCone, lattice: &Sublattice) -> (Vec<Vec<BigInt>>, Option<BigInt>, bool) {
    let k = lattice.rank();
    let edges: Option<Vec<Vec<BigInt>>> = cone.generators.iter().map(|g| lattice_direction(lattice, g)).collect();
    let Some(edges) = edges else { return (vec![], None, false) };
    if !cone.is_pointed() || edges.len() != k {
        return (edges, None, false);
    }
    let det = IntMatrix::from_rows(&edges, k).determinant();
    let ok = det.abs().is_one();
    (edges, Some(det), ok)
}

/// Whether every vertex of a compact `Q` is simple with edge directions
/// forming a basis of `Λ`.
pub fn delzant_check(q: &RationalPolytope, lattice: &Sublattice) -> Result<DelzantVerdict> {
    if lattice.ambient_rank != q.dim() {
        return Err(ClassifyError::InvalidInput(format!(
            "lattice lives in rank {} but the polytope in dimension {}",
            lattice.ambient_rank,
            q.dim()
        )));
    }
    let mut vertices = Vec::new();
    for v in q.vertices()? {
        let cone = tangent_cone(q, v)?;
        let (edges, determinant, passes) = simple_regular_at(&cone, lattice);
        vertices.push(VertexCertificate { vertex: v.clone(), edges, determinant, passes });
    }
    Ok(DelzantVerdict { delzant: vertices.iter().all(|c| c.passes), vertices })
}

/// The SU(2) momentum image: a point or an interval in `R≥0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Su2Polytope {
    Point(Rat),
    Interval(Rat, Rat),
}

impl Su2Polytope {
    pub fn to_polytope(&self) -> Result<RationalPolytope> {
        let (a, b) = match self {
            Su2Polytope::Point(x) => (x.clone(), x.clone()),
            Su2Polytope::Interval(x, y) => (x.clone(), y.clone()),
        };
        Ok(RationalPolytope::interval(a, b)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Case {
    CoadjointOrbit,
    WallInterval,
    InteriorInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su2Classification {
    pub case: Su2Case,
    pub polytope: Su2Polytope,
    pub d: u64,
    pub manifold: String,
}

/// Admissible lattice indices for intervals touching the wall.
pub const WALL_INDICES: [u64; 3] = [1, 2, 4];

/// Compact multiplicity free SU(2)-manifolds from `(P, Λ = dZ)`.
pub fn classify_su2(p: &Su2Polytope, d: u64) -> Result<Su2Classification> {
    let bad = |s: &str| Err(ClassifyError::InvalidInput(s.to_string()));
    match p {
        Su2Polytope::Point(x) => {
            if x.is_negative() {
                return bad("the point must lie in R≥0");
            }
            if d != 0 {
                return Err(ClassifyError::InvalidInput(format!("a point requires Λ = 0, got d = {d}")));
            }
            let manifold = if x.is_zero() { "point" } else { "ℙ¹" };
            Ok(Su2Classification { case: Su2Case::CoadjointOrbit, polytope: p.clone(), d, manifold: manifold.into() })
        }
        Su2Polytope::Interval(x, y) => {
            if x.is_negative() || x >= y {
                return bad("an interval [x, y] needs 0 ≤ x < y");
            }
            if d == 0 {
                return bad("an interval requires Λ = dZ with d ≥ 1");
            }
            if x.is_zero() {
                let manifold = match d {
                    1 => "ℙ²",
                    2 => "ℙ¹×ℙ¹",
                    4 => "ℙ(𝔰𝔩₂)",
                    _ => {
                        return Err(ClassifyError::InvalidPair(format!(
                            "an interval [0, y] requires d ∈ {{1,2,4}}, got d = {d}"
                        )))
                    }
                };
                Ok(Su2Classification { case: Su2Case::WallInterval, polytope: p.clone(), d, manifold: manifold.into() })
            } else {
                Ok(Su2Classification {
                    case: Su2Case::InteriorInterval,
                    polytope: p.clone(),
                    d,
                    manifold: format!("Hirzebruch surface of degree {d}"),
                })
            }
        }
    }
}

/// Momentum image and principal-isotropy lattice.
#[derive(Clone, Debug)]
pub struct MomentumData {
    pub q: RationalPolytope,
    pub lambda0: Sublattice,
}

impl MomentumData {
    /// `(P, dZ)` in the weight lattice `Z` of SU(2).
    pub fn su2(p: &Su2Polytope, d: u64) -> Result<Self> {
        let gens = if d == 0 { vec![] } else { vec![vec![BigInt::from(d)]] };
        Ok(MomentumData { q: p.to_polytope()?, lambda0: Sublattice::new(1, gens) })
    }
}

/// A row of the local cone table: local Dynkin type, the pairings
/// `⟨λ_i, α_j∨⟩` of a canonical basis of `Λ₀` with the local simple coroots,
/// and the admissible tangent cones in `Λ₀` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub dynkin: String,
    pub pairings: Vec<Vec<BigInt>>,
    pub cones: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalOracleTable {
    pub rows: Vec<OracleRow>,
}

impl LocalOracleTable {
    fn lookup(&self, dynkin: &str, pairings: &[Vec<BigInt>], cone: &[Vec<BigInt>]) -> Option<bool> {
        let mut cone: Vec<Vec<BigInt>> = cone.to_vec();
        cone.sort();
        let mut matched = false;
        for row in self.rows.iter().filter(|r| r.dynkin == dynkin && r.pairings == pairings) {
            matched = true;
            if row.cones.iter().any(|c| {
                let mut c = c.clone();
                c.sort();
                c == cone
            }) {
                return Some(true);
            }
        }
        matched.then_some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    True,
    Undecided,
    False,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::Undecided => "undecided",
            Verdict::False => "false",
        })
    }
}

/// Which rule settled a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Tangent cone is the whole space.
    Interior,
    /// `Δ_a` empty: primitive generators must form a basis of `Λ₀`.
    Basis,
    /// `Δ_a` of type A1, settled by the SU(2) rows.
    RankOne,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    pub point: RatVec,
    pub local_type: DynkinType,
    /// Cone generators in `Λ₀` coordinates.
    pub cone: Vec<Vec<BigInt>>,
    pub rule: Rule,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfReport {
    pub verdict: Verdict,
    pub faces: Vec<FaceReport>,
}

/// Points at which the local condition is tested. Unbounded polytopes
/// need an explicit list of points, one in each minimal face.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum FaceSelection {
    #[default]
    Vertices,
    All,
    Points(Vec<RatVec>),
}

/// Checks that the tangent cone at each selected face is multiplicity free
/// for `(Φ_a, Δ_a⁺, Λ₀)`.
pub fn mf_check(
    data: &MomentumData,
    phi: &RootDatum,
    oracle: &LocalOracleTable,
    selection: &FaceSelection,
) -> Result<MfReport> {
    let q = &data.q;
    if phi.rank() != q.dim() || data.lambda0.ambient_rank != q.dim() {
        return Err(ClassifyError::InvalidInput("root datum, polytope and lattice ranks differ".into()));
    }
    let positive: Vec<Vec<BigInt>> = phi.positive().iter().map(|&i| phi.coroot(i).to_vec()).collect();
    if !chamber_containment(q, &positive) {
        return Err(ClassifyError::NotInChamber);
    }
    if !matches!(selection, FaceSelection::Points(_)) && !q.is_bounded() {
        return Err(ClassifyError::InvalidInput("an unbounded polytope needs an explicit list of face points".into()));
    }
    let points: Vec<RatVec> = match selection {
        FaceSelection::Vertices => q.vertices()?.to_vec(),
        FaceSelection::All => face_lattice(q)?.iter().map(|f| f.sample.clone()).collect(),
        FaceSelection::Points(ps) => {
            if let Some(p) = ps.iter().find(|p| p.len() != q.dim() || !q.contains(p)) {
                return Err(ClassifyError::InvalidInput(format!("face point {p:?} is not in the polytope")));
            }
            ps.clone()
        }
    };
    let mut faces = Vec::new();
    let mut verdict = Verdict::True;
    for a in points {
        let report = check_point(data, phi, oracle, &a)?;
        verdict = verdict.and(report.verdict);
        faces.push(report);
    }
    Ok(MfReport { verdict, faces })
}

fn check_point(data: &MomentumData, phi: &RootDatum, oracle: &LocalOracleTable, a: &[Rat]) -> Result<FaceReport> {
    let lambda0 = &data.lambda0;
    let local = ambient_local_roots(phi, a);
    let local_type = recognize_finite_type(&cartan_matrix(phi, &local.simple))?;
    let cone = tangent_cone(&data.q, a)?;
    let coords: Option<Vec<Vec<BigInt>>> = cone.generators.iter().map(|g| lattice_direction(lambda0, g)).collect();
    let report = |rule, verdict, cone: Vec<Vec<BigInt>>, note: &str| FaceReport {
        point: a.to_vec(),
        local_type: local_type.clone(),
        cone,
        rule,
        verdict,
        note: note.to_string(),
    };
    if cone.is_full_space() {
        return Ok(report(Rule::Interior, Verdict::True, vec![], "interior point"));
    }
    let Some(gens) = coords else {
        return Ok(report(Rule::Basis, Verdict::False, vec![], "tangent cone leaves the span of Λ₀"));
    };
    if local_type.is_trivial() {
        if !cone.is_pointed() {
            return Ok(report(Rule::Basis, Verdict::Undecided, gens, "cone contains a line"));
        }
        let (_, det, ok) = simple_regular_at(&cone, lambda0);
        let note = match det {
            Some(d) => format!("determinant {d}"),
            None => format!("{} generators for a lattice of rank {}", gens.len(), lambda0.rank()),
        };
        let v = if ok { Verdict::True } else { Verdict::False };
        return Ok(report(Rule::Basis, v, gens, &note));
    }
    let simple = &local.simple;
    if local_type.to_string() == "A1" && cone.is_pointed() && lambda0.rank() == gens.len() {
        let coroot = phi.coroot(simple[0]);
        match lambda0.basis().as_slice() {
            [] => return Ok(report(Rule::RankOne, Verdict::True, gens, "fixed point with Λ₀ = 0")),
            [lambda] if gens.len() == 1 && !dot(lambda, coroot).is_zero() => {
                let m = dot(lambda, coroot).abs();
                let ok = [1, 2, 4].iter().any(|&k| m == BigInt::from(k));
                let v = if ok { Verdict::True } else { Verdict::False };
                return Ok(report(Rule::RankOne, v, gens, &format!("⟨λ, α∨⟩ = {m}, admissible values are 1, 2, 4")));
            }
            _ => {}
        }
    }
    let pairings: Vec<Vec<BigInt>> =
        lambda0.basis().iter().map(|l| simple.iter().map(|&s| dot(l, phi.coroot(s))).collect()).collect();
    let v = match oracle.lookup(&local_type.to_string(), &pairings, &gens) {
        Some(true) => Verdict::True,
        Some(false) => Verdict::False,
        None => Verdict::Undecided,
    };
    Ok(report(Rule::Oracle, v, gens, "local cone table"))
}
