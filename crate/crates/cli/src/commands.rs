use std::path::Path;

use multfree::cech::{
    h0_matches_global, reduce_to_phi0, sections_kplus, wall_pairing_surjectivity, CechComplex, CechError,
    ConvexCover, SheafMode,
};
use multfree::classify::{
    classify_su2, delzant_check, mf_check, ClassifyError, FaceSelection, LocalOracleTable, MomentumData, Rule,
    Su2Polytope, Verdict,
};
use multfree::exact_linalg::rational::{parse_rational, Rat, RatVec};
use multfree::exact_linalg::Sublattice;
use multfree::local_glue::{
    check_coherence, construct_phi_m, glue_weyl, induced_assignment, stabilizer_is_generated_locally,
    CoherenceViolation, GlueError, GluedSystem, Halving, LocalSystemAssignment, PhiMWarning,
};
use multfree::polytope::{cut_corner, face_lattice, PolytopeError, RationalPolytope};
use multfree::rank_one::{
    fiber_decompose, real_form_psi, symplectic_identity_check, trivialize, FiberDescriptor, QuadraticNumber,
    RankOneElement,
};
use multfree::root_data::{fiber_structure, RootDatum};
use multfree::schema::{self, Bundle, OracleSpec, PolytopeSpec, SchemaError};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{q, qs, show_ints, show_list, show_point, z, zs, zss, Outcome, Report};

/// Failures that map to exit code 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("invalid argument `{arg}`: {message}")]
    Argument { arg: String, message: String },
    #[error("{0}")]
    Rejected(String),
}

pub type Result<T> = std::result::Result<T, InputError>;

fn rejected(e: impl std::fmt::Display) -> InputError {
    InputError::Rejected(e.to_string())
}

pub fn parse_rat_arg(arg: &str, text: &str) -> Result<Rat> {
    parse_rational(text).ok_or_else(|| InputError::Argument {
        arg: arg.into(),
        message: format!("`{text}` is not a rational number p/q"),
    })
}

pub fn parse_point_arg(arg: &str, text: &str) -> Result<RatVec> {
    text.split(',').map(|t| parse_rat_arg(arg, t)).collect()
}

fn load(path: &Path) -> Result<Bundle> {
    Ok(schema::read(path)?)
}

fn describe(report: &mut Report, bundle: &Bundle) {
    if let Some(d) = &bundle.description {
        report.line(d.clone());
        report.record("input", json!({ "description": d }));
    }
}

pub fn delzant(path: &Path) -> Result<Report> {
    let bundle = load(path)?;
    let p = bundle.polytope()?;
    let lattice = bundle.lattice_or_full(p.dim())?;
    let verdict = delzant_check(&p, &lattice).map_err(rejected)?;
    let mut r = Report::new("delzant-check");
    describe(&mut r, &bundle);
    for c in &verdict.vertices {
        r.record(
            "vertex",
            json!({
                "vertex": qs(&c.vertex),
                "edges": zss(&c.edges),
                "determinant": c.determinant.as_ref().map(z),
                "passes": c.passes,
            }),
        );
        let det = c.determinant.as_ref().map_or("not simple".to_string(), |d| format!("det {d}"));
        let edges: Vec<String> = c.edges.iter().map(|e| show_ints(e)).collect();
        r.line(format!(
            "vertex {}: edges {} {} {}",
            show_point(&c.vertex),
            edges.join(" "),
            det,
            if c.passes { "ok" } else { "FAILS" }
        ));
    }
    r.line(format!("Delzant: {}", if verdict.delzant { "yes" } else { "no" }));
    r.set(if verdict.delzant { Outcome::Positive } else { Outcome::Negative });
    Ok(r)
}

pub fn su2(point: Option<&str>, interval: Option<&[String]>, d: u64) -> Result<Report> {
    let p = match (point, interval) {
        (Some(x), None) => Su2Polytope::Point(parse_rat_arg("--point", x)?),
        (None, Some([x, y])) => Su2Polytope::Interval(parse_rat_arg("--interval", x)?, parse_rat_arg("--interval", y)?),
        _ => {
            return Err(InputError::Argument {
                arg: "--point/--interval".into(),
                message: "give either --point X or --interval X Y".into(),
            })
        }
    };
    let mut r = Report::new("su2-classify");
    let input = match &p {
        Su2Polytope::Point(x) => json!({ "point": q(x), "d": d }),
        Su2Polytope::Interval(x, y) => json!({ "interval": [q(x), q(y)], "d": d }),
    };
    let classified = match classify_su2(&p, d) {
        Err(ClassifyError::InvalidPair(msg)) => Err(msg),
        Err(e) => return Err(rejected(e)),
        Ok(c) => Ok(c),
    };
    let data = MomentumData::su2(&p, d).map_err(rejected)?;
    let sl2 = multfree::root_data::catalog::sl2();
    let mf = mf_check(&data, &sl2, &LocalOracleTable::default(), &FaceSelection::Vertices).map_err(rejected)?;
    match classified {
        Ok(c) => {
            let case = format!("{:?}", c.case);
            r.record(
                "classification",
                json!({ "input": input, "case": case, "manifold": c.manifold, "mf_check": mf.verdict.to_string() }),
            );
            r.line(format!("{case}: {}", c.manifold));
            r.line(format!("multiplicity free check on the same data: {}", mf.verdict));
        }
        Err(msg) => {
            r.record("rejection", json!({ "input": input, "reason": msg, "mf_check": mf.verdict.to_string() }));
            r.line(format!("no manifold: {msg}"));
            r.set(Outcome::Negative);
        }
    }
    Ok(r)
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::True => Outcome::Positive,
        Verdict::False => Outcome::Negative,
        Verdict::Undecided => Outcome::Undecided,
    }
}

pub fn mf(path: &Path, all_faces: bool, oracle_path: Option<&Path>) -> Result<Report> {
    let bundle = load(path)?;
    let phi = bundle.datum()?;
    let p = bundle.polytope()?;
    let lambda0 = bundle.lattice_or_full(p.dim())?;
    let mut oracle = bundle.oracle.clone().unwrap_or_default().build();
    if let Some(op) = oracle_path {
        let extra: OracleSpec = schema::read(op)?;
        oracle.rows.extend(extra.build().rows);
    }
    let selection = match bundle.points() {
        Some(ps) => FaceSelection::Points(ps),
        None if all_faces => FaceSelection::All,
        None => FaceSelection::Vertices,
    };
    let report = mf_check(&MomentumData { q: p, lambda0 }, &phi, &oracle, &selection).map_err(rejected)?;
    let mut r = Report::new("mf-check");
    describe(&mut r, &bundle);
    for f in &report.faces {
        let rule = match f.rule {
            Rule::Interior => "interior",
            Rule::Basis => "basis",
            Rule::RankOne => "rank-one",
            Rule::Oracle => "oracle",
        };
        r.record(
            "face",
            json!({
                "point": qs(&f.point),
                "local_type": f.local_type.to_string(),
                "cone": zss(&f.cone),
                "rule": rule,
                "verdict": f.verdict.to_string(),
                "note": f.note,
            }),
        );
        r.line(format!(
            "{} type {} cone {} [{rule}] {} ({})",
            show_point(&f.point),
            f.local_type,
            show_list(&f.cone),
            f.verdict,
            f.note
        ));
    }
    r.line(format!("multiplicity free: {}", report.verdict));
    r.set(verdict_outcome(report.verdict));
    Ok(r)
}

/// Errors from gluing that describe the data rather than malformed input.
fn glue_negative(e: &GlueError) -> bool {
    !matches!(
        e,
        GlueError::Polytope(_) | GlueError::RootData(_) | GlueError::UnknownFace(_) | GlueError::LatticeNotFullRank(_)
    )
}

fn assignment(bundle: &Bundle, p: &RationalPolytope) -> Result<LocalSystemAssignment> {
    match &bundle.assignment {
        Some(a) => Ok(a.build("assignment", p)?),
        None => {
            let phi = bundle.datum().map_err(|_| SchemaError::Missing("assignment or datum".into()))?;
            if phi.rank() != p.dim() {
                return Err(rejected("datum rank and polytope dimension differ"));
            }
            induced_assignment(&phi, p).map_err(rejected)
        }
    }
}

fn violation_record(v: &CoherenceViolation) -> (Value, String) {
    let text = format!("{v:?}");
    (json!({ "violation": text }), text)
}

fn glue_or_report(r: &mut Report, l: &LocalSystemAssignment, p: &RationalPolytope) -> Result<Option<GluedSystem>> {
    let coherence = check_coherence(l, p).map_err(rejected)?;
    for v in &coherence.violations {
        let (rec, text) = violation_record(v);
        r.record("coherence_violation", rec);
        r.line(format!("coherence violation: {text}"));
    }
    if !coherence.is_coherent() {
        r.set(Outcome::Negative);
        return Ok(None);
    }
    match glue_weyl(l, p) {
        Ok(g) => Ok(Some(g)),
        Err(e) if glue_negative(&e) => {
            r.record("glue_failure", json!({ "reason": e.to_string() }));
            r.line(format!("gluing fails: {e}"));
            r.set(Outcome::Negative);
            Ok(None)
        }
        Err(e) => Err(rejected(e)),
    }
}

pub fn glue(path: &Path) -> Result<Report> {
    let bundle = load(path)?;
    let p = bundle.polytope()?;
    let l = assignment(&bundle, &p)?;
    let mut r = Report::new("glue-weyl");
    describe(&mut r, &bundle);
    let Some(g) = glue_or_report(&mut r, &l, &p)? else { return Ok(r) };
    let simple: Vec<Value> =
        g.simple.iter().map(|s| json!({ "root": zs(&s.root), "coroot": zs(&s.coroot) })).collect();
    r.record(
        "glued",
        json!({
            "simple": simple,
            "dynkin": g.dynkin.to_string(),
            "weyl_order": g.weyl.order(),
            "num_roots": g.roots.len(),
        }),
    );
    r.line(format!("glued system of type {} with {} roots, |W| = {}", g.dynkin, g.roots.len(), g.weyl.order()));
    for s in &g.simple {
        r.line(format!("  simple root {} coroot {}", show_ints(&s.root), show_ints(&s.coroot)));
    }
    for f in face_lattice(&p).map_err(rejected)? {
        let ok = stabilizer_is_generated_locally(&g, &f.sample).map_err(rejected)?;
        r.record("face", json!({ "sample": qs(&f.sample), "stabilizer_generated_locally": ok }));
        if !ok {
            r.line(format!("stabilizer at {} is not generated by local reflections", show_point(&f.sample)));
            r.set(Outcome::Negative);
        }
    }
    Ok(r)
}

pub fn phi_m(path: &Path) -> Result<Report> {
    let bundle = load(path)?;
    let p = bundle.polytope()?;
    let l = assignment(&bundle, &p)?;
    let lattice = bundle.lattice_or_full(p.dim())?;
    let mut r = Report::new("phi-m");
    describe(&mut r, &bundle);
    let Some(g) = glue_or_report(&mut r, &l, &p)? else { return Ok(r) };
    let phi = match construct_phi_m(&lattice, &g.weyl, &l, &p) {
        Ok(phi) => phi,
        Err(e) if glue_negative(&e) => {
            r.record("phi_m_failure", json!({ "reason": e.to_string() }));
            r.line(format!("no root datum: {e}"));
            r.set(Outcome::Negative);
            return Ok(r);
        }
        Err(e) => return Err(rejected(e)),
    };
    let basis: Vec<Vec<_>> = (0..phi.basis.cols()).map(|c| phi.basis.column(c)).collect();
    let d = &phi.datum;
    r.record(
        "phi_m",
        json!({
            "lattice_basis": zss(&basis),
            "roots": zss(d.roots()),
            "coroots": zss(d.coroots()),
            "positive": d.positive(),
        }),
    );
    r.line(format!("Λ_M basis (ambient coordinates): {}", show_list(&basis)));
    r.line(format!("{} roots in Λ_M coordinates", d.num_roots()));
    for i in d.simple() {
        r.line(format!("  simple root {} coroot {}", show_ints(d.root(i)), show_ints(d.coroot(i))));
    }
    for h in &phi.halving {
        let factor = match h.factor {
            Halving::One => "1",
            Halving::Half => "1/2",
        };
        r.record("halving", json!({ "root": zs(&h.root), "critical": h.critical, "factor": factor }));
        r.line(format!("  root {} critical {} factor {factor}", show_ints(&h.root), h.critical));
    }
    for w in &phi.warnings {
        let PhiMWarning::WallMissesPolytope { root } = w;
        r.record("warning", json!({ "wall_misses_polytope": zs(root) }));
        r.line(format!("warning: wall of critical root {} misses the polytope; factor 1 used", show_ints(root)));
    }
    Ok(r)
}

pub fn fibers(path: &Path) -> Result<Report> {
    let bundle = load(path)?;
    let phi = bundle.datum()?;
    let points: Vec<RatVec> = match (bundle.points(), &bundle.polytope) {
        (Some(ps), _) => ps,
        (None, Some(_)) => {
            let p = bundle.polytope()?;
            face_lattice(&p).map_err(rejected)?.iter().map(|f| f.sample.clone()).collect()
        }
        (None, None) => vec![vec![Rat::zero(); phi.rank()]],
    };
    let mut r = Report::new("fibers");
    describe(&mut r, &bundle);
    for a in &points {
        if a.len() != phi.rank() {
            return Err(rejected(format!("point {} does not have {} coordinates", show_point(a), phi.rank())));
        }
        let f = fiber_structure(&phi, a);
        let local: Vec<Vec<_>> = f.local_roots.iter().map(|&i| phi.root(i).to_vec()).collect();
        r.record(
            "fiber",
            json!({
                "point": qs(a),
                "torus_rank": f.semisimple.torus_rank,
                "torsion": zs(&f.semisimple.torsion_factors),
                "unipotent_rank": f.unipotent_rank,
                "local_roots": zss(&local),
            }),
        );
        r.line(format!(
            "{}: semisimple part torus rank {} torsion {} unipotent rank {} ({} local roots)",
            show_point(a),
            f.semisimple.torus_rank,
            show_ints(&f.semisimple.torsion_factors),
            f.unipotent_rank,
            local.len()
        ));
    }
    Ok(r)
}

fn cech_error(e: CechError) -> InputError {
    rejected(e)
}

struct Reduced {
    phi0: RootDatum,
    p: RationalPolytope,
    pieces: Vec<RationalPolytope>,
    basis: Vec<Vec<num_bigint::BigInt>>,
}

fn reduce(bundle: &Bundle) -> Result<Reduced> {
    let phi = bundle.datum()?;
    let p = bundle.polytope()?;
    let pieces = bundle.cover()?;
    if phi.rank() != p.dim() {
        return Err(rejected("datum rank and polytope dimension differ"));
    }
    let red = reduce_to_phi0(&phi).map_err(cech_error)?;
    let p0 = red.pull_back(&p).map_err(cech_error)?;
    let pieces0 = red.pull_back_cover(&pieces).map_err(cech_error)?;
    let basis = (0..red.basis.cols()).map(|c| red.basis.column(c)).collect();
    Ok(Reduced { phi0: red.datum, p: p0, pieces: pieces0, basis })
}

pub fn sections(path: &Path) -> Result<Report> {
    let bundle = load(path)?;
    let red = reduce(&bundle)?;
    let mut r = Report::new("sections");
    describe(&mut r, &bundle);
    r.record("reduction", json!({ "lambda0_basis": zss(&red.basis) }));
    r.line(format!("coordinates: Λ₀ basis {}", show_list(&red.basis)));
    let emit = |r: &mut Report, label: String, u: &RationalPolytope| -> Result<()> {
        let s = sections_kplus(&red.phi0, &red.p, u).map_err(cech_error)?;
        let walls: Vec<Vec<_>> = s.walls.iter().map(|&i| red.phi0.root(i).to_vec()).collect();
        r.record(
            "sections",
            json!({
                "set": label,
                "lattice_rank": s.lattice.rank(),
                "lattice_basis": zss(&s.lattice.basis()),
                "walls": zss(&walls),
                "rational_rank": s.rational_rank(),
            }),
        );
        r.line(format!(
            "K+({label}): lattice rank {} basis {} (+ Q), walls {}",
            s.lattice.rank(),
            show_list(&s.lattice.basis()),
            show_list(&walls)
        ));
        Ok(())
    };
    emit(&mut r, "P".into(), &red.p)?;
    for (i, u) in red.pieces.iter().enumerate() {
        emit(&mut r, format!("U{i}"), u)?;
    }
    Ok(r)
}

pub fn cech(path: &Path, strict_open: Option<&str>, constant: bool) -> Result<Report> {
    let bundle = load(path)?;
    let red = reduce(&bundle)?;
    let cover = match strict_open {
        Some(eps) => {
            let eps = parse_rat_arg("--strict-open", eps)?;
            ConvexCover::strict_open(red.pieces.clone(), &red.p, &eps)
        }
        None => ConvexCover::new(red.pieces.clone(), &red.p),
    };
    let cover = match cover {
        Ok(c) => c,
        Err(e @ CechError::NotACover(_)) => {
            let mut r = Report::new("cech-vanish");
            describe(&mut r, &bundle);
            r.record("cover_failure", json!({ "reason": e.to_string() }));
            r.line(format!("not a cover: {e}"));
            r.set(Outcome::Negative);
            return Ok(r);
        }
        Err(e) => return Err(cech_error(e)),
    };
    let mode = if constant { SheafMode::Constant } else { SheafMode::KPlus };
    let complex = CechComplex::build(&red.phi0, &cover, mode).map_err(cech_error)?;
    let mut r = Report::new("cech-vanish");
    describe(&mut r, &bundle);
    r.record(
        "cover",
        json!({
            "pieces": cover.pieces.len(),
            "nerve": cover.nerve,
            "sheaf": if constant { "constant" } else { "K+" },
        }),
    );
    r.line(format!("cover with {} pieces, nerve of {} simplices", cover.pieces.len(), cover.nerve.len()));
    for h in complex.cohomology() {
        r.record(
            "cohomology",
            json!({
                "degree": h.degree,
                "free_rank": h.free_rank,
                "torsion": zs(&h.torsion),
                "rational_betti": h.rational_betti,
            }),
        );
        r.line(format!(
            "H^{}: Z^{} torsion {} Q^{}",
            h.degree,
            h.free_rank,
            show_ints(&h.torsion),
            h.rational_betti
        ));
        if h.degree >= 1 && !h.is_zero() {
            r.set(Outcome::Negative);
        }
    }
    if !constant {
        let h0 = h0_matches_global(&red.phi0, &red.p, &complex).map_err(cech_error)?;
        let cert = wall_pairing_surjectivity(&red.phi0, &red.p);
        let walls: Vec<Vec<_>> = cert.walls.iter().map(|&i| red.phi0.root(i).to_vec()).collect();
        r.record(
            "checks",
            json!({
                "h0_equals_global_sections": h0,
                "wall_pairing_walls": zss(&walls),
                "wall_pairing_elementary_divisors": zs(&cert.elementary_divisors),
                "wall_pairing_surjective": cert.is_surjective(),
            }),
        );
        r.line(format!("H^0 equals K+(P): {h0}"));
        r.line(format!(
            "wall pairing surjective: {} (elementary divisors {})",
            cert.is_surjective(),
            show_ints(&cert.elementary_divisors)
        ));
    }
    Ok(r)
}

pub fn rank1(s_values: &str, parameter: &str) -> Result<Report> {
    let ss: Vec<Rat> = s_values.split(',').map(|t| parse_rat_arg("--s", t)).collect::<Result<_>>()?;
    let m = parse_rat_arg("--parameter", parameter)?;
    let mut r = Report::new("rank1-demo");
    for s in &ss {
        let fiber = fiber_decompose(s);
        let desc = match &fiber {
            FiberDescriptor::Torus { split, compact_real_form } => {
                format!("torus (split over Q: {split}, compact real form: {compact_real_form})")
            }
            FiberDescriptor::Degenerate { components, unipotent_rank } => {
                format!("{components} components times an additive group of rank {unipotent_rank}")
            }
        };
        let mut rec = json!({ "s": q(s), "fiber": desc });
        let mut line = format!("s = {}: {desc}", multfree::exact_linalg::rational::format_rational(s));
        if let Some(u) = RankOneElement::from_parameter(s, &m) {
            let uu = u.multiply(&u).expect("same fiber");
            let closed = uu.multiply(&u.inverse()).expect("same fiber") == u;
            rec["sample"] = json!([q(u.a()), q(u.b())]);
            rec["group_law_ok"] = closed.into();
            line += &format!("; sample u = {u}, u·u·u⁻¹ = u: {closed}");
            if !closed {
                r.set(Outcome::Negative);
            }
            let t = QuadraticNumber::sqrt(s);
            if !s.is_negative() {
                let x = trivialize(&u, &t).expect("t² = s by construction");
                let x2 = trivialize(&uu, &t).expect("t² = s by construction");
                let hom = &x * &x == x2;
                rec["eigenvalue"] = x.to_string().into();
                rec["trivialization_multiplicative"] = hom.into();
                line += &format!("; x = a + t b = {x}, multiplicative: {hom}");
                if !hom {
                    r.set(Outcome::Negative);
                }
            }
            if !s.is_positive() {
                let psi = real_form_psi(&u).expect("s ≤ 0");
                let ok = psi.is_rotation() && psi.mul(&psi) == real_form_psi(&uu).expect("s ≤ 0");
                rec["real_form_rotation"] = ok.into();
                line += &format!("; Ψ(u) is a rotation and Ψ(u²) = Ψ(u)²: {ok}");
                if !ok {
                    r.set(Outcome::Negative);
                }
            }
        }
        r.record("fiber", rec);
        r.line(line);
    }
    match symplectic_identity_check() {
        Ok(()) => {
            r.record("symplectic_identity", json!({ "holds": true }));
            r.line("ω̃ ∧ df = (f + 1) da ∧ db ∧ ds and the cancellation identities hold");
        }
        Err(m) => {
            r.record("symplectic_identity", json!({ "holds": false, "identity": m.identity, "mask": m.mask }));
            r.line(format!("identity `{}` fails in component {:03b}", m.identity, m.mask));
            r.set(Outcome::Negative);
        }
    }
    Ok(r)
}

pub fn corner(path: &Path, vertex: &str, eps: &str) -> Result<Report> {
    let bundle = load(path)?;
    let p = bundle.polytope()?;
    let lattice: Sublattice = bundle.lattice_or_full(p.dim())?;
    let v = parse_point_arg("--vertex", vertex)?;
    let eps = parse_rat_arg("--eps", eps)?;
    let cut = match cut_corner(&p, &v, &eps) {
        Ok(c) => c,
        Err(e @ (PolytopeError::NotVertex | PolytopeError::NotSimplicial)) => {
            return Err(InputError::Argument { arg: "--vertex".into(), message: e.to_string() })
        }
        Err(e @ (PolytopeError::NonPositiveEpsilon | PolytopeError::EpsilonTooLarge(_))) => {
            return Err(InputError::Argument { arg: "--eps".into(), message: e.to_string() })
        }
        Err(e) => return Err(rejected(e)),
    };
    let before = delzant_check(&p, &lattice).map_err(rejected)?.delzant;
    let after = delzant_check(&cut, &lattice).map_err(rejected)?.delzant;
    let vertices = cut.vertices().map_err(rejected)?;
    let spec = PolytopeSpec::from_polytope(&cut);
    let mut r = Report::new("cut-corner");
    describe(&mut r, &bundle);
    r.record(
        "cut",
        json!({
            "polytope": serde_json::to_value(&spec).expect("serializable"),
            "vertices": vertices.iter().map(|v| qs(v)).collect::<Vec<_>>(),
            "delzant_before": before,
            "delzant_after": after,
        }),
    );
    r.line(format!("cut polytope has {} vertices:", vertices.len()));
    for v in vertices {
        r.line(format!("  {}", show_point(v)));
    }
    r.line(format!("Delzant before: {before}, after: {after}"));
    if before && !after {
        r.set(Outcome::Negative);
    }
    Ok(r)
}
