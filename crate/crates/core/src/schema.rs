//! JSON input formats. Rationals are `"p/q"` strings or JSON integers;
//! integer vectors are JSON arrays whose entries are integers or decimal
//! strings (for values beyond 64 bits).

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::classify::{LocalOracleTable, OracleRow};
use crate::exact_linalg::rational::{format_rational, parse_rational, Rat, RatVec};
use crate::exact_linalg::Sublattice;
use crate::local_glue::{LocalRoot, LocalSystemAssignment};
use crate::polytope::RationalPolytope;
use crate::root_data::{catalog, RootDatum};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON at `{field}`: {message}")]
    Json { field: String, message: String },
    #[error("invalid `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("missing `{0}`")]
    Missing(String),
}

pub type Result<T> = std::result::Result<T, SchemaError>;

fn field_err(field: impl Into<String>, message: impl fmt::Display) -> SchemaError {
    SchemaError::Field { field: field.into(), message: message.to_string() }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrString {
    Int(i64),
    Str(String),
}

/// An exact rational in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match NumOrString::deserialize(d)? {
            NumOrString::Int(i) => Ok(Q(Rat::from_integer(i.into()))),
            NumOrString::Str(s) => parse_rational(&s)
                .map(Q)
                .ok_or_else(|| serde::de::Error::custom(format!("`{s}` is not a rational number p/q"))),
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

/// An exact integer in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z(pub BigInt);

impl<'de> Deserialize<'de> for Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match NumOrString::deserialize(d)? {
            NumOrString::Int(i) => Ok(Z(i.into())),
            NumOrString::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Z)
                .map_err(|_| serde::de::Error::custom(format!("`{s}` is not an integer"))),
        }
    }
}

impl Serialize for Z {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(i) => s.serialize_i64(i),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn rats(v: &[Q]) -> RatVec {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn ints(v: &[Z]) -> Vec<BigInt> {
    v.iter().map(|z| z.0.clone()).collect()
}

pub fn to_qs(v: &[Rat]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn to_zs(v: &[BigInt]) -> Vec<Z> {
    v.iter().cloned().map(Z).collect()
}

/// Either `{"builtin": name}` or explicit roots and coroots; without
/// `positive` the chamber of a fixed generic vector is used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub roots: Vec<Vec<Z>>,
    #[serde(default)]
    pub coroots: Vec<Vec<Z>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<Vec<usize>>,
}

impl RootDatumSpec {
    pub fn build(&self, field: &str) -> Result<RootDatum> {
        if let Some(name) = &self.builtin {
            return catalog::by_name(name).ok_or_else(|| {
                let known: Vec<&str> = catalog::all().iter().map(|(n, _)| *n).collect();
                field_err(format!("{field}.builtin"), format!("unknown datum `{name}`; known: {}", known.join(", ")))
            });
        }
        let rank = self.rank.ok_or_else(|| SchemaError::Missing(format!("{field}.rank")))?;
        let roots: Vec<Vec<BigInt>> = self.roots.iter().map(|r| ints(r)).collect();
        let coroots: Vec<Vec<BigInt>> = self.coroots.iter().map(|r| ints(r)).collect();
        let datum = match &self.positive {
            Some(pos) => RootDatum::new(rank, roots, coroots, pos.clone()),
            None => RootDatum::with_chamber(rank, roots, coroots, None),
        };
        datum.map_err(|e| field_err(field, e))
    }

    pub fn from_datum(d: &RootDatum) -> Self {
        RootDatumSpec {
            builtin: None,
            rank: Some(d.rank()),
            roots: d.roots().iter().map(|r| to_zs(r)).collect(),
            coroots: d.coroots().iter().map(|r| to_zs(r)).collect(),
            positive: Some(d.positive().to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalitySpec {
    pub normal: Vec<Q>,
    pub offset: Q,
}

/// `normal · x ≥ offset` rows, or a vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<InequalitySpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<Q>>>,
}

impl PolytopeSpec {
    pub fn build(&self, field: &str) -> Result<RationalPolytope> {
        match (&self.inequalities, &self.vertices) {
            (Some(rows), None) => {
                for (i, r) in rows.iter().enumerate() {
                    if r.normal.len() != self.dim {
                        return Err(field_err(
                            format!("{field}.inequalities[{i}].normal"),
                            format!("expected {} entries, found {}", self.dim, r.normal.len()),
                        ));
                    }
                }
                let rows = rows.iter().map(|r| (rats(&r.normal), r.offset.0.clone())).collect();
                RationalPolytope::new(self.dim, rows).map_err(|e| field_err(field, e))
            }
            (None, Some(vs)) => {
                for (i, v) in vs.iter().enumerate() {
                    if v.len() != self.dim {
                        return Err(field_err(
                            format!("{field}.vertices[{i}]"),
                            format!("expected {} entries, found {}", self.dim, v.len()),
                        ));
                    }
                }
                let vs: Vec<RatVec> = vs.iter().map(|v| rats(v)).collect();
                RationalPolytope::from_vertices(&vs).map_err(|e| field_err(field, e))
            }
            _ => Err(field_err(field, "give exactly one of `inequalities` and `vertices`")),
        }
    }

    pub fn from_polytope(p: &RationalPolytope) -> Self {
        let rows = p
            .inequalities()
            .iter()
            .map(|h| InequalitySpec { normal: to_qs(&h.normal_rat()), offset: Q(h.offset.clone()) })
            .collect();
        PolytopeSpec { dim: p.dim(), inequalities: Some(rows), vertices: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<Z>>,
}

impl LatticeSpec {
    pub fn build(&self, field: &str) -> Result<Sublattice> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.ambient_rank {
                return Err(field_err(
                    format!("{field}.generators[{i}]"),
                    format!("expected {} entries, found {}", self.ambient_rank, g.len()),
                ));
            }
        }
        Ok(Sublattice::new(self.ambient_rank, self.generators.iter().map(|g| ints(g)).collect()))
    }

    pub fn from_lattice(l: &Sublattice) -> Self {
        LatticeSpec { ambient_rank: l.ambient_rank, generators: l.basis().iter().map(|b| to_zs(b)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalRootSpec {
    pub root: Vec<Z>,
    pub coroot: Vec<Z>,
}

/// A face named by a point of its relative interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceAssignmentSpec {
    pub point: Vec<Q>,
    pub simple: Vec<LocalRootSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentSpec {
    pub faces: Vec<FaceAssignmentSpec>,
}

impl AssignmentSpec {
    pub fn build(&self, field: &str, p: &RationalPolytope) -> Result<LocalSystemAssignment> {
        let mut l = LocalSystemAssignment::new();
        for (i, f) in self.faces.iter().enumerate() {
            let point = rats(&f.point);
            if point.len() != p.dim() || !p.contains(&point) {
                return Err(field_err(format!("{field}.faces[{i}].point"), "not a point of the polytope"));
            }
            let tight = p.tight_at(&point);
            if l.faces.contains_key(&tight) {
                return Err(field_err(format!("{field}.faces[{i}].point"), "face listed twice"));
            }
            let roots = f.simple.iter().map(|r| LocalRoot::new(ints(&r.root), ints(&r.coroot))).collect();
            l.insert(tight, roots);
        }
        Ok(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub pieces: Vec<PolytopeSpec>,
}

impl CoverSpec {
    pub fn build(&self, field: &str) -> Result<Vec<RationalPolytope>> {
        self.pieces.iter().enumerate().map(|(i, p)| p.build(&format!("{field}.pieces[{i}]"))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRowSpec {
    pub dynkin: String,
    pub pairings: Vec<Vec<Z>>,
    pub cones: Vec<Vec<Vec<Z>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub rows: Vec<OracleRowSpec>,
}

impl OracleSpec {
    pub fn build(&self) -> LocalOracleTable {
        LocalOracleTable {
            rows: self
                .rows
                .iter()
                .map(|r| OracleRow {
                    dynkin: r.dynkin.clone(),
                    pairings: r.pairings.iter().map(|p| ints(p)).collect(),
                    cones: r.cones.iter().map(|c| c.iter().map(|g| ints(g)).collect()).collect(),
                })
                .collect(),
        }
    }
}

/// One input document; each command reads the keys it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<RootDatumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
    /// Points at which to evaluate, one per face of interest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Q>>>,
}

impl Bundle {
    pub fn datum(&self) -> Result<RootDatum> {
        self.datum.as_ref().ok_or_else(|| SchemaError::Missing("datum".into()))?.build("datum")
    }

    pub fn polytope(&self) -> Result<RationalPolytope> {
        self.polytope.as_ref().ok_or_else(|| SchemaError::Missing("polytope".into()))?.build("polytope")
    }

    /// The declared lattice, or `Z^n` when absent.
    pub fn lattice_or_full(&self, n: usize) -> Result<Sublattice> {
        match &self.lattice {
            None => Ok(Sublattice::full(n)),
            Some(l) => {
                let lat = l.build("lattice")?;
                if lat.ambient_rank != n {
                    return Err(field_err("lattice.ambient_rank", format!("expected {n}, found {}", lat.ambient_rank)));
                }
                Ok(lat)
            }
        }
    }

    pub fn lattice(&self) -> Result<Sublattice> {
        self.lattice.as_ref().ok_or_else(|| SchemaError::Missing("lattice".into()))?.build("lattice")
    }

    pub fn cover(&self) -> Result<Vec<RationalPolytope>> {
        self.cover.as_ref().ok_or_else(|| SchemaError::Missing("cover".into()))?.build("cover")
    }

    pub fn points(&self) -> Option<Vec<RatVec>> {
        self.points.as_ref().map(|ps| ps.iter().map(|p| rats(p)).collect())
    }
}

/// Parses a JSON document, reporting the path of the first offending field.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        SchemaError::Json { field: if path == "." { "(document)".into() } else { path }, message: e.inner().to_string() }
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SchemaError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&text)
}
