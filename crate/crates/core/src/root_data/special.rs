//! Special roots (`½α∨ ∈ Λ∨`), their type-B summands and the involutions
//! `ε_α : Λ → {±1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cartan_matrix, recognize_finite_type, Family, Result, RootDataError, RootDatum, WeylGroup};
use crate::exact_linalg::{dot, is_direct_summand, Sublattice};

/// Evidence that a special root sits as a short root in a direct summand of
/// type `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBCertificate {
    /// Rank `n` of the summand.
    pub rank: usize,
    /// Indices of the positive short roots `α_1, ..., α_n` of the summand.
    pub short_roots: Vec<usize>,
    /// `½α_i∨` for each short root, in `Λ∨`.
    pub half_coroots: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRoot {
    pub index: usize,
    pub certificate: TypeBCertificate,
}

/// A homomorphism `Λ → {±1}`, `χ ↦ (−1)^{χ·v}` with `v` taken mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModTwoCharacter {
    pub vector: Vec<u8>,
}

impl ModTwoCharacter {
    pub fn eval(&self, chi: &[BigInt]) -> i8 {
        let s: BigInt = chi.iter().zip(&self.vector).map(|(x, &v)| x * BigInt::from(v)).sum();
        if s.is_even() {
            1
        } else {
            -1
        }
    }

    /// `ε ∘ w = ε` for every group element.
    pub fn is_invariant_under(&self, w: &WeylGroup) -> bool {
        let n = self.vector.len();
        w.elements().iter().all(|g| {
            (0..n).all(|k| {
                let image = g.column(k);
                let mut e = vec![BigInt::zero(); n];
                e[k] = BigInt::one();
                self.eval(&image) == self.eval(&e)
            })
        })
    }
}

fn is_special(datum: &RootDatum, i: usize) -> bool {
    datum.coroot(i).iter().all(|x| x.is_even())
}

/// Roots connected to `i` through nonzero pairings.
fn component_of(datum: &RootDatum, i: usize) -> Vec<usize> {
    let mut seen = vec![false; datum.num_roots()];
    seen[i] = true;
    let mut stack = vec![i];
    while let Some(a) = stack.pop() {
        for (b, mark) in seen.iter_mut().enumerate() {
            if !*mark && !dot(datum.root(b), datum.coroot(a)).is_zero() {
                *mark = true;
                stack.push(b);
            }
        }
    }
    (0..datum.num_roots()).filter(|&k| seen[k]).collect()
}

fn certify(datum: &RootDatum, i: usize) -> std::result::Result<TypeBCertificate, String> {
    let comp = component_of(datum, i);
    let simple: Vec<usize> = datum.simple().into_iter().filter(|s| comp.contains(s)).collect();
    let ty = recognize_finite_type(&cartan_matrix(datum, &simple)).map_err(|e| e.to_string())?;
    let [c] = ty.components.as_slice() else {
        return Err(format!("component has type {ty}"));
    };
    let is_b = c.family == Family::B || (c.family == Family::A && c.rank == 1);
    if !is_b {
        return Err(format!("component has type {ty}, not B_n"));
    }
    // short: the coroot of α is at least as long as any other coroot it meets
    for &b in &comp {
        let ab = dot(datum.root(i), datum.coroot(b)).abs();
        let ba = dot(datum.root(b), datum.coroot(i)).abs();
        if ab > ba {
            return Err(format!("root {i} is not short in its component"));
        }
    }
    let orbit = datum.generated_subsystem(&std::iter::once(i).chain(comp.iter().copied()).collect::<Vec<_>>());
    // the W-orbit of α inside the component: roots of the same length
    let mut short: Vec<usize> = orbit
        .into_iter()
        .filter(|&b| datum.is_positive(b) && comp.contains(&b) && same_length(datum, i, b))
        .collect();
    short.sort_unstable();
    if short.len() != c.rank {
        return Err(format!("found {} positive short roots in a rank {} summand", short.len(), c.rank));
    }
    let half: Vec<Vec<BigInt>> = short
        .iter()
        .map(|&b| datum.coroot(b).iter().map(|x| x / 2).collect())
        .collect();
    if short.iter().any(|&b| !is_special(datum, b)) {
        return Err("a short root of the summand is not special".into());
    }
    for (p, &a) in short.iter().enumerate() {
        for (q, h) in half.iter().enumerate() {
            let want = if p == q { BigInt::one() } else { BigInt::zero() };
            if dot(datum.root(a), h) != want {
                return Err("half coroots are not dual to the short roots".into());
            }
        }
    }
    let lattice = Sublattice::new(datum.rank(), short.iter().map(|&b| datum.root(b).to_vec()).collect());
    if !is_direct_summand(&lattice) {
        return Err("short-root lattice is not a direct summand".into());
    }
    Ok(TypeBCertificate { rank: c.rank, short_roots: short, half_coroots: half })
}

/// Two roots of one irreducible component have the same length iff their
/// mutual pairings (when nonzero) agree in absolute value. Across a zero
/// pairing the ratio is read off the coroot norms.
fn same_length(datum: &RootDatum, a: usize, b: usize) -> bool {
    let ab = dot(datum.root(a), datum.coroot(b));
    let ba = dot(datum.root(b), datum.coroot(a));
    if !ab.is_zero() {
        return ab.abs() == ba.abs();
    }
    let na: BigInt = datum.coroot(a).iter().map(|x| x * x).sum::<BigInt>() * dot(datum.root(b), datum.root(b));
    let nb: BigInt = datum.coroot(b).iter().map(|x| x * x).sum::<BigInt>() * dot(datum.root(a), datum.root(a));
    na == nb
}

/// Positive special roots, each with its type-B certificate.
pub fn special_roots(datum: &RootDatum) -> Result<Vec<SpecialRoot>> {
    let mut out = Vec::new();
    let mut pos = datum.positive().to_vec();
    pos.sort_unstable();
    for i in pos {
        if !is_special(datum, i) {
            continue;
        }
        let certificate = certify(datum, i).map_err(|why| RootDataError::CertificateFailure(i, why))?;
        out.push(SpecialRoot { index: i, certificate });
    }
    Ok(out)
}

/// The involution `ε_α` attached to a special root: `−1` exactly on the short
/// roots of its type-B summand, `+1` on all other roots and on `Λ^W`.
pub fn special_involution(datum: &RootDatum, i: usize) -> Result<ModTwoCharacter> {
    if !is_special(datum, i) {
        return Err(RootDataError::NotSpecial(i));
    }
    let cert = certify(datum, i).map_err(|why| RootDataError::CertificateFailure(i, why))?;
    let n = datum.rank();
    let vector = (0..n)
        .map(|k| {
            let s: BigInt = cert.half_coroots.iter().map(|h| h[k].clone()).sum();
            if s.is_even() {
                0
            } else {
                1
            }
        })
        .collect();
    Ok(ModTwoCharacter { vector })
}
