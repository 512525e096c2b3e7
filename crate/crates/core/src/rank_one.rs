//! The rank-one group scheme `{(a, b, s) : a² − s b² = 1}` with group law
//! from the matrix `((a, s b), (b, a))`, its fibers, the eigenvalue
//! trivialization, the compact real form and the symplectic identity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_linalg::rational::Rat;
use crate::root_data::{fiber_structure, DiagonalizableGroupDescriptor, RootDatum};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RankOneError {
    #[error("{0} violates a² − s b² = 1")]
    OffScheme(String),
    #[error("elements lie over different base points {} and {}", .0.0, .0.1)]
    BaseMismatch(Box<(Rat, Rat)>),
    #[error("t² = {found} differs from s = {expected}")]
    BadRoot { expected: Rat, found: String },
    #[error("the real form needs s ≤ 0, got {0}")]
    PositiveS(Rat),
}

pub type Result<T> = std::result::Result<T, RankOneError>;

/// A point of the scheme; `a² − s b² = 1` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankOneElement {
    a: Rat,
    b: Rat,
    s: Rat,
}

impl RankOneElement {
    pub fn new(a: Rat, b: Rat, s: Rat) -> Result<Self> {
        if &a * &a - &s * &b * &b != Rat::one() {
            return Err(RankOneError::OffScheme(format!("({a}, {b}, {s})")));
        }
        Ok(RankOneElement { a, b, s })
    }

    pub fn identity(s: Rat) -> Self {
        RankOneElement { a: Rat::one(), b: Rat::zero(), s }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.s != other.s {
            return Err(RankOneError::BaseMismatch(Box::new((self.s.clone(), other.s.clone()))));
        }
        let a = &self.a * &other.a + &self.s * &self.b * &other.b;
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(RankOneElement { a, b, s: self.s.clone() })
    }

    pub fn inverse(&self) -> Self {
        RankOneElement { a: self.a.clone(), b: -&self.b, s: self.s.clone() }
    }

    /// Rational point on the fiber over `s` from a parameter `m`, via the
    /// line through the identity with slope `m`: `b = 2m / (1 − s m²)`.
    /// `None` exactly when `s m² = 1`.
    pub fn from_parameter(s: &Rat, m: &Rat) -> Option<Self> {
        let den = Rat::one() - s * m * m;
        if den.is_zero() {
            return None;
        }
        let b = Rat::from_integer(2.into()) * m / &den;
        let a = Rat::one() + s * m * &b;
        Some(RankOneElement { a, b, s: s.clone() })
    }
}

impl fmt::Display for RankOneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.s)
    }
}

/// Structure of the fiber over `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberDescriptor {
    /// `s ≠ 0`: a one-dimensional torus, split over Q iff `s` is a square,
    /// compact on the real locus iff `s < 0`.
    Torus { split: bool, compact_real_form: bool },
    /// `s = 0`: `{±1} × G_a` with coordinates `a = ±1` and `b`.
    Degenerate { components: u32, unipotent_rank: usize },
}

pub fn fiber_decompose(s: &Rat) -> FiberDescriptor {
    if s.is_zero() {
        FiberDescriptor::Degenerate { components: 2, unipotent_rank: 1 }
    } else {
        FiberDescriptor::Torus { split: rational_sqrt(s).is_some(), compact_real_form: s.is_negative() }
    }
}

impl FiberDescriptor {
    /// The same fiber read off from a root datum at a point of `Λ ⊗ Q`.
    pub fn from_datum(datum: &RootDatum, a: &[Rat]) -> (DiagonalizableGroupDescriptor, usize) {
        let f = fiber_structure(datum, a);
        (f.semisimple, f.unipotent_rank)
    }

    /// Semisimple part and unipotent rank.
    pub fn group_data(&self) -> (DiagonalizableGroupDescriptor, usize) {
        match self {
            FiberDescriptor::Torus { .. } => {
                (DiagonalizableGroupDescriptor { torus_rank: 1, torsion_factors: vec![] }, 0)
            }
            FiberDescriptor::Degenerate { components, unipotent_rank } => (
                DiagonalizableGroupDescriptor { torus_rank: 0, torsion_factors: vec![BigInt::from(*components)] },
                *unipotent_rank,
            ),
        }
    }
}

fn rational_sqrt(s: &Rat) -> Option<Rat> {
    if s.is_negative() {
        return None;
    }
    let (n, d) = (s.numer(), s.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rat::new(rn, rd))
}

/// `p + q √m` with `m` square-free; `q = 0` is a rational number and is
/// compatible with every `m`.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    pub p: Rat,
    pub q: Rat,
    pub m: BigInt,
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && (self.q.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadraticNumber {}

impl QuadraticNumber {
    pub fn rational(p: Rat) -> Self {
        QuadraticNumber { p, q: Rat::zero(), m: BigInt::one() }
    }

    /// The square root of `s ≥ 0`, or of `−s` times `√−1` when `s < 0`,
    /// written over `Q(√m)` with `m` square-free (negative for `s < 0`).
    pub fn sqrt(s: &Rat) -> Self {
        if s.is_zero() {
            return Self::rational(Rat::zero());
        }
        // √(n/d) = √(n d) / d
        let nd = s.numer() * s.denom();
        let (k, m) = square_part(&nd);
        let coeff = Rat::new(k, s.denom().clone());
        if m.is_one() {
            Self::rational(coeff)
        } else {
            QuadraticNumber { p: Rat::zero(), q: coeff, m }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn field(&self, other: &Self) -> BigInt {
        match (self.q.is_zero(), other.q.is_zero()) {
            (true, _) => other.m.clone(),
            (_, true) => self.m.clone(),
            _ => {
                assert_eq!(self.m, other.m, "quadratic numbers from different fields");
                self.m.clone()
            }
        }
    }
}

/// `n = k² m` with `m` square-free and of the sign of `n`.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &p;
        }
        p += 1;
    }
    if n.is_negative() {
        rest = -rest;
    }
    (k, rest)
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber { m: self.field(o), p: &self.p + &o.p, q: &self.q + &o.q }
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber { m: self.field(o), p: &self.p - &o.p, q: &self.q - &o.q }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { m: self.m.clone(), p: -&self.p, q: -&self.q }
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        let m = self.field(o);
        let mr = Rat::from_integer(m.clone());
        QuadraticNumber {
            p: &self.p * &o.p + &self.q * &o.q * mr,
            q: &self.p * &o.q + &self.q * &o.p,
            m,
        }
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}·√{}", self.p, self.q, self.m)
        }
    }
}

/// `x = a + t b`, the eigenvalue of `((a, s b), (b, a))` for the root `t`.
pub fn trivialize(u: &RankOneElement, t: &QuadraticNumber) -> Result<QuadraticNumber> {
    let t2 = t * t;
    if t2 != QuadraticNumber::rational(u.s.clone()) {
        return Err(RankOneError::BadRoot { expected: u.s.clone(), found: t2.to_string() });
    }
    let b = QuadraticNumber::rational(u.b.clone());
    Ok(&QuadraticNumber::rational(u.a.clone()) + &(t * &b))
}

/// A 2×2 matrix over a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMatrix2(pub [[QuadraticNumber; 2]; 2]);

impl QuadMatrix2 {
    pub fn determinant(&self) -> QuadraticNumber {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (x, y) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
        QuadMatrix2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        QuadMatrix2([[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]])
    }

    pub fn is_identity(&self) -> bool {
        let one = QuadraticNumber::rational(Rat::one());
        let zero = QuadraticNumber::rational(Rat::zero());
        self.0[0][0] == one && self.0[1][1] == one && self.0[0][1] == zero && self.0[1][0] == zero
    }

    /// `Mᵀ M = 1` and `det M = 1`.
    pub fn is_rotation(&self) -> bool {
        self.transpose().mul(self).is_identity() && self.determinant() == QuadraticNumber::rational(Rat::one())
    }
}

/// `Ψ(a, b, s) = ((a, −√(−s) b), (√(−s) b, a))` on the real locus `s ≤ 0`.
pub fn real_form_psi(u: &RankOneElement) -> Result<QuadMatrix2> {
    if u.s.is_positive() {
        return Err(RankOneError::PositiveS(u.s.clone()));
    }
    let r = QuadraticNumber::sqrt(&-&u.s);
    let a = QuadraticNumber::rational(u.a.clone());
    let rb = &r * &QuadraticNumber::rational(u.b.clone());
    Ok(QuadMatrix2([[a.clone(), -&rb], [rb, a]]))
}

/// Polynomial in three variables with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<[u32; 3], Rat>);

impl Poly {
    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn monomial(c: Rat, e: [u32; 3]) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        Poly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Poly::default();
        for (e, x) in &self.0 {
            out.add_term(*e, x * c);
        }
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: Rat) {
        let v = self.0.entry(e).or_insert_with(Rat::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * Rat::from_integer(e[i].into()));
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &o.scale(&-Rat::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            for (f, d) in &o.0 {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.0.iter().map(|(e, c)| format!("{c}·x^{e:?}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Differential form on `Q³` with polynomial coefficients; keys are bit
/// masks of `dx₀, dx₁, dx₂` in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly3Form(BTreeMap<u8, Poly>);

impl Poly3Form {
    pub fn function(p: Poly) -> Self {
        Self::term(p, 0)
    }

    /// `p · dx_I` for the mask `I`.
    pub fn term(p: Poly, mask: u8) -> Self {
        assert!(mask < 8, "only three variables");
        let mut m = BTreeMap::new();
        if !p.is_zero() {
            m.insert(mask, p);
        }
        Poly3Form(m)
    }

    pub fn dx(i: usize) -> Self {
        Self::term(Poly::constant(Rat::one()), 1 << i)
    }

    pub fn coefficient(&self, mask: u8) -> Poly {
        self.0.get(&mask).cloned().unwrap_or_default()
    }

    pub fn masks(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.keys().copied()
    }

    fn add_term(&mut self, mask: u8, p: Poly) {
        let cur = self.0.remove(&mask).unwrap_or_default();
        let sum = &cur + &p;
        if !sum.is_zero() {
            self.0.insert(mask, sum);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Poly3Form::default();
        for (m, p) in &self.0 {
            out.add_term(*m, p.scale(c));
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Poly3Form::default();
        for (m1, p1) in &self.0 {
            for (m2, p2) in &o.0 {
                if m1 & m2 != 0 {
                    continue;
                }
                let prod = p1 * p2;
                let p = if wedge_sign(*m1, *m2) { prod.scale(&-Rat::one()) } else { prod };
                out.add_term(m1 | m2, p);
            }
        }
        out
    }

    pub fn d(&self) -> Self {
        let mut out = Poly3Form::default();
        for (m, p) in &self.0 {
            for i in 0..3 {
                let dp = p.derivative(i);
                if dp.is_zero() {
                    continue;
                }
                out = &out + &Poly3Form::dx(i).wedge(&Poly3Form::term(dp, *m));
            }
        }
        out
    }
}

/// Whether moving the factors of `m2` past those of `m1` is an odd permutation.
fn wedge_sign(m1: u8, m2: u8) -> bool {
    let mut inversions = 0;
    for i in 0..3 {
        if m2 & (1 << i) != 0 {
            inversions += (m1 >> (i + 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

impl Add for &Poly3Form {
    type Output = Poly3Form;
    fn add(self, o: &Poly3Form) -> Poly3Form {
        let mut out = self.clone();
        for (m, p) in &o.0 {
            out.add_term(*m, p.clone());
        }
        out
    }
}

impl Sub for &Poly3Form {
    type Output = Poly3Form;
    fn sub(self, o: &Poly3Form) -> Poly3Form {
        self + &o.scale(&-Rat::one())
    }
}

/// First coefficient where two forms differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub identity: &'static str,
    pub mask: u8,
    pub left: Poly,
    pub right: Poly,
}

fn compare(identity: &'static str, l: &Poly3Form, r: &Poly3Form) -> std::result::Result<(), Mismatch> {
    let first = (l - r).masks().next();
    match first {
        None => Ok(()),
        Some(mask) => Err(Mismatch { identity, mask, left: l.coefficient(mask), right: r.coefficient(mask) }),
    }
}

fn half() -> Rat {
    Rat::new(1.into(), 2.into())
}

fn p_var(i: usize) -> Poly3Form {
    Poly3Form::function(Poly::var(i))
}

/// `a² − s b² − 1` in the variables `(a, b, s)`.
pub fn scheme_equation() -> Poly {
    let (a, b, s) = (Poly::var(0), Poly::var(1), Poly::var(2));
    &(&(&a * &a) - &(&(&s * &b) * &b)) - &Poly::constant(Rat::one())
}

/// `c (a db − b da) ∧ ds` in the variables `(a, b, s)`.
pub fn omega_tilde(c: &Rat) -> Poly3Form {
    let (a, b) = (p_var(0), p_var(1));
    let inner = &a.wedge(&Poly3Form::dx(1)) - &b.wedge(&Poly3Form::dx(0));
    inner.wedge(&Poly3Form::dx(2)).scale(c)
}

/// `ω̃ ∧ df = (f + 1) da ∧ db ∧ ds` for `ω̃ = c (a db − b da) ∧ ds`.
pub fn check_nondegeneracy_identity(c: &Rat) -> std::result::Result<(), Mismatch> {
    let f = scheme_equation();
    let df = Poly3Form::function(f.clone()).d();
    let lhs = omega_tilde(c).wedge(&df);
    let rhs = Poly3Form::term(&f + &Poly::constant(Rat::one()), 0b111);
    compare("ω̃ ∧ df = (f + 1) da ∧ db ∧ ds", &lhs, &rhs)
}

/// In the variables `(a, b, t)` with `s = t²`:
/// `dx/x ∧ dt = (a − t b)(da + b dt + t db) ∧ dt` splits as
/// `(a da − s b db) ∧ dt + (a db − b da) ∧ t dt`, the first summand equals
/// `½ d(a² − t² b² − 1) ∧ dt` and so vanishes on the scheme, and the second
/// equals `½ (a db − b da) ∧ d(t²)`.
pub fn check_cancellation() -> std::result::Result<(), Mismatch> {
    let (a, b, t) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let (da, db, dt) = (Poly3Form::dx(0), Poly3Form::dx(1), Poly3Form::dx(2));
    let fa = |p: &Poly| Poly3Form::function(p.clone());
    let s = &t * &t;
    let eigen_inv = &a - &(&t * &b);
    let inner = &(&da + &fa(&b).wedge(&dt)) + &fa(&t).wedge(&db);
    let omega = fa(&eigen_inv).wedge(&inner).wedge(&dt);
    let first = (&fa(&a).wedge(&da) - &fa(&(&s * &b)).wedge(&db)).wedge(&dt);
    let rot = &fa(&a).wedge(&db) - &fa(&b).wedge(&da);
    let second = rot.wedge(&fa(&t).wedge(&dt));
    compare("dx/x ∧ dt splits into two summands", &omega, &(&first + &second))?;
    let f_t = &(&(&a * &a) - &(&s * &(&b * &b))) - &Poly::constant(Rat::one());
    let vanishing = fa(&f_t).d().wedge(&dt).scale(&half());
    compare("first summand is ½ df ∧ dt", &first, &vanishing)?;
    let ds = fa(&s).d();
    compare("second summand is ½ (a db − b da) ∧ ds", &second, &rot.wedge(&ds).scale(&half()))
}

/// Both identities for the form `½ (a db − b da) ∧ ds`.
pub fn symplectic_identity_check() -> std::result::Result<(), Mismatch> {
    check_cancellation()?;
    check_nondegeneracy_identity(&half())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rational::{rat, ratio};

    fn el(a: Rat, b: Rat, s: Rat) -> RankOneElement {
        RankOneElement::new(a, b, s).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let u = el(ratio(5, 4), ratio(3, 8), rat(4));
        assert_eq!(RankOneElement::identity(rat(4)).multiply(&u).unwrap(), u);
        let i = el(rat(0), rat(1), rat(-1));
        assert_eq!(i.multiply(&i).unwrap(), el(rat(-1), rat(0), rat(-1)));
        assert!(matches!(u.multiply(&i), Err(RankOneError::BaseMismatch(..))));
        assert!(matches!(RankOneElement::new(rat(1), rat(1), rat(1)), Err(RankOneError::OffScheme(_))));
        assert_eq!(u.multiply(&u.inverse()).unwrap(), RankOneElement::identity(rat(4)));
    }

    #[test]
    fn zero_fiber_law() {
        let u = el(rat(-1), rat(3), rat(0));
        let v = el(rat(1), ratio(-1, 2), rat(0));
        let w = u.multiply(&v).unwrap();
        assert_eq!((w.a().clone(), w.b().clone()), (rat(-1), rat(3) + ratio(-1, 2) * rat(-1)));
        assert_eq!(fiber_decompose(&rat(0)), FiberDescriptor::Degenerate { components: 2, unipotent_rank: 1 });
        assert_eq!(fiber_decompose(&rat(4)), FiberDescriptor::Torus { split: true, compact_real_form: false });
        assert_eq!(fiber_decompose(&rat(-1)), FiberDescriptor::Torus { split: false, compact_real_form: true });
    }

    #[test]
    fn trivialization() {
        let u = el(ratio(5, 4), ratio(3, 8), rat(4));
        let t = QuadraticNumber::rational(rat(2));
        assert_eq!(trivialize(&u, &t).unwrap(), QuadraticNumber::rational(rat(2)));
        assert_eq!(trivialize(&u.inverse(), &t).unwrap(), QuadraticNumber::rational(ratio(1, 2)));
        assert!(matches!(trivialize(&u, &QuadraticNumber::rational(rat(3))), Err(RankOneError::BadRoot { .. })));
        // s = 2 over Q(√2)
        let v = el(rat(3), rat(2), rat(2));
        let t = QuadraticNumber::sqrt(&rat(2));
        let x = trivialize(&v, &t).unwrap();
        let y = trivialize(&v.multiply(&v).unwrap(), &t).unwrap();
        assert_eq!(&x * &x, y);
    }

    #[test]
    fn square_roots() {
        assert_eq!(QuadraticNumber::sqrt(&ratio(9, 4)), QuadraticNumber::rational(ratio(3, 2)));
        let r = QuadraticNumber::sqrt(&ratio(8, 3));
        assert_eq!((r.q.clone(), r.m.clone()), (ratio(2, 3), BigInt::from(6)));
        assert_eq!(&r * &r, QuadraticNumber::rational(ratio(8, 3)));
    }

    #[test]
    fn real_form() {
        let psi = real_form_psi(&el(rat(0), rat(1), rat(-1))).unwrap();
        assert!(psi.mul(&psi).mul(&psi).mul(&psi).is_identity());
        assert!(!psi.mul(&psi).is_identity());
        let r = real_form_psi(&el(ratio(3, 5), ratio(4, 5), rat(-1))).unwrap();
        assert!(r.is_rotation());
        assert_eq!(r.0[1][0], QuadraticNumber::rational(ratio(4, 5)));
        assert!(real_form_psi(&RankOneElement::identity(rat(-7))).unwrap().is_identity());
        assert!(matches!(real_form_psi(&RankOneElement::identity(rat(1))), Err(RankOneError::PositiveS(_))));
    }

    #[test]
    fn exterior_algebra() {
        let (da, db, ds) = (Poly3Form::dx(0), Poly3Form::dx(1), Poly3Form::dx(2));
        assert_eq!(db.wedge(&da), da.wedge(&db).scale(&rat(-1)));
        assert_eq!(ds.wedge(&da).wedge(&db), da.wedge(&db).wedge(&ds));
        assert!(da.wedge(&da).masks().next().is_none());
        // df = 2a da − 2 s b db − b² ds
        let df = Poly3Form::function(scheme_equation()).d();
        let expected = &(&Poly3Form::term(Poly::monomial(rat(2), [1, 0, 0]), 1)
            + &Poly3Form::term(Poly::monomial(rat(-2), [0, 1, 1]), 2))
            + &Poly3Form::term(Poly::monomial(rat(-1), [0, 2, 0]), 4);
        assert_eq!(df, expected);
        assert!(df.d().masks().next().is_none());
    }

    #[test]
    fn symplectic_identity() {
        assert_eq!(symplectic_identity_check(), Ok(()));
        let err = check_nondegeneracy_identity(&rat(1)).unwrap_err();
        assert_eq!(err.mask, 0b111);
    }
}
