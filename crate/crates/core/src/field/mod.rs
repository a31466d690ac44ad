//! Exact coefficient fields: ℚ, cyclotomic fields ℚ(ζₙ), and a single
//! quadratic layer K(√δ) over either.
//!
//! [`FieldElement`] is a tagged value; binary operations accept operands
//! from the same field, or from ℚ / the base field of a quadratic extension,
//! which embed canonically. Operands from unrelated cyclotomic fields are a
//! [`FieldError::Mismatch`]; use [`FieldElement::coerce_cyclotomic`] to lift
//! explicitly into ℚ(ζ_lcm).

pub mod cyclo;
pub mod interval;
pub(crate) mod qpoly;
pub mod quad;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use cyclo::{totient, CycloElement};
pub use interval::{interval_embed, refine_embedding, ComplexBox, Interval};
pub use quad::{QuadElement, QuadField};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields without a declared common embedding")]
    Mismatch,
    #[error("radicand is zero or a square in the base field")]
    SquareRadicand,
    #[error("complex conjugation leaves the field (non-real radicand)")]
    NoConjugation,
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// Field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// ℚ(ζₙ) with n ≥ 3.
    Cyclotomic(u32),
    Quadratic(Arc<QuadField>),
}

impl Field {
    /// ℚ(ζₙ); conductors 1 and 2 collapse to ℚ.
    pub fn cyclotomic(n: u32) -> Field {
        assert!(n >= 1, "conductor must be positive");
        if n <= 2 {
            Field::Rational
        } else {
            Field::Cyclotomic(n)
        }
    }

    /// K(√δ) where K is the field of `delta` (ℚ or cyclotomic).
    pub fn quadratic(delta: &FieldElement) -> Result<Field, FieldError> {
        let base_elem = match delta {
            FieldElement::Rational(q) => CycloElement::from_rational(1, q.clone()),
            FieldElement::Cyclo(c) => c.clone(),
            FieldElement::Quad(_) => return Err(FieldError::Mismatch),
        };
        let base = base_elem.conductor();
        Ok(Field::Quadratic(Arc::new(QuadField::new(base, base_elem)?)))
    }

    /// Conductor of the cyclotomic part (1 for ℚ).
    pub fn conductor(&self) -> u32 {
        match self {
            Field::Rational => 1,
            Field::Cyclotomic(n) => *n,
            Field::Quadratic(q) => q.base(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(Rational::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(q),
            Field::Cyclotomic(n) => FieldElement::Cyclo(CycloElement::from_rational(*n, q)),
            Field::Quadratic(f) => {
                FieldElement::Quad(QuadElement::from_base(f.clone(), CycloElement::from_rational(f.base(), q)))
            }
        }
    }

    /// ζₙᵏ as an element of this field; requires n | conductor (or n ≤ 2).
    pub fn root_of_unity(&self, n: u32, k: i64) -> Result<FieldElement, FieldError> {
        if n <= 2 {
            let v = if n == 2 && k.rem_euclid(2) == 1 { -1 } else { 1 };
            return Ok(self.from_int(v));
        }
        let c = self.conductor();
        if c % n == 0 {
            let z = FieldElement::Cyclo(CycloElement::zeta_pow(c, k * (c / n) as i64));
            return self.embed(&z);
        }
        if c % 2 == 1 && (2 * c) % n == 0 {
            // ζ_{2c} = −ζ_c^{(c+1)/2}
            let m = k * (2 * c / n) as i64;
            let z = FieldElement::Cyclo(CycloElement::zeta_pow(c, m * ((c + 1) / 2) as i64));
            let z = if m.rem_euclid(2) == 1 { -z } else { z };
            return self.embed(&z);
        }
        Err(FieldError::Mismatch)
    }

    /// √δ of a quadratic field.
    pub fn sqrt_delta(&self) -> Option<FieldElement> {
        match self {
            Field::Quadratic(f) => Some(FieldElement::Quad(QuadElement::sqrt_delta(f.clone()))),
            _ => None,
        }
    }

    /// Smallest declared field containing both, when one embeds in the other.
    pub fn join(&self, other: &Field) -> Result<Field, FieldError> {
        if self == other {
            return Ok(self.clone());
        }
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f.clone()),
            (Field::Cyclotomic(n), Field::Quadratic(q)) | (Field::Quadratic(q), Field::Cyclotomic(n))
                if q.base() == *n =>
            {
                Ok(Field::Quadratic(q.clone()))
            }
            _ => Err(FieldError::Mismatch),
        }
    }

    /// Maps `x` into this field along the canonical subfield inclusion.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        match (self, x) {
            (Field::Rational, FieldElement::Rational(_)) => Ok(x.clone()),
            (Field::Rational, _) => x.to_rational().map(FieldElement::Rational).ok_or(FieldError::Mismatch),
            (Field::Cyclotomic(n), FieldElement::Rational(q)) => {
                Ok(FieldElement::Cyclo(CycloElement::from_rational(*n, q.clone())))
            }
            (Field::Cyclotomic(n), FieldElement::Cyclo(c)) if c.conductor() == *n => Ok(x.clone()),
            (Field::Quadratic(f), FieldElement::Rational(q)) => Ok(FieldElement::Quad(QuadElement::from_base(
                f.clone(),
                CycloElement::from_rational(f.base(), q.clone()),
            ))),
            (Field::Quadratic(f), FieldElement::Cyclo(c)) if c.conductor() == f.base() => {
                Ok(FieldElement::Quad(QuadElement::from_base(f.clone(), c.clone())))
            }
            (Field::Quadratic(f), FieldElement::Quad(q)) if **q.field() == **f => Ok(x.clone()),
            _ => {
                // values that happen to lie in a common subfield
                match x.to_rational() {
                    Some(q) => Ok(self.from_rational(q)),
                    None => Err(FieldError::Mismatch),
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
            Field::Quadratic(q) => {
                let base = if q.base() == 1 { Field::Rational } else { Field::Cyclotomic(q.base()) };
                write!(f, "{base}(sqrt({}))", FieldElement::from_cyclo(q.delta().clone()))
            }
        }
    }
}

/// An exact element of ℚ, ℚ(ζₙ), or K(√δ).
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(Rational),
    Cyclo(CycloElement),
    Quad(QuadElement),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn from_int(v: i64) -> Self {
        FieldElement::Rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Wraps a cyclotomic residue, collapsing conductors ≤ 2 to ℚ.
    pub fn from_cyclo(c: CycloElement) -> Self {
        if c.conductor() <= 2 {
            FieldElement::Rational(c.to_rational().expect("degree-one field"))
        } else {
            FieldElement::Cyclo(c)
        }
    }

    /// ζₙ = e^{2πi/n}.
    pub fn zeta(n: u32) -> Self {
        Self::from_cyclo(CycloElement::zeta_pow(n, 1))
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Cyclo(c) => Field::Cyclotomic(c.conductor()),
            FieldElement::Quad(q) => Field::Quadratic(q.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Cyclo(c) => c.is_zero(),
            FieldElement::Quad(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::Cyclo(c) => c.to_rational(),
            FieldElement::Quad(q) => q.to_base().and_then(|b| b.to_rational()),
        }
    }

    /// Fully reduced representative: drops a vanishing √δ part and collapses
    /// rational cyclotomic values to ℚ. Used for hashing across fields.
    fn reduced(&self) -> FieldElement {
        match self {
            FieldElement::Rational(_) => self.clone(),
            FieldElement::Cyclo(c) => match c.to_rational() {
                Some(q) => FieldElement::Rational(q),
                None => self.clone(),
            },
            FieldElement::Quad(q) => match q.to_base() {
                Some(b) => FieldElement::from_cyclo(b.clone()).reduced(),
                None => self.clone(),
            },
        }
    }

    /// Explicit coercion ℚ(ζₙ) → ℚ(ζₘ) for n | m.
    pub fn coerce_cyclotomic(&self, m: u32) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(q) => Ok(Field::cyclotomic(m).from_rational(q.clone())),
            FieldElement::Cyclo(c) => c.lift(m).map(Self::from_cyclo).ok_or(FieldError::Mismatch),
            FieldElement::Quad(_) => Err(FieldError::Mismatch),
        }
    }

    fn lift_pair(&self, other: &Self) -> Result<(Self, Self), FieldError> {
        let f = self.field().join(&other.field())?;
        Ok((f.embed(self)?, f.embed(other)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        field_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        field_arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        field_arith(self, other, ArithOp::Mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        field_arith(self, other, ArithOp::Div)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(q) if q.is_zero() => Err(FieldError::DivisionByZero),
            FieldElement::Rational(q) => Ok(FieldElement::Rational(q.recip())),
            FieldElement::Cyclo(c) => c.inv().map(FieldElement::Cyclo).ok_or(FieldError::DivisionByZero),
            FieldElement::Quad(q) => q.inv().map(FieldElement::Quad).ok_or(FieldError::DivisionByZero),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Image under complex conjugation of the standard embedding.
    pub fn complex_conjugate(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(_) => Ok(self.clone()),
            FieldElement::Cyclo(c) => Ok(FieldElement::Cyclo(c.conj())),
            FieldElement::Quad(q) => q.conj().map(FieldElement::Quad),
        }
    }

    pub fn is_real(&self) -> bool {
        self.complex_conjugate().is_ok_and(|c| c == *self)
    }
}

/// Exact field operation with field compatibility checking.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    use FieldElement::*;
    if let (Rational(x), Rational(y)) = (a, b) {
        return match op {
            ArithOp::Add => Ok(Rational(x + y)),
            ArithOp::Sub => Ok(Rational(x - y)),
            ArithOp::Mul => Ok(Rational(x * y)),
            ArithOp::Div if y.is_zero() => Err(FieldError::DivisionByZero),
            ArithOp::Div => Ok(Rational(x / y)),
        };
    }
    // scalar fast paths
    if op == ArithOp::Mul {
        match (a, b) {
            (Rational(x), Cyclo(c)) | (Cyclo(c), Rational(x)) => return Ok(Cyclo(c.scale(x))),
            _ => {}
        }
    }
    let (x, y) = a.lift_pair(b)?;
    if op == ArithOp::Div {
        let inv = y.inv()?;
        return field_arith(&x, &inv, ArithOp::Mul);
    }
    Ok(match (&x, &y) {
        (Cyclo(p), Cyclo(q)) => Cyclo(match op {
            ArithOp::Add => p.add(q),
            ArithOp::Sub => p.sub(q),
            _ => p.mul(q),
        }),
        (Quad(p), Quad(q)) => Quad(match op {
            ArithOp::Add => p.add(q),
            ArithOp::Sub => p.sub(q),
            _ => p.mul(q),
        }),
        _ => unreachable!("lift_pair returns operands of one kind"),
    })
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        use FieldElement::*;
        match (self, other) {
            (Rational(x), Rational(y)) => x == y,
            (Cyclo(x), Cyclo(y)) if x.conductor() == y.conductor() => x == y,
            _ => match self.lift_pair(other) {
                Ok((Cyclo(x), Cyclo(y))) => x == y,
                Ok((Quad(x), Quad(y))) => x == y,
                Ok((Rational(x), Rational(y))) => x == y,
                _ => match (self.reduced(), other.reduced()) {
                    (Rational(x), Rational(y)) => x == y,
                    _ => false,
                },
            },
        }
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.reduced() {
            FieldElement::Rational(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            FieldElement::Cyclo(c) => {
                1u8.hash(state);
                c.hash(state);
            }
            FieldElement::Quad(q) => {
                2u8.hash(state);
                q.hash(state);
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<'a, 'b> $trait<&'b FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                field_arith(self, rhs, $op).unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, ArithOp::Add);
forward_binop!(Sub, sub, ArithOp::Sub);
forward_binop!(Mul, mul, ArithOp::Mul);
forward_binop!(Div, div, ArithOp::Div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Cyclo(c) => FieldElement::Cyclo(c.neg()),
            FieldElement::Quad(q) => FieldElement::Quad(q.neg()),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<i64> for FieldElement {
    fn from(v: i64) -> Self {
        FieldElement::from_int(v)
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::Rational(q)
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let err = || FieldError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

fn fmt_cyclo(c: &CycloElement, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, q) in c.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let sign = if q.is_negative() { "-" } else { "+" };
        if first {
            if q.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let mag = format_rational(&q.abs());
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !q.abs().is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", c.conductor())?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{}", format_rational(q)),
            FieldElement::Cyclo(c) => fmt_cyclo(c, f),
            FieldElement::Quad(q) => {
                write!(f, "(")?;
                fmt_cyclo(q.a(), f)?;
                write!(f, ") + (")?;
                fmt_cyclo(q.b(), f)?;
                write!(f, ")*sqrt(")?;
                fmt_cyclo(q.field().delta(), f)?;
                write!(f, ")")
            }
        }
    }
}

// ---- serialization -------------------------------------------------------

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElementRepr {
    Rational(String),
    Cyclo { conductor: u32, coeffs: Vec<String> },
    Quad { base: u32, delta: Box<ElementRepr>, a: Box<ElementRepr>, b: Box<ElementRepr> },
}

fn cyclo_repr(c: &CycloElement) -> ElementRepr {
    if c.conductor() <= 2 {
        return ElementRepr::Rational(format_rational(&c.to_rational().unwrap()));
    }
    ElementRepr::Cyclo { conductor: c.conductor(), coeffs: c.coeffs().iter().map(format_rational).collect() }
}

fn repr_to_cyclo(r: &ElementRepr, base: u32) -> Result<CycloElement, FieldError> {
    match r {
        ElementRepr::Rational(s) => Ok(CycloElement::from_rational(base, parse_rational(s)?)),
        ElementRepr::Cyclo { conductor, coeffs } if *conductor == base => {
            let cs = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            if cs.len() != totient(base) as usize {
                return Err(FieldError::Parse(format!("expected {} coefficients", totient(base))));
            }
            Ok(CycloElement::new(base, cs))
        }
        _ => Err(FieldError::Parse("base element of the wrong field".into())),
    }
}

impl ElementRepr {
    fn from_element(x: &FieldElement) -> Self {
        match x {
            FieldElement::Rational(q) => ElementRepr::Rational(format_rational(q)),
            FieldElement::Cyclo(c) => cyclo_repr(c),
            FieldElement::Quad(q) => ElementRepr::Quad {
                base: q.field().base(),
                delta: Box::new(cyclo_repr(q.field().delta())),
                a: Box::new(cyclo_repr(q.a())),
                b: Box::new(cyclo_repr(q.b())),
            },
        }
    }

    fn to_element(&self) -> Result<FieldElement, FieldError> {
        match self {
            ElementRepr::Rational(s) => Ok(FieldElement::Rational(parse_rational(s)?)),
            ElementRepr::Cyclo { conductor, .. } => {
                if *conductor == 0 {
                    return Err(FieldError::Parse("conductor 0".into()));
                }
                Ok(FieldElement::from_cyclo(repr_to_cyclo(self, *conductor)?))
            }
            ElementRepr::Quad { base, delta, a, b } => {
                let base = if *base <= 2 { 1 } else { *base };
                let field = Arc::new(QuadField::new(base, repr_to_cyclo(delta, base)?)?);
                Ok(FieldElement::Quad(QuadElement::new(field, repr_to_cyclo(a, base)?, repr_to_cyclo(b, base)?)))
            }
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementRepr::from_element(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ElementRepr::deserialize(d)?.to_element().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
enum FieldRepr {
    Rational,
    Cyclotomic(u32),
    Quadratic { base: u32, delta: ElementRepr },
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Field::Rational => FieldRepr::Rational,
            Field::Cyclotomic(n) => FieldRepr::Cyclotomic(*n),
            Field::Quadratic(q) => FieldRepr::Quadratic { base: q.base(), delta: cyclo_repr(q.delta()) },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::Rational => Ok(Field::Rational),
            FieldRepr::Cyclotomic(n) if n >= 1 => Ok(Field::cyclotomic(n)),
            FieldRepr::Cyclotomic(_) => Err(serde::de::Error::custom("conductor 0")),
            FieldRepr::Quadratic { base, delta } => {
                let base = if base <= 2 { 1 } else { base };
                let delta = repr_to_cyclo(&delta, base).map_err(serde::de::Error::custom)?;
                QuadField::new(base, delta)
                    .map(|q| Field::Quadratic(Arc::new(q)))
                    .map_err(serde::de::Error::custom)
            }
        }
    }
}
