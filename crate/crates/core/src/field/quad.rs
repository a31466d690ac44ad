//! One quadratic layer K(√δ) over K = ℚ or ℚ(ζₙ).

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;

use num_traits::{Signed, Zero};

use super::cyclo::CycloElement;
use super::interval;
use super::{FieldError, Rational};

/// The field K(√δ). `base` is the conductor of K (1 means ℚ).
#[derive(Clone, Debug)]
pub struct QuadField {
    base: u32,
    delta: CycloElement,
    /// Sign of δ when δ is real under the standard embedding.
    real_delta_sign: Option<i8>,
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.delta == other.delta
    }
}

impl Eq for QuadField {}

impl Hash for QuadField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.delta.hash(state);
    }
}

impl QuadField {
    /// Declares K(√δ). A rational δ is rejected exactly when it is a square
    /// in K; for irrational δ non-squareness is the caller's responsibility.
    pub fn new(base: u32, delta: CycloElement) -> Result<Self, FieldError> {
        if delta.conductor() != base {
            return Err(FieldError::Mismatch);
        }
        if delta.is_zero() {
            return Err(FieldError::SquareRadicand);
        }
        if let Some(q) = delta.to_rational() {
            if rational_is_square_in(&q, base) {
                return Err(FieldError::SquareRadicand);
            }
        }
        let real_delta_sign = if delta.conj() == delta {
            Some(interval::real_sign(&super::FieldElement::from_cyclo(delta.clone())))
        } else {
            None
        };
        Ok(QuadField { base, delta, real_delta_sign })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn delta(&self) -> &CycloElement {
        &self.delta
    }

    pub(crate) fn real_delta_sign(&self) -> Option<i8> {
        self.real_delta_sign
    }
}

/// Whether the rational `q` is a square in ℚ(ζₙ): with D the squarefree
/// part of q, √D ∈ ℚ(ζₙ) iff the conductor of ℚ(√D) divides n.
fn rational_is_square_in(q: &Rational, n: u32) -> bool {
    if is_rational_square(q) {
        return true;
    }
    let prod = q.numer() * q.denom();
    let negative = prod.is_negative();
    let mut m = prod.abs();
    let mut squarefree = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            squarefree *= &p;
        }
        p += 1;
    }
    squarefree *= m;
    let d = if negative { -squarefree } else { squarefree };
    let four = BigInt::from(4);
    let conductor = if ((&d % &four + &four) % &four) == BigInt::from(1) { d.abs() } else { d.abs() * four };
    (BigInt::from(n) % conductor).is_zero()
}

pub(crate) fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

/// a + b√δ with a, b in the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    field: Arc<QuadField>,
    a: CycloElement,
    b: CycloElement,
}

impl QuadElement {
    pub fn new(field: Arc<QuadField>, a: CycloElement, b: CycloElement) -> Self {
        debug_assert_eq!(a.conductor(), field.base);
        debug_assert_eq!(b.conductor(), field.base);
        QuadElement { field, a, b }
    }

    pub fn from_base(field: Arc<QuadField>, a: CycloElement) -> Self {
        let b = CycloElement::zero(field.base);
        QuadElement { field, a, b }
    }

    /// √δ itself.
    pub fn sqrt_delta(field: Arc<QuadField>) -> Self {
        let a = CycloElement::zero(field.base);
        let b = CycloElement::one(field.base);
        QuadElement { field, a, b }
    }

    pub fn field(&self) -> &Arc<QuadField> {
        &self.field
    }

    pub fn a(&self) -> &CycloElement {
        &self.a
    }

    pub fn b(&self) -> &CycloElement {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The element as a base-field element when its √δ part vanishes.
    pub fn to_base(&self) -> Option<&CycloElement> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadElement { field: self.field.clone(), a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadElement { field: self.field.clone(), a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn neg(&self) -> Self {
        QuadElement { field: self.field.clone(), a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let aa = self.a.mul(&o.a);
        let bb = self.b.mul(&o.b).mul(&self.field.delta);
        let ab = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        QuadElement { field: self.field.clone(), a: aa.add(&bb), b: ab }
    }

    pub fn inv(&self) -> Option<Self> {
        // (a - b√δ) / (a² - δ b²)
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&self.field.delta));
        let ninv = norm.inv()?;
        Some(QuadElement {
            field: self.field.clone(),
            a: self.a.mul(&ninv),
            b: self.b.neg().mul(&ninv),
        })
    }

    /// Complex conjugation; defined when δ is real, where conj(√δ) = ±√δ.
    pub fn conj(&self) -> Result<Self, FieldError> {
        let sign = self.field.real_delta_sign.ok_or(FieldError::NoConjugation)?;
        let b = if sign > 0 { self.b.conj() } else { self.b.conj().neg() };
        Ok(QuadElement { field: self.field.clone(), a: self.a.conj(), b })
    }
}
