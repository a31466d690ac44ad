//! Rational maps of the projective line with certified degree.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::mobius::MobiusMap;
use crate::poly::{poly_gcd, resultant, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("numerator and denominator are both zero")]
    BothZero,
    #[error("map is constant after reduction")]
    DegenerateMap,
    #[error("resultant vanishes at the formal degree")]
    VanishingResultant,
    #[error("declared degree {declared} differs from reduced degree {actual}")]
    DegreeMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<PolyError> for MapError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::BothZero => MapError::BothZero,
            PolyError::Field(f) => MapError::Field(f),
        }
    }
}

/// A point (x : y) of the projective line, normalized so y = 1 or (x, y) = (1, 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Result<Self, FieldError> {
        if y.is_zero() {
            if x.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            return Ok(Self::infinity());
        }
        Ok(ProjPoint { x: x.try_div(&y)?, y: FieldElement::from_int(1) })
    }

    pub fn finite(z: FieldElement) -> Self {
        ProjPoint { x: z, y: FieldElement::from_int(1) }
    }

    pub fn infinity() -> Self {
        ProjPoint { x: FieldElement::from_int(1), y: FieldElement::from_int(0) }
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Affine coordinate, `None` at ∞.
    pub fn as_finite(&self) -> Option<&FieldElement> {
        (!self.is_infinity()).then_some(&self.x)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_finite() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "inf"),
        }
    }
}

/// φ = P/Q with gcd(P, Q) = 1 and nonzero resultant at formal degree (d, d).
#[derive(Clone, Debug)]
pub struct RationalMap {
    field: Field,
    num: Poly,
    den: Poly,
    degree: usize,
}

/// Reduces P/Q, certifies the degree, and scales so the leading
/// coefficient of degree d (of P when present, else of Q) is 1.
pub fn make_map(p: &Poly, q: &Poly) -> Result<RationalMap, MapError> {
    let field = p.field().join(q.field())?;
    let p = p.embed_into(&field)?;
    let q = q.embed_into(&field)?;
    let g = poly_gcd(&p, &q)?;
    let (p, q) = if g.degree() == Some(0) {
        (p, q)
    } else {
        (p.divrem(&g)?.0, q.divrem(&g)?.0)
    };
    let d = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
    if d == 0 {
        return Err(MapError::DegenerateMap);
    }
    if resultant(&p, &q, d, d).is_zero() {
        return Err(MapError::VanishingResultant);
    }
    let lead = if p.degree() == Some(d) { p.coeff(d) } else { q.coeff(d) };
    let s = lead.inv()?;
    Ok(RationalMap { field, num: p.scale(&s), den: q.scale(&s), degree: d })
}

impl RationalMap {
    /// Coefficient-wise image of an already normalized map under a field
    /// inclusion; coprimality and normalization are preserved.
    pub(crate) fn lifted(&self, num: Poly, den: Poly) -> Self {
        RationalMap { field: num.field().clone(), num, den, degree: self.degree }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The map z ↦ (az + b)/(cz + d).
    pub fn from_mobius(t: &MobiusMap) -> Self {
        let f = t.field().clone();
        let num = Poly::new(f.clone(), vec![t.b().clone(), t.a().clone()]).unwrap();
        let den = Poly::new(f, vec![t.d().clone(), t.c().clone()]).unwrap();
        make_map(&num, &den).expect("Möbius matrix is invertible")
    }

    /// Same map with coefficients viewed in a larger field.
    pub fn embed_into(&self, field: &Field) -> Result<Self, FieldError> {
        Ok(RationalMap {
            field: field.clone(),
            num: self.num.embed_into(field)?,
            den: self.den.embed_into(field)?,
            degree: self.degree,
        })
    }

    pub fn eval_proj(&self, p: &ProjPoint) -> Result<ProjPoint, FieldError> {
        let x = self.num.eval_homogeneous(self.degree, p.x(), p.y())?;
        let y = self.den.eval_homogeneous(self.degree, p.x(), p.y())?;
        ProjPoint::new(x, y)
    }

    /// φ(z) at a finite point, `None` at a pole.
    pub fn eval(&self, z: &FieldElement) -> Result<ProjPoint, FieldError> {
        self.eval_proj(&ProjPoint::finite(z.clone()))
    }

    /// Projective equality by cross-multiplication of coefficient vectors.
    pub fn proj_eq(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let d = self.degree;
        let v: Vec<FieldElement> = (0..=d).map(|k| self.num.coeff(k)).chain((0..=d).map(|k| self.den.coeff(k))).collect();
        let w: Vec<FieldElement> =
            (0..=d).map(|k| other.num.coeff(k)).chain((0..=d).map(|k| other.den.coeff(k))).collect();
        let Some(i) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if w[i].is_zero() {
            return false;
        }
        v.iter().zip(&w).all(|(vj, wj)| match (vj.try_mul(&w[i]), wj.try_mul(&v[i])) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        })
    }

    /// Homogeneous substitution: self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let field = self.field.join(&other.field).expect("maps over unrelated fields");
        let a = other.num.embed_into(&field).unwrap();
        let b = other.den.embed_into(&field).unwrap();
        let d = self.degree;
        // powers of a and b up to d
        let mut apow = vec![Poly::one(&field)];
        let mut bpow = vec![Poly::one(&field)];
        for k in 0..d {
            apow.push(apow[k].mul(&a));
            bpow.push(bpow[k].mul(&b));
        }
        let mut num = Poly::zero(&field);
        let mut den = Poly::zero(&field);
        for k in 0..=d {
            let term = apow[k].mul(&bpow[d - k]);
            let (pk, qk) = (self.num.coeff(k), self.den.coeff(k));
            if !pk.is_zero() {
                num = num.add(&term.scale(&pk));
            }
            if !qk.is_zero() {
                den = den.add(&term.scale(&qk));
            }
        }
        make_map(&num, &den).expect("composite of maps with nonzero resultant")
    }

    /// T ∘ φ ∘ T⁻¹.
    pub fn conjugate(&self, t: &MobiusMap) -> Self {
        let field = self.field.join(t.field()).expect("map and conjugator over unrelated fields");
        let d = self.degree;
        if t.b().is_zero() && t.c().is_zero() {
            // T(z) = λz: λ·P(z/λ)/Q(z/λ), cleared by λ^d
            let lambda = t.a() / t.d();
            let mut pw = field.one();
            let mut num = Vec::with_capacity(d + 1);
            let mut den = Vec::with_capacity(d + 1);
            let mut pows = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                pows.push(pw.clone());
                pw = &pw * &lambda;
            }
            for k in 0..=d {
                num.push(&(&self.num.coeff(k) * &pows[d - k]) * &lambda);
                den.push(&self.den.coeff(k) * &pows[d - k]);
            }
            return make_map(&Poly::new(field.clone(), num).unwrap(), &Poly::new(field, den).unwrap())
                .expect("conjugate keeps the degree");
        }
        if t.a().is_zero() && t.d().is_zero() {
            // T(z) = μ/z is an involution: μ·Q(μ/z)/P(μ/z), cleared by z^d
            let mu = t.b() / t.c();
            let mut pw = field.one();
            let mut num = vec![field.zero(); d + 1];
            let mut den = vec![field.zero(); d + 1];
            for k in 0..=d {
                num[d - k] = &(&self.den.coeff(k) * &pw) * &mu;
                den[d - k] = &self.num.coeff(k) * &pw;
                pw = &pw * &mu;
            }
            return make_map(&Poly::new(field.clone(), num).unwrap(), &Poly::new(field, den).unwrap())
                .expect("conjugate keeps the degree");
        }
        let tm = RationalMap::from_mobius(t);
        let ti = RationalMap::from_mobius(&t.inverse());
        tm.compose(self).compose(&ti)
    }

    pub fn is_automorphism(&self, t: &MobiusMap) -> bool {
        if self.field.join(t.field()).is_err() {
            return false;
        }
        self.conjugate(t).proj_eq(self)
    }

    /// φ′ = (P′Q − PQ′)/Q² as a reduced formal quotient.
    pub fn derivative(&self) -> FormalRational {
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        FormalRational::reduced(num, den)
    }
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.proj_eq(other)
    }
}

impl Eq for RationalMap {}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// A quotient of polynomials with no degree certification (derivatives).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalRational {
    pub num: Poly,
    pub den: Poly,
}

impl FormalRational {
    /// Divides out the gcd and makes the denominator monic.
    pub fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let f = den.field().clone();
            return FormalRational { num: Poly::zero(&f), den: Poly::one(&f) };
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (num, den) = (num.divrem(&g).unwrap().0, den.divrem(&g).unwrap().0);
        let s = den.leading().expect("denominator is nonzero").inv().unwrap();
        FormalRational { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    num: Vec<FieldElement>,
    den: Vec<FieldElement>,
    degree: usize,
    field: Field,
}

impl Serialize for RationalMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapRepr {
            num: self.num.coeffs().to_vec(),
            den: self.den.coeffs().to_vec(),
            degree: self.degree,
            field: self.field.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = MapRepr::deserialize(d)?;
        let num = Poly::new(r.field.clone(), r.num).map_err(D::Error::custom)?;
        let den = Poly::new(r.field.clone(), r.den).map_err(D::Error::custom)?;
        let map = make_map(&num, &den).map_err(D::Error::custom)?;
        if map.degree != r.degree {
            return Err(D::Error::custom(MapError::DegreeMismatch { declared: r.degree, actual: map.degree }));
        }
        map.embed_into(&r.field).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(p: &[i64], q: &[i64]) -> RationalMap {
        make_map(&Poly::from_ints(p), &Poly::from_ints(q)).unwrap()
    }

    #[test]
    fn make_map_examples() {
        let m = map(&[1], &[0, 0, 1]);
        assert_eq!(m.degree(), 2);
        let m = map(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(m.degree(), 1);
        assert_eq!(m.num(), &Poly::from_ints(&[1, 1]));
        assert_eq!(map(&[0, 0, 0, 1], &[1]).degree(), 3);
        assert_eq!(make_map(&Poly::from_ints(&[2, 2]), &Poly::from_ints(&[1, 1])).unwrap_err(), MapError::DegenerateMap);
    }

    #[test]
    fn canonical_scale_prefers_numerator() {
        let m = map(&[2], &[0, 0, 4]);
        assert_eq!(m.den().coeff(2), FieldElement::from_int(1));
        let m = map(&[0, 0, 3], &[6]);
        assert_eq!(m.num().coeff(2), FieldElement::from_int(1));
        assert_eq!(m.den().coeff(0), FieldElement::from_int(2));
    }

    #[test]
    fn eval_proj_examples() {
        let inv_sq = map(&[1], &[0, 0, 1]);
        assert_eq!(inv_sq.eval_proj(&ProjPoint::infinity()).unwrap(), ProjPoint::finite(FieldElement::from_int(0)));
        let cube = map(&[0, 0, 0, 1], &[1]);
        assert!(cube.eval_proj(&ProjPoint::infinity()).unwrap().is_infinity());
        let m = map(&[0, 2, 0, 0, 1], &[1]);
        assert_eq!(m.eval(&FieldElement::from_int(1)).unwrap(), ProjPoint::finite(FieldElement::from_int(3)));
    }

    #[test]
    fn compose_examples() {
        let sq = map(&[0, 0, 1], &[1]);
        let cube = map(&[0, 0, 0, 1], &[1]);
        assert_eq!(sq.compose(&cube), map(&[0, 0, 0, 0, 0, 0, 1], &[1]));
        let inv = map(&[1], &[0, 1]);
        let inv_sq = map(&[1], &[0, 0, 1]);
        assert_eq!(inv.compose(&inv_sq), sq);
        let shift = map(&[1, 1], &[1]);
        assert_eq!(shift.compose(&sq), map(&[1, 0, 1], &[1]));
    }

    #[test]
    fn conjugate_examples() {
        let sq = map(&[0, 0, 1], &[1]);
        assert_eq!(sq.conjugate(&MobiusMap::inversion()), sq);
        let inv_sq = map(&[1], &[0, 0, 1]);
        let t = MobiusMap::scaling(FieldElement::zeta(3));
        assert_eq!(inv_sq.conjugate(&t), inv_sq);
        assert!(inv_sq.is_automorphism(&t));
        assert!(inv_sq.is_automorphism(&MobiusMap::inversion()));
        let m = map(&[0, 1, 0, 1], &[1]);
        assert!(!m.is_automorphism(&t));
        let id = MobiusMap::identity(&Field::Rational);
        assert_eq!(m.conjugate(&id), m);
    }

    #[test]
    fn general_conjugation_matches_fast_paths() {
        let m = map(&[1, 0, 3], &[0, 2, 1]);
        let lambda = FieldElement::from_int(3);
        let t = MobiusMap::scaling(lambda.clone());
        let slow = RationalMap::from_mobius(&t).compose(&m).compose(&RationalMap::from_mobius(&t.inverse()));
        assert_eq!(m.conjugate(&t), slow);
        let t = MobiusMap::new(FieldElement::from_int(0), lambda, FieldElement::from_int(1), FieldElement::from_int(0))
            .unwrap();
        let slow = RationalMap::from_mobius(&t).compose(&m).compose(&RationalMap::from_mobius(&t.inverse()));
        assert_eq!(m.conjugate(&t), slow);
    }

    #[test]
    fn derivative_examples() {
        let d = map(&[0, 0, 1], &[1]).derivative();
        assert_eq!((d.num, d.den), (Poly::from_ints(&[0, 2]), Poly::from_ints(&[1])));
        let d = map(&[1], &[0, 0, 1]).derivative();
        assert_eq!((d.num, d.den), (Poly::from_ints(&[-2]), Poly::from_ints(&[0, 0, 0, 1])));
        let d = map(&[1, 0, 1], &[0, 1]).derivative();
        assert_eq!((d.num, d.den), (Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, 0, 1])));
    }

    #[test]
    fn json_round_trip() {
        let m = make_map(
            &Poly::from_elements(vec![FieldElement::from_int(2), FieldElement::zeta(3)]).unwrap(),
            &Poly::from_ints(&[0, 0, 1]),
        )
        .unwrap();
        let js = serde_json::to_string(&m).unwrap();
        let back: RationalMap = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
