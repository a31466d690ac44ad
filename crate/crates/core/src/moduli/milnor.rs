//! Milnor's coordinates (σ₁, σ₂) on M₂ and the cubic cut out by maps with
//! extra automorphisms.

use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::mobius::MobiusMap;
use crate::poly::Poly;
use crate::ratmap::RationalMap;

/// Translations z + c tried first, then 1/(z + c), for c = 0..SEARCH.
const SEARCH: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorPoint {
    pub sigma1: FieldElement,
    pub sigma2: FieldElement,
}

fn eval_at_matrix(p: &Poly, m: &Matrix) -> Matrix {
    let field = p.field().clone();
    let mut acc = Matrix::zeros(&field, m.rows(), m.cols());
    let id = Matrix::identity(&field, m.rows());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&id.scale(c));
    }
    acc
}

/// Companion matrix of a monic cubic.
fn companion(f: &Poly) -> Matrix {
    let f = f.monic();
    let field = f.field().clone();
    let mut m = Matrix::zeros(&field, 3, 3);
    for i in 1..3 {
        m.set(i, i - 1, field.one());
    }
    for i in 0..3 {
        m.set(i, 2, -f.coeff(i));
    }
    m
}

/// φ′ on the companion matrix of the fixed-point polynomial, or None when
/// ∞ is fixed or the derivative's denominator is singular there.
fn multiplier_matrix(map: &RationalMap) -> Option<Matrix> {
    let (p, q) = (map.num(), map.den());
    if q.coeff(2).is_zero() {
        return None;
    }
    let f = q.shift(1).sub(p);
    if f.degree() != Some(3) {
        return None;
    }
    let m = companion(&f);
    let u = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
    let v = q.mul(q);
    let vi = eval_at_matrix(&v, &m).inverse()?;
    Some(eval_at_matrix(&u, &m).mul(&vi))
}

/// The map moved by the first conjugator in the fixed search order that
/// puts all three fixed points in the finite plane.
fn normalized(map: &RationalMap) -> Result<Matrix, ModuliError> {
    for c in 0..SEARCH {
        if let Some(w) = multiplier_matrix(&map.conjugate(&MobiusMap::from_ints(1, c, 0, 1).unwrap())) {
            return Ok(w);
        }
    }
    for c in 0..SEARCH {
        if let Some(w) = multiplier_matrix(&map.conjugate(&MobiusMap::from_ints(0, 1, 1, c).unwrap())) {
            return Ok(w);
        }
    }
    Err(ModuliError::NormalizationFailed)
}

/// (σ₁, σ₂, σ₃) of the three fixed-point multipliers of a degree-2 map.
pub fn multiplier_sigmas(map: &RationalMap) -> Result<[FieldElement; 3], ModuliError> {
    if map.degree() != 2 {
        return Err(ModuliError::NotDegreeTwo(map.degree()));
    }
    let w = normalized(map)?;
    let s1 = w.trace();
    let s2 = &(&(&s1 * &s1) - &w.mul(&w).trace()) / &FieldElement::from_int(2);
    let s3 = w.det();
    Ok([s1, s2, s3])
}

pub fn milnor_coordinates(map: &RationalMap) -> Result<MilnorPoint, ModuliError> {
    let [sigma1, sigma2, _] = multiplier_sigmas(map)?;
    Ok(MilnorPoint { sigma1, sigma2 })
}

/// 2x³ + x²y − x² − 4y² − 8xy + 12x + 12y − 36 at (σ₁, σ₂).
pub fn fujimura_cubic(pt: &MilnorPoint) -> FieldElement {
    let (x, y) = (&pt.sigma1, &pt.sigma2);
    let k = FieldElement::from_int;
    let x2 = x * x;
    let terms = [
        &k(2) * &(&x2 * x),
        &x2 * y,
        -x2.clone(),
        &k(-4) * &(y * y),
        &k(-8) * &(x * y),
        &k(12) * x,
        &k(12) * y,
        k(-36),
    ];
    terms.iter().fold(k(0), |acc, t| &acc + t)
}
