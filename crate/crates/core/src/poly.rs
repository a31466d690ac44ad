//! Univariate polynomials over a [`Field`].

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::{qpoly, Field, FieldElement, FieldError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense polynomial with ascending coefficients, all embedded in `field`.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self, FieldError> {
        let coeffs = coeffs.iter().map(|c| field.embed(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_embedded(field, coeffs))
    }

    /// Smallest declared field containing every coefficient.
    pub fn from_elements(coeffs: Vec<FieldElement>) -> Result<Self, FieldError> {
        let mut field = Field::Rational;
        for c in &coeffs {
            field = field.join(&c.field())?;
        }
        Self::new(field, coeffs)
    }

    fn from_embedded(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_embedded(Field::Rational, v.iter().map(|&x| FieldElement::from_int(x)).collect())
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        Self::from_embedded(Field::Rational, v.iter().cloned().map(FieldElement::Rational).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field();
        Self::from_embedded(field, vec![c])
    }

    /// c·xᵏ.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_embedded(field, coeffs)
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of xᵏ (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Re-embeds the coefficients into a larger field.
    pub fn embed_into(&self, field: &Field) -> Result<Self, FieldError> {
        if *field == self.field {
            return Ok(self.clone());
        }
        Self::new(field.clone(), self.coeffs.clone())
    }

    fn joined(&self, other: &Self) -> (Field, Poly, Poly) {
        if self.field == other.field {
            return (self.field.clone(), self.clone(), other.clone());
        }
        let f = self.field.join(&other.field).expect("polynomials over unrelated fields");
        let a = self.embed_into(&f).unwrap();
        let b = other.embed_into(&f).unwrap();
        (f, a, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (f, a, b) = self.joined(other);
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_embedded(f, coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (f, a, b) = self.joined(other);
        if a.is_zero() || b.is_zero() {
            return Self::zero(&f);
        }
        let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        Self::from_embedded(f, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = self.field.join(&c.field()).expect("scalar from an unrelated field");
        let coeffs = self.coeffs.iter().map(|x| f.embed(&(x * c)).unwrap()).collect();
        Self::from_embedded(f, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division `self = q·g + r` with deg r < deg g.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self), FieldError> {
        let dg = g.degree().ok_or(FieldError::DivisionByZero)?;
        let (f, a, b) = self.joined(g);
        let lead_inv = b.coeffs[dg].inv()?;
        let mut rem = a.coeffs;
        if rem.len() <= dg {
            return Ok((Self::zero(&f), Self::from_embedded(f, rem)));
        }
        let mut quo = vec![f.zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let t = &rem[k] * &lead_inv;
            for (j, c) in b.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k - dg + j] = &rem[k - dg + j] - &(&t * c);
                }
            }
            quo[k - dg] = t;
        }
        rem.truncate(dg);
        Ok((Self::from_embedded(f.clone(), quo), Self::from_embedded(f, rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self, FieldError> {
        Ok(self.divrem(g)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    /// p(x) ↦ p(xⁿ).
    pub fn compose_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n] = c.clone();
        }
        Self::from_embedded(self.field.clone(), coeffs)
    }

    /// p(x) ↦ xᵏ·p(x).
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_embedded(self.field.clone(), coeffs)
    }

    /// xᵈ·p(1/x) for a formal degree d ≥ deg p.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.degree().map_or(true, |k| k <= d), "formal degree below actual degree");
        let coeffs = (0..=d).rev().map(|k| self.coeff(k)).collect();
        Self::from_embedded(self.field.clone(), coeffs)
    }

    /// p(x) ↦ p(c·x).
    pub fn scale_variable(&self, c: &FieldElement) -> Self {
        let f = self.field.join(&c.field()).expect("scalar from an unrelated field");
        let mut pw = f.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(f.embed(&(x * &pw)).unwrap());
            pw = &pw * c;
        }
        Self::from_embedded(f, coeffs)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &FieldElement::from_int(k as i64))
            .collect();
        Self::from_embedded(self.field.clone(), coeffs)
    }

    /// Horner evaluation; `a` may lie in a field containing the coefficients.
    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.field.join(&a.field())?;
        let a = f.embed(a)?;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = (&acc * &a).try_add(c)?;
        }
        Ok(acc)
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Result<Self, FieldError> {
        let coeffs = self.coeffs.iter().map(|c| c.complex_conjugate()).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_embedded(self.field.clone(), coeffs))
    }

    /// The coefficients as rationals, if they all are.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.to_rational()).collect()
    }

    /// Homogeneous evaluation y^d·p(x/y) at formal degree d.
    pub fn eval_homogeneous(&self, d: usize, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.field.join(&x.field())?.join(&y.field())?;
        let (x, y) = (f.embed(x)?, f.embed(y)?);
        let mut acc = f.zero();
        // Σ c_k x^k y^(d-k), Horner in x with y powers tracked
        let mut ypow = f.one();
        let mut ypows = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            ypows.push(ypow.clone());
            ypow = &ypow * &y;
        }
        for k in (0..=d).rev() {
            acc = &acc * &x;
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = acc.try_add(&(&c * &ypows[d - k]))?;
            }
        }
        Ok(acc)
    }
}

pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (_, mut a, mut b) = f.joined(g);
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Sylvester matrix of `f`, `g` at formal degrees (m, n): n shifted rows of
/// f's coefficients (leading first) followed by m rows of g's.
pub fn sylvester_matrix(f: &Poly, g: &Poly, m: usize, n: usize) -> Vec<Vec<FieldElement>> {
    let (field, f, g) = f.joined(g);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![field.zero(); size];
        for j in 0..=m {
            row[i + j] = f.coeff(m - j);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![field.zero(); size];
        for j in 0..=n {
            row[i + j] = g.coeff(n - j);
        }
        rows.push(row);
    }
    rows
}

/// Resultant at formal degrees (m, n), i.e. the Sylvester determinant, computed
/// by a Euclidean recursion that tracks leading-coefficient drops.
pub fn resultant(f: &Poly, g: &Poly, m: usize, n: usize) -> FieldElement {
    assert!(f.degree().map_or(true, |k| k <= m), "deg f exceeds its formal degree");
    assert!(g.degree().map_or(true, |k| k <= n), "deg g exceeds its formal degree");
    let (field, f, g) = f.joined(g);
    let mut sign_negative = false;
    let mut factor = field.one();
    let (mut f, mut g, mut m, mut n) = (f, g, m, n);
    loop {
        if n == 0 {
            let r = g.coeff(0).pow(m as i64).unwrap();
            return finish(&factor, r, sign_negative);
        }
        if m == 0 {
            let r = f.coeff(0).pow(n as i64).unwrap();
            return finish(&factor, r, sign_negative);
        }
        let (p, q) = match (f.degree(), g.degree()) {
            (Some(p), Some(q)) => (p, q),
            _ => return field.zero(),
        };
        if p < m && q < n {
            return field.zero();
        }
        if q < n {
            // expand along the leading column: f_m^(n-q)
            factor = &factor * &f.coeff(m).pow((n - q) as i64).unwrap();
            n = q;
            continue;
        }
        if m < n || p < m {
            // res_{m,n}(f,g) = (-1)^{mn} res_{n,m}(g,f)
            if m * n % 2 == 1 {
                sign_negative = !sign_negative;
            }
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut m, &mut n);
            continue;
        }
        // both at full degree, m ≥ n ≥ 1
        let r = f.rem(&g).unwrap();
        if m * n % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let k = match r.degree() {
            None => return field.zero(),
            Some(k) => k,
        };
        factor = &factor * &g.coeff(n).pow((m - k) as i64).unwrap();
        f = g;
        g = r;
        m = n;
        n = k;
    }
}

fn finish(factor: &FieldElement, r: FieldElement, negative: bool) -> FieldElement {
    let v = factor * &r;
    if negative {
        -v
    } else {
        v
    }
}

/// Sturm sequence of the square-free part of a rational polynomial.
pub fn sturm_sequence(f: &[Rational]) -> Vec<Vec<Rational>> {
    let f = qpoly::trim(f.to_vec());
    assert!(!f.is_empty(), "Sturm sequence of the zero polynomial");
    let df = qpoly::derivative(&f);
    let sqfree = if df.is_empty() { f.clone() } else { qpoly::divrem(&f, &qpoly::gcd(&f, &df)).0 };
    let mut seq = vec![sqfree.clone(), qpoly::derivative(&sqfree)];
    if seq[1].is_empty() {
        seq.pop();
        return seq;
    }
    loop {
        let n = seq.len();
        let r = qpoly::neg(&qpoly::rem(&seq[n - 2], &seq[n - 1]));
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq
}

/// Sign changes of a Sturm sequence at `x`, zeros skipped.
pub fn sign_variations(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| qpoly::sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `f` in (lo, hi].
pub fn sturm_roots_in_interval(f: &Poly, lo: &Rational, hi: &Rational) -> usize {
    let coeffs = f.to_rationals().expect("Sturm counting needs rational coefficients");
    assert!(lo < hi, "empty interval");
    let seq = sturm_sequence(&coeffs);
    sign_variations(&seq, lo) - sign_variations(&seq, hi)
}

/// Cyclotomic polynomial Φₙ over ℚ.
pub fn cyclotomic_polynomial(n: u32) -> Poly {
    Poly::from_rationals(&crate::field::cyclo::cyclotomic_coeffs(n))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_rat = c.to_rational().is_some();
            match (k, c.is_one()) {
                (0, _) => write!(f, "{}", if is_rat { c.to_string() } else { format!("({c})") })?,
                (_, true) => {}
                _ if is_rat => write!(f, "{c}*")?,
                _ => write!(f, "({c})*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<FieldElement>::deserialize(d)?;
        Poly::from_elements(coeffs).map_err(serde::de::Error::custom)
    }
}

/// Exact Gaussian-elimination determinant; an oracle for [`resultant`].
pub fn determinant(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    if n == 0 {
        return FieldElement::from_int(1);
    }
    let mut det = FieldElement::from_int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return FieldElement::from_int(0);
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let pinv = p.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &pinv;
            for c in col..n {
                let v = &m[r][c] - &(&factor * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_examples() {
        let g = poly_gcd(&Poly::from_ints(&[-1, 0, 1]), &Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
        // zP(z²) and Q(z²) with P = x+2, Q = x+1
        let f = Poly::from_ints(&[2, 1]).compose_power(2).shift(1);
        let g = Poly::from_ints(&[1, 1]).compose_power(2);
        assert_eq!(poly_gcd(&f, &g).unwrap(), Poly::from_ints(&[1]));
        let f = Poly::from_ints(&[3, 6]);
        assert_eq!(poly_gcd(&f, &Poly::zero(&Field::Rational)).unwrap(), Poly::from_rationals(&[r(1, 2), r(1, 1)]));
        assert_eq!(poly_gcd(&Poly::zero(&Field::Rational), &Poly::zero(&Field::Rational)), Err(PolyError::BothZero));
    }

    #[test]
    fn resultant_examples() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        let one = Poly::from_ints(&[1]);
        // only g drops degree: the Sylvester determinant is 1, and z² is a valid degree-2 map
        assert!(resultant(&x2, &one, 2, 2).is_one());
        assert!(determinant(sylvester_matrix(&x2, &one, 2, 2)).is_one());
        // both drop: common root at infinity
        assert!(resultant(&x2, &Poly::from_ints(&[0, 1]), 3, 3).is_zero());
        assert!(resultant(&x2, &one, 2, 0).is_one());
        let v = resultant(&Poly::from_ints(&[-1, 1]), &Poly::from_ints(&[1, 1]), 1, 1);
        assert_eq!(v, FieldElement::from_int(2));
    }

    #[test]
    fn resultant_matches_sylvester_on_degree_drops() {
        let f = Poly::from_ints(&[3, -2, 0, 5]);
        let g = Poly::from_ints(&[1, 4, 7]);
        for (m, n) in [(3, 2), (3, 3), (4, 2), (5, 4), (3, 5)] {
            let det = determinant(sylvester_matrix(&f, &g, m, n));
            assert_eq!(resultant(&f, &g, m, n), det, "formal ({m},{n})");
            let det = determinant(sylvester_matrix(&g, &f, n, m));
            assert_eq!(resultant(&g, &f, n, m), det, "formal ({n},{m}) swapped");
        }
    }

    #[test]
    fn sturm_examples() {
        let f = Poly::from_rationals(&[r(-1, 4), r(0, 1), r(1, 1)]);
        assert_eq!(sturm_roots_in_interval(&f, &r(0, 1), &r(1, 1)), 1);
        let f = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_roots_in_interval(&f, &r(0, 1), &r(1, 1)), 0);
        let f = Poly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(sturm_roots_in_interval(&f, &r(-2, 1), &r(2, 1)), 3);
        // repeated roots counted once; closed right endpoint
        let f = Poly::from_ints(&[-1, 1]).pow(3).mul(&Poly::from_ints(&[0, 1]));
        assert_eq!(sturm_roots_in_interval(&f, &r(0, 1), &r(1, 1)), 1);
        assert_eq!(sturm_roots_in_interval(&f, &r(-1, 1), &r(1, 1)), 2);
    }

    #[test]
    fn eval_examples() {
        let i = FieldElement::zeta(4);
        assert!(Poly::from_ints(&[1, 0, 1]).eval(&i).unwrap().is_zero());
        assert!(cyclotomic_polynomial(12).eval(&FieldElement::zeta(12)).unwrap().is_zero());
        let v = Poly::from_ints(&[1, 0, 0, 2]).eval(&FieldElement::from_ratio(1, 2)).unwrap();
        assert_eq!(v, FieldElement::from_ratio(5, 4));
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn homogeneous_eval() {
        // z(z^3 + 2) at (1 : 1) with formal degree 4
        let p = Poly::from_ints(&[0, 2, 0, 0, 1]);
        let v = p.eval_homogeneous(4, &FieldElement::from_int(1), &FieldElement::from_int(1)).unwrap();
        assert_eq!(v, FieldElement::from_int(3));
        let v = p.eval_homogeneous(4, &FieldElement::from_int(1), &FieldElement::from_int(0)).unwrap();
        assert!(v.is_one());
    }
}
