//! Certified complex embeddings with dyadic interval endpoints.
//!
//! Every box produced here provably contains the image of the exact value
//! under ζₙ ↦ e^{2πi/n} and the principal branch of √δ. Endpoints are
//! rounded outward to dyadic rationals at the working precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::CycloElement;
use super::quad::QuadElement;
use super::{FieldElement, Rational};

fn pow2(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits)
}

fn round_down(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    (x * &s).floor() / s
}

fn round_up(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    (x * &s).ceil() / s
}

/// A closed real interval [lo, hi].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "super::serde_rational")]
    pub lo: Rational,
    #[serde(with = "super::serde_rational")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    /// Outward-rounded enclosure of a rational at `bits` fractional bits.
    pub fn around(x: &Rational, bits: u32) -> Self {
        Interval { lo: round_down(x, bits), hi: round_up(x, bits) }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn round_out(&self, bits: u32) -> Self {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&o.lo).clone();
        let hi = (&self.hi).min(&o.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Enclosure of √x over the nonnegative part of the interval.
    fn sqrt(&self, bits: u32) -> Self {
        let scale = BigInt::one() << (2 * bits);
        let denom = Rational::from_integer(BigInt::one() << bits);
        let lo = if self.lo.is_positive() {
            let n = (&self.lo * Rational::from_integer(scale.clone())).floor().to_integer();
            Rational::from_integer(n.sqrt()) / &denom
        } else {
            Rational::zero()
        };
        let hi = if self.hi.is_positive() {
            let n = (&self.hi * Rational::from_integer(scale)).ceil().to_integer();
            let r = n.sqrt();
            let r = if &r * &r == n { r } else { r + 1 };
            Rational::from_integer(r) / &denom
        } else {
            Rational::zero()
        };
        Interval { lo, hi }
    }
}

/// A rectangle in ℂ with dyadic corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn real(re: Interval) -> Self {
        ComplexBox { re, im: Interval::zero() }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn width(&self) -> Rational {
        self.re.width().max(self.im.width())
    }

    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        Some(ComplexBox { re: self.re.intersect(&o.re)?, im: self.im.intersect(&o.im)? })
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBox { re, im }
    }

    pub fn mul_real(&self, t: &Interval) -> Self {
        ComplexBox { re: self.re.mul(t), im: self.im.mul(t) }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexBox { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }
}

/// Enclosure of a polynomial with boxed coefficients (ascending) over a real
/// parameter interval, in centered form: the coefficients are Taylor-shifted
/// to the midpoint m and the shifted polynomial is evaluated by Horner on
/// [−h, h]. The excess width is O(h), unlike plain Horner on [lo, hi].
pub fn eval_real_interval(coeffs: &[ComplexBox], t: &Interval, bits: u32) -> ComplexBox {
    let two = Rational::from_integer(BigInt::from(2));
    let m = Interval::point((&t.lo + &t.hi) / &two);
    let h = t.width() / &two;
    let s = Interval { lo: -h.clone(), hi: h };
    let mut a: Vec<ComplexBox> = coeffs.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            a[j] = a[j].add(&a[j + 1].mul_real(&m)).round_out(bits);
        }
    }
    let mut acc = ComplexBox::real(Interval::zero());
    for c in a.iter().rev() {
        acc = acc.mul_real(&s).add(c).round_out(bits);
    }
    acc
}

/// Alternating-series enclosure of atan(1/k).
fn atan_inv(k: u32, bits: u32) -> Interval {
    let eps = Rational::new(BigInt::one(), BigInt::one() << (bits + 8));
    let k = Rational::from_integer(BigInt::from(k));
    let k2 = &k * &k;
    let mut pow = k.clone(); // k^{2j+1}
    let mut sum = Rational::zero();
    let mut j: u64 = 0;
    loop {
        let term = Rational::one() / (&pow * Rational::from_integer(BigInt::from(2 * j + 1)));
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow *= &k2;
        j += 1;
        let next = Rational::one() / (&pow * Rational::from_integer(BigInt::from(2 * j + 1)));
        if next < eps {
            return Interval::new(&sum - &next, &sum + &next).round_out(bits + 4);
        }
    }
}

fn pi(bits: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&bits) {
        return p.clone();
    }
    let a = atan_inv(5, bits + 8);
    let b = atan_inv(239, bits + 8);
    let sixteen = Interval::point(Rational::from_integer(16.into()));
    let four = Interval::point(Rational::from_integer(4.into()));
    let p = sixteen.mul(&a).sub(&four.mul(&b)).round_out(bits + 4);
    cache.lock().unwrap().insert(bits, p.clone());
    p
}

/// Enclosures of (cos x, sin x) for rational |x| ≤ 8.
fn cos_sin(x: &Rational, bits: u32) -> (Interval, Interval) {
    let eps = Rational::new(BigInt::one(), BigInt::one() << (bits + 8));
    let abs_x = x.abs();
    let mut term = Rational::one(); // x^k / k!
    let mut cos = Rational::zero();
    let mut sin = Rational::zero();
    let mut k: u64 = 0;
    loop {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = term * x / Rational::from_integer(BigInt::from(k));
        // Once k exceeds |x| the tails of both alternating series are
        // dominated by their first omitted term.
        if term.abs() < eps && Rational::from_integer(BigInt::from(k)) > abs_x {
            let err = term.abs();
            let c = Interval::new(&cos - &err, &cos + &err);
            let s = Interval::new(&sin - &err, &sin + &err);
            return (c, s);
        }
    }
}

/// Box around ζₙ = e^{2πi/n}.
fn zeta_box(n: u32, bits: u32) -> ComplexBox {
    if n == 1 {
        return ComplexBox::real(Interval::point(Rational::one()));
    }
    if n == 2 {
        return ComplexBox::real(Interval::point(-Rational::one()));
    }
    let p = pi(bits + 8);
    let two_over_n = Rational::new(BigInt::from(2), BigInt::from(n));
    let theta = Interval::new(&p.lo * &two_over_n, &p.hi * &two_over_n);
    let x = round_down(&theta.lo, bits + 8);
    let radius = &theta.hi - &x;
    let (c, s) = cos_sin(&x, bits + 8);
    let widen = Interval::new(-radius.clone(), radius);
    ComplexBox { re: c.add(&widen), im: s.add(&widen) }.round_out(bits + 4)
}

fn zeta_powers(n: u32, bits: u32) -> Arc<Vec<ComplexBox>> {
    type Cache = Mutex<HashMap<(u32, u32), Arc<Vec<ComplexBox>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(n, bits)) {
        return p.clone();
    }
    let m = super::cyclo::totient(n) as usize;
    let z = zeta_box(n, bits + 16);
    let mut out = Vec::with_capacity(m);
    let mut cur = ComplexBox::real(Interval::point(Rational::one()));
    for _ in 0..m {
        out.push(cur.round_out(bits));
        cur = cur.mul(&z).round_out(bits + 16);
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert((n, bits), out.clone());
    out
}

fn embed_cyclo(x: &CycloElement, bits: u32) -> ComplexBox {
    if let Some(q) = x.to_rational() {
        return ComplexBox::real(Interval::around(&q, bits));
    }
    let powers = zeta_powers(x.conductor(), bits);
    let mut acc = ComplexBox::real(Interval::zero());
    for (c, p) in x.coeffs().iter().zip(powers.iter()) {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&p.mul(&ComplexBox::real(Interval::around(c, bits))));
    }
    acc.round_out(bits)
}

fn sqrt_box(delta: &ComplexBox, real_sign: Option<i8>, bits: u32) -> Option<ComplexBox> {
    match real_sign {
        Some(s) if s > 0 => Some(ComplexBox::real(delta.re.sqrt(bits))),
        Some(_) => Some(ComplexBox { re: Interval::zero(), im: delta.re.neg().sqrt(bits) }),
        None => {
            if delta.im.contains_zero() {
                return None;
            }
            // √(x+iy) = √((|w|+x)/2) + i·sgn(y)·√((|w|−x)/2)
            let modulus = delta.re.mul(&delta.re).add(&delta.im.mul(&delta.im)).round_out(bits).sqrt(bits);
            let half = Interval::point(Rational::new(BigInt::one(), BigInt::from(2)));
            let re = modulus.add(&delta.re).mul(&half).sqrt(bits);
            let im = modulus.sub(&delta.re).mul(&half).sqrt(bits);
            let im = if delta.im.lo.is_positive() { im } else { im.neg() };
            Some(ComplexBox { re, im })
        }
    }
}

fn embed_quad(x: &QuadElement, bits: u32) -> Option<ComplexBox> {
    let a = embed_cyclo(x.a(), bits);
    if x.b().is_zero() {
        return Some(a);
    }
    let field = x.field();
    let delta = embed_cyclo(field.delta(), bits + 4);
    let s = sqrt_box(&delta, field.real_delta_sign(), bits + 4)?;
    let b = embed_cyclo(x.b(), bits);
    Some(a.add(&b.mul(&s)).round_out(bits))
}

fn embed_at(x: &FieldElement, bits: u32) -> Option<ComplexBox> {
    match x {
        FieldElement::Rational(q) => Some(ComplexBox::real(Interval::around(q, bits))),
        FieldElement::Cyclo(c) => Some(embed_cyclo(c, bits)),
        FieldElement::Quad(q) => embed_quad(q, bits),
    }
}

/// A box of width at most 2^{1−precision} containing the embedded value.
pub fn interval_embed(x: &FieldElement, precision: u32) -> ComplexBox {
    let target = Rational::new(BigInt::one(), BigInt::one() << precision);
    let mut work = precision + 24;
    loop {
        if let Some(b) = embed_at(x, work) {
            if b.width() <= target {
                return b.round_out(precision + 2);
            }
        }
        work += 32;
    }
}

/// Refines `previous` to `precision` bits, keeping the result nested inside it.
pub fn refine_embedding(x: &FieldElement, previous: &ComplexBox, precision: u32) -> ComplexBox {
    let fresh = interval_embed(x, precision);
    fresh.intersect(previous).expect("enclosures of the same value intersect")
}

/// Sign of a real field element (its imaginary embedding must vanish).
pub fn real_sign(x: &FieldElement) -> i8 {
    if x.is_zero() {
        return 0;
    }
    let mut bits = 64;
    loop {
        let b = interval_embed(x, bits);
        if b.re.lo.is_positive() {
            return 1;
        }
        if b.re.hi.is_negative() {
            return -1;
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(100);
        // 3.14159265358979323846264338327950288...
        assert!(p.lo > q(3141592653589793, 1000000000000000));
        assert!(p.hi < q(3141592653589794, 1000000000000000));
        assert!(p.width() < q(1, 1 << 60));
    }

    #[test]
    fn zeta_4_is_i() {
        let b = zeta_box(4, 60);
        assert!(b.contains(&Rational::zero(), &Rational::one()));
        assert!(b.width() < q(1, 1 << 50));
    }

    #[test]
    fn cos_of_pi_over_three() {
        // ζ6 = 1/2 + i√3/2
        let b = zeta_box(6, 80);
        assert!(b.re.contains(&q(1, 2)));
        let s = b.im.mul(&b.im);
        assert!(s.contains(&q(3, 4)));
    }
}
