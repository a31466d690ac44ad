//! Elements of ℚ(ζₙ) in the power basis modulo the cyclotomic polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{qpoly, Rational};

/// Per-conductor data shared by every element of ℚ(ζₙ).
#[derive(Debug)]
pub(crate) struct CycloData {
    /// Φₙ, ascending, monic.
    pub phi: Vec<Rational>,
    /// ζⁱ reduced modulo Φₙ for i in 0..n.
    pub powers: Vec<Vec<Rational>>,
}

impl CycloData {
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

pub(crate) fn data(n: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let built = Arc::new(build_data(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

fn build_data(n: u32) -> CycloData {
    let phi = cyclotomic_coeffs(n);
    let m = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![Rational::zero(); m];
    cur[0] = Rational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let mut next = vec![Rational::zero(); m + 1];
        next[1..].clone_from_slice(&cur);
        reduce_monic(&mut next, &phi);
        next.truncate(m);
        cur = next;
    }
    CycloData { phi, powers }
}

/// Coefficients of Φₙ computed as (xⁿ − 1) / ∏_{d | n, d < n} Φ_d.
pub(crate) fn cyclotomic_coeffs(n: u32) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomial needs n ≥ 1");
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let mut table: HashMap<u32, Vec<Rational>> = HashMap::new();
    for &d in &divisors {
        let mut p = vec![Rational::zero(); d as usize + 1];
        p[0] = -Rational::one();
        p[d as usize] = Rational::one();
        for (&e, phi_e) in table.iter() {
            if d % e == 0 {
                p = qpoly::divrem(&p, phi_e).0;
            }
        }
        table.insert(d, p);
    }
    table.remove(&n).unwrap()
}

/// Reduces `p` in place modulo the monic polynomial `m`; the result occupies
/// the first `deg m` slots.
fn reduce_monic(p: &mut Vec<Rational>, m: &[Rational]) {
    let dm = m.len() - 1;
    if p.len() <= dm {
        p.resize(dm, Rational::zero());
        return;
    }
    for i in (dm..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let t = std::mem::take(&mut p[i]);
        for (j, c) in m[..dm].iter().enumerate() {
            if !c.is_zero() {
                p[i - dm + j] -= &t * c;
            }
        }
    }
    p.truncate(dm);
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of ℚ(ζₙ) as a residue modulo Φₙ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    /// Builds an element from power-basis coefficients, reducing modulo Φₙ.
    pub fn new(conductor: u32, coeffs: Vec<Rational>) -> Self {
        let data = data(conductor);
        let mut c = coeffs;
        reduce_monic(&mut c, &data.phi);
        CycloElement { conductor, coeffs: c }
    }

    pub fn zero(conductor: u32) -> Self {
        let m = data(conductor).degree();
        CycloElement { conductor, coeffs: vec![Rational::zero(); m] }
    }

    pub fn from_rational(conductor: u32, q: Rational) -> Self {
        let mut e = Self::zero(conductor);
        e.coeffs[0] = q;
        e
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    /// ζₙᵏ for any integer k.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let d = data(conductor);
        let idx = k.rem_euclid(conductor as i64) as usize;
        CycloElement { conductor, coeffs: d.powers[idx].clone() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloElement { conductor: self.conductor, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycloElement { conductor: self.conductor, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.conductor, other.conductor);
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        let data = data(self.conductor);
        let m = data.degree();
        let mut prod = vec![Rational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_monic(&mut prod, &data.phi);
        CycloElement { conductor: self.conductor, coeffs: prod }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.conductor, self.coeffs[0].recip()));
        }
        let data = data(self.conductor);
        let inv = qpoly::inverse_mod(&self.coeffs, &data.phi)?;
        Some(Self::new(self.conductor, inv))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// Complex conjugation under ζₙ ↦ e^{2πi/n}: ζᵏ ↦ ζ⁻ᵏ.
    pub fn conj(&self) -> Self {
        let data = data(self.conductor);
        let n = self.conductor as usize;
        let m = data.degree();
        let mut out = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &data.powers[(n - k % n) % n];
            for (o, p) in out.iter_mut().zip(img) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycloElement { conductor: self.conductor, coeffs: out }
    }

    /// Embeds ℚ(ζₙ) into ℚ(ζₘ) for n | m via ζₙ = ζₘ^{m/n}.
    pub fn lift(&self, target: u32) -> Option<Self> {
        if target % self.conductor != 0 {
            return None;
        }
        if target == self.conductor {
            return Some(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let data = data(target);
        let mut out = vec![Rational::zero(); data.degree()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &data.powers[(k * step) % target as usize];
            for (o, p) in out.iter_mut().zip(img) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Some(CycloElement { conductor: target, coeffs: out })
    }

    /// Field norm down to ℚ, as the product of all Galois conjugates
    /// (ζ ↦ ζᵏ with gcd(k, n) = 1).
    pub fn norm(&self) -> Rational {
        let n = self.conductor;
        let mut acc = Self::one(n);
        for k in 1..=n.max(1) {
            if num_integer::gcd(k, n) == 1 {
                acc = acc.mul(&self.galois(k));
            }
        }
        acc.to_rational().expect("norm lies in ℚ")
    }

    /// The automorphism ζ ↦ ζᵏ (k coprime to n).
    pub fn galois(&self, k: u32) -> Self {
        let data = data(self.conductor);
        let n = self.conductor as usize;
        let mut out = vec![Rational::zero(); data.degree()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &data.powers[(i * k as usize) % n];
            for (o, p) in out.iter_mut().zip(img) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycloElement { conductor: self.conductor, coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &t) in expected.iter().enumerate() {
            assert_eq!(totient(i as u32 + 1), t);
        }
    }

    #[test]
    fn phi_12_by_division() {
        // x^12 - 1 = Φ1 Φ2 Φ3 Φ4 Φ6 Φ12; Φ12 = x^4 - x^2 + 1
        assert_eq!(cyclotomic_coeffs(12), vec![int(1), int(0), int(-1), int(0), int(1)]);
        assert_eq!(cyclotomic_coeffs(1), vec![int(-1), int(1)]);
        assert_eq!(cyclotomic_coeffs(4), vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn zeta_orders_up_to_30() {
        for n in 1..=30u32 {
            let z = CycloElement::zeta_pow(n, 1);
            let one = CycloElement::one(n);
            let mut acc = one.clone();
            for k in 1..=n {
                acc = acc.mul(&z);
                if k < n {
                    assert_ne!(acc, one, "ζ_{n}^{k} = 1");
                } else {
                    assert_eq!(acc, one, "ζ_{n}^{n} ≠ 1");
                }
            }
        }
    }

    #[test]
    fn norm_of_one_minus_zeta_p() {
        // N(1 - ζ_p) = p for prime p
        for p in [3u32, 5, 7, 11] {
            let e = CycloElement::one(p).sub(&CycloElement::zeta_pow(p, 1));
            assert_eq!(e.norm(), int(p as i64));
        }
    }
}
