//! Dense polynomials over ℚ stored as ascending coefficient vectors.
//!
//! These are the internal workhorses behind cyclotomic reduction and
//! inversion, and behind Sturm sequences. Every function returns trimmed
//! vectors (no trailing zeros); the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub(crate) fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn add(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let n = p.len().max(q.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = p.get(i).cloned().unwrap_or_else(Rational::zero);
        let b = q.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(a + b);
    }
    trim(out)
}

pub(crate) fn neg(p: &[Rational]) -> Vec<Rational> {
    p.iter().map(|c| -c).collect()
}

pub(crate) fn sub(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    add(p, &neg(q))
}

pub(crate) fn mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    trim(out)
}

pub(crate) fn scale(p: &[Rational], s: &Rational) -> Vec<Rational> {
    if s.is_zero() {
        return Vec::new();
    }
    p.iter().map(|c| c * s).collect()
}

/// Euclidean division `p = quo * q + rem`. Panics on `q = 0`.
pub(crate) fn divrem(p: &[Rational], q: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dq = degree(q).expect("division by the zero polynomial");
    let mut rem = trim(p.to_vec());
    if rem.len() <= dq {
        return (Vec::new(), rem);
    }
    let lead_inv = q[dq].recip();
    let mut quo = vec![Rational::zero(); rem.len() - dq];
    while let Some(dr) = degree(&rem) {
        if dr < dq {
            break;
        }
        let t = &rem[dr] * &lead_inv;
        let shift = dr - dq;
        for (j, c) in q[..=dq].iter().enumerate() {
            if !c.is_zero() {
                rem[shift + j] -= &t * c;
            }
        }
        rem[dr] = Rational::zero();
        quo[shift] = t;
        rem = trim(rem);
    }
    (trim(quo), rem)
}

pub(crate) fn rem(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    divrem(p, q).1
}

pub(crate) fn monic(p: &[Rational]) -> Vec<Rational> {
    match p.last() {
        Some(lc) => {
            let inv = lc.recip();
            p.iter().map(|c| c * &inv).collect()
        }
        None => Vec::new(),
    }
}

pub(crate) fn gcd(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut a = trim(p.to_vec());
    let mut b = trim(q.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Returns `s` with `s * a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
pub(crate) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // Extended Euclid tracking only the coefficient of `a`.
    let mut r0 = trim(m.to_vec());
    let mut r1 = rem(a, m);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let inv = r0[0].recip();
    Some(rem(&scale(&s0, &inv), m))
}

pub(crate) fn derivative(p: &[Rational]) -> Vec<Rational> {
    let d = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
        .collect();
    trim(d)
}

pub(crate) fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sign of `p(x)` as -1, 0, 1.
pub(crate) fn sign_at(p: &[Rational], x: &Rational) -> i8 {
    let v = eval(p, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
