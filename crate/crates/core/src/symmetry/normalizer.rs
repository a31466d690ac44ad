//! Automorphisms of the forms λz and μ/z.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::lift_for_roots;
use crate::field::{Field, FieldElement, Rational};
use crate::mobius::MobiusMap;
use crate::ratmap::RationalMap;

/// All automorphisms of φ of the form λz or μ/z, identity included.
///
/// Scalings: λφ(z/λ) = φ(z) forces λᵉ = 1 for every difference e of the
/// exponents {d + 1 − k : p_k ≠ 0} ∪ {d − k : q_k ≠ 0}, so λ ranges over the
/// g-th roots of unity with g the gcd of those differences. Inversions:
/// μ/φ(μ/z) = φ(z) forces supp P = d − supp Q and a system μ^{e_i} = ρ_i,
/// whose solutions are searched among rational multiples of roots of unity
/// of the working field. Every candidate is verified exactly.
pub fn aut_in_normalizer(map: &RationalMap, n: u32) -> Vec<MobiusMap> {
    let d = map.degree();
    let (p, q) = (map.num(), map.den());
    let supp = |poly: &crate::poly::Poly| -> Vec<usize> {
        poly.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect()
    };
    let (sp, sq) = (supp(p), supp(q));
    let exps: Vec<i64> =
        sp.iter().map(|&k| (d + 1 - k) as i64).chain(sq.iter().map(|&k| (d - k) as i64)).collect();
    let g = exps.iter().map(|e| (e - exps[0]).abs()).fold(0i64, |acc, x| acc.gcd(&x)) as u32;
    if g == 0 {
        return Vec::new();
    }

    let Some((work, field)) = lift_for_roots(map, g.lcm(&n)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for lambda in roots_of_unity_dividing(&field, g) {
        let t = MobiusMap::scaling(lambda);
        if work.is_automorphism(&t) {
            out.push(t);
        }
    }

    // inversions
    let mut mirrored: Vec<usize> = sq.iter().map(|&k| d - k).collect();
    mirrored.sort_unstable();
    if mirrored != sp {
        return out;
    }
    let (wp, wq) = (work.num(), work.den());
    let k0 = sq[0];
    // c = μ^{k0+1} q_{k0} / p_{d−k0}; each coefficient relation gives μ^e = ρ
    let base = &wq.coeff(k0) / &wp.coeff(d - k0);
    let mut eqs: Vec<(i64, FieldElement)> = Vec::new();
    for &k in &sq {
        let lhs = &wq.coeff(k) / &wp.coeff(d - k);
        eqs.push((k as i64 - k0 as i64, &base / &lhs));
    }
    for &j in &sp {
        let lhs = &wp.coeff(j) / &wq.coeff(d - j);
        eqs.push((j as i64 - k0 as i64 - 1, &base / &lhs));
    }
    let h = eqs.iter().fold(0i64, |acc, (e, _)| acc.gcd(e)) as u32;
    if h == 0 {
        return out;
    }
    let roots = roots_of_unity_dividing(&field, field_root_count(&field));
    let mut seen: Vec<FieldElement> = Vec::new();
    // pick an equation with nonzero exponent to generate candidates
    let (e0, rho0) = eqs.iter().find(|(e, _)| *e != 0).cloned().unwrap();
    for eta in &roots {
        // μ = t·η with t rational: t^{e0} = ρ₀ / η^{e0}
        let Ok(x) = rho0.try_div(&eta.pow(e0).unwrap()) else { continue };
        let Some(xq) = x.to_rational() else { continue };
        for t in rational_roots(&xq, e0) {
            let mu = eta * &FieldElement::Rational(t);
            if mu.is_zero() || seen.contains(&mu) {
                continue;
            }
            seen.push(mu.clone());
            let cand = MobiusMap::inversion_by(field.embed(&mu).unwrap());
            if work.is_automorphism(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Number of roots of unity in ℚ(ζ_m): lcm(2, m).
fn field_root_count(field: &Field) -> u32 {
    let m = field.conductor();
    if m % 2 == 0 {
        m
    } else {
        2 * m
    }
}

/// Roots of unity of order dividing `g` that lie in `field`.
fn roots_of_unity_dividing(field: &Field, g: u32) -> Vec<FieldElement> {
    let w = field_root_count(field);
    let k = w.gcd(&g);
    (0..k).map(|j| field.root_of_unity(k, j as i64).unwrap()).collect()
}

/// Rational t with t^e = x (e may be negative).
fn rational_roots(x: &Rational, e: i64) -> Vec<Rational> {
    if x.is_zero() {
        return Vec::new();
    }
    let x = if e < 0 { x.recip() } else { x.clone() };
    let e = e.unsigned_abs() as u32;
    let root = |n: &num_bigint::BigInt| -> Option<num_bigint::BigInt> {
        let r = n.abs().nth_root(e);
        (r.pow(e) == n.abs()).then_some(r)
    };
    let (Some(a), Some(b)) = (root(x.numer()), root(x.denom())) else {
        return Vec::new();
    };
    let t = Rational::new(a, b);
    match (e % 2 == 0, x.is_negative()) {
        (true, true) => Vec::new(),
        (true, false) => vec![t.clone(), -t],
        (false, true) => vec![-t],
        (false, false) => vec![t],
    }
}
