//! Maps in B_d(C_p) ∩ B_d(C₂): a concrete map with verified automorphisms of
//! order p and of order 2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{cyclic_admissible, recognize_cyclic, CyclicCase, CyclicFamily, DihedralCase, DihedralFamily, SymmetryError};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::mobius::{generator_b, group_closure, rotation, GroupSpec, MobiusMap, MobiusOrder};
use crate::poly::Poly;
use crate::ratmap::{make_map, RationalMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedAuto {
    pub map: MobiusMap,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// ψ(1/u) = 1/ψ(u): automorphisms ω_p z and 1/z.
    Dihedral,
    /// ψ(−u) = ψ(u): automorphisms ω_p z and −z.
    EvenPsi,
    /// Common eigenvector of the tetrahedral generators acting on pairs of forms.
    Tetrahedral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub p: u32,
    pub d: usize,
    pub construction: Construction,
    /// The map in C_p normal form.
    pub family: CyclicFamily,
    pub map: RationalMap,
    pub verified_autos: Vec<VerifiedAuto>,
    pub group_claim: GroupSpec,
    /// Sends the order-2 automorphism to z ↦ −z.
    pub involution_conjugator: MobiusMap,
}

impl WitnessReport {
    /// Re-runs every check: the family builds the map, each listed map is an
    /// automorphism of the stated order, the listed maps generate a group of
    /// the claimed order, and the conjugator carries the involution to −z.
    pub fn verify(&self) -> Result<(), SymmetryError> {
        let fail = |s: String| Err(SymmetryError::NoWitness(s));
        if self.family.n() != self.p || self.family.degree() != self.d {
            return fail("family does not match (p, d)".into());
        }
        if self.family.build()? != self.map {
            return fail("family does not build the map".into());
        }
        for a in &self.verified_autos {
            if !self.map.is_automorphism(&a.map) {
                return fail(format!("{} is not an automorphism", a.map));
            }
            if a.map.order() != MobiusOrder::Finite(a.order) {
                return fail(format!("{} does not have order {}", a.map, a.order));
            }
        }
        if !self.verified_autos.iter().any(|a| a.order == self.p && a.map == rotation(self.p, a.map.field())) {
            return fail("rotation of order p missing".into());
        }
        let gens: Vec<MobiusMap> = self.verified_autos.iter().map(|a| a.map.clone()).collect();
        let closure = group_closure(&gens, 200).map_err(|e| SymmetryError::NoWitness(e.to_string()))?;
        if closure.len() != self.group_claim.order() {
            return fail(format!("closure has {} elements, claim {}", closure.len(), self.group_claim));
        }
        let inv = self
            .verified_autos
            .iter()
            .find(|a| a.order == 2)
            .ok_or_else(|| SymmetryError::NoWitness("no involution".into()))?;
        let m = &self.involution_conjugator;
        if m.compose(&inv.map).compose(&m.inverse()) != MobiusMap::from_ints(-1, 0, 0, 1).unwrap() {
            return fail("conjugator does not send the involution to -z".into());
        }
        Ok(())
    }

    pub fn involution(&self) -> &MobiusMap {
        &self.verified_autos.iter().find(|a| a.order == 2).expect("verified report has an involution").map
    }
}

fn verified(map: &RationalMap, autos: &[MobiusMap]) -> Result<Vec<VerifiedAuto>, SymmetryError> {
    autos
        .iter()
        .map(|t| {
            if !map.is_automorphism(t) {
                return Err(SymmetryError::NoWitness(format!("{t} is not an automorphism")));
            }
            match t.order() {
                MobiusOrder::Finite(k) => Ok(VerifiedAuto { map: t.clone(), order: k }),
                o => Err(SymmetryError::NoWitness(format!("{t} has order {o:?}"))),
            }
        })
        .collect()
}

fn cayley() -> MobiusMap {
    // (z − 1)/(z + 1) sends the fixed points ±1 of 1/z to 0 and ∞
    MobiusMap::from_ints(1, -1, 1, 1).unwrap()
}

/// A map of degree d with automorphisms of order p (odd prime) and 2.
///
/// d ≡ 1 (mod p): ψ = (2 + u^r)/(1 + 2u^r), so ψ(1/u) = 1/ψ(u).
/// d ≡ −1 (mod p): ψ = 1/u^r, again inversion-symmetric.
/// d = pr with r even: ψ = (1 + u^r)/u^r, even in u.
/// d = pr with r odd: no even ψ exists with b₀ = 0 and coprime numerator
/// and denominator (both would vanish at 0). For p = 3 the map is taken
/// from the tetrahedral group ⟨ω₃z, B⟩, admissible since d is odd. For
/// p ≥ 5 no group containing C_p and an involution is admissible for such
/// d, and `NoWitness` is returned.
pub fn lemma_witness(p: u32, d: usize) -> Result<WitnessReport, SymmetryError> {
    if p < 3 || !is_prime(p) {
        return Err(SymmetryError::NotAdmissible { d, detail: format!("{p} is not an odd prime") });
    }
    let cases = cyclic_admissible(d, p);
    let Some(&(case, r)) = cases.first() else {
        return Err(SymmetryError::NotAdmissible { d, detail: format!("d mod {p} is not in {{-1, 0, 1}}") });
    };
    match case {
        CyclicCase::A | CyclicCase::C => {
            let (dcase, a) = if case == CyclicCase::A {
                let mut a = vec![0i64; r + 1];
                a[0] = 2;
                a[r] = 1;
                (DihedralCase::I, a)
            } else {
                let mut a = vec![0i64; r + 1];
                a[0] = 1;
                (DihedralCase::II, a)
            };
            let fam = DihedralFamily::from_ints(p, r, 1, dcase, &a)?.to_cyclic()?;
            let map = fam.build()?;
            let field = Field::cyclotomic(p);
            let autos = verified(&map, &[rotation(p, &field), MobiusMap::inversion()])?;
            finish(p, d, Construction::Dihedral, fam, map, autos, GroupSpec::Dihedral(p), cayley())
        }
        CyclicCase::B if r % 2 == 0 => {
            let mut a = vec![0i64; r + 1];
            a[0] = 1;
            a[r] = 1;
            let mut b = vec![0i64; r + 1];
            b[r] = 1;
            let fam = CyclicFamily::from_ints(p, r, CyclicCase::B, &a, &b)?;
            let map = fam.build()?;
            let field = Field::cyclotomic(p);
            let autos = verified(&map, &[rotation(p, &field), MobiusMap::from_ints(-1, 0, 0, 1).unwrap()])?;
            let id = MobiusMap::identity(&Field::Rational);
            finish(p, d, Construction::EvenPsi, fam, map, autos, GroupSpec::Cyclic(2 * p), id)
        }
        CyclicCase::B if p == 3 => tetrahedral_witness(d),
        CyclicCase::B => Err(SymmetryError::NoWitness(format!(
            "d = {p}·{r} with r odd: an even ψ would have a₀ = b₀ = 0, and no group containing C{p} and an \
             involution (C{m}, D{p}k, A5) is admissible for d = {d}",
            m = 2 * p
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    p: u32,
    d: usize,
    construction: Construction,
    family: CyclicFamily,
    map: RationalMap,
    verified_autos: Vec<VerifiedAuto>,
    group_claim: GroupSpec,
    involution_conjugator: MobiusMap,
) -> Result<WitnessReport, SymmetryError> {
    let report = WitnessReport { p, d, construction, family, map, verified_autos, group_claim, involution_conjugator };
    report.verify()?;
    Ok(report)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Coefficients of (αx + βy)^i (γx + δy)^j in the basis x^k y^{i+j−k}.
fn binomial_form(alpha: &FieldElement, beta: &FieldElement, gamma: &FieldElement, delta: &FieldElement, i: usize, j: usize, field: &Field) -> Vec<FieldElement> {
    let lin = |x: &FieldElement, y: &FieldElement| Poly::new(field.clone(), vec![y.clone(), x.clone()]).unwrap();
    let f = lin(alpha, beta).pow(i as u32).mul(&lin(gamma, delta).pow(j as u32));
    (0..=i + j).map(|k| f.coeff(k)).collect()
}

/// Matrix of F ↦ M⁻¹·F(M·v) on pairs (P, Q) of degree-d binary forms, with
/// M of finite order in GL₂ (so no scalar correction is needed).
fn action_matrix(m: &MobiusMap, d: usize, field: &Field) -> Matrix {
    let dim = 2 * (d + 1);
    let e = |x: &FieldElement| field.embed(x).unwrap();
    let (a, b, c, dd) = (e(m.a()), e(m.b()), e(m.c()), e(m.d()));
    let det_inv = m.det().inv().unwrap();
    let inv = [[&dd * &det_inv, -(&b * &det_inv)], [-(&c * &det_inv), &a * &det_inv]];
    let mut mat = Matrix::zeros(field, dim, dim);
    for k in 0..=d {
        // x^k y^(d−k) evaluated at (ax + by, cx + dy)
        let sub = binomial_form(&a, &b, &c, &dd, k, d - k, field);
        for (slot, col) in [(0usize, k), (1, d + 1 + k)] {
            // basis vector lives in component `slot`; M⁻¹ mixes the two components
            for (row_comp, coef) in [(0usize, &inv[0][slot]), (1, &inv[1][slot])] {
                if coef.is_zero() {
                    continue;
                }
                for (j, s) in sub.iter().enumerate() {
                    if !s.is_zero() {
                        let row = row_comp * (d + 1) + j;
                        let v = mat.get(row, col) + &(coef * s);
                        mat.set(row, col, v);
                    }
                }
            }
        }
    }
    mat
}

/// Degree-d map commuting with ω₃z and B, found as a common eigenvector of
/// their actions on pairs of forms; returned in C₃ normal form.
fn tetrahedral_witness(d: usize) -> Result<WitnessReport, SymmetryError> {
    let field = Field::cyclotomic(12);
    let z12 = field.root_of_unity(12, 1).unwrap();
    let sqrt3 = &z12 + &z12.inv().unwrap();
    let s = &sqrt3 - &field.one();
    let t = rotation(3, &field);
    let b = generator_b();
    // B² = 3s²·I; rescale to an honest involution in GL₂
    let k = (&s * &sqrt3).inv().unwrap();
    let b_unit = MobiusMap::new(b.a() * &k, b.b() * &k, b.c() * &k, b.d() * &k).unwrap();
    let t_mat = action_matrix(&t, d, &field);
    let b_mat = action_matrix(&b_unit, d, &field);
    let dim = 2 * (d + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
    for alpha_k in 0..3 {
        let alpha = field.root_of_unity(3, alpha_k).unwrap();
        for beta in [1i64, -1] {
            let mut stacked = Matrix::zeros(&field, 2 * dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    let mut tv = t_mat.get(i, j).clone();
                    let mut bv = b_mat.get(i, j).clone();
                    if i == j {
                        tv = &tv - &alpha;
                        bv = &bv - &FieldElement::from_int(beta);
                    }
                    stacked.set(i, j, tv);
                    stacked.set(dim + i, j, bv);
                }
            }
            let kernel = stacked.kernel();
            if kernel.is_empty() {
                continue;
            }
            for _ in 0..20 {
                let mut v = vec![field.zero(); dim];
                for basis in &kernel {
                    let c = FieldElement::from_int(rng.gen_range(-9..=9));
                    for (x, y) in v.iter_mut().zip(basis) {
                        *x = &*x + &(&c * y);
                    }
                }
                let p = Poly::new(field.clone(), v[..=d].to_vec()).unwrap();
                let q = Poly::new(field.clone(), v[d + 1..].to_vec()).unwrap();
                let Ok(map) = make_map(&p, &q) else { continue };
                if map.degree() != d {
                    continue;
                }
                return tetrahedral_report(d, map, &t, &b, &sqrt3, &s);
            }
        }
    }
    Err(SymmetryError::NoWitness(format!("no tetrahedral map of degree {d} found")))
}

fn tetrahedral_report(
    d: usize,
    map: RationalMap,
    t: &MobiusMap,
    b: &MobiusMap,
    sqrt3: &FieldElement,
    s: &FieldElement,
) -> Result<WitnessReport, SymmetryError> {
    // fixed points of B: s(1 ± √3)/2
    let half = FieldElement::from_ratio(1, 2);
    let one = FieldElement::from_int(1);
    let f1 = &(s * &(&one + sqrt3)) * &half;
    let f2 = &(s * &(&one - sqrt3)) * &half;
    let rec = recognize_cyclic(&map, 3)?;
    let (map, b, f1, f2) = if rec.inverted {
        let inv = MobiusMap::inversion();
        (map.conjugate(&inv), inv.compose(b).compose(&inv), f1.inv()?, f2.inv()?)
    } else {
        (map, b.clone(), f1, f2)
    };
    let conj = MobiusMap::new(one.clone(), -&f1, one, -&f2).unwrap();
    let autos = verified(&map, &[t.clone(), b])?;
    finish(3, d, Construction::Tetrahedral, rec.family, map, autos, GroupSpec::A4, conj)
}
