//! Maps with cyclic and dihedral symmetry in normal form φ(z) = z·ψ(zⁿ),
//! admissibility criteria, and witnesses for maps with two symmetries.

mod normalizer;
mod witness;

use std::fmt;

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::mobius::{rotation, GroupSpec, MobiusMap};
use crate::poly::{poly_gcd, Poly};
use crate::ratmap::{make_map, MapError, ProjPoint, RationalMap};

pub use normalizer::aut_in_normalizer;
pub use witness::{lemma_witness, VerifiedAuto, WitnessReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("coefficient condition violated: {0}")]
    CoefficientConditionViolated(String),
    #[error("expected degree {expected}, got {actual}")]
    UnexpectedDegree { expected: usize, actual: usize },
    #[error("group not admissible for degree {d}: {detail}")]
    NotAdmissible { d: usize, detail: String },
    #[error("fixed-point behavior mismatch: {0}")]
    BehaviorMismatch(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("map is not in the expected normal form: {0}")]
    NotInNormalForm(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which congruence d ≡ 1, 0, −1 (mod n) the family realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CyclicCase {
    /// d = nr + 1, a_r·b₀ ≠ 0.
    A,
    /// d = nr, a_r ≠ 0, b₀ = 0.
    B,
    /// d = nr − 1, a_r = b₀ = 0, b_r ≠ 0.
    C,
}

impl CyclicCase {
    pub fn degree(&self, n: u32, r: usize) -> usize {
        let nr = n as usize * r;
        match self {
            CyclicCase::A => nr + 1,
            CyclicCase::B => nr,
            CyclicCase::C => nr.saturating_sub(1),
        }
    }
}

impl fmt::Display for CyclicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DihedralCase {
    /// d = nr + 1, a_r ≠ 0.
    I,
    /// d = nr − 1, a_r = 0, a₀ ≠ 0.
    II,
}

impl fmt::Display for DihedralCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// All (case, r) with a Cₙ-normal form of degree d.
pub fn cyclic_admissible(d: usize, n: u32) -> Vec<(CyclicCase, usize)> {
    let n = n as usize;
    assert!(n >= 2);
    let mut out = Vec::new();
    if d % n == 1 {
        out.push((CyclicCase::A, (d - 1) / n));
    }
    if d % n == 0 {
        out.push((CyclicCase::B, d / n));
    }
    if d % n == n - 1 {
        out.push((CyclicCase::C, (d + 1) / n));
    }
    out
}

pub fn dihedral_admissible(d: usize, n: u32) -> Vec<(DihedralCase, usize)> {
    let n = n as usize;
    assert!(n >= 2);
    let mut out = Vec::new();
    if d % n == 1 {
        out.push((DihedralCase::I, (d - 1) / n));
    }
    if d % n == n - 1 {
        out.push((DihedralCase::II, (d + 1) / n));
    }
    out
}

pub fn platonic_admissible(d: usize, g: GroupSpec) -> bool {
    match g {
        GroupSpec::A4 => d % 2 == 1,
        GroupSpec::S4 => d.gcd(&6) == 1,
        GroupSpec::A5 => matches!(d % 30, 1 | 11 | 19 | 21),
        GroupSpec::Cyclic(n) => !cyclic_admissible(d, n).is_empty(),
        GroupSpec::Dihedral(n) => !dihedral_admissible(d, n).is_empty(),
    }
}

/// ψ(u) = Σ aₖuᵏ / Σ bₖuᵏ for φ(z) = z·ψ(zⁿ), validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFamily {
    n: u32,
    r: usize,
    case: CyclicCase,
    field: Field,
    a: Vec<FieldElement>,
    b: Vec<FieldElement>,
}

impl CyclicFamily {
    pub fn new(
        n: u32,
        r: usize,
        case: CyclicCase,
        a: Vec<FieldElement>,
        b: Vec<FieldElement>,
    ) -> Result<Self, SymmetryError> {
        let mut field = Field::Rational;
        for c in a.iter().chain(&b) {
            field = field.join(&c.field())?;
        }
        Self::new_in(&field, n, r, case, a, b)
    }

    pub fn new_in(
        field: &Field,
        n: u32,
        r: usize,
        case: CyclicCase,
        a: Vec<FieldElement>,
        b: Vec<FieldElement>,
    ) -> Result<Self, SymmetryError> {
        let bad = |s: &str| SymmetryError::CoefficientConditionViolated(s.to_string());
        if n < 2 {
            return Err(bad("n must be at least 2"));
        }
        if a.len() != r + 1 || b.len() != r + 1 {
            return Err(bad("coefficient vectors must have length r + 1"));
        }
        let a = a.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>, _>>()?;
        let b = b.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>, _>>()?;
        match case {
            CyclicCase::A if a[r].is_zero() || b[0].is_zero() => return Err(bad("case A needs a_r·b_0 ≠ 0")),
            CyclicCase::B if a[r].is_zero() || !b[0].is_zero() => return Err(bad("case B needs a_r ≠ 0 and b_0 = 0")),
            CyclicCase::C if !a[r].is_zero() || !b[0].is_zero() || b[r].is_zero() => {
                return Err(bad("case C needs a_r = b_0 = 0 and b_r ≠ 0"))
            }
            _ => {}
        }
        if case.degree(n, r) == 0 {
            return Err(bad("family degree is zero"));
        }
        let fam = CyclicFamily { n, r, case, field: field.clone(), a, b };
        let g = poly_gcd(&fam.num_poly(), &fam.den_poly()).map_err(|_| bad("ψ is 0/0"))?;
        if g.degree() != Some(0) {
            return Err(bad("gcd(Σ a_k u^k, Σ b_k u^k) is not constant"));
        }
        fam.build()?;
        Ok(fam)
    }

    pub fn from_ints(n: u32, r: usize, case: CyclicCase, a: &[i64], b: &[i64]) -> Result<Self, SymmetryError> {
        let v = |s: &[i64]| s.iter().map(|&x| FieldElement::from_int(x)).collect();
        Self::new(n, r, case, v(a), v(b))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn case(&self) -> CyclicCase {
        self.case
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn b(&self) -> &[FieldElement] {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.case.degree(self.n, self.r)
    }

    /// (a₀, …, a_r, b₀, …, b_r).
    pub fn coefficient_vector(&self) -> Vec<FieldElement> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    pub fn with_vector(&self, field: &Field, v: Vec<FieldElement>) -> Result<Self, SymmetryError> {
        let (a, b) = v.split_at(self.r + 1);
        Self::new_in(field, self.n, self.r, self.case, a.to_vec(), b.to_vec())
    }

    pub fn num_poly(&self) -> Poly {
        Poly::new(self.field.clone(), self.a.clone()).unwrap()
    }

    pub fn den_poly(&self) -> Poly {
        Poly::new(self.field.clone(), self.b.clone()).unwrap()
    }

    /// φ(z) = z·ψ(zⁿ), reduced, with the degree checked against the case.
    pub fn build(&self) -> Result<RationalMap, SymmetryError> {
        let n = self.n as usize;
        let num = self.num_poly().compose_power(n).shift(1);
        let den = self.den_poly().compose_power(n);
        let map = make_map(&num, &den)?;
        let expected = self.degree();
        if map.degree() != expected {
            return Err(SymmetryError::UnexpectedDegree { expected, actual: map.degree() });
        }
        Ok(map)
    }

    /// Same family with coefficients viewed in a larger field.
    pub fn embed_into(&self, field: &Field) -> Result<Self, FieldError> {
        let e = |v: &[FieldElement]| v.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>, _>>();
        Ok(CyclicFamily { n: self.n, r: self.r, case: self.case, field: field.clone(), a: e(&self.a)?, b: e(&self.b)? })
    }

    /// A random valid family with small-height coefficients in `field`
    /// (ℚ or a cyclotomic field), by rejection.
    pub fn sample<R: Rng>(n: u32, r: usize, case: CyclicCase, field: &Field, rng: &mut R) -> Self {
        for _ in 0..10_000 {
            let mut a: Vec<FieldElement> = (0..=r).map(|_| random_element(field, rng)).collect();
            let mut b: Vec<FieldElement> = (0..=r).map(|_| random_element(field, rng)).collect();
            match case {
                CyclicCase::A => {}
                CyclicCase::B => b[0] = field.zero(),
                CyclicCase::C => {
                    a[r] = field.zero();
                    b[0] = field.zero();
                }
            }
            if let Ok(f) = Self::new_in(field, n, r, case, std::mem::take(&mut a), std::mem::take(&mut b)) {
                return f;
            }
        }
        panic!("no valid family found for n={n}, r={r}, case {case}");
    }
}

/// Small-height element: integers in [−9, 9] on each power-basis coordinate
/// (only the first two coordinates for cyclotomic fields).
pub fn random_element<R: Rng>(field: &Field, rng: &mut R) -> FieldElement {
    let mut v = field.from_int(rng.gen_range(-9..=9));
    if let Field::Cyclotomic(m) = field {
        let z = field.root_of_unity(*m, 1).unwrap();
        v = &v + &(&z * &FieldElement::from_int(rng.gen_range(-9..=9)));
    }
    v
}

impl fmt::Display for CyclicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{} case {} r={}: psi = ({})/({})", self.n, self.case, self.r, self.num_poly(), self.den_poly())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclicRepr {
    n: u32,
    r: usize,
    case: CyclicCase,
    field: Field,
    a: Vec<FieldElement>,
    b: Vec<FieldElement>,
}

impl Serialize for CyclicFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclicRepr { n: self.n, r: self.r, case: self.case, field: self.field.clone(), a: self.a.clone(), b: self.b.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CyclicRepr::deserialize(d)?;
        CyclicFamily::new_in(&r.field, r.n, r.r, r.case, r.a, r.b).map_err(serde::de::Error::custom)
    }
}

/// Dihedral normal form: b_k = λ·a_{r−k} with λ = ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralFamily {
    pub n: u32,
    pub r: usize,
    pub sign: i8,
    pub case: DihedralCase,
    pub a: Vec<FieldElement>,
}

impl DihedralFamily {
    pub fn new(n: u32, r: usize, sign: i8, case: DihedralCase, a: Vec<FieldElement>) -> Result<Self, SymmetryError> {
        let fam = DihedralFamily { n, r, sign, case, a };
        fam.to_cyclic()?;
        Ok(fam)
    }

    pub fn from_ints(n: u32, r: usize, sign: i8, case: DihedralCase, a: &[i64]) -> Result<Self, SymmetryError> {
        Self::new(n, r, sign, case, a.iter().map(|&x| FieldElement::from_int(x)).collect())
    }

    pub fn degree(&self) -> usize {
        self.cyclic_case().degree(self.n, self.r)
    }

    fn cyclic_case(&self) -> CyclicCase {
        match self.case {
            DihedralCase::I => CyclicCase::A,
            DihedralCase::II => CyclicCase::C,
        }
    }

    /// The underlying cyclic family, b_k = λ·a_{r−k}.
    pub fn to_cyclic(&self) -> Result<CyclicFamily, SymmetryError> {
        let bad = |s: &str| SymmetryError::CoefficientConditionViolated(s.to_string());
        if self.sign != 1 && self.sign != -1 {
            return Err(bad("sign must be ±1"));
        }
        if self.a.len() != self.r + 1 {
            return Err(bad("coefficient vector must have length r + 1"));
        }
        match self.case {
            DihedralCase::I if self.a[self.r].is_zero() => return Err(bad("case I needs a_r ≠ 0")),
            DihedralCase::II if !self.a[self.r].is_zero() || self.a[0].is_zero() => {
                return Err(bad("case II needs a_r = 0 and a_0 ≠ 0"))
            }
            _ => {}
        }
        let lam = FieldElement::from_int(self.sign as i64);
        let b = self.a.iter().rev().map(|x| &lam * x).collect();
        CyclicFamily::new(self.n, self.r, self.cyclic_case(), self.a.clone(), b)
    }
}

/// Builds φ for a cyclic family and verifies φ∘ωₙ = ωₙ∘φ.
pub fn build_cyclic(fam: &CyclicFamily) -> Result<RationalMap, SymmetryError> {
    let map = fam.build()?;
    if !commutes_with_rotation(&map, fam.n) {
        return Err(SymmetryError::NotInNormalForm("rotation is not an automorphism".into()));
    }
    Ok(map)
}

pub fn build_dihedral(fam: &DihedralFamily) -> Result<RationalMap, SymmetryError> {
    let map = build_cyclic(&fam.to_cyclic()?)?;
    if !map.is_automorphism(&MobiusMap::inversion()) {
        return Err(SymmetryError::NotInNormalForm("1/z is not an automorphism".into()));
    }
    Ok(map)
}

/// Exact check that z ↦ ωₙz is an automorphism, lifting to a common
/// cyclotomic field when needed.
pub fn commutes_with_rotation(map: &RationalMap, n: u32) -> bool {
    match lift_for_roots(map, n) {
        Some((m, field)) => m.is_automorphism(&rotation(n, &field)),
        None => false,
    }
}

/// The map viewed over a field containing the n-th roots of unity.
pub(crate) fn lift_for_roots(map: &RationalMap, n: u32) -> Option<(RationalMap, Field)> {
    let f = map.field();
    let c = f.conductor();
    let need = if n <= 2 { 1 } else { n };
    if c % need == 0 || (n == 2) {
        return Some((map.clone(), f.clone()));
    }
    match f {
        Field::Rational | Field::Cyclotomic(_) => {
            let target = Field::cyclotomic(c.lcm(&need));
            let num = lift_poly(map.num(), &target)?;
            let den = lift_poly(map.den(), &target)?;
            Some((map.lifted(num, den), target))
        }
        Field::Quadratic(_) => None,
    }
}

pub(crate) fn lift_poly(p: &Poly, target: &Field) -> Option<Poly> {
    let m = target.conductor();
    let coeffs = p.coeffs().iter().map(|c| c.coerce_cyclotomic(m)).collect::<Result<Vec<_>, _>>().ok()?;
    Poly::new(target.clone(), coeffs).ok()
}

/// How φ acts on a pair of points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairAction {
    Fixes,
    Permutes,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkBehavior {
    /// Action on {0, ∞}, the fixed points of ωₙz.
    pub rotation_fixed_points: PairAction,
    /// Action on {1, −1}, the fixed points of 1/z.
    pub involution_fixed_points: PairAction,
}

fn pair_action(map: &RationalMap, p: &ProjPoint, q: &ProjPoint) -> Result<PairAction, FieldError> {
    let (fp, fq) = (map.eval_proj(p)?, map.eval_proj(q)?);
    Ok(if &fp == p && &fq == q {
        PairAction::Fixes
    } else if &fp == q && &fq == p {
        PairAction::Permutes
    } else {
        PairAction::Neither
    })
}

/// Evaluates φ on {0, ∞} and {±1} and compares with the expected table:
/// case I fixes {0, ∞}, case II swaps them; sign +1 fixes {±1}, sign −1 swaps.
pub fn check_remark_behavior(fam: &DihedralFamily) -> Result<RemarkBehavior, SymmetryError> {
    let map = build_dihedral(fam)?;
    let zero = ProjPoint::finite(FieldElement::from_int(0));
    let one = ProjPoint::finite(FieldElement::from_int(1));
    let minus_one = ProjPoint::finite(FieldElement::from_int(-1));
    let observed = RemarkBehavior {
        rotation_fixed_points: pair_action(&map, &zero, &ProjPoint::infinity())?,
        involution_fixed_points: pair_action(&map, &one, &minus_one)?,
    };
    let expected = RemarkBehavior {
        rotation_fixed_points: match fam.case {
            DihedralCase::I => PairAction::Fixes,
            DihedralCase::II => PairAction::Permutes,
        },
        involution_fixed_points: if fam.sign == 1 { PairAction::Fixes } else { PairAction::Permutes },
    };
    if observed != expected {
        return Err(SymmetryError::BehaviorMismatch(format!(
            "n={}, r={}, case {}, sign {}: observed {:?}, expected {:?}",
            fam.n, fam.r, fam.case, fam.sign, observed, expected
        )));
    }
    Ok(observed)
}

/// A map commuting with ωₙz read back into cyclic normal form. When the
/// coefficients have the shape d = nr, a_r = 0, b₀ ≠ 0, the map is first
/// conjugated by 1/z (`inverted` is then true) so that it lands in case B.
#[derive(Clone, Debug)]
pub struct Recognized {
    pub family: CyclicFamily,
    pub inverted: bool,
}

pub fn recognize_cyclic(map: &RationalMap, n: u32) -> Result<Recognized, SymmetryError> {
    let nn = n as usize;
    let (p, q) = (map.num(), map.den());
    let supported = |poly: &Poly, residue: usize| {
        poly.coeffs().iter().enumerate().all(|(k, c)| c.is_zero() || k % nn == residue % nn)
    };
    let field = map.field().clone();
    let (a_poly, b_poly) = if supported(p, 1) && supported(q, 0) {
        (read_every(p, nn, 1), read_every(q, nn, 0))
    } else if supported(p, 0) && supported(q, nn - 1) {
        // z cancelled: φ = A(zⁿ) / (B(zⁿ)/z)
        (read_every(p, nn, 0), read_every(&q.shift(1), nn, 0))
    } else {
        return Err(SymmetryError::NotInNormalForm(format!("coefficients not supported on z·ψ(z^{n})")));
    };
    let r = a_poly.degree().unwrap_or(0).max(b_poly.degree().unwrap_or(0));
    let a: Vec<FieldElement> = (0..=r).map(|k| a_poly.coeff(k)).collect();
    let b: Vec<FieldElement> = (0..=r).map(|k| b_poly.coeff(k)).collect();
    let d = map.degree();
    let case = if d == nn * r + 1 {
        CyclicCase::A
    } else if d == nn * r && !a[r].is_zero() {
        CyclicCase::B
    } else if d == nn * r {
        // case (iii): conjugate by 1/z, which reverses and swaps the vectors
        let a2: Vec<FieldElement> = b.iter().rev().cloned().collect();
        let b2: Vec<FieldElement> = a.iter().rev().cloned().collect();
        let family = CyclicFamily::new_in(&field, n, r, CyclicCase::B, a2, b2)?;
        return Ok(Recognized { family, inverted: true });
    } else if d + 1 == nn * r {
        CyclicCase::C
    } else {
        return Err(SymmetryError::UnexpectedDegree { expected: nn * r, actual: d });
    };
    let family = CyclicFamily::new_in(&field, n, r, case, a, b)?;
    Ok(Recognized { family, inverted: false })
}

fn read_every(p: &Poly, n: usize, offset: usize) -> Poly {
    let coeffs = p.coeffs().iter().skip(offset).step_by(n).cloned().collect();
    Poly::new(p.field().clone(), coeffs).unwrap()
}

#[cfg(test)]
mod tests;
