//! Möbius transformations as 2×2 matrices up to scale, and finite groups
//! generated by them.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::{interval_embed, Field, FieldElement, FieldError, Rational};
use crate::ratmap::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusError {
    #[error("matrix is singular")]
    Singular,
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// z ↦ (az + b)/(cz + d), ad − bc ≠ 0, up to scale.
#[derive(Clone, Debug)]
pub struct MobiusMap {
    field: Field,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MobiusOrder {
    Finite(u32),
    Infinite,
    /// Elliptic with no power ≤ the cutoff equal to the identity.
    AboveCutoff,
}

pub const ORDER_CUTOFF: u32 = 120;

impl MobiusMap {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self, MobiusError> {
        let field = a.field().join(&b.field())?.join(&c.field())?.join(&d.field())?;
        let (a, b, c, d) = (field.embed(&a)?, field.embed(&b)?, field.embed(&c)?, field.embed(&d)?);
        let m = MobiusMap { field, a, b, c, d };
        if m.det().is_zero() {
            return Err(MobiusError::Singular);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MobiusError> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity(field: &Field) -> Self {
        MobiusMap { field: field.clone(), a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    /// A_λ(z) = λz.
    pub fn scaling(lambda: FieldElement) -> Self {
        assert!(!lambda.is_zero(), "scaling by zero");
        let f = lambda.field();
        MobiusMap { a: lambda, b: f.zero(), c: f.zero(), d: f.one(), field: f }
    }

    /// z ↦ 1/z.
    pub fn inversion() -> Self {
        Self::from_ints(0, 1, 1, 0).unwrap()
    }

    /// z ↦ μ/z.
    pub fn inversion_by(mu: FieldElement) -> Self {
        assert!(!mu.is_zero(), "inversion by zero");
        let f = mu.field();
        MobiusMap { a: f.zero(), b: mu, c: f.one(), d: f.zero(), field: f }
    }

    /// z ↦ z + c.
    pub fn translation(c: FieldElement) -> Self {
        let f = c.field();
        MobiusMap { a: f.one(), b: c, c: f.zero(), d: f.one(), field: f }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn d(&self) -> &FieldElement {
        &self.d
    }

    pub fn entries(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FieldElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> FieldElement {
        &self.a + &self.d
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let field = self.field.join(&other.field).expect("Möbius maps over unrelated fields");
        let e = |x: FieldElement| field.embed(&x).unwrap();
        MobiusMap {
            a: e(&(&self.a * &other.a) + &(&self.b * &other.c)),
            b: e(&(&self.a * &other.b) + &(&self.b * &other.d)),
            c: e(&(&self.c * &other.a) + &(&self.d * &other.c)),
            d: e(&(&self.c * &other.b) + &(&self.d * &other.d)),
            field,
        }
    }

    /// Adjugate; the inverse up to scale.
    pub fn inverse(&self) -> Self {
        MobiusMap { field: self.field.clone(), a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.field);
        let mut sq = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, FieldError> {
        let x = (&self.a * p.x()).try_add(&(&self.b * p.y()))?;
        let y = (&self.c * p.x()).try_add(&(&self.d * p.y()))?;
        ProjPoint::new(x, y)
    }

    /// Scaled so the first nonzero entry is 1.
    pub fn canonical(&self) -> Self {
        let lead = self.entries().into_iter().find(|x| !x.is_zero()).unwrap().clone();
        let s = lead.inv().unwrap();
        let e = |x: &FieldElement| self.field.embed(&(x * &s)).unwrap();
        MobiusMap { field: self.field.clone(), a: e(&self.a), b: e(&self.b), c: e(&self.c), d: e(&self.d) }
    }

    /// Projective equality by cross-multiplication.
    pub fn proj_eq(&self, other: &Self) -> bool {
        let v = self.entries();
        let w = other.entries();
        let i = v.iter().position(|x| !x.is_zero()).unwrap();
        if w[i].is_zero() {
            return false;
        }
        (0..4).all(|j| match (v[j].try_mul(w[i]), w[j].try_mul(v[i])) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Least k ≥ 1 with Tᵏ = I up to scale; for non-torsion elements the
    /// invariant κ = tr²/det separates parabolic (κ = 4) and loxodromic
    /// (κ ∉ [0, 4]) cases.
    pub fn order(&self) -> MobiusOrder {
        let mut p = self.clone();
        for k in 1..=ORDER_CUTOFF {
            if p.is_identity() {
                return MobiusOrder::Finite(k);
            }
            p = p.compose(self);
        }
        let tr = self.trace();
        let kappa = &(&tr * &tr) / &self.det();
        if kappa == FieldElement::from_int(4) {
            return MobiusOrder::Infinite;
        }
        let b = interval_embed(&kappa, 64);
        let zero = Rational::from_integer(0.into());
        let four = Rational::from_integer(4.into());
        if !b.im.contains_zero() || b.re.hi < zero || b.re.lo > four {
            return MobiusOrder::Infinite;
        }
        if let Some(q) = kappa.to_rational() {
            // rational κ of a torsion element lies in {0, 1, 2, 3}
            if q < zero || q > four || !q.is_integer() {
                return MobiusOrder::Infinite;
            }
        }
        MobiusOrder::AboveCutoff
    }
}

impl PartialEq for MobiusMap {
    fn eq(&self, other: &Self) -> bool {
        self.proj_eq(other)
    }
}

impl Eq for MobiusMap {}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Serialize, Deserialize)]
struct MobiusRepr {
    field: Field,
    matrix: [[FieldElement; 2]; 2],
}

impl Serialize for MobiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MobiusRepr {
            field: self.field.clone(),
            matrix: [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MobiusMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = MobiusRepr::deserialize(d)?;
        let [[a, b], [c, dd]] = r.matrix;
        let e = |x: FieldElement| r.field.embed(&x).map_err(D::Error::custom);
        let m = MobiusMap::new(e(a)?, e(b)?, e(c)?, e(dd)?).map_err(D::Error::custom)?;
        let f = r.field.clone();
        Ok(MobiusMap {
            a: f.embed(&m.a).unwrap(),
            b: f.embed(&m.b).unwrap(),
            c: f.embed(&m.c).unwrap(),
            d: f.embed(&m.d).unwrap(),
            field: f,
        })
    }
}

/// Isomorphism type of a finite subgroup of PSL₂(ℂ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    A4,
    S4,
    A5,
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => *n as usize,
            GroupSpec::Dihedral(n) => 2 * *n as usize,
            GroupSpec::A4 => 12,
            GroupSpec::S4 => 24,
            GroupSpec::A5 => 60,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::A4 => write!(f, "A4"),
            GroupSpec::S4 => write!(f, "S4"),
            GroupSpec::A5 => write!(f, "A5"),
        }
    }
}

/// z ↦ ωₙz embedded in `field`.
pub fn rotation(n: u32, field: &Field) -> MobiusMap {
    let w = field.root_of_unity(n, 1).expect("field contains the n-th roots of unity");
    let f = field.clone();
    MobiusMap { a: w, b: f.zero(), c: f.zero(), d: f.one(), field: f }
}

/// √3 − 1 = ζ₁₂ + ζ₁₂⁻¹ − 1 in ℚ(ζ₁₂).
fn b_parameter() -> FieldElement {
    let f = Field::cyclotomic(12);
    let z = f.root_of_unity(12, 1).unwrap();
    &(&z + &z.inv().unwrap()) - &f.one()
}

/// √2 + 1 = ζ₈ + ζ₈⁻¹ + 1 in ℚ(ζ₈).
fn c_parameter() -> FieldElement {
    let f = Field::cyclotomic(8);
    let z = f.root_of_unity(8, 1).unwrap();
    &(&z + &z.inv().unwrap()) + &f.one()
}

/// ℚ(ζ₅)(√δ) with δ = 2 − ω₅ − ω₅⁴.
pub fn icosahedral_field() -> Field {
    let base = Field::cyclotomic(5);
    let w = base.root_of_unity(5, 1).unwrap();
    let delta = &(&base.from_int(2) - &w) - &w.pow(4).unwrap();
    Field::quadratic(&delta).expect("2 - ω₅ - ω₅⁴ is not a square in ℚ(ζ₅)")
}

/// Order-2 generator B of the tetrahedral group:
/// B(z) = s(z + s)/(2z − s) with s = √3 − 1.
pub fn generator_b() -> MobiusMap {
    let s = b_parameter();
    MobiusMap::new(s.clone(), &s * &s, FieldElement::from_int(2), -&s).unwrap()
}

/// Order-2 generator C of the octahedral group:
/// C(z) = t(−z + t)/(z + t) with t = √2 + 1.
pub fn generator_c() -> MobiusMap {
    let t = c_parameter();
    MobiusMap::new(-&t, &t * &t, FieldElement::from_int(1), t).unwrap()
}

/// Order-2 generator D of the icosahedral group:
/// D(z) = u(−z + u)/((1 − ω₅ − ω₅⁴)z + u) with u = 1 + √(2 − ω₅ − ω₅⁴).
pub fn generator_d() -> MobiusMap {
    let f = icosahedral_field();
    let w = f.root_of_unity(5, 1).unwrap();
    let w4 = w.pow(4).unwrap();
    let u = &f.one() + &f.sqrt_delta().unwrap();
    let c0 = &(&f.one() - &w) - &w4;
    MobiusMap::new(-&u, &u * &u, c0, u).unwrap()
}

pub fn standard_generators(g: GroupSpec) -> Vec<MobiusMap> {
    match g {
        GroupSpec::Cyclic(n) => vec![rotation(n, &Field::cyclotomic(n))],
        GroupSpec::Dihedral(n) => {
            let f = Field::cyclotomic(n);
            let inv = MobiusMap::identity(&f).compose(&MobiusMap::inversion());
            vec![rotation(n, &f), inv]
        }
        GroupSpec::A4 => vec![rotation(3, &Field::cyclotomic(12)), generator_b()],
        GroupSpec::S4 => vec![rotation(4, &Field::cyclotomic(8)), generator_c()],
        GroupSpec::A5 => vec![rotation(5, &icosahedral_field()), generator_d()],
    }
}

/// Breadth-first closure under composition, deduplicated projectively.
pub fn group_closure(gens: &[MobiusMap], cap: usize) -> Result<Vec<MobiusMap>, MobiusError> {
    let mut field = Field::Rational;
    for g in gens {
        field = field.join(g.field())?;
    }
    let identity = MobiusMap::identity(&field);
    let mut seen: HashSet<[FieldElement; 4]> = HashSet::new();
    let key = |m: &MobiusMap| {
        let c = m.canonical();
        [c.a, c.b, c.c, c.d]
    };
    let mut elements = vec![identity.clone()];
    seen.insert(key(&identity));
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(key(&y)) {
                if elements.len() >= cap {
                    return Err(MobiusError::CapExceeded(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

/// The normalizer N_n of ⟨ωₙz⟩: scalings A_λ and the involution B(z) = 1/z.
#[derive(Clone, Copy, Debug)]
pub struct Normalizer {
    pub n: u32,
}

impl Normalizer {
    pub fn new(n: u32) -> Self {
        assert!(n >= 2);
        Normalizer { n }
    }

    pub fn scaling(&self, lambda: FieldElement) -> MobiusMap {
        MobiusMap::scaling(lambda)
    }

    pub fn inversion(&self) -> MobiusMap {
        MobiusMap::inversion()
    }
}

pub fn normalizer_elements(n: u32) -> Normalizer {
    Normalizer::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relation(gen: &MobiusMap, t: &MobiusMap) -> (bool, bool) {
        let prod = t.compose(gen);
        (gen.power(2).is_identity(), prod.power(3).is_identity())
    }

    #[test]
    fn order_examples() {
        assert_eq!(MobiusMap::inversion().order(), MobiusOrder::Finite(2));
        assert_eq!(MobiusMap::scaling(FieldElement::zeta(5)).order(), MobiusOrder::Finite(5));
        assert_eq!(MobiusMap::translation(FieldElement::from_int(1)).order(), MobiusOrder::Infinite);
        assert_eq!(MobiusMap::scaling(FieldElement::from_int(2)).order(), MobiusOrder::Infinite);
    }

    #[test]
    fn cyclic_two_is_negation() {
        let g = standard_generators(GroupSpec::Cyclic(2));
        assert_eq!(g, vec![MobiusMap::from_ints(-1, 0, 0, 1).unwrap()]);
    }

    #[test]
    fn platonic_relations() {
        let [t3, b] = <[MobiusMap; 2]>::try_from(standard_generators(GroupSpec::A4)).unwrap();
        assert!(t3.power(3).is_identity());
        assert_eq!(relation(&b, &t3), (true, true));
        // the relation with A(z) = 1/z in place of B fails: T₃∘A is an involution
        let a = MobiusMap::inversion();
        assert!(!t3.compose(&a).power(3).is_identity());
        assert_eq!(t3.compose(&a).order(), MobiusOrder::Finite(2));

        let [t4, c] = <[MobiusMap; 2]>::try_from(standard_generators(GroupSpec::S4)).unwrap();
        assert!(t4.power(4).is_identity());
        assert_eq!(relation(&c, &t4), (true, true));

        let [t5, d] = <[MobiusMap; 2]>::try_from(standard_generators(GroupSpec::A5)).unwrap();
        assert!(t5.power(5).is_identity());
        assert_eq!(relation(&d, &t5), (true, true));
    }

    #[test]
    fn closures() {
        let klein = group_closure(&[MobiusMap::from_ints(-1, 0, 0, 1).unwrap(), MobiusMap::inversion()], 200).unwrap();
        assert_eq!(klein.len(), 4);
        assert_eq!(group_closure(&standard_generators(GroupSpec::A4), 200).unwrap().len(), 12);
        assert_eq!(group_closure(&standard_generators(GroupSpec::S4), 200).unwrap().len(), 24);
        assert_eq!(group_closure(&[MobiusMap::translation(FieldElement::from_int(1))], 50), Err(MobiusError::CapExceeded(50)));
    }

    #[test]
    fn normalizer_examples() {
        let n = normalizer_elements(2);
        let a = n.scaling(FieldElement::zeta(4));
        let t = MobiusMap::from_ints(-1, 0, 0, 1).unwrap();
        assert_eq!(a.compose(&t).compose(&a.inverse()), t);
        let w5 = MobiusMap::scaling(FieldElement::zeta(5));
        let b = n.inversion();
        assert_eq!(b.compose(&w5).compose(&b), w5.inverse());
        let ab = n.scaling(FieldElement::from_int(2)).compose(&b);
        assert_eq!(ab.order(), MobiusOrder::Finite(2));
    }

    #[test]
    fn delta_is_real_positive() {
        let f = icosahedral_field();
        let Field::Quadratic(q) = &f else { unreachable!() };
        let b = interval_embed(&FieldElement::from_cyclo(q.delta().clone()), 40);
        assert!(b.im.contains_zero());
        assert!(b.re.lo > Rational::new(138.into(), 100.into()) && b.re.hi < Rational::new(139.into(), 100.into()));
    }

    #[test]
    fn json_round_trip() {
        let d = generator_d();
        let js = serde_json::to_string(&d).unwrap();
        let back: MobiusMap = serde_json::from_str(&js).unwrap();
        assert_eq!(back, d);
    }
}
