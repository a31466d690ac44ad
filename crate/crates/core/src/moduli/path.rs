//! Straight segments in the coefficient space of a normal-form family,
//! certified to avoid the degeneracy locus.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ModuliError;
use crate::field::interval::eval_real_interval;
use crate::field::{interval_embed, ComplexBox, Field, FieldElement, Interval, Rational};
use crate::poly::{determinant, resultant, sign_variations, sturm_sequence, sylvester_matrix, Poly};
use crate::symmetry::{commutes_with_rotation, CyclicCase, CyclicFamily};

/// Detour attempts after the straight segment fails.
pub const MAX_DETOURS: u32 = 8;
/// Bisection depth cap for interval proofs.
pub const MAX_DEPTH: u32 = 40;
/// Sample points k/SAMPLES per segment checked during validation.
const SAMPLES: i64 = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Sturm,
    Interval,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Sturm => "sturm",
            Strategy::Interval => "interval",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sturm" => Ok(Strategy::Sturm),
            "interval" => Ok(Strategy::Interval),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathOptions {
    pub strategy: Strategy,
    /// Bits of the coefficient enclosures used by interval proofs.
    pub precision: u32,
    pub seed: u64,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions { strategy: Strategy::Sturm, precision: 128, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmProof {
    /// N(t) = G(t)·Ḡ(t), rational.
    pub norm: Poly,
    pub sequence: Vec<Poly>,
    pub variations_at_0: usize,
    pub variations_at_1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalProof {
    pub precision: u32,
    /// Consecutive subintervals of [0, 1] on which G excludes 0.
    pub leaves: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SegmentProof {
    Sturm(SturmProof),
    Interval(IntervalProof),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Vec<FieldElement>,
    pub end: Vec<FieldElement>,
    pub proof: SegmentProof,
}

/// A piecewise-linear path (a₀..a_r, b₀..b_r)(t) inside one family, with
/// G(t) = Res_{r,r}(A_t, B_t) · (case conditions) certified nonzero on
/// every closed segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCertificate {
    pub n: u32,
    pub r: usize,
    pub case: CyclicCase,
    pub field: Field,
    pub start: Vec<FieldElement>,
    pub end: Vec<FieldElement>,
    pub strategy: Strategy,
    /// Straight segments and detours that failed before the recorded route.
    pub failed_attempts: u32,
    pub segments: Vec<Segment>,
}

#[derive(Clone, Copy)]
struct Shape {
    n: u32,
    r: usize,
    case: CyclicCase,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Route {
    Euclid,
    Sylvester,
}

fn lerp(v0: &[FieldElement], v1: &[FieldElement], t: &FieldElement) -> Vec<FieldElement> {
    v0.iter().zip(v1).map(|(a, b)| a + &(t * &(b - a))).collect()
}

fn split(field: &Field, r: usize, v: &[FieldElement]) -> (Poly, Poly) {
    let a = Poly::new(field.clone(), v[..=r].to_vec()).unwrap();
    let b = Poly::new(field.clone(), v[r + 1..].to_vec()).unwrap();
    (a, b)
}

/// Lagrange interpolation through (i, ys[i]), i = 0, 1, ….
fn interpolate(field: &Field, ys: &[FieldElement]) -> Poly {
    let m = ys.len();
    let mut out = Poly::zero(field);
    for (i, y) in ys.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(y.clone());
        for j in 0..m {
            if j == i {
                continue;
            }
            let denom = FieldElement::from_int(i as i64 - j as i64);
            let lin = Poly::new(field.clone(), vec![FieldElement::from_int(-(j as i64)), field.one()]).unwrap();
            basis = basis.mul(&lin).scale(&denom.inv().unwrap());
        }
        out = out.add(&basis);
    }
    out.embed_into(field).unwrap()
}

/// Coordinates whose vanishing the case forbids: a_r, b₀ (A); a_r (B); b_r (C).
fn condition_indices(shape: Shape) -> Vec<usize> {
    let r = shape.r;
    match shape.case {
        CyclicCase::A => vec![r, r + 1],
        CyclicCase::B => vec![r],
        CyclicCase::C => vec![2 * r + 1],
    }
}

fn segment_polynomial(shape: Shape, field: &Field, v0: &[FieldElement], v1: &[FieldElement], route: Route) -> Poly {
    let r = shape.r;
    let ys: Vec<FieldElement> = (0..=2 * r as i64)
        .map(|i| {
            let v = lerp(v0, v1, &FieldElement::from_int(i));
            let (a, b) = split(field, r, &v);
            match route {
                Route::Euclid => resultant(&a, &b, r, r),
                Route::Sylvester => determinant(sylvester_matrix(&a, &b, r, r)),
            }
        })
        .collect();
    let mut g = interpolate(field, &ys);
    for k in condition_indices(shape) {
        let lin = Poly::new(field.clone(), vec![v0[k].clone(), &v1[k] - &v0[k]]).unwrap();
        g = g.mul(&lin);
    }
    g
}

fn norm_poly(g: &Poly) -> Option<Poly> {
    let n = g.mul(&g.conj().ok()?);
    Some(Poly::from_rationals(&n.to_rationals()?))
}

fn boxes(g: &Poly, precision: u32) -> Vec<ComplexBox> {
    g.coeffs().iter().map(|c| interval_embed(c, precision)).collect()
}

fn excludes_zero(boxes: &[ComplexBox], t: &Interval, precision: u32) -> bool {
    !eval_real_interval(boxes, t, precision).contains_zero()
}

fn bisect(boxes: &[ComplexBox], t: Interval, depth: u32, precision: u32, out: &mut Vec<Interval>) -> bool {
    if excludes_zero(boxes, &t, precision) {
        out.push(t);
        return true;
    }
    if depth == MAX_DEPTH {
        return false;
    }
    let mid = (&t.lo + &t.hi) / Rational::from_integer(2.into());
    bisect(boxes, Interval::new(t.lo.clone(), mid.clone()), depth + 1, precision, out)
        && bisect(boxes, Interval::new(mid, t.hi), depth + 1, precision, out)
}

fn certify(g: &Poly, strategy: Strategy, precision: u32) -> Option<SegmentProof> {
    if g.is_zero() {
        return None;
    }
    let (zero, one) = (FieldElement::from_int(0), FieldElement::from_int(1));
    if g.eval(&zero).ok()?.is_zero() || g.eval(&one).ok()?.is_zero() {
        return None;
    }
    if strategy == Strategy::Sturm {
        if let Some(norm) = norm_poly(g) {
            let seq = sturm_sequence(&norm.to_rationals().unwrap());
            let v0 = sign_variations(&seq, &Rational::zero());
            let v1 = sign_variations(&seq, &Rational::one());
            if v0 != v1 {
                return None;
            }
            let sequence = seq.iter().map(|p| Poly::from_rationals(p)).collect();
            return Some(SegmentProof::Sturm(SturmProof { norm, sequence, variations_at_0: v0, variations_at_1: v1 }));
        }
    }
    let bx = boxes(g, precision);
    let mut leaves = Vec::new();
    bisect(&bx, Interval::new(Rational::zero(), Rational::one()), 0, precision, &mut leaves)
        .then_some(SegmentProof::Interval(IntervalProof { precision, leaves }))
}

fn try_segment(shape: Shape, field: &Field, v0: &[FieldElement], v1: &[FieldElement], opts: &PathOptions) -> Option<Segment> {
    let g = segment_polynomial(shape, field, v0, v1, Route::Euclid);
    let proof = certify(&g, opts.strategy, opts.precision)?;
    Some(Segment { start: v0.to_vec(), end: v1.to_vec(), proof })
}

fn embed_vec(field: &Field, v: &[FieldElement]) -> Result<Vec<FieldElement>, ModuliError> {
    Ok(v.iter().map(|x| field.embed(x)).collect::<Result<_, _>>()?)
}

/// Certified path from `fam0` to `fam1`: the straight segment if it avoids
/// the degeneracy locus, otherwise two segments through a random point of
/// the family (over ℚ(i) when the endpoints are rational, since the real
/// complement of the locus can be disconnected).
pub fn build_path(fam0: &CyclicFamily, fam1: &CyclicFamily, opts: &PathOptions) -> Result<PathCertificate, ModuliError> {
    if (fam0.n(), fam0.r(), fam0.case()) != (fam1.n(), fam1.r(), fam1.case()) {
        return Err(ModuliError::FamilyMismatch(format!(
            "(n={}, r={}, case {}) vs (n={}, r={}, case {})",
            fam0.n(),
            fam0.r(),
            fam0.case(),
            fam1.n(),
            fam1.r(),
            fam1.case()
        )));
    }
    let shape = Shape { n: fam0.n(), r: fam0.r(), case: fam0.case() };
    let field = fam0.field().join(fam1.field())?;
    let v0 = fam0.embed_into(&field)?.coefficient_vector();
    let v1 = fam1.embed_into(&field)?.coefficient_vector();
    let cert = |field: &Field, failed_attempts, segments| PathCertificate {
        n: shape.n,
        r: shape.r,
        case: shape.case,
        field: field.clone(),
        start: v0.clone(),
        end: v1.clone(),
        strategy: opts.strategy,
        failed_attempts,
        segments,
    };
    if v0 == v1 {
        return Ok(cert(&field, 0, Vec::new()));
    }
    if let Some(seg) = try_segment(shape, &field, &v0, &v1, opts) {
        return Ok(cert(&field, 0, vec![seg]));
    }
    let detour_field = match field {
        Field::Rational => Field::cyclotomic(4),
        ref f => f.clone(),
    };
    let w0 = embed_vec(&detour_field, &v0)?;
    let w1 = embed_vec(&detour_field, &v1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..MAX_DETOURS {
        let mid = CyclicFamily::sample(shape.n, shape.r, shape.case, &detour_field, &mut rng).coefficient_vector();
        let Some(s0) = try_segment(shape, &detour_field, &w0, &mid, opts) else { continue };
        let Some(s1) = try_segment(shape, &detour_field, &mid, &w1, opts) else { continue };
        let mut c = cert(&detour_field, attempt + 1, vec![s0, s1]);
        c.start = w0;
        c.end = w1;
        return Ok(c);
    }
    Err(ModuliError::CertificationFailed(format!(
        "no certified route between {fam0} and {fam1} after {MAX_DETOURS} detours"
    )))
}

impl PathCertificate {
    fn shape(&self) -> Shape {
        Shape { n: self.n, r: self.r, case: self.case }
    }

    pub fn family_at(&self, v: &[FieldElement]) -> Result<CyclicFamily, ModuliError> {
        if v.len() != 2 * self.r + 2 {
            return Err(ModuliError::ValidationFailed(format!("vector of length {}", v.len())));
        }
        let (a, b) = v.split_at(self.r + 1);
        Ok(CyclicFamily::new_in(&self.field, self.n, self.r, self.case, a.to_vec(), b.to_vec())?)
    }

    pub fn start_family(&self) -> Result<CyclicFamily, ModuliError> {
        self.family_at(&self.start)
    }

    pub fn end_family(&self) -> Result<CyclicFamily, ModuliError> {
        self.family_at(&self.end)
    }

    /// Re-derives every proof from the recorded vectors, using the Sylvester
    /// determinant in place of the Euclidean resultant, and spot-checks the
    /// maps at t = k/20 on each segment.
    pub fn validate(&self) -> Result<(), ModuliError> {
        let fail = |s: String| Err(ModuliError::ValidationFailed(s));
        let start = embed_vec(&self.field, &self.start)?;
        let end = embed_vec(&self.field, &self.end)?;
        self.family_at(&start)?;
        self.family_at(&end)?;
        if self.segments.is_empty() {
            return if start == end { Ok(()) } else { fail("no segments between distinct endpoints".into()) };
        }
        let mut at = start;
        for (i, seg) in self.segments.iter().enumerate() {
            let s0 = embed_vec(&self.field, &seg.start)?;
            let s1 = embed_vec(&self.field, &seg.end)?;
            if s0 != at {
                return fail(format!("segment {i} does not start where the previous one ended"));
            }
            self.family_at(&s1)?;
            let g = segment_polynomial(self.shape(), &self.field, &s0, &s1, Route::Sylvester);
            check_proof(&g, &seg.proof).map_err(|e| ModuliError::ValidationFailed(format!("segment {i}: {e}")))?;
            for k in 0..=SAMPLES {
                let t = FieldElement::from_ratio(k, SAMPLES);
                let fam = self.family_at(&lerp(&s0, &s1, &t))?;
                if !commutes_with_rotation(&fam.build()?, self.n) {
                    return fail(format!("segment {i}, t={k}/{SAMPLES}: map does not commute with the rotation"));
                }
            }
            at = s1;
        }
        if at != end {
            return fail("last segment does not reach the endpoint".into());
        }
        Ok(())
    }
}

fn check_proof(g: &Poly, proof: &SegmentProof) -> Result<(), String> {
    let (zero, one) = (FieldElement::from_int(0), FieldElement::from_int(1));
    if g.is_zero() || g.eval(&zero).unwrap().is_zero() || g.eval(&one).unwrap().is_zero() {
        return Err("G vanishes at an endpoint".into());
    }
    match proof {
        SegmentProof::Sturm(p) => {
            let norm = norm_poly(g).ok_or("norm polynomial is not rational")?;
            if norm != p.norm {
                return Err("recorded norm polynomial differs".into());
            }
            let seq = sturm_sequence(&norm.to_rationals().unwrap());
            let recomputed: Vec<Poly> = seq.iter().map(|q| Poly::from_rationals(q)).collect();
            if recomputed != p.sequence {
                return Err("recorded Sturm sequence differs".into());
            }
            let v0 = sign_variations(&seq, &Rational::zero());
            let v1 = sign_variations(&seq, &Rational::one());
            if (v0, v1) != (p.variations_at_0, p.variations_at_1) || v0 != v1 {
                return Err(format!("Sturm count on (0, 1] is {}", v0 as i64 - v1 as i64));
            }
        }
        SegmentProof::Interval(p) => {
            let mut at = Rational::zero();
            let bx = boxes(g, p.precision);
            for leaf in &p.leaves {
                if leaf.lo != at || leaf.hi <= leaf.lo {
                    return Err("leaves do not tile [0, 1]".into());
                }
                if !excludes_zero(&bx, leaf, p.precision) {
                    return Err(format!("enclosure on {leaf:?} contains 0"));
                }
                at = leaf.hi.clone();
            }
            if !at.is_one() {
                return Err("leaves do not reach 1".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
pub(super) fn segment_norm(fam0: &CyclicFamily, fam1: &CyclicFamily) -> Option<Poly> {
    let shape = Shape { n: fam0.n(), r: fam0.r(), case: fam0.case() };
    let g = segment_polynomial(shape, fam0.field(), &fam0.coefficient_vector(), &fam1.coefficient_vector(), Route::Euclid);
    norm_poly(&g)
}
