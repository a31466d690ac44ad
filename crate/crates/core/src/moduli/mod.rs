//! Moduli-level computations: dimensions of the cyclic and dihedral loci,
//! the normalizer action on ψ, certified paths inside a normal-form family,
//! connectivity chains across loci, and Milnor coordinates on M₂.

mod connect;
mod milnor;
mod path;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::symmetry::{cyclic_admissible, dihedral_admissible, CyclicCase, CyclicFamily, DihedralCase, SymmetryError};

pub use connect::{connectivity_certificate, ConnectivityCertificate, Endpoint, Leg};
pub use milnor::{fujimura_cubic, milnor_coordinates, MilnorPoint};
pub use path::{build_path, PathCertificate, PathOptions, Segment, SegmentProof, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("C{n} or D{n} is not admissible in degree {d}")]
    NotAdmissible { d: usize, n: u32 },
    #[error("families differ: {0}")]
    FamilyMismatch(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("expected a degree-2 map, got degree {0}")]
    NotDegreeTwo(usize),
    #[error("no small conjugator moves the fixed points off infinity")]
    NormalizationFailed,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    Dihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyCase {
    Cyclic(CyclicCase),
    Dihedral(DihedralCase),
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyCase::Cyclic(c) => c.fmt(f),
            FamilyCase::Dihedral(c) => c.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub d: usize,
    pub n: u32,
    pub group: GroupKind,
    pub case: FamilyCase,
    pub r: usize,
    pub dimension: usize,
}

/// Dimension of B_d(Cₙ) for every admissible case (two when n = 2, d odd).
pub fn dim_cyclic_all(d: usize, n: u32) -> Result<Vec<DimensionReport>, ModuliError> {
    let cases = cyclic_admissible(d, n);
    if cases.is_empty() {
        return Err(ModuliError::NotAdmissible { d, n });
    }
    Ok(cases
        .into_iter()
        .map(|(case, r)| {
            let nn = n as usize;
            let dimension = match case {
                CyclicCase::A => 2 * (d - 1) / nn,
                CyclicCase::B => (2 * d - nn) / nn,
                CyclicCase::C => 2 * (d + 1 - nn) / nn,
            };
            DimensionReport { d, n, group: GroupKind::Cyclic, case: FamilyCase::Cyclic(case), r, dimension }
        })
        .collect())
}

/// Dimension of B_d(Cₙ); the first admissible case when two apply.
pub fn dim_cyclic(d: usize, n: u32) -> Result<DimensionReport, ModuliError> {
    Ok(dim_cyclic_all(d, n)?.remove(0))
}

pub fn dim_cyclic_case(d: usize, n: u32, case: CyclicCase) -> Result<DimensionReport, ModuliError> {
    dim_cyclic_all(d, n)?
        .into_iter()
        .find(|r| r.case == FamilyCase::Cyclic(case))
        .ok_or(ModuliError::NotAdmissible { d, n })
}

pub fn dim_dihedral_all(d: usize, n: u32) -> Result<Vec<DimensionReport>, ModuliError> {
    let cases = dihedral_admissible(d, n);
    if cases.is_empty() {
        return Err(ModuliError::NotAdmissible { d, n });
    }
    Ok(cases
        .into_iter()
        .map(|(case, r)| {
            let nn = n as usize;
            let dimension = match case {
                DihedralCase::I => (d - 1) / nn,
                DihedralCase::II => (d + 1 - nn) / nn,
            };
            DimensionReport { d, n, group: GroupKind::Dihedral, case: FamilyCase::Dihedral(case), r, dimension }
        })
        .collect())
}

pub fn dim_dihedral(d: usize, n: u32) -> Result<DimensionReport, ModuliError> {
    Ok(dim_dihedral_all(d, n)?.remove(0))
}

/// Free parameters of the normal-form family behind a report, before
/// removing the projective scale (and, for cyclic families, the scaling orbit).
pub fn family_parameters(report: &DimensionReport) -> usize {
    let r = report.r;
    match report.case {
        FamilyCase::Cyclic(CyclicCase::A) => 2 * (r + 1),
        FamilyCase::Cyclic(CyclicCase::B) => 2 * r + 1,
        FamilyCase::Cyclic(CyclicCase::C) => 2 * r,
        FamilyCase::Dihedral(DihedralCase::I) => r + 1,
        FamilyCase::Dihedral(DihedralCase::II) => r,
    }
}

/// Conjugation by z ↦ λz: ψ(u) ↦ ψ(u/λⁿ).
pub fn act_scale(fam: &CyclicFamily, lambda: &FieldElement) -> Result<CyclicFamily, ModuliError> {
    let field = fam.field().join(&lambda.field())?;
    let fam = fam.embed_into(&field)?;
    let step = lambda.pow(-(fam.n() as i64))?;
    let mut w = field.one();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for k in 0..=fam.r() {
        a.push(&fam.a()[k] * &w);
        b.push(&fam.b()[k] * &w);
        w = &w * &step;
    }
    Ok(CyclicFamily::new_in(&field, fam.n(), fam.r(), fam.case(), a, b)?)
}

/// Conjugation by z ↦ 1/z: ψ ↦ 1/ψ(1/u), i.e. (a, b) ↦ (rev b, rev a).
/// Case B lands in the shape a_r = 0, b₀ ≠ 0, which is conjugated by 1/z
/// once more to return to case B; on case B the action is therefore trivial.
pub fn act_invert(fam: &CyclicFamily) -> Result<CyclicFamily, ModuliError> {
    if fam.case() == CyclicCase::B {
        return Ok(fam.clone());
    }
    let a: Vec<FieldElement> = fam.b().iter().rev().cloned().collect();
    let b: Vec<FieldElement> = fam.a().iter().rev().cloned().collect();
    Ok(CyclicFamily::new_in(fam.field(), fam.n(), fam.r(), fam.case(), a, b)?)
}

#[cfg(test)]
mod tests;
