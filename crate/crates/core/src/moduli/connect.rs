//! Chains of certified paths and witnesses joining two classes of B_d
//! through the loci B_d(C_p).

use serde::{Deserialize, Serialize};

use super::{build_path, ModuliError, PathCertificate, PathOptions};
use crate::mobius::MobiusMap;
use crate::ratmap::RationalMap;
use crate::symmetry::{lemma_witness, recognize_cyclic, CyclicFamily, WitnessReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Witness(WitnessReport),
    Family(CyclicFamily),
}

impl Endpoint {
    pub fn family(&self) -> &CyclicFamily {
        match self {
            Endpoint::Witness(w) => &w.family,
            Endpoint::Family(f) => f,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "leg", rename_all = "snake_case")]
pub enum Leg {
    Path {
        locus: String,
        certificate: PathCertificate,
    },
    /// A map in both B_d(C_p) and B_d(C₂): its C_p normal form is
    /// `report.family`, its C₂ normal form is `c2_family`, the latter being
    /// the conjugate of the map by `c2_conjugator`.
    Witness {
        locus: String,
        report: WitnessReport,
        c2_conjugator: MobiusMap,
        c2_family: CyclicFamily,
        towards_c2: bool,
    },
    /// Two families of the same locus with different (case, r); no bridge
    /// between them is constructed.
    Gap {
        locus: String,
        from: CyclicFamily,
        to: CyclicFamily,
        reason: String,
    },
}

impl Leg {
    fn ends(&self) -> Result<(CyclicFamily, CyclicFamily), ModuliError> {
        Ok(match self {
            Leg::Path { certificate, .. } => (certificate.start_family()?, certificate.end_family()?),
            Leg::Witness { report, c2_family, towards_c2, .. } => {
                if *towards_c2 {
                    (report.family.clone(), c2_family.clone())
                } else {
                    (c2_family.clone(), report.family.clone())
                }
            }
            Leg::Gap { from, to, .. } => (from.clone(), to.clone()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityCertificate {
    pub d: usize,
    pub start: CyclicFamily,
    pub end: CyclicFamily,
    pub legs: Vec<Leg>,
}

fn locus(d: usize, n: u32) -> String {
    format!("B_{d}(C_{n})")
}

fn same_family(a: &CyclicFamily, b: &CyclicFamily) -> bool {
    (a.n(), a.r(), a.case()) == (b.n(), b.r(), b.case())
}

fn same_map(a: &CyclicFamily, b: &CyclicFamily) -> bool {
    match (a.build(), b.build()) {
        (Ok(x), Ok(y)) => x.proj_eq(&y),
        _ => false,
    }
}

fn minus_z() -> MobiusMap {
    MobiusMap::from_ints(-1, 0, 0, 1).unwrap()
}

fn path_or_gap(d: usize, from: &CyclicFamily, to: &CyclicFamily, opts: &PathOptions) -> Result<Leg, ModuliError> {
    if same_family(from, to) {
        return Ok(Leg::Path { locus: locus(d, from.n()), certificate: build_path(from, to, opts)? });
    }
    Ok(Leg::Gap {
        locus: locus(d, from.n()),
        from: from.clone(),
        to: to.clone(),
        reason: format!(
            "case {} with r={} and case {} with r={} are distinct families",
            from.case(),
            from.r(),
            to.case(),
            to.r()
        ),
    })
}

/// The witness for (p, d) together with its C₂ normal form.
fn witness_leg(p: u32, d: usize) -> Result<(WitnessReport, MobiusMap, CyclicFamily), ModuliError> {
    let report = lemma_witness(p, d)?;
    let m = report.involution_conjugator.clone();
    let moved = report.map.conjugate(&m);
    let rec = recognize_cyclic(&moved, 2)?;
    let conj = if rec.inverted { MobiusMap::inversion().compose(&m) } else { m };
    Ok((report, conj, rec.family))
}

/// Joins the classes of `w0` and `w1` (same degree d) by legs alternating
/// between certified paths inside one C_p family and lemma witnesses that
/// lie in B_d(C_p) ∩ B_d(C₂). Paths between different families of the same
/// locus are replaced by gap markers.
pub fn connectivity_certificate(w0: &Endpoint, w1: &Endpoint, opts: &PathOptions) -> Result<ConnectivityCertificate, ModuliError> {
    let (f0, f1) = (w0.family().clone(), w1.family().clone());
    let d = f0.degree();
    if f1.degree() != d {
        return Err(ModuliError::FamilyMismatch(format!("degrees {d} and {}", f1.degree())));
    }
    let mut seed = opts.seed;
    let mut next_opts = || {
        let o = PathOptions { seed, ..*opts };
        seed = seed.wrapping_add(1);
        o
    };
    let mut legs = Vec::new();
    if same_family(&f0, &f1) {
        legs.push(path_or_gap(d, &f0, &f1, &next_opts())?);
        return Ok(ConnectivityCertificate { d, start: f0, end: f1, legs });
    }

    // left side: into C₂
    let left = if f0.n() == 2 {
        f0.clone()
    } else {
        let (report, conj, c2) = witness_leg(f0.n(), d)?;
        legs.push(path_or_gap(d, &f0, &report.family, &next_opts())?);
        legs.push(Leg::Witness { locus: locus(d, f0.n()), report, c2_conjugator: conj, c2_family: c2.clone(), towards_c2: true });
        c2
    };
    let right = if f1.n() == 2 { None } else { Some(witness_leg(f1.n(), d)?) };
    let right_c2 = right.as_ref().map(|(_, _, c2)| c2.clone()).unwrap_or_else(|| f1.clone());
    legs.push(path_or_gap(d, &left, &right_c2, &next_opts())?);
    if let Some((report, conj, c2)) = right {
        let fam = report.family.clone();
        legs.push(Leg::Witness { locus: locus(d, f1.n()), report, c2_conjugator: conj, c2_family: c2, towards_c2: false });
        legs.push(path_or_gap(d, &fam, &f1, &next_opts())?);
    }
    Ok(ConnectivityCertificate { d, start: f0, end: f1, legs })
}

impl ConnectivityCertificate {
    pub fn is_gap_free(&self) -> bool {
        !self.legs.iter().any(|l| matches!(l, Leg::Gap { .. }))
    }

    /// Validates every leg and checks that consecutive legs meet in the same map.
    pub fn validate(&self) -> Result<(), ModuliError> {
        let fail = |s: String| Err(ModuliError::ValidationFailed(s));
        let Some(first) = self.legs.first() else {
            return fail("empty chain".into());
        };
        let mut at = first.ends()?.0;
        if !same_map(&at, &self.start) {
            return fail("chain does not start at the first endpoint".into());
        }
        for (i, leg) in self.legs.iter().enumerate() {
            let (s, e) = leg.ends()?;
            if !same_map(&s, &at) {
                return fail(format!("leg {i} does not start where the chain stands"));
            }
            if s.degree() != self.d || e.degree() != self.d {
                return fail(format!("leg {i} leaves degree {}", self.d));
            }
            match leg {
                Leg::Path { certificate, .. } => certificate.validate()?,
                Leg::Witness { report, c2_conjugator, c2_family, .. } => {
                    report.verify()?;
                    let moved: RationalMap = report.map.conjugate(c2_conjugator);
                    if !c2_family.build()?.proj_eq(&moved) {
                        return fail(format!("leg {i}: C2 normal form is not the conjugated witness"));
                    }
                    let inv = report.involution();
                    if c2_conjugator.compose(inv).compose(&c2_conjugator.inverse()) != minus_z() {
                        return fail(format!("leg {i}: conjugator does not send the involution to -z"));
                    }
                    if c2_family.n() != 2 {
                        return fail(format!("leg {i}: C2 family has n = {}", c2_family.n()));
                    }
                }
                Leg::Gap { from, to, .. } => {
                    if from.n() != to.n() || same_family(from, to) {
                        return fail(format!("leg {i}: gap marker between {from} and {to}"));
                    }
                }
            }
            at = e;
        }
        if !same_map(&at, &self.end) {
            return fail("chain does not end at the second endpoint".into());
        }
        Ok(())
    }
}
