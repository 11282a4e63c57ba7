//! Exhaustive certification sweeps over all polynomials of a degree, or over
//! the members of a family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{CubicChar2FamilyInstance, QuadraticFamilyInstance, QuarticChar3FamilyInstance, QuarticFamilyInstance};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::stability::{certify_stability, Budget, Method, StabilityReport};
use crate::tower::{FieldElement, LevelField};

/// Largest `q` swept by default, indexed by `d - 2`.
pub const DEFAULT_CENSUS_MAX_Q: [u64; 3] = [27, 9, 5];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusOptions {
    pub q: u64,
    pub degree: usize,
    pub depth: usize,
    pub family_only: bool,
    pub method: Method,
    pub max_q: [u64; 3],
}

impl CensusOptions {
    pub fn new(q: u64, degree: usize, depth: usize) -> Self {
        Self {
            q,
            degree,
            depth,
            family_only: false,
            method: Method::TheoremDriven,
            max_q: DEFAULT_CENSUS_MAX_Q,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusRow {
    pub index: usize,
    pub poly: String,
    /// Family parameters, empty outside family sweeps.
    pub params: String,
    pub verdicts: String,
    pub first_reducible: Option<usize>,
    pub certificate: Option<String>,
    pub stable_to_depth: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusSummary {
    pub q: u64,
    pub degree: usize,
    pub depth: usize,
    pub family_only: bool,
    pub total: usize,
    pub stable_to_depth: usize,
    /// `(q^2 - 1)/2`.
    pub stated_bound: u64,
    /// `(q - 1)^2 / 4`.
    pub prior_bound: u64,
}

struct Candidate {
    poly: Poly<FieldElement>,
    params: String,
}

/// Certify every candidate to `depth`, in canonical input order.
pub fn run_census(field: &LevelField, opts: &CensusOptions, budget: &Budget) -> Result<(Vec<CensusRow>, CensusSummary)> {
    let d = opts.degree;
    if !(2..=4).contains(&d) {
        return Err(Error::DegreeUnsupported(d));
    }
    let q = field.small_cardinality().unwrap_or(u64::MAX);
    if q != opts.q {
        return Err(Error::HypothesisViolated(format!("field has {q} elements, expected {}", opts.q)));
    }
    if q > opts.max_q[d - 2] {
        return Err(Error::SizeCapExceeded(format!(
            "census over F_{q} in degree {d} (cap {})",
            opts.max_q[d - 2]
        )));
    }
    let candidates = if opts.family_only {
        family_candidates(field, d)?
    } else {
        all_polys(field, d)
    };
    let ring = PolyRing::new(field.clone());
    let reports: Vec<StabilityReport> = candidates
        .par_iter()
        .map(|c| certify_stability(field, &c.poly, opts.depth, opts.method, budget))
        .collect::<Result<_>>()?;
    let rows: Vec<CensusRow> = candidates
        .iter()
        .zip(&reports)
        .enumerate()
        .map(|(index, (c, r))| CensusRow {
            index,
            poly: ring.format(&c.poly),
            params: c.params.clone(),
            verdicts: r.verdict_string(),
            first_reducible: r.first_reducible,
            certificate: r.certificate.clone(),
            stable_to_depth: r.stable_to_depth(),
        })
        .collect();
    let summary = CensusSummary {
        q,
        degree: d,
        depth: opts.depth,
        family_only: opts.family_only,
        total: rows.len(),
        stable_to_depth: rows.iter().filter(|r| r.stable_to_depth).count(),
        stated_bound: (q * q - 1) / 2,
        prior_bound: (q - 1) * (q - 1) / 4,
    };
    Ok((rows, summary))
}

/// Every polynomial of exact degree `d`, ordered by coefficient indices with
/// the constant term varying fastest.
fn all_polys(field: &LevelField, d: usize) -> Vec<Candidate> {
    let elems = field.elements();
    let q = elems.len();
    let ring = PolyRing::new(field.clone());
    let total = q.pow(d as u32) * (q - 1);
    (0..total)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(elems[idx % q].clone());
                idx /= q;
            }
            coeffs.push(elems[1 + idx].clone());
            Candidate {
                poly: ring.from_coeffs(coeffs),
                params: String::new(),
            }
        })
        .collect()
}

/// Members of the family for degree `d` whose hypotheses hold over `field`.
fn family_candidates(field: &LevelField, d: usize) -> Result<Vec<Candidate>> {
    let elems = field.elements();
    let nonzero = &elems[1..];
    let fmt = |x: &FieldElement| field.format(x);
    let mut out = Vec::new();
    let p = field.characteristic();
    match d {
        2 => {
            for b in nonzero {
                for delta in nonzero {
                    if field.is_square(delta)? {
                        continue;
                    }
                    let inst = QuadraticFamilyInstance::build(field, b, delta)?;
                    out.push(Candidate {
                        poly: inst.f().clone(),
                        params: format!("b={} delta={}", fmt(b), fmt(delta)),
                    });
                }
            }
        }
        3 if p == 2 => {
            for a in nonzero {
                for b in nonzero {
                    if let Ok(inst) = CubicChar2FamilyInstance::build(field, a, b) {
                        out.push(Candidate {
                            poly: inst.f().clone(),
                            params: format!("a={} b={}", fmt(a), fmt(b)),
                        });
                    }
                }
            }
        }
        4 if p == 3 => {
            for a in &elems {
                for b in nonzero {
                    for c in nonzero {
                        let inst = QuarticChar3FamilyInstance::build(field, a, b, c)?;
                        out.push(Candidate {
                            poly: inst.f().clone(),
                            params: format!("a={} b={} c={}", fmt(a), fmt(b), fmt(c)),
                        });
                    }
                }
            }
        }
        4 => {
            for a in nonzero {
                for b in nonzero {
                    let inst = QuarticFamilyInstance::build(field, a, b)?;
                    if inst.is_stable() {
                        out.push(Candidate {
                            poly: inst.f().clone(),
                            params: format!("a={} b={}", fmt(a), fmt(b)),
                        });
                    }
                }
            }
        }
        _ => {
            return Err(Error::HypothesisViolated(format!(
                "no family of degree {d} over characteristic {p}"
            )))
        }
    }
    Ok(out)
}
