//! Depth-limited stability certification through the Capelli step.
//!
//! For a polynomial `f` of degree `d` over F_q, `f^{(n+1)}` is irreducible
//! given an irreducible `f^{(n)}` exactly when `f_n = f - α_n` is irreducible
//! over F_{q^{d^n}}, where `α_n` runs along the root chain of [`ChainTrace`].

mod chain;
mod report;
mod sr;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use chain::{extend_chain, ChainTrace, RootPolicy};
pub use report::{LevelRecord, MethodTag, StabilityReport, Verdict};
pub use sr::{sr_check, SrOutcome};

use crate::error::{Error, Result};
use crate::families::FamilyShape;
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::tower::{FieldElement, LevelField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Generic irreducibility of `f_n` at every level.
    Generic,
    /// A family's closed-form criterion when `f` has a family shape, otherwise generic.
    TheoremDriven,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Generic => "generic",
            Method::TheoremDriven => "theorem-driven",
        }
    }
}

/// Guards against runaway field sizes. Depth caps are indexed by `d - 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub generic_depth: [usize; 3],
    pub theorem_depth: [usize; 3],
    /// Cap on `log2(q^{d^depth})`.
    pub max_field_bits: u64,
    /// Cap on the degree of materialized iterates.
    pub degree_cap: u128,
    pub time_limit_secs: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            generic_depth: [10, 6, 5],
            theorem_depth: [12, 9, 6],
            max_field_bits: 1 << 15,
            degree_cap: 2187,
            time_limit_secs: None,
        }
    }
}

impl Budget {
    /// Defaults overridden by `STABLEPOLY_MAX_DEPTH`, `STABLEPOLY_MAX_FIELD_BITS`,
    /// `STABLEPOLY_DEGREE_CAP` and `STABLEPOLY_TIME_LIMIT_SECS`.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self> {
        fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("{key}: cannot parse `{v}`")))
        }
        let mut b = Budget::default();
        if let Some(v) = get("STABLEPOLY_MAX_DEPTH") {
            let d: usize = parse("STABLEPOLY_MAX_DEPTH", &v)?;
            b.generic_depth = [d; 3];
            b.theorem_depth = [d; 3];
        }
        if let Some(v) = get("STABLEPOLY_MAX_FIELD_BITS") {
            b.max_field_bits = parse("STABLEPOLY_MAX_FIELD_BITS", &v)?;
        }
        if let Some(v) = get("STABLEPOLY_DEGREE_CAP") {
            b.degree_cap = parse("STABLEPOLY_DEGREE_CAP", &v)?;
        }
        if let Some(v) = get("STABLEPOLY_TIME_LIMIT_SECS") {
            b.time_limit_secs = Some(parse("STABLEPOLY_TIME_LIMIT_SECS", &v)?);
        }
        Ok(b)
    }

    /// Raise both depth caps to at least `depth`.
    pub fn allow_depth(mut self, depth: usize) -> Self {
        for c in self.generic_depth.iter_mut().chain(self.theorem_depth.iter_mut()) {
            *c = (*c).max(depth);
        }
        self
    }

    pub fn depth_cap(&self, d: usize, method: Method) -> usize {
        let caps = match method {
            Method::Generic => &self.generic_depth,
            Method::TheoremDriven => &self.theorem_depth,
        };
        caps[d.clamp(2, 4) - 2]
    }

    /// Check `log2(q^{d^depth})` against the cap.
    pub fn check_field_size(&self, base: &LevelField, d: usize, depth: usize) -> Result<()> {
        let bits = (base.cardinality().bits() as f64 - 1.0).max(1.0) as u128;
        let bits = (d as u128)
            .checked_pow(depth as u32)
            .and_then(|x| x.checked_mul(bits))
            .unwrap_or(u128::MAX);
        if bits > self.max_field_bits as u128 {
            return Err(Error::SizeCapExceeded(format!(
                "F_{{q^{{{d}^{depth}}}}} needs about {bits} bits, cap {}",
                self.max_field_bits
            )));
        }
        Ok(())
    }
}

/// Whether `f_n` is irreducible over the level of `α_n`. By the Capelli
/// step this decides `f^{(n+1)}` once `f^{(n)}` is known irreducible.
pub fn capelli_step(trace: &ChainTrace, n: usize) -> Result<bool> {
    let fn_ = trace.shifted(n)?;
    let field = trace.field_at(n)?;
    Ok(PolyRing::new(field).is_irreducible(fn_))
}

/// Certify `f` level by level for `n = 0..=depth`, stopping at the first
/// reducible `f_n`.
pub fn certify_stability(
    base: &LevelField,
    f: &Poly<FieldElement>,
    depth: usize,
    method: Method,
    budget: &Budget,
) -> Result<StabilityReport> {
    let d = f.degree().unwrap_or(0);
    if !(2..=4).contains(&d) {
        return Err(Error::DegreeUnsupported(d));
    }
    let cap = budget.depth_cap(d, method);
    if depth > cap {
        return Err(Error::DepthBudgetExceeded(format!(
            "depth {depth} exceeds the {} cap {cap} for degree {d}",
            method.name()
        )));
    }
    budget.check_field_size(base, d, depth)?;
    let shape = FamilyShape::detect(base, f);
    let started = Instant::now();
    let mut chain = ChainTrace::new(base, f, RootPolicy::default())?;
    let mut levels = Vec::with_capacity(depth + 1);
    let mut first_reducible = None;
    for n in 0..=depth {
        let t0 = Instant::now();
        let (irreducible, tag) = match (&shape, method) {
            (Some(s), Method::TheoremDriven) => (s.level_irreducible(&chain, n)?, MethodTag::Theorem(s.tag().into())),
            _ => (capelli_step(&chain, n)?, MethodTag::Generic),
        };
        levels.push(LevelRecord {
            depth: n,
            verdict: if irreducible { Verdict::Irreducible } else { Verdict::Reducible },
            method: tag,
            millis: t0.elapsed().as_secs_f64() * 1e3,
        });
        if !irreducible {
            first_reducible = Some(n);
            break;
        }
        if let Some(limit) = budget.time_limit_secs {
            if started.elapsed().as_secs_f64() > limit && n < depth {
                return Err(Error::DepthBudgetExceeded(format!(
                    "time limit of {limit}s reached after depth {n}"
                )));
            }
        }
        if n < depth {
            chain = chain.extend_known(true)?;
        }
    }
    for n in levels.len()..=depth {
        levels.push(LevelRecord {
            depth: n,
            verdict: Verdict::Untested,
            method: MethodTag::Generic,
            millis: 0.0,
        });
    }
    let certificate = match (&shape, first_reducible) {
        (Some(s), None) => s.certificate().map(str::to_string),
        _ => None,
    };
    Ok(StabilityReport {
        field: base.tower().describe(),
        q: base.cardinality().to_string(),
        poly: PolyRing::new(base.clone()).format(f),
        degree: d,
        depth,
        method: method.name().into(),
        levels,
        first_reducible,
        certificate,
    })
}

/// Whether `f^{(n)}` is irreducible over F_q, by materializing it.
pub fn direct_iterate_oracle(base: &LevelField, f: &Poly<FieldElement>, n: u32, cap: u128) -> Result<bool> {
    let ring = PolyRing::new(base.clone());
    let it = ring.iterate(f, n, cap)?;
    Ok(ring.is_irreducible(&it))
}

/// Degree of the iterate the oracle would materialize.
pub fn iterate_degree(d: usize, n: u32) -> u128 {
    (d as u128).saturating_pow(n)
}

/// Parse a polynomial over `base` in the text encoding.
pub fn parse_poly(base: &LevelField, s: &str) -> Result<Poly<FieldElement>> {
    crate::tower::text::parse_poly(base.tower(), base.level(), s)
}

/// Parse a field element over `base` in the text encoding.
pub fn parse_element(base: &LevelField, s: &str) -> Result<FieldElement> {
    crate::tower::text::parse_element(base.tower(), base.level(), s)
}

/// The field the engine treats as F_q for a bare prime power.
pub fn base_field(q: u64) -> Result<LevelField> {
    crate::tower::canonical_field(q)
}
