use serde::Serialize;

use super::chain::lift_poly;
use super::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::tower::{first_irreducible, FieldElement, LevelField};

/// Enumeration limit on `|F_{q^r}|` for the exhaustive shift check.
const SR_MAX_ELEMENTS: u64 = 1 << 20;

#[derive(Clone, Debug, Serialize)]
pub struct SrOutcome {
    pub holds: bool,
    /// First failing `(r, a)`, with `a` written in F_{q^r}.
    pub witness: Option<(usize, String)>,
    /// Number of shifts checked.
    pub checked: u64,
}

/// Whether `f - a` has a root in F_{q^{dr}} for every `r ≤ r_max` and every
/// `a ∈ F_{q^r}`. Such a root exists iff `f - a` has an irreducible factor over
/// F_{q^r} whose degree divides `d`.
pub fn sr_check(base: &LevelField, f: &Poly<FieldElement>, d: usize, r_max: usize, budget: &Budget) -> Result<SrOutcome> {
    if f.degree() != Some(d) {
        return Err(Error::DegreeUnsupported(f.degree().unwrap_or(0)));
    }
    let q_bits = base.cardinality().bits() as u128;
    if q_bits * (r_max * d) as u128 > budget.max_field_bits as u128 {
        return Err(Error::SizeCapExceeded(format!("q^{}", r_max * d)));
    }
    let q = base.small_cardinality().ok_or_else(|| Error::SizeCapExceeded("q".into()))?;
    let mut checked = 0;
    for r in 1..=r_max {
        let count = q
            .checked_pow(r as u32)
            .filter(|&c| c <= SR_MAX_ELEMENTS)
            .ok_or_else(|| Error::SizeCapExceeded(format!("|F_{{q^{r}}}| above {SR_MAX_ELEMENTS}")))?;
        let tower = base.tower().truncate(base.level());
        let (tower, level) = if r == 1 {
            (tower, base.level())
        } else {
            let g = first_irreducible(&tower, base.level(), r);
            (tower.extend_trusted(g.into_coeffs()), base.level() + 1)
        };
        let field = LevelField::new(tower.clone(), level);
        let ring = PolyRing::new(field.clone());
        let lifted = lift_poly(&tower, f, level)?;
        for idx in 0..count {
            let a = field.element(idx);
            let mut c = lifted.coeffs().to_vec();
            c[0] = field.sub(&c[0], &a);
            let shifted = ring.from_coeffs(c);
            checked += 1;
            let ok = ring
                .factor_pattern(&shifted)
                .parts()
                .iter()
                .any(|&(k, _)| d % k == 0);
            if !ok {
                return Ok(SrOutcome {
                    holds: false,
                    witness: Some((r, field.format(&a))),
                    checked,
                });
            }
        }
    }
    Ok(SrOutcome {
        holds: true,
        witness: None,
        checked,
    })
}
