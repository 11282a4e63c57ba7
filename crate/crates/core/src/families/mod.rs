//! Explicit families of stable polynomials and their level-wise criteria.
//!
//! Each family is written as `f(x) = b^{d-1}(x+a)^d + c(x+a) + e`, so that
//! `y = b(x + a)` turns `f_n = f - α_n` into a normalized `g_n(y)` whose
//! irreducibility has a closed-form test in terms of `β_n = b(α_n + a)`.

mod cubic;
mod quadratic;
mod quartic;

use num_traits::ToPrimitive;

pub use cubic::{trinomial_stability_claim, cubic_level_irreducible, trace_inverse_identity_holds, CubicBetaRecurrence, CubicChar2FamilyInstance};
pub use quadratic::{quad_count_lower_bound, DeltaRecurrence, QuadCount, QuadraticFamilyInstance};
pub use quartic::{
    Quartic3Level, QuarticBetaRecurrence, QuarticChar3FamilyInstance, QuarticFamilyInstance,
};

use crate::error::Result;
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::stability::ChainTrace;
use crate::tower::{FieldElement, LevelField};

/// Certificate and tag names.
pub const QUADRATIC_TAG: &str = "quadratic-nonsquare-discriminant-family";
pub const CUBIC_CHAR2_TAG: &str = "cubic-char2-trace-family";
pub const QUARTIC_TAG: &str = "quartic-nonsquare-binomial-family";
pub const QUARTIC_CHAR3_TAG: &str = "quartic-char3-resolvent-family";

/// A polynomial recognized as a member of one of the families.
#[derive(Clone, Debug)]
pub enum FamilyShape {
    Quadratic(QuadraticFamilyInstance),
    CubicChar2(CubicChar2FamilyInstance),
    Quartic(QuarticFamilyInstance),
    QuarticChar3(QuarticChar3FamilyInstance),
}

impl FamilyShape {
    /// Recognize `f` over `base`; `None` when no family (with its hypotheses) fits.
    pub fn detect(base: &LevelField, f: &Poly<FieldElement>) -> Option<FamilyShape> {
        let p = base.characteristic();
        match (f.degree()?, p) {
            (2, p) if p != 2 => QuadraticFamilyInstance::recognize(base, f).map(FamilyShape::Quadratic),
            (3, 2) => CubicChar2FamilyInstance::recognize(base, f).map(FamilyShape::CubicChar2),
            (4, 3) => QuarticChar3FamilyInstance::recognize(base, f)
                .map(FamilyShape::QuarticChar3)
                .or_else(|| QuarticFamilyInstance::recognize(base, f).map(FamilyShape::Quartic)),
            (4, _) => QuarticFamilyInstance::recognize(base, f).map(FamilyShape::Quartic),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilyShape::Quadratic(_) => QUADRATIC_TAG,
            FamilyShape::CubicChar2(_) => CUBIC_CHAR2_TAG,
            FamilyShape::Quartic(_) => QUARTIC_TAG,
            FamilyShape::QuarticChar3(_) => QUARTIC_CHAR3_TAG,
        }
    }

    /// The family theorem's tag when its hypotheses already imply stability at
    /// every depth. The char-3 quartic criterion covers all levels and so
    /// never certifies from finitely many.
    pub fn certificate(&self) -> Option<&'static str> {
        let proven = match self {
            FamilyShape::Quadratic(i) => i.is_stable(),
            FamilyShape::CubicChar2(i) => i.is_stable(),
            FamilyShape::Quartic(i) => i.is_stable(),
            FamilyShape::QuarticChar3(_) => false,
        };
        proven.then(|| self.tag())
    }

    /// Closed-form irreducibility of `f_n` over the level of `α_n`.
    pub fn level_irreducible(&self, chain: &ChainTrace, n: usize) -> Result<bool> {
        match self {
            FamilyShape::Quadratic(i) => i.level_irreducible(chain, n),
            FamilyShape::CubicChar2(i) => i.level_irreducible(chain, n),
            FamilyShape::Quartic(i) => i.level_irreducible(chain, n),
            FamilyShape::QuarticChar3(i) => i.level_irreducible(chain, n),
        }
    }
}

/// `q mod 4` for the base field.
pub(crate) fn q_mod_4(field: &LevelField) -> u32 {
    (field.cardinality() % 4u32).to_u32().unwrap()
}

/// `lead · (x + a)^k`.
pub(crate) fn shifted_power(ring: &PolyRing<LevelField>, lead: &FieldElement, a: &FieldElement, k: usize) -> Poly<FieldElement> {
    let field = ring.field();
    let lin = ring.from_coeffs(vec![a.clone(), field.one()]);
    let mut acc = ring.constant(lead.clone());
    for _ in 0..k {
        acc = ring.mul(&acc, &lin);
    }
    acc
}

/// `β_n = b(α_n + a)` at the level of `α_n`.
pub(crate) fn beta_at(chain: &ChainTrace, n: usize, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    let field = chain.field_at(n)?;
    let alpha = chain.alpha(n)?;
    let sum = field.add(alpha, &chain.lift(a, n)?);
    Ok(field.mul(&chain.lift(b, n)?, &sum))
}

#[cfg(test)]
mod tests;
