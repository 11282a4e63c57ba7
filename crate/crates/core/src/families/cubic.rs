//! `f(x) = b^2(x+a)^3 + x` over F_{2^m} with `Tr((ab)^{-1}) = Tr(1)`.
//! Here `g_n(y) = y^3 + y + β_n` and `β_n^3 + β_n = β_{n-1}`.

use serde::Serialize;

use super::{beta_at, shifted_power};
use crate::classify::char2_quadratic_solutions;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::stability::ChainTrace;
use crate::tower::{FieldElement, LevelField, Tower};

#[derive(Clone, Debug)]
pub struct CubicChar2FamilyInstance {
    field: LevelField,
    a: FieldElement,
    b: FieldElement,
    f: Poly<FieldElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicBetaRecurrence {
    /// `β_n^3 + β_n = β_{n-1}` at `n = 1..=depth`.
    pub recurrence: Vec<bool>,
    /// `β_n ∉ {0, 1}` at `n = 1..=depth`. `β_0 = ab` may equal 1; for
    /// `n ≥ 1` either value would force `β_{n-1} = 0`.
    pub outside_zero_one: Vec<bool>,
    /// `Tr(β_n^{-1}) = Tr(1)` over the level of `β_n`.
    pub trace_identity: Vec<bool>,
    /// Level-wise irreducibility of `g_n` by the closed form.
    pub irreducible: Vec<bool>,
}

impl CubicBetaRecurrence {
    pub fn holds(&self) -> bool {
        self.recurrence.iter().all(|&x| x) && self.outside_zero_one.iter().all(|&x| x) && self.trace_identity.iter().all(|&x| x)
    }
}

impl CubicChar2FamilyInstance {
    pub fn build(field: &LevelField, a: &FieldElement, b: &FieldElement) -> Result<Self> {
        if field.characteristic() != 2 {
            return Err(Error::WrongResidueClass("q must be a power of 2".into()));
        }
        if a.is_zero() {
            return Err(Error::ZeroParameter("a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        let ab_inv = field.inv(&field.mul(a, b))?;
        let lhs = field.absolute_trace(&ab_inv);
        let rhs = field.absolute_trace(&field.one());
        if lhs != rhs {
            return Err(Error::HypothesisViolated(format!(
                "Tr((ab)^-1) = {lhs} but Tr(1) = {rhs}"
            )));
        }
        let ring = PolyRing::new(field.clone());
        let f = ring.add(&shifted_power(&ring, &field.mul(b, b), a, 3), &ring.x());
        Ok(Self {
            field: field.clone(),
            a: a.clone(),
            b: b.clone(),
            f,
        })
    }

    /// Leading coefficient `L = b^2` gives `b` (square roots are unique in
    /// characteristic 2) and `a = c_2 / L`.
    pub(crate) fn recognize(field: &LevelField, f: &Poly<FieldElement>) -> Option<Self> {
        let c = f.coeffs();
        let b = field.pth_root(&c[3]);
        let a = field.div(&c[2], &c[3]).ok()?;
        let inst = Self::build(field, &a, &b).ok()?;
        (inst.f == *f).then_some(inst)
    }

    pub fn f(&self) -> &Poly<FieldElement> {
        &self.f
    }

    pub fn field(&self) -> &LevelField {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// Stable iff irreducible over F_{2^m}.
    pub fn is_stable(&self) -> bool {
        PolyRing::new(self.field.clone()).is_irreducible(&self.f)
    }

    pub fn beta_at(&self, chain: &ChainTrace, n: usize) -> Result<FieldElement> {
        beta_at(chain, n, &self.a, &self.b)
    }

    pub fn level_irreducible(&self, chain: &ChainTrace, n: usize) -> Result<bool> {
        let beta = self.beta_at(chain, n)?;
        cubic_level_irreducible(chain.tower(), chain.level(n)?, &beta)
    }

    /// Walk the chain to `depth` checking the recurrence, `β_n ∉ {0, 1}` and
    /// the trace identity at every level.
    pub fn beta_recurrence_check(&self, depth: usize) -> Result<CubicBetaRecurrence> {
        let mut chain = ChainTrace::new(&self.field, &self.f, Default::default())?;
        let mut out = CubicBetaRecurrence {
            recurrence: Vec::new(),
            outside_zero_one: Vec::new(),
            trace_identity: Vec::new(),
            irreducible: Vec::new(),
        };
        let mut prev: Option<FieldElement> = None;
        for n in 0..=depth {
            let field = chain.field_at(n)?;
            let beta = self.beta_at(&chain, n)?;
            if let Some(p) = &prev {
                let p = chain.tower().embed(p, beta.level())?;
                let lhs = field.add(&field.mul(&field.mul(&beta, &beta), &beta), &beta);
                out.recurrence.push(lhs == p);
            }
            if n > 0 {
                out.outside_zero_one.push(!beta.is_zero() && !field.is_one(&beta));
            }
            let tr = if beta.is_zero() {
                false
            } else {
                field.absolute_trace(&field.inv(&beta)?) == field.absolute_trace(&field.one())
            };
            out.trace_identity.push(tr);
            let irr = cubic_level_irreducible(chain.tower(), chain.level(n)?, &beta)?;
            out.irreducible.push(irr);
            prev = Some(beta);
            if n < depth {
                chain = chain.extend_known(irr).map_err(|e| Error::ChainConstructionFailed {
                    depth: n + 1,
                    reason: e.to_string(),
                })?;
            }
        }
        Ok(out)
    }
}

/// Irreducibility of `y^3 + y + β` over the level of `β` (characteristic 2),
/// by the trinomial criterion: irreducible iff `Tr(β^{-1}) = Tr(1)` and the
/// roots of `x^2 + βx + 1` are non-cubes in F_{2^M} (M even) or F_{2^{2M}}
/// (M odd). For odd `M` the quadratic is irreducible and its root is the class
/// of `x` in the extension it defines.
pub fn cubic_level_irreducible(tower: &Tower, level: usize, beta: &FieldElement) -> Result<bool> {
    if beta.is_zero() {
        return Ok(false);
    }
    let tower = tower.truncate(level);
    let field = LevelField::new(tower.clone(), level);
    let m = field.degree();
    let tr_one = (m % 2) as u32;
    if field.absolute_trace(&field.inv(beta)?) != tr_one {
        return Ok(false);
    }
    let one = field.one();
    if m % 2 == 0 {
        let roots = char2_quadratic_solutions(&field, &one, beta, &one)?.solutions;
        let t1 = roots.first().ok_or_else(|| {
            Error::HypothesisViolated("x^2 + beta x + 1 has no root despite Tr(beta^-1) = 0".into())
        })?;
        Ok(!field.is_cube(t1))
    } else {
        let ext = tower.extend_trusted(vec![one.clone(), beta.clone(), one]);
        let t1 = ext.generator(level + 1);
        Ok(!ext.is_cube(&t1))
    }
}

/// `Tr(u^{-1}) = Tr((u^3 + u)^{-1})` for `u ∉ {0, 1}`.
pub fn trace_inverse_identity_holds(field: &LevelField, u: &FieldElement) -> Result<bool> {
    if u.is_zero() || field.is_one(u) {
        return Err(Error::HypothesisViolated("u must lie outside {0, 1}".into()));
    }
    let v = field.add(&field.mul(&field.mul(u, u), u), u);
    Ok(field.absolute_trace(&field.inv(u)?) == field.absolute_trace(&field.inv(&v)?))
}

/// The stated verdict for `x^3 + x + 1` over F_{2^m}: stable iff `3 ∤ m`.
pub fn trinomial_stability_claim(m: usize) -> bool {
    m % 3 != 0
}
