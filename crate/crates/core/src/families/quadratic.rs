//! `f(x) = b x^2 + (δ/2) x + (δ^2 - 4δ)/(16b)` over F_q, q odd: the
//! discriminant is `δ`, and `Δ_n = δ + 4bα_n` satisfies `Δ_n^2 = 4Δ_{n-1}`.

use std::collections::HashSet;

use serde::Serialize;

use super::{q_mod_4, shifted_power};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::stability::ChainTrace;
use crate::tower::{FieldElement, LevelField};

#[derive(Clone, Debug)]
pub struct QuadraticFamilyInstance {
    field: LevelField,
    b: FieldElement,
    delta: FieldElement,
    f: Poly<FieldElement>,
}

/// Outcome of walking the chain and checking `Δ_n^2 = 4Δ_{n-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaRecurrence {
    /// `Δ_n` in the text encoding, `n = 0..=depth`.
    pub deltas: Vec<String>,
    /// Recurrence at `n = 1..=depth` (index `n - 1`).
    pub recurrence: Vec<bool>,
    /// Whether `Δ_n` is a square at its level.
    pub square: Vec<bool>,
}

impl DeltaRecurrence {
    pub fn holds(&self) -> bool {
        self.recurrence.iter().all(|&x| x)
    }

    pub fn all_nonsquare(&self) -> bool {
        self.square.iter().all(|&s| !s)
    }
}

impl QuadraticFamilyInstance {
    pub fn build(field: &LevelField, b: &FieldElement, delta: &FieldElement) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        if delta.is_zero() {
            return Err(Error::ZeroParameter("delta"));
        }
        let ring = PolyRing::new(field.clone());
        let two_inv = field.inv(&field.from_int(2))?;
        let sixteen_b_inv = field.inv(&field.mul(&field.from_int(16), b))?;
        let c1 = field.mul(delta, &two_inv);
        let num = field.sub(&field.mul(delta, delta), &field.mul(&field.from_int(4), delta));
        let c0 = field.mul(&num, &sixteen_b_inv);
        let f = ring.from_coeffs(vec![c0, c1, b.clone()]);
        if ring.discriminant(&f)? != *delta {
            return Err(Error::HypothesisViolated("discriminant differs from delta".into()));
        }
        Ok(Self {
            field: field.clone(),
            b: b.clone(),
            delta: delta.clone(),
            f,
        })
    }

    /// The `(a, b, c)` form `b(x+a)^2 + c(x+a) - a + (c^2 - 2c)/(4b)`, which
    /// depends only on `b` and `δ = 4ab + 2c`.
    pub fn from_shift_params(field: &LevelField, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        let four = field.from_int(4);
        let delta = field.add(&field.mul(&four, &field.mul(a, b)), &field.add(c, c));
        let inst = Self::build(field, b, &delta)?;
        let ring = PolyRing::new(field.clone());
        let tail = field.sub(
            &field.mul(&field.sub(&field.mul(c, c), &field.add(c, c)), &field.inv(&field.mul(&four, b))?),
            a,
        );
        let g = ring.add(
            &ring.add(&shifted_power(&ring, b, a, 2), &shifted_power(&ring, c, a, 1)),
            &ring.constant(tail),
        );
        if g != inst.f {
            return Err(Error::HypothesisViolated("shift form differs from the (b, delta) form".into()));
        }
        Ok(inst)
    }

    /// Members are exactly the quadratics `b x^2 + e x + g` with `δ = 2e ≠ 0`
    /// and discriminant `δ`.
    pub(crate) fn recognize(field: &LevelField, f: &Poly<FieldElement>) -> Option<Self> {
        let c = f.coeffs();
        let delta = field.add(&c[1], &c[1]);
        let inst = Self::build(field, &c[2], &delta).ok()?;
        (inst.f == *f).then_some(inst)
    }

    pub fn f(&self) -> &Poly<FieldElement> {
        &self.f
    }

    pub fn field(&self) -> &LevelField {
        &self.field
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn delta(&self) -> &FieldElement {
        &self.delta
    }

    /// Stable iff `q ≡ 1 (mod 4)` and `δ` is a non-square.
    pub fn is_stable(&self) -> bool {
        q_mod_4(&self.field) == 1 && !self.field.is_square(&self.delta).unwrap()
    }

    /// `Δ_n = δ + 4bα_n`, the discriminant of `f_n`.
    pub fn delta_at(&self, chain: &ChainTrace, n: usize) -> Result<FieldElement> {
        let field = chain.field_at(n)?;
        let four_b = chain.lift(&self.field.mul(&self.field.from_int(4), &self.b), n)?;
        let t = field.mul(&four_b, chain.alpha(n)?);
        Ok(field.add(&chain.lift(&self.delta, n)?, &t))
    }

    pub fn level_irreducible(&self, chain: &ChainTrace, n: usize) -> Result<bool> {
        let d = self.delta_at(chain, n)?;
        Ok(!chain.field_at(n)?.is_square(&d)?)
    }

    /// Walk the chain to `depth`, checking `Δ_n^2 = 4Δ_{n-1}` and recording
    /// which `Δ_n` are squares.
    pub fn delta_recurrence_check(&self, depth: usize) -> Result<DeltaRecurrence> {
        let mut chain = ChainTrace::new(&self.field, &self.f, Default::default())?;
        let mut out = DeltaRecurrence {
            deltas: Vec::new(),
            recurrence: Vec::new(),
            square: Vec::new(),
        };
        let mut prev: Option<FieldElement> = None;
        for n in 0..=depth {
            let field = chain.field_at(n)?;
            let d = self.delta_at(&chain, n)?;
            if let Some(p) = &prev {
                let p = chain.tower().embed(p, d.level())?;
                let lhs = field.mul(&d, &d);
                let rhs = field.mul(&field.from_int(4), &p);
                out.recurrence.push(lhs == rhs);
            }
            let square = field.is_square(&d)?;
            out.deltas.push(field.format(&d));
            out.square.push(square);
            prev = Some(d);
            if n < depth {
                chain = chain.extend_known(!square).map_err(|e| Error::ChainConstructionFailed {
                    depth: n + 1,
                    reason: e.to_string(),
                })?;
            }
        }
        Ok(out)
    }
}

/// The family count for `q ≡ 1 (mod 4)` beside two published-style bounds.
#[derive(Clone, Debug, Serialize)]
pub struct QuadCount {
    /// Distinct stable family members: `(q-1)` choices of `b` times `(q-1)/2` non-squares.
    pub count: u64,
    /// `(q^2 - 1)/2`.
    pub stated_bound: u64,
    /// `(q - 1)^2 / 4`.
    pub prior_bound: u64,
    #[serde(skip)]
    pub instances: Vec<QuadraticFamilyInstance>,
}

/// Enumerate every `(b, δ)` with `b ≠ 0` and `δ` a non-square.
pub fn quad_count_lower_bound(field: &LevelField) -> Result<QuadCount> {
    if field.characteristic() == 2 || q_mod_4(field) != 1 {
        return Err(Error::WrongResidueClass("q must be 1 mod 4".into()));
    }
    let q = field.small_cardinality().ok_or_else(|| Error::SizeCapExceeded("q".into()))?;
    let elems = field.elements();
    let mut seen = HashSet::new();
    let mut instances = Vec::new();
    for b in elems.iter().skip(1) {
        for delta in elems.iter().skip(1) {
            if field.is_square(delta)? {
                continue;
            }
            let inst = QuadraticFamilyInstance::build(field, b, delta)?;
            if !seen.insert(inst.f.clone()) {
                return Err(Error::HypothesisViolated("family members coincide".into()));
            }
            instances.push(inst);
        }
    }
    let count = instances.len() as u64;
    debug_assert_eq!(count, (q - 1) * (q - 1) / 2);
    Ok(QuadCount {
        count,
        stated_bound: (q * q - 1) / 2,
        prior_bound: (q - 1) * (q - 1) / 4,
        instances,
    })
}
