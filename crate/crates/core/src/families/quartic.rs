//! Quartic families over odd F_q.
//!
//! - `f(x) = b^3(x+a)^4 - a`, `q ≡ 1 (mod 4)`: `g_n(y) = y^4 - β_n`, with
//!   `β_n^4 = β_{n-1}`; irreducible iff `β_n` is a non-square.
//! - `f(x) = b^3(x+a)^4 + c(x+a) - a`, `q = 3^m`: `g_n(y) = y^4 + cy - β_n`,
//!   irreducible iff the resolvent `x^3 + β_n x - c^2` has exactly one root
//!   at that level and it is a non-square.

use serde::Serialize;

use super::{beta_at, q_mod_4, shifted_power};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::stability::{certify_stability, Budget, ChainTrace, Method, StabilityReport};
use crate::tower::{FieldElement, LevelField};

#[derive(Clone, Debug)]
pub struct QuarticFamilyInstance {
    field: LevelField,
    a: FieldElement,
    b: FieldElement,
    f: Poly<FieldElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticBetaRecurrence {
    /// `β_n^4 = β_{n-1}` at `n = 1..=depth`.
    pub recurrence: Vec<bool>,
    /// Whether `β_n` is a non-square at its level, `n = 0..=depth`.
    pub nonsquare: Vec<bool>,
}

impl QuarticBetaRecurrence {
    pub fn holds(&self) -> bool {
        self.recurrence.iter().all(|&x| x)
    }
}

/// Some `b` with `b^3 = l`, searching the field in index order.
fn cube_root(field: &LevelField, l: &FieldElement) -> Option<FieldElement> {
    if field.characteristic() == 3 {
        return Some(field.pth_root(l));
    }
    let q = field.small_cardinality().filter(|&q| q <= 1 << 16)?;
    (1..q)
        .map(|i| field.element(i))
        .find(|b| field.mul(&field.mul(b, b), b) == *l)
}

impl QuarticFamilyInstance {
    pub fn build(field: &LevelField, a: &FieldElement, b: &FieldElement) -> Result<Self> {
        if field.characteristic() == 2 || q_mod_4(field) != 1 {
            return Err(Error::WrongResidueClass("q must be 1 mod 4".into()));
        }
        if a.is_zero() {
            return Err(Error::ZeroParameter("a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        let ring = PolyRing::new(field.clone());
        let b3 = field.mul(&field.mul(b, b), b);
        let f = ring.sub(&shifted_power(&ring, &b3, a, 4), &ring.constant(a.clone()));
        Ok(Self {
            field: field.clone(),
            a: a.clone(),
            b: b.clone(),
            f,
        })
    }

    pub(crate) fn recognize(field: &LevelField, f: &Poly<FieldElement>) -> Option<Self> {
        let c = f.coeffs();
        let a = field.div(&c[3], &field.mul(&field.from_int(4), &c[4])).ok()?;
        let b = cube_root(field, &c[4])?;
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

    /// Stable iff `ab` is a non-square.
    pub fn is_stable(&self) -> bool {
        !self.field.is_square(&self.field.mul(&self.a, &self.b)).unwrap()
    }

    pub fn beta_at(&self, chain: &ChainTrace, n: usize) -> Result<FieldElement> {
        beta_at(chain, n, &self.a, &self.b)
    }

    pub fn level_irreducible(&self, chain: &ChainTrace, n: usize) -> Result<bool> {
        let beta = self.beta_at(chain, n)?;
        Ok(!chain.field_at(n)?.is_square(&beta)?)
    }

    pub fn beta_recurrence_check(&self, depth: usize) -> Result<QuarticBetaRecurrence> {
        let mut chain = ChainTrace::new(&self.field, &self.f, Default::default())?;
        let mut out = QuarticBetaRecurrence {
            recurrence: Vec::new(),
            nonsquare: Vec::new(),
        };
        let mut prev: Option<FieldElement> = None;
        for n in 0..=depth {
            let field = chain.field_at(n)?;
            let beta = self.beta_at(&chain, n)?;
            if let Some(p) = &prev {
                let p = chain.tower().embed(p, beta.level())?;
                out.recurrence.push(field.pow_u64(&beta, 4) == p);
            }
            let nonsquare = !field.is_square(&beta)?;
            out.nonsquare.push(nonsquare);
            prev = Some(beta);
            if n < depth {
                chain = chain.extend_known(nonsquare).map_err(|e| Error::ChainConstructionFailed {
                    depth: n + 1,
                    reason: e.to_string(),
                })?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct QuarticChar3FamilyInstance {
    field: LevelField,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    f: Poly<FieldElement>,
}

/// The resolvent criterion at one level.
#[derive(Clone, Debug, Serialize)]
pub struct Quartic3Level {
    pub depth: usize,
    pub beta: String,
    /// Number of roots of `x^3 + β_n x - c^2` at this level.
    pub resolvent_roots: usize,
    /// Residue status of the root when it is unique.
    pub root_nonsquare: Option<bool>,
    pub irreducible: bool,
}

impl QuarticChar3FamilyInstance {
    pub fn build(field: &LevelField, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<Self> {
        if field.characteristic() != 3 {
            return Err(Error::WrongResidueClass("q must be a power of 3".into()));
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        if c.is_zero() {
            return Err(Error::ZeroParameter("c"));
        }
        let ring = PolyRing::new(field.clone());
        let b3 = field.mul(&field.mul(b, b), b);
        let f = ring.sub(
            &ring.add(&shifted_power(&ring, &b3, a, 4), &shifted_power(&ring, c, a, 1)),
            &ring.constant(a.clone()),
        );
        Ok(Self {
            field: field.clone(),
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            f,
        })
    }

    /// In characteristic 3, `4 = 1`: `a = c_3 / c_4`, `b` is the unique cube
    /// root of `c_4`, and `c` is what remains of the linear coefficient.
    pub(crate) fn recognize(field: &LevelField, f: &Poly<FieldElement>) -> Option<Self> {
        let k = f.coeffs();
        let a = field.div(&k[3], &k[4]).ok()?;
        let b = field.pth_root(&k[4]);
        let a3 = field.mul(&field.mul(&a, &a), &a);
        let c = field.sub(&k[1], &field.mul(&k[4], &a3));
        let inst = Self::build(field, &a, &b, &c).ok()?;
        (inst.f == *f).then_some(inst)
    }

    pub fn f(&self) -> &Poly<FieldElement> {
        &self.f
    }

    pub fn field(&self) -> &LevelField {
        &self.field
    }

    pub fn params(&self) -> (&FieldElement, &FieldElement, &FieldElement) {
        (&self.a, &self.b, &self.c)
    }

    pub fn beta_at(&self, chain: &ChainTrace, n: usize) -> Result<FieldElement> {
        beta_at(chain, n, &self.a, &self.b)
    }

    /// Resolvent criterion at level `n` of the chain.
    pub fn level_check(&self, chain: &ChainTrace, n: usize) -> Result<Quartic3Level> {
        let field = chain.field_at(n)?;
        let beta = self.beta_at(chain, n)?;
        let c = chain.lift(&self.c, n)?;
        let ring = PolyRing::new(field.clone());
        let resolvent = ring.from_coeffs(vec![field.neg(&field.mul(&c, &c)), beta.clone(), field.zero(), field.one()]);
        let roots = ring.roots_in_field(&resolvent);
        let root_nonsquare = match roots.as_slice() {
            [r] => Some(!field.is_square(r)?),
            _ => None,
        };
        Ok(Quartic3Level {
            depth: n,
            beta: field.format(&beta),
            resolvent_roots: roots.len(),
            root_nonsquare,
            irreducible: root_nonsquare == Some(true),
        })
    }

    pub fn level_irreducible(&self, chain: &ChainTrace, n: usize) -> Result<bool> {
        Ok(self.level_check(chain, n)?.irreducible)
    }

    /// Resolvent checks along the chain for `n = 0..=depth`, stopping after
    /// the first failing level.
    pub fn resolvent_levels(&self, depth: usize) -> Result<Vec<Quartic3Level>> {
        let mut chain = ChainTrace::new(&self.field, &self.f, Default::default())?;
        let mut out = Vec::new();
        for n in 0..=depth {
            let lv = self.level_check(&chain, n)?;
            let ok = lv.irreducible;
            out.push(lv);
            if !ok {
                break;
            }
            if n < depth {
                chain = chain.extend_known(true)?;
            }
        }
        Ok(out)
    }

    /// Theorem-driven certification to `depth`.
    pub fn certify(&self, depth: usize, budget: &Budget) -> Result<StabilityReport> {
        certify_stability(&self.field, &self.f, depth, Method::TheoremDriven, budget)
    }
}
