//! The root chain `α_0 = 0`, `f(α_n) = α_{n-1}`, built inside a growing tower.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, PolyRing};
use crate::tower::{FieldElement, LevelField, Tower};

/// Which root of `f_n` the chain follows when `f_n` is reducible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootPolicy {
    /// Root of the first irreducible factor in canonical order (lowest degree).
    #[default]
    LowestDegreeFactor,
    /// Root of the last admissible irreducible factor in canonical order.
    HighestDegreeFactor,
}

/// `α_0, ..., α_n` with the tower levels holding them and the shifted
/// polynomials `f_k = f - α_k` over those levels.
#[derive(Clone, Debug)]
pub struct ChainTrace {
    base: LevelField,
    f: Poly<FieldElement>,
    tower: Tower,
    alphas: Vec<FieldElement>,
    levels: Vec<usize>,
    shifted: Vec<Poly<FieldElement>>,
    moduli_used: Vec<Poly<FieldElement>>,
    step_degrees: Vec<usize>,
    policy: RootPolicy,
}

/// Embed every coefficient of `f` into `level`.
pub(crate) fn lift_poly(tower: &Tower, f: &Poly<FieldElement>, level: usize) -> Result<Poly<FieldElement>> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| tower.embed(c, level))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(coeffs, |c| c.is_zero()))
}

impl ChainTrace {
    /// Start the chain at `α_0 = 0` over `base`.
    pub fn new(base: &LevelField, f: &Poly<FieldElement>, policy: RootPolicy) -> Result<Self> {
        let d = f.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::DegreeUnsupported(d));
        }
        let level = base.level();
        let tower = base.tower().truncate(level);
        if f.coeffs().iter().any(|c| c.level() != level) {
            return Err(Error::LevelMismatch {
                expected: level,
                found: f.coeffs().iter().map(|c| c.level()).find(|&l| l != level).unwrap(),
            });
        }
        Ok(Self {
            base: LevelField::new(tower.clone(), level),
            f: f.clone(),
            alphas: vec![tower.zero(level)],
            levels: vec![level],
            shifted: vec![f.clone()],
            moduli_used: Vec::new(),
            step_degrees: Vec::new(),
            tower,
            policy,
        })
    }

    pub fn f(&self) -> &Poly<FieldElement> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn base(&self) -> &LevelField {
        &self.base
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn policy(&self) -> RootPolicy {
        self.policy
    }

    /// Largest `n` with `α_n` recorded.
    pub fn depth(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn alpha(&self, n: usize) -> Result<&FieldElement> {
        self.alphas.get(n).ok_or(Error::ChainTooShort(n))
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    /// Tower level holding `α_n`.
    pub fn level(&self, n: usize) -> Result<usize> {
        self.levels.get(n).copied().ok_or(Error::ChainTooShort(n))
    }

    /// `f_n = f - α_n` over the level of `α_n`.
    pub fn shifted(&self, n: usize) -> Result<&Poly<FieldElement>> {
        self.shifted.get(n).ok_or(Error::ChainTooShort(n))
    }

    /// Moduli adjoined so far, each monic over the level below it.
    pub fn moduli_used(&self) -> &[Poly<FieldElement>] {
        &self.moduli_used
    }

    /// Degree of each step `[level(n+1) : level(n)]`; 1 when the root was
    /// already present.
    pub fn step_degrees(&self) -> &[usize] {
        &self.step_degrees
    }

    /// The field holding `α_n`.
    pub fn field_at(&self, n: usize) -> Result<LevelField> {
        Ok(LevelField::new(self.tower.clone(), self.level(n)?))
    }

    /// Embed a base-field element at the level of `α_n`.
    pub fn lift(&self, a: &FieldElement, n: usize) -> Result<FieldElement> {
        self.tower.embed(a, self.level(n)?)
    }

    /// Extend by one step, testing `f_n` for irreducibility generically.
    pub fn extend(&self) -> Result<ChainTrace> {
        let n = self.depth();
        let field = self.field_at(n)?;
        let irreducible = PolyRing::new(field).is_irreducible(&self.shifted[n]);
        self.extend_known(irreducible)
    }

    /// Extend by one step given whether `f_n` is irreducible over its level.
    /// An irreducible `f_n` becomes the next modulus and `α_{n+1}` is the class
    /// of `x`; otherwise the chain follows a root of a factor chosen by the policy.
    pub fn extend_known(&self, irreducible: bool) -> Result<ChainTrace> {
        let n = self.depth();
        let level = self.levels[n];
        let fn_ = &self.shifted[n];
        let d = self.degree();
        let field = self.field_at(n)?;
        let ring = PolyRing::new(field.clone());
        let factor = if irreducible {
            ring.monic(fn_)
        } else {
            self.choose_factor(&ring, fn_)?
        };
        let k = factor.degree().unwrap();
        let mut next = self.clone();
        let (alpha, new_level) = if k == 1 {
            (field.neg(&factor.coeffs()[0]), level)
        } else {
            next.tower = self.tower.extend_trusted(factor.coeffs().to_vec());
            next.moduli_used.push(factor);
            (next.tower.generator(level + 1), level + 1)
        };
        next.step_degrees.push(k);
        // f(α_{n+1}) must equal α_n.
        let up = LevelField::new(next.tower.clone(), new_level);
        let f_up = lift_poly(&next.tower, &self.f, new_level)?;
        let image = PolyRing::new(up.clone()).eval(&f_up, &alpha);
        if image != next.tower.embed(&self.alphas[n], new_level)? {
            return Err(Error::ChainConstructionFailed {
                depth: n + 1,
                reason: "f(alpha_{n+1}) differs from alpha_n".into(),
            });
        }
        let shifted = {
            let mut c = f_up.into_coeffs();
            c[0] = up.sub(&c[0], &alpha);
            Poly::from_coeffs(c, |x| x.is_zero())
        };
        debug_assert_eq!(shifted.degree(), Some(d));
        next.alphas.push(alpha);
        next.levels.push(new_level);
        next.shifted.push(shifted);
        Ok(next)
    }

    /// An irreducible factor whose root stays inside F_{q^{d^{n+1}}}.
    fn choose_factor(&self, ring: &PolyRing<LevelField>, fn_: &Poly<FieldElement>) -> Result<Poly<FieldElement>> {
        let n = self.depth();
        let d = self.degree() as u128;
        let have = (self.tower.dim(self.levels[n]) / self.tower.dim(self.levels[0])) as u128;
        let allowed = d.pow(n as u32 + 1);
        let admissible: Vec<Poly<FieldElement>> = ring
            .factor(fn_)
            .into_iter()
            .map(|(g, _)| g)
            .filter(|g| allowed % (have * g.degree().unwrap() as u128) == 0)
            .collect();
        let pick = match self.policy {
            RootPolicy::LowestDegreeFactor => admissible.first(),
            RootPolicy::HighestDegreeFactor => admissible.last(),
        };
        pick.cloned().ok_or(Error::NoRootInRequiredExtension(self.degree()))
    }

    /// Whether `f^{(n)}(α_n) = 0`, evaluating the materialized iterate.
    pub fn iterate_vanishes(&self, n: usize, cap: u128) -> Result<bool> {
        let alpha = self.alpha(n)?;
        let level = self.levels[n];
        let it = PolyRing::new(self.base.clone()).iterate(&self.f, n as u32, cap)?;
        let it = lift_poly(&self.tower, &it, level)?;
        let field = self.field_at(n)?;
        Ok(PolyRing::new(field).eval(&it, alpha).is_zero())
    }
}

/// One more step of the chain.
pub fn extend_chain(trace: &ChainTrace) -> Result<ChainTrace> {
    trace.extend()
}
