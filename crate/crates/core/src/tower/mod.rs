//! Exact arithmetic in towers of finite fields F_p ⊂ F_{p^{e_1}} ⊂ F_{p^{e_1 e_2}} ⊂ ...
//!
//! Level `i` is `level_{i-1}[x] / (g_i)` for a monic irreducible `g_i`. An element
//! of level `i` is stored as its flat vector of ground residues: `e_i` consecutive
//! chunks, chunk `j` being the coefficient of `x_i^j` (itself an element of level
//! `i - 1`, recursively flattened). Lower-level elements embed by zero padding.

mod descent;
mod frobenius;
mod level_field;
mod residue;
pub mod text;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, is_prime, mul_mod, residue, sub_mod, Field};
use crate::poly::{Poly, PolyRing};

pub use frobenius::FrobeniusMap;
pub use level_field::LevelField;

/// Levels whose flat dimension reaches this use the subquadratic product for
/// degree-2 and degree-3 steps.
pub const KARATSUBA_MIN_DIM: usize = 512;

/// Largest level cardinality that gets a full multiplication table.
const LEAF_MAX_CARD: u64 = 1024;

/// Products at levels below this flat dimension never touch leaf tables.
const LEAF_MIN_DIM: usize = 64;

/// An element of one level of a [`Tower`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    level: usize,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Flat ground residues.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub(crate) fn from_raw(level: usize, coeffs: Vec<u32>) -> Self {
        Self { level, coeffs }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}{:?}", self.level, self.coeffs)
    }
}

struct LeafTable {
    card: usize,
    dim: usize,
    weights: Vec<u32>,
    unpack: Vec<u32>,
    mul: Vec<u16>,
}

impl LeafTable {
    #[inline]
    fn pack(&self, a: &[u32]) -> usize {
        a.iter()
            .zip(&self.weights)
            .map(|(&c, &w)| (c * w) as usize)
            .sum()
    }

    #[inline]
    fn mul_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let r = self.mul[self.pack(a) * self.card + self.pack(b)] as usize;
        out.copy_from_slice(&self.unpack[r * self.dim..(r + 1) * self.dim]);
    }
}

pub(crate) struct Level {
    degree: usize,
    dim: usize,
    /// Monic modulus coefficients (ascending) at the level below; empty for level 0.
    modulus: Vec<FieldElement>,
    /// Smallest level containing each modulus coefficient.
    native: Vec<usize>,
    cardinality: BigUint,
    leaf: OnceLock<LeafTable>,
    frobenius_image: OnceLock<FieldElement>,
}

/// A field descriptor: a prime and a chain of verified irreducible moduli.
///
/// Immutable once built; extending produces a new tower sharing every level
/// of the old one, so elements of the old tower remain valid in the new one.
#[derive(Clone)]
pub struct Tower {
    p: u32,
    levels: Vec<Arc<Level>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({})", self.describe())
    }
}

impl Tower {
    /// The prime field F_p as a tower of height 0.
    pub fn prime(p: u32) -> Result<Tower> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let level0 = Level {
            degree: 1,
            dim: 1,
            modulus: Vec::new(),
            native: Vec::new(),
            cardinality: BigUint::from(p),
            leaf: OnceLock::new(),
            frobenius_image: OnceLock::new(),
        };
        Ok(Tower {
            p,
            levels: vec![Arc::new(level0)],
        })
    }

    /// Build and verify a tower from its moduli, each given over the level below it.
    pub fn new(p: u32, moduli: &[Poly<FieldElement>]) -> Result<Tower> {
        let mut tower = Tower::prime(p)?;
        for m in moduli {
            tower = tower.extend(m)?;
        }
        Ok(tower)
    }

    /// Adjoin a root of `modulus` (a polynomial over the current top level),
    /// verifying that it is monic and irreducible.
    pub fn extend(&self, modulus: &Poly<FieldElement>) -> Result<Tower> {
        let new_level = self.height() + 1;
        self.check_modulus_shape(modulus, new_level)?;
        let ring = PolyRing::new(LevelField::new(self.clone(), self.height()));
        if !ring.is_irreducible(modulus) {
            return Err(Error::ModulusReducible(new_level));
        }
        Ok(self.extend_trusted(modulus.coeffs().to_vec()))
    }

    fn check_modulus_shape(&self, modulus: &Poly<FieldElement>, new_level: usize) -> Result<()> {
        let top = self.height();
        if let Some(c) = modulus.coeffs().iter().find(|c| c.level != top) {
            return Err(Error::LevelMismatch {
                expected: top,
                found: c.level,
            });
        }
        match modulus.degree() {
            Some(d) if d >= 2 => {}
            _ => return Err(Error::ModulusDegree(new_level)),
        }
        let lead = modulus.coeffs().last().unwrap();
        if *lead != self.one(top) {
            return Err(Error::ModulusNotMonic(new_level));
        }
        Ok(())
    }

    /// Adjoin a root of a monic polynomial whose irreducibility is already
    /// established by the caller.
    pub(crate) fn extend_trusted(&self, modulus: Vec<FieldElement>) -> Tower {
        let top = self.height();
        let degree = modulus.len() - 1;
        debug_assert!(degree >= 2);
        debug_assert!(modulus.iter().all(|c| c.level == top));
        let native = modulus
            .iter()
            .map(|c| self.native_level(top, &c.coeffs))
            .collect();
        let dim = self.dim(top) * degree;
        let level = Level {
            degree,
            dim,
            modulus,
            native,
            cardinality: BigUint::from(self.p).pow(dim as u32),
            leaf: OnceLock::new(),
            frobenius_image: OnceLock::new(),
        };
        let mut levels = self.levels.clone();
        levels.push(Arc::new(level));
        Tower { p: self.p, levels }
    }

    /// The same tower cut down to levels `0..=level`.
    pub fn truncate(&self, level: usize) -> Tower {
        Tower {
            p: self.p,
            levels: self.levels[..=level].to_vec(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Index of the top level.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }

    /// Degree of level `level` over the level below (1 for level 0).
    pub fn step_degree(&self, level: usize) -> usize {
        self.levels[level].degree
    }

    /// Degree of level `level` over F_p.
    pub fn dim(&self, level: usize) -> usize {
        self.levels[level].dim
    }

    pub fn cardinality(&self, level: usize) -> &BigUint {
        &self.levels[level].cardinality
    }

    /// Monic modulus defining `level`, as a polynomial over `level - 1`.
    pub fn modulus(&self, level: usize) -> Poly<FieldElement> {
        Poly::from_raw(self.levels[level].modulus.clone())
    }

    /// Whether `other` agrees with `self` on levels `0..=level`.
    pub fn shares_levels(&self, other: &Tower, level: usize) -> bool {
        self.p == other.p
            && level <= self.height()
            && level <= other.height()
            && (1..=level).all(|i| {
                Arc::ptr_eq(&self.levels[i], &other.levels[i])
                    || self.levels[i].modulus == other.levels[i].modulus
            })
    }

    /// Canonical text form `p; m1; m2; ...`.
    pub fn describe(&self) -> String {
        let mut s = self.p.to_string();
        for lvl in 1..=self.height() {
            s.push_str("; ");
            let parts: Vec<String> = self.levels[lvl]
                .modulus
                .iter()
                .map(|c| self.format(c))
                .collect();
            s.push_str(&parts.join(","));
        }
        s
    }

    pub(crate) fn check_level(&self, a: &FieldElement, level: usize) -> Result<()> {
        if a.level != level {
            return Err(Error::LevelMismatch {
                expected: level,
                found: a.level,
            });
        }
        Ok(())
    }

    fn check_in_tower(&self, a: &FieldElement) -> Result<()> {
        if a.level > self.height() || a.coeffs.len() != self.dim(a.level) {
            return Err(Error::LevelMismatch {
                expected: self.height(),
                found: a.level,
            });
        }
        Ok(())
    }

    // ---- constructors ----

    pub fn zero(&self, level: usize) -> FieldElement {
        FieldElement {
            level,
            coeffs: vec![0; self.dim(level)],
        }
    }

    pub fn one(&self, level: usize) -> FieldElement {
        self.constant(level, 1)
    }

    /// The integer `n` reduced into F_p and embedded into `level`.
    pub fn constant(&self, level: usize, n: i64) -> FieldElement {
        let mut coeffs = vec![0; self.dim(level)];
        coeffs[0] = residue(n, self.p);
        FieldElement { level, coeffs }
    }

    /// The residue class of `x` defining `level` (a root of its modulus).
    pub fn generator(&self, level: usize) -> FieldElement {
        assert!(level >= 1, "level 0 has no generator");
        let mut coeffs = vec![0; self.dim(level)];
        coeffs[self.dim(level - 1)] = 1;
        FieldElement { level, coeffs }
    }

    /// Build an element from its flat ground residues.
    pub fn element_from_residues(&self, level: usize, coeffs: Vec<u32>) -> Result<FieldElement> {
        if level > self.height() || coeffs.len() != self.dim(level) {
            return Err(Error::LevelMismatch {
                expected: level,
                found: coeffs.len(),
            });
        }
        let p = self.p;
        Ok(FieldElement {
            level,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    /// Build a level-`level` element from its coefficients over `level - 1`.
    pub fn element_from_parts(&self, level: usize, parts: &[FieldElement]) -> Result<FieldElement> {
        if level == 0 || parts.len() != self.step_degree(level) {
            return Err(Error::LevelMismatch {
                expected: level,
                found: parts.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(self.dim(level));
        for c in parts {
            self.check_level(c, level - 1)?;
            coeffs.extend_from_slice(&c.coeffs);
        }
        Ok(FieldElement { level, coeffs })
    }

    /// Coefficients of `a` over the level directly below it.
    pub fn parts(&self, a: &FieldElement) -> Vec<FieldElement> {
        assert!(a.level >= 1);
        let sub = self.dim(a.level - 1);
        a.coeffs
            .chunks(sub)
            .map(|c| FieldElement {
                level: a.level - 1,
                coeffs: c.to_vec(),
            })
            .collect()
    }

    /// Embed `a` into the higher level `level`.
    pub fn embed(&self, a: &FieldElement, level: usize) -> Result<FieldElement> {
        if level < a.level || level > self.height() {
            return Err(Error::LevelMismatch {
                expected: level,
                found: a.level,
            });
        }
        let mut coeffs = a.coeffs.clone();
        coeffs.resize(self.dim(level), 0);
        Ok(FieldElement { level, coeffs })
    }

    /// Project `a` down to `level`, if it lies in that subfield.
    pub fn project(&self, a: &FieldElement, level: usize) -> Option<FieldElement> {
        if level > a.level {
            return None;
        }
        let d = self.dim(level);
        if a.coeffs[d..].iter().any(|&c| c != 0) {
            return None;
        }
        Some(FieldElement {
            level,
            coeffs: a.coeffs[..d].to_vec(),
        })
    }

    /// Smallest level whose embedding contains the element with these residues.
    pub(crate) fn native_level(&self, level: usize, a: &[u32]) -> usize {
        match a.iter().rposition(|&c| c != 0) {
            None => 0,
            Some(i) => (0..=level).find(|&k| self.dim(k) > i).unwrap(),
        }
    }

    /// The smallest level containing `a`.
    pub fn minimal_level(&self, a: &FieldElement) -> usize {
        self.native_level(a.level, &a.coeffs)
    }

    /// Element with canonical index `index` (little-endian base-p digits).
    pub fn element_by_index(&self, level: usize, index: &BigUint) -> FieldElement {
        let mut coeffs = vec![0; self.dim(level)];
        let digits = index.to_radix_le(self.p);
        for (c, d) in coeffs.iter_mut().zip(digits) {
            *c = d as u32;
        }
        FieldElement { level, coeffs }
    }

    pub fn index_of(&self, a: &FieldElement) -> BigUint {
        let digits: Vec<u8> = a.coeffs.iter().map(|&c| c as u8).collect();
        if self.p <= 256 {
            BigUint::from_radix_le(&digits, self.p).unwrap_or_default()
        } else {
            a.coeffs.iter().rev().fold(BigUint::default(), |acc, &c| {
                acc * BigUint::from(self.p) + BigUint::from(c)
            })
        }
    }

    // ---- arithmetic (checked) ----

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_level(b, a.level)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_level(b, a.level)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            level: a.level,
            coeffs: a.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_in_tower(a)?;
        self.check_level(b, a.level)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check_in_tower(a)?;
        self.inv_unchecked(a)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_level(b, a.level)?;
        let bi = self.inv(b)?;
        self.mul(a, &bi)
    }

    /// Square-and-multiply with an unbounded exponent.
    pub fn pow(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let lvl = self.minimal_level(a);
        let base = self.project(a, lvl).unwrap();
        let mut acc = self.one(lvl);
        for i in (0..e.bits()).rev() {
            acc = self.mul_unchecked(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_unchecked(&acc, &base);
            }
        }
        self.embed(&acc, a.level).unwrap()
    }

    pub fn pow_u64(&self, a: &FieldElement, e: u64) -> FieldElement {
        self.pow(a, &BigUint::from(e))
    }

    /// Schoolbook product throughout, with no leaf tables or subquadratic steps.
    pub fn mul_schoolbook(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_in_tower(a)?;
        self.check_level(b, a.level)?;
        let mut out = vec![0; self.dim(a.level)];
        let ctx = MulCtx {
            leaf: None,
            schoolbook: true,
        };
        self.mul_slices(a.level, &a.coeffs, &b.coeffs, &mut out, ctx);
        Ok(FieldElement {
            level: a.level,
            coeffs: out,
        })
    }

    pub(crate) fn add_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut coeffs = a.coeffs.clone();
        self.add_assign(&mut coeffs, &b.coeffs);
        FieldElement {
            level: a.level,
            coeffs,
        }
    }

    pub(crate) fn sub_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut coeffs = a.coeffs.clone();
        self.sub_assign(&mut coeffs, &b.coeffs);
        FieldElement {
            level: a.level,
            coeffs,
        }
    }

    /// Product of two elements at the same level, using the cheapest level
    /// that contains both operands.
    pub(crate) fn mul_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let level = a.level;
        let ka = self.native_level(level, &a.coeffs);
        let kb = self.native_level(level, &b.coeffs);
        let k = ka.max(kb);
        let dk = self.dim(k);
        let mut out = vec![0; self.dim(level)];
        let ctx = self.ctx_for(k);
        if ka == k && kb == k {
            self.mul_slices(k, &a.coeffs[..dk], &b.coeffs[..dk], &mut out[..dk], ctx);
        } else if ka == k {
            self.mul_lower(k, &a.coeffs[..dk], kb, &b.coeffs[..self.dim(kb)], &mut out[..dk], ctx);
        } else {
            self.mul_lower(k, &b.coeffs[..dk], ka, &a.coeffs[..self.dim(ka)], &mut out[..dk], ctx);
        }
        FieldElement { level, coeffs: out }
    }

    // ---- slice kernels ----

    #[inline]
    pub(crate) fn add_assign(&self, a: &mut [u32], b: &[u32]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = add_mod(*x, y, p);
        }
    }

    #[inline]
    pub(crate) fn sub_assign(&self, a: &mut [u32], b: &[u32]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = sub_mod(*x, y, p);
        }
    }

    fn ctx_for(&self, level: usize) -> MulCtx {
        MulCtx {
            leaf: self.leaf_level_for(level),
            schoolbook: false,
        }
    }

    fn leaf_level_for(&self, level: usize) -> Option<usize> {
        if self.dim(level) < LEAF_MIN_DIM {
            return None;
        }
        (1..level)
            .rev()
            .find(|&k| {
                self.levels[k]
                    .cardinality
                    .to_u64()
                    .is_some_and(|c| c <= LEAF_MAX_CARD)
            })
    }

    fn leaf_table(&self, level: usize) -> &LeafTable {
        self.levels[level].leaf.get_or_init(|| {
            let card = self.levels[level].cardinality.to_usize().unwrap();
            let dim = self.dim(level);
            let p = self.p;
            let mut weights = vec![1u32; dim];
            for i in 1..dim {
                weights[i] = weights[i - 1] * p;
            }
            let mut unpack = vec![0u32; card * dim];
            for idx in 0..card {
                let mut n = idx as u32;
                for c in &mut unpack[idx * dim..(idx + 1) * dim] {
                    *c = n % p;
                    n /= p;
                }
            }
            let ctx = MulCtx {
                leaf: None,
                schoolbook: true,
            };
            let mut mul = vec![0u16; card * card];
            let mut out = vec![0u32; dim];
            for i in 0..card {
                let a = &unpack[i * dim..(i + 1) * dim];
                for j in i..card {
                    let b = &unpack[j * dim..(j + 1) * dim];
                    self.mul_slices(level, a, b, &mut out, ctx);
                    let r: u32 = out.iter().zip(&weights).map(|(&c, &w)| c * w).sum();
                    mul[i * card + j] = r as u16;
                    mul[j * card + i] = r as u16;
                }
            }
            LeafTable {
                card,
                dim,
                weights,
                unpack,
                mul,
            }
        })
    }

    /// `out = a * b` at `level`.
    pub(crate) fn mul_slices(&self, level: usize, a: &[u32], b: &[u32], out: &mut [u32], ctx: MulCtx) {
        if level == 0 {
            out[0] = mul_mod(a[0], b[0], self.p);
            return;
        }
        if ctx.leaf == Some(level) {
            self.leaf_table(level).mul_into(a, b, out);
            return;
        }
        let lv = &self.levels[level];
        let e = lv.degree;
        let sub = self.dim(level - 1);
        let mut prod = vec![0u32; (2 * e - 1) * sub];
        if !ctx.schoolbook && lv.dim >= KARATSUBA_MIN_DIM && (e == 2 || e == 3) {
            self.karatsuba(level - 1, e, a, b, &mut prod, ctx);
        } else {
            let mut tmp = vec![0u32; sub];
            for i in 0..e {
                let ai = &a[i * sub..(i + 1) * sub];
                if ai.iter().all(|&c| c == 0) {
                    continue;
                }
                for j in 0..e {
                    let bj = &b[j * sub..(j + 1) * sub];
                    if bj.iter().all(|&c| c == 0) {
                        continue;
                    }
                    self.mul_slices(level - 1, ai, bj, &mut tmp, ctx);
                    self.add_assign(&mut prod[(i + j) * sub..(i + j + 1) * sub], &tmp);
                }
            }
        }
        self.reduce(level, &mut prod, ctx);
        out.copy_from_slice(&prod[..e * sub]);
    }

    fn karatsuba(&self, sub_level: usize, e: usize, a: &[u32], b: &[u32], prod: &mut [u32], ctx: MulCtx) {
        let sub = self.dim(sub_level);
        let chunk = |v: &[u32], i: usize| v[i * sub..(i + 1) * sub].to_vec();
        let m = |x: &[u32], y: &[u32]| {
            let mut o = vec![0u32; sub];
            self.mul_slices(sub_level, x, y, &mut o, ctx);
            o
        };
        let sum = |x: &[u32], y: &[u32]| {
            let mut o = x.to_vec();
            self.add_assign(&mut o, y);
            o
        };
        if e == 2 {
            let (a0, a1, b0, b1) = (chunk(a, 0), chunk(a, 1), chunk(b, 0), chunk(b, 1));
            let m0 = m(&a0, &b0);
            let m1 = m(&a1, &b1);
            let mut m01 = m(&sum(&a0, &a1), &sum(&b0, &b1));
            self.sub_assign(&mut m01, &m0);
            self.sub_assign(&mut m01, &m1);
            for (k, c) in [m0, m01, m1].iter().enumerate() {
                prod[k * sub..(k + 1) * sub].copy_from_slice(c);
            }
        } else {
            let (a0, a1, a2) = (chunk(a, 0), chunk(a, 1), chunk(a, 2));
            let (b0, b1, b2) = (chunk(b, 0), chunk(b, 1), chunk(b, 2));
            let m0 = m(&a0, &b0);
            let m1 = m(&a1, &b1);
            let m2 = m(&a2, &b2);
            let m01 = m(&sum(&a0, &a1), &sum(&b0, &b1));
            let m02 = m(&sum(&a0, &a2), &sum(&b0, &b2));
            let m12 = m(&sum(&a1, &a2), &sum(&b1, &b2));
            let mut c1 = m01;
            self.sub_assign(&mut c1, &m0);
            self.sub_assign(&mut c1, &m1);
            let mut c2 = m02;
            self.sub_assign(&mut c2, &m0);
            self.sub_assign(&mut c2, &m2);
            self.add_assign(&mut c2, &m1);
            let mut c3 = m12;
            self.sub_assign(&mut c3, &m1);
            self.sub_assign(&mut c3, &m2);
            for (k, c) in [m0, c1, c2, c3, m2].iter().enumerate() {
                prod[k * sub..(k + 1) * sub].copy_from_slice(c);
            }
        }
    }

    /// Reduce a coefficient vector over `level - 1` (any length) modulo the
    /// monic modulus of `level`, in place; the result occupies the first `e` chunks.
    fn reduce(&self, level: usize, prod: &mut [u32], ctx: MulCtx) {
        let lv = &self.levels[level];
        let e = lv.degree;
        let sub = self.dim(level - 1);
        let nterms = prod.len() / sub;
        let mut tmp = vec![0u32; sub];
        for k in (e..nterms).rev() {
            let c = prod[k * sub..(k + 1) * sub].to_vec();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..e {
                let g = &lv.modulus[j];
                let kg = lv.native[j];
                if kg == 0 && g.coeffs[0] == 0 {
                    continue;
                }
                self.mul_lower(level - 1, &c, kg, &g.coeffs[..self.dim(kg)], &mut tmp, ctx);
                let t = k - e + j;
                self.sub_assign(&mut prod[t * sub..(t + 1) * sub], &tmp);
            }
        }
    }

    /// `out = a * b` where `a` lives at `level` and `b` at the lower level `low`.
    pub(crate) fn mul_lower(&self, level: usize, a: &[u32], low: usize, b: &[u32], out: &mut [u32], ctx: MulCtx) {
        if low == level {
            self.mul_slices(level, a, b, out, ctx);
        } else if low == 0 {
            let (p, s) = (self.p, b[0]);
            for (o, &x) in out.iter_mut().zip(a) {
                *o = mul_mod(x, s, p);
            }
        } else {
            let d = self.dim(low);
            for (oc, ac) in out.chunks_mut(d).zip(a.chunks(d)) {
                if ac.iter().all(|&x| x == 0) {
                    oc.fill(0);
                } else {
                    self.mul_slices(low, ac, b, oc, ctx);
                }
            }
        }
    }

    pub(crate) fn inv_ground(&self, a: u32) -> Option<u32> {
        inv_mod(a, self.p)
    }

    pub(crate) fn default_ctx(&self, level: usize) -> MulCtx {
        self.ctx_for(level)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct MulCtx {
    leaf: Option<usize>,
    schoolbook: bool,
}

/// First monic irreducible polynomial of `degree` over `level`, in canonical
/// order of its non-leading coefficient vector (fields up to 2^16 elements).
pub fn first_irreducible(tower: &Tower, level: usize, degree: usize) -> Poly<FieldElement> {
    let field = LevelField::new(tower.clone(), level);
    let ring = PolyRing::new(field.clone());
    // Larger fields draw coefficients from the polynomials in the generator of
    // `level` with base-p digits, index below LARGE_FIELD_DIGITS. Small indices
    // alone would stay inside a proper subfield.
    const LARGE_FIELD_DIGITS: u64 = 16;
    let small = field.small_cardinality().filter(|&q| q <= 1 << 16);
    let base = small.unwrap_or(LARGE_FIELD_DIGITS);
    let digit = |d: u64| match small {
        Some(_) => field.element(d),
        None => {
            let theta = field.generator();
            let (mut acc, mut pow, mut d) = (field.zero(), field.one(), d);
            while d > 0 {
                let c = field.from_int((d % tower.p() as u64) as i64);
                acc = field.add(&acc, &field.mul(&c, &pow));
                pow = field.mul(&pow, &theta);
                d /= tower.p() as u64;
            }
            acc
        }
    };
    for idx in 0u64.. {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut n = idx;
        for _ in 0..degree {
            coeffs.push(digit(n % base));
            n /= base;
        }
        assert!(n == 0, "no irreducible polynomial in the searched range");
        coeffs.push(field.one());
        let f = ring.from_coeffs(coeffs);
        if ring.is_irreducible(&f) {
            return f;
        }
    }
    unreachable!()
}

/// Canonical F_q for a prime power `q`: F_p, extended once by the first
/// irreducible polynomial of degree `m` when `q = p^m` with `m > 1`.
pub fn canonical_field(q: u64) -> Result<LevelField> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::NotPrime(q))?;
    let mut tower = Tower::prime(p)?;
    if m > 1 {
        let g = first_irreducible(&tower, 0, m);
        tower = tower.extend_trusted(g.coeffs().to_vec());
    }
    let level = tower.height();
    Ok(LevelField::new(tower, level))
}

/// Decompose `q = p^m`.
pub fn prime_power(q: u64) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = crate::field::prime_divisors(q);
    if p.len() != 1 || p[0] > u32::MAX as u64 {
        return None;
    }
    let mut m = 0;
    let mut n = q;
    while n > 1 {
        n /= p[0];
        m += 1;
    }
    Some((p[0] as u32, m))
}
