//! Trace, norm and inversion through the multiplication matrix of one step.
//!
//! For `a` at level `n` (degree `e` over level `n - 1`), multiplication by `a`
//! is an `e × e` matrix over level `n - 1`. Its trace and determinant are the
//! one-step trace and norm; solving `M y = (1, 0, ..., 0)` gives `a^{-1}`.

use super::{FieldElement, Tower};
use crate::error::{Error, Result};
use crate::field::mul_mod;

type Matrix = Vec<Vec<Vec<u32>>>;

/// Steps up to this degree use the division-free subset expansion.
const SUBSET_DET_MAX_DEGREE: usize = 10;

impl Tower {
    /// Columns `a * x^j mod g`, each split into `e` chunks: `m[i][j]` is row `i`, column `j`.
    fn mult_matrix(&self, level: usize, a: &[u32]) -> Matrix {
        let lv = &self.levels[level];
        let e = lv.degree;
        let sub = self.dim(level - 1);
        let ctx = self.default_ctx(level - 1);
        let mut m: Matrix = vec![vec![Vec::new(); e]; e];
        let mut col = a.to_vec();
        let mut tmp = vec![0u32; sub];
        for j in 0..e {
            for i in 0..e {
                m[i][j] = col[i * sub..(i + 1) * sub].to_vec();
            }
            if j + 1 == e {
                break;
            }
            let top = col[(e - 1) * sub..].to_vec();
            col.copy_within(0..(e - 1) * sub, sub);
            col[..sub].fill(0);
            if top.iter().any(|&c| c != 0) {
                for t in 0..e {
                    let kg = lv.native[t];
                    let g = &lv.modulus[t].coeffs[..self.dim(kg)];
                    if g.iter().all(|&c| c == 0) {
                        continue;
                    }
                    self.mul_lower(level - 1, &top, kg, g, &mut tmp, ctx);
                    self.sub_assign(&mut col[t * sub..(t + 1) * sub], &tmp);
                }
            }
        }
        m
    }

    fn mul_at(&self, level: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        let x = FieldElement::from_raw(level, a.to_vec());
        let y = FieldElement::from_raw(level, b.to_vec());
        self.mul_unchecked(&x, &y).coeffs
    }

    /// Gaussian elimination over `level`. Returns the determinant and, when
    /// `rhs` is given and the matrix is invertible, the solution vector.
    fn eliminate(&self, level: usize, mut m: Matrix, mut rhs: Option<Vec<Vec<u32>>>) -> (Vec<u32>, Option<Vec<Vec<u32>>>) {
        let n = m.len();
        let dim = self.dim(level);
        let p = self.p;
        let zero = vec![0u32; dim];
        let mut one = vec![0u32; dim];
        one[0] = 1;
        let mut det = one.clone();
        let mut negate = false;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| m[r][c].iter().any(|&x| x != 0)) else {
                return (zero, None);
            };
            if r != c {
                m.swap(r, c);
                if let Some(v) = rhs.as_mut() {
                    v.swap(r, c);
                }
                negate = !negate;
            }
            det = self.mul_at(level, &det, &m[c][c]);
            let pinv = self.inv_slices(level, &m[c][c]).expect("nonzero pivot");
            for r in c + 1..n {
                if m[r][c].iter().all(|&x| x == 0) {
                    continue;
                }
                let f = self.mul_at(level, &m[r][c], &pinv);
                for j in c..n {
                    let t = self.mul_at(level, &f, &m[c][j]);
                    self.sub_assign(&mut m[r][j], &t);
                }
                if let Some(v) = rhs.as_mut() {
                    let t = self.mul_at(level, &f, &v[c]);
                    self.sub_assign(&mut v[r], &t);
                }
            }
        }
        if negate {
            for x in det.iter_mut() {
                *x = (p - *x) % p;
            }
        }
        let sol = rhs.map(|mut v| {
            for c in (0..n).rev() {
                let mut acc = v[c].clone();
                for j in c + 1..n {
                    let t = self.mul_at(level, &m[c][j], &v[j]);
                    self.sub_assign(&mut acc, &t);
                }
                let pinv = self.inv_slices(level, &m[c][c]).unwrap();
                v[c] = self.mul_at(level, &acc, &pinv);
            }
            v
        });
        (det, sol)
    }

    /// Division-free determinant and first-row cofactors `C_{0,i}` by expanding
    /// along rows from the bottom: `minor[S]` is the determinant of the last `|S|`
    /// rows restricted to the columns in `S`.
    fn subset_det(&self, level: usize, m: &Matrix) -> (Vec<u32>, Vec<Vec<u32>>) {
        let e = m.len();
        let dim = self.dim(level);
        let p = self.p;
        let full = (1usize << e) - 1;
        let mut minor: Vec<Vec<u32>> = vec![Vec::new(); 1 << e];
        minor[0] = {
            let mut one = vec![0u32; dim];
            one[0] = 1;
            one
        };
        let mut masks: Vec<usize> = (1..=full).collect();
        masks.sort_by_key(|s| s.count_ones());
        for s in masks {
            let k = s.count_ones() as usize;
            if k == e {
                continue;
            }
            let r = e - k;
            let mut acc = vec![0u32; dim];
            let mut pos = 0;
            for j in 0..e {
                if s & (1 << j) == 0 {
                    continue;
                }
                if m[r][j].iter().any(|&x| x != 0) {
                    let t = self.mul_at(level, &m[r][j], &minor[s & !(1 << j)]);
                    if pos % 2 == 0 {
                        self.add_assign(&mut acc, &t);
                    } else {
                        self.sub_assign(&mut acc, &t);
                    }
                }
                pos += 1;
            }
            minor[s] = acc;
        }
        let mut det = vec![0u32; dim];
        let cof: Vec<Vec<u32>> = (0..e)
            .map(|i| {
                let mut c = minor[full & !(1 << i)].clone();
                if i % 2 == 1 {
                    for x in c.iter_mut() {
                        *x = (p - *x) % p;
                    }
                }
                c
            })
            .collect();
        for (i, c) in cof.iter().enumerate() {
            let t = self.mul_at(level, &m[0][i], c);
            self.add_assign(&mut det, &t);
        }
        (det, cof)
    }

    /// Inverse of a nonzero element given by its residues at `level`.
    pub(crate) fn inv_slices(&self, level: usize, a: &[u32]) -> Option<Vec<u32>> {
        let k = self.native_level(level, a);
        if k < level {
            let mut r = self.inv_slices(k, &a[..self.dim(k)])?;
            r.resize(self.dim(level), 0);
            return Some(r);
        }
        if level == 0 {
            return self.inv_ground(a[0]).map(|x| vec![x]);
        }
        let e = self.step_degree(level);
        let sub = self.dim(level - 1);
        let m = self.mult_matrix(level, a);
        if e <= SUBSET_DET_MAX_DEGREE {
            let (det, cof) = self.subset_det(level - 1, &m);
            let dinv = self.inv_slices(level - 1, &det)?;
            return Some(cof.iter().flat_map(|c| self.mul_at(level - 1, c, &dinv)).collect());
        }
        let mut rhs = vec![vec![0u32; sub]; e];
        rhs[0][0] = 1;
        let (_, sol) = self.eliminate(level - 1, m, Some(rhs));
        sol.map(|v| v.concat())
    }

    pub(crate) fn inv_unchecked(&self, a: &FieldElement) -> Result<FieldElement> {
        self.inv_slices(a.level, &a.coeffs)
            .map(|c| FieldElement::from_raw(a.level, c))
            .ok_or(Error::DivisionByZero)
    }

    /// Relative trace from `level` to `level - 1`.
    fn trace_step(&self, level: usize, a: &[u32]) -> Vec<u32> {
        let m = self.mult_matrix(level, a);
        let mut acc = vec![0u32; self.dim(level - 1)];
        for (i, row) in m.iter().enumerate() {
            self.add_assign(&mut acc, &row[i]);
        }
        acc
    }

    /// Relative norm from `level` to `level - 1`.
    fn norm_step(&self, level: usize, a: &[u32]) -> Vec<u32> {
        let m = self.mult_matrix(level, a);
        if m.len() <= SUBSET_DET_MAX_DEGREE {
            return self.subset_det(level - 1, &m).0;
        }
        self.eliminate(level - 1, m, None).0
    }

    /// Relative trace `Tr_{level(a) → base}(a)`, returned at level `base`.
    pub fn trace(&self, a: &FieldElement, base: usize) -> Result<FieldElement> {
        self.check_descent(a, base)?;
        let k = self.native_level(a.level, &a.coeffs).max(base);
        let mut cur = a.coeffs[..self.dim(k)].to_vec();
        // Tr from a.level to k of an element of level k is multiplication by the index.
        let idx = ((self.dim(a.level) / self.dim(k)) as u64 % self.p as u64) as u32;
        for x in cur.iter_mut() {
            *x = mul_mod(*x, idx, self.p);
        }
        for lvl in (base + 1..=k).rev() {
            cur = self.trace_step(lvl, &cur);
        }
        Ok(FieldElement::from_raw(base, cur))
    }

    /// Relative norm `N_{level(a) → base}(a)`, returned at level `base`.
    pub fn norm(&self, a: &FieldElement, base: usize) -> Result<FieldElement> {
        self.check_descent(a, base)?;
        let k = self.native_level(a.level, &a.coeffs).max(base);
        let low = FieldElement::from_raw(k, a.coeffs[..self.dim(k)].to_vec());
        let idx = (self.dim(a.level) / self.dim(k)) as u64;
        let mut cur = self.pow_u64(&low, idx).coeffs;
        for lvl in (base + 1..=k).rev() {
            cur = self.norm_step(lvl, &cur);
        }
        Ok(FieldElement::from_raw(base, cur))
    }

    fn check_descent(&self, a: &FieldElement, base: usize) -> Result<()> {
        if a.level > self.height() || a.coeffs.len() != self.dim(a.level) || base > a.level {
            return Err(Error::LevelMismatch {
                expected: a.level,
                found: base,
            });
        }
        Ok(())
    }

    /// Absolute trace to F_p as a residue.
    pub fn absolute_trace(&self, a: &FieldElement) -> u32 {
        self.trace(a, 0).expect("level 0 is below every level").coeffs[0]
    }
}
