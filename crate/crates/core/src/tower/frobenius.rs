//! Frobenius powers `x ↦ x^{p^J}` as explicit ring maps.
//!
//! A map is stored by the images of the tower generators (and their powers).
//! Applying it to an element costs roughly one multiplication per coefficient
//! chunk, independent of `J`, so conjugates are cheap even when `p^J` is huge.

use super::{FieldElement, Tower};
use crate::error::Result;

/// The automorphism `x ↦ x^{p^J}` on levels `0..=top` of a tower.
#[derive(Clone, Debug)]
pub struct FrobeniusMap {
    exponent: u64,
    top: usize,
    /// `powers[k][i]` is `φ(x_k)^i` at level `k`, for `0 <= i < e_k`.
    powers: Vec<Vec<Vec<u32>>>,
}

impl FrobeniusMap {
    /// The `J` in `x ↦ x^{p^J}`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

impl Tower {
    fn map_from_images(&self, top: usize, exponent: u64, images: Vec<Vec<u32>>) -> FrobeniusMap {
        let mut powers = vec![Vec::new()];
        for (k, img) in images.into_iter().enumerate().skip(1) {
            let e = self.step_degree(k);
            let x = FieldElement::from_raw(k, img);
            let mut list = Vec::with_capacity(e);
            let mut cur = self.one(k);
            for _ in 0..e {
                list.push(cur.coeffs.clone());
                cur = self.mul_unchecked(&cur, &x);
            }
            powers.push(list);
        }
        FrobeniusMap {
            exponent,
            top,
            powers,
        }
    }

    /// The identity on levels `0..=top`.
    pub fn identity_map(&self, top: usize) -> FrobeniusMap {
        let images = (0..=top)
            .map(|k| if k == 0 { Vec::new() } else { self.generator(k).coeffs })
            .collect();
        self.map_from_images(top, 0, images)
    }

    /// `x ↦ x^p` on levels `0..=top`.
    pub fn frobenius_map_base(&self, top: usize) -> FrobeniusMap {
        let images = (0..=top)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                self.levels[k]
                    .frobenius_image
                    .get_or_init(|| self.pow_u64(&self.generator(k), self.p as u64))
                    .coeffs
                    .clone()
            })
            .collect();
        self.map_from_images(top, 1, images)
    }

    /// `a ∘ b`, i.e. `x ↦ x^{p^{J_a + J_b}}`.
    pub fn compose_maps(&self, a: &FrobeniusMap, b: &FrobeniusMap) -> FrobeniusMap {
        let top = a.top.min(b.top);
        let images = (0..=top)
            .map(|k| {
                if k == 0 {
                    Vec::new()
                } else {
                    self.apply_slices(a, k, &b.powers[k][1])
                }
            })
            .collect();
        self.map_from_images(top, a.exponent + b.exponent, images)
    }

    /// `x ↦ x^{p^J}` on levels `0..=top`, built from `x ↦ x^p` by doubling.
    pub fn frobenius_map(&self, top: usize, j: u64) -> FrobeniusMap {
        let j = j % self.dim(top) as u64;
        let mut result = self.identity_map(top);
        let mut base = self.frobenius_map_base(top);
        let mut bits = j;
        while bits > 0 {
            if bits & 1 == 1 {
                result = self.compose_maps(&result, &base);
            }
            bits >>= 1;
            if bits > 0 {
                base = self.compose_maps(&base, &base);
            }
        }
        result.exponent = j;
        result
    }

    pub(crate) fn apply_slices(&self, map: &FrobeniusMap, level: usize, a: &[u32]) -> Vec<u32> {
        let k = self.native_level(level, a);
        let mut out = if k == 0 {
            a[..1].to_vec()
        } else {
            let e = self.step_degree(k);
            let sub = self.dim(k - 1);
            let ctx = self.default_ctx(k);
            let mut out = vec![0u32; self.dim(k)];
            let mut tmp = vec![0u32; self.dim(k)];
            for i in 0..e {
                let ci = &a[i * sub..(i + 1) * sub];
                if ci.iter().all(|&c| c == 0) {
                    continue;
                }
                let ci = self.apply_slices(map, k - 1, ci);
                if i == 0 {
                    self.add_assign(&mut out[..sub], &ci);
                } else {
                    let low = self.native_level(k - 1, &ci);
                    self.mul_lower(k, &map.powers[k][i], low, &ci[..self.dim(low)], &mut tmp, ctx);
                    self.add_assign(&mut out, &tmp);
                }
            }
            out
        };
        out.resize(self.dim(level), 0);
        out
    }

    /// Apply a Frobenius map to an element at or below the map's top level.
    pub fn apply_map(&self, map: &FrobeniusMap, a: &FieldElement) -> FieldElement {
        assert!(a.level <= map.top, "map does not cover level {}", a.level);
        FieldElement::from_raw(a.level, self.apply_slices(map, a.level, &a.coeffs))
    }

    /// `a^{|base|}`, the Frobenius of `a` relative to the subfield at `base`.
    pub fn frobenius(&self, a: &FieldElement, base: usize) -> Result<FieldElement> {
        self.check_in_tower(a)?;
        if base > a.level {
            return Err(crate::error::Error::LevelMismatch {
                expected: a.level,
                found: base,
            });
        }
        let map = self.frobenius_map(a.level, self.dim(base) as u64);
        Ok(self.apply_map(&map, a))
    }

    /// `∏_{i<count} ψ^i(a)` with `ψ = x ↦ x^{p^step}`, by doubling.
    ///
    /// With `count * step = [level(a) : F_p]` this is the norm of `a` down to
    /// the subfield of size `p^step`, whether or not that subfield is a tower level.
    pub fn frobenius_product(&self, a: &FieldElement, step: u64, count: u64) -> FieldElement {
        assert!(count >= 1);
        let top = a.level;
        let psi = self.frobenius_map(top, step);
        let mut prod = a.clone();
        let mut psi_m = psi.clone();
        let mut m = 1u64;
        let nbits = 64 - count.leading_zeros();
        for bit in (0..nbits - 1).rev() {
            // prod = P_m, psi_m = ψ^m
            let shifted = self.apply_map(&psi_m, &prod);
            prod = self.mul_unchecked(&prod, &shifted);
            psi_m = self.compose_maps(&psi_m, &psi_m);
            m *= 2;
            if (count >> bit) & 1 == 1 {
                let shifted = self.apply_map(&psi, &prod);
                prod = self.mul_unchecked(a, &shifted);
                psi_m = self.compose_maps(&psi_m, &psi);
                m += 1;
            }
        }
        debug_assert_eq!(m, count);
        prod
    }

    /// Trace as the explicit sum of `[level(a) : base]` conjugates.
    pub fn trace_by_conjugates(&self, a: &FieldElement, base: usize) -> FieldElement {
        let map = self.frobenius_map(a.level, self.dim(base) as u64);
        let n = self.dim(a.level) / self.dim(base);
        let mut acc = self.zero(a.level);
        let mut cur = a.clone();
        for _ in 0..n {
            acc = self.add_unchecked(&acc, &cur);
            cur = self.apply_map(&map, &cur);
        }
        acc
    }

    /// Norm as the explicit product of `[level(a) : base]` conjugates.
    pub fn norm_by_conjugates(&self, a: &FieldElement, base: usize) -> FieldElement {
        let map = self.frobenius_map(a.level, self.dim(base) as u64);
        let n = self.dim(a.level) / self.dim(base);
        let mut acc = self.one(a.level);
        let mut cur = a.clone();
        for _ in 0..n {
            acc = self.mul_unchecked(&acc, &cur);
            cur = self.apply_map(&map, &cur);
        }
        acc
    }
}
