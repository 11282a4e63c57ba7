//! Square and cube tests.
//!
//! `a` is an `r`-th power in F_Q (with `r | Q - 1`) iff `a^{(Q-1)/r} = 1`. For any
//! subfield F_{Q'} with `r | Q' - 1`, that exponent factors through the norm to
//! F_{Q'}, so the test descends to the smallest such subfield: a tower level when
//! one qualifies, otherwise the subfield of size `p^s` with `s` the order of `p`
//! mod `r`, reached by a Frobenius product.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{FieldElement, Tower};
use crate::error::{Error, Result};

/// Levels with at most this many bits of cardinality use the direct Euler power.
const DIRECT_EULER_BITS: u64 = 96;

impl Tower {
    /// Whether `a` is a square in its own level. Zero counts as a square.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.is_rth_power(a, 2))
    }

    /// Whether `a` is a cube in its own level. Zero counts as a cube.
    pub fn is_cube(&self, a: &FieldElement) -> bool {
        self.is_rth_power(a, 3)
    }

    /// Reference square test `a^{(Q-1)/2} = 1` with a full-size exponent.
    pub fn is_square_euler(&self, a: &FieldElement) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.euler(a, 2))
    }

    /// Reference cube test `a^{(Q-1)/3} = 1` with a full-size exponent.
    pub fn is_cube_euler(&self, a: &FieldElement) -> bool {
        self.euler(a, 3)
    }

    fn euler(&self, a: &FieldElement, r: u32) -> bool {
        if a.is_zero() {
            return true;
        }
        let q1 = self.cardinality(a.level) - 1u32;
        if !(&q1 % r).is_zero() {
            return true;
        }
        let t = self.pow(a, &(q1 / r));
        t == self.one(a.level)
    }

    /// Whether `a` is an `r`-th power in its level, for a prime `r != p`.
    pub fn is_rth_power(&self, a: &FieldElement, r: u32) -> bool {
        if a.is_zero() {
            return true;
        }
        let divides = |k: usize| (self.cardinality(k) - 1u32) % r == BigUint::zero();
        if !divides(a.level) {
            return true;
        }
        let k = (0..=a.level).find(|&k| divides(k)).unwrap();
        let low = self.norm(a, k).expect("k is at or below the level of a");
        if self.cardinality(k).bits() <= DIRECT_EULER_BITS {
            return self.euler(&low, r);
        }
        // The smallest subfield F_{p^s} with r | p^s - 1 lies inside level k.
        let s = multiplicative_order(self.p as u64 % r as u64, r as u64);
        let count = self.dim(k) as u64 / s;
        let prod = self.frobenius_product(&low, s, count);
        let exp = (BigUint::from(self.p).pow(s as u32) - 1u32) / r;
        let t = self.pow(&prod, &exp);
        t == self.one(t.level)
    }
}

/// Order of `a` in `(Z/n)^*`.
fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
        debug_assert!(k <= n);
    }
    k
}
