//! The `Field` abstraction shared by the polynomial layer, and the prime field F_p.
//!
//! Polynomial algorithms are written once against [`Field`] and run either over
//! a bare prime field (fast `u32` residues) or over one level of an extension
//! tower (see [`crate::tower::LevelField`]).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;
    /// A prepared automorphism `x ↦ x^{p^j}`.
    type Frob: Clone + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Degree over the prime field.
    fn degree(&self) -> usize;

    fn cardinality(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    /// Cardinality as `u64`, when it fits.
    fn small_cardinality(&self) -> Option<u64> {
        self.cardinality().to_u64()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// Square-and-multiply with an unbounded exponent.
    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// `a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow_u64(a, self.characteristic() as u64)
    }

    /// The unique `p`-th root of `a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let e = BigUint::from(self.characteristic()).pow(self.degree() as u32 - 1);
        self.pow(a, &e)
    }

    /// Element with canonical index `index`: the little-endian base-`p` digits
    /// of `index` are the ground coefficients of the element.
    fn element(&self, index: u64) -> Self::Elem;

    /// The `i`-th ground basis vector: residue 1 in coordinate `i`, `i < degree()`.
    fn basis_element(&self, i: usize) -> Self::Elem;

    /// Canonical index of `a`, when it fits in a `u64`.
    fn index(&self, a: &Self::Elem) -> Option<u64>;

    /// Whether `a` is a square. Zero counts as a square.
    fn is_square(&self, a: &Self::Elem) -> Result<bool>;

    /// Whether `a` is a cube. Zero counts as a cube.
    fn is_cube(&self, a: &Self::Elem) -> bool;

    /// Absolute trace down to F_p, as a residue.
    fn absolute_trace(&self, a: &Self::Elem) -> u32;

    fn format(&self, a: &Self::Elem) -> String;

    /// Flat ground residues of `a`, least significant first.
    fn residues(&self, a: &Self::Elem) -> Vec<u32>;

    /// Canonical order: by index, i.e. comparing residues from the most significant.
    fn cmp_canonical(&self, a: &Self::Elem, b: &Self::Elem) -> std::cmp::Ordering {
        self.residues(a).iter().rev().cmp(self.residues(b).iter().rev())
    }

    /// Prepare `x ↦ x^{p^j}`.
    fn frob_map(&self, j: u64) -> Self::Frob;
    /// The map `x ↦ x^{p^{j_a + j_b}}`.
    fn frob_compose(&self, a: &Self::Frob, b: &Self::Frob) -> Self::Frob;
    fn frob_apply(&self, m: &Self::Frob, a: &Self::Elem) -> Self::Elem;

    /// Every element in canonical order. Panics if the field does not fit in `u64`.
    fn elements(&self) -> Vec<Self::Elem> {
        let q = self
            .small_cardinality()
            .expect("field too large to enumerate");
        (0..q).map(|i| self.element(i)).collect()
    }
}

/// Deterministic primality for `n < 2^32` (trial division is exact there).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p as u64 - 2, p))
    }
}

/// Reduce a signed integer into `[0, p)`.
pub(crate) fn residue(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

/// The prime field F_p with `u32` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Legendre-symbol style test via Euler's criterion.
    pub fn legendre_is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || pow_mod(a, (self.p as u64 - 1) / 2, self.p) == 1
    }
}

impl Field for PrimeField {
    type Elem = u32;
    type Frob = ();

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> usize {
        1
    }

    fn cardinality(&self) -> BigUint {
        BigUint::from(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn from_int(&self, n: i64) -> u32 {
        residue(n, self.p)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        add_mod(*a, *b, self.p)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        sub_mod(*a, *b, self.p)
    }

    fn neg(&self, a: &u32) -> u32 {
        sub_mod(0, *a, self.p)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        mul_mod(*a, *b, self.p)
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        inv_mod(*a, self.p).ok_or(Error::DivisionByZero)
    }

    fn pow(&self, a: &u32, e: &BigUint) -> u32 {
        // Fermat: exponents only matter modulo p - 1 for nonzero bases.
        if e.is_zero() {
            return self.one();
        }
        if *a == 0 {
            return 0;
        }
        let r = (e % BigUint::from(self.p - 1)).to_u64().unwrap();
        pow_mod(*a, r, self.p)
    }

    fn frobenius(&self, a: &u32) -> u32 {
        *a
    }

    fn pth_root(&self, a: &u32) -> u32 {
        *a
    }

    fn element(&self, index: u64) -> u32 {
        (index % self.p as u64) as u32
    }

    fn basis_element(&self, i: usize) -> u32 {
        debug_assert_eq!(i, 0);
        1
    }

    fn index(&self, a: &u32) -> Option<u64> {
        Some(*a as u64)
    }

    fn is_square(&self, a: &u32) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.legendre_is_square(*a))
    }

    fn is_cube(&self, a: &u32) -> bool {
        if *a == 0 || (self.p - 1) % 3 != 0 {
            return true;
        }
        pow_mod(*a, (self.p as u64 - 1) / 3, self.p) == 1
    }

    fn absolute_trace(&self, a: &u32) -> u32 {
        *a
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn residues(&self, a: &u32) -> Vec<u32> {
        vec![*a]
    }

    fn frob_map(&self, _j: u64) {}

    fn frob_compose(&self, _a: &(), _b: &()) {}

    fn frob_apply(&self, _m: &(), a: &u32) -> u32 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297));
    }

    #[test]
    fn inverse_in_f5() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(&2).unwrap(), 3);
        assert_eq!(f.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn euler_criterion_f5() {
        let f = PrimeField::new(5).unwrap();
        assert!(!f.is_square(&2).unwrap());
        assert!(f.is_square(&4).unwrap());
        assert!(f.is_square(&0).unwrap());
        assert_eq!(PrimeField::new(2).unwrap().is_square(&1), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn cubes_in_f7() {
        let f = PrimeField::new(7).unwrap();
        let cubes: Vec<u32> = (1..7).filter(|a| f.is_cube(a)).collect();
        assert_eq!(cubes, vec![1, 6]);
        // 3 does not divide 4, so every element of F_5 is a cube
        let f5 = PrimeField::new(5).unwrap();
        assert!((0..5).all(|a| f5.is_cube(&a)));
    }

    #[test]
    fn lagrange_in_prime_field() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13u32 {
            assert_eq!(f.pow_u64(&a, 12), 1);
        }
    }

    #[test]
    fn prime_divisors_small() {
        assert_eq!(prime_divisors(243), vec![3]);
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }
}
