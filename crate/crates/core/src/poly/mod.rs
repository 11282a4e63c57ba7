//! Dense univariate polynomials over any [`Field`].

mod discriminant;
mod factor;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::Field;

pub use factor::FactorPattern;

/// Default cap on the degree of materialized iterates.
pub const DEFAULT_DEGREE_CAP: u128 = 531_441; // 3^12

/// Dense coefficients in ascending degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<E> Poly<E> {
    /// Wrap coefficients that are already normalized.
    pub(crate) fn from_raw(coeffs: Vec<E>) -> Self {
        Self { coeffs }
    }

    /// Wrap coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<E>, is_zero: impl Fn(&E) -> bool) -> Self {
        while coeffs.last().is_some_and(&is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    fn deg_or_zero(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

type P<F> = Poly<<F as Field>::Elem>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn zero(&self) -> P<F> {
        Poly::from_raw(Vec::new())
    }

    pub fn one(&self) -> P<F> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> P<F> {
        Poly::from_raw(vec![self.field.zero(), self.field.one()])
    }

    pub fn constant(&self, c: F::Elem) -> P<F> {
        self.from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(&self, c: F::Elem, n: usize) -> P<F> {
        let mut v = vec![self.field.zero(); n + 1];
        v[n] = c;
        self.from_coeffs(v)
    }

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> P<F> {
        let f = &self.field;
        Poly::from_coeffs(coeffs, |c| f.is_zero(c))
    }

    /// Coefficients given as integers reduced into the prime field.
    pub fn from_ints(&self, coeffs: &[i64]) -> P<F> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn format(&self, f: &P<F>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        f.coeffs
            .iter()
            .map(|c| self.field.format(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn add(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = f.zero();
        let v = (0..n)
            .map(|i| f.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(v)
    }

    pub fn sub(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = f.zero();
        let v = (0..n)
            .map(|i| f.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &P<F>) -> P<F> {
        Poly::from_raw(a.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, a: &P<F>, c: &F::Elem) -> P<F> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &P<F>, b: &P<F>) -> P<F> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let f = &self.field;
        let mut v = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                v[i + j] = f.add(&v[i + j], &f.mul(x, y));
            }
        }
        self.from_coeffs(v)
    }

    pub fn square(&self, a: &P<F>) -> P<F> {
        self.mul(a, a)
    }

    /// Quotient and remainder.
    pub fn divmod(&self, a: &P<F>, b: &P<F>) -> Result<(P<F>, P<F>)> {
        let f = &self.field;
        let lead = b.lead().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(lead)?;
        let db = b.coeffs.len() - 1;
        if a.coeffs.len() <= db {
            return Ok((self.zero(), a.clone()));
        }
        let mut r = a.coeffs.clone();
        let mut q = vec![f.zero(); a.coeffs.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + db], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &P<F>, b: &P<F>) -> Result<P<F>> {
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub(crate) fn div_exact(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let (q, r) = self.divmod(a, b).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, a: &P<F>) -> P<F> {
        match a.lead() {
            None => a.clone(),
            Some(l) if self.field.is_one(l) => a.clone(),
            Some(l) => self.scale(a, &self.field.inv(l).expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &P<F>) -> P<F> {
        let f = &self.field;
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        self.from_coeffs(v)
    }

    pub fn eval(&self, a: &P<F>, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `a(b(x))`.
    pub fn compose(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, b), &self.constant(c.clone()));
        }
        acc
    }

    /// The `n`-th iterate `a ∘ a ∘ ... ∘ a`, with `a^{(0)} = x`.
    pub fn iterate(&self, a: &P<F>, n: u32, cap: u128) -> Result<P<F>> {
        let d = a.deg_or_zero() as u128;
        let degree = d.checked_pow(n).unwrap_or(u128::MAX);
        if degree > cap {
            return Err(Error::DegreeOverflow { degree, cap });
        }
        let mut acc = self.x();
        for _ in 0..n {
            acc = self.compose(a, &acc);
        }
        Ok(acc)
    }

    pub fn mul_mod(&self, a: &P<F>, b: &P<F>, m: &P<F>) -> P<F> {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    /// `a^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, a: &P<F>, e: &BigUint, m: &P<F>) -> P<F> {
        let base = self.rem(a, m).expect("nonzero modulus");
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    /// `a(b) mod m` by Horner's rule.
    pub fn compose_mod(&self, a: &P<F>, b: &P<F>, m: &P<F>) -> P<F> {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul_mod(&acc, b, m), &self.constant(c.clone()));
        }
        acc
    }

    /// `σ(a)(b) mod m`, where `σ` acts on the coefficients of `a`.
    fn twisted_compose_mod(&self, sigma: &F::Frob, a: &P<F>, b: &P<F>, m: &P<F>) -> P<F> {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            let c = self.field.frob_apply(sigma, c);
            acc = self.add(&self.mul_mod(&acc, b, m), &self.constant(c));
        }
        acc
    }

    /// `x^Q mod m`, with `Q` the field size.
    pub fn x_pow_q_mod(&self, m: &P<F>) -> P<F> {
        let f = &self.field;
        let p = BigUint::from(f.characteristic());
        let q = f.cardinality();
        if q.bits() <= 64 {
            return self.pow_mod(&self.x(), &q, m);
        }
        // x^{p^{a+b}} = σ^b(x^{p^a})(x^{p^b}) with σ = (c ↦ c^p)
        let h1 = self.pow_mod(&self.x(), &p, m);
        let sigma = f.frob_map(1);
        let target = f.degree() as u64;
        let mut h = h1.clone();
        let mut map = sigma.clone();
        let nbits = 64 - target.leading_zeros();
        for bit in (0..nbits - 1).rev() {
            h = self.twisted_compose_mod(&map, &h, &h, m);
            map = f.frob_compose(&map, &map);
            if (target >> bit) & 1 == 1 {
                h = self.twisted_compose_mod(&sigma, &h, &h1, m);
                map = f.frob_compose(&map, &sigma);
            }
        }
        h
    }

    /// `h^Q mod m` given `x1 = x^Q mod m`: cheaper of composition and powering.
    pub(crate) fn q_power_mod(&self, h: &P<F>, x1: &P<F>, m: &P<F>) -> P<F> {
        let q = self.field.cardinality();
        let k = m.deg_or_zero() as u64;
        if q.bits() < k {
            self.pow_mod(h, &q, m)
        } else {
            self.compose_mod(h, x1, m)
        }
    }
}
