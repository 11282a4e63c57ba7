//! Closed-form discriminants for degrees 2, 3 and 4.

use super::{PolyRing, P};
use crate::error::{Error, Result};
use crate::field::Field;

impl<F: Field> PolyRing<F> {
    /// Discriminant of a polynomial of degree 2, 3 or 4.
    pub fn discriminant(&self, f: &P<F>) -> Result<F::Elem> {
        let k = &self.field;
        let deg = f.degree().unwrap_or(0);
        if !(2..=4).contains(&deg) {
            return Err(Error::DegreeUnsupported(deg));
        }
        // c[i] is the coefficient of x^(deg - i)
        let c: Vec<&F::Elem> = f.coeffs.iter().rev().collect();
        let n = |v: i64| k.from_int(v);
        let prod = |xs: &[&F::Elem]| xs.iter().fold(k.one(), |acc, x| k.mul(&acc, x));
        let term = |coef: i64, xs: &[&F::Elem]| k.mul(&n(coef), &prod(xs));
        let sum = |terms: Vec<F::Elem>| terms.iter().fold(k.zero(), |acc, t| k.add(&acc, t));
        Ok(match deg {
            2 => {
                let (a, b, c) = (c[0], c[1], c[2]);
                sum(vec![term(1, &[b, b]), term(-4, &[a, c])])
            }
            3 => {
                let (a, b, c, d) = (c[0], c[1], c[2], c[3]);
                sum(vec![
                    term(1, &[b, b, c, c]),
                    term(-4, &[a, c, c, c]),
                    term(-4, &[b, b, b, d]),
                    term(-27, &[a, a, d, d]),
                    term(18, &[a, b, c, d]),
                ])
            }
            _ => {
                let (a, b, c, d, e) = (c[0], c[1], c[2], c[3], c[4]);
                sum(vec![
                    term(256, &[a, a, a, e, e, e]),
                    term(-192, &[a, a, b, d, e, e]),
                    term(-128, &[a, a, c, c, e, e]),
                    term(144, &[a, a, c, d, d, e]),
                    term(-27, &[a, a, d, d, d, d]),
                    term(144, &[a, b, b, c, e, e]),
                    term(-6, &[a, b, b, d, d, e]),
                    term(-80, &[a, b, c, c, d, e]),
                    term(18, &[a, b, c, d, d, d]),
                    term(16, &[a, c, c, c, c, e]),
                    term(-4, &[a, c, c, c, d, d]),
                    term(-27, &[b, b, b, b, e, e]),
                    term(18, &[b, b, b, c, d, e]),
                    term(-4, &[b, b, b, d, d, d]),
                    term(-4, &[b, b, c, c, c, e]),
                    term(1, &[b, b, c, c, d, d]),
                ])
            }
        })
    }
}
