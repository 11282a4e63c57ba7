//! Irreducibility, squarefree and distinct/equal-degree factorization, roots.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PolyRing, P};
use crate::field::{prime_divisors, Field};

/// Fields up to this size find roots by evaluating at every element.
const EXHAUSTIVE_ROOT_CARD: u64 = 1 << 16;

/// Degrees and multiplicities of the distinct irreducible factors, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorPattern(Vec<(usize, usize)>);

impl FactorPattern {
    /// One `(degree, multiplicity)` entry per distinct irreducible factor.
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        parts.sort_unstable();
        Self(parts)
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// `Σ degree · multiplicity`.
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(d, m)| d * m).sum()
    }

    /// Number of distinct irreducible factors.
    pub fn factor_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1 && self.0[0].1 == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, m)| m == 1)
    }

    pub fn irreducible(degree: usize) -> Self {
        Self(vec![(degree, 1)])
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(d, m)| if m == 1 { d.to_string() } else { format!("{d}^{m}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl<F: Field> PolyRing<F> {
    /// Deterministic Rabin test: `f` of degree `k` is irreducible iff
    /// `x^{Q^k} ≡ x (mod f)` and `gcd(x^{Q^{k/ℓ}} - x, f) = 1` for every prime `ℓ | k`.
    pub fn is_irreducible(&self, f: &P<F>) -> bool {
        let Some(k) = f.degree() else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let f = self.monic(f);
        let x = self.x();
        let x1 = self.x_pow_q_mod(&f);
        let divisors: Vec<usize> = prime_divisors(k as u64)
            .into_iter()
            .map(|l| k / l as usize)
            .collect();
        let mut h = x1.clone();
        for j in 1..=k {
            if j > 1 {
                h = self.q_power_mod(&h, &x1, &f);
            }
            if divisors.contains(&j) {
                let g = self.gcd(&self.sub(&h, &x), &f);
                if g.degree() != Some(0) {
                    return false;
                }
            }
        }
        self.sub(&h, &x).is_zero()
    }

    /// The polynomial whose `p`-th power is `f`, for `f` with `f' = 0`.
    fn pth_root_poly(&self, f: &P<F>) -> P<F> {
        let p = self.field.characteristic() as usize;
        let v = f
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| self.field.pth_root(c))
            .collect();
        self.from_coeffs(v)
    }

    /// Squarefree decomposition of a nonzero polynomial: monic squarefree
    /// factors paired with their multiplicities (each factor nonconstant).
    pub fn squarefree_decomposition(&self, f: &P<F>) -> Vec<(P<F>, usize)> {
        let mut out = Vec::new();
        self.sqf_into(&self.monic(f), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_into(&self, f: &P<F>, scale: usize, out: &mut Vec<(P<F>, usize)>) {
        if f.deg_or_zero() == 0 {
            return;
        }
        let p = self.field.characteristic() as usize;
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.div_exact(f, &c);
        let mut i = 1;
        while w.deg_or_zero() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y);
            if z.deg_or_zero() > 0 {
                out.push((z, i * scale));
            }
            i += 1;
            c = self.div_exact(&c, &y);
            w = y;
        }
        if c.deg_or_zero() > 0 {
            let root = self.pth_root_poly(&c);
            self.sqf_into(&root, scale * p, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` with `g` the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self, f: &P<F>) -> Vec<(P<F>, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = self.x();
        let mut x1 = self.x_pow_q_mod(&rest);
        let mut h = x1.clone();
        let mut d = 1;
        while rest.deg_or_zero() >= 2 * d {
            if d > 1 {
                h = self.q_power_mod(&h, &x1, &rest);
            }
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.deg_or_zero() > 0 {
                rest = self.div_exact(&rest, &g);
                h = self.rem(&h, &rest).unwrap();
                x1 = self.rem(&x1, &rest).unwrap();
                out.push((g, d));
            }
            d += 1;
        }
        if rest.deg_or_zero() > 0 {
            let n = rest.deg_or_zero();
            out.push((rest, n));
        }
        out
    }

    /// Trial polynomials in canonical order: monic of degree 1, then 2, ...,
    /// each degree enumerating its lower coefficients by index.
    fn trial_polys(&self, max_degree: usize) -> impl Iterator<Item = P<F>> + '_ {
        let q = self.field.small_cardinality().unwrap_or(u64::MAX);
        (1..=max_degree.max(1)).flat_map(move |deg| {
            let count = q.checked_pow(deg as u32).unwrap_or(u64::MAX).min(1 << 20);
            (0..count).map(move |idx| {
                let mut v = Vec::with_capacity(deg + 1);
                let mut n = idx;
                for _ in 0..deg {
                    let digit = if q == u64::MAX { n } else { n % q };
                    v.push(self.field.element(digit));
                    n = if q == u64::MAX { 0 } else { n / q };
                }
                v.push(self.field.one());
                self.from_coeffs(v)
            })
        })
    }

    /// Trials for splitting a product of degree `n`. In characteristic 2 the
    /// splitting map is the F_2-linear trace, so the basis products `θ_i x^j`
    /// suffice: one of them has distinct traces modulo two different factors.
    /// Otherwise monic trials up to degree `n` reach every residue class.
    fn split_trials(&self, n: usize) -> Box<dyn Iterator<Item = P<F>> + '_> {
        if self.field.characteristic() == 2 {
            let m = self.field.degree();
            Box::new((0..n).flat_map(move |j| {
                (0..m).map(move |i| {
                    let mut v = vec![self.field.zero(); j + 1];
                    v[j] = self.field.basis_element(i);
                    self.from_coeffs(v)
                })
            }))
        } else {
            Box::new(self.trial_polys(n))
        }
    }

    /// Split a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, g: &P<F>, d: usize) -> Vec<P<F>> {
        let n = g.deg_or_zero();
        if n == 0 {
            return Vec::new();
        }
        if n == d {
            return vec![self.monic(g)];
        }
        let g = self.monic(g);
        let x1 = self.x_pow_q_mod(&g);
        let split = self
            .split_trials(n)
            .map(|t| self.splitting_candidate(&t, d, &x1, &g))
            .map(|s| self.gcd(&s, &g))
            .find(|c| c.deg_or_zero() > 0 && c.deg_or_zero() < n)
            .expect("some trial polynomial splits an equal-degree product");
        let other = self.div_exact(&g, &split);
        let mut out = self.equal_degree(&split, d);
        out.extend(self.equal_degree(&other, d));
        out
    }

    /// Odd `q`: `t^{(Q^d-1)/2} - 1`. Characteristic 2: `Σ_{i < d·deg F} t^{2^i}`.
    fn splitting_candidate(&self, t: &P<F>, d: usize, x1: &P<F>, g: &P<F>) -> P<F> {
        let t = self.rem(t, g).unwrap();
        let f = &self.field;
        if f.characteristic() == 2 {
            let mut acc = self.zero();
            let mut cur = t;
            for _ in 0..d * f.degree() {
                acc = self.add(&acc, &cur);
                cur = self.mul_mod(&cur, &cur, g);
            }
            return acc;
        }
        // t^{1 + Q + ... + Q^{d-1}} lies in F_Q modulo each factor; then Euler's exponent.
        let mut prod = t.clone();
        let mut conj = t;
        for _ in 1..d {
            conj = self.q_power_mod(&conj, x1, g);
            prod = self.mul_mod(&prod, &conj, g);
        }
        let e = (f.cardinality() - 1u32) / 2u32;
        let r = self.pow_mod(&prod, &e, g);
        self.sub(&r, &self.one())
    }

    /// Monic irreducible factors with multiplicities, in canonical order.
    pub fn factor(&self, f: &P<F>) -> Vec<(P<F>, usize)> {
        let mut out = Vec::new();
        for (s, m) in self.squarefree_decomposition(f) {
            for (g, d) in self.distinct_degree(&s) {
                for h in self.equal_degree(&g, d) {
                    out.push((h, m));
                }
            }
        }
        out.sort_by(|a, b| self.cmp_canonical(&a.0, &b.0));
        out
    }

    /// Canonical order of polynomials: by degree, then coefficients from the top.
    pub fn cmp_canonical(&self, a: &P<F>, b: &P<F>) -> Ordering {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
            for (x, y) in a.coeffs.iter().rev().zip(b.coeffs.iter().rev()) {
                match self.field.cmp_canonical(x, y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Degrees and multiplicities of the irreducible factors of a nonzero polynomial.
    pub fn factor_pattern(&self, f: &P<F>) -> FactorPattern {
        let mut parts = Vec::new();
        for (s, m) in self.squarefree_decomposition(f) {
            for (g, d) in self.distinct_degree(&s) {
                for _ in 0..g.deg_or_zero() / d {
                    parts.push((d, m));
                }
            }
        }
        FactorPattern::new(parts)
    }

    /// Distinct roots in the coefficient field, in canonical order: by
    /// evaluation at every element for fields up to 2^16 elements, otherwise
    /// by splitting `gcd(x^Q - x, f)`.
    pub fn roots_in_field(&self, f: &P<F>) -> Vec<F::Elem> {
        match self.field.small_cardinality() {
            Some(q) if q <= EXHAUSTIVE_ROOT_CARD => self.roots_by_evaluation(f),
            _ => self.roots_by_splitting(f),
        }
    }

    pub fn roots_by_evaluation(&self, f: &P<F>) -> Vec<F::Elem> {
        if f.deg_or_zero() == 0 {
            return Vec::new();
        }
        let q = self.field.small_cardinality().expect("field too large to enumerate");
        (0..q)
            .map(|i| self.field.element(i))
            .filter(|a| self.field.is_zero(&self.eval(f, a)))
            .collect()
    }

    pub fn roots_by_splitting(&self, f: &P<F>) -> Vec<F::Elem> {
        if f.deg_or_zero() == 0 {
            return Vec::new();
        }
        let field = &self.field;
        let f = self.monic(f);
        let x1 = self.x_pow_q_mod(&f);
        let lin = self.gcd(&self.sub(&x1, &self.x()), &f);
        let mut roots: Vec<F::Elem> = self
            .equal_degree(&lin, 1)
            .into_iter()
            .map(|h| field.neg(&h.coeffs[0]))
            .collect();
        roots.sort_by(|a, b| field.cmp_canonical(a, b));
        roots
    }

    /// Whether `f` has a repeated factor (`gcd(f, f') ≠ 1`).
    pub fn is_squarefree(&self, f: &P<F>) -> bool {
        self.gcd(f, &self.derivative(f)).deg_or_zero() == 0
    }

    /// Factor pattern by trial division with every monic polynomial of degree
    /// at most `deg f / 2`; a reference for small fields.
    pub fn factor_pattern_brute(&self, f: &P<F>) -> FactorPattern {
        let q = self
            .field
            .small_cardinality()
            .expect("brute-force factoring needs a small field");
        let mut rest = self.monic(f);
        let mut parts = Vec::new();
        let mut deg = 1;
        while 2 * deg <= rest.deg_or_zero() {
            let count = q.pow(deg as u32);
            for idx in 0..count {
                let mut v = Vec::with_capacity(deg + 1);
                let mut n = idx;
                for _ in 0..deg {
                    v.push(self.field.element(n % q));
                    n /= q;
                }
                v.push(self.field.one());
                let t = self.from_coeffs(v);
                let mut m = 0;
                loop {
                    let (quo, r) = self.divmod(&rest, &t).unwrap();
                    if !r.is_zero() {
                        break;
                    }
                    rest = quo;
                    m += 1;
                }
                if m > 0 {
                    parts.push((deg, m));
                }
            }
            deg += 1;
        }
        if rest.deg_or_zero() > 0 {
            parts.push((rest.deg_or_zero(), 1));
        }
        FactorPattern::new(parts)
    }
}
