//! Closed-form factorization patterns, each with a generic fallback outside
//! its hypotheses.

mod quartic3;

use serde::Serialize;

pub use quartic3::{quartic_char3_classify, Quartic3Case, QuarticChar3Verdict};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{FactorPattern, Poly, PolyRing};
use crate::tower::{FieldElement, LevelField};

/// Fields up to this size find quadratic roots by exhaustive evaluation.
const EXHAUSTIVE_QUADRATIC_CARD: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct Char2QuadraticSolutions {
    pub count: usize,
    pub solutions: Vec<FieldElement>,
}

/// Solutions of `ax^2 + bx + c = 0` over F_{2^m}: one when `b = 0`, two when
/// `Tr(ac/b^2) = 0`, none otherwise.
pub fn char2_quadratic_solutions(
    field: &LevelField,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Char2QuadraticSolutions> {
    if field.characteristic() != 2 {
        return Err(Error::WrongResidueClass("q must be a power of 2".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if b.is_zero() {
        let x = field.pth_root(&field.div(c, a)?);
        return Ok(Char2QuadraticSolutions {
            count: 1,
            solutions: vec![x],
        });
    }
    let w = field.div(&field.mul(a, c), &field.mul(b, b))?;
    if field.absolute_trace(&w) == 1 {
        return Ok(Char2QuadraticSolutions {
            count: 0,
            solutions: Vec::new(),
        });
    }
    let ring = PolyRing::new(field.clone());
    let f = ring.from_coeffs(vec![c.clone(), b.clone(), a.clone()]);
    let m = field.degree();
    let mut solutions = match field.small_cardinality() {
        Some(q) if q <= EXHAUSTIVE_QUADRATIC_CARD => ring.roots_by_evaluation(&f),
        _ if m % 2 == 1 => {
            // x = (b/a) z with z^2 + z = w; the half-trace solves it for odd m.
            let mut z = w.clone();
            let mut acc = w.clone();
            for _ in 0..(m - 1) / 2 {
                z = field.square(&field.square(&z));
                acc = field.add(&acc, &z);
            }
            let x = field.mul(&field.div(b, a)?, &acc);
            vec![x.clone(), field.add(&x, &field.div(b, a)?)]
        }
        _ => {
            // with Tr(τ) = 1, z = Σ_{i≥1} (τ + τ^2 + ... + τ^{2^{i-1}}) w^{2^i} solves z^2 + z = w
            let tau = (0..m)
                .map(|i| field.basis_element(i))
                .find(|t| field.absolute_trace(t) == 1)
                .ok_or_else(|| Error::HypothesisViolated("trace vanishes on a basis".into()))?;
            let mut tau_pow = tau.clone();
            let mut partial = tau;
            let mut w_pow = w.clone();
            let mut z = field.zero();
            for _ in 1..m {
                w_pow = field.square(&w_pow);
                z = field.add(&z, &field.mul(&partial, &w_pow));
                tau_pow = field.square(&tau_pow);
                partial = field.add(&partial, &tau_pow);
            }
            let x = field.mul(&field.div(b, a)?, &z);
            vec![x.clone(), field.add(&x, &field.div(b, a)?)]
        }
    };
    solutions.sort_by(|x, y| field.cmp_canonical(x, y));
    Ok(Char2QuadraticSolutions { count: 2, solutions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicCase {
    SplitsCompletely,
    LinearTimesQuadratic,
    Irreducible,
    /// `b = 0`, or `a = 0` with matching traces: classified generically.
    OutsideHypotheses,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicTrinomialVerdict {
    pub case: CubicCase,
    pub pattern: FactorPattern,
    /// `Tr(a^3 b^{-2}) = Tr(1)`.
    pub trace_matches: Option<bool>,
    /// Cube status of the roots `t_1, t_2` of `x^2 + bx + a^3`.
    pub roots_are_cubes: Option<(bool, bool)>,
    /// Degree over F_2 of the field where the cube tests ran.
    pub cube_field_degree: Option<usize>,
}

/// Pattern of `x^3 + ax + b` over F_{2^m}.
pub fn cubic_trinomial_pattern(field: &LevelField, a: &FieldElement, b: &FieldElement) -> Result<CubicTrinomialVerdict> {
    if field.characteristic() != 2 {
        return Err(Error::WrongResidueClass("q must be a power of 2".into()));
    }
    let ring = PolyRing::new(field.clone());
    let zero = field.zero();
    let one = field.one();
    let trinomial = ring.from_coeffs(vec![b.clone(), a.clone(), zero.clone(), one.clone()]);
    let fallback = |trace_matches| CubicTrinomialVerdict {
        case: CubicCase::OutsideHypotheses,
        pattern: ring.factor_pattern(&trinomial),
        trace_matches,
        roots_are_cubes: None,
        cube_field_degree: None,
    };
    if b.is_zero() {
        return Ok(fallback(None));
    }
    let m = field.degree();
    let a3 = field.mul(&field.mul(a, a), a);
    let w = field.div(&a3, &field.mul(b, b))?;
    let trace_matches = field.absolute_trace(&w) == (m % 2) as u32;
    if !trace_matches {
        return Ok(CubicTrinomialVerdict {
            case: CubicCase::LinearTimesQuadratic,
            pattern: FactorPattern::new(vec![(1, 1), (2, 1)]),
            trace_matches: Some(false),
            roots_are_cubes: None,
            cube_field_degree: None,
        });
    }
    if a.is_zero() {
        // t_1 t_2 = 0: zero is a cube while t_2 = b need not be.
        return Ok(fallback(Some(true)));
    }
    let (cube_field, roots) = if m % 2 == 0 {
        let s = char2_quadratic_solutions(field, &one, b, &a3)?;
        (field.clone(), s.solutions)
    } else {
        let ext = quadratic_extension(field);
        let lift = |x: &FieldElement| ext.lift(x);
        let s = char2_quadratic_solutions(&ext, &ext.one(), &lift(b)?, &lift(&a3)?)?;
        (ext, s.solutions)
    };
    let [t1, t2] = roots.as_slice() else {
        return Err(Error::HypothesisViolated("x^2 + bx + a^3 lacks two roots".into()));
    };
    let cubes = (cube_field.is_cube(t1), cube_field.is_cube(t2));
    let (case, pattern) = match cubes {
        (true, true) => (CubicCase::SplitsCompletely, FactorPattern::new(vec![(1, 1); 3])),
        (false, false) => (CubicCase::Irreducible, FactorPattern::irreducible(3)),
        _ => return Err(Error::HypothesisViolated("t_1 t_2 = a^3 but only one root is a cube".into())),
    };
    Ok(CubicTrinomialVerdict {
        case,
        pattern,
        trace_matches: Some(true),
        roots_are_cubes: Some(cubes),
        cube_field_degree: Some(cube_field.degree()),
    })
}

/// F_{Q^2} over a characteristic-2 field F_Q as `x^2 + x + γ` with `γ` the
/// first element of absolute trace 1 in canonical order.
pub fn quadratic_extension(field: &LevelField) -> LevelField {
    let gamma = (0u64..)
        .map(|i| field.element(i))
        .find(|g| field.absolute_trace(g) == 1)
        .expect("some element has trace 1");
    let tower = field.tower().truncate(field.level());
    let ext = tower.extend_trusted(vec![gamma, field.one(), field.one()]);
    LevelField::new(ext, field.level() + 1)
}

/// `x^4 - a` over F_q with `q ≡ 1 (mod 4)` is irreducible iff `a` is a non-square.
pub fn quartic_binomial_irreducible(field: &LevelField, a: &FieldElement) -> Result<bool> {
    if field.characteristic() == 2 || crate::families::q_mod_4(field) != 1 {
        return Err(Error::WrongResidueClass("q must be 1 mod 4".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroParameter("a"));
    }
    Ok(!field.is_square(a)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityOutcome {
    pub degree: usize,
    pub factors: usize,
    pub discriminant_square: bool,
    /// `factors ≡ degree (mod 2)` exactly when the discriminant is a square.
    pub consistent: bool,
}

/// Parity of the number of irreducible factors against the quadratic
/// character of the discriminant, for squarefree `f` of degree 2 to 4.
pub fn parity_check(field: &LevelField, f: &Poly<FieldElement>) -> Result<ParityOutcome> {
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let ring = PolyRing::new(field.clone());
    let degree = f.degree().unwrap_or(0);
    if !(2..=4).contains(&degree) {
        return Err(Error::DegreeUnsupported(degree));
    }
    if !ring.is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let factors = ring.factor_pattern(f).factor_count();
    let discriminant_square = field.is_square(&ring.discriminant(f)?)?;
    Ok(ParityOutcome {
        degree,
        factors,
        discriminant_square,
        consistent: ((factors % 2) == (degree % 2)) == discriminant_square,
    })
}
