//! `h(x) = x^4 + cx + d` over F_{3^m} through the resolvent `g(x) = x^3 - dx - c^2`.
//!
//! `h` splits into two quadratics over the field iff `g` has a square root
//! `r^2`, and then `h = (x^2 + rx + c/r - r^2)(x^2 - rx - c/r - r^2)` with
//! discriminants `-r^2 - c/r` and `-r^2 + c/r`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{FactorPattern, PolyRing};
use crate::tower::{FieldElement, LevelField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quartic3Case {
    SplitsLinear,
    TwoIrreducibleQuadratics,
    UniqueRoot,
    ExactlyTwoRoots,
    Irreducible,
    /// `d = 0`: `h = x(x^3 + c)` is inseparable; classified generically.
    Inseparable,
    /// `c = 0`: outside the resolvent criterion; classified generically.
    OutsideHypotheses,
}

#[derive(Clone, Debug)]
pub struct QuarticChar3Verdict {
    pub case: Quartic3Case,
    pub pattern: FactorPattern,
    /// Roots of the resolvent in canonical order.
    pub resolvent_roots: Vec<FieldElement>,
    /// Square status of each resolvent root.
    pub root_squares: Vec<bool>,
    /// `r` with `r^2` a resolvent root, used for the quadratic split.
    pub split_root: Option<FieldElement>,
    /// Square status of `-r^2 - c/r` and `-r^2 + c/r`.
    pub split_discriminants: Option<(bool, bool)>,
    /// Whether `r^4 - c^2 r^{-2}` is a non-square, as the two-root case is
    /// sometimes stated.
    pub alt_two_root_condition: Option<bool>,
    /// The five case conditions evaluated independently.
    pub conditions: [bool; 5],
}

impl Quartic3Case {
    pub fn pattern(self) -> Option<FactorPattern> {
        Some(match self {
            Quartic3Case::SplitsLinear => FactorPattern::new(vec![(1, 1); 4]),
            Quartic3Case::TwoIrreducibleQuadratics => FactorPattern::new(vec![(2, 1), (2, 1)]),
            Quartic3Case::UniqueRoot => FactorPattern::new(vec![(1, 1), (3, 1)]),
            Quartic3Case::ExactlyTwoRoots => FactorPattern::new(vec![(1, 1), (1, 1), (2, 1)]),
            Quartic3Case::Irreducible => FactorPattern::irreducible(4),
            Quartic3Case::Inseparable | Quartic3Case::OutsideHypotheses => return None,
        })
    }
}

struct RootInfo {
    r: FieldElement,
    /// Square status of `-r^2 - c/r` and `-r^2 + c/r`.
    discs: (bool, bool),
}

/// Classify `x^4 + cx + d` over F_{3^m}.
pub fn quartic_char3_classify(field: &LevelField, c: &FieldElement, d: &FieldElement) -> Result<QuarticChar3Verdict> {
    if field.characteristic() != 3 {
        return Err(Error::WrongResidueClass("q must be a power of 3".into()));
    }
    let ring = PolyRing::new(field.clone());
    let zero = field.zero();
    let one = field.one();
    let h = ring.from_coeffs(vec![d.clone(), c.clone(), zero.clone(), zero.clone(), one.clone()]);
    if c.is_zero() || d.is_zero() {
        return Ok(QuarticChar3Verdict {
            case: if c.is_zero() {
                Quartic3Case::OutsideHypotheses
            } else {
                Quartic3Case::Inseparable
            },
            pattern: ring.factor_pattern(&h),
            resolvent_roots: Vec::new(),
            root_squares: Vec::new(),
            split_root: None,
            split_discriminants: None,
            alt_two_root_condition: None,
            conditions: [false; 5],
        });
    }
    let g = ring.from_coeffs(vec![field.neg(&field.mul(c, c)), field.neg(d), zero.clone(), one.clone()]);
    let roots = ring.roots_in_field(&g);
    let squares: Vec<bool> = roots.iter().map(|u| field.is_square(u)).collect::<Result<_>>()?;

    let info = |u: &FieldElement| -> Result<RootInfo> {
        let sq = ring.from_coeffs(vec![field.neg(u), zero.clone(), one.clone()]);
        let r = ring
            .roots_in_field(&sq)
            .into_iter()
            .next()
            .ok_or_else(|| Error::HypothesisViolated("square root missing".into()))?;
        let r2 = field.mul(&r, &r);
        let c_r = field.div(c, &r)?;
        let d1 = field.sub(&field.neg(&r2), &c_r);
        let d2 = field.add(&field.neg(&r2), &c_r);
        Ok(RootInfo {
            discs: (field.is_square(&d1)?, field.is_square(&d2)?),
            r,
        })
    };
    let infos: Vec<Option<RootInfo>> = roots
        .iter()
        .zip(&squares)
        .map(|(u, &s)| if s { info(u).map(Some) } else { Ok(None) })
        .collect::<Result<_>>()?;

    let n = roots.len();
    let square_count = squares.iter().filter(|&&s| s).count();
    let both = |i: &RootInfo, want: bool| i.discs.0 == want && i.discs.1 == want;
    let c1 = n == 3 && infos.iter().all(|i| i.as_ref().is_some_and(|i| both(i, true)));
    let c2 = n == 3 && square_count == 1 && infos.iter().flatten().all(|i| both(i, false));
    let c3 = n == 0;
    let c4 = n == 1 && infos[0].as_ref().is_some_and(|i| i.discs.0 != i.discs.1);
    let c5 = n == 1 && !squares[0];
    let conditions = [c1, c2, c3, c4, c5];
    let cases = [
        Quartic3Case::SplitsLinear,
        Quartic3Case::TwoIrreducibleQuadratics,
        Quartic3Case::UniqueRoot,
        Quartic3Case::ExactlyTwoRoots,
        Quartic3Case::Irreducible,
    ];
    let hits: Vec<usize> = (0..5).filter(|&i| conditions[i]).collect();
    let [k] = hits.as_slice() else {
        return Err(Error::HypothesisViolated(format!(
            "resolvent conditions select {} cases",
            hits.len()
        )));
    };
    let case = cases[*k];

    let split = infos.iter().flatten().next();
    let split_root = split.map(|i| i.r.clone());
    if let (Some(r), true) = (&split_root, matches!(case, Quartic3Case::SplitsLinear | Quartic3Case::TwoIrreducibleQuadratics | Quartic3Case::ExactlyTwoRoots)) {
        // Re-expand the claimed split.
        let r2 = field.mul(r, r);
        let c_r = field.div(c, r)?;
        let left = ring.from_coeffs(vec![field.sub(&c_r, &r2), r.clone(), one.clone()]);
        let right = ring.from_coeffs(vec![field.sub(&field.neg(&c_r), &r2), field.neg(r), one.clone()]);
        if ring.mul(&left, &right) != h {
            return Err(Error::HypothesisViolated("quadratic split does not re-expand to h".into()));
        }
    }
    let alt_two_root_condition = match (&split_root, n) {
        (Some(r), 1) => {
            let r2 = field.mul(r, r);
            let t = field.sub(&field.mul(&r2, &r2), &field.div(&field.mul(c, c), &r2)?);
            Some(!field.is_square(&t)?)
        }
        _ => None,
    };
    Ok(QuarticChar3Verdict {
        case,
        pattern: case.pattern().unwrap(),
        resolvent_roots: roots,
        root_squares: squares,
        split_root,
        split_discriminants: split.map(|i| i.discs),
        alt_two_root_condition,
        conditions,
    })
}
