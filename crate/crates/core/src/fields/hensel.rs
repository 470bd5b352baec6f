//! Newton–Hensel lifting of simple residue roots in `ℚ[[T]]`.

use std::cmp::min;

use thiserror::Error;

use super::{rational_sqrt, ConstField, Field, FieldError, Polynomial, Rational, TruncatedLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HenselError {
    #[error("residue root is not simple (derivative vanishes mod T)")]
    NotSimpleRoot,
    #[error("residue point is not a root mod T")]
    NotARoot,
    #[error("coefficient of T-order {0} is not in the valuation ring")]
    NonIntegralCoefficient(i64),
    #[error("leading exponent {0} is odd")]
    OddLeadingExponent(i64),
    #[error("leading coefficient {0} is not a square in the residue field")]
    NonSquareResidue(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn residue_of(c: &TruncatedLaurent) -> Result<Rational, HenselError> {
    if let Some(e) = c.leading_exponent() {
        if e < 0 {
            return Err(HenselError::NonIntegralCoefficient(e));
        }
    }
    c.coeff(0)
        .ok_or_else(|| FieldError::InsufficientPrecision("coefficient residue unknown".into()).into())
}

/// Lifts a simple root `alpha` of `P mod T` to a root of `P` modulo
/// `T^target`, doubling the precision at each Newton step.
///
/// If an iterate is an exact root the result is returned exactly. The
/// returned precision never exceeds the precision of `P`'s coefficients.
pub fn hensel_lift_root(
    p: &Polynomial<TruncatedLaurent>,
    alpha: &Rational,
    target: i64,
) -> Result<TruncatedLaurent, HenselError> {
    let reduced: Polynomial<Rational> =
        Polynomial::new(p.coeffs().iter().map(residue_of).collect::<Result<_, _>>()?);
    if reduced.derivative().eval(alpha).is_zero() {
        return Err(HenselError::NotSimpleRoot);
    }
    if !reduced.eval(alpha).is_zero() {
        return Err(HenselError::NotARoot);
    }

    let cap = p.coeffs().iter().filter_map(TruncatedLaurent::precision).min();
    let target = cap.map_or(target, |c| min(c, target));
    if target < 1 {
        return Err(FieldError::InsufficientPrecision(format!("cannot lift to T^{target}")).into());
    }

    let dp = p.derivative();
    let mut beta = TruncatedLaurent::from_rational(alpha);
    let mut prec = 1;
    loop {
        let val = p.eval(&beta);
        if val.is_zero() && val.is_exact() {
            return Ok(beta);
        }
        if prec >= target {
            break;
        }
        prec = min(2 * prec, target);
        let num = val.truncate(prec);
        let den = dp.eval(&beta).truncate(prec);
        let step = num.try_div(&den)?;
        beta = beta.minus(&step).truncate(prec).exactify();
    }
    Ok(beta.truncate(target))
}

/// Square root of `u` modulo `T^target` (absolute precision).
///
/// The root's leading coefficient is `sign · √c`, where `c` is the leading
/// coefficient of `u` and `√c` its positive rational square root.
pub fn sqrt_lift(u: &TruncatedLaurent, sign: i32, target: i64) -> Result<TruncatedLaurent, HenselError> {
    let e = u.leading_exponent().ok_or_else(|| {
        FieldError::InsufficientPrecision("square root of a series that is zero to precision".into())
    })?;
    if e.rem_euclid(2) == 1 {
        return Err(HenselError::OddLeadingExponent(e));
    }
    let c = u.leading_coefficient().expect("nonzero");
    let root = rational_sqrt(c).ok_or_else(|| HenselError::NonSquareResidue(c.to_string()))?;
    let alpha = if sign < 0 { -root } else { root };
    let unit = u.shift(-e);
    let p = Polynomial::new(vec![unit.negated(), TruncatedLaurent::zero(), TruncatedLaurent::one()]);
    let beta = hensel_lift_root(&p, &alpha, target - e / 2)?;
    Ok(beta.shift(e / 2))
}
