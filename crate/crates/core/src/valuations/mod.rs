//! Valuations with lexicographically ordered value groups `ℤᵏ`, their
//! residue maps, parity of values, and the block decomposition of a
//! composed valuation's value group.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{ConstField, Field, FieldError, Point, Polynomial, Rational, RationalFunction, TruncatedLaurent};

mod monomial;

pub use monomial::{monomial_value, MonomialValuation, MultivariatePoly, MultivariateRatio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("the value ∞ has no parity or block decomposition")]
    InfinityInput,
    #[error("element has negative value and no residue")]
    NegativeValue,
    #[error("value vectors of lengths {0} and {1} are incomparable")]
    LengthMismatch(usize, usize),
    #[error("cannot split a value of rank {rank} into blocks of {first} and {rest}")]
    BadSplit { rank: usize, first: usize, rest: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Element of `ℤᵏ` ordered lexicographically, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LexValue {
    Finite(Vec<i64>),
    Infinity,
}

impl LexValue {
    pub fn scalar(v: i64) -> Self {
        LexValue::Finite(vec![v])
    }

    pub fn zero(rank: usize) -> Self {
        LexValue::Finite(vec![0; rank])
    }

    pub fn components(&self) -> Option<&[i64]> {
        match self {
            LexValue::Finite(v) => Some(v),
            LexValue::Infinity => None,
        }
    }

    /// The single component of a rank-one value.
    pub fn as_scalar(&self) -> Option<i64> {
        match self.components() {
            Some([v]) => Some(*v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LexValue::Infinity)
    }

    /// `true` iff `self ∉ 2Γ`, i.e. some component is odd.
    pub fn is_odd(&self) -> Result<bool, ValuationError> {
        let v = self.components().ok_or(ValuationError::InfinityInput)?;
        Ok(v.iter().any(|c| c.rem_euclid(2) == 1))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ValuationError> {
        match rhs {
            LexValue::Infinity => Err(ValuationError::InfinityInput),
            LexValue::Finite(_) => Ok(self.clone() + -rhs.clone()),
        }
    }
}

/// `is_odd` as a free function.
pub fn is_odd(g: &LexValue) -> Result<bool, ValuationError> {
    g.is_odd()
}

/// Splits a value of a composed valuation `w` (value group
/// `0 → Γ_u → Γ_w → Γ_v → 0`, realized as `ℤ^{k₁} × ℤ^{k₂}` with the
/// lexicographic order) into `(u_part, v_part)`: `v_part` is the image in
/// the quotient `Γ_v` (the leading `k₁` components) and `u_part` the
/// trailing `k₂` components, which form the kernel `Γ_u` when `v_part = 0`.
pub fn compose_project(w: &LexValue, k1: usize) -> Result<(LexValue, LexValue), ValuationError> {
    let c = w.components().ok_or(ValuationError::InfinityInput)?;
    if k1 == 0 || k1 >= c.len() {
        return Err(ValuationError::BadSplit {
            rank: c.len(),
            first: k1,
            rest: c.len().saturating_sub(k1),
        });
    }
    Ok((LexValue::Finite(c[k1..].to_vec()), LexValue::Finite(c[..k1].to_vec())))
}

impl PartialOrd for LexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LexValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LexValue::Infinity, LexValue::Infinity) => Ordering::Equal,
            (LexValue::Infinity, _) => Ordering::Greater,
            (_, LexValue::Infinity) => Ordering::Less,
            (LexValue::Finite(a), LexValue::Finite(b)) => {
                debug_assert_eq!(a.len(), b.len(), "comparing values of different rank");
                a.cmp(b)
            }
        }
    }
}

impl Add for LexValue {
    type Output = LexValue;
    fn add(self, rhs: LexValue) -> LexValue {
        match (self, rhs) {
            (LexValue::Finite(a), LexValue::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "adding values of different rank");
                LexValue::Finite(a.iter().zip(&b).map(|(x, y)| x + y).collect())
            }
            _ => LexValue::Infinity,
        }
    }
}

impl Neg for LexValue {
    type Output = LexValue;
    fn neg(self) -> LexValue {
        match self {
            LexValue::Finite(a) => LexValue::Finite(a.into_iter().map(|x| -x).collect()),
            LexValue::Infinity => panic!("-∞ is not a value"),
        }
    }
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexValue::Infinity => f.write_str("∞"),
            LexValue::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            LexValue::Finite(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A valuation on elements of type `E` bundled with its residue map.
pub trait Valuation<E> {
    type Residue;

    /// Rank of the value group `ℤᵏ`.
    fn rank(&self) -> usize;

    fn value(&self, x: &E) -> Result<LexValue, ValuationError>;

    /// Image in the residue field; requires `value(x) ≥ 0`.
    fn residue(&self, x: &E) -> Result<Self::Residue, ValuationError>;

    /// An element of value `1`, for rank-one discrete valuations.
    fn uniformizer(&self) -> Option<E>;
}

/// The `T`-adic valuation on `ℚ((T))`, residue field ℚ.
#[derive(Debug, Clone, Copy, Default)]
pub struct TAdic;

impl Valuation<TruncatedLaurent> for TAdic {
    type Residue = Rational;

    fn rank(&self) -> usize {
        1
    }

    fn value(&self, x: &TruncatedLaurent) -> Result<LexValue, ValuationError> {
        match x.leading_exponent() {
            Some(e) => Ok(LexValue::scalar(e)),
            None if x.is_exact() => Ok(LexValue::Infinity),
            None => Err(FieldError::InsufficientPrecision(format!(
                "value of {x} cannot be certified"
            ))
            .into()),
        }
    }

    fn residue(&self, x: &TruncatedLaurent) -> Result<Rational, ValuationError> {
        if x.leading_exponent().is_some_and(|e| e < 0) {
            return Err(ValuationError::NegativeValue);
        }
        x.coeff(0)
            .ok_or_else(|| FieldError::InsufficientPrecision(format!("residue of {x} unknown")).into())
    }

    fn uniformizer(&self) -> Option<TruncatedLaurent> {
        Some(TruncatedLaurent::t())
    }
}

/// The valuation `order_at(·, point)` on a rational function field, with
/// residue given by evaluation at the point.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceValuation<F> {
    pub point: Point<F>,
}

impl<F: ConstField> PlaceValuation<F> {
    pub fn finite(gamma: F) -> Self {
        PlaceValuation {
            point: Point::Finite(gamma),
        }
    }

    pub fn infinity() -> Self {
        PlaceValuation { point: Point::Infinity }
    }
}

impl<F: ConstField> Valuation<RationalFunction<F>> for PlaceValuation<F> {
    type Residue = F;

    fn rank(&self) -> usize {
        1
    }

    fn value(&self, x: &RationalFunction<F>) -> Result<LexValue, ValuationError> {
        if x.is_zero() {
            return Ok(LexValue::Infinity);
        }
        Ok(LexValue::scalar(x.order_at(&self.point)?))
    }

    fn residue(&self, x: &RationalFunction<F>) -> Result<F, ValuationError> {
        if x.is_zero() {
            return Ok(F::zero());
        }
        if x.order_at(&self.point)? < 0 {
            return Err(ValuationError::NegativeValue);
        }
        Ok(match &self.point {
            Point::Finite(g) => x.eval(g)?,
            Point::Infinity => x.eval_at_infinity()?,
        })
    }

    fn uniformizer(&self) -> Option<RationalFunction<F>> {
        Some(match &self.point {
            Point::Finite(g) => RationalFunction::from_poly(
                Polynomial::new(vec![g.negated(), F::one()]),
                &F::one(),
            ),
            Point::Infinity => RationalFunction::variable().try_inv().expect("Z is invertible"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_element;

    fn v(c: &[i64]) -> LexValue {
        LexValue::Finite(c.to_vec())
    }

    #[test]
    fn parity() {
        assert_eq!(v(&[1, 0]).is_odd(), Ok(true));
        assert_eq!(v(&[2, 4]).is_odd(), Ok(false));
        assert_eq!(v(&[0, 3]).is_odd(), Ok(true));
        assert_eq!(v(&[-3]).is_odd(), Ok(true));
        assert_eq!(v(&[-2]).is_odd(), Ok(false));
        assert_eq!(LexValue::Infinity.is_odd(), Err(ValuationError::InfinityInput));
    }

    #[test]
    fn ordering_is_lexicographic_with_top_infinity() {
        assert!(v(&[0, 5]) < v(&[1, -100]));
        assert!(v(&[1, 0]) < v(&[1, 1]));
        assert!(v(&[1000, 1000]) < LexValue::Infinity);
        assert_eq!(v(&[1, 2]) + LexValue::Infinity, LexValue::Infinity);
        assert_eq!(v(&[1, 2]) + v(&[3, -4]), v(&[4, -2]));
    }

    #[test]
    fn block_split() {
        assert_eq!(compose_project(&v(&[2, 3]), 1), Ok((v(&[3]), v(&[2]))));
        let (u, vp) = compose_project(&v(&[0, 5]), 1).unwrap();
        assert_eq!(vp, v(&[0]));
        assert_eq!(u, v(&[5]));
        let (_, vp) = compose_project(&v(&[1, 4]), 1).unwrap();
        assert_eq!(vp.is_odd(), Ok(true));
        assert_eq!(v(&[1, 4]).is_odd(), Ok(true));
        assert_eq!(compose_project(&LexValue::Infinity, 1), Err(ValuationError::InfinityInput));
        assert!(compose_project(&v(&[1]), 1).is_err());
    }

    #[test]
    fn t_adic_residue() {
        let x = TruncatedLaurent::from_ints(0, &[3, 5], Some(2));
        assert_eq!(TAdic.residue(&x), Ok(Rational::from_int(3)));
        assert_eq!(TAdic.value(&x), Ok(LexValue::scalar(0)));
        let y = TruncatedLaurent::from_ints(-1, &[1], None);
        assert_eq!(TAdic.residue(&y), Err(ValuationError::NegativeValue));
        assert_eq!(TAdic.value(&TruncatedLaurent::zero()), Ok(LexValue::Infinity));
    }

    #[test]
    fn place_residues() {
        let at1 = PlaceValuation::finite(Rational::from_int(1));
        let f: RationalFunction<Rational> = parse_element("(Z^2-1)/(Z+2)").unwrap();
        assert_eq!(at1.residue(&f), Ok(Rational::from_int(0)));
        let g: RationalFunction<Rational> = parse_element("Z-1").unwrap();
        assert_eq!(at1.residue(&g), Ok(Rational::from_int(0)));
        assert_eq!(at1.value(&g), Ok(LexValue::scalar(1)));
        let h = g.try_inv().unwrap();
        assert_eq!(at1.residue(&h), Err(ValuationError::NegativeValue));
        assert_eq!(at1.value(&at1.uniformizer().unwrap()), Ok(LexValue::scalar(1)));
        let inf = PlaceValuation::<Rational>::infinity();
        assert_eq!(inf.value(&inf.uniformizer().unwrap()), Ok(LexValue::scalar(1)));
    }
}
