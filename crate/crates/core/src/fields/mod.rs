//! Exact arithmetic tower: rationals, univariate polynomials, rational
//! functions, truncated Laurent series in `T`, local series in `Z - γ` and
//! the biquadratic extension `K(√d₁, √d₂)`.
//!
//! Every field type implements [`Field`]. Types whose elements can be built
//! without context (everything except the biquadratic tower) also implement
//! [`ConstField`].

use std::fmt::Debug;

use thiserror::Error;

mod biquadratic;
mod hensel;
mod laurent;
mod modgcd;
pub mod parse;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use biquadratic::{BiquadraticElement, Conjugation, Tower};
pub use hensel::{hensel_lift_root, sqrt_lift, HenselError};
pub use laurent::{TruncatedLaurent, EXACT_INVERSE_TERMS};
pub use poly::Polynomial;
pub use ratfunc::{Point, RationalFunction};
pub use rational::{parse_rational, rational_sqrt, Rational};
pub use series::LocalSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input has no finite order")]
    ZeroInput,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
}

/// A commutative field with exact (or precision-tracked) arithmetic.
///
/// Constants are produced relative to an existing element (`zero_like`,
/// `one_like`) so that elements carrying context, such as the tower data of
/// a biquadratic extension, fit the same interface.
///
/// For precision-tracked types `is_zero` means "indistinguishable from zero
/// at the available precision".
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_inv(&self) -> Result<Self, FieldError>;

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.times(&rhs.try_inv()?))
    }

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }

    fn square(&self) -> Self {
        self.times(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// A faster monic gcd for polynomials over this field, when one exists.
    fn poly_gcd(_a: &Polynomial<Self>, _b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        None
    }

    /// The image of the integer `n` in this field.
    fn from_int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut step = one;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.plus(&step);
            }
            k >>= 1;
            if k > 0 {
                step = step.plus(&step);
            }
        }
        if n < 0 {
            acc.negated()
        } else {
            acc
        }
    }
}

/// Fields whose constants need no context.
pub trait ConstField: Field {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}
