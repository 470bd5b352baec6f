use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{ConstField, Field, FieldError, Polynomial};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

impl Field for Rational {
    fn zero_like(&self) -> Self {
        <Rational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Option<Polynomial<Self>> {
        super::modgcd::rational_gcd(a, b)
    }
}

impl ConstField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The nonnegative square root of `q` when `q` is a square in ℚ.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}
