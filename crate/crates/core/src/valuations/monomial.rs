use std::collections::BTreeMap;

use super::{LexValue, Valuation, ValuationError};
use crate::fields::{ConstField, Field, FieldError, Rational};

/// Sparse polynomial in `n` variables over ℚ, keyed by exponent vector.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariatePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultivariatePoly {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut out = MultivariatePoly {
            nvars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    pub fn zero(nvars: usize) -> Self {
        MultivariatePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::new(nvars, [(vec![0; nvars], c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::new(nvars, [(e, Rational::from_integer(1.into()))])
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Lexicographically smallest monomial and its coefficient.
    pub fn lex_min_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultivariatePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Quotient of multivariate polynomials, not reduced. Equality is equality
/// of the fractions.
#[derive(Clone, Debug)]
pub struct MultivariateRatio {
    pub num: MultivariatePoly,
    pub den: MultivariatePoly,
}

impl MultivariateRatio {
    pub fn new(num: MultivariatePoly, den: MultivariatePoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(MultivariateRatio { num, den })
    }

    pub fn from_poly(p: MultivariatePoly) -> Self {
        let den = MultivariatePoly::constant(p.nvars, Rational::from_integer(1.into()));
        MultivariateRatio { num: p, den }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        MultivariateRatio {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        MultivariateRatio {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn neg(&self) -> Self {
        MultivariateRatio {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for MultivariateRatio {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Field for MultivariateRatio {
    fn zero_like(&self) -> Self {
        Self::from_poly(MultivariatePoly::zero(self.num.nvars))
    }
    fn one_like(&self) -> Self {
        Self::from_poly(MultivariatePoly::constant(self.num.nvars, <Rational as ConstField>::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::from_poly(MultivariatePoly::constant(self.num.nvars, Rational::from_int(n)))
    }
}

/// Valuation on `ℚ(X₁,…,X_k)` sending a monomial to its exponent vector,
/// a polynomial to the lexicographic minimum over its terms and a ratio to
/// the difference. The value group is `ℤᵏ` ordered lexicographically in the
/// given variable order; the residue field is ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    pub variable_order: Vec<String>,
}

impl MonomialValuation {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        MonomialValuation {
            variable_order: vars.into_iter().map(Into::into).collect(),
        }
    }

    fn poly_value(p: &MultivariatePoly) -> LexValue {
        match p.lex_min_term() {
            None => LexValue::Infinity,
            Some((e, _)) => LexValue::Finite(e.iter().map(|&x| x as i64).collect()),
        }
    }
}

/// `monomial_value` as a free function.
pub fn monomial_value(v: &MonomialValuation, x: &MultivariateRatio) -> LexValue {
    v.value(x).expect("monomial values are total")
}

impl Valuation<MultivariateRatio> for MonomialValuation {
    type Residue = Rational;

    fn rank(&self) -> usize {
        self.variable_order.len()
    }

    fn value(&self, x: &MultivariateRatio) -> Result<LexValue, ValuationError> {
        let n = Self::poly_value(&x.num);
        if n.is_infinite() {
            return Ok(n);
        }
        n.try_sub(&Self::poly_value(&x.den))
    }

    fn residue(&self, x: &MultivariateRatio) -> Result<Rational, ValuationError> {
        let val = self.value(x)?;
        if val.is_infinite() {
            return Ok(<Rational as ConstField>::zero());
        }
        let zero = LexValue::zero(self.rank());
        if val < zero {
            return Err(ValuationError::NegativeValue);
        }
        if val > zero {
            return Ok(<Rational as ConstField>::zero());
        }
        let (_, cn) = x.num.lex_min_term().expect("nonzero");
        let (_, cd) = x.den.lex_min_term().expect("nonzero");
        Ok(cn.try_div(cd)?)
    }

    fn uniformizer(&self) -> Option<MultivariateRatio> {
        (self.rank() == 1).then(|| MultivariateRatio::from_poly(MultivariatePoly::var(1, 0)))
    }
}
