use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ConstField, Field, FieldError};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree` is well defined.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · X^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `0`, i.e. the index of the lowest nonzero
    /// coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg_ref(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(Field::negated).collect(),
        }
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul_ref(self),
            });
        }
        match acc {
            Some(a) => a,
            None => match self.coeffs.first() {
                Some(c) => Self::constant(c.one_like()),
                None => panic!("0^0 has no sample coefficient"),
            },
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.from_int_like(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, x: &F) -> F {
        self.eval_with(x, |c| c.clone())
    }

    /// Horner evaluation at a point of another field, embedding each
    /// coefficient with `embed`.
    pub fn eval_with<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(&embed(c));
        }
        acc
    }

    /// Euclidean division. Fails only when `d` is zero or its leading
    /// coefficient cannot be inverted.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), FieldError> {
        let dlead = d.leading().ok_or(FieldError::DivisionByZero)?;
        let dinv = dlead.try_inv()?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = dlead.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].times(&dinv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].minus(&c.times(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => {
                let inv = l.try_inv()?;
                let mut out = self.scale(&inv);
                // pin the leading coefficient to an exact one
                if let Some(last) = out.coeffs.last_mut() {
                    *last = inv.one_like();
                }
                Ok(out)
            }
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Result<Self, FieldError> {
        if let Some(g) = F::poly_gcd(self, rhs) {
            return Ok(g);
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic()?;
        }
        a.monic()
    }

    /// `self(inner)`: substitution of a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(inner).add_ref(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn display_with(&self, var: &str) -> String
    where
        F: fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = format!("{c}");
            parts.push(if mon.is_empty() {
                format!("({cs})")
            } else if c.is_one() {
                mon
            } else {
                format!("({cs})*{mon}")
            });
        }
        parts.join(" + ")
    }
}

impl<F: ConstField> Polynomial<F> {
    /// The polynomial `X`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![F::zero(), F::one()],
        }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }
}

impl<F: Field> Add<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.add_ref(rhs)
    }
}

impl<F: Field> Sub<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.sub_ref(rhs)
    }
}

impl<F: Field> Mul<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.mul_ref(rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.neg_ref()
    }
}
