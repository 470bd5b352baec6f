use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::{ConstField, Field, FieldError, Rational};

/// Number of terms kept when inverting an exact series that is not a
/// monomial (its inverse is an infinite series).
pub const EXACT_INVERSE_TERMS: i64 = 64;

/// A Laurent series in `T` over ℚ known modulo `T^precision`.
///
/// `precision == None` means the element is an exact Laurent polynomial.
/// A nonzero stored series starts with a nonzero coefficient; a series with
/// no stored coefficients and a finite precision is "zero to precision"
/// (`O(T^p)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedLaurent {
    start: i64,
    coeffs: Vec<Rational>,
    prec: Option<i64>,
}

fn pmin(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl TruncatedLaurent {
    fn normalized(mut start: i64, mut coeffs: Vec<Rational>, prec: Option<i64>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => coeffs.clear(),
            Some(k) => {
                coeffs.drain(..k);
                start += k as i64;
            }
        }
        if let Some(p) = prec {
            let keep = (p - start).max(0) as usize;
            if coeffs.len() > keep {
                coeffs.truncate(keep);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            start = 0;
        }
        TruncatedLaurent { start, coeffs, prec }
    }

    /// Exact Laurent polynomial `Σ coeffs[i] T^(start+i)`.
    pub fn exact(start: i64, coeffs: Vec<Rational>) -> Self {
        Self::normalized(start, coeffs, None)
    }

    /// `Σ coeffs[i] T^(start+i) + O(T^prec)`.
    pub fn with_precision(start: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        Self::normalized(start, coeffs, Some(prec))
    }

    pub fn from_ints(start: i64, coeffs: &[i64], prec: Option<i64>) -> Self {
        Self::normalized(start, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), prec)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    /// The uniformizer `T`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `O(T^p)`.
    pub fn big_o(p: i64) -> Self {
        TruncatedLaurent {
            start: 0,
            coeffs: Vec::new(),
            prec: Some(p),
        }
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exponent of the first nonzero term; `None` for (approximate) zero.
    pub fn leading_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Known terms as `(exponent, coefficient)` pairs, zeros skipped.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Coefficient of `T^e`, or `None` if it lies beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if self.prec.is_some_and(|p| e >= p) {
            return None;
        }
        if self.coeffs.is_empty() || e < self.start {
            return Some(Rational::zero());
        }
        Some(self.coeffs.get((e - self.start) as usize).cloned().unwrap_or_else(Rational::zero))
    }

    /// Lower bound on the order: the leading exponent, or the precision for
    /// a zero-to-precision series, or `None` (= ∞) for exact zero.
    pub fn low(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.start)
        }
    }

    /// Number of known terms past the leading one.
    pub fn relative_precision(&self) -> Option<i64> {
        match (self.prec, self.leading_exponent()) {
            (Some(p), Some(e)) => Some(p - e),
            (Some(_), None) => Some(0),
            (None, _) => None,
        }
    }

    /// Forgets every term at or beyond `T^p`.
    pub fn truncate(&self, p: i64) -> Self {
        Self::normalized(self.start, self.coeffs.clone(), pmin(self.prec, Some(p)))
    }

    /// Treats the known terms as an exact Laurent polynomial.
    pub fn exactify(&self) -> Self {
        Self::normalized(self.start, self.coeffs.clone(), None)
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.coeffs.is_empty() {
            return TruncatedLaurent {
                start: 0,
                coeffs: Vec::new(),
                prec: self.prec.map(|p| p + k),
            };
        }
        TruncatedLaurent {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::exact(0, Vec::new());
        }
        TruncatedLaurent {
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
    }

    fn inverse(&self) -> Result<Self, FieldError> {
        let Some(c0) = self.coeffs.first() else {
            return Err(match self.prec {
                None => FieldError::DivisionByZero,
                Some(p) => FieldError::InsufficientPrecision(format!("inverting O(T^{p})")),
            });
        };
        let e = self.start;
        let rel = match self.prec {
            Some(p) => p - e,
            None if self.coeffs.len() == 1 => {
                return Ok(Self::monomial(c0.recip(), -e));
            }
            None => EXACT_INVERSE_TERMS,
        };
        let inv0 = c0.recip();
        let n = rel as usize;
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self::normalized(-e, out, Some(-e + rel)))
    }
}

impl Field for TruncatedLaurent {
    fn zero_like(&self) -> Self {
        Self::exact(0, Vec::new())
    }
    fn one_like(&self) -> Self {
        Self::monomial(Rational::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let prec = pmin(self.prec, rhs.prec);
        if rhs.coeffs.is_empty() {
            return Self::normalized(self.start, self.coeffs.clone(), prec);
        }
        if self.coeffs.is_empty() {
            return Self::normalized(rhs.start, rhs.coeffs.clone(), prec);
        }
        let start = min(self.start, rhs.start);
        let end = (self.start + self.coeffs.len() as i64).max(rhs.start + rhs.coeffs.len() as i64);
        let end = prec.map_or(end, |p| min(end, p));
        let len = (end - start).max(0) as usize;
        let mut out = vec![Rational::zero(); len];
        for (src, s0) in [(&self.coeffs, self.start), (&rhs.coeffs, rhs.start)] {
            for (i, c) in src.iter().enumerate() {
                let idx = s0 + i as i64 - start;
                if (idx as usize) < len {
                    out[idx as usize] += c;
                }
            }
        }
        Self::normalized(start, out, prec)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        let (Some(la), Some(lb)) = (self.low(), rhs.low()) else {
            // an exact zero operand
            return Self::exact(0, Vec::new());
        };
        let prec = pmin(self.prec.map(|p| p + lb), rhs.prec.map(|p| p + la));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TruncatedLaurent {
                start: 0,
                coeffs: Vec::new(),
                prec,
            };
        }
        let start = self.start + rhs.start;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = match prec {
            Some(p) => ((p - start).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::normalized(start, out, prec)
    }
    fn negated(&self) -> Self {
        TruncatedLaurent {
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        self.inverse()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::from_int(n)
    }
}

impl ConstField for TruncatedLaurent {
    fn zero() -> Self {
        Self::exact(0, Vec::new())
    }
    fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::monomial(q.clone(), 0)
    }
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{e}"),
            })
            .collect();
        if let Some(p) = self.prec {
            parts.push(format!("O(T^{p})"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

macro_rules! forward_ops {
    ($($tr:ident $m:ident $call:ident),*) => {$(
        impl $tr<&TruncatedLaurent> for &TruncatedLaurent {
            type Output = TruncatedLaurent;
            fn $m(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
                self.$call(rhs)
            }
        }
    )*};
}

forward_ops!(Add add plus, Sub sub minus, Mul mul times);

impl Neg for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn neg(self) -> TruncatedLaurent {
        self.negated()
    }
}
