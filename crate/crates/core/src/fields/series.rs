use std::cmp::min;

use super::{ConstField, Field, FieldError};

const EXACT_SERIES_INVERSE_TERMS: i64 = 32;

/// Laurent series in a local parameter `ε` (for us `ε = Z - γ`) whose
/// coefficients are themselves approximate field elements.
///
/// Leading coefficients that vanish to their own precision are dropped when
/// the series is normalized, so the leading exponent is the first exponent
/// whose coefficient is certified nonzero. This identifies an approximation
/// `O(T^k)` of a coefficient with zero.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalSeries<F> {
    start: i64,
    coeffs: Vec<F>,
    prec: Option<i64>,
}

fn pmin(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (x, None) | (None, x) => x,
    }
}

impl<F: ConstField> LocalSeries<F> {
    pub fn new(mut start: i64, mut coeffs: Vec<F>, prec: Option<i64>) -> Self {
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
            coeffs.truncate(keep);
        }
        if coeffs.is_empty() {
            start = 0;
        }
        LocalSeries { start, coeffs, prec }
    }

    pub fn constant(c: F) -> Self {
        Self::new(0, vec![c], None)
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// Leading exponent; `None` when no coefficient is certified nonzero.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Coefficient of `ε^k` (`None` beyond precision).
    pub fn coeff(&self, k: i64) -> Option<F> {
        if self.prec.is_some_and(|p| k >= p) {
            return None;
        }
        if k < self.start || self.coeffs.is_empty() {
            return Some(F::zero());
        }
        Some(self.coeffs.get((k - self.start) as usize).cloned().unwrap_or_else(F::zero))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    fn low(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.start)
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::new(self.start, self.coeffs.iter().map(f).collect(), self.prec)
    }

    /// Square root with leading coefficient `lead_root`, which the caller
    /// computes in the coefficient field (it must square to the leading
    /// coefficient).
    pub fn sqrt_with(
        &self,
        lead_root: impl FnOnce(&F) -> Result<F, FieldError>,
    ) -> Result<Self, FieldError> {
        let c0 = self
            .coeffs
            .first()
            .ok_or_else(|| FieldError::InsufficientPrecision("square root of zero series".into()))?;
        if self.start.rem_euclid(2) != 0 {
            return Err(FieldError::InsufficientPrecision(format!(
                "odd leading exponent {} has no square root",
                self.start
            )));
        }
        let r0 = lead_root(c0)?;
        let two_r0_inv = r0.plus(&r0).try_inv()?;
        let rel = match self.prec {
            Some(p) => p - self.start,
            None if self.coeffs.len() == 1 => 1,
            None => EXACT_SERIES_INVERSE_TERMS,
        };
        let mut out = vec![r0];
        for k in 1..rel as usize {
            let mut acc = self.coeffs.get(k).cloned().unwrap_or_else(F::zero);
            for i in 1..k {
                acc = acc.minus(&out[i].times(&out[k - i]));
            }
            out.push(acc.times(&two_r0_inv));
        }
        let half = self.start / 2;
        let prec = if self.prec.is_none() && self.coeffs.len() == 1 {
            None
        } else {
            Some(half + rel)
        };
        Ok(Self::new(half, out, prec))
    }
}

impl<F: ConstField> Field for LocalSeries<F> {
    fn zero_like(&self) -> Self {
        Self::new(0, Vec::new(), None)
    }
    fn one_like(&self) -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let prec = pmin(self.prec, rhs.prec);
        if rhs.coeffs.is_empty() {
            return Self::new(self.start, self.coeffs.clone(), prec);
        }
        if self.coeffs.is_empty() {
            return Self::new(rhs.start, rhs.coeffs.clone(), prec);
        }
        let start = min(self.start, rhs.start);
        let end = (self.start + self.coeffs.len() as i64).max(rhs.start + rhs.coeffs.len() as i64);
        let end = prec.map_or(end, |p| min(end, p));
        let len = (end - start).max(0) as usize;
        let mut out: Vec<Option<F>> = vec![None; len];
        for (src, s0) in [(&self.coeffs, self.start), (&rhs.coeffs, rhs.start)] {
            for (i, c) in src.iter().enumerate() {
                let idx = (s0 + i as i64 - start) as usize;
                if idx < len {
                    out[idx] = Some(match out[idx].take() {
                        None => c.clone(),
                        Some(a) => a.plus(c),
                    });
                }
            }
        }
        Self::new(start, out.into_iter().map(|c| c.unwrap_or_else(F::zero)).collect(), prec)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        let (Some(la), Some(lb)) = (self.low(), rhs.low()) else {
            return self.zero_like();
        };
        let prec = pmin(self.prec.map(|p| p + lb), rhs.prec.map(|p| p + la));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::new(0, Vec::new(), prec);
        }
        let start = self.start + rhs.start;
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = match prec {
            Some(p) => ((p - start).max(0) as usize).min(full),
            None => full,
        };
        let mut out: Vec<Option<F>> = vec![None; len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let t = a.times(b);
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(acc) => acc.plus(&t),
                });
            }
        }
        Self::new(start, out.into_iter().map(|c| c.unwrap_or_else(F::zero)).collect(), prec)
    }
    fn negated(&self) -> Self {
        LocalSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(Field::negated).collect(),
            prec: self.prec,
        }
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        let Some(c0) = self.coeffs.first() else {
            return Err(match self.prec {
                None => FieldError::DivisionByZero,
                Some(p) => FieldError::InsufficientPrecision(format!("inverting O(ε^{p})")),
            });
        };
        let e = self.start;
        let rel = match self.prec {
            Some(p) => p - e,
            None if self.coeffs.len() == 1 => {
                return Ok(Self::new(-e, vec![c0.try_inv()?], None));
            }
            None => EXACT_SERIES_INVERSE_TERMS,
        };
        let inv0 = c0.try_inv()?;
        let mut out = vec![inv0.clone()];
        for k in 1..rel as usize {
            let mut acc = F::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc.plus(&self.coeffs[i].times(&out[k - i]));
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(Self::new(-e, out, Some(-e + rel)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Rational, TruncatedLaurent};

    type S = LocalSeries<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn inverse_of_one_minus_eps() {
        let s = S::new(0, vec![q(1), q(-1)], Some(5));
        let inv = s.try_inv().unwrap();
        assert_eq!(inv, S::new(0, vec![q(1); 5], Some(5)));
    }

    #[test]
    fn simple_pole() {
        let s = S::new(1, vec![q(2), q(1)], Some(6));
        let inv = s.try_inv().unwrap();
        assert_eq!(inv.order(), Some(-1));
        assert_eq!(inv.precision(), Some(4));
        assert!(s.times(&inv).is_one());
    }

    #[test]
    fn square_root_recurrence() {
        // (1 + ε)^2 = 1 + 2ε + ε^2
        let s = S::new(0, vec![q(1), q(2), q(1)], Some(6));
        let r = s.sqrt_with(|_| Ok(q(1))).unwrap();
        assert!(r.minus(&S::new(0, vec![q(1), q(1)], None)).is_zero());
        assert_eq!(r.precision(), Some(6));
    }

    #[test]
    fn leading_approximate_zeros_are_dropped() {
        let c = TruncatedLaurent::big_o(10);
        let one = TruncatedLaurent::one();
        let s = LocalSeries::new(0, vec![c, one.clone()], Some(4));
        assert_eq!(s.order(), Some(1));
        assert_eq!(s.leading(), Some(&one));
    }
}
