//! Hilbert symbols over ℚ and the local–global isotropy decision.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{witness_search, DiagonalForm, FormError, IsotropyVerdict};
use crate::fields::Rational;

/// Largest trial divisor used when factoring.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Search height used to attach an optional witness to an isotropic verdict.
const WITNESS_HEIGHT: u64 = 12;

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "∞"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Prime factorization of `|n|` by trial division up to
/// [`TRIAL_DIVISION_BOUND`]. A cofactor left over after all divisors are
/// exhausted is accepted as prime only when it is below the square of the
/// bound.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>, FormError> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(FormError::Field(crate::fields::FieldError::ZeroInput));
    }
    let mut out = Vec::new();
    let mut d: u64 = 2;
    let mut exhausted = true;
    while d <= TRIAL_DIVISION_BOUND {
        let dd = BigInt::from(d);
        if &dd * &dd > m {
            exhausted = false;
            break;
        }
        let mut k = 0;
        while (&m % &dd).is_zero() {
            m /= &dd;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let bound = BigInt::from(TRIAL_DIVISION_BOUND);
        if exhausted && m >= &bound * &bound {
            return Err(FormError::FactorizationLimit(n.to_string()));
        }
        let p = m.to_u64().ok_or_else(|| FormError::FactorizationLimit(n.to_string()))?;
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, k)) => *k += 1,
            None => out.push((p, 1)),
        }
        out.sort_unstable();
    }
    Ok(out)
}

fn is_prime(p: u64) -> Result<bool, FormError> {
    if p < 2 {
        return Ok(false);
    }
    Ok(factor(&BigInt::from(p))? == vec![(p, 1)])
}

/// Integer in the same square class as `q`.
fn square_class_integer(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

/// `(p-adic valuation, unit part)` of a nonzero integer.
fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut k = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    (k, m)
}

fn legendre(u: &BigInt, p: u64) -> i32 {
    let r = u.mod_floor(&BigInt::from(p));
    let e = BigInt::from((p - 1) / 2);
    let v = r.modpow(&e, &BigInt::from(p));
    if v.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().expect("small")
}

fn hilbert_int(a: &BigInt, b: &BigInt, place: Place) -> i32 {
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_p(a, 2);
            let (beta, v) = split_p(b, 2);
            let eps = |x: &BigInt| ((mod8(x) - 1) / 2) % 2;
            let omega = |x: &BigInt| {
                let r = mod8(x);
                ((r * r - 1) / 8) % 2
            };
            let e = eps(&u) * eps(&v) + alpha as u64 * omega(&v) + beta as u64 * omega(&u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_p(a, p);
            let (beta, v) = split_p(b, p);
            let eps = ((p - 1) / 2) % 2;
            let mut s = if (alpha as u64 * beta as u64 * eps).is_multiple_of(2) {
                1
            } else {
                -1
            };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// `(a, b)_v`: `+1` iff `z² = ax² + by²` has a nontrivial solution in `ℚ_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i32, FormError> {
    if a.is_zero() {
        return Err(FormError::ZeroEntry(0));
    }
    if b.is_zero() {
        return Err(FormError::ZeroEntry(1));
    }
    if let Place::Prime(p) = place {
        if !is_prime(p)? {
            return Err(FormError::InvalidPlace(p));
        }
    }
    Ok(hilbert_int(&square_class_integer(a), &square_class_integer(b), place))
}

fn is_local_square(d: &BigInt, place: Place) -> bool {
    match place {
        Place::Real => d.is_positive(),
        Place::Prime(p) => {
            let (k, u) = split_p(d, p);
            if k % 2 == 1 {
                return false;
            }
            if p == 2 {
                mod8(&u) == 1
            } else {
                legendre(&u, p) == 1
            }
        }
    }
}

fn locally_isotropic(a: &[BigInt], place: Place) -> bool {
    let d: BigInt = a.iter().product();
    let mut eps = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            eps *= hilbert_int(&a[i], &a[j], place);
        }
    }
    let minus_one = BigInt::from(-1);
    match a.len() {
        3 => hilbert_int(&minus_one, &(-&d), place) == eps,
        4 => !is_local_square(&d, place) || eps == hilbert_int(&minus_one, &minus_one, place),
        _ => unreachable!(),
    }
}

/// Exact isotropy decision for a diagonal form over ℚ.
///
/// Isotropic verdicts carry a witness when one of small height exists.
pub fn isotropic_over_q(form: &DiagonalForm<Rational>) -> Result<IsotropyVerdict<Rational>, FormError> {
    let a: Vec<BigInt> = form.entries().iter().map(square_class_integer).collect();
    let isotropic = match a.len() {
        1 => false,
        2 => {
            let m = -(&a[0] * &a[1]);
            !m.is_negative() && {
                let r = m.sqrt();
                &r * &r == m
            }
        }
        3 | 4 => {
            let mut places = BTreeSet::from([Place::Real, Place::Prime(2)]);
            for x in &a {
                for (p, _) in factor(x)? {
                    places.insert(Place::Prime(p));
                }
            }
            places.into_iter().all(|v| locally_isotropic(&a, v))
        }
        _ => a.iter().any(Signed::is_positive) && a.iter().any(Signed::is_negative),
    };
    if !isotropic {
        return Ok(IsotropyVerdict::anisotropic());
    }
    let found = witness_search(form, WITNESS_HEIGHT);
    Ok(IsotropyVerdict {
        isotropic: true,
        witness: found.witness,
    })
}
