//! Multi-prime modular gcd for polynomials over ℚ.
//!
//! Images modulo word-sized primes are combined by Chinese remaindering until
//! the lifted candidate stabilizes and divides both inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Polynomial, Rational};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(n: u64) -> impl Iterator<Item = u64> {
    ((1u64 << 61)..n).rev().filter(|&n| n & 1 == 1 && is_prime_u64(n))
}

/// Primes just below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| primes_below(1 << 62).take(64).collect());
    let last = *cached.last().expect("nonempty");
    cached.iter().copied().chain(primes_below(last))
}

/// Primitive integer polynomial with the same roots.
fn primitive(p: &Polynomial<Rational>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over `𝔽_p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                let t = mul_mod(c, bc, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let half: BigInt = m >> 1;
    if c > &half {
        c - m
    } else {
        c.clone()
    }
}

fn to_poly(h: &[BigInt]) -> Polynomial<Rational> {
    Polynomial::new(h.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn divides(h: &Polynomial<Rational>, a: &Polynomial<Rational>) -> bool {
    a.div_rem(h).is_ok_and(|(_, r)| r.is_zero())
}

/// Monic gcd of two polynomials over ℚ; `None` when both are zero.
pub(crate) fn rational_gcd(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Option<Polynomial<Rational>> {
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        return (!nz.is_zero()).then(|| nz.monic().expect("nonzero leading coefficient"));
    }
    let one = Polynomial::constant(Rational::one());
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Some(one);
    }
    let (pa, pb) = (primitive(a), primitive(b));
    let lc = pa.last().unwrap().gcd(pb.last().unwrap());
    let mut best = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes() {
        let (ra, rb) = (reduce(&pa, p), reduce(&pb, p));
        if ra.len() != pa.len() || rb.len() != pb.len() {
            continue;
        }
        let g = gcd_mod(&ra, &rb, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Some(one);
        }
        if deg > best {
            continue;
        }
        let lcp = reduce(std::slice::from_ref(&lc), p).first().copied().unwrap_or(0);
        let image: Vec<u64> = g.iter().map(|&c| mul_mod(c, lcp, p)).collect();
        let pbig = BigInt::from(p);
        if deg < best {
            best = deg;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pbig;
            last = None;
        } else {
            // CRT: x ≡ acc (mod M), x ≡ image (mod p)
            let minv = BigInt::from(pow_mod((&modulus % &pbig).to_u64().unwrap(), p - 2, p));
            for (c, &r) in acc.iter_mut().zip(&image) {
                let diff = (BigInt::from(r) - &*c).mod_floor(&pbig);
                let t = (diff * &minv).mod_floor(&pbig);
                *c += &modulus * t;
            }
            modulus *= &pbig;
        }
        let lifted: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        if last.as_ref() == Some(&lifted) {
            let content = lifted.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let prim: Vec<BigInt> = lifted.iter().map(|c| c / &content).collect();
            let h = to_poly(&prim);
            if divides(&h, a) && divides(&h, b) {
                let h = if prim.last().unwrap().is_negative() { h.neg_ref() } else { h };
                return Some(h.monic().expect("nonzero"));
            }
        }
        last = Some(lifted);
    }
    unreachable!("infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::ConstField;

    fn p(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(cs)
    }

    /// Plain Euclid over ℚ as an oracle.
    fn euclid(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Polynomial<Rational> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).unwrap().1;
            a = b;
            b = r;
        }
        a.monic().unwrap()
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1_000_001));
        assert!(is_prime_u64((1u64 << 61) - 1));
    }

    #[test]
    fn matches_euclid() {
        let f = p(&[1, 1, 0, 1]);
        let g = p(&[-3, 0, 2]);
        let h = p(&[5, -7, 0, 0, 3]);
        for (x, y) in [(f.mul_ref(&g), f.mul_ref(&h)), (g.mul_ref(&h), h.pow(2)), (f.clone(), g.clone())] {
            assert_eq!(rational_gcd(&x, &y).unwrap(), euclid(&x, &y));
        }
    }

    #[test]
    fn rational_coefficients_and_large_content() {
        let half = Rational::new(1.into(), 2.into());
        let a = p(&[1, 2, 1]).scale(&half);
        let b = p(&[-1, 0, 1]).scale(&Rational::from_int(1_000_000_007));
        assert_eq!(rational_gcd(&a, &b).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn zero_inputs() {
        assert_eq!(rational_gcd(&Polynomial::zero(), &Polynomial::zero()), None);
        assert_eq!(rational_gcd(&Polynomial::zero(), &p(&[2, 4])).unwrap(), euclid(&p(&[2, 4]), &Polynomial::zero()));
    }
}
