//! Elliptic curves `y² = x³ + a₂x² + a₄x + a₆` over any [`Field`], the
//! quadratic twist `f(Z)Y² = f(X)` and its multiples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::fields::{rational_sqrt, ConstField, Field, FieldError, Polynomial, Rational};
use crate::forms::factor;

mod twist;

pub use twist::{
    asymptotics_check, cusp_reduction_check, twist_action, twist_multiples, AsymptoticsReport, CuspReport, TwistData,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the cubic has a repeated root")]
    Singular,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("0·(Z,1) is the point at infinity")]
    ZeroMultiple,
    #[error("the twist map has a pole at the point")]
    PoleAtPoint,
    #[error("twist scalar is zero")]
    ZeroTwist,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F> {
    pub a2: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F> CurvePoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl<F: Field> CurvePoint<F> {
    pub fn negated(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), y.negated()),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a2: F, a4: F, a6: F) -> Result<Self, CurveError> {
        let c = WeierstrassCurve { a2, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    /// Discriminant of the monic cubic `f`.
    pub fn discriminant(&self) -> F {
        let (b, c, d) = (&self.a2, &self.a4, &self.a6);
        let k = |n: i64| b.from_int_like(n);
        let t1 = k(18).times(b).times(c).times(d);
        let t2 = k(4).times(&b.pow(3)).times(d);
        let t3 = b.square().times(&c.square());
        let t4 = k(4).times(&c.pow(3));
        let t5 = k(27).times(&d.square());
        t1.minus(&t2).plus(&t3).minus(&t4).minus(&t5)
    }

    /// `f(x) = x³ + a₂x² + a₄x + a₆`.
    pub fn f(&self, x: &F) -> F {
        x.plus(&self.a2).times(x).plus(&self.a4).times(x).plus(&self.a6)
    }

    /// `f` as a polynomial.
    pub fn cubic(&self) -> Polynomial<F> {
        Polynomial::new(vec![self.a6.clone(), self.a4.clone(), self.a2.clone(), self.a2.one_like()])
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square().minus(&self.f(x)).is_zero(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassCurve<G> {
        WeierstrassCurve {
            a2: f(&self.a2),
            a4: f(&self.a4),
            a6: f(&self.a6),
        }
    }

    /// Group law without membership checks.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>, FieldError> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1.minus(x2).is_zero() {
            if y1.plus(y2).is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let three = x1.from_int_like(3);
            let two = x1.from_int_like(2);
            let num = three.times(&x1.square()).plus(&two.times(&self.a2).times(x1)).plus(&self.a4);
            num.try_div(&two.times(y1))?
        } else {
            y2.minus(y1).try_div(&x2.minus(x1))?
        };
        let x3 = slope.square().minus(&self.a2).minus(x1).minus(x2);
        let y3 = slope.times(&x1.minus(&x3)).minus(y1);
        Ok(CurvePoint::affine(x3, y3))
    }

    /// Double-and-add without membership checks.
    pub fn mul(&self, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>, FieldError> {
        let mut acc = CurvePoint::Infinity;
        let mut base = if n < 0 { p.negated() } else { p.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

/// `P + Q`, rejecting points off the curve.
pub fn ec_add<F: Field>(
    curve: &WeierstrassCurve<F>,
    p: &CurvePoint<F>,
    q: &CurvePoint<F>,
) -> Result<CurvePoint<F>, CurveError> {
    if !curve.contains(p) || !curve.contains(q) {
        return Err(CurveError::PointNotOnCurve);
    }
    Ok(curve.add(p, q)?)
}

/// `n·P`, rejecting points off the curve.
pub fn scalar_mul<F: Field>(curve: &WeierstrassCurve<F>, n: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>, CurveError> {
    if !curve.contains(p) {
        return Err(CurveError::PointNotOnCurve);
    }
    Ok(curve.mul(n, p)?)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    for (p, k) in factor(n).expect("small coefficients") {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::from(1);
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= p;
            }
        }
        out = next;
    }
    out
}

/// The point at infinity and the points `(r, 0)` for the rational roots `r`
/// of the cubic.
pub fn two_torsion(curve: &WeierstrassCurve<Rational>) -> Vec<CurvePoint<Rational>> {
    let cs = [&curve.a6, &curve.a4, &curve.a2, &Rational::one()];
    let l = cs.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut roots: Vec<Rational> = Vec::new();
    if ints[0].is_zero() {
        roots.push(<Rational as ConstField>::zero());
    }
    let low = ints.iter().position(|c| !c.is_zero()).expect("monic");
    let lead = &ints[3];
    for p in divisors(&ints[low]) {
        for q in divisors(lead) {
            for r in [Rational::new(p.clone(), q.clone()), Rational::new(-p.clone(), q.clone())] {
                if Field::is_zero(&curve.f(&r)) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    std::iter::once(CurvePoint::Infinity)
        .chain(roots.into_iter().map(|r| CurvePoint::affine(r, <Rational as ConstField>::zero())))
        .collect()
}

/// Affine rational points with `x = a/b`, `|a| ≤ height`, `1 ≤ b ≤ height`.
pub fn rational_points(curve: &WeierstrassCurve<Rational>, height: i64) -> Vec<CurvePoint<Rational>> {
    let mut out = Vec::new();
    for b in 1..=height {
        for a in -height..=height {
            if a.gcd(&b) != 1 {
                continue;
            }
            let x = Rational::new(a.into(), b.into());
            if let Some(y) = rational_sqrt(&curve.f(&x)) {
                out.push(CurvePoint::affine(x.clone(), y.clone()));
                if y.is_positive() {
                    out.push(CurvePoint::affine(x, -y));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::RationalFunction;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn pt(x: i64, y: i64) -> CurvePoint<Rational> {
        CurvePoint::affine(q(x), q(y))
    }

    fn x3p1() -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(q(0), q(0), q(1)).unwrap()
    }

    #[test]
    fn addition_examples() {
        let e = x3p1();
        assert_eq!(ec_add(&e, &pt(2, 3), &CurvePoint::Infinity), Ok(pt(2, 3)));
        assert_eq!(ec_add(&e, &pt(2, 3), &pt(2, 3)), Ok(pt(0, 1)));
        assert_eq!(ec_add(&e, &pt(2, 3), &pt(0, 1)), Ok(pt(-1, 0)));
        assert_eq!(ec_add(&e, &pt(2, 3), &pt(2, -3)), Ok(CurvePoint::Infinity));
        assert_eq!(ec_add(&e, &pt(1, 1), &pt(2, 3)), Err(CurveError::PointNotOnCurve));
    }

    #[test]
    fn multiples() {
        let e = x3p1();
        assert_eq!(scalar_mul(&e, 0, &pt(2, 3)), Ok(CurvePoint::Infinity));
        assert_eq!(scalar_mul(&e, 3, &pt(2, 3)), Ok(pt(-1, 0)));
        assert_eq!(scalar_mul(&e, -2, &pt(2, 3)), Ok(pt(0, -1)));
        // (2,3) has order 6
        assert_eq!(scalar_mul(&e, 6, &pt(2, 3)), Ok(CurvePoint::Infinity));
    }

    #[test]
    fn singular_cubic_rejected() {
        assert_eq!(WeierstrassCurve::new(q(0), q(0), q(0)), Err(CurveError::Singular));
        assert_eq!(WeierstrassCurve::new(q(-2), q(1), q(0)), Err(CurveError::Singular));
    }

    #[test]
    fn two_torsion_examples() {
        let e = WeierstrassCurve::new(q(0), q(0), q(-1)).unwrap();
        assert_eq!(two_torsion(&e), vec![CurvePoint::Infinity, pt(1, 0)]);
        let e = WeierstrassCurve::new(q(0), q(1), q(1)).unwrap();
        assert_eq!(two_torsion(&e), vec![CurvePoint::Infinity]);
        let e = WeierstrassCurve::new(q(0), q(-1), q(0)).unwrap();
        assert_eq!(two_torsion(&e), vec![CurvePoint::Infinity, pt(-1, 0), pt(0, 0), pt(1, 0)]);
        let half = Rational::new(1.into(), 2.into());
        // (x - 1/2)(x² + 1)
        let e = WeierstrassCurve::new(-half.clone(), q(1), -half.clone()).unwrap();
        assert_eq!(two_torsion(&e), vec![CurvePoint::Infinity, CurvePoint::affine(half, q(0))]);
    }

    #[test]
    fn point_search_finds_known_points() {
        let e = WeierstrassCurve::new(q(0), q(1), q(1)).unwrap();
        let pts = rational_points(&e, 4);
        assert!(pts.contains(&pt(0, 1)) && pts.contains(&pt(0, -1)));
        assert!(pts.iter().all(|p| e.contains(p)));
    }

    #[test]
    fn group_law_over_function_field() {
        type RF = RationalFunction<Rational>;
        let e = WeierstrassCurve::new(q(0), q(1), q(1)).unwrap().map(|c| RF::constant(c.clone()));
        let z = RF::variable();
        let p = CurvePoint::affine(RF::constant(q(0)), RF::constant(q(1)));
        let two_p = e.add(&p, &p).unwrap();
        assert!(e.contains(&two_p));
        assert!(!e.contains(&CurvePoint::affine(z.clone(), z)));
    }
}
