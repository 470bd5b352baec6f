use serde::{Deserialize, Serialize};

use super::{CurveError, CurvePoint, WeierstrassCurve};
use crate::fields::{ConstField, Field, Point, Rational, RationalFunction};

type RF = RationalFunction<Rational>;

/// The twist `d·Y² = f(X)` of a curve and its Weierstrass model
/// `y² = x³ + a₂d·x² + a₄d²·x + a₆d³`, related by `(X, Y) ↦ (dX, d²Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistData<F> {
    pub base: WeierstrassCurve<Rational>,
    pub scalar: F,
}

impl<F: Field> TwistData<F> {
    pub fn new(base: WeierstrassCurve<Rational>, scalar: F) -> Result<Self, CurveError> {
        if scalar.is_zero() {
            return Err(CurveError::ZeroTwist);
        }
        Ok(TwistData { base, scalar })
    }

    pub fn model(&self, embed: impl Fn(&Rational) -> F) -> WeierstrassCurve<F> {
        let d = &self.scalar;
        WeierstrassCurve {
            a2: embed(&self.base.a2).times(d),
            a4: embed(&self.base.a4).times(&d.square()),
            a6: embed(&self.base.a6).times(&d.pow(3)),
        }
    }

    pub fn to_model(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.times(&self.scalar), y.times(&self.scalar.square())),
        }
    }

    pub fn from_model(&self, p: &CurvePoint<F>) -> Result<CurvePoint<F>, CurveError> {
        Ok(match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                CurvePoint::affine(x.try_div(&self.scalar)?, y.try_div(&self.scalar.square())?)
            }
        })
    }
}

/// `(Xₙ, Yₙ)` with `n·(Z, 1) = (Xₙ, Yₙ)` on `f(Z)Y² = f(X)` over `ℚ(Z)`.
pub fn twist_multiples(base: &WeierstrassCurve<Rational>, n: i64) -> Result<(RF, RF), CurveError> {
    if n == 0 {
        return Err(CurveError::ZeroMultiple);
    }
    let z = RF::variable();
    let d = base.map(|c| RF::constant(c.clone())).f(&z);
    let tw = TwistData::new(base.clone(), d)?;
    let model = tw.model(|c| RF::constant(c.clone()));
    let p = tw.to_model(&CurvePoint::affine(z, RF::one()));
    match tw.from_model(&model.mul(n, &p)?)? {
        CurvePoint::Affine { x, y } => Ok((x, y)),
        CurvePoint::Infinity => Err(CurveError::ZeroMultiple),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsReport {
    pub n: i64,
    /// `order_at(Xₙ - Z/n², ∞)`; `None` when the difference vanishes.
    pub x_order: Option<i64>,
    /// `order_at(Yₙ - 1/n³, ∞)`; `None` when the difference vanishes.
    pub y_order: Option<i64>,
    /// Coefficient of `Z` in the expansion of `Xₙ` at infinity.
    pub x_leading: String,
    /// Value of `Yₙ` at infinity.
    pub y_at_infinity: String,
    pub pass: bool,
}

fn order_at_infinity(f: &RF) -> Option<i64> {
    f.order_at(&Point::Infinity).ok()
}

/// Checks `Xₙ = Z/n² + O(1)` and `Yₙ = 1/n³ + O(Z⁻¹)` at `Z = ∞`.
pub fn asymptotics_check(base: &WeierstrassCurve<Rational>, n: i64) -> Result<AsymptoticsReport, CurveError> {
    let (x, y) = twist_multiples(base, n)?;
    let z = RF::variable();
    let n2 = Rational::from_int(n * n);
    let n3 = Rational::from_int(n * n * n);
    let dx = x.minus(&z.times(&RF::constant(n2.recip())));
    let dy = y.minus(&RF::constant(n3.recip()));
    let x_order = order_at_infinity(&dx);
    let y_order = order_at_infinity(&dy);
    let x_leading = x.try_div(&z)?.eval_at_infinity()?;
    let y_at_infinity = y.eval_at_infinity()?;
    Ok(AsymptoticsReport {
        n,
        x_order,
        y_order,
        x_leading: x_leading.to_string(),
        y_at_infinity: y_at_infinity.to_string(),
        pass: x_order.is_none_or(|o| o >= 0) && y_order.is_none_or(|o| o >= 1),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub n: i64,
    /// Value at `Z = ∞` of `X′ₙ/Y′ₙ = Xₙ/(Z·Yₙ)`.
    pub residue: String,
    pub pass: bool,
}

/// With `X′ₙ = Z²Xₙ/f(Z)` and `Y′ₙ = Z³Yₙ/f(Z)`, checks that `X′ₙ/Y′ₙ`
/// reduces to `n` modulo `Z⁻¹`.
pub fn cusp_reduction_check(base: &WeierstrassCurve<Rational>, n: i64) -> Result<CuspReport, CurveError> {
    let (x, y) = twist_multiples(base, n)?;
    let z = RF::variable();
    let fz = base.map(|c| RF::constant(c.clone())).f(&z);
    let xp = z.square().times(&x).try_div(&fz)?;
    let yp = z.pow(3).times(&y).try_div(&fz)?;
    let r = xp.try_div(&yp)?.eval_at_infinity()?;
    Ok(CuspReport {
        n,
        residue: r.to_string(),
        pass: r == Rational::from_int(n),
    })
}

/// `(x, y) ↦ (X(x), Y(x)·y)` for a point `(X, Y)` of the twist.
pub fn twist_action(
    base: &WeierstrassCurve<Rational>,
    xy: (&RF, &RF),
    p: &CurvePoint<Rational>,
) -> Result<CurvePoint<Rational>, CurveError> {
    if !base.contains(p) {
        return Err(CurveError::PointNotOnCurve);
    }
    let CurvePoint::Affine { x, y } = p else {
        return Ok(CurvePoint::Infinity);
    };
    let nx = xy.0.eval(x).map_err(|_| CurveError::PoleAtPoint)?;
    let ny = xy.1.eval(x).map_err(|_| CurveError::PoleAtPoint)?.times(y);
    let out = CurvePoint::affine(nx, ny);
    if !base.contains(&out) {
        return Err(CurveError::PointNotOnCurve);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::rational_points;
    use crate::fields::parse::parse_element;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn base() -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(q(0), q(1), q(1)).unwrap()
    }

    #[test]
    fn first_multiples() {
        let e = base();
        assert_eq!(twist_multiples(&e, 1), Ok((RF::variable(), RF::one())));
        assert_eq!(twist_multiples(&e, -1), Ok((RF::variable(), RF::one().negated())));
        assert_eq!(twist_multiples(&e, 0), Err(CurveError::ZeroMultiple));
    }

    #[test]
    fn doubling_matches_duplication_formula() {
        // slope (3Z²+1)/2 on the twist, so x(2P) = slope²/f(Z) - 2Z
        let e = base();
        let z = RF::variable();
        let fz = e.map(|c| RF::constant(c.clone())).f(&z);
        let slope: RF = parse_element("(3*Z^2 + 1)/2").unwrap();
        let oracle = slope.square().minus(&z.times(&fz).times(&RF::from_int(2))).try_div(&fz).unwrap();
        let expected: RF = parse_element("(Z^4 - 2*Z^2 - 8*Z + 1)/(4*Z^3 + 4*Z + 4)").unwrap();
        assert_eq!(oracle, expected);
        assert_eq!(twist_multiples(&e, 2).unwrap().0, expected);
    }

    #[test]
    fn multiples_lie_on_twist() {
        let e = base();
        let z = RF::variable();
        let ez = e.map(|c| RF::constant(c.clone()));
        for n in 1..=6 {
            let (x, y) = twist_multiples(&e, n).unwrap();
            assert_eq!(ez.f(&z).times(&y.square()), ez.f(&x), "n = {n}");
        }
    }

    #[test]
    fn asymptotics_examples() {
        let e = base();
        let r2 = asymptotics_check(&e, 2).unwrap();
        assert_eq!(r2.x_leading, "1/4");
        assert!(r2.pass);
        let r3 = asymptotics_check(&e, 3).unwrap();
        assert_eq!(r3.y_at_infinity, "1/27");
        let r1 = asymptotics_check(&e, 1).unwrap();
        assert_eq!(r1.x_order, None);
        assert!(r1.pass);
    }

    #[test]
    fn cusp_examples() {
        let e = base();
        for n in [1, 2, -3] {
            let r = cusp_reduction_check(&e, n).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.residue, n.to_string());
        }
    }

    #[test]
    fn action_matches_multiplication() {
        let e = base();
        let (x2, y2) = twist_multiples(&e, 2).unwrap();
        let (x3, y3) = twist_multiples(&e, 3).unwrap();
        let id = (RF::variable(), RF::one());
        for p in rational_points(&e, 5) {
            assert_eq!(twist_action(&e, (&id.0, &id.1), &p), Ok(p.clone()));
            match twist_action(&e, (&x2, &y2), &p) {
                Ok(r) => assert_eq!(r, e.mul(2, &p).unwrap()),
                Err(err) => assert_eq!(err, CurveError::PoleAtPoint),
            }
            let composed = twist_action(&e, (&x2, &y2), &p).and_then(|r| twist_action(&e, (&x3, &y3), &r));
            if let Ok(r) = composed {
                assert_eq!(r, e.mul(6, &p).unwrap());
            }
        }
    }

    #[test]
    fn action_at_pole() {
        // X₂ has a pole at each root of f, e.g. at the 2-torsion point (1, 0)
        let e = WeierstrassCurve::new(q(0), q(0), q(-1)).unwrap();
        let (x2, y2) = twist_multiples(&e, 2).unwrap();
        let p = CurvePoint::affine(q(1), q(0));
        assert_eq!(twist_action(&e, (&x2, &y2), &p), Err(CurveError::PoleAtPoint));
    }
}
