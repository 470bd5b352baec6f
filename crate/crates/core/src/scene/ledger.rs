use serde::{Deserialize, Serialize};

use super::{g_polynomial, gamma_of, GPolynomial, Scene, SceneError};
use crate::curves::{twist_multiples, CurvePoint, WeierstrassCurve};
use crate::fields::{sqrt_lift, ConstField, Field, HenselError, LocalSeries, Polynomial, Rational, TruncatedLaurent};
use crate::valuations::{is_odd, LexValue};

type S = LocalSeries<TruncatedLaurent>;

/// Pairs `(s, r)` examined by default.
pub const DEFAULT_PAIRS: [(i64, i64); 3] = [(1, 0), (1, 1), (-1, 2)];

const MAX_ESCALATIONS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignBranch {
    /// Sign of the leading coefficient of the chosen `√f(B)`.
    pub sqrt_fb_sign: i32,
    /// Order of the same difference with the other sign; `None` if it
    /// vanished to precision.
    pub rejected_order: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboOrder {
    pub s: i64,
    pub r: i64,
    pub order: i64,
}

/// Orders at `Z = γ` of the quantities in the valuation argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WLedger {
    pub m: i64,
    pub gamma: String,
    pub t_precision: i64,
    pub z_precision: i64,
    pub escalations: u32,
    pub branch: SignBranch,
    /// `X_m(A) - B`.
    pub x_difference: i64,
    /// `Y_m(A)√f(A) - √f(B)`.
    pub y_difference: i64,
    pub x_p3: i64,
    pub y_p3: i64,
    pub combos: Vec<ComboOrder>,
    pub y_p3_odd: bool,
    pub x_p3_even: bool,
}

impl WLedger {
    pub fn matches_expected(&self) -> bool {
        (self.x_difference, self.y_difference, self.x_p3, self.y_p3) == (1, 0, -2, -3)
            && self.combos.iter().all(|c| c.order == 0)
            && self.y_p3_odd
            && self.x_p3_even
    }
}

fn order(s: &S, what: &str) -> Result<i64, SceneError> {
    s.order()
        .ok_or_else(|| SceneError::InsufficientPrecision(format!("{what} vanishes to precision")))
}

fn constant(c: &Rational) -> S {
    S::constant(TruncatedLaurent::from_rational(c))
}

fn eval_ratio(num: &Polynomial<Rational>, den: &Polynomial<Rational>, x: &S) -> Result<S, SceneError> {
    let n = num.eval_with(x, constant);
    let d = den.eval_with(x, constant);
    Ok(n.try_div(&d)?)
}

fn hensel_to_scene(e: HenselError) -> SceneError {
    match e {
        HenselError::Field(f) => f.into(),
        other => other.into(),
    }
}

fn series_sqrt(u: &S, sign: i32, t_target: i64) -> Result<S, SceneError> {
    let c0 = u
        .leading()
        .ok_or_else(|| SceneError::InsufficientPrecision("radicand vanishes to precision".into()))?;
    let root = sqrt_lift(c0, sign, t_target).map_err(hensel_to_scene)?;
    Ok(u.sqrt_with(|_| Ok(root))?)
}

fn y_of(p: &CurvePoint<S>, what: &str) -> Result<S, SceneError> {
    match p {
        CurvePoint::Affine { y, .. } => Ok(y.clone()),
        CurvePoint::Infinity => Err(SceneError::InsufficientPrecision(format!("{what} collapsed to infinity"))),
    }
}

fn ledger_at(
    scene: &Scene,
    g: &GPolynomial,
    pairs: &[(i64, i64)],
    tp: i64,
    zp: i64,
) -> Result<WLedger, SceneError> {
    let m = g.m;
    let gamma = gamma_of(g, tp)?;
    let z = S::new(0, vec![gamma.clone(), TruncatedLaurent::one()], Some(zp));
    let inv_t2 = TruncatedLaurent::monomial(Rational::one(), -2);
    let lambda = TruncatedLaurent::from_rational(&scene.lambda);
    let a = z.times(&S::constant(inv_t2.plus(&lambda)));
    let b = S::constant(inv_t2).plus(&z.times(&S::constant(lambda)));

    let ec: WeierstrassCurve<S> = scene.curve.map(constant);
    let (xm, ym) = twist_multiples(&scene.curve, m)?;
    let xma = eval_ratio(xm.num(), xm.den(), &a)?;
    let yma = eval_ratio(ym.num(), ym.den(), &a)?;
    let sqrt_fa = series_sqrt(&ec.f(&a), 1, tp)?;
    let y_mp1 = yma.times(&sqrt_fa);

    let x_diff = xma.minus(&b);
    let x_difference = order(&x_diff, "X_m(A) - B")?;

    let fb = ec.f(&b);
    let mut candidates = Vec::new();
    for sign in [1, -1] {
        let sqrt_fb = series_sqrt(&fb, sign, tp)?;
        let diff_order = y_mp1.minus(&sqrt_fb).order();
        candidates.push((sign, sqrt_fb, diff_order));
    }
    let chosen = candidates.iter().position(|c| c.2 == Some(0));
    let Some(k) = chosen else {
        return Err(SceneError::NoValidSignChoice {
            plus: candidates[0].2,
            minus: candidates[1].2,
        });
    };
    let (sign, sqrt_fb, _) = candidates[k].clone();
    let branch = SignBranch {
        sqrt_fb_sign: sign,
        rejected_order: candidates[1 - k].2,
    };

    let mp1 = CurvePoint::affine(xma, y_mp1);
    let p1 = CurvePoint::affine(a, sqrt_fa);
    let p2 = CurvePoint::affine(b, sqrt_fb);
    let p3 = ec.add(&mp1, &p2)?;
    let CurvePoint::Affine { x: x3, y: y3 } = &p3 else {
        return Err(SceneError::InsufficientPrecision("P₃ collapsed to infinity".into()));
    };
    let x_p3 = order(x3, "x(P₃)")?;
    let y_p3 = order(y3, "y(P₃)")?;

    let mut combos = Vec::with_capacity(pairs.len());
    for &(s, r) in pairs {
        if s == 0 {
            return Err(SceneError::ZeroS(r));
        }
        let pt = ec.add(&ec.mul(s, &p1)?, &ec.mul(r, &p3)?)?;
        let what = format!("y({s}P₁ + {r}P₃)");
        let o = order(&y_of(&pt, &what)?, &what)?;
        combos.push(ComboOrder { s, r, order: o });
    }

    Ok(WLedger {
        m,
        gamma: gamma.to_string(),
        t_precision: tp,
        z_precision: zp,
        escalations: 0,
        branch,
        x_difference,
        y_difference: 0,
        x_p3,
        y_p3,
        combos,
        y_p3_odd: is_odd(&LexValue::scalar(y_p3)).expect("finite"),
        x_p3_even: !is_odd(&LexValue::scalar(x_p3)).expect("finite"),
    })
}

fn same_orders(a: &WLedger, b: &WLedger) -> bool {
    (a.x_difference, a.y_difference, a.x_p3, a.y_p3, &a.combos, a.branch.sqrt_fb_sign)
        == (b.x_difference, b.y_difference, b.x_p3, b.y_p3, &b.combos, b.branch.sqrt_fb_sign)
}

/// Computes the ledger at the scene's precisions, escalating when the
/// precision is insufficient. The orders are accepted once a run at higher
/// precision reproduces them.
pub fn w_ledger(scene: &Scene, m: i64, pairs: &[(i64, i64)]) -> Result<WLedger, SceneError> {
    let g = g_polynomial(scene, m)?;
    let (mut tp, mut zp) = (scene.t_precision, scene.z_precision);
    let mut last_err = None;
    for escalations in 0..=MAX_ESCALATIONS {
        let attempt = ledger_at(scene, &g, pairs, tp, zp).and_then(|base| {
            let check = ledger_at(scene, &g, pairs, tp + 4, zp + 2)?;
            if same_orders(&base, &check) {
                Ok(base)
            } else {
                Err(SceneError::InsufficientPrecision("orders change under higher precision".into()))
            }
        });
        match attempt {
            Ok(mut l) => {
                l.escalations = escalations;
                return Ok(l);
            }
            Err(SceneError::InsufficientPrecision(msg)) => {
                last_err = Some(SceneError::InsufficientPrecision(msg));
                tp *= 2;
                zp *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}
