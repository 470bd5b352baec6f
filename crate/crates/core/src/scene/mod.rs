//! The points `P₁ = (A, √f(A))` and `P₂ = (B, √f(B))` with
//! `A = (T⁻² + λ)Z` and `B = T⁻² + λZ`, the divisibility form built from
//! them, the polynomial `G(Z)` with its Hensel root `γ`, and the valuation
//! ledger at `Z = γ`.

use std::sync::Arc;

use thiserror::Error;

use crate::curves::{twist_multiples, CurveError, CurvePoint, WeierstrassCurve};
use crate::fields::{
    hensel_lift_root, BiquadraticElement, ConstField, Field, FieldError, HenselError, Polynomial, Rational,
    RationalFunction, Tower, TruncatedLaurent,
};
use crate::forms::{tensor, DiagonalForm, FormError};

mod ledger;

pub use ledger::{w_ledger, ComboOrder, SignBranch, WLedger, DEFAULT_PAIRS};

/// `ℚ(T)(Z)`.
pub type FunctionField = RationalFunction<RationalFunction<Rational>>;
/// `ℚ(T)(Z)(√f(A), √f(B))`.
pub type TowerElement = BiquadraticElement<FunctionField>;

pub const DEFAULT_T_PRECISION: i64 = 12;
pub const DEFAULT_Z_PRECISION: i64 = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("the base curve is singular")]
    SingularCurve,
    #[error("λ must be nonzero")]
    ZeroLambda,
    #[error("the base curve needs a₆ ≠ 0")]
    ZeroConstantTerm,
    #[error("m = {0} is not odd")]
    EvenM(i64),
    #[error("s = 0 in the pair (s, r) = (0, {0})")]
    ZeroS(i64),
    #[error("{n}·P₁ + {r}·P₂ is the point at infinity")]
    PointAtInfinity { n: i64, r: i64 },
    #[error("coefficient of Z^{0} in G is not in the valuation ring")]
    NonIntegralG(usize),
    #[error("unexpected normalization of X_m: {0}")]
    Normalization(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("no sign of √f(B) gives the opposite-point configuration (orders {plus:?} and {minus:?})")]
    NoValidSignChoice { plus: Option<i64>, minus: Option<i64> },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Hensel(#[from] HenselError),
    #[error(transparent)]
    Form(#[from] FormError),
}

impl From<FieldError> for SceneError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::InsufficientPrecision(m) => SceneError::InsufficientPrecision(m),
            other => SceneError::Curve(CurveError::Field(other)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub curve: WeierstrassCurve<Rational>,
    pub lambda: Rational,
    pub t_precision: i64,
    pub z_precision: i64,
    pub a: FunctionField,
    pub b: FunctionField,
    pub tower: Arc<Tower<FunctionField>>,
    pub p1: CurvePoint<TowerElement>,
    pub p2: CurvePoint<TowerElement>,
}

fn t_var() -> FunctionField {
    FunctionField::constant(RationalFunction::variable())
}

/// `T⁻² + λ` as a constant of `ℚ(T)(Z)`.
fn inv_t2_plus(lambda: &Rational) -> FunctionField {
    t_var().square().try_inv().expect("T ≠ 0").plus(&FunctionField::from_rational(lambda))
}

pub fn build_scene(
    curve: &WeierstrassCurve<Rational>,
    lambda: &Rational,
    t_precision: i64,
    z_precision: i64,
) -> Result<Scene, SceneError> {
    if curve.discriminant().is_zero() {
        return Err(SceneError::SingularCurve);
    }
    if curve.a6.is_zero() {
        return Err(SceneError::ZeroConstantTerm);
    }
    if lambda.is_zero() {
        return Err(SceneError::ZeroLambda);
    }
    let z = FunctionField::variable();
    let l = FunctionField::from_rational(lambda);
    let a = inv_t2_plus(lambda).times(&z);
    let b = inv_t2_plus(&Rational::zero()).plus(&l.times(&z));
    let ec = curve.map(FunctionField::from_rational);
    let tower = Tower::new(ec.f(&a), ec.f(&b));
    let p1 = CurvePoint::affine(TowerElement::embed(&tower, a.clone()), TowerElement::s1(&tower));
    let p2 = CurvePoint::affine(TowerElement::embed(&tower, b.clone()), TowerElement::s2(&tower));
    Ok(Scene {
        curve: curve.clone(),
        lambda: lambda.clone(),
        t_precision,
        z_precision,
        a,
        b,
        tower,
        p1,
        p2,
    })
}

impl Scene {
    pub fn tower_curve(&self) -> WeierstrassCurve<TowerElement> {
        self.curve
            .map(|c| TowerElement::embed(&self.tower, FunctionField::from_rational(c)))
    }

    pub fn embed(&self, x: FunctionField) -> TowerElement {
        TowerElement::embed(&self.tower, x)
    }

    /// `n·P₁ + r·P₂`.
    pub fn combo(&self, n: i64, r: i64) -> Result<CurvePoint<TowerElement>, SceneError> {
        let ec = self.tower_curve();
        let p = ec.add(&ec.mul(n, &self.p1)?, &ec.mul(r, &self.p2)?)?;
        Ok(p)
    }
}

/// `y(n·P₁ + r·P₂)`.
pub fn combo_y(scene: &Scene, n: i64, r: i64) -> Result<TowerElement, SceneError> {
    match scene.combo(n, r)? {
        CurvePoint::Affine { y, .. } => Ok(y),
        CurvePoint::Infinity => Err(SceneError::PointAtInfinity { n, r }),
    }
}

/// `⟨1, y(m·P₁ + P₂)⟩ ⊗ ⟨1, y(n·P₁ + r·P₂)⟩ ⊗ Q`.
pub fn div_form(
    scene: &Scene,
    m: i64,
    n: i64,
    r: i64,
    q: &DiagonalForm<Rational>,
) -> Result<DiagonalForm<TowerElement>, SceneError> {
    if m.rem_euclid(2) == 0 {
        return Err(SceneError::EvenM(m));
    }
    let one = scene.embed(FunctionField::one());
    let y3 = combo_y(scene, m, 1)?;
    let y = combo_y(scene, n, r)?;
    let first = DiagonalForm::new(vec![one.clone(), y3])?;
    let second = DiagonalForm::new(vec![one, y])?;
    let q = q.map(|c| scene.embed(FunctionField::from_rational(c)))?;
    Ok(tensor(&tensor(&first, &second), &q))
}

/// `G(Z)` with exact Laurent coefficients in `T`, together with
/// `X_m = R_m/S_m` normalized so that `R_m` is monic.
#[derive(Debug, Clone, PartialEq)]
pub struct GPolynomial {
    pub m: i64,
    pub g: Polynomial<TruncatedLaurent>,
    pub d: usize,
    pub r_m: Polynomial<Rational>,
    pub s_m: Polynomial<Rational>,
}

impl GPolynomial {
    /// `G mod T`.
    pub fn reduction(&self) -> Polynomial<Rational> {
        Polynomial::new(
            self.g
                .coeffs()
                .iter()
                .map(|c| c.coeff(0).expect("exact coefficient"))
                .collect(),
        )
    }

    /// `Z^d - m²Z^{d-1}`.
    pub fn expected_reduction(&self) -> Polynomial<Rational> {
        let m2 = Rational::from_int(self.m * self.m);
        Polynomial::monomial(Rational::one(), self.d).sub_ref(&Polynomial::monomial(m2, self.d - 1))
    }
}

fn laurent_poly(p: &Polynomial<Rational>) -> Polynomial<TruncatedLaurent> {
    p.map(TruncatedLaurent::from_rational)
}

pub fn g_polynomial(scene: &Scene, m: i64) -> Result<GPolynomial, SceneError> {
    if m.rem_euclid(2) == 0 {
        return Err(SceneError::EvenM(m));
    }
    let (xm, _) = twist_multiples(&scene.curve, m)?;
    let lead = xm.num().leading().expect("X_m ≠ 0").clone();
    let r_m = xm.num().scale(&lead.recip());
    let s_m = xm.den().scale(&lead.recip());
    let d = r_m.degree().expect("nonzero");
    let m2 = Rational::from_int(m * m);
    if d == 0 || s_m.degree() != Some(d - 1) || s_m.leading() != Some(&m2) {
        return Err(SceneError::Normalization(format!(
            "deg R = {d}, deg S = {:?}, lead S = {:?}",
            s_m.degree(),
            s_m.leading().map(ToString::to_string)
        )));
    }
    let inv_t2 = TruncatedLaurent::monomial(Rational::one(), -2);
    let c = inv_t2.plus(&TruncatedLaurent::from_rational(&scene.lambda));
    let a = Polynomial::new(vec![TruncatedLaurent::zero(), c]);
    let b = Polynomial::new(vec![inv_t2, TruncatedLaurent::from_rational(&scene.lambda)]);
    let h = laurent_poly(&r_m)
        .compose(&a)
        .sub_ref(&laurent_poly(&s_m).compose(&a).mul_ref(&b));
    let g = h.map(|c| c.shift(2 * d as i64));
    for (i, c) in g.coeffs().iter().enumerate() {
        if c.leading_exponent().is_some_and(|e| e < 0) {
            return Err(SceneError::NonIntegralG(i));
        }
    }
    Ok(GPolynomial { m, g, d, r_m, s_m })
}

/// The root `γ ≡ m² mod T` of `G`, to `T^t_precision`.
pub fn hensel_gamma(scene: &Scene, m: i64) -> Result<TruncatedLaurent, SceneError> {
    let g = g_polynomial(scene, m)?;
    gamma_of(&g, scene.t_precision)
}

fn gamma_of(g: &GPolynomial, target: i64) -> Result<TruncatedLaurent, SceneError> {
    Ok(hensel_lift_root(&g.g, &Rational::from_int(g.m * g.m), target)?)
}

/// T-order of `G(γ)`; `None` when the value vanishes to its precision, in
/// which case the precision is returned as the second component.
pub fn residual_order(g: &GPolynomial, gamma: &TruncatedLaurent) -> (Option<i64>, Option<i64>) {
    let v = g.g.eval(gamma);
    (v.leading_exponent(), v.precision())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_element;
    use crate::fields::Conjugation;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn scene() -> Scene {
        let e = WeierstrassCurve::new(q(0), q(1), q(1)).unwrap();
        build_scene(&e, &q(1), DEFAULT_T_PRECISION, DEFAULT_Z_PRECISION).unwrap()
    }

    #[test]
    fn points_and_difference() {
        let s = scene();
        let a: FunctionField = parse_element("(T^-2 + 1)*Z").unwrap();
        let b: FunctionField = parse_element("T^-2 + Z").unwrap();
        assert_eq!(s.a, a);
        assert_eq!(s.b, b);
        let diff: FunctionField = parse_element("T^-2*(Z - 1)").unwrap();
        assert_eq!(s.a.minus(&s.b), diff);
        let ec = s.tower_curve();
        assert!(ec.contains(&s.p1));
        assert!(ec.contains(&s.p2));
    }

    #[test]
    fn scene_errors() {
        let e = WeierstrassCurve::new(q(0), q(1), q(1)).unwrap();
        assert!(matches!(build_scene(&e, &q(0), 12, 8), Err(SceneError::ZeroLambda)));
        let singular = WeierstrassCurve { a2: q(0), a4: q(0), a6: q(0) };
        assert!(matches!(build_scene(&singular, &q(1), 12, 8), Err(SceneError::SingularCurve)));
        let no_a6 = WeierstrassCurve::new(q(0), q(-1), q(0)).unwrap();
        assert!(matches!(build_scene(&no_a6, &q(1), 12, 8), Err(SceneError::ZeroConstantTerm)));
    }

    #[test]
    fn combo_examples() {
        let s = scene();
        assert_eq!(combo_y(&s, 1, 0).unwrap(), TowerElement::s1(&s.tower));
        assert_eq!(combo_y(&s, -1, 0).unwrap(), TowerElement::s1(&s.tower).negated());
        // s₁, s₂ ↦ -s₁, -s₂ negates P₁ + P₂: y is odd, x is even
        let y3 = combo_y(&s, 1, 1).unwrap();
        let c = y3.coords();
        assert!(c[0].is_zero() && c[3].is_zero());
        assert!(!c[1].is_zero() && !c[2].is_zero());
        let CurvePoint::Affine { x: x3, .. } = s.combo(1, 1).unwrap() else { panic!() };
        assert!(!x3.coords()[3].is_zero());
        assert!(x3.coords()[1].is_zero() && x3.coords()[2].is_zero());
        assert!(matches!(combo_y(&s, 0, 0), Err(SceneError::PointAtInfinity { n: 0, r: 0 })));
        // σ₂ maps P₁ + P₂ to P₁ - P₂
        let y4 = combo_y(&s, 1, -1).unwrap();
        assert_eq!(y3.conjugate(Conjugation::Sigma2), y4);
    }

    #[test]
    fn div_form_shape() {
        let s = scene();
        let one = DiagonalForm::new(vec![q(1)]).unwrap();
        let f = div_form(&s, 1, 1, 1, &one).unwrap();
        let y3 = combo_y(&s, 1, 1).unwrap();
        let o = s.embed(FunctionField::one());
        assert_eq!(f.entries(), &[o, y3.clone(), y3.clone(), y3.square()]);
        let q2 = DiagonalForm::new(vec![q(1), q(1)]).unwrap();
        assert_eq!(div_form(&s, 1, 0, 1, &q2).unwrap().dim(), 8);
        assert!(matches!(div_form(&s, 2, 1, 1, &one), Err(SceneError::EvenM(2))));
    }

    #[test]
    fn g_for_m_one() {
        let s = scene();
        let g = g_polynomial(&s, 1).unwrap();
        assert_eq!(g.d, 1);
        assert_eq!(g.g, Polynomial::new(vec![TruncatedLaurent::from_int(-1), TruncatedLaurent::one()]));
        let gamma = hensel_gamma(&s, 1).unwrap();
        assert_eq!(gamma, TruncatedLaurent::one());
        assert!(gamma.is_exact());
    }

    #[test]
    fn g_for_m_three() {
        let s = scene();
        let g = g_polynomial(&s, 3).unwrap();
        // x(3P) has numerator of degree 9 = 3²
        assert_eq!(g.d, 9);
        assert_eq!(g.reduction(), g.expected_reduction());
        let gamma = hensel_gamma(&s, 3).unwrap();
        assert_eq!(gamma.coeff(0), Some(q(9)));
        let (order, prec) = residual_order(&g, &gamma);
        assert!(order.is_none() && prec.is_some_and(|p| p >= 12) || order.is_some_and(|o| o >= 12));
        assert!(matches!(g_polynomial(&s, 4), Err(SceneError::EvenM(4))));
    }

    #[test]
    fn g_from_tower_coordinates() {
        // G = T^{2d} S_m(A) (X_m(A) - B) computed over ℚ(T)(Z)
        let s = scene();
        let g = g_polynomial(&s, 3).unwrap();
        let lift = |p: &Polynomial<Rational>| p.map(FunctionField::from_rational);
        let xa = lift(&g.r_m).eval(&s.a).try_div(&lift(&g.s_m).eval(&s.a)).unwrap();
        let t2d = t_var().pow(2 * g.d as u32);
        let oracle = t2d.times(&lift(&g.s_m).eval(&s.a)).times(&xa.minus(&s.b));
        for (i, c) in g.g.coeffs().iter().enumerate() {
            let expected = oracle.num().coeff(i).cloned().unwrap_or_else(RationalFunction::zero);
            let got: RationalFunction<Rational> = c
                .terms()
                .map(|(e, k)| {
                    let t = RationalFunction::<Rational>::variable();
                    t.pow(e as u32).times(&RationalFunction::constant(k.clone()))
                })
                .fold(RationalFunction::zero(), |acc, t| acc.plus(&t));
            assert_eq!(got, expected, "coefficient of Z^{i}");
        }
        assert!(oracle.den().degree() == Some(0));
    }
}
