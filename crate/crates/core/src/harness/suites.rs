use std::time::Instant;

use super::instances::{
    random_combination, random_lift_instance, random_ratio, random_rational_form, random_split_form, rng_for,
    test_curves, twisted_model,
};
use super::{HarnessError, RunReport};
use crate::curves::{asymptotics_check, cusp_reduction_check, rational_points, two_torsion, CurvePoint, WeierstrassCurve};
use crate::fields::{ConstField, Field, Rational, TruncatedLaurent};
use crate::forms::{hensel_isotropy_lift, isotropic_over_q, residue_split, witness_search_with, DiagonalForm};
use crate::par::{self, Execution};
use crate::scene::{build_scene, g_polynomial, hensel_gamma, residual_order, w_ledger, DEFAULT_PAIRS};
use crate::valuations::{monomial_value, MonomialValuation, TAdic};
use crate::zxz::{default_box, verify_encoding};

pub const SUBCOMMANDS: [&str; 10] = [
    "xy-asymptotics",
    "cusp-check",
    "zxz-verify",
    "qf-isotropy",
    "qf-residue-check",
    "qf-hensel-lift",
    "valuation-axioms",
    "divform-g",
    "divform-ledger",
    "all",
];

/// Parameters shared by the suites. `None` selects the suite's default.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub exec: Execution,
    pub seed: u64,
    pub curve: WeierstrassCurve<Rational>,
    pub nmax: i64,
    /// Also check negative multiples in the twist suites.
    pub signed: bool,
    pub range: i64,
    pub search_box: Option<i64>,
    pub count: Option<usize>,
    pub height_bound: Option<u64>,
    pub max_height: u64,
    pub lambda: Rational,
    pub ms: Option<Vec<i64>>,
    pub precision_t: i64,
    pub precision_z: i64,
    pub target: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            exec: Execution::default(),
            seed: 1,
            curve: WeierstrassCurve::new(Rational::zero(), Rational::one(), Rational::one()).expect("nonsingular"),
            nmax: 6,
            signed: false,
            range: 12,
            search_box: None,
            count: None,
            height_bound: None,
            max_height: 10_000,
            lambda: Rational::one(),
            ms: None,
            precision_t: 12,
            precision_z: 8,
            target: 10,
        }
    }
}

impl SuiteConfig {
    fn multiples(&self) -> Vec<i64> {
        let pos = 1..=self.nmax;
        if self.signed {
            pos.clone().chain(pos.map(|n| -n)).collect()
        } else {
            pos.collect()
        }
    }

    fn curve_param(&self) -> String {
        format!("{},{},{}", self.curve.a2, self.curve.a4, self.curve.a6)
    }

    fn odd_ms(&self, default: &[i64]) -> Result<Vec<i64>, HarnessError> {
        let ms = self.ms.clone().unwrap_or_else(|| default.to_vec());
        if let Some(m) = ms.iter().find(|m| m.rem_euclid(2) == 0) {
            return Err(HarnessError::invalid("m", format!("{m} is not odd")));
        }
        Ok(ms)
    }
}

pub fn run(subcommand: &str, cfg: &SuiteConfig) -> Result<RunReport, HarnessError> {
    match subcommand {
        "xy-asymptotics" => Ok(xy_asymptotics(cfg)),
        "cusp-check" => Ok(cusp_check(cfg)),
        "zxz-verify" => zxz_verify(cfg),
        "qf-isotropy" => Ok(qf_isotropy(cfg)),
        "qf-residue-check" => Ok(qf_residue_check(cfg)),
        "qf-hensel-lift" => Ok(qf_hensel_lift(cfg)),
        "valuation-axioms" => Ok(valuation_axioms(cfg)),
        "divform-g" => divform_g(cfg),
        "divform-ledger" => divform_ledger(cfg),
        "all" => all(cfg),
        other => Err(HarnessError::UnknownSubcommand(other.to_string())),
    }
}

pub fn all(cfg: &SuiteConfig) -> Result<RunReport, HarnessError> {
    let start = Instant::now();
    let mut reports = Vec::new();
    for name in SUBCOMMANDS.iter().filter(|&&s| s != "all") {
        reports.push(run(name, cfg)?);
    }
    reports.push(group_law(cfg));
    let mut out = RunReport::merge("all", reports);
    out.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(out)
}

fn order_str(o: Option<i64>) -> String {
    o.map_or_else(|| "∞".to_string(), |o| o.to_string())
}

pub fn xy_asymptotics(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let mut r = RunReport::new("xy-asymptotics")
        .param("curve", cfg.curve_param())
        .param("nmax", cfg.nmax)
        .param("signed", cfg.signed);
    let ns = cfg.multiples();
    let results = par::map_collect(cfg.exec, ns.clone(), |n| asymptotics_check(&cfg.curve, n));
    for (n, res) in ns.into_iter().zip(results) {
        let dx = format!("n = {n}: order_at(X_n - Z/n², ∞)");
        let dy = format!("n = {n}: order_at(Y_n - 1/n³, ∞)");
        match res {
            Ok(a) => {
                r.check(dx, "≥ 0", order_str(a.x_order), a.x_order.is_none_or(|o| o >= 0));
                r.check(dy, "≥ 1", order_str(a.y_order), a.y_order.is_none_or(|o| o >= 1));
            }
            Err(e) => {
                r.check(dx, "≥ 0", format!("error: {e}"), false);
                r.check(dy, "≥ 1", format!("error: {e}"), false);
            }
        }
    }
    r.timed(start)
}

pub fn cusp_check(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let mut r = RunReport::new("cusp-check")
        .param("curve", cfg.curve_param())
        .param("nmax", cfg.nmax)
        .param("signed", cfg.signed);
    let ns = cfg.multiples();
    let results = par::map_collect(cfg.exec, ns.clone(), |n| cusp_reduction_check(&cfg.curve, n));
    for (n, res) in ns.into_iter().zip(results) {
        let d = format!("n = {n}: X′_n/Y′_n mod Z⁻¹");
        match res {
            Ok(c) => r.check(d, n, &c.residue, c.pass),
            Err(e) => r.check(d, n, format!("error: {e}"), false),
        }
    }
    r.timed(start)
}

pub fn zxz_verify(cfg: &SuiteConfig) -> Result<RunReport, HarnessError> {
    let start = Instant::now();
    if cfg.range < 0 {
        return Err(HarnessError::invalid("range", "must be nonnegative"));
    }
    let bx = cfg.search_box.unwrap_or_else(|| default_box(cfg.range));
    if bx < 0 {
        return Err(HarnessError::invalid("box", "must be nonnegative"));
    }
    let rep = verify_encoding(cfg.exec, cfg.range, bx);
    let mut r = RunReport::new("zxz-verify").param("range", cfg.range).param("box", bx);
    r.check_eq("triples examined", (2 * cfg.range as usize + 1).pow(3), rep.triples);
    r.check_eq("mul_holds disagrees with c = ab", 0, rep.decision_mismatches);
    r.check_eq("products without a witness in the box", 0, rep.missed_witnesses);
    r.check_eq("non-products with a witness in the box", 0, rep.spurious_witnesses);
    r.check_eq("every witness is (b, b)", true, rep.witnesses_are_diagonal);
    r.check_eq("condition templates have odd first component", true, rep.templates_odd);
    if let Some((a, b, c)) = rep.first_counterexample {
        r.check("first counterexample", "none", format!("({a}, {b}, {c})"), false);
    }
    Ok(r.timed(start))
}

const ESCALATION: [u64; 6] = [8, 32, 128, 512, 2048, 8192];

/// Heights tried in turn when confirming an isotropic verdict.
pub fn escalation_heights(max: u64) -> Vec<u64> {
    let mut hs: Vec<u64> = ESCALATION.iter().copied().filter(|&h| h < max).collect();
    hs.push(max);
    hs
}

pub fn qf_isotropy(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let count = cfg.count.unwrap_or(200);
    let height = cfg.height_bound.unwrap_or(30);
    let mut r = RunReport::new("qf-isotropy")
        .with_seed(cfg.seed)
        .param("count", count)
        .param("height-bound", height)
        .param("max-height", cfg.max_height);
    let heights = escalation_heights(cfg.max_height);
    let rows = par::map_range(cfg.exec, count, |i| {
        let form = random_rational_form(&mut rng_for(cfg.seed, i), 2..=5, 20);
        let verdict = match isotropic_over_q(&form) {
            Ok(v) => v,
            Err(e) => return (form.to_string(), Err(e.to_string())),
        };
        if !verdict.witness_is_sound(&form) {
            return (form.to_string(), Err("attached witness does not zero the form".into()));
        }
        if verdict.isotropic {
            let found = heights
                .iter()
                .find(|&&h| witness_search_with(Execution::Sequential, &form, h).isotropic);
            (form.to_string(), Ok((true, found.copied())))
        } else {
            let contradicted = witness_search_with(Execution::Sequential, &form, height).isotropic;
            (form.to_string(), Ok((false, contradicted.then_some(height))))
        }
    });
    let mut iso = 0;
    let mut confirmed = 0;
    let mut contradicted = Vec::new();
    let mut unconfirmed = Vec::new();
    let mut errors = Vec::new();
    let mut max_needed = 0;
    for (form, row) in rows {
        match row {
            Ok((true, Some(h))) => {
                iso += 1;
                confirmed += 1;
                max_needed = max_needed.max(h);
            }
            Ok((true, None)) => {
                iso += 1;
                unconfirmed.push(form);
            }
            Ok((false, Some(_))) => contradicted.push(form),
            Ok((false, None)) => {}
            Err(e) => errors.push(format!("{form}: {e}")),
        }
    }
    r.check_eq("oracle errors", "none".to_string(), errors.first().cloned().unwrap_or("none".into()));
    r.check(
        format!("anisotropic verdicts contradicted by a witness of height ≤ {height}"),
        0,
        format!("{} of {}", contradicted.len(), count - iso),
        contradicted.is_empty(),
    );
    r.check(
        format!("isotropic verdicts confirmed by a witness of height ≤ {}", cfg.max_height),
        format!("{iso} of {iso}"),
        format!("{confirmed} of {iso}{}", unconfirmed.first().map(|f| format!(", e.g. {f} unconfirmed")).unwrap_or_default()),
        unconfirmed.is_empty(),
    );
    r.check("largest escalation height needed", format!("≤ {}", cfg.max_height), max_needed, max_needed <= cfg.max_height);
    r.timed(start)
}

pub fn qf_residue_check(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let count = cfg.count.unwrap_or(200);
    let height = cfg.height_bound.unwrap_or(30);
    let mut r = RunReport::new("qf-residue-check")
        .with_seed(cfg.seed)
        .param("count", count)
        .param("height-bound", height);
    // (witnessed, violation, residue forms as expected, error)
    let rows = par::map_range(cfg.exec, count, |i| {
        let inst = random_split_form(&mut rng_for(cfg.seed, i), 2..=3, 9);
        let split = residue_split(&inst.form, &TruncatedLaurent::t(), &TAdic);
        let Ok(split) = split else {
            return (false, false, false, Some(format!("{}: {:?}", inst.form, split.err())));
        };
        let expected = split.even.as_ref() == Some(&inst.q1) && split.odd.as_ref() == Some(&inst.q2);
        let w = witness_search_with(Execution::Sequential, &inst.form, height);
        if !w.isotropic {
            return (false, false, expected, None);
        }
        let iso = |f: &Option<DiagonalForm<Rational>>| {
            f.as_ref().is_some_and(|f| isotropic_over_q(f).is_ok_and(|v| v.isotropic))
        };
        let violation = !w.witness_is_sound(&inst.form) || !(iso(&split.even) || iso(&split.odd));
        (true, violation, expected, None)
    });
    let witnessed = rows.iter().filter(|x| x.0).count();
    let violations = rows.iter().filter(|x| x.1).count();
    let as_expected = rows.iter().filter(|x| x.2).count();
    let error = rows.iter().find_map(|x| x.3.clone()).unwrap_or_else(|| "none".into());
    r.check_eq("residue split errors", "none".to_string(), error);
    r.check_eq("residue forms equal (Q₁, Q₂)", count, as_expected);
    r.check(
        "witnessed instances with both residue forms anisotropic",
        0,
        format!("{violations} of {witnessed} witnessed"),
        violations == 0,
    );
    r.timed(start)
}

pub fn qf_hensel_lift(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let count = cfg.count.unwrap_or(100);
    let target = cfg.target;
    let mut r = RunReport::new("qf-hensel-lift")
        .with_seed(cfg.seed)
        .param("count", count)
        .param("target", target);
    let rows = par::map_range(cfg.exec, count, |i| {
        let inst = random_lift_instance(&mut rng_for(cfg.seed, i));
        let lifted = hensel_isotropy_lift(&inst.witness, &inst.form, target).map_err(|e| format!("{}: {e}", inst.form))?;
        let w = lifted.witness.ok_or_else(|| "no vector".to_string())?;
        if w.iter().all(TruncatedLaurent::is_zero) {
            return Err(format!("{}: zero vector", inst.form));
        }
        let v = inst.form.eval(&w).map_err(|e| e.to_string())?;
        // residual T-order: leading exponent, or the precision when zero
        Ok(v.leading_exponent().or(v.precision()).unwrap_or(i64::MAX))
    });
    let ok = rows.iter().filter(|x| x.as_ref().is_ok_and(|&o| o >= target)).count();
    let min_order = rows.iter().filter_map(|x| x.as_ref().ok()).min().copied();
    let error = rows.iter().find_map(|x| x.as_ref().err().cloned()).unwrap_or_else(|| "none".into());
    r.check_eq("lift errors", "none".to_string(), error);
    r.check(
        format!("forms zeroed modulo T^{target}"),
        format!("{count} of {count}"),
        format!("{ok} of {count}"),
        ok == count,
    );
    r.check(
        "minimum residual T-order",
        format!("≥ {target}"),
        min_order.map_or("n/a".into(), |o| if o == i64::MAX { "∞".into() } else { o.to_string() }),
        min_order.is_some_and(|o| o >= target),
    );
    r.timed(start)
}

pub fn valuation_axioms(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let count = cfg.count.unwrap_or(500);
    let mut r = RunReport::new("valuation-axioms").with_seed(cfg.seed).param("count", count);
    for nvars in [2usize, 3] {
        let names: Vec<String> = (1..=nvars).map(|i| format!("X{i}")).collect();
        let v = MonomialValuation::new(names);
        let seed = cfg.seed.wrapping_add(nvars as u64 * 1_000_003);
        let rows = par::map_range(cfg.exec, count, |i| {
            let mut rng = rng_for(seed, i);
            let x = random_ratio(&mut rng, nvars);
            let y = random_ratio(&mut rng, nvars);
            let (vx, vy) = (monomial_value(&v, &x), monomial_value(&v, &y));
            let vxy = monomial_value(&v, &x.mul(&y));
            let vs = monomial_value(&v, &x.add(&y));
            let lo = vx.clone().min(vy.clone());
            let mult = vxy == vx.clone() + vy.clone();
            let ultra = vs >= lo;
            let equal = vx == vy || vs == lo;
            (mult, ultra, equal)
        });
        let bad = |k: usize| rows.iter().filter(|t| ![t.0, t.1, t.2][k]).count();
        r.check_eq(format!("{nvars} variables: v(xy) ≠ v(x) + v(y)"), 0, bad(0));
        r.check_eq(format!("{nvars} variables: v(x + y) < min(v(x), v(y))"), 0, bad(1));
        r.check_eq(format!("{nvars} variables: v(x) ≠ v(y) but v(x + y) ≠ min"), 0, bad(2));
    }
    r.timed(start)
}

fn small_points(curve: &WeierstrassCurve<Rational>) -> Vec<CurvePoint<Rational>> {
    let mut pts = rational_points(curve, 6);
    pts.dedup_by(|a, b| a.coords().map(|c| c.0) == b.coords().map(|c| c.0));
    pts.truncate(3);
    pts
}

fn repeated_addition<F: Field>(curve: &WeierstrassCurve<F>, n: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
    let step = if n < 0 { p.negated() } else { p.clone() };
    let mut acc = CurvePoint::Infinity;
    for _ in 0..n.unsigned_abs() {
        acc = curve.add(&acc, &step).expect("generic point");
    }
    acc
}

/// Associativity, scalar multiplication and 2-torsion over ℚ and ℚ(Z).
pub fn group_law(cfg: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let count = cfg.count.unwrap_or(30);
    let mut r = RunReport::new("group-law").with_seed(cfg.seed).param("count", count);
    let curves = test_curves();

    let over_q = par::map_range(cfg.exec, count, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let e = &curves[i % curves.len()];
        let gens = small_points(e);
        let [p, q, s] = [0; 3].map(|_| random_combination(&mut rng, e, &gens));
        let lhs = e.add(&e.add(&p, &q).ok()?, &s).ok()?;
        let rhs = e.add(&p, &e.add(&q, &s).ok()?).ok()?;
        Some(lhs == rhs && e.contains(&lhs))
    });
    let ok = over_q.iter().filter(|x| **x == Some(true)).count();
    r.check("associativity over ℚ", format!("{count} of {count}"), format!("{ok} of {count}"), ok == count);

    let twisted: Vec<_> = [0usize, 4].iter().map(|&k| twisted_model(&curves[k])).collect();
    let over_qz = par::map_range(cfg.exec, count, |i| {
        let mut rng = rng_for(cfg.seed.wrapping_add(7_919), i);
        let (e, gens) = &twisted[i % twisted.len()];
        let [p, q, s] = [0; 3].map(|_| random_combination(&mut rng, e, gens));
        let lhs = e.add(&e.add(&p, &q).ok()?, &s).ok()?;
        let rhs = e.add(&p, &e.add(&q, &s).ok()?).ok()?;
        Some(lhs == rhs && e.contains(&lhs))
    });
    let ok = over_qz.iter().filter(|x| **x == Some(true)).count();
    r.check("associativity over ℚ(Z)", format!("{count} of {count}"), format!("{ok} of {count}"), ok == count);

    let mut mismatches = 0;
    let mut total = 0;
    for e in &curves {
        for p in small_points(e).iter().take(2) {
            for n in -8..=8 {
                total += 1;
                let fast = crate::curves::scalar_mul(e, n, p).ok();
                mismatches += (fast != Some(repeated_addition(e, n, p))) as usize;
            }
        }
    }
    let (e, gens) = &twisted[0];
    for n in 0..=8 {
        total += 1;
        let fast = crate::curves::scalar_mul(e, n, &gens[0]).ok();
        mismatches += (fast != Some(repeated_addition(e, n, &gens[0]))) as usize;
    }
    r.check(
        "scalar_mul equals repeated addition for |n| ≤ 8",
        0,
        format!("{mismatches} mismatches of {total}"),
        mismatches == 0,
    );

    let mut torsion = 0;
    let mut doubled = 0;
    for e in &curves {
        for t in two_torsion(e) {
            torsion += 1;
            doubled += e.add(&t, &t).is_ok_and(|d| d.is_infinity()) as usize;
        }
    }
    r.check(
        "2-torsion points double to infinity",
        format!("{torsion} of {torsion}"),
        format!("{doubled} of {torsion}"),
        torsion > 0 && doubled == torsion,
    );
    r.timed(start)
}

fn validated_scene(cfg: &SuiteConfig) -> Result<crate::scene::Scene, HarnessError> {
    build_scene(&cfg.curve, &cfg.lambda, cfg.precision_t, cfg.precision_z)
        .map_err(|e| HarnessError::invalid("scene", e))
}

pub fn divform_g(cfg: &SuiteConfig) -> Result<RunReport, HarnessError> {
    let start = Instant::now();
    let ms = cfg.odd_ms(&[1, 3, 5])?;
    let scene = validated_scene(cfg)?;
    let mut r = RunReport::new("divform-g")
        .param("curve", cfg.curve_param())
        .param("lambda", &cfg.lambda)
        .param("m", format!("{ms:?}"))
        .param("precision-t", cfg.precision_t);
    let results = par::map_collect(cfg.exec, ms.clone(), |m| {
        let g = g_polynomial(&scene, m)?;
        let gamma = hensel_gamma(&scene, m)?;
        Ok::<_, crate::scene::SceneError>((g, gamma))
    });
    for (m, res) in ms.into_iter().zip(results) {
        let (g, gamma) = match res {
            Ok(x) => x,
            Err(e) => {
                r.check(format!("m = {m}: G and γ"), "computed", format!("error: {e}"), false);
                continue;
            }
        };
        r.check_eq(
            format!("m = {m}: G mod T (d = {})", g.d),
            g.expected_reduction().display_with("Z"),
            g.reduction().display_with("Z"),
        );
        r.check_eq(
            format!("m = {m}: γ mod T"),
            (m * m).to_string(),
            gamma.coeff(0).map_or("unknown".into(), |c| c.to_string()),
        );
        let (order, prec) = residual_order(&g, &gamma);
        let certified = order.or(prec);
        r.check(
            format!("m = {m}: T-order of G(γ)"),
            format!("≥ {}", cfg.precision_t),
            order_str(certified),
            certified.is_none_or(|o| o >= cfg.precision_t),
        );
        if m == 1 {
            r.check(
                "m = 1: γ",
                "1 (exact)",
                format!("{gamma}{}", if gamma.is_exact() { " (exact)" } else { "" }),
                gamma == TruncatedLaurent::one() && gamma.is_exact(),
            );
        }
    }
    Ok(r.timed(start))
}

pub fn divform_ledger(cfg: &SuiteConfig) -> Result<RunReport, HarnessError> {
    let start = Instant::now();
    let ms = cfg.odd_ms(&[1, 3])?;
    let scene = validated_scene(cfg)?;
    let mut r = RunReport::new("divform-ledger")
        .param("curve", cfg.curve_param())
        .param("lambda", &cfg.lambda)
        .param("m", format!("{ms:?}"))
        .param("precision-t", cfg.precision_t)
        .param("precision-z", cfg.precision_z)
        .param("pairs", format!("{DEFAULT_PAIRS:?}"));
    let results = par::map_collect(cfg.exec, ms.clone(), |m| w_ledger(&scene, m, &DEFAULT_PAIRS));
    for (m, res) in ms.into_iter().zip(results) {
        let l = match res {
            Ok(l) => l,
            Err(e) => {
                r.check(format!("m = {m}: ledger"), "computed", format!("error: {e}"), false);
                continue;
            }
        };
        r.check(
            format!("m = {m}: sign of √f(B)"),
            "exactly one sign gives order 0",
            format!(
                "{:+} (other sign: order {}); precisions T^{}, (Z-γ)^{}",
                l.branch.sqrt_fb_sign,
                order_str(l.branch.rejected_order),
                l.t_precision,
                l.z_precision
            ),
            l.branch.rejected_order != Some(0),
        );
        r.check_eq(format!("m = {m}: w(X_m(A) - B)"), 1, l.x_difference);
        r.check_eq(format!("m = {m}: w(Y_m(A)√f(A) - √f(B))"), 0, l.y_difference);
        r.check_eq(format!("m = {m}: w(x(P₃))"), -2, l.x_p3);
        r.check_eq(format!("m = {m}: w(y(P₃))"), -3, l.y_p3);
        for c in &l.combos {
            r.check_eq(format!("m = {m}: w(y({}P₁ + {}P₃))", c.s, c.r), 0, c.order);
        }
        r.check_eq(format!("m = {m}: w(y(P₃)) is odd"), true, l.y_p3_odd);
        r.check_eq(format!("m = {m}: w(x(P₃)) is even"), true, l.x_p3_even);
    }
    Ok(r.timed(start))
}
