//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use dioph_core::curves::{twist_multiples, WeierstrassCurve};
use dioph_core::fields::{ConstField, Field, Rational, RationalFunction, TruncatedLaurent};
use dioph_core::forms::{hensel_isotropy_lift, isotropic_over_q, residue_split, witness_search_with};
use dioph_core::harness::instances::{random_lift_instance, random_ratio, random_rational_form, random_split_form, rng_for};
use dioph_core::harness::{escalation_heights, group_law, SuiteConfig};
use dioph_core::par::{map_range, Execution};
use dioph_core::scene::{build_scene, g_polynomial, hensel_gamma, w_ledger, DEFAULT_PAIRS};
use dioph_core::valuations::{monomial_value, LexValue, MonomialValuation, MultivariatePoly, MultivariateRatio, TAdic};
use dioph_core::zxz::{mul_holds, verify_encoding, ZxZ};

type RF = RationalFunction<Rational>;

const SEED: u64 = 20_240_611;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn base_curve() -> WeierstrassCurve<Rational> {
    WeierstrassCurve::new(q(0), q(1), q(1)).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("twist multiples at infinity, 1 ≤ |n| ≤ 6", 10, c1_asymptotics),
        ("cusp residue of X′ₙ/Y′ₙ equals n, 1 ≤ |n| ≤ 6", 10, c2_cusp),
        ("ℤ×ℤ multiplication encoding, |a|,|b|,|c| ≤ 12, box 41", 30, c3_zxz),
        ("residue forms of Q₁ ⊥ ⟨T⟩Q₂, 200 instances", 60, c4_residue),
        ("isotropy oracle consistency over ℚ, 200 forms", 120, c5_oracle),
        ("henselian lift to T¹⁰, 100 forms", 30, c6_hensel),
        ("G mod T and the Hensel root γ, m ∈ {1,3,5}", 60, c7_g),
        ("valuation ledger at Z = γ, m ∈ {1,3}", 300, c8_ledger),
        ("monomial lex valuation axioms, 500 pairs", 10, c9_valuation),
        ("elliptic group law over ℚ and ℚ(Z)", 30, c10_group),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = res.pass && in_time;
        failures += !pass as usize;
        println!(
            "[{}] criterion {:>2}: {name}: {} ({:.2} s, limit {limit} s{})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            res.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}

/// Order at `Z = ∞` read off the degrees.
fn order_at_infinity(f: &RF) -> Option<i64> {
    let n = f.num().degree()? as i64;
    Some(f.den().degree().unwrap() as i64 - n)
}

/// `n·(Z, 1)` on `f(Z)Y² = f(X)` by chord and tangent additions written
/// directly in twist coordinates.
fn twist_oracle(e: &WeierstrassCurve<Rational>, n: i64) -> (RF, RF) {
    let z = RF::variable();
    let c = |r: &Rational| RF::constant(r.clone());
    let fz = z.pow(3).plus(&c(&e.a2).times(&z.square())).plus(&c(&e.a4).times(&z)).plus(&c(&e.a6));
    let (x1, y1) = (z.clone(), RF::one());
    let tangent = c(&q(3))
        .times(&x1.square())
        .plus(&c(&q(2)).times(&c(&e.a2)).times(&x1))
        .plus(&c(&e.a4))
        .try_div(&c(&q(2)).times(&fz).times(&y1))
        .unwrap();
    let (mut x, mut y) = (x1.clone(), y1.clone());
    if n.abs() >= 2 {
        x = tangent.square().times(&fz).minus(&c(&e.a2)).minus(&x1).minus(&x1);
        y = tangent.times(&x1.minus(&x)).minus(&y1);
    }
    for _ in 2..n.abs() {
        let l = y.minus(&y1).try_div(&x.minus(&x1)).unwrap();
        let nx = l.square().times(&fz).minus(&c(&e.a2)).minus(&x).minus(&x1);
        y = l.times(&x1.minus(&nx)).minus(&y1);
        x = nx;
    }
    if n < 0 {
        y = y.negated();
    }
    (x, y)
}

fn signed_range() -> Vec<i64> {
    (1..=6).chain(-6..=-1).collect()
}

fn c1_asymptotics() -> Outcome {
    let e = base_curve();
    let z = RF::variable();
    let mut bad = Vec::new();
    for n in signed_range() {
        let (x, y) = twist_multiples(&e, n).unwrap();
        if (x.clone(), y.clone()) != twist_oracle(&e, n) {
            bad.push(format!("n = {n}: multiple differs from chord-tangent oracle"));
        }
        let dx = x.minus(&z.times(&RF::constant(q(n * n).recip())));
        let dy = y.minus(&RF::constant(q(n * n * n).recip()));
        if order_at_infinity(&dx).is_some_and(|o| o < 0) {
            bad.push(format!("n = {n}: X order {:?}", order_at_infinity(&dx)));
        }
        if order_at_infinity(&dy).is_some_and(|o| o < 1) {
            bad.push(format!("n = {n}: Y order {:?}", order_at_infinity(&dy)));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "24 orders as claimed".to_string() } else { bad.join("; ") })
}

fn value_at_infinity(f: &RF) -> Option<Rational> {
    let (dn, dd) = (f.num().degree()?, f.den().degree()?);
    match dn.cmp(&dd) {
        std::cmp::Ordering::Less => Some(Rational::zero()),
        std::cmp::Ordering::Equal => Some(f.num().leading()? / f.den().leading()?),
        std::cmp::Ordering::Greater => None,
    }
}

fn c2_cusp() -> Outcome {
    let e = base_curve();
    let z = RF::variable();
    let fz = e.map(|c| RF::constant(c.clone())).f(&z);
    let mut bad = Vec::new();
    for n in signed_range() {
        let (x, y) = twist_oracle(&e, n);
        let xp = z.square().times(&x).try_div(&fz).unwrap();
        let yp = z.pow(3).times(&y).try_div(&fz).unwrap();
        let r = value_at_infinity(&xp.try_div(&yp).unwrap());
        let lib = dioph_core::curves::cusp_reduction_check(&e, n).unwrap();
        if r != Some(q(n)) || !lib.pass || lib.residue != n.to_string() {
            bad.push(format!("n = {n}: oracle {r:?}, library {}", lib.residue));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "12 residues equal n".to_string() } else { bad.join("; ") })
}

/// `d₁ ∣ d₂` by cross-multiplication.
fn divides_oracle(d1: (i64, i64), d2: (i64, i64)) -> bool {
    if d1 == (0, 0) {
        return d2 == (0, 0);
    }
    if d1.0 * d2.1 != d1.1 * d2.0 {
        return false;
    }
    let (num, den) = if d1.0 != 0 { (d2.0, d1.0) } else { (d2.1, d1.1) };
    num % den == 0
}

fn c3_zxz() -> Outcome {
    let n = 12;
    let bx = 41;
    let lib = verify_encoding(Execution::Parallel, n, bx);
    let side = (2 * n + 1) as usize;
    let rows = map_range(Execution::Parallel, side * side * side, |i| {
        let a = (i / (side * side)) as i64 - n;
        let b = ((i / side) % side) as i64 - n;
        let c = (i % side) as i64 - n;
        let mut found = false;
        for x in -bx..=bx {
            // (1,1) ∣ (x₁, x₂) forces x₁ = x₂
            let ok = divides_oracle((-1, 1), (x - 2 * b, x)) && divides_oracle((2 * a + 1, 1), (x + 2 * c, x));
            found |= ok;
        }
        let decided = mul_holds(a, b, c);
        let truth = a * b == c;
        (found == truth && decided.holds() == truth && (!truth || decided.witness == Some(ZxZ::new(b, b)))) as usize
    });
    let agree: usize = rows.iter().sum();
    let total = side * side * side;
    let pass = agree == total && lib.pass();
    outcome(
        pass,
        format!(
            "{agree}/{total} triples agree with the oracle; library discrepancies {}",
            lib.discrepancies()
        ),
    )
}

fn c4_residue() -> Outcome {
    let rows = map_range(Execution::Parallel, 200, |i| {
        let inst = random_split_form(&mut rng_for(SEED, i), 2..=3, 9);
        let split = residue_split(&inst.form, &TruncatedLaurent::t(), &TAdic).ok()?;
        if split.even.as_ref() != Some(&inst.q1) || split.odd.as_ref() != Some(&inst.q2) {
            return None;
        }
        let w = witness_search_with(Execution::Sequential, &inst.form, 30);
        if !w.isotropic {
            return Some((false, false));
        }
        let x = w.witness.as_ref()?;
        if !inst.form.eval(x).ok()?.is_zero() {
            return None;
        }
        let iso = isotropic_over_q(&inst.q1).ok()?.isotropic || isotropic_over_q(&inst.q2).ok()?.isotropic;
        Some((true, !iso))
    });
    let errors = rows.iter().filter(|r| r.is_none()).count();
    let witnessed = rows.iter().filter(|r| r.is_some_and(|r| r.0)).count();
    let violations = rows.iter().filter(|r| r.is_some_and(|r| r.1)).count();
    outcome(
        errors == 0 && violations == 0 && witnessed > 0,
        format!("{witnessed} witnessed, {violations} violations, {errors} errors"),
    )
}

fn c5_oracle() -> Outcome {
    let heights = escalation_heights(10_000);
    let rows = map_range(Execution::Parallel, 200, |i| {
        let form = random_rational_form(&mut rng_for(SEED, i), 2..=5, 20);
        let v = isotropic_over_q(&form).ok()?;
        if v.isotropic {
            let h = heights
                .iter()
                .find(|&&h| {
                    witness_search_with(Execution::Sequential, &form, h)
                        .witness
                        .is_some_and(|w| form.eval(&w).is_ok_and(|x| x.is_zero()))
                })
                .copied();
            Some((true, h.is_some()))
        } else {
            Some((false, !witness_search_with(Execution::Sequential, &form, 30).isotropic))
        }
    });
    let errors = rows.iter().filter(|r| r.is_none()).count();
    let iso = rows.iter().filter(|r| r.is_some_and(|r| r.0)).count();
    let bad = rows.iter().filter(|r| r.is_some_and(|r| !r.1)).count();
    outcome(
        errors == 0 && bad == 0,
        format!("{iso} isotropic, {} anisotropic, {bad} inconsistent, {errors} errors", 200 - iso),
    )
}

fn c6_hensel() -> Outcome {
    let rows = map_range(Execution::Parallel, 100, |i| {
        let inst = random_lift_instance(&mut rng_for(SEED, i));
        let w = hensel_isotropy_lift(&inst.witness, &inst.form, 10).ok()?.witness?;
        // residual Σ aᵢxᵢ² accumulated term by term
        let mut acc = TruncatedLaurent::zero();
        for (a, x) in inst.form.entries().iter().zip(&w) {
            acc = acc.plus(&a.times(&x.square()));
        }
        let nonzero = w.iter().any(|x| !x.is_zero());
        Some(nonzero && acc.leading_exponent().or(acc.precision()).is_none_or(|o| o >= 10))
    });
    let ok = rows.iter().filter(|r| **r == Some(true)).count();
    outcome(ok == 100, format!("{ok}/100 residuals of T-order ≥ 10"))
}

fn c7_g() -> Outcome {
    let scene = build_scene(&base_curve(), &q(1), 12, 8).unwrap();
    let mut bad = Vec::new();
    for m in [1i64, 3, 5] {
        let g = g_polynomial(&scene, m).unwrap();
        let gamma = hensel_gamma(&scene, m).unwrap();
        // x(mP) has a numerator of degree m²
        if g.d as i64 != m * m {
            bad.push(format!("m = {m}: d = {}", g.d));
        }
        let mut expected = vec![Rational::zero(); g.d + 1];
        expected[g.d] = q(1);
        expected[g.d - 1] = q(-m * m);
        let reduced: Vec<Rational> = g.g.coeffs().iter().map(|c| c.coeff(0).unwrap()).collect();
        if reduced != expected || g.g.coeffs().iter().any(|c| c.leading_exponent().is_some_and(|e| e < 0)) {
            bad.push(format!("m = {m}: G mod T mismatch"));
        }
        if gamma.coeff(0) != Some(q(m * m)) {
            bad.push(format!("m = {m}: γ mod T = {:?}", gamma.coeff(0)));
        }
        let mut val = TruncatedLaurent::zero();
        for c in g.g.coeffs().iter().rev() {
            val = val.times(&gamma).plus(c);
        }
        if !val.leading_exponent().or(val.precision()).is_none_or(|o| o >= 12) {
            bad.push(format!("m = {m}: G(γ) = {val}"));
        }
        if m == 1 && !(gamma == TruncatedLaurent::one() && gamma.is_exact()) {
            bad.push(format!("m = 1: γ = {gamma}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "d = 1, 9, 25; reductions, roots and residuals as claimed".into() } else { bad.join("; ") })
}

fn c8_ledger() -> Outcome {
    let scene = build_scene(&base_curve(), &q(1), 12, 8).unwrap();
    let mut bad = Vec::new();
    let mut branches = Vec::new();
    for m in [1, 3] {
        match w_ledger(&scene, m, &DEFAULT_PAIRS) {
            Ok(l) => {
                if (l.x_difference, l.y_difference, l.x_p3, l.y_p3) != (1, 0, -2, -3) {
                    bad.push(format!("m = {m}: orders {:?}", (l.x_difference, l.y_difference, l.x_p3, l.y_p3)));
                }
                let pairs: Vec<(i64, i64)> = l.combos.iter().map(|c| (c.s, c.r)).collect();
                if pairs != DEFAULT_PAIRS || l.combos.iter().any(|c| c.order != 0) {
                    bad.push(format!("m = {m}: combos {:?}", l.combos));
                }
                if l.y_p3.rem_euclid(2) != 1 || l.x_p3.rem_euclid(2) != 0 || !l.y_p3_odd || !l.x_p3_even {
                    bad.push(format!("m = {m}: parity"));
                }
                branches.push(format!("m = {m}: √f(B) sign {:+} at T^{}, (Z-γ)^{}", l.branch.sqrt_fb_sign, l.t_precision, l.z_precision));
            }
            Err(e) => bad.push(format!("m = {m}: {e}")),
        }
    }
    let pass = bad.is_empty();
    outcome(pass, if pass { branches.join("; ") } else { bad.join("; ") })
}

/// Lexicographically smallest exponent vector among the terms.
fn lex_min(p: &MultivariatePoly) -> Option<Vec<i64>> {
    p.terms().map(|(e, _)| e.iter().map(|&x| x as i64).collect::<Vec<_>>()).min()
}

fn value_oracle(x: &MultivariateRatio) -> Option<Vec<i64>> {
    let n = lex_min(&x.num)?;
    let d = lex_min(&x.den).unwrap();
    Some(n.iter().zip(&d).map(|(a, b)| a - b).collect())
}

fn as_vec(v: &LexValue) -> Option<Vec<i64>> {
    v.components().map(<[i64]>::to_vec)
}

fn c9_valuation() -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for nvars in [2usize, 3] {
        let v = MonomialValuation::new((0..nvars).map(|i| format!("X{i}")));
        for i in 0..500 {
            let mut rng = rng_for(SEED + nvars as u64 * 1000, i);
            let x = random_ratio(&mut rng, nvars);
            let y = random_ratio(&mut rng, nvars);
            let (vx, vy) = (monomial_value(&v, &x), monomial_value(&v, &y));
            let vs = monomial_value(&v, &x.add(&y));
            let vp = monomial_value(&v, &x.mul(&y));
            let oracle_ok = as_vec(&vx) == value_oracle(&x) && as_vec(&vy) == value_oracle(&y);
            let mult = vp == vx.clone() + vy.clone();
            let lo = vx.clone().min(vy.clone());
            let ultra = vs >= lo;
            let eq = vx == vy || vs == lo;
            checked += 1;
            bad += !(oracle_ok && mult && ultra && eq) as usize;
        }
    }
    outcome(bad == 0, format!("{checked} pairs over 2 and 3 variables, {bad} violations"))
}

fn c10_group() -> Outcome {
    let cfg = SuiteConfig {
        seed: SEED,
        count: Some(30),
        ..SuiteConfig::default()
    };
    let r = group_law(&cfg);
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.description, c.actual)).collect();
    outcome(
        r.pass(),
        if failed.is_empty() {
            r.checks.iter().map(|c| format!("{} {}", c.description, c.actual)).collect::<Vec<_>>().join("; ")
        } else {
            failed.join("; ")
        },
    )
}
