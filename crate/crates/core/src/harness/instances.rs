//! Seeded random instances. Instance `i` of a batch with seed `s` is drawn
//! from its own generator seeded with `s + i`, so batches can be split
//! across threads without changing the instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::fields::{ConstField, Field, Rational, RationalFunction, TruncatedLaurent};
use crate::forms::{orth_sum, DiagonalForm};
use crate::valuations::{MultivariatePoly, MultivariateRatio};

pub fn rng_for(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

/// Diagonal form over ℚ of dimension in `dims` with nonzero integer entries
/// in `[-bound, bound]`.
pub fn random_rational_form(rng: &mut impl Rng, dims: std::ops::RangeInclusive<usize>, bound: i64) -> DiagonalForm<Rational> {
    let n = rng.gen_range(dims);
    DiagonalForm::new((0..n).map(|_| q(nonzero(rng, bound))).collect()).expect("nonzero entries")
}

/// `Q₁ ⊥ ⟨T⟩⊗Q₂` over ℚ((T)) with integer unit entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitInstance {
    pub q1: DiagonalForm<Rational>,
    pub q2: DiagonalForm<Rational>,
    pub form: DiagonalForm<TruncatedLaurent>,
}

pub fn random_split_form(rng: &mut impl Rng, dims: std::ops::RangeInclusive<usize>, bound: i64) -> SplitInstance {
    let q1 = random_rational_form(rng, dims.clone(), bound);
    let q2 = random_rational_form(rng, dims, bound);
    let l1 = q1.map(TruncatedLaurent::from_rational).expect("nonzero");
    let l2 = q2
        .map(|c| TruncatedLaurent::monomial(c.clone(), 1))
        .expect("nonzero");
    SplitInstance {
        form: orth_sum(&l1, &l2),
        q1,
        q2,
    }
}

/// A form over ℚ((T)) together with a zero of one of its residue forms.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftInstance {
    pub form: DiagonalForm<TruncatedLaurent>,
    pub witness: Vec<Rational>,
    pub parity: i64,
}

fn random_unit(rng: &mut impl Rng, lead: Rational, terms: usize) -> TruncatedLaurent {
    let mut cs = vec![lead];
    cs.extend((0..terms).map(|_| q(rng.gen_range(-5..=5))));
    TruncatedLaurent::exact(0, cs)
}

/// Entries of one value parity carry a residue form with a known zero whose
/// first coordinate is nonzero; the other entries get witness coordinate 0.
pub fn random_lift_instance(rng: &mut impl Rng) -> LiftInstance {
    let parity = rng.gen_range(0..=1i64);
    let k = rng.gen_range(2..=3usize);
    let extra = rng.gen_range(0..=2usize);
    let (residues, w) = loop {
        let w: Vec<i64> = std::iter::once(nonzero(rng, 5))
            .chain((1..k).map(|_| rng.gen_range(-5..=5i64)))
            .collect();
        let mut a: Vec<Rational> = (1..k).map(|_| q(nonzero(rng, 9))).collect();
        let rest = a
            .iter()
            .zip(&w[1..])
            .fold(Rational::zero(), |acc, (ai, &wi)| acc + ai * q(wi * wi));
        let a1 = -rest / q(w[0] * w[0]);
        if !a1.is_zero() {
            a.insert(0, a1);
            break (a, w);
        }
    };
    let mut entries: Vec<(TruncatedLaurent, Rational)> = Vec::new();
    for (a, wi) in residues.into_iter().zip(w) {
        let shift = 2 * rng.gen_range(-1..=1i64) + parity;
        let terms = rng.gen_range(0..=3);
        entries.push((random_unit(rng, a, terms).shift(shift), q(wi)));
    }
    for _ in 0..extra {
        let shift = 2 * rng.gen_range(-1..=1i64) + 1 - parity;
        let terms = rng.gen_range(0..=3);
        let lead = q(nonzero(rng, 9));
        entries.push((random_unit(rng, lead, terms).shift(shift), q(0)));
    }
    entries.shuffle(rng);
    let (es, ws): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    LiftInstance {
        form: DiagonalForm::new(es).expect("nonzero entries"),
        witness: ws,
        parity,
    }
}

fn random_poly(rng: &mut impl Rng, nvars: usize) -> MultivariatePoly {
    loop {
        let n = rng.gen_range(1..=3);
        let p = MultivariatePoly::new(
            nvars,
            (0..n).map(|_| {
                let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=3)).collect();
                (e, q(nonzero(rng, 5)))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// A ratio of two random sparse polynomials with up to three terms.
pub fn random_ratio(rng: &mut impl Rng, nvars: usize) -> MultivariateRatio {
    MultivariateRatio::new(random_poly(rng, nvars), random_poly(rng, nvars)).expect("nonzero denominator")
}

/// Curves with small rational points, used for group-law checks.
pub fn test_curves() -> Vec<WeierstrassCurve<Rational>> {
    [(0, 1, 1), (0, -2, 1), (0, 0, -2), (1, -2, 0), (0, -1, 0), (0, -4, 4)]
        .iter()
        .map(|&(a, b, c)| WeierstrassCurve::new(q(a), q(b), q(c)).expect("nonsingular"))
        .collect()
}

/// A random point `Σ kᵢPᵢ` with `|kᵢ| ≤ 2` over the given generators.
pub fn random_combination<F: Field>(
    rng: &mut impl Rng,
    curve: &WeierstrassCurve<F>,
    gens: &[CurvePoint<F>],
) -> CurvePoint<F> {
    let mut acc = CurvePoint::Infinity;
    for g in gens {
        let k = rng.gen_range(-2..=2);
        acc = curve.add(&acc, &curve.mul(k, g).expect("generic point")).expect("generic point");
    }
    acc
}

pub type FunctionFieldPoint = CurvePoint<RationalFunction<Rational>>;

/// The Weierstrass model `y² = x³ + a₂d·x² + a₄d²·x + a₆d³` of the twist
/// by `d = f(Z)`, with the point `(Z·d, d²)` and the rational 2-torsion of
/// the model.
pub fn twisted_model(
    base: &WeierstrassCurve<Rational>,
) -> (WeierstrassCurve<RationalFunction<Rational>>, Vec<FunctionFieldPoint>) {
    type RF = RationalFunction<Rational>;
    let z = RF::variable();
    let d = base.map(|c| RF::constant(c.clone())).f(&z);
    let model = WeierstrassCurve {
        a2: RF::constant(base.a2.clone()).times(&d),
        a4: RF::constant(base.a4.clone()).times(&d.square()),
        a6: RF::constant(base.a6.clone()).times(&d.pow(3)),
    };
    let mut gens = vec![CurvePoint::affine(z.times(&d), d.square())];
    for t in crate::curves::two_torsion(base) {
        if let CurvePoint::Affine { x, .. } = t {
            gens.push(CurvePoint::affine(RF::constant(x).times(&d), RF::zero()));
        }
    }
    (model, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::isotropic_over_q;

    #[test]
    fn instances_are_reproducible() {
        let a = random_rational_form(&mut rng_for(5, 3), 2..=5, 20);
        let b = random_rational_form(&mut rng_for(5, 3), 2..=5, 20);
        assert_eq!(a, b);
    }

    #[test]
    fn lift_instances_have_residue_zeros() {
        for i in 0..20 {
            let inst = random_lift_instance(&mut rng_for(1, i));
            assert_eq!(inst.form.dim(), inst.witness.len());
            let support: Vec<usize> = (0..inst.witness.len()).filter(|&j| !inst.witness[j].is_zero()).collect();
            let residue: Vec<Rational> = support
                .iter()
                .map(|&j| inst.form.entries()[j].leading_coefficient().unwrap().clone())
                .collect();
            let value = support
                .iter()
                .zip(&residue)
                .fold(Rational::zero(), |acc, (&j, r)| acc + r * &inst.witness[j] * &inst.witness[j]);
            assert!(value.is_zero());
            let residue_form = DiagonalForm::new(residue).unwrap();
            if residue_form.dim() > 1 {
                assert!(isotropic_over_q(&residue_form).unwrap().isotropic);
            }
        }
    }

    #[test]
    fn twisted_model_points_lie_on_model() {
        for e in test_curves() {
            let (model, gens) = twisted_model(&e);
            for g in &gens {
                assert!(model.contains(g));
            }
        }
    }
}
