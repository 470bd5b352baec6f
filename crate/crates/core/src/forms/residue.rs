//! Reduction of a form over a discretely valued field to two residue forms,
//! and the henselian converse lifting a residue zero.

use super::{DiagonalForm, FormError, IsotropyVerdict};
use crate::fields::{hensel_lift_root, ConstField, Field, Polynomial, Rational, TruncatedLaurent};
use crate::valuations::{TAdic, Valuation};

/// Residue forms of the entries with even and with odd value. `None` stands
/// for the zero-dimensional form.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueForms<R> {
    pub even: Option<DiagonalForm<R>>,
    pub odd: Option<DiagonalForm<R>>,
}

fn int_pow<E: Field>(x: &E, k: i64) -> Result<E, FormError> {
    let p = x.pow(k.unsigned_abs() as u32);
    Ok(if k < 0 { p.try_inv()? } else { p })
}

/// Splits `Q` into residue forms. An entry `a` of value `2k` contributes the
/// residue of `a·u^{-2k}` to the even form; an entry of value `e` odd
/// contributes the residue of `a·t⁻¹·u^{-(e - v(t))}` to the odd form, where
/// `u` is the uniformizer and `t` the given element of odd value.
pub fn residue_split<E, V>(form: &DiagonalForm<E>, t: &E, val: &V) -> Result<ResidueForms<V::Residue>, FormError>
where
    E: Field,
    V: Valuation<E>,
    V::Residue: Field,
{
    if val.rank() != 1 {
        return Err(FormError::UnsupportedValueGroup(format!("rank {}", val.rank())));
    }
    let u = val
        .uniformizer()
        .ok_or_else(|| FormError::UnsupportedValueGroup("no uniformizer".into()))?;
    if val.value(&u)?.as_scalar() != Some(1) {
        return Err(FormError::UnsupportedValueGroup("uniformizer does not have value 1".into()));
    }
    let vt = val.value(t)?;
    let vt = vt
        .as_scalar()
        .ok_or_else(|| FormError::EvenParameter(vt.to_string()))?;
    if vt.rem_euclid(2) == 0 {
        return Err(FormError::EvenParameter(vt.to_string()));
    }
    let t_inv = t.try_inv()?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, a) in form.entries().iter().enumerate() {
        let e = val
            .value(a)
            .ok()
            .and_then(|v| v.as_scalar())
            .ok_or(FormError::ZeroResidue(i))?;
        let (scaled, bucket) = if e.rem_euclid(2) == 0 {
            (a.times(&int_pow(&u, -e)?), &mut even)
        } else {
            (a.times(&t_inv).times(&int_pow(&u, vt - e)?), &mut odd)
        };
        let r = val.residue(&scaled).map_err(|_| FormError::ZeroResidue(i))?;
        if r.is_zero() {
            return Err(FormError::ZeroResidue(i));
        }
        bucket.push(r);
    }
    let wrap = |v: Vec<V::Residue>| (!v.is_empty()).then(|| DiagonalForm::new(v)).transpose();
    Ok(ResidueForms {
        even: wrap(even)?,
        odd: wrap(odd)?,
    })
}

/// Lifts a zero of a residue form of `Q` to a vector zeroing `Q` modulo
/// `T^target`.
///
/// `witness` has one coordinate per entry of `Q`, is supported on entries of
/// a single value parity, and must be a zero of the corresponding residue
/// form. Its first nonzero coordinate is lifted by Newton iteration; the
/// other coordinates are kept, rescaled by powers of `T`.
pub fn hensel_isotropy_lift(
    witness: &[Rational],
    form: &DiagonalForm<TruncatedLaurent>,
    target: i64,
) -> Result<IsotropyVerdict<TruncatedLaurent>, FormError> {
    let degenerate = |m: &str| FormError::DegenerateWitness(m.to_string());
    if witness.len() != form.dim() {
        return Err(FormError::DimensionMismatch {
            dim: form.dim(),
            got: witness.len(),
        });
    }
    let support: Vec<usize> = (0..witness.len()).filter(|&i| !witness[i].is_zero()).collect();
    let Some(&j) = support.first() else {
        return Err(degenerate("zero vector"));
    };
    let mut exps = Vec::with_capacity(support.len());
    for &i in &support {
        let e = TAdic
            .value(&form.entries()[i])?
            .as_scalar()
            .ok_or_else(|| degenerate("entry of infinite value"))?;
        exps.push(e);
    }
    let parity = exps[0].rem_euclid(2);
    if exps.iter().any(|e| e.rem_euclid(2) != parity) {
        return Err(degenerate("support mixes value parities"));
    }
    // a_i x_i² = c_i T^parity y_i² with c_i a unit and x_i = T^{-k_i} y_i
    let units: Vec<TruncatedLaurent> = support
        .iter()
        .zip(&exps)
        .map(|(&i, &e)| form.entries()[i].shift(-e))
        .collect();
    let residues: Vec<Rational> = units
        .iter()
        .map(|c| TAdic.residue(c).map_err(FormError::from))
        .collect::<Result<_, _>>()?;
    let residue_value = support
        .iter()
        .zip(&residues)
        .fold(Rational::zero(), |acc, (&i, r)| acc.plus(&r.times(&witness[i].square())));
    if !residue_value.is_zero() {
        return Err(degenerate("not a zero of the residue form"));
    }
    let mut rest = TruncatedLaurent::zero();
    for (idx, &i) in support.iter().enumerate().skip(1) {
        rest = rest.plus(&units[idx].scale(&witness[i].square()));
    }
    let poly = Polynomial::new(vec![rest, TruncatedLaurent::zero(), units[0].clone()]);
    let y = hensel_lift_root(&poly, &witness[j], target - parity)?;

    let mut out = vec![TruncatedLaurent::zero(); form.dim()];
    for (idx, &i) in support.iter().enumerate() {
        let k = (exps[idx] - parity) / 2;
        let yi = if idx == 0 {
            y.clone()
        } else {
            TruncatedLaurent::from_rational(&witness[i])
        };
        out[i] = yi.shift(-k);
    }
    Ok(IsotropyVerdict::with_witness(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_list;
    use crate::fields::sqrt_lift;
    use crate::valuations::{MonomialValuation, MultivariatePoly, MultivariateRatio};

    type TL = TruncatedLaurent;

    fn lform(s: &str) -> DiagonalForm<TL> {
        DiagonalForm::new(parse_list(s).unwrap()).unwrap()
    }

    fn qform(xs: &[i64]) -> DiagonalForm<Rational> {
        DiagonalForm::new(xs.iter().map(|&x| Rational::from_int(x)).collect()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn split_examples() {
        let r = residue_split(&lform("3, T, 5*T^3, 7*T^2"), &TL::t(), &TAdic).unwrap();
        assert_eq!(r.even, Some(qform(&[3, 7])));
        assert_eq!(r.odd, Some(qform(&[1, 5])));
        let r = residue_split(&lform("1, T"), &TL::t(), &TAdic).unwrap();
        assert_eq!((r.even, r.odd), (Some(qform(&[1])), Some(qform(&[1]))));
        let r = residue_split(&lform("1, 1, T, T"), &TL::t(), &TAdic).unwrap();
        assert_eq!((r.even, r.odd), (Some(qform(&[1, 1])), Some(qform(&[1, 1]))));
    }

    #[test]
    fn split_with_other_odd_parameter() {
        // t = 2T^3: odd entries are divided by 2 and shifted to unit value
        let t = TL::from_ints(3, &[2], None);
        let r = residue_split(&lform("T^-1, 6*T^5, 4"), &t, &TAdic).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(r.odd, Some(DiagonalForm::new(vec![half, q(3)]).unwrap()));
        assert_eq!(r.even, Some(qform(&[4])));
    }

    #[test]
    fn split_errors() {
        let f = lform("1, T");
        let t2 = TL::from_ints(2, &[1], None);
        assert!(matches!(residue_split(&f, &t2, &TAdic), Err(FormError::EvenParameter(_))));
        let lex = MonomialValuation::new(["X", "Y"]);
        let x = MultivariateRatio::from_poly(MultivariatePoly::var(2, 0));
        let g = DiagonalForm::new(vec![x.clone()]).unwrap();
        assert!(matches!(residue_split(&g, &x, &lex), Err(FormError::UnsupportedValueGroup(_))));
    }

    #[test]
    fn lift_square_root() {
        let f = lform("1, -(1 + T)");
        let v = hensel_isotropy_lift(&[q(1), q(1)], &f, 10).unwrap();
        let w = v.witness.clone().unwrap();
        assert_eq!(w[0], sqrt_lift(&TL::from_ints(0, &[1, 1], None), 1, 10).unwrap());
        assert_eq!(w[1], TL::one());
        assert!(f.eval(&w).unwrap().is_zero());
    }

    #[test]
    fn lift_exact_witness() {
        let f = lform("1, -1");
        let w = hensel_isotropy_lift(&[q(1), q(1)], &f, 10).unwrap().witness.unwrap();
        assert_eq!(w, vec![TL::one(), TL::one()]);
        assert!(w.iter().all(TL::is_exact));
    }

    #[test]
    fn lift_rejects_bad_witnesses() {
        let f = lform("1, 1");
        assert!(matches!(hensel_isotropy_lift(&[q(1), q(1)], &f, 10), Err(FormError::DegenerateWitness(_))));
        assert!(matches!(hensel_isotropy_lift(&[q(0), q(0)], &f, 10), Err(FormError::DegenerateWitness(_))));
        let g = lform("1, -T");
        assert!(matches!(hensel_isotropy_lift(&[q(1), q(1)], &g, 10), Err(FormError::DegenerateWitness(_))));
    }

    #[test]
    fn lift_odd_class_with_shifts() {
        // odd class ⟨T + T², -T³⟩ has residue form ⟨1, -1⟩
        let f = lform("T + T^2, -T^3, 5");
        let v = hensel_isotropy_lift(&[q(1), q(1), q(0)], &f, 10).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w[2], TL::zero());
        assert_eq!(w[1], TL::from_ints(-1, &[1], None));
        let r = f.eval(&w).unwrap();
        assert!(r.is_zero());
        assert!(r.precision().unwrap() >= 10);
    }
}
