//! Diagonal quadratic forms `⟨a₁,…,aₙ⟩`: orthogonal sums, tensor products,
//! Pfister forms, isotropy over ℚ, bounded witness search and reduction to
//! residue forms under a discrete valuation.

use std::fmt;

use thiserror::Error;

use crate::fields::{ConstField, Field, FieldError, HenselError};
use crate::valuations::ValuationError;

mod local;
mod residue;
mod search;

pub use local::{factor, hilbert_symbol, isotropic_over_q, Place, TRIAL_DIVISION_BOUND};
pub use residue::{hensel_isotropy_lift, residue_split, ResidueForms};
pub use search::{witness_search, witness_search_with, ConstantCoordinates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("a diagonal form needs at least one entry")]
    Empty,
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error("Pfister generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("vector of length {got} for a form of dimension {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("{0} has a prime factor beyond the trial-division bound")]
    FactorizationLimit(String),
    #[error("{0} is not a prime")]
    InvalidPlace(u64),
    #[error("unsupported value group: {0}")]
    UnsupportedValueGroup(String),
    #[error("the scaling parameter has even value {0}")]
    EvenParameter(String),
    #[error("residue of entry {0} cannot be certified to be a unit")]
    ZeroResidue(usize),
    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Hensel(#[from] HenselError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `⟨a₁,…,aₙ⟩ = a₁x₁² + … + aₙxₙ²` with every `aᵢ ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalForm<E> {
    entries: Vec<E>,
}

impl<E: Field> DiagonalForm<E> {
    pub fn new(entries: Vec<E>) -> Result<Self, FormError> {
        if entries.is_empty() {
            return Err(FormError::Empty);
        }
        if let Some(i) = entries.iter().position(Field::is_zero) {
            return Err(FormError::ZeroEntry(i));
        }
        Ok(DiagonalForm { entries })
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `Σ aᵢxᵢ²`.
    pub fn eval(&self, x: &[E]) -> Result<E, FormError> {
        if x.len() != self.dim() {
            return Err(FormError::DimensionMismatch {
                dim: self.dim(),
                got: x.len(),
            });
        }
        let mut acc = self.entries[0].zero_like();
        for (a, xi) in self.entries.iter().zip(x) {
            acc = acc.plus(&a.times(&xi.square()));
        }
        Ok(acc)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&E) -> G) -> Result<DiagonalForm<G>, FormError> {
        DiagonalForm::new(self.entries.iter().map(f).collect())
    }

    /// Scalar multiple `⟨c·a₁,…,c·aₙ⟩`.
    pub fn scaled(&self, c: &E) -> Result<Self, FormError> {
        Self::new(self.entries.iter().map(|a| a.times(c)).collect())
    }

    /// Equality of entry multisets.
    pub fn same_entries(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let mut used = vec![false; other.dim()];
        self.entries.iter().all(|a| {
            let hit = other
                .entries
                .iter()
                .enumerate()
                .position(|(j, b)| !used[j] && a.minus(b).is_zero());
            hit.map(|j| used[j] = true).is_some()
        })
    }
}

impl<E: fmt::Display> fmt::Display for DiagonalForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "⟩")
    }
}

/// `Q₁ ⊥ Q₂`: concatenated entries.
pub fn orth_sum<E: Field>(q1: &DiagonalForm<E>, q2: &DiagonalForm<E>) -> DiagonalForm<E> {
    let mut entries = q1.entries.clone();
    entries.extend(q2.entries.iter().cloned());
    DiagonalForm { entries }
}

/// `Q₁ ⊗ Q₂`: pairwise products `aᵢbⱼ` in row-major order.
pub fn tensor<E: Field>(q1: &DiagonalForm<E>, q2: &DiagonalForm<E>) -> DiagonalForm<E> {
    let entries = q1
        .entries
        .iter()
        .flat_map(|a| q2.entries.iter().map(move |b| a.times(b)))
        .collect();
    DiagonalForm { entries }
}

/// `⟨⟨a₁,…,a_q⟩⟩ = ⟨1,a₁⟩ ⊗ … ⊗ ⟨1,a_q⟩`.
pub fn pfister<E: ConstField>(gens: &[E]) -> Result<DiagonalForm<E>, FormError> {
    let mut acc = DiagonalForm {
        entries: vec![E::one()],
    };
    for (i, a) in gens.iter().enumerate() {
        if a.is_zero() {
            return Err(FormError::ZeroGenerator(i));
        }
        acc = tensor(
            &acc,
            &DiagonalForm {
                entries: vec![E::one(), a.clone()],
            },
        );
    }
    Ok(acc)
}

/// Outcome of an isotropy test. A present witness is a nonzero vector on
/// which the form vanishes (to the available precision for approximate
/// fields).
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyVerdict<E> {
    pub isotropic: bool,
    pub witness: Option<Vec<E>>,
}

impl<E: Field> IsotropyVerdict<E> {
    pub fn anisotropic() -> Self {
        IsotropyVerdict {
            isotropic: false,
            witness: None,
        }
    }

    pub fn with_witness(w: Vec<E>) -> Self {
        IsotropyVerdict {
            isotropic: true,
            witness: Some(w),
        }
    }

    /// Whether the witness, if any, is nonzero and zeroes `form`.
    pub fn witness_is_sound(&self, form: &DiagonalForm<E>) -> bool {
        match &self.witness {
            None => true,
            Some(w) => !w.iter().all(Field::is_zero) && form.eval(w).is_ok_and(|v| v.is_zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Rational;

    fn form(xs: &[i64]) -> DiagonalForm<Rational> {
        DiagonalForm::new(xs.iter().map(|&x| Rational::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn sum_and_tensor() {
        assert_eq!(orth_sum(&form(&[1]), &form(&[-1])), form(&[1, -1]));
        assert_eq!(tensor(&form(&[1, 2]), &form(&[1, 3])), form(&[1, 3, 2, 6]));
    }

    #[test]
    fn pfister_forms() {
        assert_eq!(pfister::<Rational>(&[]).unwrap(), form(&[1]));
        let ones = [Rational::from_int(1), Rational::from_int(1)];
        assert_eq!(pfister(&ones).unwrap(), form(&[1, 1, 1, 1]));
        let bad = [Rational::from_int(1), Rational::from_int(0)];
        assert_eq!(pfister(&bad), Err(FormError::ZeroGenerator(1)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(DiagonalForm::<Rational>::new(vec![]), Err(FormError::Empty));
        assert_eq!(
            DiagonalForm::new(vec![Rational::from_int(1), Rational::from_int(0)]),
            Err(FormError::ZeroEntry(1))
        );
    }

    #[test]
    fn multiset_equality_ignores_order() {
        assert!(form(&[1, 2, 2, 3]).same_entries(&form(&[2, 3, 1, 2])));
        assert!(!form(&[1, 2, 2]).same_entries(&form(&[1, 1, 2])));
    }

    #[test]
    fn display() {
        assert_eq!(form(&[1, -3]).to_string(), "⟨1, -3⟩");
    }
}
