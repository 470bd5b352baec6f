use std::sync::Arc;

use super::{Field, FieldError};

/// Radicands of the extension `K(s₁, s₂)` with `s₁² = d₁`, `s₂² = d₂`.
///
/// `d₁`, `d₂` and `d₁d₂` are assumed to be nonsquares in `K`; this is not
/// checked. If the assumption fails, some nonzero elements have zero norm
/// and `try_inv` reports division by zero.
#[derive(Debug, PartialEq)]
pub struct Tower<F> {
    pub d1: F,
    pub d2: F,
}

impl<F: Field> Tower<F> {
    pub fn new(d1: F, d2: F) -> Arc<Self> {
        Arc::new(Tower { d1, d2 })
    }
}

/// Which generator an automorphism negates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugation {
    /// `s₁ ↦ -s₁`, fixing `K(s₂)`.
    Sigma1,
    /// `s₂ ↦ -s₂`, fixing `K(s₁)`.
    Sigma2,
}

/// `c₀ + c₁s₁ + c₂s₂ + c₃s₁s₂`.
#[derive(Debug, Clone)]
pub struct BiquadraticElement<F> {
    tower: Arc<Tower<F>>,
    c: [F; 4],
}

impl<F: Field> PartialEq for BiquadraticElement<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower) && self.c == other.c
    }
}

impl<F: Field> BiquadraticElement<F> {
    pub fn new(tower: &Arc<Tower<F>>, c: [F; 4]) -> Self {
        BiquadraticElement {
            tower: Arc::clone(tower),
            c,
        }
    }

    pub fn embed(tower: &Arc<Tower<F>>, x: F) -> Self {
        let z = x.zero_like();
        Self::new(tower, [x, z.clone(), z.clone(), z])
    }

    pub fn s1(tower: &Arc<Tower<F>>) -> Self {
        let z = tower.d1.zero_like();
        Self::new(tower, [z.clone(), z.one_like(), z.clone(), z])
    }

    pub fn s2(tower: &Arc<Tower<F>>) -> Self {
        let z = tower.d1.zero_like();
        Self::new(tower, [z.clone(), z.clone(), z.one_like(), z])
    }

    pub fn tower(&self) -> &Arc<Tower<F>> {
        &self.tower
    }

    pub fn coords(&self) -> &[F; 4] {
        &self.c
    }

    /// The base-field value, if this element lies in `K`.
    pub fn as_base(&self) -> Option<&F> {
        self.c[1..].iter().all(Field::is_zero).then_some(&self.c[0])
    }

    pub fn conjugate(&self, which: Conjugation) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        let c = match which {
            Conjugation::Sigma1 => [c0.clone(), c1.negated(), c2.clone(), c3.negated()],
            Conjugation::Sigma2 => [c0.clone(), c1.clone(), c2.negated(), c3.negated()],
        };
        BiquadraticElement {
            tower: Arc::clone(&self.tower),
            c,
        }
    }

    /// Norm down to the base field: the product of all four conjugates.
    pub fn norm(&self) -> F {
        let y = self.times(&self.conjugate(Conjugation::Sigma1));
        y.times(&y.conjugate(Conjugation::Sigma2)).c[0].clone()
    }

    fn map2(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        debug_assert!(Arc::ptr_eq(&self.tower, &rhs.tower) || self.tower == rhs.tower);
        BiquadraticElement {
            tower: Arc::clone(&self.tower),
            c: std::array::from_fn(|i| f(&self.c[i], &rhs.c[i])),
        }
    }
}

impl<F: Field> Field for BiquadraticElement<F> {
    fn zero_like(&self) -> Self {
        Self::embed(&self.tower, self.c[0].zero_like())
    }
    fn one_like(&self) -> Self {
        Self::embed(&self.tower, self.c[0].one_like())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.map2(rhs, F::plus)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.map2(rhs, F::minus)
    }
    fn times(&self, rhs: &Self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let (d1, d2) = (&self.tower.d1, &self.tower.d2);
        let c0 = a0
            .times(b0)
            .plus(&d1.times(&a1.times(b1)))
            .plus(&d2.times(&a2.times(b2)))
            .plus(&d1.times(d2).times(&a3.times(b3)));
        let c1 = a0.times(b1).plus(&a1.times(b0)).plus(&d2.times(&a2.times(b3).plus(&a3.times(b2))));
        let c2 = a0.times(b2).plus(&a2.times(b0)).plus(&d1.times(&a1.times(b3).plus(&a3.times(b1))));
        let c3 = a0.times(b3).plus(&a3.times(b0)).plus(&a1.times(b2)).plus(&a2.times(b1));
        BiquadraticElement {
            tower: Arc::clone(&self.tower),
            c: [c0, c1, c2, c3],
        }
    }
    fn negated(&self) -> Self {
        BiquadraticElement {
            tower: Arc::clone(&self.tower),
            c: std::array::from_fn(|i| self.c[i].negated()),
        }
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        if let Some(b) = self.as_base() {
            return Ok(Self::embed(&self.tower, b.try_inv()?));
        }
        let s1conj = self.conjugate(Conjugation::Sigma1);
        let y = self.times(&s1conj);
        let ybar = y.conjugate(Conjugation::Sigma2);
        let norm = y.times(&ybar).c[0].clone();
        let ninv = Self::embed(&self.tower, norm.try_inv()?);
        Ok(s1conj.times(&ybar).times(&ninv))
    }
}
