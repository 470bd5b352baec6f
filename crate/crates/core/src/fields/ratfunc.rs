use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{ConstField, Field, FieldError, Polynomial, Rational};

/// A place of the rational function field: a finite point `Z = γ` or `∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Finite(F),
    Infinity,
}

/// Quotient of two polynomials in canonical form: coprime parts and a monic
/// denominator, so equality is componentwise.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, FieldError> {
        let dlead = den.leading().ok_or(FieldError::DivisionByZero)?.clone();
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::constant(dlead.one_like()),
            });
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let inv = den.leading().expect("nonzero").try_inv()?;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.monic()?,
        })
    }

    /// Normalizes the leading coefficient of a denominator known to be
    /// coprime to the numerator.
    fn coprime(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let inv = den.leading().expect("nonzero denominator").try_inv().expect("exact field");
        RationalFunction {
            num: num.scale(&inv),
            den: den.monic().expect("exact field"),
        }
    }

    pub fn from_poly(p: Polynomial<F>, one: &F) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(one.one_like()),
        }
    }

    pub fn constant_like(c: F) -> Self {
        let one = c.one_like();
        RationalFunction {
            num: Polynomial::constant(c),
            den: Polynomial::constant(one),
        }
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    fn sample(&self) -> &F {
        self.den.leading().expect("denominator is never zero")
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The constant value, if this function is constant.
    pub fn as_constant(&self) -> Option<F> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(self.sample().zero_like()),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Order of vanishing at a place: positive for zeros, negative for poles.
    pub fn order_at(&self, point: &Point<F>) -> Result<i64, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        match point {
            Point::Infinity => {
                Ok(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
            }
            Point::Finite(g) => {
                Ok(multiplicity(&self.num, g)? as i64 - multiplicity(&self.den, g)? as i64)
            }
        }
    }

    /// Value at a finite point; fails at a pole.
    pub fn eval(&self, x: &F) -> Result<F, FieldError> {
        self.num.eval(x).try_div(&self.den.eval(x))
    }

    /// Value at infinity of a function with `order_at(∞) ≥ 0`.
    pub fn eval_at_infinity(&self) -> Result<F, FieldError> {
        let dn = self.num.degree();
        let dd = self.den.degree().unwrap();
        match dn {
            None => Ok(self.sample().zero_like()),
            Some(n) if n < dd => Ok(self.sample().zero_like()),
            Some(n) if n == dd => self.num.leading().unwrap().try_div(self.den.leading().unwrap()),
            Some(_) => Err(FieldError::DivisionByZero),
        }
    }

    /// Evaluates at an element of another field, embedding coefficients with
    /// `embed`. This is substitution `ξ ↦ x`.
    pub fn eval_with<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> Result<G, FieldError> {
        let n = self.num.eval_with(x, &embed);
        let d = self.den.eval_with(x, &embed);
        n.try_div(&d)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<RationalFunction<G>, FieldError> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn display_with(&self, var: &str) -> String
    where
        F: fmt::Display,
    {
        if self.is_polynomial() {
            self.num.display_with(var)
        } else {
            format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

fn multiplicity<F: Field>(p: &Polynomial<F>, root: &F) -> Result<usize, FieldError> {
    let lin = Polynomial::new(vec![root.negated(), root.one_like()]);
    let mut k = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(&lin)?;
        if !r.is_zero() || cur.is_zero() {
            return Ok(k);
        }
        k += 1;
        cur = q;
    }
}

impl<F: ConstField> RationalFunction<F> {
    /// The variable `Z`.
    pub fn variable() -> Self {
        Self::from_poly(Polynomial::x(), &F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::constant_like(c)
    }

    pub fn from_polys(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, FieldError> {
        Self::new(num, den)
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn zero_like(&self) -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::constant(self.sample().one_like()),
        }
    }
    fn one_like(&self) -> Self {
        let one = self.sample().one_like();
        RationalFunction {
            num: Polynomial::constant(one.clone()),
            den: Polynomial::constant(one),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        // a/b + c/d = (a·d' + c·b')/(b'·g·d') with g = gcd(b, d); only g can
        // share factors with the new numerator
        let g = self.den.gcd(&rhs.den).expect("exact field");
        let b1 = self.den.div_rem(&g).unwrap().0;
        let d1 = rhs.den.div_rem(&g).unwrap().0;
        let num = self.num.mul_ref(&d1).add_ref(&rhs.num.mul_ref(&b1));
        if num.is_zero() {
            return self.zero_like();
        }
        let h = num.gcd(&g).expect("exact field");
        let num = num.div_rem(&h).unwrap().0;
        let g = g.div_rem(&h).unwrap().0;
        Self::coprime(num, b1.mul_ref(&g).mul_ref(&d1))
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return self.zero_like();
        }
        // cross-cancel first so the gcds stay small
        let g1 = self.num.gcd(&rhs.den).expect("exact field");
        let g2 = rhs.num.gcd(&self.den).expect("exact field");
        let n1 = self.num.div_rem(&g1).unwrap().0;
        let d2 = rhs.den.div_rem(&g1).unwrap().0;
        let n2 = rhs.num.div_rem(&g2).unwrap().0;
        let d1 = self.den.div_rem(&g2).unwrap().0;
        Self::coprime(n1.mul_ref(&n2), d1.mul_ref(&d2))
    }
    fn negated(&self) -> Self {
        RationalFunction {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
    fn try_inv(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant_like(self.sample().from_int_like(n))
    }
}

impl<F: ConstField> ConstField for RationalFunction<F> {
    fn zero() -> Self {
        Self::constant_like(F::zero())
    }
    fn one() -> Self {
        Self::constant_like(F::one())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant_like(F::from_rational(q))
    }
}

impl fmt::Display for RationalFunction<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("Z"))
    }
}

macro_rules! forward_ops {
    ($($tr:ident $m:ident $call:ident),*) => {$(
        impl<F: Field> $tr<&RationalFunction<F>> for &RationalFunction<F> {
            type Output = RationalFunction<F>;
            fn $m(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
                self.$call(rhs)
            }
        }
    )*};
}

forward_ops!(Add add plus, Sub sub minus, Mul mul times);

impl<F: Field> Div<&RationalFunction<F>> for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn div(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        self.try_div(rhs).expect("division by zero rational function")
    }
}

impl<F: Field> Neg for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn neg(self) -> RationalFunction<F> {
        self.negated()
    }
}
