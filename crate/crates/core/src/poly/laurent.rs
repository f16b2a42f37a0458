use std::fmt;

use crate::fields::Field;

use super::{divide_exact, ExponentVector, MonomialOrder, PolyError, Polynomial};

/// A Laurent polynomial `numerator / x^denominator`.
///
/// Kept reduced: no variable divides both the numerator and the
/// denominator monomial. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial<F: Field> {
    numerator: Polynomial<F>,
    denominator: ExponentVector,
}

impl<F: Field> LaurentPolynomial<F> {
    pub fn new(numerator: Polynomial<F>, denominator: ExponentVector) -> Self {
        assert_eq!(numerator.nvars(), denominator.len());
        if numerator.is_zero() {
            return Self::zero(numerator.nvars());
        }
        let common = numerator.monomial_content().gcd(&denominator);
        if common.is_one() {
            return LaurentPolynomial { numerator, denominator };
        }
        LaurentPolynomial {
            numerator: numerator.div_monomial(&common).unwrap(),
            denominator: denominator.checked_div(&common).unwrap(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { numerator: Polynomial::zero(nvars), denominator: ExponentVector::zeros(nvars) }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, c))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::from_polynomial(Polynomial::var(nvars, var))
    }

    /// `1 / x_var`.
    pub fn inverse_var(nvars: usize, var: usize) -> Self {
        LaurentPolynomial { numerator: Polynomial::one(nvars), denominator: ExponentVector::unit(nvars, var) }
    }

    pub fn from_polynomial(p: Polynomial<F>) -> Self {
        let n = p.nvars();
        LaurentPolynomial { numerator: p, denominator: ExponentVector::zeros(n) }
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &ExponentVector {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn to_polynomial(&self) -> Option<Polynomial<F>> {
        self.is_polynomial().then(|| self.numerator.clone())
    }

    /// A monomial times a constant, i.e. a unit of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.numerator.len() == 1
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        Self::new(self.numerator.mul_monomial(m), self.denominator.clone())
    }

    pub fn div_monomial(&self, m: &ExponentVector) -> Self {
        Self::new(self.numerator.clone(), self.denominator.mul(m))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.numerator.scale(c), self.denominator.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.numerator.pow(k), self.denominator.pow(k))
    }

    /// Division inside the Laurent ring; `NotLaurent` when the quotient
    /// is not a Laurent polynomial.
    pub fn try_div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let content = other.numerator.monomial_content();
        let stripped = other.numerator.div_monomial(&content).unwrap();
        let order = MonomialOrder::grevlex(self.nvars());
        let q = match divide_exact(&self.numerator, &stripped, &order) {
            Ok(q) => q,
            Err(PolyError::NotDivisible) => return Err(PolyError::NotLaurent),
            Err(e) => return Err(e),
        };
        Ok(Self::new(q.mul_monomial(&other.denominator), self.denominator.mul(&content)))
    }

    /// Cross-multiplies to a common denominator.
    fn aligned(&self, other: &Self) -> (Polynomial<F>, Polynomial<F>, ExponentVector) {
        let den = self.denominator.lcm(&other.denominator);
        let a = self.numerator.mul_monomial(&den.checked_div(&self.denominator).unwrap());
        let b = other.numerator.mul_monomial(&den.checked_div(&other.denominator).unwrap());
        (a, b, den)
    }
}

impl<F: Field> std::ops::Add for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn add(self, rhs: Self) -> LaurentPolynomial<F> {
        let (a, b, den) = self.aligned(rhs);
        LaurentPolynomial::new(&a + &b, den)
    }
}

impl<F: Field> std::ops::Sub for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<F> {
        let (a, b, den) = self.aligned(rhs);
        LaurentPolynomial::new(&a - &b, den)
    }
}

impl<F: Field> std::ops::Mul for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<F> {
        LaurentPolynomial::new(&self.numerator * &rhs.numerator, self.denominator.mul(&rhs.denominator))
    }
}

impl<F: Field> std::ops::Neg for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn neg(self) -> LaurentPolynomial<F> {
        LaurentPolynomial { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl<F: Field> fmt::Display for LaurentPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.len() > 1 {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        if self.denominator.support().count() > 1 {
            write!(f, "/({})", self.denominator)
        } else {
            write!(f, "/{}", self.denominator)
        }
    }
}

impl<F: Field> fmt::Debug for LaurentPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{}]({self})", self.nvars())
    }
}
