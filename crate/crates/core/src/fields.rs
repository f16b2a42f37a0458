//! Exact coefficient fields: the rationals and the Gaussian rationals.
//!
//! Every value is kept in canonical form, so structural equality and hashing
//! agree with mathematical equality. Polynomials, ideals and seeds are generic
//! over [`Field`]; the field of a computation is fixed by the type parameter.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

/// Which ground field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    Qi,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Qi => write!(f, "Qi"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" => Ok(FieldTag::Q),
            "Qi" => Ok(FieldTag::Qi),
            _ => Err(FieldError::Parse(s.to_string())),
        }
    }
}

/// An exact field of characteristic zero.
///
/// `Ord` is an arbitrary total order used only for canonical sorting; it is
/// not a field ordering.
pub trait Field:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const TAG: FieldTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: Rational) -> Self;
    /// `Some(i)` when the field contains a square root of −1.
    fn imaginary_unit() -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;

    /// True iff the value lies in ℤ (resp. ℤ[i]).
    fn is_integral(&self) -> bool;

    /// Small coefficient alphabet for exhaustive factor searches.
    fn search_alphabet() -> Vec<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Whether the textual rendering needs parentheses when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }

    /// True iff the rendering starts with a minus sign and the rest can be
    /// printed as a positive coefficient.
    fn is_negative_display(&self) -> bool;
}

/// Binary arithmetic selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith<F: Field>(a: &F, b: &F, op: ArithOp) -> Result<F, FieldError> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Arbitrary-precision rational number in lowest terms, denominator positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, FieldError> {
        let d = denom.into();
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err())?;
                let q: BigInt = q.trim().parse().map_err(|_| err())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_int(t.parse::<BigInt>().map_err(|_| err())?)),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                Field::$impl_fn(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                Field::$impl_fn(self, rhs)
            }
        }
    };
}

macro_rules! impl_ops {
    ($ty:ty) => {
        forward_binop!($ty, Add, add, add);
        forward_binop!($ty, Sub, sub, sub);
        forward_binop!($ty, Mul, mul, mul);

        impl std::ops::Div for $ty {
            type Output = $ty;
            /// Panics on division by zero; use [`Field::checked_div`] otherwise.
            fn div(self, rhs: $ty) -> $ty {
                self.checked_div(&rhs).expect("division by zero")
            }
        }

        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                Field::neg(&self)
            }
        }

        impl<'a> std::ops::Neg for &'a $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                Field::neg(self)
            }
        }

        impl<'a> std::ops::Div<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn div(self, rhs: &'a $ty) -> $ty {
                self.checked_div(rhs).expect("division by zero")
            }
        }
    };
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::Q;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.0.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }
    fn is_integral(&self) -> bool {
        self.0.is_integer()
    }
    fn search_alphabet() -> Vec<Self> {
        [0, 1, -1, 2, -2].into_iter().map(Rational::from_int).collect()
    }
    fn is_negative_display(&self) -> bool {
        self.0.is_negative()
    }
}

impl_ops!(Rational);

/// Element `re + im·i` of ℚ(i), stored as a pair of rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

pub fn conjugate(a: &GaussianRational) -> GaussianRational {
    a.conjugate()
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if *im == Rational::from_int(-1) {
                write!(f, "-i")
            } else {
                write!(f, "{im}*i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                imag(f, &self.im)
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = FieldError;

    /// Accepts `a`, `b*i`, `i`, `-i`, `a+b*i`, `a-b*i` and `a+i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianRational::from_rational(t.parse().map_err(|_| err())?));
        };
        // split "a±b*" at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im_str = im_str.strip_suffix('*').unwrap_or(im_str);
        let im = match im_str {
            "" | "+" => Rational::one(),
            "-" => Rational::from_int(-1),
            other => other.trim_start_matches('+').parse().map_err(|_| err())?,
        };
        let re = re_str.parse().map_err(|_| err())?;
        Ok(GaussianRational { re, im })
    }
}

impl Field for GaussianRational {
    const TAG: FieldTag = FieldTag::Qi;

    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
    fn from_rational(q: Rational) -> Self {
        GaussianRational { re: q, im: Rational::zero() }
    }
    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        GaussianRational { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn sub(&self, other: &Self) -> Self {
        GaussianRational { re: &self.re - &other.re, im: &self.im - &other.im }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.im.is_zero() && other.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &other.re);
        }
        GaussianRational {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }
    fn neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
    fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm().inv()?;
        let c = self.conjugate();
        Ok(GaussianRational { re: &c.re * &n, im: &c.im * &n })
    }
    fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
    fn search_alphabet() -> Vec<Self> {
        let z = Rational::zero;
        let r = Rational::from_int;
        vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::from_int(-1),
            GaussianRational::new(z(), r(1)),
            GaussianRational::new(z(), r(-1)),
        ]
    }
    fn needs_parens(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
    fn is_negative_display(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.im.is_zero() && self.re.is_negative()
        }
    }
}

impl_ops!(GaussianRational);
