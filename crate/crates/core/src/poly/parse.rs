//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'i' | 'x' index | '(' expr ')'
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use crate::fields::{Field, Rational};

use super::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    ImaginaryUnitNotInField,
    NonMonomialDivisor,
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at position {position}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(msg) => format!("syntax error: {msg}"),
        ParseErrorKind::UnknownVariable(v) => format!("unknown variable {v:?}"),
        ParseErrorKind::ImaginaryUnitNotInField => "imaginary unit i used over Q".into(),
        ParseErrorKind::NonMonomialDivisor => "divisor is not a monomial".into(),
        ParseErrorKind::DivisionByZero => "division by zero".into(),
    }
}

/// Parses `text` as a Laurent polynomial in `x1..x{nvars}` over `F`.
pub fn parse_expression<F: Field>(text: &str, nvars: usize) -> Result<LaurentPolynomial<F>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax("empty expression".into())));
    }
    let value = p.expr::<F>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax(format!("unexpected {:?}", p.src[p.pos] as char))));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, position: self.pos }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr<F: Field>(&mut self) -> Result<LaurentPolynomial<F>, ParseError> {
        let mut acc = self.term::<F>()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term::<F>()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<LaurentPolynomial<F>, ParseError> {
        let mut acc = self.unary::<F>()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary::<F>()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                if rhs.is_zero() {
                    return Err(ParseError { kind: ParseErrorKind::DivisionByZero, position: at });
                }
                if !rhs.is_monomial() {
                    return Err(ParseError { kind: ParseErrorKind::NonMonomialDivisor, position: at });
                }
                acc = acc.try_div(&rhs).expect("monomials are units");
            }
        }
        Ok(acc)
    }

    fn unary<F: Field>(&mut self) -> Result<LaurentPolynomial<F>, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary::<F>()?);
        }
        self.power::<F>()
    }

    fn power<F: Field>(&mut self) -> Result<LaurentPolynomial<F>, ParseError> {
        let base = self.atom::<F>()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self
                .digits()
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| self.error(ParseErrorKind::Syntax("expected a non-negative integer exponent".into())))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom<F: Field>(&mut self) -> Result<LaurentPolynomial<F>, ParseError> {
        let m = self.nvars;
        match self.peek() {
            None => Err(self.error(ParseErrorKind::Syntax("unexpected end of input".into()))),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr::<F>()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(ParseErrorKind::Syntax("expected ')'".into())));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().unwrap();
                Ok(LaurentPolynomial::constant(m, F::from_rational(Rational::from_int(n))))
            }
            Some(b'i') => {
                let at = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos = at;
                    return Err(self.identifier_error());
                }
                match F::imaginary_unit() {
                    Some(i) => Ok(LaurentPolynomial::constant(m, i)),
                    None => Err(ParseError { kind: ParseErrorKind::ImaginaryUnitNotInField, position: at }),
                }
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let idx = self.digits().and_then(|d| d.parse::<usize>().ok());
                let trailing = self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic());
                match idx {
                    Some(k) if (1..=m).contains(&k) && !trailing => Ok(LaurentPolynomial::var(m, k - 1)),
                    _ => {
                        self.pos = at;
                        Err(self.identifier_error())
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Err(self.identifier_error()),
            Some(c) => Err(self.error(ParseErrorKind::Syntax(format!("unexpected {:?}", c as char)))),
        }
    }

    fn identifier_error(&mut self) -> ParseError {
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
            end += 1;
        }
        let name = String::from_utf8_lossy(&self.src[start..end]).into_owned();
        ParseError { kind: ParseErrorKind::UnknownVariable(name), position: start }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GaussianRational;
    use crate::poly::{ExponentVector, Polynomial};
    use proptest::prelude::*;

    type L = LaurentPolynomial<Rational>;

    fn q(s: &str, m: usize) -> Result<L, ParseError> {
        parse_expression::<Rational>(s, m)
    }

    #[test]
    fn laurent_value() {
        let v = q("(1+x2)/x1", 2).unwrap();
        assert_eq!(v.numerator(), &Polynomial::from_int_terms(2, &[(1, &[0, 0]), (1, &[0, 1])]));
        assert_eq!(v.denominator(), &ExponentVector::unit(2, 0));
    }

    #[test]
    fn difference_of_squares() {
        let v = q("x1*x1 - x2^2", 2).unwrap();
        assert_eq!(v.to_polynomial().unwrap(), Polynomial::from_int_terms(2, &[(1, &[2, 0]), (-1, &[0, 2])]));
    }

    #[test]
    fn gaussian_coefficient() {
        let v = parse_expression::<GaussianRational>("1 + i*x2", 2).unwrap();
        let one = Polynomial::<GaussianRational>::one(2);
        let expected = &one + &Polynomial::var(2, 1).scale(&GaussianRational::i());
        assert_eq!(v.to_polynomial().unwrap(), expected);
        assert_eq!(v.to_string(), "i*x2 + 1");
    }

    #[test]
    fn errors() {
        assert_eq!(q("1 + i*x2", 2).unwrap_err().kind, ParseErrorKind::ImaginaryUnitNotInField);
        assert_eq!(q("1 + i*x2", 2).unwrap_err().position, 4);
        assert_eq!(q("x3", 2).unwrap_err().kind, ParseErrorKind::UnknownVariable("x3".into()));
        assert_eq!(q("y + 1", 2).unwrap_err().kind, ParseErrorKind::UnknownVariable("y".into()));
        assert_eq!(q("x1/(1+x2)", 2).unwrap_err().kind, ParseErrorKind::NonMonomialDivisor);
        assert_eq!(q("x1/0", 2).unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert!(matches!(q("x1 +", 2).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(q("(x1", 2).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(q("x1^-1", 2).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(q("", 2).unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert_eq!(q("x1 x2", 2).unwrap_err().position, 3);
    }

    #[test]
    fn divisor_reducing_to_monomial() {
        // (x1 + x2 - x2) is the monomial x1
        assert_eq!(q("x2/(x1 + x2 - x2)", 2).unwrap(), q("x2/x1", 2).unwrap());
        assert_eq!(q("1/2*x1", 2).unwrap().to_string(), "1/2*x1");
    }

    #[test]
    fn precedence() {
        assert_eq!(q("-x1^2", 1).unwrap(), -&q("x1*x1", 1).unwrap());
        assert_eq!(q("2*x1 + 3", 1).unwrap().to_string(), "2*x1 + 3");
        assert_eq!(q("x1 - x1 - x1", 1).unwrap(), -&L::var(1, 0));
    }

    fn arb_laurent() -> impl Strategy<Value = L> {
        (
            proptest::collection::vec((-5i64..6, 1i64..4, proptest::collection::vec(0u32..3, 3)), 0..5),
            proptest::collection::vec(0u32..3, 3),
        )
            .prop_map(|(ts, den)| {
                let num = Polynomial::from_terms(
                    3,
                    ts.into_iter()
                        .map(|(a, b, e)| (ExponentVector::from_vec(e), Rational::new(a, b).unwrap())),
                );
                LaurentPolynomial::new(num, ExponentVector::from_vec(den))
            })
    }

    fn arb_gaussian_poly() -> impl Strategy<Value = Polynomial<GaussianRational>> {
        proptest::collection::vec((-3i64..4, -3i64..4, 1i64..3, proptest::collection::vec(0u32..3, 2)), 0..4)
            .prop_map(|ts| {
                Polynomial::from_terms(
                    2,
                    ts.into_iter().map(|(a, b, d, e)| {
                        (
                            ExponentVector::from_vec(e),
                            GaussianRational::new(Rational::new(a, d).unwrap(), Rational::from_int(b)),
                        )
                    }),
                )
            })
    }

    proptest! {
        #[test]
        fn render_round_trip(v in arb_laurent()) {
            prop_assert_eq!(q(&v.to_string(), 3).unwrap(), v);
        }

        #[test]
        fn render_round_trip_gaussian(p in arb_gaussian_poly()) {
            let v = LaurentPolynomial::from_polynomial(p);
            prop_assert_eq!(parse_expression::<GaussianRational>(&v.to_string(), 2).unwrap(), v);
        }

        #[test]
        fn renormalization_is_identity(v in arb_laurent()) {
            let again = LaurentPolynomial::new(v.numerator().clone(), v.denominator().clone());
            prop_assert_eq!(again, v);
        }
    }
}
