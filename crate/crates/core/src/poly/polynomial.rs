use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::fields::{ArithOp, Field};

use super::{ExponentVector, LaurentPolynomial, MonomialOrder, PolyError};

pub type Term<F> = (ExponentVector, F);

/// Sparse polynomial over `F` in a fixed number of variables.
///
/// Terms are stored without zero coefficients, sorted in descending grevlex
/// order, so equal polynomials are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<Term<F>>,
}

/// Sorts terms descending by `order`, merging duplicates and dropping zeros.
pub(crate) fn sort_terms<F: Field>(mut terms: Vec<Term<F>>, order: &MonomialOrder) -> Vec<Term<F>> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc = lc.add(&c),
            _ => out.push((e, c)),
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
    }
    out
}

/// `a − c·x^shift·b` for term lists sorted descending by `order`.
pub(crate) fn sub_scaled_shifted<F: Field>(
    a: &[Term<F>],
    b: &[Term<F>],
    c: &F,
    shift: &ExponentVector,
    order: &MonomialOrder,
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bs = b.iter().map(|(e, k)| (e.mul(shift), k.mul(c))).peekable();
    while i < a.len() || bs.peek().is_some() {
        let ord = match (a.get(i), bs.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (e, k) = bs.next().unwrap();
                out.push((e, k.neg()));
            }
            Ordering::Equal => {
                let (e, k) = bs.next().unwrap();
                let v = a[i].1.sub(&k);
                i += 1;
                if !v.is_zero() {
                    out.push((e, v));
                }
            }
        }
    }
    out
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, ExponentVector::zeros(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The variable `x_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, ExponentVector::unit(nvars, var), F::one())
    }

    pub fn monomial(nvars: usize, exps: ExponentVector, c: F) -> Self {
        assert_eq!(exps.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(exps, c)] }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        assert!(terms.iter().all(|(e, _)| e.len() == nvars));
        Polynomial { nvars, terms: sort_terms(terms, &MonomialOrder::grevlex(nvars)) }
    }

    /// Builds from integer-coefficient terms, convenient in tests.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (ExponentVector::from_vec(e.to_vec()), F::from_int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_term(&self) -> F {
        self.terms
            .iter()
            .find(|(e, _)| e.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.get(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.get(var)).min().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> ExponentVector {
        let mut it = self.terms.iter().map(|(e, _)| e);
        match it.next() {
            None => ExponentVector::zeros(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, e| acc.gcd(e)),
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e.get(var) > 0)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term<F>> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn leading_coefficient(&self, order: &MonomialOrder) -> Option<&F> {
        self.leading_term(order).map(|(_, c)| c)
    }

    /// Terms sorted descending by `order`.
    pub fn terms_by(&self, order: &MonomialOrder) -> Vec<Term<F>> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn make_monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_coefficient(order) {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &ExponentVector) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.mul(m), k.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &ExponentVector) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| e.checked_div(m).map(|q| (q, k.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { nvars: self.nvars, terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        let order = MonomialOrder::grevlex(self.nvars);
        let neg = F::one().neg();
        Ok(Polynomial {
            nvars: self.nvars,
            terms: sub_scaled_shifted(&self.terms, &other.terms, &neg, &ExponentVector::zeros(self.nvars), &order),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        let order = MonomialOrder::grevlex(self.nvars);
        Ok(Polynomial {
            nvars: self.nvars,
            terms: sub_scaled_shifted(
                &self.terms,
                &other.terms,
                &F::one(),
                &ExponentVector::zeros(self.nvars),
                &order,
            ),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dims(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Ok(self.mul_monomial(e).scale(c));
        }
        let mut acc: HashMap<ExponentVector, F> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca.mul(cb);
                let e = ea.mul(eb);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: sort_terms(acc.into_iter().collect(), &MonomialOrder::grevlex(self.nvars)),
        })
    }

    fn check_dims(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    /// Re-embeds into `nvars` variables, dropping or appending trailing
    /// variables. Panics if a dropped variable occurs.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        for (e, _) in &self.terms {
            assert!(e.as_slice()[nvars.min(e.len())..].iter().all(|&x| x == 0));
        }
        Self::from_terms(nvars, self.terms.iter().map(|(e, c)| (e.resized(nvars), c.clone())))
    }

    /// Substitutes `x_var := value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        let top = self.degree_in(var);
        for k in 0..=top {
            let part = coefficient_of(self, var, k);
            if !part.is_zero() {
                out = &out + &(&part * &value.pow(k));
            }
        }
        out
    }

    /// Evaluates to a Laurent value by substituting each variable.
    pub fn evaluate_laurent(&self, values: &[LaurentPolynomial<F>]) -> LaurentPolynomial<F> {
        assert_eq!(values.len(), self.nvars);
        let target = values.first().map(|v| v.nvars()).unwrap_or(0);
        let mut out = LaurentPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = LaurentPolynomial::constant(target, c.clone());
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t = &t * &values[v].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }
}

/// `[x_var^k] p`: the part of `p` of degree `k` in `x_var`, with `x_var`
/// removed.
pub fn coefficient_of<F: Field>(p: &Polynomial<F>, var: usize, k: u32) -> Polynomial<F> {
    Polynomial {
        nvars: p.nvars,
        terms: p
            .terms
            .iter()
            .filter(|(e, _)| e.get(var) == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e.set(var, 0);
                (e, c.clone())
            })
            .collect(),
    }
}

pub fn poly_arith<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>, PolyError> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
        ArithOp::Div => divide_exact(p, q, &MonomialOrder::grevlex(p.nvars)),
    }
}

/// Exact multivariate division: `r` with `p = q·r`, or `NotDivisible`.
pub fn divide_exact<F: Field>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    order: &MonomialOrder,
) -> Result<Polynomial<F>, PolyError> {
    p.check_dims(q)?;
    if q.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if q.terms.len() == 1 {
        let (e, c) = &q.terms[0];
        let inv = c.inv().map_err(|_| PolyError::DivisionByZero)?;
        return p.div_monomial(e).map(|r| r.scale(&inv)).ok_or(PolyError::NotDivisible);
    }
    let divisor = q.terms_by(order);
    let (lead_e, lead_c) = &divisor[0];
    let lead_inv = lead_c.inv().expect("nonzero leading coefficient");
    let mut rem = p.terms_by(order);
    let mut quotient = Vec::new();
    while let Some((e, c)) = rem.first() {
        let shift = e.checked_div(lead_e).ok_or(PolyError::NotDivisible)?;
        let coeff = c.mul(&lead_inv);
        rem = sub_scaled_shifted(&rem, &divisor, &coeff, &shift, order);
        quotient.push((shift, coeff));
    }
    Ok(Polynomial::from_terms(p.nvars, quotient))
}

pub fn laurent_arith<F: Field>(
    a: &LaurentPolynomial<F>,
    b: &LaurentPolynomial<F>,
    op: ArithOp,
) -> Result<LaurentPolynomial<F>, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::DimensionMismatch { left: a.nvars(), right: b.nvars() });
    }
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.try_div(b),
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().neg())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<F: Field> std::ops::$tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Self) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

pub(crate) fn fmt_term<F: Field>(f: &mut fmt::Formatter<'_>, e: &ExponentVector, c: &F) -> fmt::Result {
    if e.is_one() {
        return if c.needs_parens() { write!(f, "({c})") } else { write!(f, "{c}") };
    }
    if c.is_one() {
        write!(f, "{e}")
    } else if c.neg().is_one() {
        write!(f, "-{e}")
    } else if c.needs_parens() {
        write!(f, "({c})*{e}")
    } else {
        write!(f, "{c}*{e}")
    }
}

/// Terms in descending grevlex order joined by ` + ` / ` - `.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                fmt_term(f, e, c)?;
            } else if c.is_negative_display() {
                write!(f, " - ")?;
                fmt_term(f, e, &c.neg())?;
            } else {
                write!(f, " + ")?;
                fmt_term(f, e, c)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}
