use crate::fields::Field;
use crate::groebner::{ideal_membership, Ideal};
use crate::poly::{ExponentVector, LaurentPolynomial, MonomialOrder, Polynomial};

use super::conjecture::product_generators;
use super::gls::{check_assumptions, reject_rank_one};
use super::irreducible::{binomial_irreducible, brute_force_factor, BinomialStatus, FactorSearch};
use super::prover::{inductive_prover, ProverOutcome, SupportCertificate};
use super::valuation::{normal_monomial, power_membership};
use super::{ExchangeSystem, FactorialityError};

/// A seed whose product and intersection ideals agree for every
/// multi-index, by a verified support certificate.
#[derive(Debug, Clone)]
pub struct CertifiedSeed<F: Field> {
    system: ExchangeSystem<F>,
    certificate: SupportCertificate,
}

impl<F: Field> CertifiedSeed<F> {
    pub fn new(system: ExchangeSystem<F>) -> Result<Self, FactorialityError> {
        reject_rank_one(&system)?;
        if let Some(why) = check_assumptions(&system).first_failure() {
            return Err(FactorialityError::NotCertified(why.to_string()));
        }
        match inductive_prover(&system)? {
            ProverOutcome::Certificate(certificate) if certificate.verify(&system) => {
                Ok(CertifiedSeed { system, certificate })
            }
            ProverOutcome::Certificate(_) => Err(FactorialityError::Internal("certificate failed re-verification".into())),
            ProverOutcome::Stuck(s) => Err(FactorialityError::NotCertified(format!(
                "{} supports without a justification; use the product membership test",
                s.len()
            ))),
        }
    }

    pub fn system(&self) -> &ExchangeSystem<F> {
        &self.system
    }

    pub fn certificate(&self) -> &SupportCertificate {
        &self.certificate
    }
}

fn check_vars<F: Field>(sys: &ExchangeSystem<F>, nvars: usize) -> Result<(), FactorialityError> {
    if nvars != sys.m() {
        return Err(FactorialityError::VariableCount { got: nvars, expected: sys.m() });
    }
    Ok(())
}

/// Mutable part of the denominator; frozen variables are units.
fn mutable_denominator<F: Field>(sys: &ExchangeSystem<F>, v: &LaurentPolynomial<F>) -> Vec<u32> {
    v.denominator().as_slice()[..sys.n()].to_vec()
}

/// Whether `v` lies in the cluster algebra: with `v = P/x^a` reduced,
/// membership holds iff `P ∈ I_i^{a_i}` for every mutable `i`.
pub fn algebra_membership<F: Field>(cs: &CertifiedSeed<F>, v: &LaurentPolynomial<F>) -> Result<bool, FactorialityError> {
    let sys = cs.system();
    check_vars(sys, v.nvars())?;
    if v.is_zero() {
        return Ok(true);
    }
    let a = mutable_denominator(sys, v);
    Ok(a.iter().enumerate().all(|(i, &ai)| power_membership(sys, v.numerator(), i, ai)))
}

/// `P ∈ I^a` for the product ideal, decided with a Gröbner basis. A true
/// answer proves membership of `v = P/x^a` for any seed.
pub fn product_membership_sufficient<F: Field>(
    sys: &ExchangeSystem<F>,
    v: &LaurentPolynomial<F>,
) -> Result<bool, FactorialityError> {
    check_vars(sys, v.nvars())?;
    if v.is_zero() {
        return Ok(true);
    }
    let a = mutable_denominator(sys, v);
    if a.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    let product = Ideal::new(sys.m(), product_generators(sys, &a))?.with_budget(sys.budget());
    Ok(ideal_membership(v.numerator(), &product)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility<F: Field> {
    /// Irreducible by the binomial criterion.
    Confirmed,
    /// The factor search covered every candidate and found none.
    NoFactorFound,
    Reducible { factors: (Polynomial<F>, Polynomial<F>) },
    /// The factor search hit its candidate limit.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormElement<F: Field> {
    /// `P` with leading coefficient 1 under grevlex.
    pub numerator: Polynomial<F>,
    /// `M(P)`.
    pub monomial: ExponentVector,
    /// `P / M(P)`.
    pub value: LaurentPolynomial<F>,
    pub irreducibility: Irreducibility<F>,
}

/// The representative `P / M(P)` of the element class of `P`.
pub fn normal_form_element<F: Field>(
    cs: &CertifiedSeed<F>,
    p: &Polynomial<F>,
) -> Result<NormalFormElement<F>, FactorialityError> {
    let sys = cs.system();
    check_vars(sys, p.nvars())?;
    if p.is_zero() {
        return Err(FactorialityError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(FactorialityError::Unit);
    }
    if let Some(v) = p.monomial_content().support().next() {
        return Err(FactorialityError::DivisibleByVariable(v));
    }
    let numerator = p.make_monic(&MonomialOrder::grevlex(p.nvars()));
    let monomial = normal_monomial(sys, &numerator)?;
    let value = LaurentPolynomial::new(numerator.clone(), monomial.clone());
    let irreducibility = match binomial_irreducible(&numerator) {
        BinomialStatus::Irreducible => Irreducibility::Confirmed,
        _ => match brute_force_factor(&numerator, numerator.degree().unwrap_or(0))? {
            FactorSearch::Found { factors } => Irreducibility::Reducible { factors },
            FactorSearch::NoneFound { exhausted: true, .. } => Irreducibility::NoFactorFound,
            FactorSearch::NoneFound { exhausted: false, .. } => Irreducibility::Unverified,
        },
    };
    Ok(NormalFormElement { numerator, monomial, value, irreducibility })
}
