//! Factoriality of acyclic cluster algebras: the exchange ideals
//! `I_i = (x_i, f_i)`, valuations, the necessary conditions on exchange
//! polynomials, the product-versus-intersection check on powers of the
//! `I_i`, an inductive prover over supports, and the final verdict.
//!
//! Mutable indices are zero-based, as in [`crate::cluster`].

mod conjecture;
mod element;
mod gls;
mod irreducible;
mod prover;
mod valuation;
mod verdict;

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::cluster::{exchange_polynomial, ClusterError, ExchangeMatrix, Seed};
use crate::fields::Field;
use crate::groebner::{Budget, GroebnerError, Ideal};
use crate::poly::Polynomial;

pub use conjecture::{conjecture_check, multi_indices, ConjectureOutcome};
pub use element::{
    algebra_membership, product_membership_sufficient, normal_form_element, CertifiedSeed, Irreducibility,
    NormalFormElement,
};
pub use gls::{check_assumptions, gls_necessary_conditions, AssumptionReport, GlsOutcome, GlsWitness};
pub use irreducible::{binomial_irreducible, brute_force_factor, BinomialStatus, FactorSearch, SEARCH_CANDIDATE_LIMIT};
pub use prover::{inductive_prover, support_indices, Justification, ProverOutcome, SupportCertificate, MAX_PROVER_RANK};
pub use valuation::{normal_monomial, power_membership, valuation};
pub use verdict::{conjecture_check_up_to, ufd_verdict, BoundedCheck, UfdVerdict, VerdictOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorialityError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("seed assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("unsupported seed: {0}")]
    UnsupportedSeed(String),
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("constant polynomials are units and have no normal form")]
    Unit,
    #[error("polynomial is divisible by x{}", .0 + 1)]
    DivisibleByVariable(usize),
    #[error("expected {expected} variables, got {got}")]
    VariableCount { got: usize, expected: usize },
    #[error("multi-index has length {got}, expected {expected}")]
    MultiIndexLength { got: usize, expected: usize },
    #[error("no support certificate: {0}")]
    NotCertified(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The initial exchange data of a seed: its matrix and the exchange
/// polynomials `f_0, …, f_{n−1}` in `m` variables.
#[derive(Debug)]
pub struct ExchangeSystem<F: Field> {
    matrix: ExchangeMatrix,
    f: Vec<Polynomial<F>>,
    budget: Budget,
    powers: Mutex<HashMap<(usize, u32), Ideal<F>>>,
}

impl<F: Field> Clone for ExchangeSystem<F> {
    fn clone(&self) -> Self {
        ExchangeSystem {
            matrix: self.matrix.clone(),
            f: self.f.clone(),
            budget: self.budget,
            powers: Mutex::new(self.powers.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> ExchangeSystem<F> {
    pub fn new(matrix: ExchangeMatrix) -> Self {
        let f = (0..matrix.n()).map(|j| exchange_polynomial(&matrix, j).unwrap()).collect();
        ExchangeSystem { matrix, f, budget: Budget::default(), powers: Mutex::new(HashMap::new()) }
    }

    pub fn from_seed(seed: &Seed<F>) -> Self {
        Self::new(seed.matrix().clone())
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self.powers = Mutex::new(HashMap::new());
        self
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn exchange_polynomial(&self, i: usize) -> &Polynomial<F> {
        &self.f[i]
    }

    pub fn exchange_polynomials(&self) -> &[Polynomial<F>] {
        &self.f
    }

    /// `I_i = (x_i, f_i)`.
    pub fn exchange_ideal(&self, i: usize) -> Ideal<F> {
        self.ideal_power(i, 1)
    }

    /// `I_i^a`, generated by `x_i^r f_i^{a−r}` for `0 ≤ r ≤ a`. Cached, so
    /// Gröbner bases of powers are computed once.
    pub fn ideal_power(&self, i: usize, a: u32) -> Ideal<F> {
        if let Some(id) = self.powers.lock().unwrap().get(&(i, a)) {
            return id.clone();
        }
        let m = self.m();
        let x = Polynomial::<F>::var(m, i);
        let gens = (0..=a).map(|r| &x.pow(r) * &self.f[i].pow(a - r)).collect();
        let ideal = Ideal::new(m, gens).expect("powers of exchange ideals are nonzero").with_budget(self.budget);
        self.powers.lock().unwrap().entry((i, a)).or_insert(ideal).clone()
    }

    pub(crate) fn check_multi_index(&self, a: &[u32]) -> Result<(), FactorialityError> {
        if a.len() != self.n() {
            return Err(FactorialityError::MultiIndexLength { got: a.len(), expected: self.n() });
        }
        Ok(())
    }
}
