use serde::Serialize;

use crate::fields::Field;
use crate::poly::{MonomialOrder, Polynomial};

use super::irreducible::{binomial_irreducible, brute_force_factor, BinomialStatus, FactorSearch};
use super::{ExchangeSystem, FactorialityError};

/// Evidence that the cluster algebra is not factorial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlsWitness<F: Field> {
    /// `f_i` is reducible; `factors` multiply to `f_i` when the factor
    /// search produced them.
    Reducible { i: usize, factors: Option<(Polynomial<F>, Polynomial<F>)> },
    /// `f_i = f_j` with `i < j`.
    Coincident { i: usize, j: usize },
    /// `f_i = c·f_j` for a scalar `c ≠ 1`.
    NonCoprime { i: usize, j: usize },
}

impl<F: Field> GlsWitness<F> {
    /// Re-checks the witness against the exchange polynomials.
    pub fn verify(&self, sys: &ExchangeSystem<F>) -> bool {
        let f = sys.exchange_polynomials();
        match self {
            GlsWitness::Reducible { i, factors } => {
                binomial_irreducible(&f[*i]) == BinomialStatus::Reducible
                    && factors.as_ref().is_none_or(|(a, b)| {
                        !a.is_constant() && !b.is_constant() && (a * b) == f[*i]
                    })
            }
            GlsWitness::Coincident { i, j } => i != j && f[*i] == f[*j],
            GlsWitness::NonCoprime { i, j } => i != j && scalar_ratio(&f[*i], &f[*j]).is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlsOutcome<F: Field> {
    Pass,
    Witness(GlsWitness<F>),
}

/// `Some(c)` with `c ≠ 1` when `p = c·q`.
fn scalar_ratio<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>) -> Option<F> {
    let order = MonomialOrder::grevlex(p.nvars());
    let c = p.leading_coefficient(&order)?.checked_div(q.leading_coefficient(&order)?).ok()?;
    (!c.is_one() && &q.scale(&c) == p).then_some(c)
}

pub(crate) fn reject_rank_one<F: Field>(sys: &ExchangeSystem<F>) -> Result<(), FactorialityError> {
    if sys.m() < 2 {
        return Err(FactorialityError::UnsupportedSeed(
            "m = 1: the algebra is a Laurent polynomial ring in one variable, always factorial".into(),
        ));
    }
    Ok(())
}

/// Every `f_i` must be irreducible and the `f_i` pairwise coprime. Returns
/// the first violation: irreducibility by ascending index, then pairs
/// `(i, j)` in lexicographic order.
pub fn gls_necessary_conditions<F: Field>(sys: &ExchangeSystem<F>) -> Result<GlsOutcome<F>, FactorialityError> {
    reject_rank_one(sys)?;
    let f = sys.exchange_polynomials();
    for (i, fi) in f.iter().enumerate() {
        if fi.is_constant() {
            return Err(FactorialityError::AssumptionViolated(format!("f{} is constant", i + 1)));
        }
        let reducible = match binomial_irreducible(fi) {
            BinomialStatus::Irreducible => false,
            BinomialStatus::Reducible => true,
            BinomialStatus::NotBinomial => {
                return Err(FactorialityError::Internal(format!("f{} = {fi} is not an exchange binomial", i + 1)))
            }
        };
        if reducible {
            let max_degree = fi.degree().unwrap_or(0);
            let factors = match brute_force_factor(fi, max_degree)? {
                FactorSearch::Found { factors } => Some(factors),
                FactorSearch::NoneFound { .. } => None,
            };
            return Ok(GlsOutcome::Witness(GlsWitness::Reducible { i, factors }));
        }
    }
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if f[i] == f[j] {
                return Ok(GlsOutcome::Witness(GlsWitness::Coincident { i, j }));
            }
            if scalar_ratio(&f[i], &f[j]).is_some() {
                return Ok(GlsOutcome::Witness(GlsWitness::NonCoprime { i, j }));
            }
        }
    }
    Ok(GlsOutcome::Pass)
}

/// Which of the standing assumptions on a seed hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub m_at_least_two: bool,
    pub connected: bool,
    pub acyclic: bool,
    pub irreducible_and_coprime: bool,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.m_at_least_two && self.connected && self.acyclic && self.irreducible_and_coprime
    }

    /// The first failing assumption, in the order the fields are listed.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.m_at_least_two, "m = 1"),
            (self.connected, "exchange matrix is not connected"),
            (self.acyclic, "seed is not acyclic"),
            (self.irreducible_and_coprime, "exchange polynomials are not irreducible and pairwise coprime"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, why)| why)
    }
}

pub fn check_assumptions<F: Field>(sys: &ExchangeSystem<F>) -> AssumptionReport {
    let b = sys.matrix();
    AssumptionReport {
        m_at_least_two: sys.m() >= 2,
        connected: b.is_connected(),
        acyclic: b.is_acyclic(),
        irreducible_and_coprime: matches!(gls_necessary_conditions(sys), Ok(GlsOutcome::Pass)),
    }
}
