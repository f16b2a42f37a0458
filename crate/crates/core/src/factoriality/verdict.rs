use rayon::prelude::*;

use crate::fields::Field;
use crate::groebner::Budget;
use crate::poly::Polynomial;

use super::conjecture::{check_unguarded, compositions, ConjectureOutcome};
use super::gls::{check_assumptions, gls_necessary_conditions, reject_rank_one, AssumptionReport, GlsOutcome, GlsWitness};
use super::prover::{inductive_prover, ProverOutcome, SupportCertificate};
use super::{ExchangeSystem, FactorialityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Total degree up to which the product and intersection are compared.
    pub degree_bound: u32,
    /// Ranks above this skip the comparison for certified seeds.
    pub cross_check_max_n: usize,
    pub budget: Budget,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { degree_bound: 3, cross_check_max_n: 8, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UfdVerdict<F: Field> {
    NotUfd {
        witness: GlsWitness<F>,
    },
    Ufd {
        certificate: SupportCertificate,
        assumptions: AssumptionReport,
        /// `None` when the comparison was skipped for rank.
        cross_checked_bound: Option<u32>,
    },
    Inconclusive {
        reason: String,
        stuck_supports: Vec<Vec<usize>>,
        /// Every multi-index with `|a|` up to this value satisfies
        /// product = intersection.
        verified_bound: u32,
        /// First multi-index where the comparison failed, with the
        /// intersection element outside the product.
        failure: Option<(Vec<u32>, Polynomial<F>)>,
    },
}

impl<F: Field> UfdVerdict<F> {
    pub fn label(&self) -> &'static str {
        match self {
            UfdVerdict::NotUfd { .. } => "NotUFD",
            UfdVerdict::Ufd { .. } => "UFD",
            UfdVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Outcome of comparing product and intersection degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedCheck<F: Field> {
    /// Every multi-index with `1 ≤ |a| ≤ verified_bound` holds.
    pub verified_bound: u32,
    /// Multi-indices compared, including the failing one.
    pub checked: usize,
    /// First failing multi-index and the intersection element outside the
    /// product.
    pub failure: Option<(Vec<u32>, Polynomial<F>)>,
    pub budget_exhausted: bool,
}

/// Compares product and intersection for all multi-indices of total degree
/// 1, 2, … up to `bound`, stopping at the first degree with a failure or
/// a budget overrun. Multi-indices of one degree are checked concurrently.
pub fn conjecture_check_up_to<F: Field>(
    sys: &ExchangeSystem<F>,
    bound: u32,
    override_assumptions: bool,
) -> Result<BoundedCheck<F>, FactorialityError> {
    if !override_assumptions {
        if let Some(why) = check_assumptions(sys).first_failure() {
            return Err(FactorialityError::AssumptionViolated(why.to_string()));
        }
    }
    verify_up_to(sys, bound)
}

fn verify_up_to<F: Field>(sys: &ExchangeSystem<F>, bound: u32) -> Result<BoundedCheck<F>, FactorialityError> {
    let n = sys.n();
    let mut out = BoundedCheck { verified_bound: 0, checked: 0, failure: None, budget_exhausted: false };
    for t in 1..=bound {
        let indices = compositions(n, t);
        let results: Vec<ConjectureOutcome<F>> =
            indices.par_iter().map(|a| check_unguarded(sys, a)).collect::<Result<_, _>>()?;
        for (a, r) in indices.iter().zip(results) {
            out.checked += 1;
            match r {
                ConjectureOutcome::Holds => {}
                ConjectureOutcome::Fails { witness } => {
                    out.failure = Some((a.clone(), witness));
                    return Ok(out);
                }
                ConjectureOutcome::Inconclusive { .. } => {
                    out.budget_exhausted = true;
                    return Ok(out);
                }
            }
        }
        out.verified_bound = t;
    }
    Ok(out)
}

/// Necessary conditions first, then the support prover with a bounded
/// comparison of product and intersection as a cross-check.
pub fn ufd_verdict<F: Field>(sys: &ExchangeSystem<F>, opts: &VerdictOptions) -> Result<UfdVerdict<F>, FactorialityError> {
    reject_rank_one(sys)?;
    let sys = &sys.clone().with_budget(opts.budget);
    if !sys.matrix().is_connected() {
        return Err(FactorialityError::AssumptionViolated("exchange matrix is not connected".into()));
    }
    if let GlsOutcome::Witness(witness) = gls_necessary_conditions(sys)? {
        return Ok(UfdVerdict::NotUfd { witness });
    }
    let assumptions = check_assumptions(sys);
    let (reason, stuck) = if !assumptions.acyclic {
        ("seed is not acyclic; the support prover does not apply".to_string(), Vec::new())
    } else {
        match inductive_prover(sys)? {
            ProverOutcome::Certificate(certificate) => {
                if !certificate.verify(sys) {
                    return Err(FactorialityError::Internal("support certificate failed re-verification".into()));
                }
                if sys.n() > opts.cross_check_max_n {
                    return Ok(UfdVerdict::Ufd { certificate, assumptions, cross_checked_bound: None });
                }
                let v = verify_up_to(sys, opts.degree_bound)?;
                if let Some((a, w)) = v.failure {
                    return Err(FactorialityError::Internal(format!(
                        "certified seed fails product = intersection at a = {a:?} (witness {w})"
                    )));
                }
                if v.budget_exhausted {
                    return Ok(UfdVerdict::Inconclusive {
                        reason: "Gröbner budget exhausted during the cross-check".into(),
                        stuck_supports: Vec::new(),
                        verified_bound: v.verified_bound,
                        failure: None,
                    });
                }
                return Ok(UfdVerdict::Ufd { certificate, assumptions, cross_checked_bound: Some(v.verified_bound) });
            }
            ProverOutcome::Stuck(stuck) => ("no justification for some supports".to_string(), stuck),
        }
    };
    let v = verify_up_to(sys, opts.degree_bound)?;
    let reason = if v.budget_exhausted { format!("{reason}; Gröbner budget exhausted") } else { reason };
    Ok(UfdVerdict::Inconclusive { reason, stuck_supports: stuck, verified_bound: v.verified_bound, failure: v.failure })
}
