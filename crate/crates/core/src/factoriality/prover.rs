use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::fields::Field;
use crate::poly::ExponentVector;

use super::{ExchangeSystem, FactorialityError};

/// Largest rank the prover enumerates supports for.
pub const MAX_PROVER_RANK: usize = 20;

/// Why the product equals the intersection for every multi-index with a
/// given support, by induction on `|a|`. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Justification {
    /// `i ∈ S` is a sink or a source and `j ∈ S` is adjacent to it.
    SinkSource { i: usize, j: usize },
    /// `i ∈ S` has no neighbour in `S`.
    FreeA { i: usize },
    /// `f_i = x_k + M_i` for a monomial `M_i`, and no neighbour of `k`
    /// other than `i` lies in `S`.
    FreeB { i: usize, k: usize },
}

/// Bit `i` of a support mask stands for mutable index `i`.
pub fn support_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn in_mask(mask: u32, i: usize) -> bool {
    i < 32 && mask >> i & 1 == 1
}

/// `f_i` has a term equal to `x_k` with coefficient 1 and the other term
/// is a monomial.
fn linear_term_index<F: Field>(sys: &ExchangeSystem<F>, i: usize, k: usize) -> bool {
    let m = sys.m();
    let f = sys.exchange_polynomial(i);
    f.len() == 2 && f.terms().iter().any(|(e, c)| c.is_one() && *e == ExponentVector::unit(m, k))
}

fn holds<F: Field>(sys: &ExchangeSystem<F>, mask: u32, j: Justification) -> bool {
    let b = sys.matrix();
    let n = sys.n();
    match j {
        Justification::SinkSource { i, j } => {
            i < n
                && j < n
                && in_mask(mask, i)
                && in_mask(mask, j)
                && (b.is_sink(i) || b.is_source(i))
                && b.adjacent(i, j)
        }
        Justification::FreeA { i } => i < n && in_mask(mask, i) && b.neighbors(i).iter().all(|&l| !in_mask(mask, l)),
        Justification::FreeB { i, k } => {
            i < n
                && k < sys.m()
                && k != i
                && in_mask(mask, i)
                && linear_term_index(sys, i, k)
                && b.neighbors(k).iter().all(|&l| l == i || !in_mask(mask, l))
        }
    }
}

/// First justification for `mask`: conditions are tried in the order
/// sink/source, free (a), free (b), each over ascending indices.
fn justify<F: Field>(sys: &ExchangeSystem<F>, mask: u32) -> Option<Justification> {
    let members = support_indices(mask);
    let m = sys.m();
    let candidates = members
        .iter()
        .flat_map(|&i| members.iter().map(move |&j| Justification::SinkSource { i, j }))
        .chain(members.iter().map(|&i| Justification::FreeA { i }))
        .chain(members.iter().flat_map(|&i| (0..m).map(move |k| Justification::FreeB { i, k })));
    candidates.into_iter().find(|&j| holds(sys, mask, j))
}

/// A justification for every nonempty support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCertificate {
    n: usize,
    entries: BTreeMap<u32, Justification>,
}

impl SupportCertificate {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, support: &[usize]) -> Option<Justification> {
        let mask = support.iter().fold(0u32, |acc, &i| acc | 1 << i);
        self.entries.get(&mask).copied()
    }

    /// `(support, justification)` by ascending mask.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, Justification)> + '_ {
        self.entries.iter().map(|(&mask, &j)| (support_indices(mask), j))
    }

    /// Re-checks totality and every side condition against `sys`.
    pub fn verify<F: Field>(&self, sys: &ExchangeSystem<F>) -> bool {
        self.n == sys.n()
            && self.n <= MAX_PROVER_RANK
            && self.entries.len() == (1usize << self.n) - 1
            && (1u32..1 << self.n).all(|mask| self.entries.get(&mask).is_some_and(|&j| holds(sys, mask, j)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProverOutcome {
    Certificate(SupportCertificate),
    /// Supports without a justification, by ascending mask.
    Stuck(Vec<Vec<usize>>),
}

/// Searches a justification for each nonempty support of a multi-index.
/// The caller is responsible for the standing assumptions on the seed.
pub fn inductive_prover<F: Field>(sys: &ExchangeSystem<F>) -> Result<ProverOutcome, FactorialityError> {
    let n = sys.n();
    if n > MAX_PROVER_RANK {
        return Err(FactorialityError::UnsupportedSeed(format!(
            "rank {n} exceeds the prover limit of {MAX_PROVER_RANK}"
        )));
    }
    let found: Vec<(u32, Option<Justification>)> =
        (1u32..1 << n).into_par_iter().map(|mask| (mask, justify(sys, mask))).collect();
    let stuck: Vec<Vec<usize>> =
        found.iter().filter(|(_, j)| j.is_none()).map(|(mask, _)| support_indices(*mask)).collect();
    if !stuck.is_empty() {
        return Ok(ProverOutcome::Stuck(stuck));
    }
    let entries = found.into_iter().map(|(mask, j)| (mask, j.unwrap())).collect();
    Ok(ProverOutcome::Certificate(SupportCertificate { n, entries }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{builtin_matrix, Builtin, ExchangeMatrix};
    use crate::fields::Rational;

    fn system(b: Builtin) -> ExchangeSystem<Rational> {
        ExchangeSystem::new(builtin_matrix(&b).unwrap())
    }

    fn certificate(sys: &ExchangeSystem<Rational>) -> SupportCertificate {
        match inductive_prover(sys).unwrap() {
            ProverOutcome::Certificate(c) => c,
            ProverOutcome::Stuck(s) => panic!("stuck on {s:?}"),
        }
    }

    #[test]
    fn linear_a4_and_e6_are_certified() {
        let a4 = system(Builtin::A(4));
        let c = certificate(&a4);
        assert_eq!(c.len(), 15);
        assert!(c.verify(&a4));
        let e6 = system(Builtin::E(6));
        let c = certificate(&e6);
        assert_eq!(c.len(), 63);
        assert!(c.verify(&e6));
    }

    #[test]
    fn larger_types_are_certified() {
        for b in [Builtin::A(2), Builtin::A(5), Builtin::A(6), Builtin::E(7), Builtin::E(8), Builtin::Kronecker] {
            let s = system(b);
            assert!(certificate(&s).verify(&s), "{b}");
        }
    }

    #[test]
    fn justification_choice_on_a2() {
        let s = system(Builtin::A(2));
        let c = certificate(&s);
        // index 0 is a source adjacent to 1
        assert_eq!(c.get(&[0, 1]), Some(Justification::SinkSource { i: 0, j: 1 }));
        assert_eq!(c.get(&[0]), Some(Justification::FreeA { i: 0 }));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let s = system(Builtin::A(4));
        let mut c = certificate(&s);
        // interior vertex with a neighbour in the support
        c.entries.insert(0b0111, Justification::FreeA { i: 1 });
        assert!(!c.verify(&s));
        let mut c = certificate(&s);
        c.entries.remove(&0b1111);
        assert!(!c.verify(&s));
    }

    #[test]
    fn double_arrow_path_is_stuck() {
        let rows = vec![vec![0, 2, 0, 0], vec![-2, 0, 2, 0], vec![0, -2, 0, 2], vec![0, 0, -2, 0]];
        let s = ExchangeSystem::<Rational>::new(ExchangeMatrix::square(rows).unwrap());
        let ProverOutcome::Stuck(stuck) = inductive_prover(&s).unwrap() else { panic!("expected stuck supports") };
        assert!(stuck.contains(&vec![1, 2]));
    }
}
