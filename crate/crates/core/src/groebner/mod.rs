//! Gröbner bases over exact fields: Buchberger's algorithm, normal forms,
//! membership, intersection by elimination, products and equality.

mod buchberger;

use std::sync::OnceLock;

use thiserror::Error;

use crate::fields::Field;
use crate::poly::{MonomialOrder, Polynomial};

pub use buchberger::s_polynomial;
use buchberger::{reduce, to_sorted, Sorted};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource budget exceeded after {reductions} S-pair reductions with {basis_size} basis elements")]
    Budget { reductions: u64, basis_size: usize },
    #[error("the zero ideal is not accepted here")]
    ZeroIdeal,
    #[error("ambient dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
}

/// Limits for a single Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_reductions: u64,
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_reductions: 1_000_000, max_basis: 10_000 }
    }
}

/// A reduced Gröbner basis, sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    basis: Vec<Polynomial<F>>,
    sorted: Vec<Sorted<F>>,
    order: MonomialOrder,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_sorted(nvars: usize, sorted: Vec<Sorted<F>>, order: MonomialOrder) -> Self {
        let basis = sorted.iter().map(|g| Polynomial::from_terms(nvars, g.iter().cloned())).collect();
        GroebnerBasis { basis, sorted, order, reduced: true }
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        normal_form(p, self).is_zero()
    }
}

/// An ideal given by generators, with a write-once cache of its grevlex
/// Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    budget: Budget,
    grevlex: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; the zero ideal is rejected.
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Result<Self, GroebnerError> {
        let mut gens: Vec<Polynomial<F>> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.nvars() != nvars {
                return Err(GroebnerError::DimensionMismatch { left: nvars, right: g.nvars() });
            }
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(GroebnerError::ZeroIdeal);
        }
        Ok(Ideal { nvars, generators: gens, budget: Budget::default(), grevlex: OnceLock::new() })
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Polynomial::one(nvars)]).unwrap()
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        if budget != self.budget {
            self.budget = budget;
            self.grevlex = OnceLock::new();
        }
        self
    }

    /// Ideal whose grevlex basis is already known.
    fn from_basis(gb: GroebnerBasis<F>, budget: Budget) -> Self {
        let nvars = gb.nvars();
        let gens = if gb.basis.is_empty() { vec![Polynomial::zero(nvars)] } else { gb.basis.clone() };
        let cache = OnceLock::new();
        let _ = cache.set(gb);
        Ideal { nvars, generators: gens, budget, grevlex: cache }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Reduced grevlex basis, computed once.
    pub fn groebner_basis(&self) -> Result<&GroebnerBasis<F>, GroebnerError> {
        if let Some(gb) = self.grevlex.get() {
            return Ok(gb);
        }
        let gb = buchberger_with_budget(&self.generators, &MonomialOrder::grevlex(self.nvars), &self.budget)?;
        Ok(self.grevlex.get_or_init(|| gb))
    }

    fn check_dims(&self, other: &Self) -> Result<(), GroebnerError> {
        if self.nvars != other.nvars {
            return Err(GroebnerError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }
}

pub fn buchberger<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> Result<GroebnerBasis<F>, GroebnerError> {
    if *order == MonomialOrder::grevlex(ideal.nvars) {
        return ideal.groebner_basis().cloned();
    }
    buchberger_with_budget(&ideal.generators, order, &ideal.budget)
}

pub fn buchberger_with_budget<F: Field>(
    generators: &[Polynomial<F>],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let nvars = order.nvars();
    let mut gens: Vec<Sorted<F>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            assert_eq!(g.nvars(), nvars, "generator dimension differs from the order");
            to_sorted(g, order)
        })
        .collect();
    // smaller generators first keeps intermediate bases small
    gens.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    let sorted = buchberger::run(gens, order, budget)?;
    Ok(GroebnerBasis::from_sorted(nvars, sorted, order.clone()))
}

/// The remainder of `p` modulo `gb`; zero iff `p` lies in the ideal.
pub fn normal_form<F: Field>(p: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Polynomial<F> {
    assert_eq!(p.nvars(), gb.nvars(), "polynomial dimension differs from the basis");
    let refs: Vec<&Sorted<F>> = gb.sorted.iter().collect();
    let rem = reduce(to_sorted(p, &gb.order), &refs, &gb.order);
    Polynomial::from_terms(p.nvars(), rem)
}

pub fn ideal_membership<F: Field>(p: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool, GroebnerError> {
    if p.nvars() != ideal.nvars {
        return Err(GroebnerError::DimensionMismatch { left: ideal.nvars, right: p.nvars() });
    }
    if p.is_zero() {
        return Ok(true);
    }
    Ok(normal_form(p, ideal.groebner_basis()?).is_zero())
}

/// `J ⊆ I`.
pub fn ideal_contains<F: Field>(ideal: &Ideal<F>, sub: &Ideal<F>) -> Result<bool, GroebnerError> {
    ideal.check_dims(sub)?;
    let gb = ideal.groebner_basis()?;
    Ok(sub.generators.iter().all(|g| normal_form(g, gb).is_zero()))
}

pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool, GroebnerError> {
    Ok(ideal_contains(a, b)? && ideal_contains(b, a)?)
}

pub fn is_unit_ideal<F: Field>(ideal: &Ideal<F>) -> Result<bool, GroebnerError> {
    Ok(ideal.groebner_basis()?.is_unit())
}

pub fn ideal_sum<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>, GroebnerError> {
    a.check_dims(b)?;
    let gens = a.generators.iter().chain(&b.generators).cloned().collect();
    Ok(Ideal::new(a.nvars, gens)?.with_budget(a.budget))
}

/// Generators are all pairwise products of generators.
pub fn ideal_product<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>, GroebnerError> {
    a.check_dims(b)?;
    let mut gens = Vec::with_capacity(a.generators.len() * b.generators.len());
    for g in &a.generators {
        for h in &b.generators {
            gens.push(g * h);
        }
    }
    Ok(Ideal::new(a.nvars, gens)?.with_budget(a.budget))
}

/// `I ∩ J` as the `t`-free part of a basis of `t·I + (1 − t)·J` under an
/// order eliminating the auxiliary variable `t`.
pub fn ideal_intersection<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>, GroebnerError> {
    a.check_dims(b)?;
    let m = a.nvars;
    if is_unit_ideal(a)? {
        return Ok(b.clone());
    }
    if is_unit_ideal(b)? {
        return Ok(a.clone());
    }
    let t = Polynomial::<F>::var(m + 1, m);
    let one_minus_t = &Polynomial::one(m + 1) - &t;
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(&g.with_nvars(m + 1) * &t);
    }
    for g in &b.generators {
        gens.push(&g.with_nvars(m + 1) * &one_minus_t);
    }
    let order = MonomialOrder::eliminating(m + 1, &[m]);
    let full = buchberger_with_budget(&gens, &order, &a.budget)?;
    let restricted = MonomialOrder::grevlex(m);
    let sorted: Vec<Sorted<F>> = full
        .sorted
        .iter()
        .filter(|g| g.iter().all(|(e, _)| e.get(m) == 0))
        .map(|g| g.iter().map(|(e, c)| (e.resized(m), c.clone())).collect())
        .collect();
    debug_assert!(!sorted.is_empty(), "intersection of nonzero ideals is nonzero");
    // the t-free part of a reduced elimination basis is the reduced grevlex
    // basis of the intersection; block order restricts to grevlex here
    let mut sorted = sorted;
    sorted.sort_by(|x, y| restricted.cmp(&x[0].0, &y[0].0));
    Ok(Ideal::from_basis(GroebnerBasis::from_sorted(m, sorted, restricted), a.budget))
}

/// Left-to-right pairwise intersection.
pub fn ideal_intersection_all<F: Field>(ideals: &[Ideal<F>]) -> Result<Ideal<F>, GroebnerError> {
    let (first, rest) = ideals.split_first().ok_or(GroebnerError::ZeroIdeal)?;
    let mut acc = first.clone();
    for next in rest {
        acc = ideal_intersection(&acc, next)?;
    }
    Ok(acc)
}

/// `I^k` with generators the `k`-fold products.
pub fn ideal_power<F: Field>(ideal: &Ideal<F>, k: u32) -> Result<Ideal<F>, GroebnerError> {
    let mut acc = Ideal::unit(ideal.nvars).with_budget(ideal.budget);
    for _ in 0..k {
        acc = ideal_product(&acc, ideal)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
