use crate::fields::Field;
use crate::groebner::{ideal_intersection_all, ideal_membership, GroebnerError, Ideal};
use crate::poly::Polynomial;

use super::gls::check_assumptions;
use super::{ExchangeSystem, FactorialityError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjectureOutcome<F: Field> {
    /// `I^a = I_1^{a_1} ∩ … ∩ I_n^{a_n}`.
    Holds,
    /// `witness` lies in the intersection but not in the product.
    Fails { witness: Polynomial<F> },
    /// The Gröbner budget ran out.
    Inconclusive { reason: String },
}

/// All multi-indices of length `n` and total degree `total`, in
/// lexicographically decreasing order.
pub(crate) fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Nonzero multi-indices of length `n` with `1 ≤ |a| ≤ max_total`, by
/// total degree, then lexicographically decreasing.
pub fn multi_indices(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    (1..=max_total).flat_map(|t| compositions(n, t)).collect()
}

/// Generators of `I^a`: products over `i` of `x_i^{r_i} f_i^{a_i − r_i}`.
pub(crate) fn product_generators<F: Field>(sys: &ExchangeSystem<F>, a: &[u32]) -> Vec<Polynomial<F>> {
    let m = sys.m();
    let mut gens = vec![Polynomial::one(m)];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let x = Polynomial::<F>::var(m, i);
        let f = sys.exchange_polynomial(i);
        let factors: Vec<Polynomial<F>> = (0..=ai).map(|r| &x.pow(r) * &f.pow(ai - r)).collect();
        gens = gens.iter().flat_map(|g| factors.iter().map(move |h| g * h)).collect();
    }
    gens
}

pub(crate) fn check_unguarded<F: Field>(
    sys: &ExchangeSystem<F>,
    a: &[u32],
) -> Result<ConjectureOutcome<F>, FactorialityError> {
    sys.check_multi_index(a)?;
    if a.iter().all(|&x| x == 0) {
        return Ok(ConjectureOutcome::Holds);
    }
    match compare(sys, a) {
        Err(FactorialityError::Groebner(GroebnerError::Budget { reductions, basis_size })) => {
            Ok(ConjectureOutcome::Inconclusive {
                reason: format!("Gröbner budget exhausted after {reductions} reductions (basis size {basis_size})"),
            })
        }
        other => other,
    }
}

fn compare<F: Field>(sys: &ExchangeSystem<F>, a: &[u32]) -> Result<ConjectureOutcome<F>, FactorialityError> {
    let powers: Vec<Ideal<F>> =
        a.iter().enumerate().filter(|(_, &ai)| ai > 0).map(|(i, &ai)| sys.ideal_power(i, ai)).collect();
    let intersection = ideal_intersection_all(&powers)?.with_budget(sys.budget());
    let product = Ideal::new(sys.m(), product_generators(sys, a))?.with_budget(sys.budget());
    for g in product.generators() {
        if !ideal_membership(g, &intersection)? {
            return Err(FactorialityError::Internal(format!("product generator {g} is not in the intersection")));
        }
    }
    for g in intersection.groebner_basis()?.basis() {
        if !ideal_membership(g, &product)? {
            return Ok(ConjectureOutcome::Fails { witness: g.clone() });
        }
    }
    Ok(ConjectureOutcome::Holds)
}

/// Compares the product `I^a` with the intersection of the powers
/// `I_i^{a_i}`. Requires the standing assumptions on the seed unless
/// `override_assumptions` is set.
pub fn conjecture_check<F: Field>(
    sys: &ExchangeSystem<F>,
    a: &[u32],
    override_assumptions: bool,
) -> Result<ConjectureOutcome<F>, FactorialityError> {
    if !override_assumptions {
        if let Some(why) = check_assumptions(sys).first_failure() {
            return Err(FactorialityError::AssumptionViolated(why.to_string()));
        }
    }
    check_unguarded(sys, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{builtin_matrix, Builtin};
    use crate::fields::Rational;
    use crate::groebner::{normal_form, Budget};
    use crate::poly::parse_expression;

    fn system(b: Builtin) -> ExchangeSystem<Rational> {
        ExchangeSystem::new(builtin_matrix(&b).unwrap())
    }

    #[test]
    fn enumeration_of_multi_indices() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(3, 2).len(), 3 + 6);
        assert_eq!(multi_indices(4, 4).len(), 69);
    }

    #[test]
    fn cyclic_triangle_fails() {
        let s = system(Builtin::CyclicA3);
        assert!(matches!(conjecture_check(&s, &[1, 1, 1], false), Err(FactorialityError::AssumptionViolated(_))));
        let ConjectureOutcome::Fails { witness } = conjecture_check(&s, &[1, 1, 1], true).unwrap() else {
            panic!("expected a failure");
        };
        // the witness is a nonzero multiple of x1 + x2 + x3 modulo the product
        let product = Ideal::new(3, product_generators(&s, &[1, 1, 1])).unwrap();
        let gb = product.groebner_basis().unwrap();
        let w = normal_form(&witness, gb);
        let sum = normal_form(&parse_expression::<Rational>("x1 + x2 + x3", 3).unwrap().to_polynomial().unwrap(), gb);
        assert!(!w.is_zero());
        let c = w.terms()[0].1.checked_div(&sum.terms()[0].1).unwrap();
        assert_eq!(w, sum.scale(&c));
    }

    #[test]
    fn linear_a2_holds_to_degree_four() {
        let s = system(Builtin::A(2));
        for a in multi_indices(2, 4) {
            assert_eq!(conjecture_check(&s, &a, false).unwrap(), ConjectureOutcome::Holds, "a = {a:?}");
        }
    }

    #[test]
    fn zero_index_and_length_checks() {
        let s = system(Builtin::A(2));
        assert_eq!(conjecture_check(&s, &[0, 0], false).unwrap(), ConjectureOutcome::Holds);
        assert_eq!(
            conjecture_check(&s, &[1], false),
            Err(FactorialityError::MultiIndexLength { got: 1, expected: 2 })
        );
        let cyc = system(Builtin::CyclicA3);
        assert_eq!(conjecture_check(&cyc, &[0, 0, 0], true).unwrap(), ConjectureOutcome::Holds);
    }

    #[test]
    fn budget_is_inconclusive() {
        let s = system(Builtin::A(2)).with_budget(Budget { max_reductions: 0, max_basis: 10 });
        assert!(matches!(conjecture_check(&s, &[2, 2], false).unwrap(), ConjectureOutcome::Inconclusive { .. }));
    }
}
