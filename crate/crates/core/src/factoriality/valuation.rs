use crate::fields::Field;
use crate::poly::{coefficient_of, divide_exact, ExponentVector, MonomialOrder, Polynomial};

use super::{ExchangeSystem, FactorialityError};

/// `P ∈ I_i^a`, decided without Gröbner bases: writing `P = Σ P_k x_i^k`
/// with `P_k` free of `x_i`, membership holds iff `f_i^{a−k}` divides `P_k`
/// for every `k < a`.
pub fn power_membership<F: Field>(sys: &ExchangeSystem<F>, p: &Polynomial<F>, i: usize, a: u32) -> bool {
    let f = sys.exchange_polynomial(i);
    let order = MonomialOrder::grevlex(p.nvars());
    (0..a).all(|k| {
        let pk = coefficient_of(p, i, k);
        pk.is_zero() || divide_exact(&pk, &f.pow(a - k), &order).is_ok()
    })
}

/// `m_i(P)`: the largest `a` with `P ∈ I_i^a`.
pub fn valuation<F: Field>(sys: &ExchangeSystem<F>, p: &Polynomial<F>, i: usize) -> Result<u32, FactorialityError> {
    if p.is_zero() {
        return Err(FactorialityError::ZeroPolynomial);
    }
    // membership fails once a exceeds k0 + deg(P_k0)/deg(f_i) for the
    // lowest nonzero P_k0, so this loop terminates
    let mut a = 0;
    while power_membership(sys, p, i, a + 1) {
        a += 1;
    }
    Ok(a)
}

/// `M(P)`: exponent `m_i(P)` at each mutable index, zero at frozen ones.
pub fn normal_monomial<F: Field>(sys: &ExchangeSystem<F>, p: &Polynomial<F>) -> Result<ExponentVector, FactorialityError> {
    let mut e = vec![0u32; sys.m()];
    for (i, slot) in e.iter_mut().enumerate().take(sys.n()) {
        *slot = valuation(sys, p, i)?;
    }
    Ok(ExponentVector::from_vec(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{builtin_matrix, Builtin};
    use crate::fields::Rational;
    use crate::groebner::ideal_membership;
    use crate::poly::parse_expression;

    type P = Polynomial<Rational>;

    fn p(s: &str, m: usize) -> P {
        parse_expression::<Rational>(s, m).unwrap().to_polynomial().unwrap()
    }

    fn system(b: Builtin) -> ExchangeSystem<Rational> {
        ExchangeSystem::new(builtin_matrix(&b).unwrap())
    }

    #[test]
    fn cyclic_triangle_sum() {
        let s = system(Builtin::CyclicA3);
        let target = p("x1 + x2 + x3", 3);
        for i in 0..3 {
            assert!(power_membership(&s, &target, i, 1));
        }
    }

    #[test]
    fn variables_and_exchange_polynomials() {
        let s = system(Builtin::A(4));
        for i in 0..4 {
            let xi = P::var(4, i);
            assert_eq!(valuation(&s, &xi, i).unwrap(), 1);
            for j in 0..4 {
                if j != i {
                    assert!(!power_membership(&s, &xi, j, 1));
                    assert_eq!(valuation(&s, &xi, j).unwrap(), 0);
                }
                let fj = s.exchange_polynomial(j).clone();
                assert_eq!(valuation(&s, &fj, i).unwrap(), u32::from(i == j));
            }
            let fi = s.exchange_polynomial(i).clone();
            assert!(power_membership(&s, &fi, i, 1));
            assert!(!power_membership(&s, &fi, i, 2));
            assert!(power_membership(&s, &fi, i, 0));
            let v = &xi * &fi.pow(2);
            assert_eq!(valuation(&s, &v, i).unwrap(), 3);
        }
        assert_eq!(valuation(&s, &P::zero(4), 0), Err(FactorialityError::ZeroPolynomial));
    }

    #[test]
    fn normal_monomials() {
        let s = system(Builtin::A(2));
        assert_eq!(normal_monomial(&s, s.exchange_polynomial(0)).unwrap(), ExponentVector::from_vec(vec![1, 0]));
        assert_eq!(normal_monomial(&s, &P::one(2)).unwrap(), ExponentVector::zeros(2));
        let mono = p("x1^2*x2^3", 2);
        assert_eq!(normal_monomial(&s, &mono).unwrap(), ExponentVector::from_vec(vec![2, 3]));
        assert_eq!(normal_monomial(&s, &p("1 + x1 + x2", 2)).unwrap(), ExponentVector::from_vec(vec![1, 1]));
        // frozen exponents stay zero
        let fz = ExchangeSystem::<Rational>::new(
            crate::cluster::ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0], vec![1, 1]], 2).unwrap(),
        );
        assert_eq!(normal_monomial(&fz, &p("x1*x3^4", 3)).unwrap(), ExponentVector::from_vec(vec![1, 0, 0]));
    }

    #[test]
    fn agrees_with_groebner_on_examples() {
        let s = system(Builtin::A(3));
        for (text, i, a) in [("x1 + x2 + x3", 0, 1), ("(1 + x2)^2", 0, 2), ("x1*(1+x2)", 0, 2), ("x2*x3", 1, 1)] {
            let q = p(text, 3);
            let gb = ideal_membership(&q, &s.ideal_power(i, a)).unwrap();
            assert_eq!(power_membership(&s, &q, i, a), gb, "{text} in I_{i}^{a}");
        }
    }
}
