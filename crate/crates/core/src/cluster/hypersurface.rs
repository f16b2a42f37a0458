use crate::fields::Field;
use crate::poly::{LaurentPolynomial, Polynomial};

use super::builtin::{builtin_seed, Builtin};
use super::mutate_seed;

/// The formal relation `P_n` in `2n` variables: `x_1..x_n` at indices
/// `0..n` and the adjacent variables `x'_1..x'_n` at `n..2n`.
///
/// `P_2 = x1 x1' x2' − x1 − x2' − 1`,
/// `P_3 = x1 x1' x2' x3' − x2' x3' − x1 x3' − x1 x1'`, then
/// `P_k = x'_k P_{k−1} + x'_k − P_{k−2} − 2`.
pub fn hypersurface_polynomial<F: Field>(n: usize) -> Polynomial<F> {
    assert!(n >= 2, "the relation starts at n = 2");
    let v = 2 * n;
    let x = |i: usize| Polynomial::<F>::var(v, i - 1);
    let xp = |i: usize| Polynomial::<F>::var(v, n + i - 1);
    let one = Polynomial::<F>::one(v);
    let two = Polynomial::<F>::constant(v, F::from_int(2));
    let p2 = &(&(&(&(&x(1) * &xp(1)) * &xp(2)) - &x(1)) - &xp(2)) - &one;
    if n == 2 {
        return p2;
    }
    let p3 = &(&(&(&(&(&x(1) * &xp(1)) * &xp(2)) * &xp(3)) - &(&xp(2) * &xp(3))) - &(&x(1) * &xp(3)))
        - &(&x(1) * &xp(1));
    let (mut prev, mut cur) = (p2, p3);
    for k in 4..=n {
        let next = &(&(&(&xp(k) * &cur) + &xp(k)) - &prev) - &two;
        prev = cur;
        cur = next;
    }
    cur
}

/// Substitutes the one-step mutations of the linear `A_n` seed into `P_n`
/// and tests for zero.
pub fn hypersurface_relation_check<F: Field>(n: usize) -> bool {
    let p = hypersurface_polynomial::<F>(n);
    let seed = builtin_seed::<F>(&Builtin::A(n)).expect("n >= 2");
    let mut values: Vec<LaurentPolynomial<F>> = seed.cluster().to_vec();
    for i in 0..n {
        values.push(mutate_seed(&seed, i).expect("index in range").cluster()[i].clone());
    }
    p.evaluate_laurent(&values).is_zero()
}
