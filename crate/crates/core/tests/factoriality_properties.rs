use cluster_ufd::cluster::{builtin_matrix, Builtin, ExchangeMatrix};
use cluster_ufd::factoriality::{power_membership, valuation, ExchangeSystem};
use cluster_ufd::fields::{Field, Rational};
use cluster_ufd::groebner::{ideal_intersection_all, ideal_membership, ideal_sum, is_unit_ideal};
use cluster_ufd::poly::{ExponentVector, Polynomial};
use proptest::prelude::*;

type P = Polynomial<Rational>;

/// Connected acyclic seeds: arrows follow a random vertex order, a path
/// through that order keeps the quiver connected, entries lie in {1, 2}
/// so every exchange binomial is irreducible over ℚ.
fn arb_acyclic(max_n: usize) -> impl Strategy<Value = ExchangeMatrix> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(0i64..=2, n * n),
                proptest::collection::vec(1i64..=2, n),
                proptest::collection::vec(-1i64..=1, n),
                any::<bool>(),
            )
        })
        .prop_map(|(n, perm, raw, path, frozen_row, frozen)| {
            let mut rows = vec![vec![0i64; n]; n];
            for s in 0..n {
                for t in s + 1..n {
                    let w = if t == s + 1 { path[s] } else { raw[s * n + t] };
                    let (i, j) = (perm[s], perm[t]);
                    rows[i][j] = w;
                    rows[j][i] = -w;
                }
            }
            if frozen {
                rows.push(frozen_row);
            }
            ExchangeMatrix::new(rows, n).unwrap()
        })
}

fn arb_seed() -> impl Strategy<Value = ExchangeMatrix> {
    prop_oneof![
        arb_acyclic(5),
        (2usize..=5).prop_map(|n| builtin_matrix(&Builtin::A(n)).unwrap()),
        Just(builtin_matrix(&Builtin::E(6)).unwrap()),
        Just(builtin_matrix(&Builtin::Kronecker).unwrap()),
        Just(builtin_matrix(&Builtin::Rank2(1, 4)).unwrap()),
    ]
}

fn random_poly(m: usize, terms: &[(i64, Vec<u32>)]) -> P {
    let p = P::from_terms(
        m,
        terms.iter().map(|(c, e)| (ExponentVector::from_vec(e[..m].to_vec()), Rational::from_int(*c))),
    );
    if p.is_zero() {
        P::one(m)
    } else {
        p
    }
}

fn arb_terms() -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    proptest::collection::vec((-3i64..=3, proptest::collection::vec(0u32..=2, 8)), 1..=3)
}

/// `x_i^r f_i^s R` for a random `R`.
fn built(sys: &ExchangeSystem<Rational>, i: usize, r: u32, s: u32, terms: &[(i64, Vec<u32>)]) -> P {
    let m = sys.m();
    &(&P::var(m, i).pow(r) * &sys.exchange_polynomial(i).pow(s)) * &random_poly(m, terms)
}

fn product_generators(sys: &ExchangeSystem<Rational>, a: &[u32]) -> Vec<P> {
    let m = sys.m();
    let mut gens = vec![P::one(m)];
    for (i, &ai) in a.iter().enumerate() {
        let factors: Vec<P> =
            (0..=ai).map(|r| &P::var(m, i).pow(r) * &sys.exchange_polynomial(i).pow(ai - r)).collect();
        gens = gens.iter().flat_map(|g| factors.iter().map(move |h| g * h)).collect();
    }
    gens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn valuation_is_additive(
        b in arb_seed(), i in 0usize..8, r in 0u32..3, s in 0u32..3, t in 0u32..3, u in 0u32..3,
        pt in arb_terms(), qt in arb_terms(),
    ) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let i = i % sys.n();
        let p = built(&sys, i, r, s, &pt);
        let q = built(&sys, i, t, u, &qt);
        let vp = valuation(&sys, &p, i).unwrap();
        let vq = valuation(&sys, &q, i).unwrap();
        prop_assert!(vp >= r + s && vq >= t + u);
        prop_assert_eq!(valuation(&sys, &(&p * &q), i).unwrap(), vp + vq);
    }

    #[test]
    fn powers_are_primary_and_the_ideal_is_prime(
        b in arb_seed(), i in 0usize..8, r in 0u32..3, s in 0u32..3, t in 0u32..2, u in 0u32..2,
        a in 1u32..=3, pt in arb_terms(), qt in arb_terms(),
    ) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let i = i % sys.n();
        let p = built(&sys, i, r, s, &pt);
        let q = built(&sys, i, t, u, &qt);
        let pq = &p * &q;
        if power_membership(&sys, &pq, i, a) {
            prop_assert!(power_membership(&sys, &p, i, a) || power_membership(&sys, &q, i, 1));
        }
        if power_membership(&sys, &pq, i, 1) {
            prop_assert!(power_membership(&sys, &p, i, 1) || power_membership(&sys, &q, i, 1));
        }
    }

    #[test]
    fn membership_oracles_agree(
        b in arb_seed(), i in 0usize..8, a in 0u32..=3,
        mults in proptest::collection::vec(arb_terms(), 4), noise in arb_terms(), add_noise in any::<bool>(),
    ) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let (i, m) = (i % sys.n(), sys.m());
        let gens = sys.ideal_power(i, a).generators().to_vec();
        let mut p = P::zero(m);
        for (g, t) in gens.iter().zip(&mults) {
            p = &p + &(g * &random_poly(m, t));
        }
        if add_noise {
            p = &p + &random_poly(m, &noise);
        }
        let by_gb = ideal_membership(&p, &sys.ideal_power(i, a)).unwrap();
        prop_assert_eq!(power_membership(&sys, &p, i, a), by_gb);
    }

    #[test]
    fn product_lies_in_intersection(b in arb_seed(), a in proptest::collection::vec(0u32..=3, 8)) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let n = sys.n();
        let mut a = a[..n].to_vec();
        while a.iter().sum::<u32>() > 3 {
            let k = a.iter().position(|&x| x > 0).unwrap();
            a[k] -= 1;
        }
        for g in product_generators(&sys, &a) {
            for (i, &ai) in a.iter().enumerate() {
                prop_assert!(power_membership(&sys, &g, i, ai));
            }
        }
    }

    #[test]
    fn expansion_in_powers_of_f_agrees(b in arb_seed(), i in 0usize..8, a in 0u32..=3, pt in arb_terms(), qt in arb_terms()) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let (i, m) = (i % sys.n(), sys.m());
        let f = sys.exchange_polynomial(i).clone();
        // f_i = x_k + M_i with M_i a monomial
        let Some(k) = f.terms().iter().find(|(e, c)| c.is_one() && e.degree() == 1).and_then(|(e, _)| e.support().next())
        else { return Ok(()) };
        let mi = &f - &P::var(m, k);
        let p = &built(&sys, i, 1, 1, &pt) + &random_poly(m, &qt);
        // substituting x_k -> x_k - M_i turns I_i into (x_i, x_k)
        let shifted = p.substitute(k, &(&P::var(m, k) - &mi));
        let direct = shifted.terms().iter().all(|(e, _)| e.get(i) + e.get(k) >= a);
        prop_assert_eq!(power_membership(&sys, &p, i, a), direct);
    }

    #[test]
    fn sinks_and_sources_are_coprime_to_neighbours(b in arb_acyclic(6)) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let mat = sys.matrix();
        for i in (0..sys.n()).filter(|&i| mat.is_sink(i) || mat.is_source(i)) {
            for j in mat.neighbors(i) {
                let sum = ideal_sum(&sys.exchange_ideal(i), &sys.exchange_ideal(j)).unwrap();
                prop_assert!(is_unit_ideal(&sum).unwrap());
            }
        }
    }
}

#[test]
fn sink_source_pairs_of_named_seeds_are_coprime() {
    let mut checked = 0;
    for b in (2..=8).map(Builtin::A).chain([Builtin::E(6)]) {
        let sys = ExchangeSystem::<Rational>::new(builtin_matrix(&b).unwrap());
        let mat = sys.matrix();
        for i in (0..sys.n()).filter(|&i| mat.is_sink(i) || mat.is_source(i)) {
            for j in mat.neighbors(i) {
                let sum = ideal_sum(&sys.exchange_ideal(i), &sys.exchange_ideal(j)).unwrap();
                assert!(is_unit_ideal(&sum).unwrap(), "{b}: I{} + I{}", i + 1, j + 1);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn intersection_basis_passes_componentwise_test(b in arb_seed(), a in proptest::collection::vec(0u32..=2, 8)) {
        let sys = ExchangeSystem::<Rational>::new(b);
        let a = &a[..sys.n()];
        prop_assume!(a.iter().any(|&x| x > 0));
        let powers: Vec<_> = a.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| sys.ideal_power(i, x)).collect();
        let inter = ideal_intersection_all(&powers).unwrap();
        for g in inter.groebner_basis().unwrap().basis() {
            for (i, &ai) in a.iter().enumerate() {
                prop_assert!(power_membership(&sys, g, i, ai), "{} not in I_{}^{}", g, i + 1, ai);
            }
        }
        for g in product_generators(&sys, a) {
            prop_assert!(ideal_membership(&g, &inter).unwrap());
        }
    }
}
