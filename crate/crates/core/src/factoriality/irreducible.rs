use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::fields::{Field, FieldTag};
use crate::poly::{divide_exact, ExponentVector, MonomialOrder, Polynomial};

use super::FactorialityError;

/// Upper bound on candidate factors tried by [`brute_force_factor`].
pub const SEARCH_CANDIDATE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialStatus {
    Irreducible,
    Reducible,
    NotBinomial,
}

/// Irreducibility of `x^u + x^v` (unit coefficients, disjoint supports)
/// over the coefficient field `F`, from the gcd `d` of all exponents:
/// over ℚ irreducible iff `d` is a power of two, over ℚ(i) iff `d = 1`.
pub fn binomial_irreducible<F: Field>(f: &Polynomial<F>) -> BinomialStatus {
    let [(u, cu), (v, cv)] = f.terms() else { return BinomialStatus::NotBinomial };
    if !cu.is_one() || !cv.is_one() || !u.is_coprime(v) {
        return BinomialStatus::NotBinomial;
    }
    let d = u.as_slice().iter().chain(v.as_slice()).fold(0u32, |g, &e| g.gcd(&e));
    let irreducible = match F::TAG {
        FieldTag::Q => d.is_power_of_two(),
        FieldTag::Qi => d == 1,
    };
    if irreducible {
        BinomialStatus::Irreducible
    } else {
        BinomialStatus::Reducible
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSearch<F: Field> {
    /// `factors.0 * factors.1 == f`, both nonconstant.
    Found { factors: (Polynomial<F>, Polynomial<F>) },
    /// No factor among the candidates. `exhausted` is false when the
    /// candidate limit cut the search short. Never a proof of
    /// irreducibility: coefficients are drawn from `F::search_alphabet()`.
    NoneFound { exhausted: bool, candidates: usize },
}

/// Integer basis of the rational nullspace of `rows`.
fn nullspace(rows: &[Vec<i64>], m: usize) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                for k in 0..m {
                    let t = &a[row][k] * &c;
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivots.contains(c)) {
        let mut w = vec![BigRational::zero(); m];
        w[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            w[pc] = -a[r][free].clone();
        }
        let l = w.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        basis.push(w.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer().to_i128().unwrap()).collect());
    }
    basis
}

/// Exponent vectors `e` with `e ≤ bound` componentwise and `|e| ≤ max_total`.
fn bounded_monomials(bound: &[u32], max_total: u32) -> Vec<Vec<u32>> {
    fn go(bound: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == bound.len() {
            out.push(cur.clone());
            return;
        }
        let b = bound[cur.len()].min(left);
        for e in 0..=b {
            cur.push(e);
            go(bound, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, max_total, &mut Vec::new(), &mut out);
    out
}

fn normalize_pair<F: Field>(a: Polynomial<F>, b: Polynomial<F>) -> (Polynomial<F>, Polynomial<F>) {
    // constant term 1 on the first factor that has one, then a fixed order
    let (a, b) = match (a.constant_term(), b.constant_term()) {
        (c, _) if !c.is_zero() => (a.scale(&c.inv().unwrap()), b.scale(&c)),
        (_, c) if !c.is_zero() => (a.scale(&c), b.scale(&c.inv().unwrap())),
        _ => (a, b),
    };
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Searches for a factor of `f` of total degree at most
/// `min(max_degree, deg f / 2)`.
///
/// Every factor of `f` is homogeneous for each grading under which `f` is,
/// so candidates are grouped by their degrees under a basis of those
/// gradings. Within a group the candidate has leading coefficient 1 and
/// its other coefficients range over `F::search_alphabet()`; the cofactor
/// is solved for by exact division.
pub fn brute_force_factor<F: Field>(f: &Polynomial<F>, max_degree: u32) -> Result<FactorSearch<F>, FactorialityError> {
    if f.is_constant() {
        return Err(FactorialityError::Unit);
    }
    let m = f.nvars();
    let order = MonomialOrder::grevlex(m);
    let content = f.monomial_content();
    if let Some(v) = content.support().next() {
        let x = Polynomial::var(m, v);
        let rest = f.div_monomial(&ExponentVector::unit(m, v)).unwrap();
        if rest.is_constant() {
            return Ok(FactorSearch::NoneFound { exhausted: true, candidates: 0 });
        }
        return Ok(FactorSearch::Found { factors: normalize_pair(x, rest) });
    }
    let terms = f.terms();
    let e0 = terms[0].0.as_slice();
    let diffs: Vec<Vec<i64>> = terms[1..]
        .iter()
        .map(|(e, _)| e.as_slice().iter().zip(e0).map(|(&a, &b)| a as i64 - b as i64).collect())
        .collect();
    let weights = nullspace(&diffs, m);
    let key = |e: &[u32]| -> Vec<i128> {
        weights.iter().map(|w| w.iter().zip(e).map(|(&wi, &ei)| wi * ei as i128).sum()).collect()
    };
    let bound: Vec<u32> = (0..m).map(|v| f.degree_in(v)).collect();
    let dmax = max_degree.min(f.degree().unwrap() / 2);
    let mut classes: BTreeMap<Vec<i128>, Vec<ExponentVector>> = BTreeMap::new();
    for e in bounded_monomials(&bound, dmax) {
        let k = key(&e);
        classes.entry(k).or_default().push(ExponentVector::from_vec(e));
    }
    let mut classes: Vec<Vec<ExponentVector>> = classes.into_values().filter(|c| c.len() >= 2).collect();
    for c in classes.iter_mut() {
        c.sort_by(|a, b| order.cmp(b, a));
    }
    classes.sort_by_key(|c| c.len());

    let (lt_f, tt_f) = (&terms[0].0, &terms[terms.len() - 1].0);
    let alphabet = F::search_alphabet();
    let base = alphabet.len();
    let mut tried = 0usize;
    let mut exhausted = true;
    for class in &classes {
        // the candidate's leading monomial is class[lead]
        for lead in 0..class.len() - 1 {
            let tail = &class[lead + 1..];
            let count = base.checked_pow(tail.len() as u32).filter(|&c| tried + c <= SEARCH_CANDIDATE_LIMIT);
            let Some(count) = count else {
                exhausted = false;
                continue;
            };
            for code in 0..count {
                let mut digits = code;
                let mut cand = vec![(class[lead].clone(), F::one())];
                for e in tail {
                    let c = &alphabet[digits % base];
                    digits /= base;
                    if !c.is_zero() {
                        cand.push((e.clone(), c.clone()));
                    }
                }
                if cand.len() < 2 {
                    continue;
                }
                let g = Polynomial::from_terms(m, cand);
                if !g.monomial_content().is_one() {
                    continue;
                }
                tried += 1;
                // leading and trailing monomials of a factor divide those of f
                let gt = g.terms();
                if !gt[0].0.divides(lt_f) || !gt[gt.len() - 1].0.divides(tt_f) {
                    continue;
                }
                if let Ok(q) = divide_exact(f, &g, &order) {
                    return Ok(FactorSearch::Found { factors: normalize_pair(g, q) });
                }
            }
        }
    }
    Ok(FactorSearch::NoneFound { exhausted, candidates: tried })
}
