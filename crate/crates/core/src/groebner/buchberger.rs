use std::collections::BTreeSet;

use crate::fields::Field;
use crate::poly::{sort_terms, sub_scaled_shifted, ExponentVector, MonomialOrder, Term};

use super::{Budget, GroebnerError};

/// Term list sorted descending by the active order; never empty inside the
/// kernel.
pub(crate) type Sorted<F> = Vec<Term<F>>;

pub(crate) fn make_monic<F: Field>(p: &mut Sorted<F>) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in p.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

/// Full reduction of `p` modulo `basis` (every term, not just the leading
/// one).
pub(crate) fn reduce<F: Field>(p: Sorted<F>, basis: &[&Sorted<F>], order: &MonomialOrder) -> Sorted<F> {
    let mut p = p;
    let mut rem = Vec::new();
    let mut start = 0;
    // `p[start..]` is still to be reduced; `rem` is final
    while start < p.len() {
        let (e, c) = &p[start];
        match basis.iter().find(|g| g[0].0.divides(e)) {
            Some(g) => {
                let shift = e.checked_div(&g[0].0).unwrap();
                let coeff = c.checked_div(&g[0].1).expect("nonzero leading coefficient");
                p = sub_scaled_shifted(&p[start..], g, &coeff, &shift, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn s_poly<F: Field>(f: &Sorted<F>, g: &Sorted<F>, order: &MonomialOrder) -> Sorted<F> {
    let l = f[0].0.lcm(&g[0].0);
    let sf = l.checked_div(&f[0].0).unwrap();
    let sg = l.checked_div(&g[0].0).unwrap();
    let cf = f[0].1.inv().unwrap();
    let cg = g[0].1.inv().unwrap();
    let a: Sorted<F> = f.iter().map(|(e, c)| (e.mul(&sf), c.mul(&cf))).collect();
    sub_scaled_shifted(&a, g, &cg, &sg, order)
}

/// The S-polynomial of `f` and `g` under `order`.
pub fn s_polynomial<F: Field>(
    f: &crate::poly::Polynomial<F>,
    g: &crate::poly::Polynomial<F>,
    order: &MonomialOrder,
) -> crate::poly::Polynomial<F> {
    let (a, b) = (f.terms_by(order), g.terms_by(order));
    crate::poly::Polynomial::from_terms(f.nvars(), s_poly(&a, &b, order))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

/// Pair queue ordered by (lcm degree, newer index, older index), which is
/// the normal selection strategy with a deterministic tie-break.
struct Pairs {
    queue: BTreeSet<(u32, usize, usize)>,
}

impl Pairs {
    fn key(p: &Pair) -> (u32, usize, usize) {
        (p.lcm.degree(), p.j, p.i)
    }
}

/// Buchberger's algorithm with the Gebauer–Möller update. Returns the
/// reduced basis sorted ascending by leading monomial.
pub(crate) fn run<F: Field>(
    generators: Vec<Sorted<F>>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Sorted<F>>, GroebnerError> {
    let mut basis: Vec<Sorted<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs = Pairs { queue: BTreeSet::new() };
    let mut lcms: std::collections::HashMap<(usize, usize), ExponentVector> = Default::default();
    let mut reductions: u64 = 0;

    let mut pending: Vec<Sorted<F>> = generators;
    pending.reverse();
    loop {
        let h = if let Some(g) = pending.pop() {
            let refs: Vec<&Sorted<F>> = basis.iter().collect();
            reduce(g, &refs, order)
        } else if let Some(&key) = pairs.queue.iter().next() {
            pairs.queue.remove(&key);
            let (_, j, i) = key;
            lcms.remove(&(i, j));
            reductions += 1;
            if reductions > budget.max_reductions {
                return Err(GroebnerError::Budget { reductions, basis_size: basis.len() });
            }
            let s = s_poly(&basis[i], &basis[j], order);
            let refs: Vec<&Sorted<F>> = basis.iter().collect();
            reduce(s, &refs, order)
        } else {
            break;
        };
        if h.is_empty() {
            continue;
        }
        let mut h = h;
        make_monic(&mut h);
        if h[0].0.is_one() {
            return Ok(vec![h]);
        }
        if basis.len() >= budget.max_basis {
            return Err(GroebnerError::Budget { reductions, basis_size: basis.len() + 1 });
        }
        let t = basis.len();
        let lt_h = h[0].0.clone();
        basis.push(h);
        active.push(true);

        // Gebauer–Möller: new pairs (g, h)
        let candidates: Vec<Pair> = (0..t)
            .filter(|&g| active[g])
            .map(|g| Pair { i: g, j: t, lcm: basis[g][0].0.lcm(&lt_h) })
            .collect();
        let coprime = |p: &Pair| basis[p.i][0].0.is_coprime(&lt_h);
        let mut kept: Vec<&Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            if coprime(p) {
                kept.push(p);
                continue;
            }
            let dominated_later = candidates[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if !dominated_later && !dominated_kept {
                kept.push(p);
            }
        }
        // chain criterion on old pairs
        let stale: Vec<(u32, usize, usize)> = pairs
            .queue
            .iter()
            .copied()
            .filter(|&(_, j, i)| {
                let l = &lcms[&(i, j)];
                lt_h.divides(l) && basis[i][0].0.lcm(&lt_h) != *l && basis[j][0].0.lcm(&lt_h) != *l
            })
            .collect();
        for key in stale {
            pairs.queue.remove(&key);
            lcms.remove(&(key.2, key.1));
        }
        for p in kept {
            if coprime(p) {
                continue;
            }
            pairs.queue.insert(Pairs::key(p));
            lcms.insert((p.i, p.j), p.lcm.clone());
        }
        for g in 0..t {
            if active[g] && lt_h.divides(&basis[g][0].0) {
                active[g] = false;
            }
        }
    }

    // minimal basis from the active elements, then interreduce
    let mut minimal: Vec<Sorted<F>> = basis
        .into_iter()
        .zip(active)
        .filter_map(|(g, a)| a.then_some(g))
        .collect();
    let mut k = 0;
    while k < minimal.len() {
        let lt = minimal[k][0].0.clone();
        let redundant = minimal.iter().enumerate().any(|(o, g)| o != k && g[0].0.divides(&lt));
        if redundant {
            minimal.remove(k);
        } else {
            k += 1;
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Sorted<F>> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g).collect();
        let head = minimal[k][0].clone();
        let tail = reduce(minimal[k][1..].to_vec(), &others, order);
        let mut g = Vec::with_capacity(tail.len() + 1);
        g.push(head);
        g.extend(tail);
        make_monic(&mut g);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced)
}

/// Sorts polynomial terms for use by the kernel.
pub(crate) fn to_sorted<F: Field>(p: &crate::poly::Polynomial<F>, order: &MonomialOrder) -> Sorted<F> {
    sort_terms(p.terms().to_vec(), order)
}
