use std::collections::VecDeque;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use super::ClusterError;

/// An `m × n` integer exchange matrix: rows `0..n` are the mutable
/// (principal) part, rows `n..m` the frozen part. All indices are
/// zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExchangeMatrix {
    m: usize,
    n: usize,
    entries: Vec<Vec<i64>>,
}

/// Outcome of the skew-symmetrizer search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewSymmetrizer {
    /// Minimal positive integers `d` with `d_i b_ij = −d_j b_ji`.
    Found(Vec<u64>),
    /// The pair `(i, j)` violating every candidate `d`.
    Refuted { i: usize, j: usize },
}

/// Checks the shape of `rows` as an `m × n` exchange matrix: rectangular,
/// `m ≥ n ≥ 1`, zero principal diagonal.
pub fn check_shape(rows: &[Vec<i64>], n: usize) -> Result<(), ClusterError> {
    let m = rows.len();
    if n == 0 || m < n {
        return Err(ClusterError::Shape(format!("need m >= n >= 1, got m = {m}, n = {n}")));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ClusterError::Shape(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
    }
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(ClusterError::NonZeroDiagonal { index: i });
        }
    }
    Ok(())
}

/// Propagates `d_j / d_i = −b_ij / b_ji` along a spanning forest of the
/// principal part and checks every remaining edge.
pub fn skew_symmetrizer(rows: &[Vec<i64>], n: usize) -> SkewSymmetrizer {
    let b = |i: usize, j: usize| rows[i][j];
    let mut d: Vec<Option<Ratio<i128>>> = vec![None; n];
    let mut scaled = vec![0u64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut component = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                let (bij, bji) = (b(i, j), b(j, i));
                if bij == 0 && bji == 0 {
                    continue;
                }
                // sign-opposite and both nonzero, or no d exists
                if bij == 0 || bji == 0 || (bij > 0) == (bji > 0) {
                    let (lo, hi) = (i.min(j), i.max(j));
                    return SkewSymmetrizer::Refuted { i: lo, j: hi };
                }
                let dj = d[i].unwrap() * Ratio::new(-(bij as i128), bji as i128);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        let (lo, hi) = (i.min(j), i.max(j));
                        return SkewSymmetrizer::Refuted { i: lo, j: hi };
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component.iter().fold(1i128, |acc, &v| acc.lcm(d[v].unwrap().denom()));
        let ints: Vec<i128> = component.iter().map(|&v| (d[v].unwrap() * lcm).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, &x| acc.gcd(&x));
        for (&v, &x) in component.iter().zip(&ints) {
            scaled[v] = (x / g) as u64;
        }
    }
    SkewSymmetrizer::Found(scaled)
}

impl ExchangeMatrix {
    /// Validates shape, zero diagonal and skew-symmetrizability.
    pub fn new(rows: Vec<Vec<i64>>, n: usize) -> Result<Self, ClusterError> {
        check_shape(&rows, n)?;
        if let SkewSymmetrizer::Refuted { i, j } = skew_symmetrizer(&rows, n) {
            return Err(ClusterError::NotSkewSymmetrizable { i, j });
        }
        Ok(ExchangeMatrix { m: rows.len(), n, entries: rows })
    }

    /// Square principal matrix without frozen rows.
    pub fn square(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = rows.len();
        Self::new(rows, n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = i64> + '_ {
        self.entries.iter().map(move |r| r[j])
    }

    pub fn skew_symmetrizer(&self) -> Vec<u64> {
        match skew_symmetrizer(&self.entries, self.n) {
            SkewSymmetrizer::Found(d) => d,
            SkewSymmetrizer::Refuted { .. } => unreachable!("validated on construction"),
        }
    }

    pub(crate) fn check_mutable(&self, k: usize) -> Result<(), ClusterError> {
        if k >= self.n {
            return Err(ClusterError::IndexOutOfRange { index: k, n: self.n });
        }
        Ok(())
    }

    /// Mutable neighbours `N(i) = {j < n : b_ij ≠ 0}` of a mutable or
    /// frozen index.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.entries[i][j] != 0).collect()
    }

    /// `i` and `j` are joined in `Δ(B̃)`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        (j < self.n && self.entries[i][j] != 0) || (i < self.n && self.entries[j][i] != 0)
    }

    /// Source: every entry of column `i` is `≤ 0`, so all arrows point away
    /// from `i`.
    pub fn is_source(&self, i: usize) -> bool {
        self.column(i).all(|b| b <= 0)
    }

    /// Sink: every entry of column `i` is `≥ 0`.
    pub fn is_sink(&self, i: usize) -> bool {
        self.column(i).all(|b| b >= 0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.m {
                if !seen[j] && self.adjacent(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn quiver(&self) -> Quiver {
        let arrows = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.entries[i][j] > 0)
            .collect();
        Quiver { vertices: self.n, arrows }
    }

    pub fn is_acyclic(&self) -> bool {
        self.quiver().is_acyclic()
    }

    pub fn structure_report(&self) -> StructureReport {
        structure_report(&self.entries, self.n).expect("validated shape")
    }
}

/// `μ_k(B̃)`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix, ClusterError> {
    b.check_mutable(k)?;
    let mut out = b.entries.clone();
    for i in 0..b.m {
        for j in 0..b.n {
            let bij = b.entries[i][j];
            out[i][j] = if i == k || j == k {
                -bij
            } else {
                let (bik, bkj) = (b.entries[i][k], b.entries[k][j]);
                bij + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
        }
    }
    Ok(ExchangeMatrix { m: b.m, n: b.n, entries: out })
}

/// `Σ(B)`: arrow `i → j` iff `b_ij > 0`, on the mutable vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, j) in &self.arrows {
            indeg[j] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for &(a, b) in &self.arrows {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        removed == self.vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub m: usize,
    pub n: usize,
    pub skew_symmetrizer: SkewSymmetrizer,
    pub connected: bool,
    pub acyclic: bool,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    /// `N(i)` for every index `0..m`.
    pub neighbors: Vec<Vec<usize>>,
}

/// Structural facts about a raw matrix; a failed skew-symmetrizer search
/// is reported, not raised.
pub fn structure_report(rows: &[Vec<i64>], n: usize) -> Result<StructureReport, ClusterError> {
    check_shape(rows, n)?;
    let raw = ExchangeMatrix { m: rows.len(), n, entries: rows.to_vec() };
    Ok(StructureReport {
        m: raw.m,
        n,
        skew_symmetrizer: skew_symmetrizer(rows, n),
        connected: raw.is_connected(),
        acyclic: raw.is_acyclic(),
        sources: (0..n).filter(|&i| raw.is_source(i)).collect(),
        sinks: (0..n).filter(|&i| raw.is_sink(i)).collect(),
        neighbors: (0..raw.m).map(|i| raw.neighbors(i)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a3() -> ExchangeMatrix {
        ExchangeMatrix::square(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap()
    }

    #[test]
    fn kronecker_mutation_flips_sign() {
        let k = ExchangeMatrix::square(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        let mu = mutate_matrix(&k, 0).unwrap();
        assert_eq!(mu.rows(), &[vec![0, -2], vec![2, 0]]);
        assert_eq!(k.skew_symmetrizer(), vec![1, 1]);
        assert_eq!(k.structure_report().sources, vec![0]);
        assert_eq!(k.structure_report().sinks, vec![1]);
    }

    #[test]
    fn a3_middle_mutation_gives_cycle() {
        let mu = mutate_matrix(&a3(), 1).unwrap();
        assert_eq!(mu.rows(), &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]);
        assert!(!mu.is_acyclic());
        assert!(a3().is_acyclic());
    }

    #[test]
    fn a3_structure() {
        let r = a3().structure_report();
        assert!(r.connected && r.acyclic);
        assert_eq!(r.sources, vec![0]);
        assert_eq!(r.sinks, vec![2]);
        assert_eq!(r.neighbors[1], vec![0, 2]);
        assert_eq!(r.skew_symmetrizer, SkewSymmetrizer::Found(vec![1, 1, 1]));
    }

    #[test]
    fn cyclic_triangle_not_acyclic() {
        let c = ExchangeMatrix::square(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        assert!(c.is_connected());
        assert!(!c.is_acyclic());
    }

    #[test]
    fn skew_symmetrizable_rank_two() {
        // d1 * 1 = -d2 * (-4)  =>  d = (4, 1)
        let b = ExchangeMatrix::square(vec![vec![0, 1], vec![-4, 0]]).unwrap();
        assert_eq!(b.skew_symmetrizer(), vec![4, 1]);
        // B2-type 3x3: d = (1, 2, 2)? check d_i b_ij = -d_j b_ji
        let rows = vec![vec![0, 2, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        let d = match skew_symmetrizer(&rows, 3) {
            SkewSymmetrizer::Found(d) => d,
            other => panic!("{other:?}"),
        };
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i] as i64 * rows[i][j], -(d[j] as i64) * rows[j][i]);
            }
        }
    }

    #[test]
    fn refutations() {
        assert_eq!(
            skew_symmetrizer(&[vec![0, 1], vec![1, 0]], 2),
            SkewSymmetrizer::Refuted { i: 0, j: 1 }
        );
        assert_eq!(
            skew_symmetrizer(&[vec![0, 1], vec![0, 0]], 2),
            SkewSymmetrizer::Refuted { i: 0, j: 1 }
        );
        // inconsistent ratios around a triangle
        let rows = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![2, -1, 0]];
        assert!(matches!(skew_symmetrizer(&rows, 3), SkewSymmetrizer::Refuted { .. }));
        assert!(matches!(
            ExchangeMatrix::square(vec![vec![1, 0], vec![0, 0]]),
            Err(ClusterError::NonZeroDiagonal { index: 0 })
        ));
        assert!(matches!(ExchangeMatrix::new(vec![vec![0, 1]], 2), Err(ClusterError::Shape(_))));
    }

    #[test]
    fn frozen_rows() {
        // A1 with one frozen variable: x1 x1' = 1 + x2
        let b = ExchangeMatrix::new(vec![vec![0], vec![1]], 1).unwrap();
        assert!(b.is_connected());
        assert_eq!(b.neighbors(1), vec![0]);
        assert!(b.is_sink(0));
        assert!(!b.is_source(0));
        let mu = mutate_matrix(&b, 0).unwrap();
        assert_eq!(mu.rows(), &[vec![0], vec![-1]]);
        assert!(matches!(mutate_matrix(&b, 1), Err(ClusterError::IndexOutOfRange { .. })));
        let disconnected = ExchangeMatrix::new(vec![vec![0], vec![0]], 1).unwrap();
        assert!(!disconnected.is_connected());
    }

    /// Random skew-symmetrizable matrix `D⁻¹·S` scaled to integers: pick a
    /// symmetrizer `d` and a skew-symmetric `S` with `d_i | s_ij`.
    pub(crate) fn arb_skew_symmetrizable(max_n: usize) -> impl Strategy<Value = ExchangeMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec(1u8..=2, n),
                    proptest::collection::vec(-3i64..=3, n * n),
                    0usize..=2,
                    proptest::collection::vec(-3i64..=3, 2 * n),
                )
            })
            .prop_map(|(n, d, raw, frozen, fz)| {
                let mut rows = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let (di, dj) = (d[i] as i64, d[j] as i64);
                        // b_ij = c·dj, b_ji = −c·di keeps d_i b_ij = −d_j b_ji
                        let c = raw[i * n + j].signum() * (1 + raw[i * n + j].abs() / 3);
                        let c = if c.abs() * di.max(dj) > 3 { c.signum() } else { c };
                        rows[i][j] = c * dj;
                        rows[j][i] = -c * di;
                    }
                }
                for f in 0..frozen {
                    rows.push((0..n).map(|j| fz[f * n + j]).collect());
                }
                ExchangeMatrix::new(rows, n).unwrap()
            })
    }

    proptest! {
        #[test]
        fn mutation_is_an_involution(b in arb_skew_symmetrizable(6), k in 0usize..6) {
            let k = k % b.n();
            let once = mutate_matrix(&b, k).unwrap();
            prop_assert_eq!(mutate_matrix(&once, k).unwrap(), b.clone());
            // same symmetrizer after mutation
            prop_assert_eq!(ExchangeMatrix::new(once.rows().to_vec(), b.n()).unwrap().skew_symmetrizer(), b.skew_symmetrizer());
        }

        #[test]
        fn connectedness_is_mutation_invariant(b in arb_skew_symmetrizable(5), k in 0usize..5) {
            let k = k % b.n();
            prop_assert_eq!(mutate_matrix(&b, k).unwrap().is_connected(), b.is_connected());
        }
    }
}
