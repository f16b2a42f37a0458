use crate::fields::Field;
use crate::poly::{ExponentVector, LaurentPolynomial, Polynomial};

use super::{mutate_matrix, ClusterError, ExchangeMatrix};

/// `f_j = ∏_{b_ij>0} x_i^{b_ij} + ∏_{b_ij<0} x_i^{−b_ij}` in `m` variables.
pub fn exchange_polynomial<F: Field>(b: &ExchangeMatrix, j: usize) -> Result<Polynomial<F>, ClusterError> {
    b.check_mutable(j)?;
    let (plus, minus) = exchange_exponents(b, j);
    let m = b.m();
    Ok(&Polynomial::monomial(m, plus, F::one()) + &Polynomial::monomial(m, minus, F::one()))
}

/// The two exponent vectors of the exchange binomial of column `j`.
pub fn exchange_exponents(b: &ExchangeMatrix, j: usize) -> (ExponentVector, ExponentVector) {
    let col: Vec<i64> = b.column(j).collect();
    let plus = col.iter().map(|&v| v.max(0) as u32).collect();
    let minus = col.iter().map(|&v| (-v).max(0) as u32).collect();
    (ExponentVector::from_vec(plus), ExponentVector::from_vec(minus))
}

/// A seed: cluster entries as Laurent polynomials in the initial variables,
/// together with the current exchange matrix and the mutation history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed<F: Field> {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPolynomial<F>>,
    history: Vec<usize>,
}

impl<F: Field> Seed<F> {
    /// Initial seed: entry `j` is `x_{j+1}`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let m = matrix.m();
        let cluster = (0..m).map(|j| LaurentPolynomial::var(m, j)).collect();
        Seed { matrix, cluster, history: Vec::new() }
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPolynomial<F>] {
        &self.cluster
    }

    /// The mutable entries `0..n`.
    pub fn mutable_cluster(&self) -> &[LaurentPolynomial<F>] {
        &self.cluster[..self.matrix.n()]
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    /// Initial exchange polynomials `f_0, …, f_{n−1}` of this seed's matrix.
    pub fn exchange_polynomials(&self) -> Vec<Polynomial<F>> {
        (0..self.n()).map(|j| exchange_polynomial(&self.matrix, j).unwrap()).collect()
    }

    /// Applies `μ_k` for each index in turn, left to right.
    pub fn mutate_along(&self, ks: &[usize]) -> Result<Self, ClusterError> {
        let mut s = self.clone();
        for &k in ks {
            s = mutate_seed(&s, k)?;
        }
        Ok(s)
    }
}

/// `μ_k`: replaces entry `k` by the exchange expression evaluated in
/// Laurent arithmetic, then mutates the matrix.
pub fn mutate_seed<F: Field>(s: &Seed<F>, k: usize) -> Result<Seed<F>, ClusterError> {
    s.matrix.check_mutable(k)?;
    let m = s.m();
    let mut plus = LaurentPolynomial::one(m);
    let mut minus = LaurentPolynomial::one(m);
    for i in 0..m {
        let b = s.matrix.get(i, k);
        if b > 0 {
            plus = &plus * &s.cluster[i].pow(b as u32);
        } else if b < 0 {
            minus = &minus * &s.cluster[i].pow((-b) as u32);
        }
    }
    let value = (&plus + &minus)
        .try_div(&s.cluster[k])
        .map_err(|e| ClusterError::LaurentViolation { index: k, detail: e.to_string() })?;
    let mut cluster = s.cluster.clone();
    cluster[k] = value;
    let mut history = s.history.clone();
    history.push(k);
    Ok(Seed { matrix: mutate_matrix(&s.matrix, k)?, cluster, history })
}

/// What the Laurent phenomenon predicts about a cluster entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LaurentCheck {
    /// The denominator involves only mutable variables.
    pub denominator_mutable_only: bool,
    /// All numerator coefficients are (Gaussian) integers.
    pub integral_coefficients: bool,
}

impl LaurentCheck {
    pub fn holds(&self) -> bool {
        self.denominator_mutable_only && self.integral_coefficients
    }
}

/// Every value carries a monomial denominator by construction; this checks
/// the remaining Laurent-phenomenon properties.
pub fn laurent_check<F: Field>(v: &LaurentPolynomial<F>, n: usize) -> LaurentCheck {
    LaurentCheck {
        denominator_mutable_only: v.denominator().as_slice()[n..].iter().all(|&e| e == 0),
        integral_coefficients: v.numerator().terms().iter().all(|(_, c)| c.is_integral()),
    }
}
