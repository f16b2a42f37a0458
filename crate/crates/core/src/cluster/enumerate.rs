use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::fields::Field;
use crate::poly::LaurentPolynomial;

use super::{mutate_seed, ClusterError, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exploration {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<F: Field> {
    /// Distinct mutable cluster entries, initial ones included.
    pub variables: BTreeSet<LaurentPolynomial<F>>,
    /// Distinct clusters (unordered) visited.
    pub clusters: usize,
    /// The frontier was exhausted within the seed budget.
    pub complete: bool,
}

fn cluster_key<F: Field>(s: &Seed<F>) -> Vec<LaurentPolynomial<F>> {
    let mut key = s.mutable_cluster().to_vec();
    key.sort();
    key
}

/// Explores the mutation class from `seed`, visiting at most `max_seeds`
/// distinct clusters. Seeds are identified by their unordered cluster.
pub fn enumerate_cluster_variables<F: Field>(
    seed: &Seed<F>,
    max_seeds: usize,
    strategy: Exploration,
) -> Result<Enumeration<F>, ClusterError> {
    assert!(max_seeds >= 1, "max_seeds must be positive");
    let mut seen: HashSet<Vec<LaurentPolynomial<F>>> = HashSet::new();
    let mut variables: BTreeSet<LaurentPolynomial<F>> = seed.mutable_cluster().iter().cloned().collect();
    let mut frontier: VecDeque<Seed<F>> = VecDeque::new();
    seen.insert(cluster_key(seed));
    frontier.push_back(seed.clone());
    let mut complete = true;
    'outer: while let Some(s) = match strategy {
        Exploration::BreadthFirst => frontier.pop_front(),
        Exploration::DepthFirst => frontier.pop_back(),
    } {
        for k in 0..s.n() {
            let next = mutate_seed(&s, k)?;
            let key = cluster_key(&next);
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= max_seeds {
                complete = false;
                break 'outer;
            }
            variables.insert(next.cluster()[k].clone());
            seen.insert(key);
            frontier.push_back(next);
        }
    }
    Ok(Enumeration { variables, clusters: seen.len(), complete })
}
