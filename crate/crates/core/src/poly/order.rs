use std::cmp::Ordering;

use super::ExponentVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Grevlex on the first `first_block` ranked variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    BlockElimination { first_block: usize },
}

/// A monomial order together with a variable ranking.
///
/// `ranking[0]` is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut check = ranking.clone();
        check.sort_unstable();
        assert!(check.iter().copied().eq(0..ranking.len()), "ranking must be a permutation");
        if let OrderKind::BlockElimination { first_block } = kind {
            assert!(first_block <= ranking.len());
        }
        MonomialOrder { kind, ranking }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::Lex, (0..nvars).collect())
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::Grevlex, (0..nvars).collect())
    }

    /// Block order eliminating `vars`; the remaining variables keep their
    /// natural ranking.
    pub fn eliminating(nvars: usize, vars: &[usize]) -> Self {
        let mut ranking: Vec<usize> = vars.to_vec();
        ranking.extend((0..nvars).filter(|v| !vars.contains(v)));
        MonomialOrder::new(OrderKind::BlockElimination { first_block: vars.len() }, ranking)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let (a, b) = (a.as_slice(), b.as_slice());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.ranking {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => grevlex_on(&self.ranking, a, b),
            OrderKind::BlockElimination { first_block } => {
                let (head, tail) = self.ranking.split_at(first_block);
                grevlex_on(head, a, b).then_with(|| grevlex_on(tail, a, b))
            }
        }
    }
}

fn grevlex_on(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = vars.iter().map(|&v| a[v]).sum();
    let db: u32 = vars.iter().map(|&v| b[v]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &v in vars.iter().rev() {
        if a[v] != b[v] {
            return b[v].cmp(&a[v]);
        }
    }
    Ordering::Equal
}
