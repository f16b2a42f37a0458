use std::fmt;
use std::str::FromStr;

use crate::fields::Field;

use super::{ClusterError, ExchangeMatrix, Seed};

/// Named initial seeds (coefficient-free, `m = n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Linear orientation `1 → 2 → … → n`.
    A(usize),
    /// Chain `1 → … → n−2` with `n−1 → n−2` and `n → n−2`.
    D(usize),
    /// `1 → 2 → 3 → 4` and `n → … → 6 → 5 → 3`, for `n ∈ {6, 7, 8}`.
    E(usize),
    /// `[[0, b], [−c, 0]]`.
    Rank2(u32, u32),
    /// `rank2(2, 2)`.
    Kronecker,
    /// The oriented 3-cycle `1 → 2 → 3 → 1`.
    CyclicA3,
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::A(n) => write!(f, "A:{n}"),
            Builtin::D(n) => write!(f, "D:{n}"),
            Builtin::E(n) => write!(f, "E:{n}"),
            Builtin::Rank2(b, c) => write!(f, "rank2:{b},{c}"),
            Builtin::Kronecker => write!(f, "kronecker"),
            Builtin::CyclicA3 => write!(f, "cyclicA3"),
        }
    }
}

impl FromStr for Builtin {
    type Err = ClusterError;

    /// `A:n`, `D:n`, `E:n`, `rank2:b,c`, `kronecker`, `cyclicA3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ClusterError::InvalidParameter(format!("unknown builtin seed {s:?}"));
        let parsed = match s {
            "kronecker" => Builtin::Kronecker,
            "cyclicA3" => Builtin::CyclicA3,
            _ => {
                let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
                match kind {
                    "A" | "D" | "E" => {
                        let n: usize = arg.trim().parse().map_err(|_| bad())?;
                        match kind {
                            "A" => Builtin::A(n),
                            "D" => Builtin::D(n),
                            _ => Builtin::E(n),
                        }
                    }
                    "rank2" => {
                        let (b, c) = arg.split_once(',').ok_or_else(bad)?;
                        Builtin::Rank2(b.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?)
                    }
                    _ => return Err(bad()),
                }
            }
        };
        builtin_matrix(&parsed)?;
        Ok(parsed)
    }
}

fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> ExchangeMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for &(a, b) in arrows {
        rows[a - 1][b - 1] = 1;
        rows[b - 1][a - 1] = -1;
    }
    ExchangeMatrix::square(rows).expect("quiver matrices are skew-symmetric")
}

pub fn builtin_matrix(b: &Builtin) -> Result<ExchangeMatrix, ClusterError> {
    let invalid = |msg: String| Err(ClusterError::InvalidParameter(msg));
    Ok(match *b {
        Builtin::A(n) => {
            if n < 1 {
                return invalid("A:n needs n >= 1".into());
            }
            let arrows: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            from_arrows(n, &arrows)
        }
        Builtin::D(n) => {
            if n < 4 {
                return invalid("D:n needs n >= 4".into());
            }
            let mut arrows: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
            arrows.push((n - 1, n - 2));
            arrows.push((n, n - 2));
            from_arrows(n, &arrows)
        }
        Builtin::E(n) => {
            if !(6..=8).contains(&n) {
                return invalid("E:n needs n in 6..=8".into());
            }
            let mut arrows = vec![(1, 2), (2, 3), (3, 4), (5, 3)];
            arrows.extend((6..=n).map(|i| (i, i - 1)));
            from_arrows(n, &arrows)
        }
        Builtin::Rank2(b, c) => {
            if b < 1 || c < 1 {
                return invalid("rank2:b,c needs b, c >= 1".into());
            }
            ExchangeMatrix::square(vec![vec![0, b as i64], vec![-(c as i64), 0]])?
        }
        Builtin::Kronecker => ExchangeMatrix::square(vec![vec![0, 2], vec![-2, 0]])?,
        Builtin::CyclicA3 => from_arrows(3, &[(1, 2), (2, 3), (3, 1)]),
    })
}

pub fn builtin_seed<F: Field>(b: &Builtin) -> Result<Seed<F>, ClusterError> {
    Ok(Seed::initial(builtin_matrix(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices() {
        assert_eq!(builtin_matrix(&Builtin::A(3)).unwrap().rows(), &[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        assert_eq!(builtin_matrix(&Builtin::Rank2(2, 2)).unwrap().rows(), &[vec![0, 2], vec![-2, 0]]);
        assert_eq!(builtin_matrix(&Builtin::Kronecker).unwrap(), builtin_matrix(&Builtin::Rank2(2, 2)).unwrap());
        assert_eq!(
            builtin_matrix(&Builtin::CyclicA3).unwrap().rows(),
            &[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]
        );
    }

    #[test]
    fn e6_orientation() {
        let e6 = builtin_matrix(&Builtin::E(6)).unwrap();
        let q = e6.quiver();
        let mut arrows: Vec<(usize, usize)> = q.arrows.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        arrows.sort();
        assert_eq!(arrows, vec![(1, 2), (2, 3), (3, 4), (5, 3), (6, 5)]);
        assert!(e6.is_acyclic() && e6.is_connected());
    }

    #[test]
    fn d_orientation_has_trivalent_sink_for_branches() {
        let d5 = builtin_matrix(&Builtin::D(5)).unwrap();
        let mut arrows: Vec<(usize, usize)> = d5.quiver().arrows.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        arrows.sort();
        assert_eq!(arrows, vec![(1, 2), (2, 3), (4, 3), (5, 3)]);
    }

    #[test]
    fn parsing_names() {
        assert_eq!("A:4".parse::<Builtin>().unwrap(), Builtin::A(4));
        assert_eq!("rank2:1,4".parse::<Builtin>().unwrap(), Builtin::Rank2(1, 4));
        assert_eq!("cyclicA3".parse::<Builtin>().unwrap(), Builtin::CyclicA3);
        assert_eq!(Builtin::Rank2(1, 4).to_string(), "rank2:1,4");
        for bad in ["A:0", "D:3", "E:5", "E:9", "rank2:0,1", "B:3", "A", "A:x"] {
            assert!(bad.parse::<Builtin>().is_err(), "{bad}");
        }
    }
}
