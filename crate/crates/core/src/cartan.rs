//! Cartan matrices of the classical and exceptional series.
//!
//! Nodes use Bourbaki numbering. The entry `c[i][j]` is the coefficient of
//! `omega_j` in the simple root `alpha_i`, so row `i` is `alpha_i` written in
//! the basis of fundamental weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted; reduced-word letters are stored as `u8`.
pub const MAX_RANK: usize = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    fn accepts(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

/// A named builtin group such as `E6` or `A8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupName {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::Parse(format!("unknown group `{s}`")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in group `{s}`")))?;
        if !series.accepts(rank) {
            return Err(Error::InvalidSeriesRank { series: series.letter(), rank });
        }
        Ok(GroupName { series, rank })
    }
}

/// A validated Cartan matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CartanJson", into = "CartanJson")]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct CartanJson {
    rank: usize,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<CartanJson> for CartanMatrix {
    type Error = Error;

    fn try_from(value: CartanJson) -> Result<Self> {
        if value.entries.len() != value.rank {
            return Err(Error::NotCartan(format!(
                "rank {} but {} rows",
                value.rank,
                value.entries.len()
            )));
        }
        CartanMatrix::validate(value.entries)
    }
}

impl From<CartanMatrix> for CartanJson {
    fn from(value: CartanMatrix) -> Self {
        CartanJson { rank: value.rank(), entries: value.entries }
    }
}

impl CartanMatrix {
    /// Checks the Cartan axioms and wraps the matrix. The error names the
    /// first violated condition.
    pub fn validate(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NotCartan("empty matrix".into()));
        }
        if n > MAX_RANK {
            return Err(Error::NotCartan(format!("rank {n} exceeds {MAX_RANK}")));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotCartan(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::NotCartan(format!("diagonal entry c[{0},{0}] != 2", i + 1)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (entries[i][j], entries[j][i]);
                if a > 0 {
                    return Err(Error::NotCartan(format!(
                        "off-diagonal positive entry c[{},{}] = {a}",
                        i + 1,
                        j + 1
                    )));
                }
                if (a == 0) != (b == 0) {
                    return Err(Error::NotCartan(format!(
                        "c[{},{}] and c[{},{}] are not simultaneously zero",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if a * b > 3 {
                    return Err(Error::NotCartan(format!(
                        "c[{},{}]*c[{},{}] = {} exceeds 3",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        a * b
                    )));
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    /// The builtin matrix of a named series and rank.
    pub fn builtin(series: Series, rank: usize) -> Result<Self> {
        if !series.accepts(rank) {
            return Err(Error::InvalidSeriesRank { series: series.letter(), rank });
        }
        let n = rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize, cij: i64, cji: i64| {
            c[i - 1][j - 1] = cij;
            c[j - 1][i - 1] = cji;
        };
        match series {
            Series::A => {
                for i in 1..n {
                    link(&mut c, i, i + 1, -1, -1);
                }
            }
            Series::B => {
                for i in 1..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                // alpha_n short
                link(&mut c, n - 1, n, -2, -1);
            }
            Series::C => {
                for i in 1..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                // alpha_n long
                link(&mut c, n - 1, n, -1, -2);
            }
            Series::D => {
                for i in 1..n - 1 {
                    link(&mut c, i, i + 1, -1, -1);
                }
                link(&mut c, n - 1, n, 0, 0);
                link(&mut c, n - 2, n, -1, -1);
            }
            Series::E => {
                link(&mut c, 1, 3, -1, -1);
                link(&mut c, 2, 4, -1, -1);
                for i in 3..n {
                    link(&mut c, i, i + 1, -1, -1);
                }
            }
            Series::F => {
                link(&mut c, 1, 2, -1, -1);
                link(&mut c, 2, 3, -2, -1);
                link(&mut c, 3, 4, -1, -1);
            }
            Series::G => {
                link(&mut c, 1, 2, -1, -3);
            }
        }
        Ok(CartanMatrix { entries: c })
    }

    pub fn from_name(name: GroupName) -> Result<Self> {
        Self::builtin(name.series, name.rank)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Entry `c[i][j]`, zero-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Row `i` (zero-based): the simple root `alpha_{i+1}` in the weight basis.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    /// Identifies a builtin matrix by equality, if any.
    pub fn builtin_name(&self) -> Option<GroupName> {
        let n = self.rank();
        [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G]
            .into_iter()
            .filter(|s| s.accepts(n))
            .find(|&s| Self::builtin(s, n).map(|b| &b == self).unwrap_or(false))
            .map(|series| GroupName { series, rank: n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_matches_printed_matrix() {
        let g2 = CartanMatrix::builtin(Series::G, 2).unwrap();
        assert_eq!(g2.entries(), &[vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn f4_matches_printed_matrix() {
        let f4 = CartanMatrix::builtin(Series::F, 4).unwrap();
        assert_eq!(
            f4.entries(),
            &[vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]]
        );
    }

    #[test]
    fn e_series_matches_printed_matrices() {
        let e8 = [
            [2, 0, -1, 0, 0, 0, 0, 0],
            [0, 2, 0, -1, 0, 0, 0, 0],
            [-1, 0, 2, -1, 0, 0, 0, 0],
            [0, -1, -1, 2, -1, 0, 0, 0],
            [0, 0, 0, -1, 2, -1, 0, 0],
            [0, 0, 0, 0, -1, 2, -1, 0],
            [0, 0, 0, 0, 0, -1, 2, -1],
            [0, 0, 0, 0, 0, 0, -1, 2],
        ];
        for n in 6..=8 {
            let e = CartanMatrix::builtin(Series::E, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(e.get(i, j), e8[i][j], "E{n} entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn rank_one() {
        let a1 = CartanMatrix::builtin(Series::A, 1).unwrap();
        assert_eq!(a1.entries(), &[vec![2]]);
    }

    #[test]
    fn invalid_pairs_rejected() {
        for (s, r) in [
            (Series::A, 0),
            (Series::B, 1),
            (Series::C, 1),
            (Series::D, 2),
            (Series::E, 5),
            (Series::E, 9),
            (Series::F, 3),
            (Series::G, 3),
        ] {
            assert!(matches!(
                CartanMatrix::builtin(s, r),
                Err(Error::InvalidSeriesRank { .. })
            ));
        }
    }

    #[test]
    fn every_builtin_validates() {
        let mut names = vec![];
        for n in 1..=9 {
            names.push((Series::A, n));
        }
        for n in 2..=9 {
            names.push((Series::B, n));
            names.push((Series::C, n));
        }
        for n in 3..=9 {
            names.push((Series::D, n));
        }
        names.extend([(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)]);
        for (s, n) in names {
            let m = CartanMatrix::builtin(s, n).unwrap();
            let v = CartanMatrix::validate(m.entries().to_vec()).unwrap();
            assert_eq!(v, m);
            assert_eq!(m.builtin_name(), Some(GroupName { series: s, rank: n }));
        }
    }

    #[test]
    fn validate_examples() {
        assert!(CartanMatrix::validate(vec![vec![2, -1], vec![-3, 2]]).is_ok());
        assert!(CartanMatrix::validate(vec![vec![2, 0], vec![0, 2]]).is_ok());
        let err = CartanMatrix::validate(vec![vec![2, 1], vec![1, 2]]).unwrap_err();
        assert!(matches!(&err, Error::NotCartan(msg) if msg.contains("positive")), "{err}");
    }

    #[test]
    fn validate_reports_each_violation() {
        let cases: [(Vec<Vec<i64>>, &str); 5] = [
            (vec![vec![1]], "diagonal"),
            (vec![vec![2, -1], vec![0, 2]], "simultaneously zero"),
            (vec![vec![2, -2], vec![-2, 2]], "exceeds 3"),
            (vec![vec![2, -1], vec![-1, 2, 0]], "row 2"),
            (vec![], "empty"),
        ];
        for (m, needle) in cases {
            match CartanMatrix::validate(m) {
                Err(Error::NotCartan(msg)) => assert!(msg.contains(needle), "{msg}"),
                other => panic!("expected NotCartan, got {other:?}"),
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let e6 = CartanMatrix::builtin(Series::E, 6).unwrap();
        let s = serde_json::to_string(&e6).unwrap();
        assert!(s.starts_with("{\"rank\":6,\"entries\":"));
        let back: CartanMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e6);
        let bad = r#"{"rank":2,"entries":[[2,1],[1,2]]}"#;
        assert!(serde_json::from_str::<CartanMatrix>(bad).is_err());
    }

    #[test]
    fn parse_group_names() {
        let g: GroupName = "E6".parse().unwrap();
        assert_eq!(g, GroupName { series: Series::E, rank: 6 });
        assert_eq!(g.to_string(), "E6");
        assert!(matches!("E5".parse::<GroupName>(), Err(Error::InvalidSeriesRank { .. })));
        assert!(matches!("X3".parse::<GroupName>(), Err(Error::Parse(_))));
    }
}
