//! Permutations in one-line notation, their statistics, and enumeration of
//! the permutation classes `C_{n,s}` (first `n-s` entries increasing) and
//! `Pi_{n,k}` (members of `C_{n,k}` whose longest increasing subsequence has
//! length exactly `n-k`).
//!
//! Values and positions are 1-based throughout.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Default hard cap on `n` for the factorial-sized enumerations.
pub const DEFAULT_ENUM_CAP: usize = 10;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, validating that it is a
    /// bijection of `{1, ..., n}`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Inverse permutation: `r[w[i]] = i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { word: inv }
    }

    /// Positions `i` with `w[i] > w[i+1]`.
    pub fn descent_set(&self) -> DescentSet {
        let positions = (1..self.n())
            .filter(|&i| self.at(i) > self.at(i + 1))
            .collect();
        DescentSet { positions }
    }

    /// `{i : i+1 appears before i in w}`; equals the descent set of the inverse.
    pub fn idescent_set(&self) -> DescentSet {
        let inv = self.inverse();
        let positions = (1..self.n())
            .filter(|&i| inv.at(i + 1) < inv.at(i))
            .collect();
        DescentSet { positions }
    }

    /// Major index: sum of descent positions.
    pub fn maj(&self) -> usize {
        self.descent_set().positions.iter().sum()
    }

    /// Major index of the inverse permutation.
    pub fn imaj(&self) -> usize {
        self.idescent_set().positions.iter().sum()
    }

    /// Length of the longest increasing subsequence, by patience sorting.
    pub fn lis_length(&self) -> usize {
        lis_length_of(&self.word)
    }

    /// Membership in `C_{n,s}`: first `n-s` entries strictly increasing.
    pub fn is_in_c(&self, s: usize) -> bool {
        let n = self.n();
        if s > n {
            return false;
        }
        self.word[..n - s].windows(2).all(|p| p[0] < p[1])
    }

    /// Membership in `Pi_{n,k}`: in `C_{n,k}` with lis exactly `n-k`.
    pub fn is_in_pi(&self, k: usize) -> bool {
        let n = self.n();
        k <= n && self.is_in_c(k) && self.lis_length() == n - k
    }
}

/// Patience sorting on an arbitrary word of distinct values.
pub(crate) fn lis_length_of(word: &[usize]) -> usize {
    let mut piles: Vec<usize> = Vec::new();
    for &v in word {
        match piles.binary_search(&v) {
            Ok(pos) | Err(pos) => {
                if pos == piles.len() {
                    piles.push(v);
                } else {
                    piles[pos] = v;
                }
            }
        }
    }
    piles.len()
}

/// Independent quadratic-DP oracle for [`Permutation::lis_length`]. Shares no
/// code with the patience-sorting path.
pub fn lis_length_oracle(w: &Permutation) -> usize {
    let word = w.word();
    let n = word.len();
    if n == 0 {
        return 0;
    }
    let mut best = vec![1usize; n];
    for i in 1..n {
        for j in 0..i {
            if word[j] < word[i] && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    best.into_iter().max().unwrap()
}

/// A set of descent positions, each in `1..=n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DescentSet {
    positions: Vec<usize>,
}

impl DescentSet {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Self { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn sum(&self) -> usize {
        self.positions.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.positions.iter().join(","))
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeLimit { n, cap })
    } else {
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of the word.
pub fn enumerate_sn(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    check_cap(n, cap)?;
    Ok((1..=n)
        .permutations(n)
        .map(|word| Permutation { word })
        .collect())
}

/// All of `C_{n,s}` in lexicographic order: the first `n-s` values are chosen
/// increasing, the remaining `s` arranged freely.
pub fn enumerate_c(n: usize, s: usize, cap: usize) -> Result<Vec<Permutation>> {
    check_cap(n, cap)?;
    if s > n {
        return Err(Error::Regime(format!("s = {s} exceeds n = {n}")));
    }
    let mut out = Vec::new();
    // Combinations in lex order, then lex permutations of the complement,
    // yields global lex order on the word.
    for head in (1..=n).combinations(n - s) {
        let mut present = vec![false; n + 1];
        for &v in &head {
            present[v] = true;
        }
        let rest: Vec<usize> = (1..=n).filter(|&v| !present[v]).collect();
        for tail in rest.iter().copied().permutations(s) {
            let mut word = head.clone();
            word.extend(tail);
            out.push(Permutation { word });
        }
    }
    Ok(out)
}

/// All of `Pi_{n,k}`: the members of `C_{n,k}` whose lis is exactly `n-k`.
pub fn enumerate_pi(n: usize, k: usize, cap: usize) -> Result<Vec<Permutation>> {
    let c = enumerate_c(n, k, cap)?;
    Ok(c.into_iter().filter(|w| w.lis_length() == n - k).collect())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts either the compact digit form (`"2513467"`, n <= 9) or the
    /// comma-separated form (`"2,5,1,3,4,6,7"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("1234").inverse(), p("1234"));
        assert_eq!(p("2413").inverse(), p("3142"));
        assert_eq!(p("3421").inverse(), p("4312"));
    }

    #[test]
    fn inverse_is_involution() {
        for w in enumerate_sn(5, 10).unwrap() {
            assert_eq!(w.inverse().inverse(), w);
            let inv = w.inverse();
            for i in 1..=w.n() {
                assert_eq!(inv.at(w.at(i)), i);
            }
        }
    }

    #[test]
    fn descent_set_examples() {
        assert!(p("1234").descent_set().is_empty());
        assert_eq!(p("2513467").descent_set().positions(), &[2]);
        assert_eq!(p("12468537").descent_set().positions(), &[5, 6]);
    }

    #[test]
    fn idescent_examples() {
        assert!(Permutation::identity(6).idescent_set().is_empty());
        assert_eq!(p("2413").idescent_set().positions(), &[1, 3]);
        assert_eq!(p("21").idescent_set().positions(), &[1]);
    }

    #[test]
    fn idescent_equals_descent_of_inverse() {
        for w in enumerate_sn(6, 10).unwrap() {
            assert_eq!(w.idescent_set(), w.inverse().descent_set());
        }
    }

    #[test]
    fn maj_examples() {
        assert_eq!(Permutation::identity(7).maj(), 0);
        assert_eq!(p("2513467").maj(), 2);
        assert_eq!(p("1432").imaj(), 5);
    }

    #[test]
    fn lis_examples() {
        assert_eq!(Permutation::identity(6).lis_length(), 6);
        assert_eq!(p("2513467").lis_length(), 5);
        assert_eq!(p("12684357").lis_length(), 5);
    }

    #[test]
    fn lis_oracle_examples() {
        let rev = Permutation::new((1..=6).rev().collect()).unwrap();
        assert_eq!(lis_length_oracle(&rev), 1);
        assert_eq!(lis_length_oracle(&p("1243")), 3);
        assert_eq!(lis_length_oracle(&p("3412")), 2);
    }

    #[test]
    fn lis_agrees_with_oracle_exhaustive() {
        for n in 1..=7 {
            for w in enumerate_sn(n, 10).unwrap() {
                assert_eq!(w.lis_length(), lis_length_oracle(&w), "w = {w}");
            }
        }
    }

    #[test]
    fn class_membership_examples() {
        assert!(p("1243").is_in_c(1));
        assert!(p("1243").is_in_pi(1));
        assert!(p("1234").is_in_c(1));
        assert!(!p("1234").is_in_pi(1));
        assert!(p("2341").is_in_pi(1));
    }

    #[test]
    fn enumerate_c_examples() {
        let c31: Vec<String> = enumerate_c(3, 1, 10)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(c31, vec!["123", "132", "231"]);
    }

    #[test]
    fn enumerate_c_cardinality() {
        for n in 1..=8 {
            for s in 0..=n {
                assert_eq!(
                    enumerate_c(n, s, 10).unwrap().len(),
                    factorial(n) / factorial(n - s),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn enumerate_c_is_sorted_and_distinct() {
        let c = enumerate_c(5, 3, 10).unwrap();
        for pair in c.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn enumerate_pi_examples() {
        let pi21: Vec<String> = enumerate_pi(2, 1, 10)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(pi21, vec!["21"]);

        let pi42: Vec<String> = enumerate_pi(4, 2, 10)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(pi42, vec!["1432", "2413", "2431", "3412", "3421"]);
    }

    #[test]
    fn degenerate_classes() {
        assert_eq!(
            enumerate_c(5, 0, 10).unwrap(),
            vec![Permutation::identity(5)]
        );
        assert_eq!(
            enumerate_pi(5, 0, 10).unwrap(),
            vec![Permutation::identity(5)]
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_sn(11, 10),
            Err(Error::SizeLimit { n: 11, cap: 10 })
        ));
        assert!(enumerate_c(11, 2, 12).is_ok());
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(p("2,5,1,3,4,6,7"), p("2513467"));
        let big = Permutation::new((1..=12).rev().collect()).unwrap();
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("122".parse::<Permutation>().is_err());
        assert!("130".parse::<Permutation>().is_err());
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }
}
