//! The tableau-level bijections: the recurrence split/merge between
//! `C^rsk_{n,k,s}` and `Pi^rsk_{n,k-s} x subsets`, the map between `D_{n,k,s}`
//! and `C^rsk_{n,k-s} x subsets`, and the inclusion-exclusion chain of sets
//! `E_{n,k,l}`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::tableau::{enumerate_crsk, enumerate_d, enumerate_pirsk, Tableau, TableauPair};

/// A set of values from the window `[n-k+1, n]`, kept sorted ascending. When
/// acting as the decreasing run of a quasi-tableau it is written descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueSubset {
    values: Vec<usize>,
}

impl ValueSubset {
    pub fn new(mut values: Vec<usize>) -> Result<Self> {
        values.sort_unstable();
        if values.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::NotInDomain("subset values must be distinct".into()));
        }
        Ok(Self { values })
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.values.binary_search(&v).is_ok()
    }
}

/// The unique order-preserving bijection between two finite integer sets of
/// equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    source: Vec<usize>,
    target: Vec<usize>,
}

impl OrderMap {
    pub fn new(mut source: Vec<usize>, mut target: Vec<usize>) -> Result<Self> {
        source.sort_unstable();
        target.sort_unstable();
        if source.len() != target.len() {
            return Err(Error::NotInDomain(
                "order map endpoints must have equal size".into(),
            ));
        }
        Ok(Self { source, target })
    }

    pub fn apply(&self, v: usize) -> Result<usize> {
        match self.source.binary_search(&v) {
            Ok(i) => Ok(self.target[i]),
            Err(_) => Err(Error::NotInDomain(format!("{v} not in order-map source"))),
        }
    }

    pub fn invert(&self) -> Self {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}

fn identity_prefix(len: usize) -> Vec<usize> {
    (1..=len).collect()
}

/// `f : [n-k+1, n] \ excluded -> [n-k+s+1, n]`, the order-preserving map used
/// by all four bijection directions.
fn window_map(n: usize, k: usize, excluded: &ValueSubset) -> Result<OrderMap> {
    let s = excluded.len();
    let source: Vec<usize> = (n - k + 1..=n).filter(|&v| !excluded.contains(v)).collect();
    let target: Vec<usize> = (n - k + s + 1..=n).collect();
    OrderMap::new(source, target)
}

fn map_tableau(
    t: &Tableau,
    mut f: impl FnMut(usize, usize, usize) -> Result<usize>,
) -> Result<Tableau> {
    let rows = t
        .rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, &v)| f(r, c, v))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Tableau::new(rows)
}

/// Splits a pair in `C^rsk_{n,k,s}` (first rows of length `n-k+s`, recording
/// first row starting `1..n-k`) into a pair in `Pi^rsk_{n,k-s}` and the set
/// `{b_1, ..., b_s}` of trailing first-row entries. `P` is untouched.
pub fn recurrence_split(pair: &TableauPair, k: usize) -> Result<(TableauPair, ValueSubset)> {
    let n = pair.p.n();
    if k > n {
        return Err(Error::Regime(format!("k = {k} exceeds n = {n}")));
    }
    if pair.p.shape() != pair.q.shape() || !pair.p.is_standard() || !pair.q.is_standard() {
        return Err(Error::NotInDomain(
            "recurrence_split needs a same-shape standard pair".into(),
        ));
    }
    let first = &pair.q.rows()[0];
    if first.len() < n - k || first[..n - k] != identity_prefix(n - k)[..] {
        return Err(Error::NotInDomain(format!(
            "Q's first row must start with 1..{}",
            n - k
        )));
    }
    let s = first.len() - (n - k);
    if s > k {
        return Err(Error::NotInDomain(format!(
            "first row too long for C^rsk_{{n,{k},s}}: s = {s} > k"
        )));
    }
    let b = ValueSubset::new(first[n - k..].to_vec())?;
    let f = window_map(n, k, &b)?;
    let q = map_tableau(
        &pair.q,
        |r, c, v| {
            if r == 0 {
                Ok(c + 1)
            } else {
                f.apply(v)
            }
        },
    )?;
    let out = TableauPair::new(pair.p.clone(), q)?;
    debug_assert!(out.q.is_standard());
    Ok((out, b))
}

/// Inverse of [`recurrence_split`]: re-attaches the subset `b` to a pair in
/// `Pi^rsk_{n,k-s}`. Requires `n >= 2k`, where the reassembled tableau is
/// guaranteed standard.
pub fn recurrence_merge(pair: &TableauPair, b: &ValueSubset, k: usize) -> Result<TableauPair> {
    let n = pair.p.n();
    let s = b.len();
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    if s > k || b.values().iter().any(|&v| v <= n - k || v > n) {
        return Err(Error::NotInDomain(format!(
            "subset must lie in [{}..{}] with at most {k} elements",
            n - k + 1,
            n
        )));
    }
    if pair.p.shape() != pair.q.shape() || !pair.p.is_standard() || !pair.q.is_standard() {
        return Err(Error::NotInDomain(
            "recurrence_merge needs a same-shape standard pair".into(),
        ));
    }
    if pair.q.rows()[0] != identity_prefix(n - k + s) {
        return Err(Error::NotInDomain(format!(
            "Q's first row must be exactly 1..{}",
            n - k + s
        )));
    }
    let f_inv = window_map(n, k, b)?.invert();
    let q = map_tableau(&pair.q, |r, c, v| {
        if r == 0 {
            if c < n - k {
                Ok(v)
            } else {
                Ok(b.values()[c - (n - k)])
            }
        } else {
            f_inv.apply(v)
        }
    })?;
    if !q.is_standard() {
        return Err(Error::NotInDomain(
            "merged recording tableau is not standard".into(),
        ));
    }
    TableauPair::new(pair.p.clone(), q)
}

/// Maps a pair in `D_{n,k,s}` to a pair in `C^rsk_{n,k-s}` together with the
/// decreasing-run values `{a_1, ..., a_s}`. `P` is untouched.
pub fn d_to_c(pair: &TableauPair, k: usize, s: usize) -> Result<(TableauPair, ValueSubset)> {
    let n = pair.p.n();
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    if pair.p.shape() != pair.q.shape() || !pair.p.is_standard() || !pair.q.is_quasi(k, s) {
        return Err(Error::NotInDomain(format!(
            "pair is not in D_{{{n},{k},{s}}}"
        )));
    }
    let first = &pair.q.rows()[0];
    let a = ValueSubset::new(first[n - k..n - k + s].to_vec())?;
    let f = window_map(n, k, &a)?;
    let q = map_tableau(&pair.q, |r, c, v| {
        if r == 0 && c >= n - k && c < n - k + s {
            // The descending run becomes the increasing block n-k+1..n-k+s.
            Ok(c + 1)
        } else if v > n - k {
            f.apply(v)
        } else {
            Ok(v)
        }
    })?;
    if !q.is_standard() || q.rows()[0][..n - k + s] != identity_prefix(n - k + s)[..] {
        return Err(Error::NotInDomain("image is not in C^rsk_{n,k-s}".into()));
    }
    Ok((TableauPair::new(pair.p.clone(), q)?, a))
}

/// Inverse of [`d_to_c`]: installs the subset `a` (written descending) into a
/// pair in `C^rsk_{n,k-s}`, producing a pair in `D_{n,k,s}`.
pub fn c_to_d(pair: &TableauPair, a: &ValueSubset, k: usize) -> Result<TableauPair> {
    let n = pair.p.n();
    let s = a.len();
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    if s > k || a.values().iter().any(|&v| v <= n - k || v > n) {
        return Err(Error::NotInDomain(format!(
            "subset must lie in [{}..{}] with at most {k} elements",
            n - k + 1,
            n
        )));
    }
    if pair.p.shape() != pair.q.shape() || !pair.p.is_standard() || !pair.q.is_standard() {
        return Err(Error::NotInDomain("pair must be a standard pair".into()));
    }
    let first = &pair.q.rows()[0];
    if first.len() < n - k + s || first[..n - k + s] != identity_prefix(n - k + s)[..] {
        return Err(Error::NotInDomain(format!(
            "Q's first row must start with 1..{}",
            n - k + s
        )));
    }
    let f_inv = window_map(n, k, a)?.invert();
    let a_desc: Vec<usize> = a.values().iter().rev().copied().collect();
    let q = map_tableau(&pair.q, |r, c, v| {
        if r == 0 && c >= n - k && c < n - k + s {
            Ok(a_desc[c - (n - k)])
        } else if v > n - k + s {
            f_inv.apply(v)
        } else {
            Ok(v)
        }
    })?;
    if !q.is_quasi(k, s) {
        return Err(Error::NotInDomain(
            "reassembled recording tableau is not quasi-standard".into(),
        ));
    }
    TableauPair::new(pair.p.clone(), q)
}

/// The materialized inclusion-exclusion chain for one `(n, k)` cell.
#[derive(Debug)]
pub struct EChain {
    pub crsk: HashSet<TableauPair>,
    pub pirsk: HashSet<TableauPair>,
    /// `d[l-1]` is `D_{n,k,l}` for `l = 1..=k`.
    pub d: Vec<HashSet<TableauPair>>,
    /// `e[l-1]` is `E_{n,k,l}` for `l = 1..=k+1`.
    pub e: Vec<HashSet<TableauPair>>,
}

/// Builds `E_1 = C^rsk \ Pi^rsk`, `E_{l+1} = D_{n,k,l} \ E_l` and checks the
/// chain's structure: `E_l` is a subset of `D_{n,k,l}`, `E_l` consists exactly
/// of the pairs whose first-row decreasing run has length `l`, `E_k = D_{n,k,k}`
/// and `E_{k+1}` is empty.
pub fn e_chain(n: usize, k: usize, cap: usize) -> Result<EChain> {
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    let crsk: HashSet<TableauPair> = enumerate_crsk(n, k, cap)?.into_iter().collect();
    let pirsk: HashSet<TableauPair> = enumerate_pirsk(n, k, cap)?.into_iter().collect();
    if !pirsk.is_subset(&crsk) {
        return Err(Error::NotInDomain("Pi^rsk is not inside C^rsk".into()));
    }
    let mut d = Vec::new();
    let mut e = vec![crsk.difference(&pirsk).cloned().collect::<HashSet<_>>()];
    for l in 1..=k {
        let d_l: HashSet<TableauPair> = enumerate_d(n, k, l, cap)?.into_iter().collect();
        let e_l = &e[l - 1];
        if !e_l.is_subset(&d_l) {
            return Err(Error::NotInDomain(format!("E_{l} is not inside D_{l}")));
        }
        let expected: HashSet<TableauPair> = d_l
            .iter()
            .filter(|pair| pair.q.decreasing_run_len(n - k) == l)
            .cloned()
            .collect();
        if *e_l != expected {
            return Err(Error::NotInDomain(format!(
                "E_{l} does not match its first-row run classification"
            )));
        }
        let e_next: HashSet<TableauPair> = d_l.difference(e_l).cloned().collect();
        d.push(d_l);
        e.push(e_next);
    }
    if k > 0 && e[k - 1] != d[k - 1] {
        return Err(Error::NotInDomain("E_k differs from D_k".into()));
    }
    if !e[k].is_empty() {
        return Err(Error::NotInDomain("E_{k+1} is not empty".into()));
    }
    Ok(EChain { crsk, pirsk, d, e })
}

impl EChain {
    /// Evaluates the nested set difference
    /// `C^rsk \ (D_1 \ (D_2 \ ... \ D_k))` element-wise.
    pub fn nested_difference(&self) -> HashSet<TableauPair> {
        let mut acc: HashSet<TableauPair> = HashSet::new();
        for d_l in self.d.iter().rev() {
            acc = d_l.difference(&acc).cloned().collect();
        }
        self.crsk.difference(&acc).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::Tableau;

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn pair(p: &[&[usize]], q: &[&[usize]]) -> TableauPair {
        TableauPair::new(t(p), t(q)).unwrap()
    }

    #[test]
    fn order_map_examples() {
        let f = OrderMap::new(vec![3], vec![4]).unwrap();
        assert_eq!(f.apply(3).unwrap(), 4);
        assert_eq!(f.invert().apply(4).unwrap(), 3);
        assert!(f.apply(5).is_err());

        let f = OrderMap::new(vec![5, 7, 8], vec![6, 7, 8]).unwrap();
        assert_eq!(f.apply(7).unwrap(), 7);
        assert_eq!(f.apply(5).unwrap(), 6);
    }

    #[test]
    fn split_example() {
        let x = pair(&[&[1, 2, 3], &[4]], &[&[1, 2, 4], &[3]]);
        let (y, b) = recurrence_split(&x, 2).unwrap();
        assert_eq!(y.q, t(&[&[1, 2, 3], &[4]]));
        assert_eq!(y.p, x.p);
        assert_eq!(b.values(), &[4]);
        assert_eq!(recurrence_merge(&y, &b, 2).unwrap(), x);
    }

    #[test]
    fn split_s_zero_is_identity() {
        let x = pair(&[&[1, 2], &[3, 4]], &[&[1, 2], &[3, 4]]);
        let (y, b) = recurrence_split(&x, 2).unwrap();
        assert_eq!(y, x);
        assert!(b.is_empty());
        assert_eq!(recurrence_merge(&x, &ValueSubset::empty(), 2).unwrap(), x);
    }

    #[test]
    fn split_full_first_row() {
        // First row 1..n: k = s, nothing below row 1 changes.
        let x = pair(&[&[1, 2, 3, 4]], &[&[1, 2, 3, 4]]);
        let (y, b) = recurrence_split(&x, 2).unwrap();
        assert_eq!(y, x);
        assert_eq!(b.values(), &[3, 4]);
    }

    #[test]
    fn split_merge_round_trip_exhaustive() {
        for n in [4usize, 6] {
            for k in 0..=n / 2 {
                for x in enumerate_crsk(n, k, 10).unwrap() {
                    let (y, b) = recurrence_split(&x, k).unwrap();
                    assert_eq!(y.p, x.p);
                    let s = b.len();
                    assert_eq!(y.q.rows()[0].len(), n - k + s);
                    assert_eq!(recurrence_merge(&y, &b, k).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn d_to_c_example() {
        let x = pair(&[&[1, 2, 3], &[4]], &[&[1, 2, 4], &[3]]);
        let (y, a) = d_to_c(&x, 2, 1).unwrap();
        assert_eq!(y.q, t(&[&[1, 2, 3], &[4]]));
        assert_eq!(a.values(), &[4]);
        assert_eq!(c_to_d(&y, &a, 2).unwrap(), x);
    }

    #[test]
    fn d_to_c_round_trip_exhaustive() {
        for n in [4usize, 6] {
            for k in 0..=n / 2 {
                for s in 0..=k {
                    for x in enumerate_d(n, k, s, 10).unwrap() {
                        let (y, a) = d_to_c(&x, k, s).unwrap();
                        assert_eq!(y.p, x.p);
                        assert_eq!(y.p.maj(), x.p.maj());
                        assert_eq!(c_to_d(&y, &a, k).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn c_to_d_cardinalities() {
        // |D_{4,2,1}| = 8, |D_{4,2,2}| = 1 via the bijection side.
        let crsk41 = enumerate_crsk(4, 1, 10).unwrap();
        assert_eq!(crsk41.len() * 2, 8);
        let crsk40 = enumerate_crsk(4, 0, 10).unwrap();
        assert_eq!(crsk40.len(), 1);
    }

    #[test]
    fn regime_guards() {
        let x = pair(&[&[1, 2, 3], &[4]], &[&[1, 2, 3], &[4]]);
        assert!(d_to_c(&x, 3, 0).is_err());
        assert!(recurrence_merge(&x, &ValueSubset::empty(), 3).is_err());
    }

    #[test]
    fn e_chain_n4_k2() {
        let chain = e_chain(4, 2, 10).unwrap();
        assert_eq!(chain.crsk.len(), 12);
        assert_eq!(chain.pirsk.len(), 5);
        assert_eq!(chain.e[0].len(), 7);
        assert_eq!(chain.d[0].len(), 8);
        assert_eq!(chain.e[1].len(), 1);
        assert_eq!(chain.d[1].len(), 1);
        assert_eq!(chain.e[2].len(), 0);
        assert_eq!(chain.nested_difference(), chain.pirsk);
    }

    #[test]
    fn e_chain_degenerate_k() {
        let chain = e_chain(5, 0, 10).unwrap();
        assert_eq!(chain.crsk, chain.pirsk);
        assert_eq!(chain.crsk.len(), 1);

        let chain = e_chain(4, 1, 10).unwrap();
        assert_eq!(chain.pirsk.len(), 3);
        assert!(chain.e[1].is_empty());
    }

    #[test]
    fn crsk_partitioned_by_first_row_length() {
        for n in [5usize, 6] {
            for k in 0..=n / 2 {
                let crsk = enumerate_crsk(n, k, 10).unwrap();
                let total: usize = (0..=k)
                    .map(|s| {
                        crsk.iter()
                            .filter(|x| x.q.rows()[0].len() == n - k + s)
                            .count()
                    })
                    .sum();
                assert_eq!(total, crsk.len());
            }
        }
    }
}
