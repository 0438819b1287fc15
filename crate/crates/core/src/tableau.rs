//! Young shapes, standard tableaux, the quasi-standard recording tableaux of
//! the sets `D_{n,k,s}`, the RSK correspondence and its inverse, and tableau
//! statistics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{DescentSet, Permutation};

/// A partition written as weakly decreasing row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    rows: Vec<usize>,
}

impl Shape {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidTableau("shape has an empty row".into()));
        }
        if rows.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidTableau(
                "shape rows must be weakly decreasing".into(),
            ));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }
}

/// All partitions of `n`, first part descending; `n = 0` yields the empty shape.
pub fn partitions(n: usize) -> Vec<Shape> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(Shape {
                rows: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A filling of a Young shape by the distinct values `1..=n`, one row per
/// entry list. Standardness and the quasi-tableau first-row pattern are
/// predicates, not separate types, since the bijections move fillings between
/// the two regimes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::new(raw.rows)
    }
}

impl Tableau {
    /// Validates the shape (weakly decreasing row lengths) and that the
    /// entries are distinct positive integers. Entries need not be exactly
    /// `{1, ..., n}`: partial insertion states and relabeled subtableaux
    /// carry arbitrary value sets.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lens.contains(&0) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        if lens.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidTableau(
                "row lengths must be weakly decreasing".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in rows.iter().flatten() {
            if v < 1 {
                return Err(Error::InvalidTableau("entry 0 is not allowed".into()));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidTableau(format!("entry {v} repeated")));
            }
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Shape {
        Shape {
            rows: self.rows.iter().map(Vec::len).collect(),
        }
    }

    /// Rows strictly increase left to right and columns top to bottom.
    pub fn is_standard(&self) -> bool {
        rows_and_columns_increasing(&self.rows)
    }

    /// The quasi-tableau membership test for `D_{n,k,s}` recording tableaux:
    /// first row reads `1, ..., n-k`, then `s` strictly decreasing entries,
    /// then a strictly increasing tail; the rows below the first form a
    /// standard tableau on their own value set. The boundary between the
    /// decreasing run and the tail carries no constraint, so a tableau can
    /// belong to `D_{n,k,s}` for several `s` at once.
    pub fn is_quasi(&self, k: usize, s: usize) -> bool {
        let n = self.n();
        if k > n || s > k {
            return false;
        }
        let Some(first) = self.rows.first() else {
            return n == 0 && k == 0;
        };
        if first.len() < n - k + s {
            return false;
        }
        if first[..n - k] != (1..=n - k).collect::<Vec<_>>()[..] {
            return false;
        }
        let tail = &first[n - k..];
        if tail[..s].windows(2).any(|p| p[0] <= p[1]) {
            return false;
        }
        if tail[s..].windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
        rows_and_columns_increasing(&self.rows[1..])
    }

    /// Length of the maximal strictly decreasing run in the first row starting
    /// right after position `prefix`; 0 when the first row has length `prefix`.
    /// Used to classify a quasi-tableau's unique `s`.
    pub fn decreasing_run_len(&self, prefix: usize) -> usize {
        let Some(first) = self.rows.first() else {
            return 0;
        };
        let tail = &first[prefix.min(first.len())..];
        if tail.is_empty() {
            return 0;
        }
        let mut len = 1;
        while len < tail.len() && tail[len - 1] > tail[len] {
            len += 1;
        }
        len
    }

    /// 1-based (row, column) of a value.
    pub fn position_of(&self, value: usize) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&v| v == value) {
                return Some((r + 1, c + 1));
            }
        }
        None
    }

    /// Tableau descent set: all `i` such that `i+1` sits in a lower row than `i`.
    pub fn descent_set(&self) -> DescentSet {
        let n = self.n();
        let mut row_of = vec![0usize; n + 2];
        for (r, row) in self.rows.iter().enumerate() {
            for &v in row {
                row_of[v] = r + 1;
            }
        }
        DescentSet::new((1..n).filter(|&i| row_of[i + 1] > row_of[i]).collect())
    }

    pub fn maj(&self) -> usize {
        self.descent_set().sum()
    }
}

fn rows_and_columns_increasing(rows: &[Vec<usize>]) -> bool {
    for row in rows {
        if row.windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
    }
    for r in 1..rows.len() {
        for c in 0..rows[r].len() {
            if c >= rows[r - 1].len() || rows[r - 1][c] >= rows[r][c] {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let mut first = true;
            for v in row {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// A same-shape pair `(P, Q)`: the image space of RSK. `P` is always standard;
/// `Q` is standard or quasi-standard depending on the set at hand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauPair {
    #[serde(rename = "P")]
    pub p: Tableau,
    #[serde(rename = "Q")]
    pub q: Tableau,
}

impl TableauPair {
    pub fn new(p: Tableau, q: Tableau) -> Result<Self> {
        if p.shape() != q.shape() {
            return Err(Error::InvalidTableau(
                "P and Q must have the same shape".into(),
            ));
        }
        Ok(Self { p, q })
    }
}

/// Schensted row insertion of `x` into a standard insertion tableau. Returns
/// the new tableau and the 1-based index of the row where a cell was created.
pub fn row_insert(tableau: &Tableau, x: usize) -> Result<(Tableau, usize)> {
    if tableau.rows.iter().flatten().any(|&v| v == x) {
        return Err(Error::InvalidTableau(format!("value {x} already present")));
    }
    let mut rows = tableau.rows.clone();
    let mut carry = x;
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&v| v > carry) {
            Some(c) => {
                carry = std::mem::replace(&mut row[c], carry);
            }
            None => {
                row.push(carry);
                return Ok((Tableau { rows }, r + 1));
            }
        }
    }
    let r = rows.len();
    rows.push(vec![carry]);
    Ok((Tableau { rows }, r + 1))
}

/// The RSK correspondence: `w -> (P, Q)` with `P` the insertion and `Q` the
/// recording tableau.
pub fn rsk(w: &Permutation) -> TableauPair {
    let mut p = Tableau::empty();
    let mut q_rows: Vec<Vec<usize>> = Vec::new();
    for i in 1..=w.n() {
        let (next, row) = row_insert(&p, w.at(i)).expect("permutation values are distinct");
        p = next;
        if row > q_rows.len() {
            q_rows.push(Vec::new());
        }
        q_rows[row - 1].push(i);
    }
    TableauPair {
        p,
        q: Tableau { rows: q_rows },
    }
}

/// Inverse RSK by reverse bumping in decreasing order of the `Q` labels.
pub fn rsk_inverse(pair: &TableauPair) -> Result<Permutation> {
    if pair.p.shape() != pair.q.shape() {
        return Err(Error::InvalidTableau("shape mismatch".into()));
    }
    if !pair.p.is_standard() || !pair.q.is_standard() {
        return Err(Error::InvalidTableau(
            "inverse RSK requires both tableaux standard".into(),
        ));
    }
    let n = pair.p.n();
    let mut rows = pair.p.rows.clone();
    let mut word = vec![0usize; n];
    for label in (1..=n).rev() {
        let (r, c) = pair
            .q
            .position_of(label)
            .ok_or_else(|| Error::InvalidTableau(format!("label {label} missing in Q")))?;
        let (r, c) = (r - 1, c - 1);
        if c + 1 != rows[r].len() {
            return Err(Error::InvalidTableau(format!(
                "label {label} is not at the end of its row"
            )));
        }
        let mut carry = rows[r].pop().expect("non-empty row");
        if rows[r].is_empty() {
            rows.pop();
        }
        for row in rows[..r].iter_mut().rev() {
            // Largest entry smaller than the carried value gets bumped back out.
            let c = row
                .iter()
                .rposition(|&v| v < carry)
                .ok_or_else(|| Error::InvalidTableau("reverse bump failed".into()))?;
            carry = std::mem::replace(&mut row[c], carry);
        }
        word[label - 1] = carry;
    }
    Permutation::new(word)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeLimit { n, cap })
    } else {
        Ok(())
    }
}

/// All standard Young tableaux of a shape, by backtracking over the placement
/// of `1, ..., n` (deterministic: smaller row index first).
pub fn enumerate_syt(shape: &Shape, cap: usize) -> Result<Vec<Tableau>> {
    check_cap(shape.size(), cap)?;
    let target = shape.rows();
    let n = shape.size();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
    let mut out = Vec::new();
    fn rec(
        v: usize,
        n: usize,
        target: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tableau>,
    ) {
        if v > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..target.len() {
            let len = rows[r].len();
            if len < target[r] && (r == 0 || len < rows[r - 1].len()) {
                rows[r].push(v);
                rec(v + 1, n, target, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(1, n, target, &mut rows, &mut out);
    Ok(out)
}

/// Relabels a standard tableau on `[m]` by an increasing value list, giving a
/// filling that is standard on that value set.
fn relabel(t: &Tableau, values: &[usize]) -> Vec<Vec<usize>> {
    t.rows
        .iter()
        .map(|row| row.iter().map(|&v| values[v - 1]).collect())
        .collect()
}

/// `C^rsk_{n,s}`: same-shape SYT pairs whose recording tableau's first row
/// starts with `1, ..., n-s`.
pub fn enumerate_crsk(n: usize, s: usize, cap: usize) -> Result<Vec<TableauPair>> {
    check_cap(n, cap)?;
    if s > n {
        return Err(Error::Regime(format!("s = {s} exceeds n = {n}")));
    }
    let mut out = Vec::new();
    for shape in partitions(n) {
        if shape.rows()[0] < n - s {
            continue;
        }
        let all = enumerate_syt(&shape, cap)?;
        let qs: Vec<&Tableau> = all
            .iter()
            .filter(|t| t.rows[0][..n - s] == (1..=n - s).collect::<Vec<_>>()[..])
            .collect();
        for q in qs {
            for p in &all {
                out.push(TableauPair {
                    p: p.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `Pi^rsk_{n,k}`: SYT pairs whose recording tableau's first row is exactly
/// `1, ..., n-k`.
pub fn enumerate_pirsk(n: usize, k: usize, cap: usize) -> Result<Vec<TableauPair>> {
    check_cap(n, cap)?;
    if k > n {
        return Err(Error::Regime(format!("k = {k} exceeds n = {n}")));
    }
    let mut out = Vec::new();
    for shape in partitions(n) {
        if shape.rows()[0] != n - k {
            continue;
        }
        let all = enumerate_syt(&shape, cap)?;
        let qs: Vec<&Tableau> = all
            .iter()
            .filter(|t| t.rows[0] == (1..=n - k).collect::<Vec<_>>())
            .collect();
        for q in qs {
            for p in &all {
                out.push(TableauPair {
                    p: p.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// `D_{n,k,s}`: pairs whose recording tableau satisfies [`Tableau::is_quasi`]
/// for `(k, s)`, built directly: pick the first-row tail (a decreasing run of
/// `s` values then an increasing tail), then fill the lower rows with every
/// standard arrangement of the remaining values.
pub fn enumerate_d(n: usize, k: usize, s: usize, cap: usize) -> Result<Vec<TableauPair>> {
    check_cap(n, cap)?;
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    if s > k {
        return Err(Error::Regime(format!("need s <= k, got s = {s}, k = {k}")));
    }
    use itertools::Itertools;
    let mut out = Vec::new();
    for shape in partitions(n) {
        let first_len = shape.rows()[0];
        if first_len < n - k + s {
            continue;
        }
        let tail_len = first_len - (n - k);
        let sub_shape_rows = shape.rows()[1..].to_vec();
        let shape_syt = enumerate_syt(&shape, cap)?;
        for tail_values in (n - k + 1..=n).combinations(tail_len) {
            for run in tail_values.iter().copied().combinations(s) {
                let mut first_row: Vec<usize> = (1..=n - k).collect();
                first_row.extend(run.iter().rev());
                first_row.extend(tail_values.iter().filter(|v| !run.contains(v)));
                let below_values: Vec<usize> = (n - k + 1..=n)
                    .filter(|v| !tail_values.contains(v))
                    .collect();
                let below_fillings: Vec<Vec<Vec<usize>>> = if sub_shape_rows.is_empty() {
                    vec![Vec::new()]
                } else {
                    let sub_shape = Shape::new(sub_shape_rows.clone())?;
                    enumerate_syt(&sub_shape, cap)?
                        .iter()
                        .map(|t| relabel(t, &below_values))
                        .collect()
                };
                for below in below_fillings {
                    let mut rows = vec![first_row.clone()];
                    rows.extend(below);
                    let q = Tableau { rows };
                    debug_assert!(q.is_quasi(k, s));
                    for p in &shape_syt {
                        out.push(TableauPair {
                            p: p.clone(),
                            q: q.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
