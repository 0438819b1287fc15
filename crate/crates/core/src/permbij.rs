//! The permutation-only machinery: LLI subsequences, the forward map `phi`
//! trading one unit of the increasing prefix against the LLI position data,
//! its inverse `psi`, the image characterization, and the telescoping chain
//! of permutation sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{enumerate_c, enumerate_pi, lis_length_oracle, Permutation};
use crate::util::binomial;

/// A strictly increasing list of 1-based positions into a host permutation
/// whose values increase along the list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSubsequence {
    indices: Vec<usize>,
}

impl IndexSubsequence {
    pub fn new(host: &Permutation, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::NotInDomain("indices must strictly increase".into()));
        }
        if indices.iter().any(|&i| i < 1 || i > host.n()) {
            return Err(Error::NotInDomain("index out of range".into()));
        }
        let vals: Vec<usize> = indices.iter().map(|&i| host.at(i)).collect();
        if vals.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::NotInDomain(
                "values along the indices must strictly increase".into(),
            ));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.indices.last().expect("non-empty subsequence")
    }

    pub fn values(&self, host: &Permutation) -> Vec<usize> {
        self.indices.iter().map(|&i| host.at(i)).collect()
    }
}

/// Result of the forward map: the shifted permutation together with the final
/// LLI position `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiResult {
    pub w: Permutation,
    pub a: usize,
}

/// The LLI-`m` subsequence of `pi`: among all length-`m` increasing
/// subsequences, last index minimal first (the first appearance of length
/// `m`), then lexicographically least index vector. `None` iff no increasing
/// subsequence of length `m` exists.
pub fn lli(pi: &Permutation, m: usize) -> Result<Option<IndexSubsequence>> {
    let n = pi.n();
    if m < 1 || m > n {
        return Err(Error::NotInDomain(format!("m = {m} out of range 1..={n}")));
    }
    let word = pi.word();
    // First appearance: scan with patience piles until the pile count hits m.
    let mut piles: Vec<usize> = Vec::new();
    let mut a = 0usize;
    for (i, &v) in word.iter().enumerate() {
        let pos = piles.partition_point(|&p| p < v);
        if pos == piles.len() {
            piles.push(v);
        } else {
            piles[pos] = v;
        }
        if piles.len() == m {
            a = i + 1;
            break;
        }
    }
    if a == 0 {
        return Ok(None);
    }
    // chain_to_a[j]: longest increasing chain from position j+1 ending at a.
    let mut chain_to_a = vec![0usize; a];
    chain_to_a[a - 1] = 1;
    for j in (0..a - 1).rev() {
        let mut best = 0;
        for j2 in j + 1..a {
            if word[j2] > word[j] && chain_to_a[j2] > best {
                best = chain_to_a[j2];
            }
        }
        if best > 0 {
            chain_to_a[j] = best + 1;
        }
    }
    // Greedy lex-least selection: take the smallest feasible index each step.
    let mut indices = Vec::with_capacity(m);
    let mut prev_idx = 0usize;
    let mut prev_val = 0usize;
    for t in 1..=m {
        let need = m - t + 1;
        let idx = (prev_idx..a)
            .find(|&j| word[j] > prev_val && chain_to_a[j] >= need)
            .expect("a completion exists by construction");
        indices.push(idx + 1);
        prev_idx = idx + 1;
        prev_val = word[idx];
    }
    debug_assert_eq!(*indices.last().unwrap(), a);
    Ok(Some(IndexSubsequence { indices }))
}

/// Brute-force reference for [`lli`]: enumerates every length-`m` increasing
/// subsequence and takes the (last index, index vector) minimum. Independent
/// of the greedy path; quadratic-DP free as well.
pub fn lli_oracle(pi: &Permutation, m: usize) -> Option<IndexSubsequence> {
    fn rec(
        word: &[usize],
        m: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        if chosen.len() == m {
            let candidate = chosen.clone();
            let better = match best {
                None => true,
                Some(b) => {
                    let key = (candidate.last().copied(), &candidate);
                    let bkey = (b.last().copied(), &*b);
                    key < bkey
                }
            };
            if better {
                *best = Some(candidate);
            }
            return;
        }
        for j in start..word.len() {
            if chosen.is_empty() || word[j] > word[chosen[chosen.len() - 1] - 1] {
                chosen.push(j + 1);
                rec(word, m, j + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = None;
    rec(pi.word(), m, 0, &mut Vec::new(), &mut best);
    best.map(|indices| IndexSubsequence { indices })
}

fn check_regime(n: usize, s: usize) -> Result<()> {
    if n < 2 * s {
        Err(Error::Regime(format!("need n >= 2s, got n = {n}, s = {s}")))
    } else {
        Ok(())
    }
}

/// The forward map on `C_{n,s} \ Pi_{n,s}`: shift the LLI-`(n-s+1)`
/// subsequence one slot toward the front, recording the vacated position `a`.
/// The result lies in `C_{n,s-1}` and has the same inverse-descent set.
pub fn phi(pi: &Permutation, s: usize) -> Result<PhiResult> {
    let n = pi.n();
    check_regime(n, s)?;
    if s == 0 {
        return Err(Error::NotInDomain("phi needs s >= 1".into()));
    }
    if !pi.is_in_c(s) {
        return Err(Error::NotInDomain(format!("{pi} is not in C_{{{n},{s}}}")));
    }
    let m = n - s + 1;
    let seq = lli(pi, m)?.ok_or_else(|| {
        Error::NotInDomain(format!(
            "{pi} has no increasing subsequence of length {m} (it lies in Pi_{{{n},{s}}})"
        ))
    })?;
    let idx = seq.indices();
    let a = seq.last();
    // l: longest prefix of the subsequence sitting at consecutive positions 1, 2, ...
    let l = idx
        .iter()
        .enumerate()
        .take_while(|&(t, &i)| i == t + 1)
        .count();
    if l == m {
        return Ok(PhiResult { w: pi.clone(), a });
    }
    let mut word = pi.word().to_vec();
    for t in l..m - 1 {
        word[idx[t] - 1] = pi.at(idx[t + 1]);
    }
    word.remove(a - 1);
    word.insert(l, pi.at(idx[l]));
    let w = Permutation::new(word)?;
    debug_assert!(w.is_in_c(s - 1));
    Ok(PhiResult { w, a })
}

/// Inverse of [`phi`]. `(w, a)` must be in the image: `w` in `C_{n,s-1}` with
/// the length-`a` prefix containing a length-`(n-s+1)` increasing subsequence
/// but none of length `n-s+2`.
pub fn psi(w: &Permutation, a: usize, s: usize) -> Result<Permutation> {
    let n = w.n();
    check_regime(n, s)?;
    if s == 0 {
        return Err(Error::NotInDomain("psi needs s >= 1".into()));
    }
    let m = n - s + 1;
    if a < m || a > n {
        return Err(Error::NotInDomain(format!(
            "a = {a} out of range {m}..={n}"
        )));
    }
    if !w.is_in_c(s - 1) {
        return Err(Error::NotInDomain(format!(
            "{w} is not in C_{{{n},{}}}",
            s - 1
        )));
    }
    let prefix = &w.word()[..a];
    let prefix_lis = lis_length_oracle(&Permutation::new(relabel_to_permutation(prefix))?);
    if prefix_lis != m {
        return Err(Error::NotInDomain(format!(
            "(w, a) outside the image of phi: prefix lis is {prefix_lis}, not {m}"
        )));
    }
    // Lex-largest length-m increasing subsequence of the prefix, greedily from
    // the left taking the largest feasible index.
    let chain_from = longest_chain_from(prefix);
    let mut idx = Vec::with_capacity(m);
    let mut prev_idx = 0usize;
    let mut prev_val = 0usize;
    for t in 1..=m {
        let need = m - t + 1;
        let j = (prev_idx..a)
            .rev()
            .find(|&j| prefix[j] > prev_val && chain_from[j] >= need)
            .ok_or_else(|| Error::NotInDomain("no spanning subsequence found".into()))?;
        idx.push(j + 1);
        prev_idx = j + 1;
        prev_val = prefix[j];
    }
    let vals: Vec<usize> = idx.iter().map(|&i| w.at(i)).collect();
    // The consecutive prefix of the recovered subsequence is exactly one
    // longer than it was before the forward shift, so the element the shift
    // inserted sits at position r. Removing it and shifting the remaining
    // subsequence values one slot toward the back undoes the shift; when the
    // forward map was the identity (a == m) this reduces to a no-op.
    let r = idx
        .iter()
        .enumerate()
        .take_while(|&(t, &i)| i == t + 1)
        .count();
    let mut word = w.word().to_vec();
    word.remove(r - 1);
    word.insert(a - 1, 0);
    for t in r - 1..m - 1 {
        word[idx[t + 1] - 2] = vals[t];
    }
    word[a - 1] = vals[m - 1];
    Permutation::new(word)
}

/// Longest increasing chain starting at each position of `word` (within the
/// slice), by quadratic DP.
fn longest_chain_from(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut chain = vec![1usize; n];
    for j in (0..n).rev() {
        for j2 in j + 1..n {
            if word[j2] > word[j] && chain[j2] + 1 > chain[j] {
                chain[j] = chain[j2] + 1;
            }
        }
    }
    chain
}

/// Ranks a list of distinct values into a permutation word (order isomorphic).
fn relabel_to_permutation(word: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = word.to_vec();
    sorted.sort_unstable();
    word.iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect()
}

/// Membership in `C_{n,s,a}`: in `C_{n,s}`, some increasing subsequence of
/// length `n-s+1` exists, and the LLI-`(n-s+1)` subsequence ends at `a`.
pub fn in_c_nsa(pi: &Permutation, s: usize, a: usize) -> bool {
    let n = pi.n();
    if s > n || !pi.is_in_c(s) {
        return false;
    }
    match lli(pi, n - s + 1) {
        Ok(Some(seq)) => seq.last() == a,
        _ => false,
    }
}

/// Materializes both sides of the image-complement identity
/// `C_{n,s-1} x {a} \ phi(C_{n,s,a}) = union over n-s+2 <= b <= a of C_{n,s-1,b}`
/// and checks them element-wise, returning the common set sorted.
pub fn image_complement(n: usize, s: usize, a: usize, cap: usize) -> Result<Vec<Permutation>> {
    check_regime(n, s)?;
    if s == 0 {
        return Err(Error::NotInDomain("image_complement needs s >= 1".into()));
    }
    let domain: Vec<Permutation> = enumerate_c(n, s, cap)?
        .into_iter()
        .filter(|pi| in_c_nsa(pi, s, a))
        .collect();
    let mut image: HashSet<Permutation> = HashSet::new();
    for pi in &domain {
        let res = phi(pi, s)?;
        debug_assert_eq!(res.a, a);
        image.insert(res.w);
    }
    if image.len() != domain.len() {
        return Err(Error::NotInDomain(format!(
            "phi is not injective on C_{{{n},{s},{a}}}"
        )));
    }
    let c_prev = enumerate_c(n, s - 1, cap)?;
    let lhs: HashSet<Permutation> = c_prev
        .iter()
        .filter(|w| !image.contains(*w))
        .cloned()
        .collect();
    let mut rhs: HashSet<Permutation> = HashSet::new();
    for b in n - s + 2..=a {
        rhs.extend(c_prev.iter().filter(|w| in_c_nsa(w, s - 1, b)).cloned());
    }
    if lhs != rhs {
        return Err(Error::NotInDomain(format!(
            "image-complement identity fails for n = {n}, s = {s}, a = {a}"
        )));
    }
    let mut common: Vec<Permutation> = lhs.into_iter().collect();
    common.sort();
    Ok(common)
}

/// Summary of one telescoping-chain verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermsetSummary {
    /// `|Pi_{n,k}|` by direct enumeration.
    pub pi_count: u64,
    /// The same count reproduced by unrolling the chain.
    pub chain_count: i64,
}

/// Unrolls the telescoping chain of sets under `phi`, verifying every step:
/// the partition of `C_{n,k} \ Pi_{n,k}` by LLI end position, `phi`/`psi`
/// round trips with descent preservation on every element, the
/// image-complement identity at every level, the level-count recurrence, and
/// the weakly-decreasing-tuple counts that telescope to the alternating sum.
#[allow(clippy::needless_range_loop)] // the indices are levels, not positions
pub fn permset_chain(n: usize, k: usize, cap: usize) -> Result<PermsetSummary> {
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    let pi_set: HashSet<Permutation> = enumerate_pi(n, k, cap)?.into_iter().collect();
    let c_k = enumerate_c(n, k, cap)?;

    // Level sets C_{n,s,a} for all 1 <= s <= k.
    let mut counts = vec![vec![0u64; n + 1]; k + 1];
    for s in 1..=k {
        let c_s = enumerate_c(n, s, cap)?;
        for a in n - s + 1..=n {
            let cell: Vec<&Permutation> = c_s.iter().filter(|pi| in_c_nsa(pi, s, a)).collect();
            counts[s][a] = cell.len() as u64;
            let mut image = HashSet::new();
            for pi in &cell {
                let res = phi(pi, s)?;
                if res.a != a {
                    return Err(Error::NotInDomain("phi moved the end position".into()));
                }
                if pi.idescent_set() != res.w.idescent_set() {
                    return Err(Error::NotInDomain(format!(
                        "phi changed the inverse descent set of {pi}"
                    )));
                }
                if psi(&res.w, res.a, s)? != **pi {
                    return Err(Error::NotInDomain(format!("psi(phi({pi})) != {pi}")));
                }
                image.insert(res.w);
            }
            if image.len() != cell.len() {
                return Err(Error::NotInDomain(format!(
                    "phi not injective on C_{{{n},{s},{a}}}"
                )));
            }
            image_complement(n, s, a, cap)?;
        }
    }

    if k > 0 {
        // C_{n,k} \ Pi_{n,k} is partitioned by the LLI end position.
        let complement: HashSet<&Permutation> =
            c_k.iter().filter(|pi| !pi_set.contains(*pi)).collect();
        let by_a: u64 = counts[k][n - k + 1..=n].iter().sum();
        if by_a != complement.len() as u64 {
            return Err(Error::NotInDomain(
                "LLI end positions do not partition C \\ Pi".into(),
            ));
        }
        // Level-count recurrence from the image characterization.
        for s in 1..=k {
            let c_prev_size = crate::util::falling_factorial(n, s - 1);
            for a in n - s + 1..=n {
                let removed: u64 = (n - s + 2..=a).map(|b| counts[s - 1][b]).sum();
                if counts[s][a] != c_prev_size - removed {
                    return Err(Error::NotInDomain(format!(
                        "level recurrence fails at s = {s}, a = {a}"
                    )));
                }
            }
        }
    }

    // The r-tuple windows that appear when the chain is telescoped.
    for r in 1..=k {
        let tuples = count_weakly_decreasing_tuples(n, k, r);
        if tuples != binomial(k, r) {
            return Err(Error::NotInDomain(format!(
                "tuple count at r = {r} is {tuples}, expected {}",
                binomial(k, r)
            )));
        }
    }

    // Telescoped alternating sum.
    let mut chain_count = c_k.len() as i64;
    for r in 1..=k {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let term = binomial(k, r) as i64 * crate::util::falling_factorial(n, k - r) as i64;
        chain_count += sign * term;
    }
    let pi_count = pi_set.len() as u64;
    if chain_count != pi_count as i64 {
        return Err(Error::NotInDomain(format!(
            "telescoped chain gives {chain_count}, enumeration gives {pi_count}"
        )));
    }
    Ok(PermsetSummary {
        pi_count,
        chain_count,
    })
}

/// Counts weakly decreasing tuples `(a_r, ..., a_1)` with
/// `n-k+r <= a_r <= ... <= a_1 <= n`.
fn count_weakly_decreasing_tuples(n: usize, k: usize, r: usize) -> u64 {
    fn rec(lo: usize, hi: usize, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        (lo..=hi).map(|v| rec(v, hi, left - 1)).sum()
    }
    rec(n - k + r, n, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lli_examples() {
        let seq = lli(&p("2513467"), 3).unwrap().unwrap();
        assert_eq!(seq.indices(), &[1, 4, 5]);
        assert_eq!(seq.values(&p("2513467")), vec![2, 3, 4]);

        let id = Permutation::identity(6);
        assert_eq!(lli(&id, 4).unwrap().unwrap().indices(), &[1, 2, 3, 4]);

        let seq = lli(&p("12684357"), 5).unwrap().unwrap();
        assert_eq!(seq.indices(), &[1, 2, 5, 7, 8]);
        assert_eq!(seq.values(&p("12684357")), vec![1, 2, 4, 5, 7]);
    }

    #[test]
    fn lli_absent_when_lis_short() {
        assert!(lli(&p("1243"), 4).unwrap().is_none());
        assert!(lli(&p("1243"), 0).is_err());
        assert!(lli(&p("1243"), 5).is_err());
    }

    #[test]
    fn lli_agrees_with_oracle() {
        for n in 1..=6 {
            for w in enumerate_sn(n, 10).unwrap() {
                for m in 1..=n {
                    let got = lli(&w, m).unwrap();
                    let want = lli_oracle(&w, m);
                    assert_eq!(
                        got.as_ref().map(|s| s.indices().to_vec()),
                        want.as_ref().map(|s| s.indices().to_vec()),
                        "w = {w}, m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_worked_example() {
        let res = phi(&p("12684357"), 4).unwrap();
        assert_eq!(res.w, p("12468537"));
        assert_eq!(res.a, 8);
    }

    #[test]
    fn phi_rejects_pi_members() {
        // 1243 is in Pi_{4,1}: no increasing subsequence of length 4.
        assert!(matches!(phi(&p("1243"), 1), Err(Error::NotInDomain(_))));
        // Regime guard.
        assert!(matches!(phi(&p("1243"), 3), Err(Error::Regime(_))));
    }

    #[test]
    fn phi_fixes_fully_prefixed_words() {
        let res = phi(&p("1234"), 1).unwrap();
        assert_eq!(res.w, p("1234"));
        assert_eq!(res.a, 4);
        assert_eq!(psi(&p("1234"), 4, 1).unwrap(), p("1234"));
    }

    #[test]
    fn psi_worked_example() {
        assert_eq!(psi(&p("12468537"), 8, 4).unwrap(), p("12684357"));
    }

    #[test]
    fn psi_rejects_outside_image() {
        // Prefix of length 8 of the identity has lis 8 > n-s+2 for s = 4.
        let id = Permutation::identity(8);
        assert!(matches!(psi(&id, 8, 4), Err(Error::NotInDomain(_))));
    }

    #[test]
    fn round_trips_exhaustive() {
        for n in 2..=7 {
            for s in 1..=n / 2 {
                for pi in enumerate_c(n, s, 10).unwrap() {
                    if pi.lis_length() < n - s + 1 {
                        continue;
                    }
                    let res = phi(&pi, s).unwrap();
                    assert!(res.w.is_in_c(s - 1));
                    assert_eq!(pi.idescent_set(), res.w.idescent_set(), "pi = {pi}");
                    assert_eq!(psi(&res.w, res.a, s).unwrap(), pi);
                }
            }
        }
    }

    #[test]
    fn in_c_nsa_examples() {
        assert!(in_c_nsa(&p("12684357"), 4, 8));
        assert!(!in_c_nsa(&p("12684357"), 4, 7));
        assert!(!in_c_nsa(&p("1243"), 1, 4));
        // Identity: the LLI-(n-s+1) ends at n-s+1.
        let id = Permutation::identity(6);
        assert!(in_c_nsa(&id, 2, 5));
        assert!(!in_c_nsa(&id, 2, 6));
    }

    #[test]
    fn image_complement_small() {
        // Both sides computed exhaustively inside; Err means mismatch.
        image_complement(4, 2, 3, 10).unwrap();
        image_complement(4, 2, 4, 10).unwrap();
        for a in 5..=6 {
            image_complement(6, 2, a, 10).unwrap();
        }
        // a = n-s+1: the union on the right is empty, phi surjects.
        let leftover = image_complement(4, 2, 3, 10).unwrap();
        let c_31_count = enumerate_c(4, 1, 10).unwrap().len();
        let domain = enumerate_c(4, 2, 10)
            .unwrap()
            .into_iter()
            .filter(|pi| in_c_nsa(pi, 2, 3))
            .count();
        assert_eq!(leftover.len(), c_31_count - domain);
    }

    #[test]
    fn permset_chain_small() {
        let s = permset_chain(4, 1, 10).unwrap();
        assert_eq!(s.pi_count, 3);
        let s = permset_chain(4, 2, 10).unwrap();
        assert_eq!(s.pi_count, 5);
        assert_eq!(s.chain_count, 5);
        let s = permset_chain(6, 3, 10).unwrap();
        assert_eq!(s.pi_count as i64, s.chain_count);
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(count_weakly_decreasing_tuples(8, 3, 2), 3);
        for k in 0..=4 {
            for r in 1..=k {
                assert_eq!(count_weakly_decreasing_tuples(10, k, r), binomial(k, r));
            }
        }
    }
}
