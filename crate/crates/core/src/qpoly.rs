//! Exact integer-coefficient polynomials in `q` and the generating-function
//! constructions: q-integers, q-falling factorials, major-index generating
//! functions, and the truncated Euler-product series used by the linear
//! extension lemma.
//!
//! Coefficients are checked 64-bit integers; overflow panics rather than
//! wrapping. At the enumeration cap every count fits comfortably.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{enumerate_c, Permutation};
use crate::tableau::TableauPair;
use crate::util::binomial;

/// Dense polynomial in `q`; index = degree, highest stored coefficient
/// nonzero, zero polynomial = empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct QPolynomial {
    coeffs: Vec<i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("q-polynomial coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("q-polynomial coefficient overflow")
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        Self { coeffs }
    }

    /// Ascending coefficient list; trailing zeros are stripped.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluation at `q = 1`: the underlying count.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0, |acc, &c| checked_add(acc, c))
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|&c| checked_mul(c, factor))
                .collect(),
        )
    }

    /// Drops all coefficients above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        let end = self.coeffs.len().min(max_degree + 1);
        Self::from_coeffs(self.coeffs[..end].to_vec())
    }
}

impl From<Vec<i64>> for QPolynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::from_coeffs(coeffs)
    }
}

impl From<QPolynomial> for Vec<i64> {
    fn from(p: QPolynomial) -> Self {
        p.coeffs
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, other: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        QPolynomial::from_coeffs(
            (0..len)
                .map(|d| checked_add(self.coeff(d), other.coeff(d)))
                .collect(),
        )
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, other: &QPolynomial) -> QPolynomial {
        self + &(-other)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        self.scale(-1)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = checked_add(coeffs[i + j], checked_mul(a, b));
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    /// Human form: `1 + 2q + 3q^2`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let mag = c.unsigned_abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if d == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// The q-integer `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_int(n: usize) -> Result<QPolynomial> {
    if n < 1 {
        return Err(Error::Regime("q_int needs n >= 1".into()));
    }
    Ok(QPolynomial::from_coeffs(vec![1; n]))
}

/// The q-falling factorial `[n]_q [n-1]_q ... [n-r+1]_q`; the empty product
/// for `r = 0`.
pub fn q_falling(n: usize, r: usize) -> Result<QPolynomial> {
    if r > n {
        return Err(Error::Regime(format!("r = {r} exceeds n = {n}")));
    }
    let mut acc = QPolynomial::one();
    for i in 0..r {
        acc = &acc * &q_int(n - i)?;
    }
    Ok(acc)
}

/// `sum over the stream of q^{maj(w^{-1})}`.
pub fn imaj_gf<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> QPolynomial {
    let mut counts: Vec<i64> = Vec::new();
    for w in perms {
        let d = w.imaj();
        if d >= counts.len() {
            counts.resize(d + 1, 0);
        }
        counts[d] = checked_add(counts[d], 1);
    }
    QPolynomial::from_coeffs(counts)
}

/// `sum over the pairs of q^{maj(P)}`, the insertion-tableau statistic.
pub fn maj_p_gf<'a>(pairs: impl IntoIterator<Item = &'a TableauPair>) -> QPolynomial {
    let mut counts: Vec<i64> = Vec::new();
    for pair in pairs {
        let d = pair.p.maj();
        if d >= counts.len() {
            counts.resize(d + 1, 0);
        }
        counts[d] = checked_add(counts[d], 1);
    }
    QPolynomial::from_coeffs(counts)
}

/// The alternating q-analogue sum
/// `sum_{r=0}^{k} (-1)^{k-r} (k choose r) [n]_q ... [n-r+1]_q`.
pub fn thm2_rhs(n: usize, k: usize) -> Result<QPolynomial> {
    if n < 2 * k {
        return Err(Error::Regime(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    alternating_q_sum(n, k)
}

/// Same sum without the regime gate, for exploratory reporting.
pub fn alternating_q_sum(n: usize, k: usize) -> Result<QPolynomial> {
    let mut acc = QPolynomial::zero();
    for r in 0..=k {
        let sign = if (k - r).is_multiple_of(2) { 1 } else { -1 };
        let term = q_falling(n, r)?.scale(sign * binomial(k, r) as i64);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The inverse-major-index generating function over `C_{n,s}`: the left side
/// of the linear-extension lemma.
pub fn wp_via_linear_extensions(n: usize, s: usize, cap: usize) -> Result<QPolynomial> {
    let perms = enumerate_c(n, s, cap)?;
    Ok(imaj_gf(perms.iter()))
}

/// Truncated power series of
/// `1 / ((1-q)(1-q^2)...(1-q^{n-s})) * 1 / (1-q)^s`,
/// the order-reversing-map generating function.
pub fn gp_series(n: usize, s: usize, max_degree: usize) -> QPolynomial {
    let mut coeffs = vec![0i64; max_degree + 1];
    coeffs[0] = 1;
    let mut strides: Vec<usize> = (1..=n.saturating_sub(s)).collect();
    strides.extend(std::iter::repeat_n(1, s));
    for d in strides {
        // Multiply by 1/(1 - q^d): running sums with stride d.
        for i in d..=max_degree {
            coeffs[i] = checked_add(coeffs[i], coeffs[i - d]);
        }
    }
    QPolynomial::from_coeffs(coeffs)
}

/// The product `(1-q)(1-q^2)...(1-q^n)`.
pub fn euler_factor(n: usize) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for i in 1..=n {
        let mut factor = vec![0i64; i + 1];
        factor[0] = 1;
        factor[i] = -1;
        acc = &acc * &QPolynomial::from_coeffs(factor);
    }
    acc
}

/// Checks the linear-extension lemma for `(n, s)` twice over: directly as
/// `sum_{w in C_{n,s}} q^{maj(w^{-1})} = [n]_q ... [n-s+1]_q`, and through the
/// series factorization `W_P(q) = G_P(q)(1-q)...(1-q^n)` truncated to degree
/// `n(n-1)/2` (the maximal major index, so truncated equality is equality).
pub fn verify_lemma_qinv(n: usize, s: usize, cap: usize) -> Result<bool> {
    let wp = wp_via_linear_extensions(n, s, cap)?;
    let direct_ok = wp == q_falling(n, s)?;
    let max_degree = n * (n - 1) / 2;
    let product = &gp_series(n, s, max_degree) * &euler_factor(n);
    let factored_ok = product.truncate(max_degree) == wp.truncate(max_degree);
    Ok(direct_ok && factored_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_pi;

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(1).unwrap(), QPolynomial::one());
        assert_eq!(q_int(3).unwrap().coeffs(), &[1, 1, 1]);
        assert!(q_int(0).is_err());
    }

    #[test]
    fn q_falling_examples() {
        assert_eq!(q_falling(5, 0).unwrap(), QPolynomial::one());
        assert_eq!(q_falling(4, 2).unwrap().coeffs(), &[1, 2, 3, 3, 2, 1]);
        assert!(q_falling(3, 4).is_err());
    }

    #[test]
    fn imaj_gf_examples() {
        let id = [Permutation::identity(4)];
        assert_eq!(imaj_gf(id.iter()), QPolynomial::one());

        let c31 = enumerate_c(3, 1, 10).unwrap();
        assert_eq!(imaj_gf(c31.iter()).coeffs(), &[1, 1, 1]);

        let pi42 = enumerate_pi(4, 2, 10).unwrap();
        assert_eq!(imaj_gf(pi42.iter()).coeffs(), &[0, 0, 1, 1, 2, 1]);
    }

    #[test]
    fn thm2_rhs_examples() {
        assert_eq!(thm2_rhs(5, 0).unwrap(), QPolynomial::one());
        assert_eq!(thm2_rhs(2, 1).unwrap().coeffs(), &[0, 1]);
        assert_eq!(thm2_rhs(4, 2).unwrap().coeffs(), &[0, 0, 1, 1, 2, 1]);
        assert!(thm2_rhs(3, 2).is_err());
    }

    #[test]
    fn wp_examples() {
        assert_eq!(
            wp_via_linear_extensions(5, 0, 10).unwrap(),
            QPolynomial::one()
        );
        assert_eq!(
            wp_via_linear_extensions(3, 1, 10).unwrap().coeffs(),
            &[1, 1, 1]
        );
        assert_eq!(
            wp_via_linear_extensions(3, 3, 10).unwrap().coeffs(),
            &[1, 2, 2, 1]
        );
    }

    #[test]
    fn gp_series_examples() {
        assert_eq!(gp_series(4, 2, 0), QPolynomial::one());
        assert_eq!(gp_series(2, 1, 2).coeffs(), &[1, 2, 3]);
        assert_eq!(gp_series(3, 1, 3).coeffs(), &[1, 2, 4, 6]);
    }

    #[test]
    fn lemma_qinv_small() {
        assert!(verify_lemma_qinv(3, 1, 10).unwrap());
        assert!(verify_lemma_qinv(4, 0, 10).unwrap());
        assert!(verify_lemma_qinv(5, 2, 10).unwrap());
        for n in 1..=6 {
            for s in 0..=n {
                assert!(verify_lemma_qinv(n, s, 10).unwrap(), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn eval_at_one_counts() {
        for n in 2..=6 {
            for k in 0..=n / 2 {
                let pi = enumerate_pi(n, k, 10).unwrap();
                assert_eq!(imaj_gf(pi.iter()).eval_at_one() as usize, pi.len());
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(
            QPolynomial::from_coeffs(vec![1, 2, 3]).to_string(),
            "1 + 2q + 3q^2"
        );
        assert_eq!(
            QPolynomial::from_coeffs(vec![0, 0, 1, 1, 2, 1]).to_string(),
            "q^2 + q^3 + 2q^4 + q^5"
        );
        assert_eq!(QPolynomial::from_coeffs(vec![-1, 1]).to_string(), "-1 + q");
    }

    #[test]
    fn arithmetic_identities() {
        let a = QPolynomial::from_coeffs(vec![1, -2, 3]);
        let b = QPolynomial::from_coeffs(vec![0, 5, 1]);
        let c = QPolynomial::from_coeffs(vec![7, 0, -1, 2]);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        assert_eq!(&a - &a, QPolynomial::zero());
    }

    #[test]
    fn serde_coefficient_list() {
        let p = QPolynomial::from_coeffs(vec![1, 2, 3, 3, 2, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[1,2,3,3,2,1]");
        let back: QPolynomial = serde_json::from_str("[1,2,3,3,2,1,0]").unwrap();
        assert_eq!(back, p);
    }
}
