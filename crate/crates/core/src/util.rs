//! Small exact-integer helpers shared across modules.

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `n! / (n-r)!`
pub fn falling_factorial(n: usize, r: usize) -> u64 {
    assert!(r <= n);
    (n as u64 - r as u64 + 1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(falling_factorial(8, 4), 1680);
        assert_eq!(falling_factorial(4, 0), 1);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(4, 5), 0);
    }
}
