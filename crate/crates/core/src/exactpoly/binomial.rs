use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Generalized binomial coefficient `n choose k` for any signed `n`.
///
/// Zero for `k < 0`; otherwise the falling factorial `n (n-1) ... (n-k+1)`
/// divided by `k!`, so negative upper indices follow
/// `binom(n, k) = (-1)^k binom(k - n - 1, k)`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    // symmetric shortcut only valid for nonnegative n
    let k = if n >= 0 && 2 * k > n { n - k } else { k };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64, k: i64) -> i64 {
        i64::try_from(binomial(n, k)).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(b(5, -1), 0);
        assert_eq!(b(-2, 1), -2);
        assert_eq!(b(4, 2), 6);
        assert_eq!(b(0, 0), 1);
        assert_eq!(b(3, 5), 0);
        assert_eq!(b(-1, 3), -1);
        assert_eq!(b(-2, 0), 1);
        assert_eq!(b(10, 7), 120);
    }

    #[test]
    fn negative_upper_index_reflection() {
        for n in -8..8 {
            for k in 0..8 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(b(n, k), sign * b(k - n - 1, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pascal_rule_holds_everywhere() {
        for n in -6..10 {
            for k in -2..10 {
                assert_eq!(b(n + 1, k), b(n, k) + b(n, k - 1), "n={n} k={k}");
            }
        }
    }
}
