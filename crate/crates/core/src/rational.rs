//! Exact rational numbers and a few integer combinatorics helpers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(-1)^k` as a small integer.
pub fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Canonical rendering: `a` for integers, `a/b` otherwise.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rendering of the absolute value, used when the sign is printed separately.
pub(crate) fn render_abs(r: &Rational) -> String {
    render_rational(&r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 3), int(10));
        assert_eq!(binomial(9, 0), int(1));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(4, 7), int(0));
        assert_eq!(binomial(4, -1), int(0));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=30 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(render_rational(&r), "-3/2");
        assert_eq!(render_rational(&rat(8, 4)), "2");
    }
}
