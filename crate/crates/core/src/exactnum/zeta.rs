use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const DEFAULT_ZETA_TERMS: u32 = 4;

/// Certified rational upper bound for ζ(s):
/// `Σ_{n=1}^{N} n^{-s} + N^{1-s}/(s-1)`.
///
/// The tail `Σ_{n>N} n^{-s}` is dominated by `∫_N^∞ x^{-s} dx`.
pub fn zeta_upper_bound(s: u32, terms: u32) -> BigRational {
    assert!(s >= 2, "zeta bound needs s >= 2");
    assert!(terms >= 1, "zeta bound needs at least one term");
    let mut sum = BigRational::zero();
    for n in 1..=terms {
        let denom = num_traits::pow(BigInt::from(n), s as usize);
        sum += BigRational::new(BigInt::one(), denom);
    }
    let tail_den = num_traits::pow(BigInt::from(terms), (s - 1) as usize) * BigInt::from(s - 1);
    sum + BigRational::new(BigInt::one(), tail_den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn examples() {
        assert_eq!(zeta_upper_bound(4, 1), rational(4, 3));
        assert_eq!(zeta_upper_bound(4, 2), rational(53, 48));
        assert_eq!(zeta_upper_bound(6, 2), rational(327, 320));
        assert!(zeta_upper_bound(4, 2) < rational(9, 8));
    }

    #[test]
    fn monotone_and_above_partial_sums() {
        for s in [4u32, 6, 8, 10] {
            let mut prev = zeta_upper_bound(s, 2);
            for n in 3..=12 {
                let cur = zeta_upper_bound(s, n);
                assert!(cur <= prev, "s={s} N={n}");
                let partial: BigRational = (1..=n + 1)
                    .map(|k| BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(k), s as usize)))
                    .fold(BigRational::zero(), |a, b| a + b);
                assert!(cur > partial);
                prev = cur;
            }
        }
    }
}
