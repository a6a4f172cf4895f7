//! Exact integers, rationals and integer polynomials, plus the number-theoretic
//! primitives the rest of the crate leans on.

mod crt;
mod factor;
mod poly;
mod primes;
mod sturm;
mod zeta;

pub use crt::crt;
pub use factor::{factor, factor_u64, odd_prime_divisors};
pub use poly::{IntPolynomial, ParsePolynomialError};
pub use primes::{is_prime, is_prime_power, is_prime_u64, PrimeSieve};
pub use sturm::{sturm_count, Endpoint};
pub use zeta::{zeta_upper_bound, DEFAULT_ZETA_TERMS};

pub type ExactInt = num_bigint::BigInt;
pub type ExactRational = num_rational::BigRational;

/// Integer `base^exp` as an [`ExactInt`].
pub fn pow_int(base: i64, exp: u32) -> ExactInt {
    num_traits::pow(ExactInt::from(base), exp as usize)
}

pub fn rational(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}
