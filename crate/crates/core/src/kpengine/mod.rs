//! Parameter engine for the Kodaira–Parshin family `X_q → Y'_q → Y`: surjection
//! counts, dimension bounds, the conditions on `(v, q)` under which the type (c)
//! locus is empty, and searches for the least admissible `q`.

mod conditions;

pub use conditions::{
    check_conditions, find_min_q, ConditionCheck, ConditionReport, KpQuery, Variant, DEFAULT_Q_CEILING,
    MARGINAL_TOLERANCE,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{crt, factor_u64, is_prime, is_prime_u64, pow_int, zeta_upper_bound, DEFAULT_ZETA_TERMS};

/// Default cap on the number of candidates [`linnik_q`] examines.
pub const LINNIK_CEILING: u64 = 1_000_000_000;

pub(crate) fn require_odd_prime(q: u64) -> Result<()> {
    if q.is_multiple_of(2) || !is_prime_u64(q) {
        return Err(Error::NotOddPrime(q.to_string()));
    }
    Ok(())
}

fn require_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::invalid("g", format!("genus must be at least 2, got {g}")));
    }
    Ok(())
}

/// Number of surjections `Z^{2g} → Z/k`, i.e. `k^{2g}·∏_{r | k}(1 − r^{−2g})`.
pub fn surj_count(g: u32, k: u64) -> Result<BigInt> {
    if g == 0 || k == 0 {
        return Err(Error::invalid("g/k", "both must be at least 1"));
    }
    let mut out = BigInt::one();
    for (r, a) in factor_u64(k) {
        let r = r as i64;
        out *= pow_int(r, 2 * g * a) - pow_int(r, 2 * g * (a - 1));
    }
    Ok(out)
}

/// Relative dimension `d_q = (g − 1/2)(q − 1)` of the Kodaira–Parshin family.
pub fn kp_dimension(g: u32, q: u64) -> Result<BigRational> {
    require_genus(g)?;
    require_odd_prime(q)?;
    Ok(BigRational::new(BigInt::from(2 * g - 1), BigInt::from(2)) * BigRational::from_integer(BigInt::from(q - 1)))
}

/// Upper bound `d(2d+1) + 1` on the dimension of the automorphism group of a
/// rank-`2d` symplectic pair.
pub fn aut_dim_bound(d: u64) -> BigInt {
    BigInt::from(d) * BigInt::from(2 * d + 1) + 1
}

/// Least `r` with `d(2d+1) < r·d(d+1)/2`.
pub fn trichotomy_min_degree(d: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::invalid("d", "must be at least 1"));
    }
    Ok(BigInt::from((2 * (2 * d + 1)) / (d + 1) + 1))
}

/// `∏_{r | q−1, r odd prime} max(1 − 18/(r−1), 0)`.
pub fn density_lower_bound(q: u64) -> Result<BigRational> {
    require_odd_prime(q)?;
    let mut out = BigRational::one();
    for (r, _) in factor_u64(q - 1) {
        if r == 2 {
            continue;
        }
        let term = BigRational::one() - BigRational::new(BigInt::from(18), BigInt::from(r - 1));
        if term <= BigRational::zero() {
            return Ok(BigRational::zero());
        }
        out *= term;
    }
    Ok(out)
}

/// Least prime `q` with `q ≡ 3 (mod 4)` and `q ≡ 2` modulo every odd prime
/// below `r0`, examining at most `ceiling` members of that residue class.
pub fn linnik_q(r0: u64, ceiling: u64) -> Result<BigInt> {
    if r0 < 3 || !is_prime_u64(r0) {
        return Err(Error::invalid("r0", format!("{r0} is not a prime >= 3")));
    }
    let mut congruences = vec![(BigInt::from(3), BigInt::from(4))];
    congruences.extend(
        (3..r0)
            .filter(|&r| is_prime_u64(r))
            .map(|r| (BigInt::from(2), BigInt::from(r))),
    );
    let (mut candidate, modulus) = crt(&congruences)?;
    for _ in 0..ceiling {
        if is_prime(&candidate) {
            return Ok(candidate);
        }
        candidate += &modulus;
    }
    Err(Error::SearchExhausted {
        what: "prime in the residue class",
        last: (candidate - modulus).to_string(),
    })
}

/// Comparison of `Z·n_v/k^g` against `1/((2g−1)k + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBound {
    pub bound: BigRational,
    pub target: BigRational,
    pub holds: bool,
}

/// Upper bound for `size_v` of the surjection set, with `ζ(2g)` replaced by
/// its certified over-estimate.
pub fn size_v_upper_bound(g: u32, k: u64, n_v: &BigInt) -> Result<SizeBound> {
    require_genus(g)?;
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    if n_v.is_negative() {
        return Err(Error::invalid("n_v", "must be non-negative"));
    }
    let z = zeta_upper_bound(2 * g, DEFAULT_ZETA_TERMS);
    let bound = z * BigRational::new(n_v.clone(), num_traits::pow(BigInt::from(k), g as usize));
    let target = BigRational::new(BigInt::one(), BigInt::from(u64::from(2 * g - 1) * k + 1));
    Ok(SizeBound {
        holds: bound < target,
        bound,
        target,
    })
}
