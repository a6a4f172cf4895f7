use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Chinese remaindering of `x ≡ r_i (mod m_i)` for pairwise coprime `m_i >= 1`.
///
/// Returns `(r, M)` with `M = ∏ m_i` and `0 <= r < M`. The empty system gives
/// `(0, 1)`.
pub fn crt(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    for (i, (_, m)) in residues.iter().enumerate() {
        if !m.is_positive() {
            return Err(Error::invalid("modulus", format!("modulus #{i} = {m} must be >= 1")));
        }
    }
    for i in 0..residues.len() {
        for j in i + 1..residues.len() {
            if !residues[i].1.gcd(&residues[j].1).is_one() {
                return Err(Error::NonCoprimeModuli {
                    first: i,
                    second: j,
                    m1: residues[i].1.to_string(),
                    m2: residues[j].1.to_string(),
                });
            }
        }
    }
    let mut acc = BigInt::from(0);
    let mut modulus = BigInt::one();
    for (r, m) in residues {
        // acc + modulus * t ≡ r (mod m)
        let inv = modulus.extended_gcd(m).x.mod_floor(m);
        let t = ((r - &acc) * inv).mod_floor(m);
        acc += &modulus * t;
        modulus *= m;
        acc = acc.mod_floor(&modulus);
    }
    Ok((acc, modulus))
}
