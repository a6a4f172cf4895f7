//! Finite extensions of degree 2 and 3 of a p-adic field, counted as subfields
//! of a fixed algebraic closure (conjugate fields count separately).
//!
//! A degree-ℓ extension with ℓ prime is either unramified (exactly one) or
//! totally ramified. Tame totally ramified ones (p ≠ ℓ) number ℓ. Wild ones
//! (p = ℓ) are tallied by discriminant exponent with Krasner's formula, and
//! every tally is checked against Serre's mass formula before it is returned.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime_u64, pow_int};

/// Local data of a finite place `v | p`: ramification index `e` and residue
/// degree `f` over `Q_p`, plus caller-supplied global flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlaceProfile {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub self_conjugate: bool,
    pub good_reduction: bool,
}

impl PlaceProfile {
    pub fn new(p: u64, e: u32, f: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::invalid("p", format!("{p} is not prime")));
        }
        if e == 0 || f == 0 {
            return Err(Error::invalid("e/f", "ramification index and residue degree must be >= 1"));
        }
        Ok(Self {
            p,
            e,
            f,
            self_conjugate: false,
            good_reduction: false,
        })
    }

    pub fn with_self_conjugate(mut self, flag: bool) -> Self {
        self.self_conjugate = flag;
        self
    }

    pub fn with_good_reduction(mut self, flag: bool) -> Self {
        self.good_reduction = flag;
        self
    }

    /// `[K_v : Q_p] = e·f`
    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn residue_cardinality(&self) -> BigInt {
        pow_int(self.p as i64, self.f)
    }
}

/// Totally ramified extensions of degree `ℓ` grouped by the exponent
/// `c = (discriminant exponent) − ℓ + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedTally {
    pub degree: u32,
    /// `(c, number of subfields)` with `c` ascending.
    pub by_exponent: Vec<(u32, BigInt)>,
}

impl RamifiedTally {
    pub fn total(&self) -> BigInt {
        self.by_exponent.iter().map(|(_, n)| n).sum()
    }

    /// `Σ N_c · q^{-c}`; Serre's mass formula says this equals the degree.
    pub fn mass(&self, q: &BigInt) -> BigRational {
        self.by_exponent
            .iter()
            .fold(BigRational::zero(), |acc, (c, n)| {
                acc + BigRational::new(n.clone(), num_traits::pow(q.clone(), *c as usize))
            })
    }
}

/// Totally ramified degree-`ℓ` subfields of `K̄_v` over `K_v`, `ℓ` prime.
pub fn ramified_tally(v: &PlaceProfile, degree: u32) -> RamifiedTally {
    let ell = u64::from(degree);
    if v.p != ell {
        // tame: discriminant exponent ℓ − 1, so c = 0
        return RamifiedTally {
            degree,
            by_exponent: vec![(0, BigInt::from(degree))],
        };
    }
    // Krasner, degree p over a base with absolute ramification e and residue
    // field of size q: c ranges over 1 <= c < p·e with p ∤ c, where
    // N_c = p(q−1)q^{⌊c/p⌋}, and c = p·e with N_c = p·q^e.
    let p = degree;
    let q = v.residue_cardinality();
    let pe = p * v.e;
    let mut by_exponent = Vec::new();
    for c in 1..pe {
        if c % p != 0 {
            let n = BigInt::from(p) * (&q - 1u32) * num_traits::pow(q.clone(), (c / p) as usize);
            by_exponent.push((c, n));
        }
    }
    by_exponent.push((pe, BigInt::from(p) * num_traits::pow(q.clone(), v.e as usize)));
    RamifiedTally {
        degree,
        by_exponent,
    }
}

/// Number of extensions of degree 2 or 3 inside a fixed algebraic closure.
pub fn count_extensions(v: &PlaceProfile, degree: u32) -> Result<BigInt> {
    if degree != 2 && degree != 3 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let tally = ramified_tally(v, degree);
    let q = v.residue_cardinality();
    let mass = tally.mass(&q);
    assert_eq!(
        mass,
        BigRational::from_integer(BigInt::from(degree)),
        "mass formula violated for {v:?}, degree {degree}"
    );
    Ok(BigInt::one() + tally.total())
}

/// `n_v`: extensions of degree 2 or 3 inside `K̄_v`.
pub fn n_v(v: &PlaceProfile) -> BigInt {
    count_extensions(v, 2).expect("degree 2 supported")
        + count_extensions(v, 3).expect("degree 3 supported")
}
