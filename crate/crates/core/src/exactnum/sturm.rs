use num_rational::BigRational;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Interval endpoint on the extended rational line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl From<BigRational> for Endpoint {
    fn from(x: BigRational) -> Self {
        Endpoint::Finite(x)
    }
}

fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive_part());
    loop {
        let n = chain.len();
        let r = chain[n - 2].signed_pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps the sign pattern intact
        chain.push((-r).primitive_part());
    }
    chain
}

fn variations(chain: &[IntPolynomial], at: &Endpoint) -> usize {
    let signs = chain.iter().map(|f| match at {
        Endpoint::NegInfinity => f.sign_at_infinity(true),
        Endpoint::PosInfinity => f.sign_at_infinity(false),
        Endpoint::Finite(x) => f.sign_at(x),
    });
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// Works on the square-free part of `p`. An empty or reversed interval counts
/// zero roots.
pub fn sturm_count(p: &IntPolynomial, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ordered = match (lo, hi) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
        (Endpoint::PosInfinity, _) | (_, Endpoint::NegInfinity) => false,
        _ => true,
    };
    if !ordered {
        return Ok(0);
    }
    let sf = p.square_free_part();
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    Ok(variations(&chain, lo).saturating_sub(variations(&chain, hi)))
}
