//! Exact test for q-Weil polynomials: every complex root has absolute value
//! `q^{n/2}`.
//!
//! The procedure strips the real roots `±q^{n/2}`, checks the functional
//! equation of the remainder, passes to the real Weil polynomial in
//! `β = α + q^n/α`, and locates its roots with Sturm sequences. Nothing is
//! approximated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime_power, sturm_count, Endpoint, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilCandidate {
    poly: IntPolynomial,
    q: BigInt,
    weight: u32,
}

impl WeilCandidate {
    pub fn new(poly: IntPolynomial, q: BigInt, weight: u32) -> Result<Self> {
        if !poly.is_monic() {
            let lc = poly
                .leading_coefficient()
                .map_or_else(|| "0".to_string(), |c| c.to_string());
            return Err(Error::NotMonic(lc));
        }
        if is_prime_power(&q).is_none() {
            return Err(Error::NotPrimePower(q.to_string()));
        }
        Ok(Self { poly, q, weight })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `q^n`, the common value of `|α|²`.
    pub fn norm(&self) -> BigInt {
        num_traits::pow(self.q.clone(), self.weight as usize)
    }
}

/// A real factor removed before the Sturm analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrippedFactor {
    /// `x² − q^n`
    Quadratic { multiplicity: u32 },
    /// `x − q^{n/2}` or `x + q^{n/2}` (root is `root`)
    Linear { root: BigInt, multiplicity: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// Remainder after stripping has odd degree, so a real root off the circle.
    OddRemainder,
    /// `x^d f(q^n/x) ≠ q^{nd/2} f(x)`; first failing coefficient index.
    FunctionalEquation { index: usize },
    /// The real Weil polynomial has non-real roots.
    NonRealTrace { distinct: usize, real: usize },
    /// Real roots `β` with `β² > 4q^n`.
    TraceOutOfRange { count: usize },
}

/// Sturm counts behind a verdict, reproducible from the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub remainder: IntPolynomial,
    /// Real Weil polynomial `h(β)` with `g(x) = x^k h(x + q^n/x)`.
    pub real_poly: Option<IntPolynomial>,
    /// Distinct roots of `h` (degree of its square-free part).
    pub distinct_roots: usize,
    /// Distinct real roots of `h` (Sturm on the whole line).
    pub real_roots: usize,
    /// Polynomial `H(γ)` with `H(β²) = ± h(β)h(−β)`, the resultant of `h(β)`
    /// and `β² − γ` in `β`.
    pub squared_poly: Option<IntPolynomial>,
    /// Distinct roots of `H` in `(4q^n, ∞)`.
    pub beyond_bound: usize,
    /// Distinct roots of `H` equal to `4q^n`, from `gcd(H, γ − 4q^n)`.
    pub on_boundary: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilVerdict {
    pub is_weil: bool,
    pub is_integral: bool,
    pub stripped: Vec<StrippedFactor>,
    pub rejection: Option<Rejection>,
    pub certificate: Certificate,
}

/// True iff every coefficient of the monic rational polynomial is an integer.
pub fn is_integral(coeffs: &[BigRational]) -> Result<bool> {
    let mut trimmed = coeffs;
    while let Some((last, rest)) = trimmed.split_last() {
        if last.is_zero() {
            trimmed = rest;
        } else {
            break;
        }
    }
    match trimmed.last() {
        Some(lc) if lc.is_one() => Ok(trimmed.iter().all(|c| c.is_integer())),
        Some(lc) => Err(Error::NotMonic(lc.to_string())),
        None => Err(Error::NotMonic("0".into())),
    }
}

/// Closed form for `x² + a x + b`.
pub fn quadratic_weil_exact(a: &BigInt, b: &BigInt, q: &BigInt, n: u32) -> bool {
    let norm = num_traits::pow(q.clone(), n as usize);
    let disc = a * a - b * BigInt::from(4);
    if disc.is_negative() {
        // conjugate pair with |α|² = b
        *b == norm
    } else if disc.is_zero() {
        // double root -a/2
        a * a == &norm * BigInt::from(4)
    } else {
        // distinct real roots, both in {±√(q^n)}
        a.is_zero() && *b == -norm
    }
}

fn strip_all(f: &mut IntPolynomial, factor: &IntPolynomial) -> u32 {
    let mut count = 0;
    while let Some(quot) = f.div_exact(factor) {
        *f = quot;
        count += 1;
    }
    count
}

/// `x^m g(Q/x) = Q^{m/2} g(x)`, i.e. `g_i Q^i = Q^{m/2} g_{m−i}`.
fn functional_equation(g: &IntPolynomial, norm: &BigInt) -> std::result::Result<(), usize> {
    let m = g.degree().unwrap_or(0);
    let half = num_traits::pow(norm.clone(), m / 2);
    let mut q_pow = BigInt::one();
    for i in 0..=m {
        if g.coeff(i) * &q_pow != &half * g.coeff(m - i) {
            return Err(i);
        }
        q_pow *= norm;
    }
    Ok(())
}

/// For self-reciprocal `g` of degree `2k`, the unique `h` of degree `k` with
/// `g(x) = x^k h(x + Q/x)`, via `x^j + Q^j x^{-j} = P_j(β)`,
/// `P_{j+1} = β P_j − Q P_{j−1}`.
fn real_weil_polynomial(g: &IntPolynomial, norm: &BigInt) -> IntPolynomial {
    let k = g.degree().unwrap_or(0) / 2;
    let beta = IntPolynomial::monomial(BigInt::one(), 1);
    let mut h = IntPolynomial::constant(g.coeff(k));
    let mut prev = IntPolynomial::constant(BigInt::from(2));
    let mut cur = beta.clone();
    for j in 1..=k {
        h = h + cur.scale(&g.coeff(k + j));
        let next = beta.clone() * cur.clone() - prev.scale(norm);
        prev = cur;
        cur = next;
    }
    h
}

/// `H` with `H(β²) = h(β)·h(−β)` up to sign.
fn squared_variable(h: &IntPolynomial) -> IntPolynomial {
    let even = h.clone() * h.reflect();
    IntPolynomial::new(even.coeffs().iter().step_by(2).cloned().collect())
}

pub fn check_weil(c: &WeilCandidate) -> Result<WeilVerdict> {
    let norm = c.norm();
    let mut g = c.poly.clone();
    let mut stripped = Vec::new();

    let quad = IntPolynomial::new(vec![-norm.clone(), BigInt::zero(), BigInt::one()]);
    let mult = strip_all(&mut g, &quad);
    if mult > 0 {
        stripped.push(StrippedFactor::Quadratic { multiplicity: mult });
    }
    let root = norm.sqrt();
    if &root * &root == norm {
        for r in [root.clone(), -root] {
            let mult = strip_all(&mut g, &IntPolynomial::linear_root(&r));
            if mult > 0 {
                stripped.push(StrippedFactor::Linear {
                    root: r,
                    multiplicity: mult,
                });
            }
        }
    }

    let mut cert = Certificate {
        remainder: g.clone(),
        real_poly: None,
        distinct_roots: 0,
        real_roots: 0,
        squared_poly: None,
        beyond_bound: 0,
        on_boundary: 0,
    };
    let verdict = |rejection: Option<Rejection>, cert: Certificate, stripped| WeilVerdict {
        is_weil: rejection.is_none(),
        is_integral: true,
        stripped,
        rejection,
        certificate: cert,
    };

    let m = g.degree().unwrap_or(0);
    if m == 0 {
        return Ok(verdict(None, cert, stripped));
    }
    if m % 2 == 1 {
        return Ok(verdict(Some(Rejection::OddRemainder), cert, stripped));
    }
    if let Err(index) = functional_equation(&g, &norm) {
        return Ok(verdict(
            Some(Rejection::FunctionalEquation { index }),
            cert,
            stripped,
        ));
    }

    let h = real_weil_polynomial(&g, &norm);
    let all = (Endpoint::NegInfinity, Endpoint::PosInfinity);
    let distinct = h.square_free_part().degree().unwrap_or(0);
    let real = sturm_count(&h, &all.0, &all.1)?;
    cert.real_poly = Some(h.clone());
    cert.distinct_roots = distinct;
    cert.real_roots = real;
    if real != distinct {
        return Ok(verdict(
            Some(Rejection::NonRealTrace { distinct, real }),
            cert,
            stripped,
        ));
    }

    let big_h = squared_variable(&h);
    let bound = &norm * BigInt::from(4);
    let beyond = sturm_count(
        &big_h,
        &Endpoint::Finite(BigRational::from_integer(bound.clone())),
        &Endpoint::PosInfinity,
    )?;
    let boundary = big_h
        .gcd(&IntPolynomial::linear_root(&bound))
        .degree()
        .unwrap_or(0);
    cert.squared_poly = Some(big_h);
    cert.beyond_bound = beyond;
    cert.on_boundary = boundary;
    if beyond > 0 {
        return Ok(verdict(
            Some(Rejection::TraceOutOfRange { count: beyond }),
            cert,
            stripped,
        ));
    }
    Ok(verdict(None, cert, stripped))
}

/// The `q^n`-reciprocal `x^d f(q^n/x) / f(0)`, scaled to stay monic. `None`
/// when `f(0) = 0` or the result is not integral.
pub fn reciprocal(c: &WeilCandidate) -> Option<WeilCandidate> {
    let f = &c.poly;
    let d = f.degree()?;
    let norm = c.norm();
    let f0 = f.coeff(0);
    if f0.is_zero() {
        return None;
    }
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut q_pow = BigInt::one();
    let mut raw = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        raw[d - i] = f.coeff(i) * &q_pow;
        q_pow *= &norm;
    }
    // leading coefficient of x^d f(Q/x) is f(0)
    for r in raw {
        let (quot, rem) = num_integer::Integer::div_rem(&r, &f0);
        if !rem.is_zero() {
            return None;
        }
        coeffs.push(quot);
    }
    WeilCandidate::new(IntPolynomial::new(coeffs), c.q.clone(), c.weight).ok()
}
