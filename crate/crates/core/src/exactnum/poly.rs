use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// The leading coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(num/den)` for `den > 0`, read off the cleared integer
    /// `Σ c_i num^i den^(deg-i)`.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(deg) = self.degree() else { return 0 };
        let (num, den) = (x.numer(), x.denom());
        let mut h = self.coeffs[deg].clone();
        let mut den_pow = BigInt::one();
        for c in self.coeffs[..deg].iter().rev() {
            den_pow *= den;
            h = h * num + c * &den_pow;
        }
        signum(&h)
    }

    /// Sign of `p(x)` as `x → +∞` (or `-∞` when `negative`).
    pub fn sign_at_infinity(&self, negative: bool) -> i8 {
        match (self.degree(), self.leading_coefficient()) {
            (Some(d), Some(lc)) => {
                let s = signum(lc);
                if negative && d % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            _ => 0,
        }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part normalised to a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive_part();
        match p.leading_coefficient() {
            Some(lc) if lc.is_negative() => -p,
            _ => p,
        }
    }

    /// Pseudo-remainder scaled by a positive factor, so that
    /// `c·self = q·divisor + r` with `c > 0` and `deg r < deg divisor`.
    pub fn signed_pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.coeffs[dd].clone();
        let mut r = self.clone();
        let mut flips = 0usize;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lead = r.coeffs[rd].clone();
            // r <- lc*r - lead*x^(rd-dd)*divisor
            let shifted = Self::monomial(lead, rd - dd) * divisor.clone();
            r = r.scale(&lc) - shifted;
            flips += 1;
        }
        if lc.is_negative() && flips % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Exact division over Z. `None` when the quotient is not integral or the
    /// remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Division with remainder where every quotient step must be integral.
    pub fn div_rem_integral(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc = &divisor.coeffs[dd];
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            if !lead.is_zero() {
                let (t, rem) = lead.div_rem(lc);
                if !rem.is_zero() {
                    return None;
                }
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &t * c;
                }
                q[top - dd] = t;
            }
            r.pop();
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// `p / gcd(p, p')`, normalised.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        let p = self.normalized();
        p.div_rem_integral(&g)
            .map(|(q, _)| q)
            .unwrap_or_else(|| rational_quotient(&p, &g))
            .normalized()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

// Quotient over Q, cleared to a primitive integer polynomial. Used when the
// integral quotient does not exist because the divisor is primitive but not
// monic.
fn rational_quotient(p: &IntPolynomial, d: &IntPolynomial) -> IntPolynomial {
    let dd = d.degree().expect("nonzero divisor");
    let lc = BigRational::from(d.coeffs[dd].clone());
    let mut r: Vec<BigRational> = p.coeffs.iter().cloned().map(BigRational::from).collect();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let t = &r[top] / &lc;
        for (i, c) in d.coeffs.iter().enumerate() {
            r[top - dd + i] -= &t * BigRational::from(c.clone());
        }
        q[top - dd] = t;
        r.pop();
    }
    let lcm = q
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    IntPolynomial::new(q.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect())
}

fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for IntPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for IntPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for IntPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for IntPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed polynomial at byte {position}: {reason}")]
pub struct ParsePolynomialError {
    pub position: usize,
    pub reason: String,
}

/// Grammar: signed terms `c`, `cx`, `c*x`, `x^k`, `cx^k`; integer coefficients,
/// single variable `x`, whitespace ignored. `"x^4+3x^2+4"`.
impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<(usize, u8)> = s
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let err = |position: usize, reason: &str| ParsePolynomialError {
            position,
            reason: reason.to_string(),
        };
        if bytes.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let term_start = bytes[i].0;
            let mut negative = false;
            match bytes[i].1 {
                b'+' => i += 1,
                b'-' => {
                    negative = true;
                    i += 1
                }
                _ if i > 0 => return Err(err(term_start, "expected '+' or '-' between terms")),
                _ => {}
            }
            let digits_start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > digits_start {
                let text: String = bytes[digits_start..i].iter().map(|&(_, b)| b as char).collect();
                text.parse::<BigInt>().map_err(|_| err(term_start, "bad coefficient"))?
            } else {
                BigInt::one()
            };
            let has_coeff = i > digits_start;
            if i < bytes.len() && bytes[i].1 == b'*' {
                if !has_coeff {
                    return Err(err(bytes[i].0, "'*' must follow a coefficient"));
                }
                i += 1;
                if i >= bytes.len() || bytes[i].1 != b'x' {
                    return Err(err(bytes.get(i).map_or(s.len(), |b| b.0), "expected 'x' after '*'"));
                }
            }
            let mut power = 0usize;
            if i < bytes.len() && bytes[i].1 == b'x' {
                i += 1;
                power = 1;
                if i < bytes.len() && bytes[i].1 == b'^' {
                    i += 1;
                    let exp_start = i;
                    while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    if i == exp_start {
                        return Err(err(bytes.get(i).map_or(s.len(), |b| b.0), "missing exponent"));
                    }
                    let text: String = bytes[exp_start..i].iter().map(|&(_, b)| b as char).collect();
                    power = text
                        .parse::<usize>()
                        .ok()
                        .filter(|&p| p <= 4096)
                        .ok_or_else(|| err(bytes[exp_start].0, "exponent out of range"))?;
                }
            } else if !has_coeff {
                return Err(err(term_start, "empty term"));
            }
            if i < bytes.len() && !matches!(bytes[i].1, b'+' | b'-') {
                return Err(err(bytes[i].0, "unexpected character"));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += if negative { -coeff } else { coeff };
        }
        Ok(Self::new(coeffs))
    }
}
