use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{is_prime, is_prime_u64};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 10_000;

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor of the odd
/// composite `n`.
fn brent_u64(n: u64) -> u64 {
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed on composite {n}")
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = brent_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn collect(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorisation of a nonzero machine integer, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "factor_u64(0)");
    let mut primes = Vec::new();
    while n.is_multiple_of(2) {
        primes.push(2);
        n /= 2;
    }
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            primes.push(n);
        } else {
            split_u64(n, &mut primes);
        }
    }
    collect(primes)
}

fn brent_big(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128u64.min(r - k) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factor_u64(small) {
            out.extend(std::iter::repeat_n(BigUint::from(p), e as usize));
        }
        return;
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return;
    }
    let d = brent_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Prime factorisation `n = ∏ p^e` with primes ascending; `1` factors as the
/// empty product. Trial division to 10^4, then Pollard–Brent.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.sign() != Sign::Plus {
        return Err(Error::invalid("n", format!("factor requires n >= 1, got {n}")));
    }
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect());
    }
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut d = 2u32;
    while u64::from(d) <= TRIAL_LIMIT {
        while (&m % d).is_zero() {
            primes.push(BigUint::from(d));
            m /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split_big(m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Distinct odd primes dividing `n` (n >= 1), ascending.
pub fn odd_prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factor(n)?
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| p.is_odd())
        .collect())
}
