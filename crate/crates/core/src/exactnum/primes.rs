use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

// Deterministic for every n < 2^64 (Sorenson & Webster).
const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of a non-negative integer.
///
/// Deterministic below 2^64. Larger inputs go through Baillie–PSW (a base-2
/// strong probable-prime test followed by a strong Lucas test with Selfridge
/// parameters); no counterexample is known but the test is not proven.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (n % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n)
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());
    // perfect squares never yield jacobi = -1
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &n_int) {
            -1 => break,
            0 if d.magnitude() != n => return false,
            _ => {}
        }
        d = if d.sign() == Sign::Minus {
            -d + 2
        } else {
            -d - 2
        };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / 4;

    let n_plus_1: BigInt = &n_int + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k: BigInt = &n_plus_1 >> s;

    let modn = |x: BigInt| x.mod_floor(&n_int);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &n_int } else { x };
        let x: BigInt = x >> 1u32;
        x.mod_floor(&n_int)
    };

    // binary ladder for U_k, V_k, Q^k
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = k.bits();
    for i in (0..bits).rev() {
        u = modn(&u * &v);
        v = modn(&v * &v - &qk * 2);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let u_new = half(&p * &u + &v);
            let v_new = half(&d * &u + &p * &v);
            u = u_new;
            v = v_new;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - &qk * 2);
        if v.is_zero() {
            return true;
        }
        qk = modn(&qk * &qk);
    }
    false
}

/// Returns `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn is_prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n < &BigInt::from(2) {
        return None;
    }
    let factors = super::factor(n).ok()?;
    match factors.as_slice() {
        [(p, k)] => Some((p.clone(), *k)),
        _ => None,
    }
}

/// Incremental segmented sieve of Eratosthenes yielding primes in ascending
/// order, starting from a given lower bound.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    base: Vec<u64>,
    base_limit: u64,
    segment_lo: u64,
    segment: Vec<bool>,
    cursor: usize,
}

const SEGMENT: u64 = 1 << 15;

impl PrimeSieve {
    pub fn new() -> Self {
        Self::starting_at(2)
    }

    pub fn starting_at(lo: u64) -> Self {
        let mut sieve = Self {
            base: Vec::new(),
            base_limit: 1,
            segment_lo: lo.max(2),
            segment: Vec::new(),
            cursor: 0,
        };
        sieve.fill_segment();
        sieve
    }

    fn ensure_base(&mut self, limit: u64) {
        if limit <= self.base_limit {
            return;
        }
        let limit = limit.max(self.base_limit * 2).max(1024);
        let mut composite = vec![false; limit as usize + 1];
        let mut base = Vec::new();
        for i in 2..=limit as usize {
            if !composite[i] {
                base.push(i as u64);
                let mut j = i * i;
                while j <= limit as usize {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        self.base = base;
        self.base_limit = limit;
    }

    fn fill_segment(&mut self) {
        let lo = self.segment_lo;
        let hi = lo.saturating_add(SEGMENT);
        self.ensure_base((hi as f64).sqrt() as u64 + 1);
        let mut is_prime = vec![true; (hi - lo) as usize];
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut m = start;
            while m < hi {
                is_prime[(m - lo) as usize] = false;
                m += p;
            }
        }
        self.segment = is_prime;
        self.cursor = 0;
    }
}

impl Default for PrimeSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeSieve {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            while self.cursor < self.segment.len() {
                let idx = self.cursor;
                self.cursor += 1;
                if self.segment[idx] {
                    return Some(self.segment_lo + idx as u64);
                }
            }
            self.segment_lo = self.segment_lo.checked_add(SEGMENT)?;
            self.fill_segment();
        }
    }
}
