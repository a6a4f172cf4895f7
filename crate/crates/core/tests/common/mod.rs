//! Independent oracles shared by the integration tests: a fixed-point
//! Durand–Kerner root finder on 512-bit scaled integers and brute-force
//! surjection counts.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Fractional bits of the fixed-point representation.
const S: u32 = 512;
const MAX_ITER: usize = 6000;
/// Root corrections below 2^-CONVERGED count as converged.
const CONVERGED: u32 = 90;

#[derive(Clone, Debug)]
struct C {
    re: BigInt,
    im: BigInt,
}

impl C {
    fn add(&self, o: &C) -> C {
        C {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &C) -> C {
        C {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &C) -> C {
        C {
            re: (&self.re * &o.re - &self.im * &o.im) >> S,
            im: (&self.re * &o.im + &self.im * &o.re) >> S,
        }
    }
    fn div(&self, o: &C) -> Option<C> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        Some(C {
            re: ((&self.re * &o.re + &self.im * &o.im) << S) / &den,
            im: ((&self.im * &o.re - &self.re * &o.im) << S) / &den,
        })
    }
    fn norm_inf(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }
}

fn one() -> BigInt {
    BigInt::one() << S
}

/// All complex roots (with multiplicity) of an integer polynomial given lowest
/// coefficient first, as fixed-point pairs scaled by 2^S. `None` if the
/// iteration fails to converge.
fn roots(coeffs: &[BigInt]) -> Option<Vec<C>> {
    let coeffs: Vec<BigInt> = {
        let mut c = coeffs.to_vec();
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    };
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[n].clone();
    // Monic fixed-point coefficients.
    let monic: Vec<BigInt> = coeffs.iter().map(|c| (c << S) / &lead).collect();
    let radius: BigInt = monic[..n].iter().map(|c| c.abs()).max().unwrap_or_default() + one();
    let seed = C {
        re: one() * 2 / 5,
        im: one() * 9 / 10,
    };
    let mut z: Vec<C> = Vec::with_capacity(n);
    let mut w = C {
        re: radius.clone(),
        im: BigInt::zero(),
    };
    for _ in 0..n {
        w = w.mul(&seed);
        z.push(w.clone());
    }
    let tol = BigInt::one() << (S - CONVERGED);
    let eval = |x: &C| -> C {
        let mut acc = C {
            re: one(),
            im: BigInt::zero(),
        };
        for c in monic[..n].iter().rev() {
            acc = acc.mul(x).add(&C {
                re: c.clone(),
                im: BigInt::zero(),
            });
        }
        acc
    };
    for _ in 0..MAX_ITER {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let num = eval(&z[i]);
            let mut den = C {
                re: one(),
                im: BigInt::zero(),
            };
            for j in 0..n {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            let delta = match num.div(&den) {
                Some(d) => d,
                None => {
                    // Coincident iterates; nudge apart.
                    z[i].im += BigInt::one() << (S - 20);
                    worst = one();
                    continue;
                }
            };
            worst = worst.max(delta.norm_inf());
            z[i] = z[i].sub(&delta);
        }
        if worst < tol {
            return Some(z);
        }
    }
    None
}

/// Whether every complex root has absolute value `sqrt(norm)`; `None` when
/// some root lies within the abstention band or the iteration stalls.
pub fn weil_oracle(coeffs: &[BigInt], norm: &BigInt) -> Option<bool> {
    let rs = roots(coeffs)?;
    let target = norm << (2 * S);
    // Relative error bands: on-circle below 2^-66, off-circle above 2^-33.
    let on = &target >> 66u32;
    let off = &target >> 33u32;
    let mut all_on = true;
    for z in rs {
        let diff = (&z.re * &z.re + &z.im * &z.im - &target).abs();
        if diff > off {
            all_on = false;
        } else if diff >= on {
            return None;
        }
    }
    Some(all_on)
}

#[derive(Clone, Debug)]
pub enum End {
    NegInf,
    At(BigRational),
    PosInf,
}

fn fixed(r: &BigRational) -> BigInt {
    (r.numer() << S) / r.denom()
}

/// Distinct real roots in `(lo, hi]`; `None` when a root is too close to an
/// endpoint or to the real axis to classify.
pub fn real_roots_in(coeffs: &[BigInt], lo: &End, hi: &End) -> Option<usize> {
    let rs = roots(coeffs)?;
    let real_band = BigInt::one() << (S - 120);
    let complex_band = BigInt::one() << (S - 40);
    let endpoint_band = BigInt::one() << (S - 40);
    let cluster = BigInt::one() << (S - 60);
    let mut reals: Vec<BigInt> = Vec::new();
    for z in rs {
        let im = z.im.abs();
        if im >= complex_band {
            continue;
        }
        if im >= real_band {
            return None;
        }
        reals.push(z.re);
    }
    reals.sort();
    let mut distinct: Vec<BigInt> = Vec::new();
    for r in reals {
        if distinct.last().is_some_and(|d| (&r - d).abs() < cluster) {
            continue;
        }
        distinct.push(r);
    }
    let mut count = 0;
    for r in distinct {
        let above_lo = match lo {
            End::NegInf => true,
            End::PosInf => false,
            End::At(x) => {
                let x = fixed(x);
                if (&r - &x).abs() < endpoint_band {
                    return None;
                }
                r > x
            }
        };
        let below_hi = match hi {
            End::NegInf => false,
            End::PosInf => true,
            End::At(x) => {
                let x = fixed(x);
                if (&r - &x).abs() < endpoint_band {
                    return None;
                }
                r <= x
            }
        };
        if above_lo && below_hi {
            count += 1;
        }
    }
    Some(count)
}

/// `x^k h(x + Q/x)` for `h` given lowest coefficient first.
pub fn self_reciprocal_from(h: &[BigInt], norm: &BigInt) -> Vec<BigInt> {
    let k = h.len() - 1;
    let mut out = vec![BigInt::zero(); 2 * k + 1];
    // (x^2 + Q)^j x^{k-j}
    for (j, hj) in h.iter().enumerate() {
        let mut binom = BigInt::one();
        for i in 0..=j {
            // term C(j,i) x^{2i} Q^{j-i}, shifted by x^{k-j}
            let q_pow = num_traits::pow(norm.clone(), j - i);
            out[2 * i + k - j] += hj * &binom * q_pow;
            binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
        }
    }
    out
}

/// Random monic `h` of degree 1..=3: half the time a product of real linear
/// factors near the trace range, otherwise uniform coefficients.
pub fn random_real_poly<R: Rng>(rng: &mut R, norm: &BigInt) -> Vec<BigInt> {
    let k = rng.gen_range(1..=3usize);
    let bound = 2 * (norm.to_f64().expect("small norm").sqrt() as i64) + 2;
    if rng.gen_bool(0.5) {
        let mut h = vec![BigInt::one()];
        for _ in 0..k {
            let t = BigInt::from(rng.gen_range(-bound..=bound));
            let mut next = vec![BigInt::zero(); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &t;
            }
            h = next;
        }
        h
    } else {
        let mut h: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(rng.gen_range(-3 * bound..=3 * bound)))
            .collect();
        h.push(BigInt::one());
        h
    }
}

/// Subgroup of `Z/k` generated by `gens`, by breadth-first closure.
fn generated_size(gens: &[u64], k: u64) -> u64 {
    let mut seen = vec![false; k as usize];
    let mut queue = vec![0u64];
    seen[0] = true;
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = (x + g) % k;
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    seen.iter().filter(|&&s| s).count() as u64
}

/// Homomorphisms `Z^{2g} → Z/k` whose image is everything, by enumeration.
pub fn brute_surj(g: u32, k: u64) -> u64 {
    let n = 2 * g as usize;
    let total = k.pow(n as u32);
    let mut count = 0;
    let mut gens = vec![0u64; n];
    for idx in 0..total {
        let mut x = idx;
        for slot in gens.iter_mut() {
            *slot = x % k;
            x /= k;
        }
        if generated_size(&gens, k) == k {
            count += 1;
        }
    }
    count
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
