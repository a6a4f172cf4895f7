mod common;

use common::{random_real_poly, self_reciprocal_from, weil_oracle};
use lvkit::exactnum::IntPolynomial;
use lvkit::weilpurity::{check_weil, quadratic_weil_exact, WeilCandidate};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(coeffs: Vec<BigInt>, q: i64, n: u32) -> bool {
    let c = WeilCandidate::new(IntPolynomial::new(coeffs), BigInt::from(q), n).unwrap();
    check_weil(&c).unwrap().is_weil
}

#[test]
fn examples() {
    assert!(verdict(IntPolynomial::from_i64(&[4, 0, 3, 0, 1]).coeffs().to_vec(), 2, 1));
    assert!(!verdict(IntPolynomial::from_i64(&[2, -3, 1]).coeffs().to_vec(), 2, 1));
    // x^2 - q^n splits over the reals with both roots on the circle.
    assert!(verdict(IntPolynomial::from_i64(&[-9, 0, 1]).coeffs().to_vec(), 3, 2));
    // x - 3 for q^n = 9.
    assert!(verdict(IntPolynomial::from_i64(&[-3, 1]).coeffs().to_vec(), 9, 1));
    assert!(!verdict(IntPolynomial::from_i64(&[-3, 1]).coeffs().to_vec(), 3, 1));
}

#[test]
fn quadratics_agree_with_closed_form() {
    for q in [2i64, 3, 5] {
        for n in [1u32, 2] {
            for a in -50i64..=50 {
                for b in -50i64..=50 {
                    let poly = IntPolynomial::from_i64(&[b, a, 1]);
                    let c = WeilCandidate::new(poly, BigInt::from(q), n).unwrap();
                    let exact = quadratic_weil_exact(&BigInt::from(a), &BigInt::from(b), &BigInt::from(q), n);
                    assert_eq!(check_weil(&c).unwrap().is_weil, exact, "x^2 + {a}x + {b}, q = {q}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn self_reciprocal_candidates_agree_with_root_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut compared, mut weil, mut abstained) = (0, 0, 0);
    while compared < 200 {
        let (q, n) = [(2i64, 1u32), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2), (7, 1), (9, 1)][rng.gen_range(0..8)];
        let norm = BigInt::from(q).pow(n);
        let h = random_real_poly(&mut rng, &norm);
        let g = self_reciprocal_from(&h, &norm);
        let exact = verdict(g.clone(), q, n);
        match weil_oracle(&g, &norm) {
            Some(o) => {
                assert_eq!(exact, o, "g = {}, q = {q}, n = {n}", IntPolynomial::new(g.clone()));
                compared += 1;
                weil += usize::from(o);
            }
            None => abstained += 1,
        }
        assert!(abstained < 200, "oracle abstained {abstained} times");
    }
    // Both verdicts must be exercised.
    assert!(weil > 20 && weil < 180, "{weil} Weil among {compared}");
}

#[test]
fn products_of_weil_polynomials_are_weil() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let q = [2i64, 3, 5, 7][rng.gen_range(0..4)];
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        let mut g = IntPolynomial::one();
        for _ in 0..rng.gen_range(1..=3) {
            let t = rng.gen_range(-bound..=bound);
            g = g * IntPolynomial::from_i64(&[q, -t, 1]);
        }
        let c = WeilCandidate::new(g.clone(), BigInt::from(q), 1).unwrap();
        assert!(check_weil(&c).unwrap().is_weil, "g = {g}, q = {q}");
        // A factor with trace just outside the range spoils the product.
        let bad = g * IntPolynomial::from_i64(&[q, -(bound + 1), 1]);
        let c = WeilCandidate::new(bad.clone(), BigInt::from(q), 1).unwrap();
        assert!(!check_weil(&c).unwrap().is_weil, "g = {bad}, q = {q}");
    }
}

#[test]
fn rejects_bad_candidates() {
    let p = IntPolynomial::from_i64(&[1, 2]);
    assert!(WeilCandidate::new(p, BigInt::from(2), 1).is_err());
    let p = IntPolynomial::from_i64(&[1, 0, 1]);
    assert!(WeilCandidate::new(p, BigInt::from(6), 1).is_err());
}
