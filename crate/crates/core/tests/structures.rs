mod common;

use common::rat;
use lvkit::formalode::{evaluate, is_flat, parallel_transport, residual, ConnectionForm, SeriesMatrix, TruncatedSeries};
use lvkit::symplectic::{
    build_witness, count_lagrangians, find_large_intersection, sublemma_brute_check, PrimeField, SymplecticSpace,
    WitnessTuple,
};
use lvkit::trichotomy::{
    check_weight_identity, f1_bound, partitions, size_v, trichotomy_closure_check, weight_target, OrbitTable,
    PlaceWeight, WeightProfile,
};
use lvkit::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mat = Vec<Vec<BigRational>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

/// Coefficients of `T(t)` for `T' = −A(t)T`, `T(0) = I`, where `A(t) = Σ A_j t^j`,
/// by matching coefficients of `t^k` directly.
fn reference_transport(a: &[Mat], order: usize) -> Vec<Mat> {
    let n = a[0].len();
    let identity: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let zero: Mat = vec![vec![BigRational::zero(); n]; n];
    let mut t = vec![identity];
    for k in 0..order {
        // (k+1) T_{k+1} = −Σ_{j ≤ k} A_j T_{k−j}
        let mut acc = zero.clone();
        for (j, aj) in a.iter().enumerate().take(k + 1) {
            acc = mat_add(&acc, &mat_mul(aj, &t[k - j]));
        }
        let scale = -BigRational::new(BigInt::one(), BigInt::from(k + 1));
        t.push(acc.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect());
    }
    t
}

fn random_connection(rng: &mut ChaCha8Rng, order: u32) -> (ConnectionForm, Vec<Mat>) {
    let degree = rng.gen_range(0..=2usize);
    let coeffs: Vec<Mat> = (0..=degree)
        .map(|_| (0..2).map(|_| (0..2).map(|_| rat(rng.gen_range(-5..=5), 1)).collect()).collect())
        .collect();
    let entries = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| {
                    TruncatedSeries::from_terms(
                        1,
                        order,
                        coeffs.iter().enumerate().map(|(d, m)| (vec![d as u32], m[i][j].clone())),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect();
    let omega = ConnectionForm::new(vec![SeriesMatrix::new(entries).unwrap()]).unwrap();
    (omega, coeffs)
}

#[test]
fn random_connections_have_vanishing_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let order = 8;
    for _ in 0..50 {
        let (omega, coeffs) = random_connection(&mut rng, order);
        let t = parallel_transport(&omega, order).unwrap();
        assert!(residual(&omega, &t).iter().all(SeriesMatrix::is_zero));
        let reference = reference_transport(&coeffs, order as usize);
        for (k, tk) in reference.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(t.entry(i, j).coeff(&[k as u32]), tk[i][j], "degree {k}");
                }
            }
        }
        assert_eq!(t.determinant().coeff(&[0]), BigRational::one());
    }
}

#[test]
fn traceless_constant_connection_has_unit_determinant() {
    let order = 8;
    let a = SeriesMatrix::constant(&[vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(-1, 1)]], 1, order).unwrap();
    let t = parallel_transport(&ConnectionForm::new(vec![a]).unwrap(), order).unwrap();
    assert_eq!(t.determinant(), TruncatedSeries::one(1, order));
}

#[test]
fn exponential_law_in_two_variables() {
    // ω = A dt1 + A dt2 is flat and T(t1, t2) = exp(−A t1)·exp(−A t2).
    let order = 6;
    let rows = vec![vec![rat(1, 1), rat(-2, 1)], vec![rat(1, 2), rat(0, 1)]];
    let a2 = SeriesMatrix::constant(&rows, 2, order).unwrap();
    let omega = ConnectionForm::new(vec![a2.clone(), a2]).unwrap();
    assert!(is_flat(&omega, order));
    let t = parallel_transport(&omega, order).unwrap();
    let one_var = reference_transport(&[rows], order as usize);
    let lift = |var: usize| -> SeriesMatrix {
        let entries = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        TruncatedSeries::from_terms(
                            2,
                            order,
                            one_var.iter().enumerate().map(|(k, m)| {
                                let mut e = vec![0, 0];
                                e[var] = k as u32;
                                (e, m[i][j].clone())
                            }),
                        )
                        .unwrap()
                    })
                    .collect()
            })
            .collect();
        SeriesMatrix::new(entries).unwrap()
    };
    assert_eq!(t, lift(0).mul(&lift(1)));
}

#[test]
fn transport_closed_forms() {
    let order = 8;
    let n = SeriesMatrix::constant(&[vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]], 1, order).unwrap();
    let t = parallel_transport(&ConnectionForm::new(vec![n]).unwrap(), order).unwrap();
    assert_eq!(evaluate(&t, &[rat(3, 1)]).unwrap(), vec![vec![rat(1, 1), rat(-3, 1)], vec![rat(0, 1), rat(1, 1)]]);
    let a = SeriesMatrix::constant(&[vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]], 2, order).unwrap();
    let b = SeriesMatrix::constant(&[vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]], 2, order).unwrap();
    let nonflat = ConnectionForm::new(vec![a, b]).unwrap();
    assert!(matches!(parallel_transport(&nonflat, order), Err(Error::NotFlat { .. })));
}

#[test]
fn lagrangian_counts_match_product_formula() {
    for (p, d) in [(2u32, 1usize), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 3)] {
        let s = SymplecticSpace::standard(PrimeField::new(p).unwrap(), d);
        let expected: BigInt = (1..=d as u32).map(|i| BigInt::from(p).pow(i) + 1).product();
        assert_eq!(count_lagrangians(&s).unwrap(), expected, "p = {p}, d = {d}");
    }
}

#[test]
fn sublemma_over_small_fields() {
    for (p, d) in [(3u32, 1usize), (5, 1), (3, 2), (5, 2)] {
        let s = SymplecticSpace::standard(PrimeField::new(p).unwrap(), d);
        for a in 1..p {
            for b in 1..p {
                let lambdas: Vec<u32> = if d == 1 { vec![a] } else { vec![a, b] };
                if d == 2 && a == b {
                    continue;
                }
                let t = build_witness(&s, &lambdas).unwrap();
                assert!(sublemma_brute_check(&s, &t).unwrap(), "p = {p}, lambdas = {lambdas:?}");
            }
        }
    }
}

#[test]
fn repeated_lagrangians_fail() {
    let s = SymplecticSpace::standard(PrimeField::new(3).unwrap(), 2);
    let base = build_witness(&s, &[1, 2]).unwrap();
    let [p1, p2, _, _] = base.lagrangians.clone();
    let tuple = WitnessTuple {
        lagrangians: [p1.clone(), p2.clone(), p1, p2],
        eigenvalues: base.eigenvalues,
    };
    let w = find_large_intersection(&s, &tuple).unwrap().expect("counterexample");
    assert!(s.is_isotropic(&w).unwrap());
    assert!(!sublemma_brute_check(&s, &tuple).unwrap());
}

/// Per-point assignments (F¹ not assumed constant on orbits).
fn pointwise_satisfiable(orbits: &OrbitTable, dim_w0: u64) -> bool {
    let Some(target) = weight_target(orbits, dim_w0) else {
        return false;
    };
    // Each point contributes at most its bound; all intermediate sums reachable.
    let max: u64 = orbits.sizes().iter().map(|&s| s * f1_bound(s, dim_w0)).sum();
    target <= max
}

#[test]
fn closure_against_pointwise_model() {
    for n in 1..=8 {
        for parts in partitions(n) {
            let orbits = OrbitTable::new(parts).unwrap();
            for d in 1..=3 {
                for w0 in 1..=d {
                    let c = trichotomy_closure_check(d, &orbits, w0).unwrap();
                    assert!(c.holds);
                    if c.satisfiable {
                        assert!(pointwise_satisfiable(&orbits, w0));
                    }
                    if pointwise_satisfiable(&orbits, w0) {
                        // The relaxed hypotheses already force the conclusion.
                        assert!(c.conclusion, "{orbits:?}, d = {d}, w0 = {w0}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn size_v_is_a_proportion(sizes in proptest::collection::vec(1u64..10, 1..12)) {
        let t = OrbitTable::new(sizes.clone()).unwrap();
        let s = size_v(&t);
        prop_assert!(s >= BigRational::zero() && s <= BigRational::one());
        prop_assert_eq!(s == BigRational::one(), sizes.iter().all(|&x| x < 4));
    }

    #[test]
    fn weight_identity_survives_splitting(
        places in proptest::collection::vec((1u64..5, 0u64..4), 1..5),
        weight in 0u64..3,
        split in 0usize..5,
    ) {
        let dim_w = 3;
        let degree: u64 = places.iter().map(|p| p.0).sum();
        let pw: Vec<PlaceWeight> = places.iter().map(|&(degree, f1_dim)| PlaceWeight { degree, f1_dim }).collect();
        let split = split % pw.len();
        let mut broken = Vec::new();
        for (i, p) in pw.iter().enumerate() {
            if i == split {
                broken.extend((0..p.degree).map(|_| PlaceWeight { degree: 1, f1_dim: p.f1_dim }));
            } else {
                broken.push(*p);
            }
        }
        let a = WeightProfile::new(weight, degree, dim_w, pw).unwrap();
        let b = WeightProfile::new(weight, degree, dim_w, broken).unwrap();
        prop_assert_eq!(check_weight_identity(&a), check_weight_identity(&b));
    }
}
