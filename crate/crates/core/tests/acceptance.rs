//! One line per acceptance criterion, with the elapsed time against its limit.
//! Exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_surj, rat, random_real_poly, self_reciprocal_from, weil_oracle};
use lvkit::exactnum::{zeta_upper_bound, IntPolynomial};
use lvkit::formalode::{evaluate, parallel_transport, residual, ConnectionForm, SeriesMatrix, TruncatedSeries};
use lvkit::kpengine::{find_min_q, size_v_upper_bound, surj_count, KpQuery, Variant, DEFAULT_Q_CEILING};
use lvkit::localfield::{count_extensions, n_v, PlaceProfile};
use lvkit::symplectic::{build_witness, count_lagrangians, sublemma_brute_check, PrimeField, SymplecticSpace, WitnessTuple};
use lvkit::trichotomy::trichotomy_scan;
use lvkit::weilpurity::{check_weil, quadratic_weil_exact, WeilCandidate};
use lvkit::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn genus_three_minima() -> Outcome {
    let original = KpQuery::new(3, Variant::Original).map_err(lib)?.with_good_model(true);
    let t = Instant::now();
    let q_orig = find_min_q(&original, DEFAULT_Q_CEILING).map_err(lib)?.q;
    let t_orig = t.elapsed();
    let new = KpQuery::new(3, Variant::New)
        .map_err(lib)?
        .with_n_v(BigInt::from(2))
        .map_err(lib)?
        .with_place(PlaceProfile::new(2, 1, 1).map_err(lib)?.with_self_conjugate(true));
    let t = Instant::now();
    let q_new = find_min_q(&new, DEFAULT_Q_CEILING).map_err(lib)?.q;
    let t_new = t.elapsed();
    ensure(q_orig == 23, || format!("original variant gave {q_orig}, expected 23"))?;
    ensure(q_new == 11, || format!("new variant gave {q_new}, expected 11"))?;
    let each = Duration::from_secs(1);
    ensure(t_orig < each && t_new < each, || format!("per-query limit exceeded: {t_orig:?}, {t_new:?}"))?;
    Ok("original 23, new 11".into())
}

fn local_counts() -> Outcome {
    let mut seen = Vec::new();
    for p in [5u64, 7, 11, 13, 10_007] {
        let v = n_v(&PlaceProfile::new(p, 1, 1).map_err(lib)?);
        ensure(v == BigInt::from(7), || format!("p = {p}: n_v = {v}, expected 7"))?;
    }
    let two = n_v(&PlaceProfile::new(2, 1, 1).map_err(lib)?);
    seen.push(format!("Q_2 {two}"));
    let three_place = PlaceProfile::new(3, 1, 1).map_err(lib)?;
    let three = n_v(&three_place);
    let cubics = count_extensions(&three_place, 3).map_err(lib)?;
    seen.push(format!("Q_3 {three} (cubics {cubics})"));
    ensure(two == BigInt::from(11), || format!("Q_2: n_v = {two}, expected 11"))?;
    ensure(three == BigInt::from(13), || format!("Q_3: n_v = {three}, expected 13"))?;
    Ok(format!("p >= 5 all 7, {}", seen.join(", ")))
}

fn surjections() -> Outcome {
    for g in 1..=2u32 {
        for k in 1..=6u64 {
            let fast = surj_count(g, k).map_err(lib)?;
            let brute = BigInt::from(brute_surj(g, k));
            ensure(fast == brute, || format!("(g, k) = ({g}, {k}): {fast} vs enumeration {brute}"))?;
        }
    }
    let a = surj_count(1, 2).map_err(lib)?;
    let b = surj_count(2, 6).map_err(lib)?;
    ensure(a == BigInt::from(3) && b == BigInt::from(1200), || format!("(1,2) -> {a}, (2,6) -> {b}"))?;
    Ok("12 pairs agree, (1,2) -> 3, (2,6) -> 1200".into())
}

fn sublemma() -> Outcome {
    let s = SymplecticSpace::standard(PrimeField::new(3).map_err(lib)?, 2);
    let mut checked = 0;
    for a in 1..3u32 {
        for b in 1..3u32 {
            if a == b {
                continue;
            }
            let t = build_witness(&s, &[a, b]).map_err(lib)?;
            ensure(sublemma_brute_check(&s, &t).map_err(lib)?, || format!("lambdas ({a}, {b}) fail"))?;
            checked += 1;
        }
    }
    let lagrangians = count_lagrangians(&s).map_err(lib)?;
    ensure(lagrangians == BigInt::from(40), || format!("{lagrangians} Lagrangians, expected 40"))?;
    let base = build_witness(&s, &[1, 2]).map_err(lib)?;
    let phi1 = base.lagrangians[0].clone();
    let degenerate = WitnessTuple {
        lagrangians: [phi1.clone(), phi1.clone(), phi1.clone(), phi1],
        eigenvalues: base.eigenvalues,
    };
    ensure(!sublemma_brute_check(&s, &degenerate).map_err(lib)?, || "degenerate tuple passes".into())?;
    Ok(format!("{checked} lambda pairs pass, 40 Lagrangians, degenerate tuple rejected"))
}

fn weil(coeffs: Vec<BigInt>, q: i64, n: u32) -> Result<bool, String> {
    let c = WeilCandidate::new(IntPolynomial::new(coeffs), BigInt::from(q), n).map_err(lib)?;
    Ok(check_weil(&c).map_err(lib)?.is_weil)
}

fn weil_testing() -> Outcome {
    let int = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    ensure(weil(int(&[4, 0, 3, 0, 1]), 2, 1)?, || "x^4+3x^2+4 rejected".into())?;
    ensure(!weil(int(&[2, -3, 1]), 2, 1)?, || "x^2-3x+2 accepted".into())?;
    let mut quadratics = 0;
    for q in [2i64, 3, 5] {
        for n in [1u32, 2] {
            for a in -50i64..=50 {
                for b in -50i64..=50 {
                    let exact = quadratic_weil_exact(&BigInt::from(a), &BigInt::from(b), &BigInt::from(q), n);
                    let sturm = weil(int(&[b, a, 1]), q, n)?;
                    ensure(sturm == exact, || format!("x^2 + {a}x + {b}, q = {q}, n = {n}"))?;
                    quadratics += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut compared, mut abstained) = (0, 0);
    while compared < 200 {
        let (q, n) = [(2i64, 1u32), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2), (7, 1), (9, 1)][rng.gen_range(0..8)];
        let norm = BigInt::from(q).pow(n);
        let g = self_reciprocal_from(&random_real_poly(&mut rng, &norm), &norm);
        match weil_oracle(&g, &norm) {
            Some(o) => {
                let exact = weil(g.clone(), q, n)?;
                ensure(exact == o, || format!("{} for q = {q}, n = {n}", IntPolynomial::new(g.clone())))?;
                compared += 1;
            }
            None => abstained += 1,
        }
        ensure(abstained < 200, || format!("oracle abstained {abstained} times"))?;
    }
    Ok(format!("{quadratics} quadratics, {compared} oracle comparisons ({abstained} abstentions)"))
}

fn transport() -> Outcome {
    let order = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..50 {
        let degree = rng.gen_range(0..=2u32);
        let entries = (0..2)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        let terms: Vec<_> = (0..=degree).map(|d| (vec![d], rat(rng.gen_range(-5..=5), 1))).collect();
                        TruncatedSeries::from_terms(1, order, terms)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(lib)?;
        let omega = ConnectionForm::new(vec![SeriesMatrix::new(entries).map_err(lib)?]).map_err(lib)?;
        let t = parallel_transport(&omega, order).map_err(lib)?;
        ensure(residual(&omega, &t).iter().all(SeriesMatrix::is_zero), || format!("residual nonzero in case {case}"))?;
    }
    let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]];
    let nil = ConnectionForm::new(vec![SeriesMatrix::constant(&a, 1, order).map_err(lib)?]).map_err(lib)?;
    let t = parallel_transport(&nil, order).map_err(lib)?;
    let at = evaluate(&t, &[rat(7, 3)]).map_err(lib)?;
    ensure(at == vec![vec![rat(1, 1), rat(-7, 3)], vec![rat(0, 1), rat(1, 1)]], || format!("nilpotent gave {at:?}"))?;
    let closed = SeriesMatrix::identity(2, 1, order).sub(&SeriesMatrix::constant(&a, 1, order).map_err(lib)?.mul_var(0));
    ensure(t == closed, || format!("nilpotent transport differs from I - At: {t:?}"))?;
    let b = vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]];
    let nonflat = ConnectionForm::new(vec![
        SeriesMatrix::constant(&a, 2, order).map_err(lib)?,
        SeriesMatrix::constant(&b, 2, order).map_err(lib)?,
    ])
    .map_err(lib)?;
    ensure(matches!(parallel_transport(&nonflat, order), Err(Error::NotFlat { .. })), || {
        "non-flat example accepted".into()
    })?;
    Ok("50 residuals vanish, I - At exact, non-flat rejected".into())
}

fn inequality_chain() -> Outcome {
    let b = size_v_upper_bound(3, 5, &BigInt::from(2)).map_err(lib)?;
    ensure(b.holds && b.bound < rat(1, 26), || format!("bound {} not below 1/26", b.bound))?;
    let z = zeta_upper_bound(4, 2);
    ensure(z == rat(53, 48) && z < rat(9, 8), || format!("zeta bound {z}"))?;
    Ok(format!("bound {} < 1/26, zeta 53/48 < 9/8", b.bound))
}

fn trichotomy() -> Outcome {
    let r = trichotomy_scan(3, 12).map_err(lib)?;
    ensure(r.passed(), || format!("{} failures, {} solver mismatches", r.failures.len(), r.solver_mismatches))?;
    Ok(format!(
        "{} cases, {} satisfying assignments, {} vacuous",
        r.cases, r.assignments, r.vacuous
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("genus-3 minima", 2_000, genus_three_minima),
        ("n_v values", 100, local_counts),
        ("surjection counts", 5_000, surjections),
        ("sublemma verification", 30_000, sublemma),
        ("Weil testing", 60_000, weil_testing),
        ("formal transport", 10_000, transport),
        ("inequality chain", 100, inequality_chain),
        ("trichotomy closure", 120_000, trichotomy),
    ];
    let mut failed = 0;
    for (i, (name, limit_ms, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        let (verdict, detail) = match outcome {
            Ok(d) if ms <= u128::from(*limit_ms) => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {verdict} {name}: {detail} [{ms} ms / limit {limit_ms} ms]", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
