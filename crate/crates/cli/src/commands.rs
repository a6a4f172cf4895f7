use std::str::FromStr;

use lvkit::formalode::{self, ConnectionForm, SeriesMatrix};
use lvkit::kpengine::{self, ConditionReport, KpQuery, Variant};
use lvkit::localfield::{self, PlaceProfile};
use lvkit::symplectic::{
    build_witness, count_lagrangians, default_eigenvalues, find_large_intersection, Field, PrimeField, Subspace,
    SymplecticSpace,
};
use lvkit::trichotomy::{self, OrbitTable, PlaceWeight, SyntheticPair, WeightProfile};
use lvkit::weilpurity::{self, Rejection, StrippedFactor, WeilCandidate};
use lvkit::{exactnum, Error, IntPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::parse;
use crate::report::{integer, rational, Blame, CliError, CliResult, Outcome};
use crate::{Command, ConnectionArgs, LocalArgs, PlaceArgs};

pub fn run(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::FindQ { place, ceiling } => find_q(place, *ceiling),
        Command::CheckQ { q, place } => check_q(*q, place),
        Command::Density { q } => {
            let d = kpengine::density_lower_bound(*q).blame("q")?;
            Ok(Outcome::new(json!({ "q": q }), json!({ "density": rational(&d) }), true))
        }
        Command::LinnikQ { r0, ceiling } => {
            let q = kpengine::linnik_q(*r0, *ceiling).blame("r0")?;
            Ok(Outcome::new(json!({ "r0": r0, "ceiling": ceiling }), json!({ "q": integer(&q) }), true))
        }
        Command::CountExt { local, degree } => count_ext(local, *degree),
        Command::NV { local } => n_v(local),
        Command::WeilCheck { poly, q, n } => weil_check(poly, q, *n),
        Command::Sublemma {
            p,
            d,
            lambdas,
            all_eigenvalues,
        } => sublemma(*p, *d, lambdas.as_deref(), *all_eigenvalues),
        Command::LagrangianCount { p, d } => {
            let field = PrimeField::new(*p).blame("p")?;
            let count = count_lagrangians(&SymplecticSpace::standard(field, *d)).blame("d")?;
            let expected: BigInt = (1..=*d as u32).map(|i| exactnum::pow_int(i64::from(*p), i) + 1).product();
            Ok(Outcome::new(
                json!({ "p": p, "d": d }),
                json!({ "count": integer(&count), "product_formula": integer(&expected) }),
                true,
            ))
        }
        Command::SurjCount { genus, k } => {
            let c = kpengine::surj_count(*genus, *k).blame("k")?;
            Ok(Outcome::new(json!({ "genus": genus, "k": k }), json!({ "count": integer(&c) }), true))
        }
        Command::Transport { connection, point } => transport(connection, point.as_deref()),
        Command::FlatCheck { connection } => flat_check(connection),
        Command::SizeV { orbits, genus, k, n_v } => size_v(orbits.as_deref(), *genus, *k, n_v.as_deref()),
        Command::WeightIdentity {
            weight,
            field_degree,
            dim_w,
            places,
        } => weight_identity(*weight, *field_degree, *dim_w, places),
        Command::TrichotomyScan {
            max_d,
            max_points,
            orbits,
            d,
            dim_w0,
        } => match orbits {
            Some(o) => closure(o, d.expect("clap enforces --d"), dim_w0.expect("clap enforces --dim-w0")),
            None => scan(*max_d, *max_points),
        },
        Command::Dims { genus, q, d } => dims(*genus, *q, *d),
    }
}

fn build_query(a: &PlaceArgs) -> CliResult<KpQuery> {
    let variant = Variant::from_str(&a.variant).blame("variant")?;
    let mut query = KpQuery::new(a.genus, variant).blame("genus")?;
    match &a.qv {
        Some(qv) => {
            let qv = parse::big_int(qv).blame("qv")?;
            let (p, f) = exactnum::is_prime_power(&qv).ok_or_else(|| CliError::new("qv", Error::NotPrimePower(qv.to_string())))?;
            let p = p.to_u64().ok_or_else(|| CliError::new("qv", "characteristic exceeds 64 bits"))?;
            let place = PlaceProfile::new(p, a.e, f)
                .blame("e")?
                .with_self_conjugate(!a.not_self_conjugate)
                .with_good_reduction(a.good_reduction);
            query = query.with_place(place);
        }
        None => {
            if a.not_self_conjugate || a.good_reduction || a.e != 1 {
                return Err(CliError::new("qv", "place flags need an explicit --qv"));
            }
        }
    }
    if let Some(n) = &a.n_v {
        query = query.with_n_v(parse::big_int(n).blame("n-v")?).blame("n-v")?;
    }
    Ok(query.with_good_model(a.good_model))
}

fn place_inputs(a: &PlaceArgs) -> Value {
    json!({
        "genus": a.genus,
        "variant": a.variant,
        "qv": a.qv,
        "e": a.e,
        "n_v": a.n_v,
        "self_conjugate": !a.not_self_conjugate,
        "good_reduction": a.good_reduction,
        "good_model": a.good_model,
    })
}

fn place_json(p: &PlaceProfile) -> Value {
    json!({
        "p": p.p,
        "e": p.e,
        "f": p.f,
        "self_conjugate": p.self_conjugate,
        "good_reduction": p.good_reduction,
    })
}

fn condition_report_json(r: &ConditionReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "holds": c.holds,
                "lhs": c.lhs.as_ref().map(rational),
                "rhs": c.rhs.as_ref().map(rational),
                "marginal": c.marginal,
                "detail": c.detail,
            })
        })
        .collect();
    json!({
        "q": r.q,
        "k": r.k,
        "passed": r.passed,
        "variant": r.variant.as_str(),
        "place": r.place.as_ref().map(place_json),
        "witness_constructed": r.witness_constructed,
        "q_v": r.q_v.as_ref().map(integer),
        "n_v": r.n_v.as_ref().map(integer),
        "kp_dimension": kpengine::kp_dimension(r.genus, r.q).ok().as_ref().map(rational),
        "marginal": r.any_marginal(),
        "conditions": conditions,
    })
}

fn find_q(a: &PlaceArgs, ceiling: u64) -> CliResult<Outcome> {
    let query = build_query(a)?;
    let mut inputs = place_inputs(a);
    inputs["ceiling"] = json!(ceiling);
    match kpengine::find_min_q(&query, ceiling) {
        Ok(r) => Ok(Outcome::new(inputs, condition_report_json(&r), true)),
        Err(Error::SearchExhausted { last, .. }) => Ok(Outcome::new(
            inputs,
            json!({ "q": Value::Null, "passed": false, "last_examined": last }),
            false,
        )),
        Err(e) => Err(CliError::new("genus", e)),
    }
}

fn check_q(q: u64, a: &PlaceArgs) -> CliResult<Outcome> {
    let query = build_query(a)?;
    let r = kpengine::check_conditions(q, &query).blame("q")?;
    let mut inputs = place_inputs(a);
    inputs["q"] = json!(q);
    let ok = r.passed;
    Ok(Outcome::new(inputs, condition_report_json(&r), ok))
}

fn local_place(l: &LocalArgs) -> CliResult<PlaceProfile> {
    PlaceProfile::new(l.p, l.e, l.f).blame("p")
}

fn local_inputs(l: &LocalArgs) -> Value {
    json!({ "p": l.p, "e": l.e, "f": l.f })
}

fn count_ext(l: &LocalArgs, degree: u32) -> CliResult<Outcome> {
    let v = local_place(l)?;
    let count = localfield::count_extensions(&v, degree).blame("degree")?;
    let tally = localfield::ramified_tally(&v, degree);
    let by_exponent: Vec<Value> = tally
        .by_exponent
        .iter()
        .map(|(c, n)| json!({ "c": c, "count": integer(n) }))
        .collect();
    let mut inputs = local_inputs(l);
    inputs["degree"] = json!(degree);
    Ok(Outcome::new(
        inputs,
        json!({
            "count": integer(&count),
            "unramified": 1,
            "totally_ramified": integer(&tally.total()),
            "by_discriminant_exponent": by_exponent,
            "mass": rational(&tally.mass(&v.residue_cardinality())),
        }),
        true,
    ))
}

fn n_v(l: &LocalArgs) -> CliResult<Outcome> {
    let v = local_place(l)?;
    let quadratic = localfield::count_extensions(&v, 2).blame("p")?;
    let cubic = localfield::count_extensions(&v, 3).blame("p")?;
    Ok(Outcome::new(
        local_inputs(l),
        json!({
            "n_v": integer(&localfield::n_v(&v)),
            "quadratic": integer(&quadratic),
            "cubic": integer(&cubic),
        }),
        true,
    ))
}

fn rejection_json(r: &Rejection) -> Value {
    match r {
        Rejection::OddRemainder => json!({ "kind": "odd_remainder" }),
        Rejection::FunctionalEquation { index } => json!({ "kind": "functional_equation", "index": index }),
        Rejection::NonRealTrace { distinct, real } => {
            json!({ "kind": "non_real_trace", "distinct": distinct, "real": real })
        }
        Rejection::TraceOutOfRange { count } => json!({ "kind": "trace_out_of_range", "count": count }),
    }
}

fn weil_check(poly: &str, q: &str, n: u32) -> CliResult<Outcome> {
    let p = IntPolynomial::from_str(poly).blame("poly")?;
    let q_int = parse::big_int(q).blame("q")?;
    let candidate = WeilCandidate::new(p, q_int, n).map_err(|e| match e {
        Error::NotPrimePower(_) => CliError::new("q", e),
        other => CliError::new("poly", other),
    })?;
    let v = weilpurity::check_weil(&candidate).blame("poly")?;
    let stripped: Vec<Value> = v
        .stripped
        .iter()
        .map(|s| match s {
            StrippedFactor::Quadratic { multiplicity } => json!({ "factor": "x^2-q^n", "multiplicity": multiplicity }),
            StrippedFactor::Linear { root, multiplicity } => {
                json!({ "factor": "linear", "root": integer(root), "multiplicity": multiplicity })
            }
        })
        .collect();
    let c = &v.certificate;
    Ok(Outcome::new(
        json!({ "poly": poly, "q": q, "n": n }),
        json!({
            "is_weil": v.is_weil,
            "is_integral": v.is_integral,
            "stripped": stripped,
            "rejection": v.rejection.as_ref().map(rejection_json),
            "certificate": {
                "remainder": c.remainder.to_string(),
                "real_poly": c.real_poly.as_ref().map(ToString::to_string),
                "distinct_roots": c.distinct_roots,
                "real_roots": c.real_roots,
                "squared_poly": c.squared_poly.as_ref().map(ToString::to_string),
                "beyond_bound": c.beyond_bound,
                "on_boundary": c.on_boundary,
            },
        }),
        v.is_weil,
    ))
}

fn basis_json(s: &Subspace<u32>) -> Value {
    json!(s.basis())
}

/// Ordered tuples of `d` distinct nonzero elements of `F_p`.
fn distinct_tuples(p: u32, d: usize) -> Vec<Vec<u32>> {
    fn go(p: u32, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for x in 1..p {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(p, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(p, d, &mut Vec::new(), &mut out);
    out
}

fn sublemma(p: u32, d: usize, lambdas: Option<&str>, all: bool) -> CliResult<Outcome> {
    let field = PrimeField::new(p).blame("p")?;
    if d == 0 {
        return Err(CliError::new("d", "must be at least 1"));
    }
    let space = SymplecticSpace::standard(field, d);
    let tuples = if all {
        let t = distinct_tuples(p, d);
        if t.is_empty() {
            return Err(CliError::new("d", format!("F_{p} has fewer than {d} nonzero elements")));
        }
        t
    } else {
        match lambdas {
            Some(s) => {
                let raw: Vec<i64> = parse::list(s).blame("lambdas")?;
                vec![raw.into_iter().map(|x| field.from_i64(x)).collect()]
            }
            None => vec![default_eigenvalues(&field, d).blame("d")?],
        }
    };
    let mut results = Vec::new();
    let mut ok = true;
    for lambdas in &tuples {
        let tuple = build_witness(&space, lambdas).blame("lambdas")?;
        let hit = find_large_intersection(&space, &tuple).blame("d")?;
        ok &= hit.is_none();
        results.push(json!({
            "eigenvalues": lambdas,
            "passed": hit.is_none(),
            "lagrangians": tuple.lagrangians.iter().map(basis_json).collect::<Vec<_>>(),
            "counterexample": hit.as_ref().map(basis_json),
        }));
    }
    Ok(Outcome::new(
        json!({ "p": p, "d": d, "lambdas": lambdas, "all_eigenvalues": all }),
        json!({ "passed": ok, "tuples_checked": tuples.len(), "results": results }),
        ok,
    ))
}

fn connection(c: &ConnectionArgs) -> CliResult<ConnectionForm> {
    let vars = c.omega.len();
    let mut components = Vec::with_capacity(vars);
    for text in &c.omega {
        let cells = parse::matrix_cells(text).blame("omega")?;
        let entries = cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| parse::series_entry(cell, vars, c.order))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .blame("omega")?;
        components.push(SeriesMatrix::new(entries).blame("omega")?);
    }
    ConnectionForm::new(components).blame("omega")
}

fn transport(c: &ConnectionArgs, point: Option<&str>) -> CliResult<Outcome> {
    let omega = connection(c)?;
    let t = formalode::parallel_transport(&omega, c.order).blame("omega")?;
    let residual_zero = formalode::residual(&omega, &t).iter().all(SeriesMatrix::is_zero);
    let matrix: Vec<Vec<String>> = t
        .entries()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let mut out = json!({
        "matrix": matrix,
        "residual_vanishes": residual_zero,
        "determinant_constant_term": rational(&t.determinant().coeff(&vec![0; omega.vars()])),
    });
    if let Some(pt) = point {
        let coords: Vec<BigRational> = parse::list(pt).blame("point")?;
        let value = formalode::evaluate(&t, &coords).blame("point")?;
        out["value_at_point"] = json!(value
            .iter()
            .map(|row| row.iter().map(rational).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    Ok(Outcome::new(
        json!({ "omega": c.omega, "order": c.order, "point": point }),
        out,
        residual_zero,
    ))
}

fn flat_check(c: &ConnectionArgs) -> CliResult<Outcome> {
    let omega = connection(c)?;
    let defect = omega.flatness_defect(c.order);
    Ok(Outcome::new(
        json!({ "omega": c.omega, "order": c.order }),
        json!({
            "flat": defect.is_none(),
            "defect": defect.map(|(i, j, degree)| json!({ "i": i, "j": j, "degree": degree })),
        }),
        defect.is_none(),
    ))
}

fn orbit_table(s: &str) -> CliResult<OrbitTable> {
    OrbitTable::new(parse::list(s).blame("orbits")?).blame("orbits")
}

fn size_v(orbits: Option<&str>, genus: Option<u32>, k: Option<u64>, n_v: Option<&str>) -> CliResult<Outcome> {
    if let Some(o) = orbits {
        let table = orbit_table(o)?;
        return Ok(Outcome::new(
            json!({ "orbits": table.sizes() }),
            json!({ "size_v": rational(&trichotomy::size_v(&table)) }),
            true,
        ));
    }
    let (Some(g), Some(k), Some(n)) = (genus, k, n_v) else {
        return Err(CliError::new("orbits", "give --orbits, or all of --genus, --k and --n-v"));
    };
    let n = parse::big_int(n).blame("n-v")?;
    let b = kpengine::size_v_upper_bound(g, k, &n).blame("genus")?;
    Ok(Outcome::new(
        json!({ "genus": g, "k": k, "n_v": integer(&n) }),
        json!({ "bound": rational(&b.bound), "target": rational(&b.target), "holds": b.holds }),
        b.holds,
    ))
}

fn weight_identity(weight: u64, field_degree: u64, dim_w: u64, places: &str) -> CliResult<Outcome> {
    let mut parsed = Vec::new();
    for item in places.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (deg, f1) = item
            .split_once(':')
            .ok_or_else(|| CliError::new("places", format!("`{item}` is not degree:dimF1")))?;
        let degree = deg.trim().parse().blame("places")?;
        let f1_dim = f1.trim().parse().blame("places")?;
        parsed.push(PlaceWeight { degree, f1_dim });
    }
    let profile = WeightProfile::new(weight, field_degree, dim_w, parsed).blame("places")?;
    let holds = trichotomy::check_weight_identity(&profile);
    Ok(Outcome::new(
        json!({ "weight": weight, "field_degree": field_degree, "dim_w": dim_w, "places": places }),
        json!({
            "holds": holds,
            "weighted_f1": profile.weighted_f1(),
            "expected": rational(&BigRational::new(
                BigInt::from(weight) * BigInt::from(field_degree) * BigInt::from(dim_w),
                BigInt::from(2),
            )),
        }),
        holds,
    ))
}

fn closure(orbits: &str, d: u64, dim_w0: u64) -> CliResult<Outcome> {
    let table = orbit_table(orbits)?;
    let c = trichotomy::trichotomy_closure_check(d, &table, dim_w0).blame("dim-w0")?;
    let pair = SyntheticPair::new(d, table.clone(), None, None).blame("d")?;
    Ok(Outcome::new(
        json!({ "orbits": table.sizes(), "d": d, "dim_w0": dim_w0 }),
        json!({
            "satisfiable": c.satisfiable,
            "vacuous": c.is_vacuous(),
            "conclusion": c.conclusion,
            "holds": c.holds,
            "witness": c.witness,
            "classification": trichotomy::classify(&pair).to_string(),
        }),
        c.holds,
    ))
}

fn scan(max_d: u64, max_points: u64) -> CliResult<Outcome> {
    let r = trichotomy::trichotomy_scan(max_d, max_points).blame("max-points")?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "d": f.d,
                "orbits": f.orbits,
                "dim_w0": f.dim_w0,
                "assignment": f.assignment,
                "classified": f.classified.to_string(),
            })
        })
        .collect();
    let passed = r.passed();
    Ok(Outcome::new(
        json!({ "max_d": max_d, "max_points": max_points }),
        json!({
            "passed": passed,
            "cases": r.cases,
            "vacuous_cases": r.vacuous,
            "satisfiable_cases": r.cases - r.vacuous,
            "assignments": r.assignments,
            "solver_mismatches": r.solver_mismatches,
            "failures": failures,
        }),
        passed,
    ))
}

fn dims(genus: Option<u32>, q: Option<u64>, d: Option<u64>) -> CliResult<Outcome> {
    if genus.is_none() && d.is_none() {
        return Err(CliError::new("genus", "give --genus with --q, or --d"));
    }
    let mut out = json!({});
    if let (Some(g), Some(q)) = (genus, q) {
        out["kp_dimension"] = rational(&kpengine::kp_dimension(g, q).blame("q")?);
    }
    if let Some(d) = d {
        out["aut_dim_bound"] = integer(&kpengine::aut_dim_bound(d));
        out["trichotomy_min_degree"] = integer(&kpengine::trichotomy_min_degree(d).blame("d")?);
        out["lagrangian_grassmannian_dim"] = json!(d * (d + 1) / 2);
    }
    Ok(Outcome::new(json!({ "genus": genus, "q": q, "d": d }), out, true))
}
