//! Finite combinatorial model of the trichotomy for symplectic pairs: orbit
//! tables, Hodge–Tate weight bookkeeping with weights in `{0, 1}`, and an
//! exhaustive check that excluding types (a) and (b) forces type (c).

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Orbits of size below this count as small.
pub const SMALL_ORBIT: u64 = 4;

/// Sizes of the `G_v`-orbits partitioning a finite set `Σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitTable {
    sizes: Vec<u64>,
}

impl OrbitTable {
    pub fn new(sizes: Vec<u64>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::invalid("orbits", "orbit table is empty"));
        }
        if sizes.contains(&0) {
            return Err(Error::invalid("orbits", "orbit sizes must be positive"));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// `#Σ`.
    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// `#Σ_{<4}`: points lying in orbits of size less than 4.
    pub fn small_count(&self) -> u64 {
        self.sizes.iter().filter(|&&s| s < SMALL_ORBIT).sum()
    }
}

/// Proportion of `Σ` lying in orbits of size less than 4.
pub fn size_v(orbits: &OrbitTable) -> BigRational {
    BigRational::new(orbits.small_count().into(), orbits.total().into())
}

/// One place `w | v` of `L`: local degree and `dim F¹` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaceWeight {
    pub degree: u64,
    pub f1_dim: u64,
}

/// Hodge–Tate data of a representation `W` with weights in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    weight: u64,
    field_degree: u64,
    dim_w: u64,
    places: Vec<PlaceWeight>,
}

impl WeightProfile {
    pub fn new(weight: u64, field_degree: u64, dim_w: u64, places: Vec<PlaceWeight>) -> Result<Self> {
        if places.iter().map(|p| p.degree).sum::<u64>() != field_degree {
            return Err(Error::invalid("places", "local degrees must sum to [L:K]"));
        }
        if places.iter().any(|p| p.degree == 0) {
            return Err(Error::invalid("places", "local degrees must be positive"));
        }
        if let Some(p) = places.iter().find(|p| p.f1_dim > dim_w) {
            return Err(Error::invalid(
                "places",
                format!("dim F1 = {} exceeds dim W = {dim_w}", p.f1_dim),
            ));
        }
        Ok(Self {
            weight,
            field_degree,
            dim_w,
            places,
        })
    }

    pub fn places(&self) -> &[PlaceWeight] {
        &self.places
    }

    /// `Σ_w [L_w:K_v]·dim F¹_w`.
    pub fn weighted_f1(&self) -> u64 {
        self.places.iter().map(|p| p.degree * p.f1_dim).sum()
    }
}

/// `Σ_w [L_w:K_v]·dim F¹_w = n·[L:K]·dim W / 2`, compared after doubling.
pub fn check_weight_identity(p: &WeightProfile) -> bool {
    2 * u128::from(p.weighted_f1()) == u128::from(p.weight) * u128::from(p.field_degree) * u128::from(p.dim_w)
}

/// Declared numerical invariants of a type-(b) subrepresentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeBWitness {
    pub orbit: usize,
    pub dim_w: u64,
    pub dim_f1: u64,
}

/// Shape of a symplectic pair `(A, V)` with `V` of rank `2d` over `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticPair {
    d: u64,
    orbits: OrbitTable,
    type_a: Option<usize>,
    type_b: Option<TypeBWitness>,
}

impl SyntheticPair {
    pub fn new(d: u64, orbits: OrbitTable, type_a: Option<usize>, type_b: Option<TypeBWitness>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("d", "half-rank must be at least 1"));
        }
        let n = orbits.sizes.len();
        if type_a.is_some_and(|i| i >= n) {
            return Err(Error::invalid("type_a", "orbit index out of range"));
        }
        if let Some(b) = type_b {
            if b.orbit >= n {
                return Err(Error::invalid("type_b", "orbit index out of range"));
            }
            if b.dim_f1 > b.dim_w {
                return Err(Error::invalid("type_b", "dim F1 exceeds dim W"));
            }
        }
        Ok(Self {
            d,
            orbits,
            type_a,
            type_b,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairType {
    A,
    B,
    C,
    Inconsistent,
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairType::A => "a",
            PairType::B => "b",
            PairType::C => "c",
            PairType::Inconsistent => "inconsistent",
        })
    }
}

/// `(d+1)·#Σ_{<4} ≥ #Σ`.
pub fn small_orbits_dominate(d: u64, orbits: &OrbitTable) -> bool {
    u128::from(d + 1) * u128::from(orbits.small_count()) >= u128::from(orbits.total())
}

/// First applicable type in the order a, b, c.
pub fn classify(pair: &SyntheticPair) -> PairType {
    let sizes = pair.orbits.sizes();
    if pair.type_a.is_some_and(|i| sizes[i] >= SMALL_ORBIT) {
        return PairType::A;
    }
    if let Some(b) = pair.type_b {
        if sizes[b.orbit] >= SMALL_ORBIT && 2 * b.dim_f1 >= b.dim_w {
            return PairType::B;
        }
    }
    if small_orbits_dominate(pair.d, &pair.orbits) {
        return PairType::C;
    }
    PairType::Inconsistent
}

/// Outcome of [`trichotomy_closure_check`]. `holds` is the implication
/// "hypotheses satisfiable ⟹ conclusion".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub satisfiable: bool,
    pub conclusion: bool,
    pub holds: bool,
    /// A per-orbit `dim F¹` assignment meeting every hypothesis, if any.
    pub witness: Option<Vec<u64>>,
}

impl ClosureCheck {
    pub fn is_vacuous(&self) -> bool {
        !self.satisfiable
    }
}

/// Upper bound on `dim F¹` at a point of an orbit of the given size when type
/// (b) fails.
pub fn f1_bound(orbit_size: u64, dim_w0: u64) -> u64 {
    if orbit_size >= SMALL_ORBIT {
        (dim_w0 - 1) / 2
    } else {
        dim_w0
    }
}

/// Required value of `Σ_orbits size·dim F¹`, or `None` when `dim W₀·#Σ` is odd.
pub fn weight_target(orbits: &OrbitTable, dim_w0: u64) -> Option<u64> {
    let twice = dim_w0 * orbits.total();
    twice.is_multiple_of(2).then_some(twice / 2)
}

fn check_closure_args(d: u64, dim_w0: u64) -> Result<()> {
    if dim_w0 == 0 || dim_w0 > d {
        return Err(Error::invalid("dim_w0", format!("need 1 <= dim W0 <= d = {d}, got {dim_w0}")));
    }
    Ok(())
}

/// Points of `Σ` in one `G_v`-orbit are conjugate, so `dim F¹` is constant on
/// orbits and an orbit of size `s` contributes `s·dim F¹` to the weight
/// identity. Decides by subset-sum whether some assignment obeys the bounds
/// and the identity, and separately evaluates `(dim W₀+1)·#Σ_{<4} ≥ #Σ`.
pub fn trichotomy_closure_check(d: u64, orbits: &OrbitTable, dim_w0: u64) -> Result<ClosureCheck> {
    check_closure_args(d, dim_w0)?;
    let conclusion = small_orbits_dominate(dim_w0, orbits);
    let witness = weight_target(orbits, dim_w0).and_then(|target| {
        let items: Vec<(u64, u64)> = orbits.sizes.iter().map(|&s| (s, f1_bound(s, dim_w0))).collect();
        bounded_subset_sum(&items, target)
    });
    let satisfiable = witness.is_some();
    Ok(ClosureCheck {
        satisfiable,
        conclusion,
        holds: !satisfiable || conclusion,
        witness,
    })
}

/// Finds multipliers `m_i ∈ [0, bound_i]` with `Σ m_i·weight_i = target`.
fn bounded_subset_sum(items: &[(u64, u64)], target: u64) -> Option<Vec<u64>> {
    let t = usize::try_from(target).ok()?;
    // choice[i][s] = multiplier of item i used to first reach s after items 0..=i.
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    let mut choice: Vec<Vec<Option<u64>>> = Vec::with_capacity(items.len());
    for &(w, bound) in items {
        let w = usize::try_from(w).ok()?;
        let mut next = vec![false; t + 1];
        let mut pick = vec![None; t + 1];
        for s in 0..=t {
            if !reach[s] {
                continue;
            }
            for m in 0..=bound {
                let v = s + w * m as usize;
                if v > t {
                    break;
                }
                if !next[v] {
                    next[v] = true;
                    pick[v] = Some(m);
                }
            }
        }
        reach = next;
        choice.push(pick);
    }
    if !reach[t] {
        return None;
    }
    let mut out = vec![0; items.len()];
    let mut s = t;
    for i in (0..items.len()).rev() {
        let m = choice[i][s].expect("reachable sums have a recorded choice");
        out[i] = m;
        s -= items[i].0 as usize * m as usize;
    }
    Some(out)
}

/// A case of the exhaustive scan in which hypotheses held but (c) failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanFailure {
    pub d: u64,
    pub orbits: Vec<u64>,
    pub dim_w0: u64,
    pub assignment: Vec<u64>,
    pub classified: PairType,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanReport {
    /// `(d, partition, dim W₀)` triples examined.
    pub cases: u64,
    /// Cases whose hypothesis set is empty.
    pub vacuous: u64,
    /// Assignments (up to permuting equal-size orbits) meeting all hypotheses.
    pub assignments: u64,
    /// Cases where enumeration and the subset-sum decision disagree.
    pub solver_mismatches: u64,
    pub failures: Vec<ScanFailure>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.solver_mismatches == 0
    }
}

/// Partitions of `n` in non-increasing order.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Non-increasing sequences of length `len` with entries in `[0, max]`.
fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in (0..=max).rev() {
            prefix.push(v);
            go(len, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// For every `d ≤ max_d`, every orbit partition of every `#Σ ≤ max_points`
/// and every `1 ≤ dim W₀ ≤ d`, enumerates the `dim F¹` assignments obeying the
/// (b)-failure bounds and the weight identity, and checks that each such
/// configuration classifies as (c).
pub fn trichotomy_scan(max_d: u64, max_points: u64) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    for n in 1..=max_points {
        for parts in partitions(n) {
            let orbits = OrbitTable::new(parts.clone())?;
            // Orbits grouped by size: (size, count).
            let mut classes: Vec<(u64, usize)> = Vec::new();
            for &s in &parts {
                match classes.last_mut() {
                    Some((size, count)) if *size == s => *count += 1,
                    _ => classes.push((s, 1)),
                }
            }
            for d in 1..=max_d {
                for dim_w0 in 1..=d {
                    report.cases += 1;
                    let closure = trichotomy_closure_check(d, &orbits, dim_w0)?;
                    let found = scan_case(d, &orbits, &classes, dim_w0, &mut report)?;
                    if found != closure.satisfiable {
                        report.solver_mismatches += 1;
                    }
                    if !found {
                        report.vacuous += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

fn scan_case(
    d: u64,
    orbits: &OrbitTable,
    classes: &[(u64, usize)],
    dim_w0: u64,
    report: &mut ScanReport,
) -> Result<bool> {
    let Some(target) = weight_target(orbits, dim_w0) else {
        return Ok(false);
    };
    let per_class: Vec<Vec<Vec<u64>>> = classes
        .iter()
        .map(|&(size, count)| multisets(count, f1_bound(size, dim_w0)))
        .collect();
    let pair = SyntheticPair::new(d, orbits.clone(), None, None)?;
    let verdict = classify(&pair);
    let mut found = false;
    let mut idx = vec![0usize; classes.len()];
    loop {
        let total: u64 = classes
            .iter()
            .zip(&idx)
            .enumerate()
            .map(|(c, (&(size, _), &i))| size * per_class[c][i].iter().sum::<u64>())
            .sum();
        if total == target {
            found = true;
            report.assignments += 1;
            let assignment: Vec<u64> = idx.iter().enumerate().flat_map(|(c, &i)| per_class[c][i].clone()).collect();
            let places = orbits
                .sizes()
                .iter()
                .zip(&assignment)
                .map(|(&degree, &f1_dim)| PlaceWeight { degree, f1_dim })
                .collect();
            let profile = WeightProfile::new(1, orbits.total(), dim_w0, places)?;
            debug_assert!(check_weight_identity(&profile));
            if verdict != PairType::C {
                report.failures.push(ScanFailure {
                    d,
                    orbits: orbits.sizes().to_vec(),
                    dim_w0,
                    assignment,
                    classified: verdict,
                });
            }
        }
        // Odometer over the per-class choices.
        let mut c = 0;
        loop {
            if c == idx.len() {
                return Ok(found);
            }
            idx[c] += 1;
            if idx[c] < per_class[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}
