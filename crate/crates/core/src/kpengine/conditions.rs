//! Conditions on a place `v` and an odd prime `q` that make the type (c) locus
//! of the Kodaira–Parshin family `X_q` empty, in three forms:
//!
//! * `New`: `v` self-conjugate; `4 ∤ q−1` and no odd prime divides both `q−1`
//!   and `q_v·∏_{i≤3}(q_v^i − 1)`; `n_v·Z·2^g/(q−1)^g < 1/((g−½)(q−1)+1)`.
//! * `Proposition`: the same divisibility condition stated with
//!   `q_v(q_v+1)(q_v³−1)`, together with `q−1 ≥ 9·n_v`.
//! * `Original`: `v` self-conjugate, unramified over `Q` and prime to 2;
//!   divisibility with `∏_{i≤7}`; the inequality with `4` in place of `n_v`;
//!   a caller-asserted good model.
//!
//! `Z` is the certified upper bound for `ζ(2g)`. Without a place the check is
//! existential: it asks whether some unramified self-conjugate `v` of degree
//! one works, and names one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::require_odd_prime;
use crate::error::{Error, Result};
use crate::exactnum::{crt, factor_u64, is_prime, zeta_upper_bound, PrimeSieve, DEFAULT_ZETA_TERMS};
use crate::localfield::{n_v, PlaceProfile};

/// Default upper limit for [`find_min_q`].
pub const DEFAULT_Q_CEILING: u64 = 1_000_000;

/// A failed inequality whose two sides are within this ratio is flagged
/// marginal.
pub const MARGINAL_TOLERANCE: (i64, i64) = (101, 100);

/// Residue-class members examined when constructing a witness place.
const WITNESS_CEILING: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    New,
    Proposition,
    Original,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::New => "new",
            Variant::Proposition => "proposition",
            Variant::Original => "original",
        }
    }

    /// Largest `i` such that `q_v^i − 1` enters the divisibility condition.
    fn power_range(self) -> u32 {
        match self {
            Variant::New | Variant::Proposition => 3,
            Variant::Original => 7,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "new" => Ok(Variant::New),
            "proposition" | "prop" => Ok(Variant::Proposition),
            "original" | "lv" => Ok(Variant::Original),
            other => Err(Error::invalid("variant", format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpQuery {
    genus: u32,
    place: Option<PlaceProfile>,
    n_v_override: Option<BigInt>,
    variant: Variant,
    good_model: bool,
}

impl KpQuery {
    pub fn new(genus: u32, variant: Variant) -> Result<Self> {
        if genus < 2 {
            return Err(Error::invalid("g", format!("genus must be at least 2, got {genus}")));
        }
        Ok(Self {
            genus,
            place: None,
            n_v_override: None,
            variant,
            good_model: false,
        })
    }

    pub fn with_place(mut self, place: PlaceProfile) -> Self {
        self.place = Some(place);
        self
    }

    pub fn with_n_v(mut self, n_v: BigInt) -> Result<Self> {
        if n_v < BigInt::one() {
            return Err(Error::invalid("n_v", "override must be at least 1"));
        }
        self.n_v_override = Some(n_v);
        Ok(self)
    }

    pub fn with_good_model(mut self, flag: bool) -> Self {
        self.good_model = flag;
        self
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn place(&self) -> Option<&PlaceProfile> {
        self.place.as_ref()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `n_v` used for a given place: the override, else 2 at places of good
    /// reduction, else the count of quadratic and cubic extensions.
    pub fn effective_n_v(&self, place: &PlaceProfile) -> BigInt {
        if let Some(n) = &self.n_v_override {
            return n.clone();
        }
        if place.good_reduction {
            return BigInt::from(2);
        }
        n_v(place)
    }
}

/// One condition of a report. Inequalities carry both sides exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub label: &'static str,
    pub holds: bool,
    pub lhs: Option<BigRational>,
    pub rhs: Option<BigRational>,
    pub marginal: bool,
    pub detail: String,
}

impl ConditionCheck {
    fn flag(label: &'static str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            label,
            holds,
            lhs: None,
            rhs: None,
            marginal: false,
            detail: detail.into(),
        }
    }

    /// `lhs < rhs` when `strict`, else `lhs ≥ rhs`.
    fn compare(label: &'static str, lhs: BigRational, rhs: BigRational, strict: bool, detail: String) -> Self {
        let holds = if strict { lhs < rhs } else { lhs >= rhs };
        let (num, den) = MARGINAL_TOLERANCE;
        let tol = BigRational::new(num.into(), den.into());
        let marginal = !holds
            && if strict {
                lhs <= &rhs * &tol
            } else {
                &lhs * &tol >= rhs
            };
        Self {
            label,
            holds,
            lhs: Some(lhs),
            rhs: Some(rhs),
            marginal,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub q: u64,
    pub k: u64,
    pub genus: u32,
    pub variant: Variant,
    /// The place checked: the query's own, or a constructed witness.
    pub place: Option<PlaceProfile>,
    pub witness_constructed: bool,
    pub q_v: Option<BigInt>,
    pub n_v: Option<BigInt>,
    pub conditions: Vec<ConditionCheck>,
    pub passed: bool,
}

/// Odd primes dividing `q − 1`.
fn odd_primes_of(q: u64) -> Vec<u64> {
    factor_u64(q - 1).into_iter().map(|(r, _)| r).filter(|&r| r != 2).collect()
}

fn residue(q_v: &BigInt, r: u64) -> u64 {
    q_v.mod_floor(&BigInt::from(r)).to_u64().expect("residue below modulus")
}

fn pow_mod(a: u64, e: u32, r: u64) -> u64 {
    let (a, r) = (u128::from(a), u128::from(r));
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc * a % r;
    }
    acc as u64
}

/// `r | x·∏_{i≤m}(x^i − 1)` for `x ≡ a (mod r)`.
fn divides_power_product(a: u64, m: u32, r: u64) -> bool {
    a == 0 || (1..=m).any(|i| pow_mod(a, i, r) == 1)
}

/// `r | x(x+1)(x³−1)` for `x ≡ a (mod r)`.
fn divides_proposition_product(a: u64, r: u64) -> bool {
    a == 0 || (a + 1).is_multiple_of(r) || pow_mod(a, 3, r) == 1
}

/// `4 ∤ q−1` and no odd prime of `q−1` divides the `q_v` product.
fn divisibility_check(q: u64, q_v: &BigInt, variant: Variant) -> ConditionCheck {
    let mut blocking = Vec::new();
    for r in odd_primes_of(q) {
        let a = residue(q_v, r);
        let hit = divides_power_product(a, variant.power_range(), r);
        if variant.power_range() == 3 {
            assert_eq!(
                divides_proposition_product(a, r),
                hit,
                "odd prime {r} separates q_v(q_v+1)(q_v^3-1) from q_v*prod(q_v^i-1) at q_v = {q_v}"
            );
        }
        if hit {
            blocking.push(r);
        }
    }
    let four = (q - 1).is_multiple_of(4);
    let detail = match (four, blocking.is_empty()) {
        (false, true) => format!("q-1 = {} avoids 4 and the odd primes of the q_v product", q - 1),
        _ => {
            let mut parts = Vec::new();
            if four {
                parts.push("4 | q-1".to_string());
            }
            if !blocking.is_empty() {
                parts.push(format!("shared odd primes {blocking:?}"));
            }
            parts.join("; ")
        }
    };
    ConditionCheck::flag("divisibility", !four && blocking.is_empty(), detail)
}

/// `c·Z·2^g/(q−1)^g < 1/((g−½)(q−1)+1)`.
fn main_inequality(label: &'static str, coefficient: &BigInt, genus: u32, q: u64) -> ConditionCheck {
    let z = zeta_upper_bound(2 * genus, DEFAULT_ZETA_TERMS);
    let two_g = num_traits::pow(BigInt::from(2), genus as usize);
    let denom = num_traits::pow(BigInt::from(q - 1), genus as usize);
    let lhs = z * BigRational::new(coefficient * two_g, denom);
    let rhs = BigRational::new(BigInt::from(2), BigInt::from(u64::from(2 * genus - 1) * (q - 1) + 2));
    ConditionCheck::compare(label, lhs, rhs, true, format!("coefficient {coefficient}"))
}

/// Least residue in `[1, r)` whose multiplicative order exceeds `m`.
fn residue_of_large_order(r: u64, m: u32) -> Option<u64> {
    (2..r).find(|&a| !divides_power_product(a, m, r))
}

/// An odd prime `p` whose residues avoid every blocking pattern modulo the
/// odd primes of `q − 1`; `None` if some such prime admits no good residue.
fn witness_prime(q: u64, m: u32) -> Result<Option<u64>> {
    let mut congruences = vec![(BigInt::one(), BigInt::from(2))];
    for r in odd_primes_of(q) {
        match residue_of_large_order(r, m) {
            Some(a) => congruences.push((BigInt::from(a), BigInt::from(r))),
            None => return Ok(None),
        }
    }
    let (mut p, modulus) = crt(&congruences)?;
    if p <= BigInt::one() {
        p += &modulus;
    }
    for _ in 0..WITNESS_CEILING {
        if is_prime(&p) {
            return Ok(Some(p.to_u64().ok_or_else(|| Error::invalid("q", "witness prime exceeds u64"))?));
        }
        p += &modulus;
    }
    Err(Error::SearchExhausted {
        what: "witness prime",
        last: p.to_string(),
    })
}

/// Evaluates the query's variant at `q`.
pub fn check_conditions(q: u64, query: &KpQuery) -> Result<ConditionReport> {
    require_odd_prime(q)?;
    let variant = query.variant;
    let mut conditions = Vec::new();
    let mut witness_constructed = false;

    let place = match query.place {
        Some(p) => Some(p),
        None => {
            let found = witness_prime(q, variant.power_range())?;
            witness_constructed = found.is_some();
            match found {
                Some(p) => Some(PlaceProfile::new(p, 1, 1)?.with_self_conjugate(true)),
                None => {
                    conditions.push(ConditionCheck::flag(
                        "divisibility",
                        false,
                        if (q - 1).is_multiple_of(4) {
                            "4 | q-1".to_string()
                        } else {
                            "some odd prime of q-1 divides the q_v product for every q_v".to_string()
                        },
                    ));
                    None
                }
            }
        }
    };
    let q_v = place.as_ref().map(PlaceProfile::residue_cardinality);

    match variant {
        Variant::New => {
            if let Some(p) = &place {
                conditions.insert(0, ConditionCheck::flag("self_conjugate", p.self_conjugate, ""));
            }
        }
        Variant::Original => {
            if let Some(p) = &place {
                let ok = p.self_conjugate && p.e == 1 && p.p != 2;
                let detail = format!("self_conjugate={}, e={}, p={}", p.self_conjugate, p.e, p.p);
                conditions.insert(0, ConditionCheck::flag("friendly_place", ok, detail));
            }
        }
        Variant::Proposition => {}
    }
    if let Some(q_v) = &q_v {
        conditions.push(divisibility_check(q, q_v, variant));
    }

    let n_v = match (variant, &place) {
        (Variant::Original, _) => None,
        (_, Some(p)) => Some(query.effective_n_v(p)),
        (_, None) => query.n_v_override.clone(),
    };
    match variant {
        Variant::New => {
            if let Some(n) = &n_v {
                conditions.push(main_inequality("size_inequality", n, query.genus, q));
            }
        }
        Variant::Proposition => {
            if let Some(n) = &n_v {
                let lhs = BigRational::from_integer(BigInt::from(q - 1));
                let rhs = BigRational::from_integer(n * 9);
                conditions.push(ConditionCheck::compare("q_minus_1_vs_9_n_v", lhs, rhs, false, String::new()));
            }
        }
        Variant::Original => {
            conditions.push(main_inequality("size_inequality", &BigInt::from(4), query.genus, q));
            conditions.push(ConditionCheck::flag("good_model", query.good_model, "caller-asserted"));
        }
    }

    let passed = place.is_some() && !conditions.is_empty() && conditions.iter().all(|c| c.holds);
    Ok(ConditionReport {
        q,
        k: (q - 1) / 2,
        genus: query.genus,
        variant,
        place,
        witness_constructed,
        q_v,
        n_v,
        conditions,
        passed,
    })
}

/// Least odd prime `q ≤ ceiling` passing [`check_conditions`].
pub fn find_min_q(query: &KpQuery, ceiling: u64) -> Result<ConditionReport> {
    let mut last = 0;
    for q in PrimeSieve::starting_at(3) {
        if q > ceiling {
            break;
        }
        last = q;
        let report = check_conditions(q, query)?;
        if report.passed {
            return Ok(report);
        }
    }
    Err(Error::SearchExhausted {
        what: "odd prime q meeting the conditions",
        last: last.to_string(),
    })
}

impl ConditionReport {
    pub fn condition(&self, label: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.label == label)
    }

    pub fn any_marginal(&self) -> bool {
        self.conditions.iter().any(|c| c.marginal)
    }
}
