//! Truncated multivariate power series and the formal parallel transport
//! `dT = −ω·T`, `T(0) = I`, for a flat polynomial connection form
//! `ω = Σ_i ω_i dt_i`.
//!
//! The solution is built one homogeneous degree at a time. Applying the Euler
//! operator `Σ t_i ∂_i` to the equation gives
//! `k·T_k = −Σ_i t_i [ω_i T]_{k−1}`,
//! which determines `T_k` from lower degrees; flatness makes the result solve
//! every component `∂_i T = −ω_i T` and not just their Euler combination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Power series in `vars` variables modulo total degree `order + 1`. Absent
/// exponents are zero; no stored exponent exceeds the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: usize,
    order: u32,
    terms: BTreeMap<Exponent, BigRational>,
}

fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl TruncatedSeries {
    pub fn zero(vars: usize, order: u32) -> Self {
        Self {
            vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, order: u32, c: BigRational) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(vec![0; vars], c);
        s
    }

    pub fn one(vars: usize, order: u32) -> Self {
        Self::constant(vars, order, BigRational::one())
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats and
    /// dropping anything above the truncation order.
    pub fn from_terms(vars: usize, order: u32, terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Result<Self> {
        let mut s = Self::zero(vars, order);
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::DimensionMismatch {
                    expected: vars,
                    found: e.len(),
                });
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if total_degree(&e) > self.order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree present, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn truncate(&self, order: u32) -> Self {
        Self {
            vars: self.vars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            vars: self.vars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out = out.truncate(out.order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.vars, self.order);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.vars, order);
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &other.terms {
                if d1 + total_degree(e2) > order {
                    continue;
                }
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplication by `t_i`; the truncation order is unchanged.
    pub fn mul_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars, self.order);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += 1;
            out.add_term(e, c.clone());
        }
        out
    }

    /// `∂/∂t_i`, known modulo degree `order`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars, self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .fold(BigRational::zero(), |a, b| a + b))
    }
}

impl fmt::Display for TruncatedSeries {
    /// Terms by increasing total degree, e.g. `1 - 2*t1 + 1/2*t1^2*t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Exponent, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (total_degree(e), std::cmp::Reverse((*e).clone())));
        for (n, (e, c)) in ordered.into_iter().enumerate() {
            let negative = c < &BigRational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Square matrix of truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    entries: Vec<Vec<TruncatedSeries>>,
}

impl SeriesMatrix {
    pub fn new(entries: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        let m = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: row.len(),
            });
        }
        Ok(Self { entries })
    }

    pub fn identity(size: usize, vars: usize, order: u32) -> Self {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i == j {
                            TruncatedSeries::one(vars, order)
                        } else {
                            TruncatedSeries::zero(vars, order)
                        }
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    /// Constant matrix with rational entries.
    pub fn constant(rows: &[Vec<BigRational>], vars: usize, order: u32) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|c| TruncatedSeries::constant(vars, order, c.clone())).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<TruncatedSeries>] {
        &self.entries
    }

    fn map(&self, f: impl Fn(&TruncatedSeries) -> TruncatedSeries) -> Self {
        Self {
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.map(TruncatedSeries::neg))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.size();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut acc = self.entries[i][0].mul(&other.entries[0][j]);
                        for k in 1..m {
                            acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn truncate(&self, order: u32) -> Self {
        self.map(|s| s.truncate(order))
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.map(|s| s.homogeneous_part(degree))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.map(|s| s.scale(k))
    }

    pub fn mul_var(&self, i: usize) -> Self {
        self.map(|s| s.mul_var(i))
    }

    pub fn derivative(&self, i: usize) -> Self {
        self.map(|s| s.derivative(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(TruncatedSeries::is_zero)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn lowest_nonzero_degree(&self) -> Option<u32> {
        self.entries
            .iter()
            .flatten()
            .flat_map(|s| s.terms.keys().map(|e| total_degree(e)))
            .min()
    }

    /// Determinant by cofactor expansion (sizes here are tiny).
    pub fn determinant(&self) -> TruncatedSeries {
        fn det(rows: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
            let m = rows.len();
            if m == 1 {
                return rows[0][0].clone();
            }
            let mut acc: Option<TruncatedSeries> = None;
            for j in 0..m {
                let minor: Vec<Vec<TruncatedSeries>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, s)| s.clone()).collect())
                    .collect();
                let term = rows[0][j].mul(&det(&minor));
                let term = if j % 2 == 1 { term.neg() } else { term };
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            acc.expect("nonempty")
        }
        det(&self.entries)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|s| s.evaluate(point)).collect())
            .collect()
    }
}

/// `ω = Σ_i ω_i dt_i` with polynomial matrix components of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionForm {
    components: Vec<SeriesMatrix>,
}

impl ConnectionForm {
    pub fn new(components: Vec<SeriesMatrix>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::invalid("omega", "connection form needs at least one component"));
        };
        let (m, n) = (first.size(), components.len());
        for c in &components {
            if c.size() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: c.size(),
                });
            }
            if let Some(s) = c.entries.iter().flatten().find(|s| s.vars != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.vars,
                });
            }
        }
        Ok(Self { components })
    }

    pub fn vars(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components[0].size()
    }

    pub fn component(&self, i: usize) -> &SeriesMatrix {
        &self.components[i]
    }

    /// `(dω + ω∧ω)_{ij} = ∂_i ω_j − ∂_j ω_i + ω_i ω_j − ω_j ω_i` for `i < j`,
    /// modulo total degree `order`.
    pub fn curvature(&self, i: usize, j: usize, order: u32) -> SeriesMatrix {
        let cap = order.saturating_sub(1);
        let wi = self.components[i].truncate(order);
        let wj = self.components[j].truncate(order);
        let d = wj.derivative(i).sub(&wi.derivative(j));
        let wedge = wi.mul(&wj).sub(&wj.mul(&wi));
        let total = d.truncate(cap).add(&wedge.truncate(cap));
        if order == 0 {
            total.map(|s| TruncatedSeries::zero(s.vars, 0))
        } else {
            total
        }
    }

    /// First failing 2-form component `(i, j, lowest degree)`, 1-based indices.
    pub fn flatness_defect(&self, order: u32) -> Option<(usize, usize, u32)> {
        let n = self.vars();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.curvature(i, j, order);
                if let Some(deg) = c.lowest_nonzero_degree() {
                    return Some((i + 1, j + 1, deg));
                }
            }
        }
        None
    }
}

/// True iff `dω + ω∧ω ≡ 0` modulo total degree `order`.
pub fn is_flat(omega: &ConnectionForm, order: u32) -> bool {
    omega.flatness_defect(order).is_none()
}

/// The unique `T` modulo degree `order + 1` with `T(0) = I` and
/// `dT + ωT ≡ 0` modulo degree `order`.
pub fn parallel_transport(omega: &ConnectionForm, order: u32) -> Result<SeriesMatrix> {
    let n = omega.vars();
    if n >= 2 {
        if let Some((i, j, degree)) = omega.flatness_defect(order) {
            return Err(Error::NotFlat { i, j, degree });
        }
    }
    let m = omega.size();
    let components: Vec<SeriesMatrix> = omega.components.iter().map(|c| c.truncate(order)).collect();
    let mut t = SeriesMatrix::identity(m, n, order);
    for k in 1..=order {
        let mut step: Option<SeriesMatrix> = None;
        for (i, w) in components.iter().enumerate() {
            let term = w.mul(&t).homogeneous_part(k - 1).mul_var(i);
            step = Some(match step {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        let step = step.expect("at least one variable");
        let scale = -BigRational::new(BigInt::one(), BigInt::from(k));
        t = t.add(&step.scale(&scale));
    }
    Ok(t)
}

/// `∂_i T + ω_i T` for each `i`, modulo degree `order(T)`.
pub fn residual(omega: &ConnectionForm, t: &SeriesMatrix) -> Vec<SeriesMatrix> {
    let order = t.entries[0][0].order;
    let cap = order.saturating_sub(1);
    omega
        .components
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let r = t.derivative(i).truncate(cap).add(&w.mul(t).truncate(cap));
            if order == 0 {
                r.map(|s| TruncatedSeries::zero(s.vars, 0))
            } else {
                r
            }
        })
        .collect()
}

/// Substitutes a rational point into every entry.
pub fn evaluate(t: &SeriesMatrix, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>> {
    t.evaluate(point)
}
