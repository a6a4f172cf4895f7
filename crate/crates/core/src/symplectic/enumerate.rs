use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::field::Field;
use super::linalg::Row;
use super::space::{Subspace, SymplecticSpace};
use crate::error::{Error, Result};

/// Largest `|F|^{2d}` accepted by the brute-force enumerations.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

fn guard<F: Field>(space: &SymplecticSpace<F>) -> Result<u64> {
    let q = space.field().order().ok_or(Error::InfiniteField)?;
    let states = u128::from(q).saturating_pow(space.dim() as u32);
    if states > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            states,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(q)
}

/// All combinations `Σ c_i b_i` over a finite field, in a fixed order.
fn combinations<F: Field>(field: &F, q: u64, basis: &[Row<F::Elem>], ambient: usize) -> Vec<Row<F::Elem>> {
    let count = q.pow(basis.len() as u32);
    (0..count)
        .map(|mut idx| {
            let mut v = vec![field.zero(); ambient];
            for b in basis {
                let c = field.element(idx % q);
                idx /= q;
                if !field.is_zero(&c) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = field.add(vi, &field.mul(&c, bi));
                    }
                }
            }
            v
        })
        .collect()
}

/// Nonzero isotropic subspaces grouped by dimension: entry `k` holds those of
/// dimension `k + 1`, for `k < d`. Each level extends the previous one by a
/// vector of its symplectic orthogonal.
pub fn isotropic_subspaces<F: Field>(space: &SymplecticSpace<F>) -> Result<Vec<BTreeSet<Subspace<F::Elem>>>> {
    let q = guard(space)?;
    let field = space.field();
    let n = space.dim();
    let everything: Vec<Row<F::Elem>> = (0..n).map(|i| space.unit_vector(i)).collect();

    let mut lines = BTreeSet::new();
    for v in combinations(field, q, &everything, n) {
        if v.iter().any(|x| !field.is_zero(x)) {
            lines.insert(space.span(vec![v])?);
        }
    }
    let mut levels = vec![lines];
    for _ in 1..space.half_dim() {
        let mut next = BTreeSet::new();
        for u in levels.last().expect("nonempty") {
            let perp = space.orthogonal(u)?;
            for v in combinations(field, q, perp.basis(), n) {
                if u.contains(field, &v) {
                    continue;
                }
                let mut rows = u.basis().to_vec();
                rows.push(v);
                next.insert(space.span(rows)?);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Number of Lagrangian subspaces, by enumeration.
pub fn count_lagrangians<F: Field>(space: &SymplecticSpace<F>) -> Result<BigInt> {
    let levels = isotropic_subspaces(space)?;
    Ok(BigInt::from(levels.last().map_or(0, |l| l.len())))
}
