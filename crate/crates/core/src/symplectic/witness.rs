use super::field::Field;
use super::linalg::Row;
use super::space::{Subspace, SymplecticSpace};
use super::enumerate::isotropic_subspaces;
use crate::error::{Error, Result};

/// Four Lagrangians `Φ₁ = ⟨e_α⟩`, `Φ₂ = ⟨f_α⟩`, and the graphs `Φ₃`, `Φ₄` of
/// `e_α ↦ f_α` and `e_α ↦ λ_α f_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTuple<E> {
    pub lagrangians: [Subspace<E>; 4],
    pub eigenvalues: Vec<E>,
}

/// `1, 2, …, d` as field elements; fails when the field has fewer than `d`
/// nonzero elements.
pub fn default_eigenvalues<F: Field>(field: &F, d: usize) -> Result<Vec<F::Elem>> {
    if let Some(q) = field.order() {
        if q <= d as u64 {
            return Err(Error::BadEigenvalues(format!(
                "a field with {q} elements has only {} nonzero elements, {d} distinct needed",
                q - 1
            )));
        }
    }
    Ok((1..=d as i64).map(|i| field.from_i64(i)).collect())
}

pub fn build_witness<F: Field>(space: &SymplecticSpace<F>, lambdas: &[F::Elem]) -> Result<WitnessTuple<F::Elem>> {
    let field = space.field();
    let d = space.half_dim();
    if lambdas.len() != d {
        return Err(Error::BadEigenvalues(format!("expected {d} eigenvalues, got {}", lambdas.len())));
    }
    if let Some(i) = lambdas.iter().position(|l| field.is_zero(l)) {
        return Err(Error::BadEigenvalues(format!("eigenvalue #{i} is zero")));
    }
    for i in 0..d {
        if let Some(j) = (i + 1..d).find(|&j| lambdas[j] == lambdas[i]) {
            return Err(Error::BadEigenvalues(format!("eigenvalues #{i} and #{j} coincide")));
        }
    }
    let (es, fs) = space.symplectic_basis();
    let graph = |scales: &dyn Fn(usize) -> F::Elem| -> Vec<Row<F::Elem>> {
        es.iter()
            .zip(&fs)
            .enumerate()
            .map(|(a, (e, f))| {
                let s = scales(a);
                e.iter().zip(f).map(|(x, y)| field.add(x, &field.mul(&s, y))).collect()
            })
            .collect()
    };
    let phi3 = graph(&|_| field.one());
    let phi4 = graph(&|a| lambdas[a].clone());
    Ok(WitnessTuple {
        lagrangians: [
            space.span(es.clone())?,
            space.span(fs.clone())?,
            space.span(phi3)?,
            space.span(phi4)?,
        ],
        eigenvalues: lambdas.to_vec(),
    })
}

/// A nonzero isotropic `W` with `dim(Φ_j ∩ W) ≥ ½ dim W` for every `j`, if one
/// exists. Exhaustive over all isotropic subspaces.
pub fn find_large_intersection<F: Field>(
    space: &SymplecticSpace<F>,
    tuple: &WitnessTuple<F::Elem>,
) -> Result<Option<Subspace<F::Elem>>> {
    let field = space.field();
    for level in isotropic_subspaces(space)? {
        for w in level {
            let mut all = true;
            for phi in &tuple.lagrangians {
                if 2 * phi.intersection(field, &w)?.dim() < w.dim() {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// True iff no nonzero isotropic subspace meets all four Lagrangians of the
/// tuple in at least half its dimension.
pub fn sublemma_brute_check<F: Field>(space: &SymplecticSpace<F>, tuple: &WitnessTuple<F::Elem>) -> Result<bool> {
    Ok(find_large_intersection(space, tuple)?.is_none())
}
