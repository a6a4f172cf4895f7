//! Symplectic linear algebra over prime fields and the rationals: isotropic and
//! Lagrangian subspaces, the four-Lagrangian witness tuple, and exhaustive
//! verification over small finite fields that no nonzero isotropic subspace
//! meets all four Lagrangians in at least half its dimension.

mod enumerate;
mod field;
mod linalg;
mod space;
mod witness;

pub use enumerate::{count_lagrangians, isotropic_subspaces, ENUMERATION_LIMIT};
pub use field::{Field, PrimeField, Rationals};
pub use space::{intersection_dim, Subspace, SymplecticSpace};
pub use witness::{
    build_witness, default_eigenvalues, find_large_intersection, sublemma_brute_check,
    WitnessTuple,
};
