//! Exact arithmetic toolkit for the quantitative side of the Lawrence–Venkatesh
//! method: Weil purity of Frobenius polynomials, symplectic witnesses over
//! finite fields, counts of small extensions of p-adic fields, surface-group
//! surjection counts, formal parallel transport, and the Kodaira–Parshin
//! parameter search.
//!
//! Every decision path runs on exact integers and rationals.

pub mod error;
pub mod exactnum;
pub mod formalode;
pub mod kpengine;
pub mod localfield;
pub mod symplectic;
pub mod trichotomy;
pub mod weilpurity;

pub use error::{Error, Result};
pub use exactnum::{ExactInt, ExactRational, IntPolynomial};
