//! Exact and numerical tools for finite-dimensional braid group
//! representations: cyclotomic arithmetic, braid normal forms, concrete
//! representation families, spectral subspace sequences, projective lifting,
//! finite image enumeration and fusion ring growth.

pub mod braid;
pub mod cyclotomic;
pub mod error;
pub mod fusion;
pub mod image;
pub mod matrix;
pub mod projective;
pub mod rep;
pub mod spectral;
pub mod subspace;

pub use error::{Error, Result};
