//! Skew-polynomial codes over finite commutative Frobenius rings.
//!
//! The crate builds rings from structure constants, enumerates ring
//! endomorphisms and derivations, provides arithmetic in the skew
//! polynomial ring `A[X; theta, delta]`, and constructs and searches
//! cyclic module codes together with their duals.

pub mod cli;
pub mod code;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod maps;
pub mod ring;
pub mod search;
pub mod skew;
pub mod symbolic;

pub use error::{Error, Result};
