//! Exact signed tropical convexity.
//!
//! Arithmetic over the symmetrized max-plus semiring, Fourier-Motzkin
//! elimination with Farkas certificates, hull membership, halfspace
//! descriptions and two independent oracles (Puiseux lifts and hyperfield
//! evaluation).

pub mod convexity;
pub mod elimination;
pub mod error;
pub mod hyperfield;
pub mod linalg;
pub mod puiseux;
pub mod semiring;

pub use error::{Error, Result};
pub use linalg::{SignPartition, SymMatrix};
pub use semiring::{Cmp, Interval, Sign, SymNum};
