//! Exact computation of topological-vertex open-string amplitudes, their
//! admissible bases and q-difference Kac–Schwarz operators.
//!
//! All arithmetic is over the rationals; `q` is realised as `u^8`.

pub mod amplitudes;
pub mod bases;
pub mod arith;
pub mod error;
pub mod fock;
pub mod geometry;
pub mod grassmann;
pub mod linalg;
pub mod opalg;
pub mod partition;
pub mod report;
pub mod rng;
pub mod schur;
pub mod series;
pub mod verify;

pub use arith::{QContext, Scalar};
pub use error::{Error, Result};
pub use partition::Partition;
