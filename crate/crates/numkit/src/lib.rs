//! Dense matrices, activations, reverse-mode gradient plumbing, and the
//! Adadelta optimizer used by the translation model.
//!
//! Everything here is deterministic: the RNG is a counter-based stream
//! cipher seeded explicitly, matrix kernels are sequential, and the
//! binary container round-trips parameters bit-exactly.

pub mod container;
mod error;
pub mod gradcheck;
pub mod matrix;
pub mod param;
pub mod rng;

pub use container::{Container, Precision};
pub use error::{Error, Result};
pub use gradcheck::finite_diff_check;
pub use matrix::{add_outer, dot, vecmat, vecmat_t, Activation, Matrix};
pub use param::{adadelta_step, GradBuffer, Param, ParamId, ParamSet};
pub use rng::Rng;

/// Scalar type for all numeric work. 64-bit by default; the `f32` feature
/// switches the whole workspace to 32-bit for training throughput.
#[cfg(feature = "f32")]
pub type Real = f32;
#[cfg(not(feature = "f32"))]
pub type Real = f64;
