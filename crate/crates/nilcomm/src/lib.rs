//! Exact-arithmetic toolkit for the generic Jordan type of nilpotent
//! matrices commuting with a fixed nilpotent matrix.
//!
//! Everything is computed over a prime field `F_p` with a configurable
//! 31-bit prime, sampled deterministically from a seed. Modules:
//!
//! - [`partition`]: partition combinatorics (dominance, conjugation,
//!   almost rectangular decompositions, the maximal-index formula, the
//!   two-part closed form, Hilbert-function shapes);
//! - [`field`] / [`matrix`]: exact linear algebra over `F_p`;
//! - [`commutator`]: centralizer parameterization, generic nilpotent
//!   sampling, the explicit cyclic/cocyclic witness matrix;
//! - [`algebra`]: the unital algebra generated by a commuting pair, its
//!   Hilbert function, socle and Gorenstein tests;
//! - [`dmap`]: estimation of the generic commuting Jordan type, sweeps
//!   verifying its shape, idempotency and closed form;
//! - [`cli`]: the `nilcomm` command-line surface.

pub mod algebra;
pub mod cli;
pub mod commutator;
pub mod dmap;
pub mod error;
pub mod field;
pub mod matrix;
pub mod partition;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use matrix::ExactMatrix;
pub use partition::{partitions_of, Dominance, HilbertFunction, Partition};
