//! Exact decision procedures for the square-integrability of linear quotient
//! stacks `[V/G]` over a non-archimedean local field with residue size `q`.
//!
//! The criterion implemented here reduces the analytic question to the sign of
//! a piecewise-linear concave function `E` on the dominant coweight cone:
//! the stack is square-integrable exactly when `E` is negative away from the
//! origin, and that sign is decided by exact rational linear programming.
//! Supporting modules provide the root-system bookkeeping, weight multisets,
//! numerical partial sums of the underlying series, and Cartan-cell volume
//! formulas used to cross-validate the decision.
//!
//! The crate is `no_std` (it allocates, but performs no IO); the companion
//! CLI crate wires these pieces to a command line.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod decide;
pub mod exponent;
mod linalg;
pub mod ratlp;
pub mod reps;
pub mod rootdata;
pub mod series;
pub mod weylvol;

/// Arbitrary-precision rational scalar used throughout the exact layers.
pub type Rat = num_rational::BigRational;

pub use num_bigint::BigInt;
