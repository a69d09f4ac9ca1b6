//! Exact breather and double-pole solutions of the focusing mKdV equation
//! `k_t + k_sss + 6k²k_s = 0` with `k → b ≠ 0` at infinity, together with an
//! independent Gelfand–Levitan reconstruction, PDE and invariant checks, and
//! a Fourier solver for the equivalent Gardner equation.

// Negated comparisons such as `!(x > 0.0)` are used on purpose: they also
// reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exact_solutions;
pub mod ism_oracle;
pub mod spectral_params;
pub mod spectral_solver;
pub mod verification;

pub use error::{Error, Result};
