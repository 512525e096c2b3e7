//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms, sublattices, saturation and quotient invariants.
//!
//! Everything here works over arbitrary-precision integers; no floating
//! point is used anywhere in the crate.

mod hnf;
mod lattice;
mod matrix;
pub mod rational;
mod snf;

pub use hnf::hermite_rows;
pub use lattice::{fixed_sublattice, is_direct_summand, quotient_invariants, QuotientInvariants, Sublattice};
pub use matrix::{dot, gcd_of, int_vec, is_primitive, primitive, IntMatrix};
pub use rational::{Rat, RatVec};
pub use snf::{integer_kernel, smith_normal_form, SmithDecomposition};
