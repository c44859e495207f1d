//! Exact computations on two-generator numerical semigroups `<a, b>`.
//!
//! The crate has a finite engine ([`semigroup`]), a bounded first-order
//! evaluator with an axiom catalog ([`fo`]), solvers for residue/window
//! systems ([`systems`]), the ratio invariants with a sweep harness
//! ([`invariants`]), a symbolic model of the limit semigroup for rational
//! invariants ([`limit`]), and a harness comparing that model with large
//! finite semigroups ([`transfer`]).

pub mod arith;
pub mod error;
pub mod fo;
pub mod invariants;
pub mod limit;
pub mod semigroup;
pub mod systems;
pub mod transfer;

pub use error::{Error, Result};
pub use semigroup::{BetaK, Decomposition, Elem, TwoGenSemigroup};
