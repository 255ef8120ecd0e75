//! Exact rationals, rational matrices and the Smith normal form.

mod matrix;
mod rational;
mod snf;

pub use matrix::{clear_denominators, RationalMatrix};
pub use rational::{q, r, ParseRationalError, Rational};
pub use snf::{determinant, snf, SnfResult};
