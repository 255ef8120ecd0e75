//! Exact classical simulation of normalizer circuits over elementary abelian
//! groups `Z^a × T^b × Z_N1 × ... × Z_Nc`.
//!
//! A circuit starts from a standard basis state, applies automorphism gates,
//! quadratic phase gates and partial Fourier transforms, and is measured in
//! the standard basis. The state is tracked as a stabilizer description
//! `(Λ, M, v)`; the measurement support is an affine image `x0 + im E_H`,
//! which [`sampler`] samples on a finite net.

pub mod cli;
mod error;
pub mod exactalg;
pub mod groups;
pub mod homs;
pub mod linsolve;
pub mod oracle;
pub mod quadratic;
pub mod random;
pub mod sampler;
pub mod stabilizer;
pub mod support;

pub use error::{Error, Result, Side};
