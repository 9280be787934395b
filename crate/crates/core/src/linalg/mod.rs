//! Prime-field arithmetic, exact rank, and seeded point sampling.
//!
//! Rank over any prime specialization is a lower bound for the rank over
//! the rationals, so a maximal rank found mod `p` certifies maximal generic
//! rank in characteristic zero.

mod field;
mod matrix;
mod sample;

pub use field::{PrimeField, DEFAULT_PRIME, DEFAULT_PRIMES};
pub use matrix::DenseMatrix;
pub use sample::{mix64, sample_points, SampledPoint, SampledPoints};
