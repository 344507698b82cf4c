//! Steinitz numbers, saturated sets of Steinitz numbers, and the spectra of
//! countable-dimensional locally matrix algebras.
//!
//! Everything is exact: exponents and ratios are arbitrary precision, and
//! irrational densities are quadratic surds compared by integer arithmetic.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod arith;
pub mod axioms;
pub mod chain;
pub mod density;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod sample;
pub mod saturated;
pub mod steinitz;
pub mod text;

pub use algebra::{embeds_as_approximative_corner, isomorphic, AlgebraDescriptor, IdempotentSpec};
pub use chain::{interleave, match_corner, realize, spectrum_of_chain, ChainPresentation, ChainStage};
pub use density::{DensityBound, QuadraticSurd};
pub use error::{Error, ParseError, Result};
pub use rational::PositiveRational;
pub use report::{CheckLine, Report};
pub use saturated::{union_chain, Inclusion, RSub, SaturatedSet, TailRule};
pub use steinitz::{Exponent, Steinitz};
