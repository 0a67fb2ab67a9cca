//! Dense-matrix quantum toolkit for compound-system nonseparability and
//! measurement contexts.
//!
//! The crate is `no_std` and needs only `alloc`. Everything here is a pure
//! function over immutable values:
//!
//! - [`matrix`]: complex matrices, Kronecker products, partial traces.
//! - [`spectral`]: Hermitian diagonalization (cyclic Jacobi), spectral
//!   projectors and unitary evolution.
//! - [`state`] and [`entanglement`]: pure and mixed states, Schmidt analysis,
//!   reduced states, total spin and interaction-driven entanglement.
//! - [`context`]: observables, non-selective Lüders conditionalization and
//!   context-relative statistics.
//! - [`correlations`]: EPR-Bohm joint probabilities, CHSH, no-signalling and
//!   outcome dependence.
//! - [`contextuality`]: Mermin-Peres and GHZ value-assignment contradictions.
//! - [`mub`]: mutually unbiased bases and linear-inversion tomography.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod context;
pub mod contextuality;
pub mod correlations;
pub mod entanglement;
mod error;
pub mod matrix;
pub mod mub;
pub mod random;
pub mod spectral;
pub mod state;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use spectral::SpectralDecomposition;
pub use state::{DensityOperator, PureState};
