//! Braid-group representations, their Yang–Baxterized `Ř(x)` matrices, and
//! the two-qubit gate theory built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: small dense complex matrices (dims 2, 4 and the 8-dim
//!   triple tensor space), inverses, spectral projectors, Hermitian
//!   exponentials.
//! - [`catalog`]: the braid matrices `b` of the six- and eight-vertex
//!   families, their spectra, and braid-relation residuals.
//! - [`baxterize`]: the two- and three-eigenvalue Yang–Baxterization
//!   formulas, the closed-form `Ř(x)` families and spectral
//!   reparametrizations.
//! - [`verify`]: QYBE residuals (multiplicative, additive, rational),
//!   unitarity residuals and the normalization factors `ρ`.
//! - [`entangle`]: two-qubit states, the concurrence determinant and
//!   entangling-gate classification.
//! - [`dynamics`]: Hamiltonians extracted from unitary `Ř` curves, Pauli
//!   decompositions and time evolution.
//! - [`gates`]: one-qubit rotations, Bell bases and the CNOT synthesis
//!   routes.
//! - [`suite`]: the acceptance battery, also exposed by the CLI.

pub mod baxterize;
pub mod catalog;
pub mod cli;
pub mod dynamics;
pub mod entangle;
mod error;
pub mod gates;
pub mod linalg;
pub mod sampling;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{CMat, C64};
