//! Optimal asymmetric `1 -> N` universal cloning of qudits, implemented as
//! teleportation into a fixed resource state, and the singlet-fraction
//! monogamy relation that follows from it.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: registers, states, dense operators, Jacobi eigensolver,
//!   Haar sampling.
//! - [`cloner`]: the reduced `N x N` eigenproblem, the closed forms for the
//!   symmetric cloner, and the explicit resource state.
//! - [`oracle`]: the full `R` operator, built exactly and by Monte Carlo, and
//!   brute-force checks of the reduced solution.
//! - [`telemap`]: simulation of the teleportation protocol and the realized
//!   clone channels.
//! - [`monogamy`]: singlet monogamy, trade-off curves, concurrence, tangle and
//!   fully entangled fraction.
//! - [`heisenberg`]: ground-state and mean-field bounds for Heisenberg lattices.
//! - [`mc`]: seeded, partitioned Monte Carlo configuration.

pub mod cloner;
pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod monogamy;
pub mod oracle;
pub mod telemap;

pub mod mc;

pub use error::{Error, Result};
