//! Casimir-Polder free energy and entropy of an atom above a graphene sheet.
//!
//! The sheet is described by the Dirac-model polarization tensor at
//! imaginary frequencies; the atom by its static polarizability and magnetic
//! susceptibility. Full numerical evaluation of the Lifshitz sum is
//! cross-checked against closed-form low-temperature asymptotics.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod lifshitz;
pub mod numerics;
pub mod poltensor;
pub mod reflection;
pub mod units;
pub mod validation;

pub use error::{Error, Result};
