//! Bound states and wave-packet dynamics of the one-dimensional
//! Gross-Pitaevskii equation in a Morse trap.
//!
//! The crate is organized around four solver layers:
//!
//! * [`model`] - the Morse potential, the physical-to-dimensionless
//!   parameter map and the Gaussian-packet expectation identities shared
//!   by everything else.
//! * [`variational`] - the nodeless trial family `u(y) = sqrt(N) y^alpha
//!   exp(-K y)`, its energy minimization, and the critical coupling where
//!   the bound state disappears.
//! * [`dynamics`] - the coupled center/width ODEs for a Gaussian packet,
//!   trapped/escaped classification and threshold-momentum searches.
//! * [`oracle`] - an independent split-step spectral solver for the full
//!   grid GPE, used to cross-validate the reduced descriptions.
//!
//! All public operations work in dimensionless units; [`model::scale_params`]
//! is the single entry point for unit-carrying data.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod special;
pub mod variational;

pub(crate) mod util;

pub use error::{Error, Result};
