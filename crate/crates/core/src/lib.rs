//! Verification toolkit for twinned spin-1 pairs.
//!
//! Two spin-1 systems are *twinned* when they give the same yes/no answer to
//! "is the spin component along `n` zero?" for every direction `n`. This crate
//! turns the argument that twinned spins must be in the rotationally invariant
//! singlet, and therefore cannot share their answers with any third system,
//! into executable checks over 9- and 27-dimensional spaces.
//!
//! Every construction is generic over a [`scalar::Scalar`] backend:
//! [`scalar::ExactScalar`] (the field ℚ(i, √2, √3), zero-tolerance) or
//! [`scalar::FloatComplex`].
//!
//! ```
//! use twinspin::scalar::ExactScalar;
//! use twinspin::theorem::{verify_strong_theorem, DirectionSet};
//!
//! let report = verify_strong_theorem::<ExactScalar>(&DirectionSet::certifying(), 0.0);
//! assert!(report.passed());
//! assert_eq!(report.kernel_dimension, 1);
//! ```

pub mod cli;
pub mod correlations;
pub mod linop;
pub mod report;
pub mod scalar;
pub mod spin;
pub mod theorem;
