//! Scalar backends.
//!
//! Everything above this module is generic over [`Scalar`]. Two backends are
//! provided: [`ExactScalar`], an element of the number field ℚ(i, √2, √3) with
//! zero-tolerance equality, and [`FloatComplex`], a plain `Complex64`.

mod exact;
mod parse;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub use exact::{ExactScalar, GaussianRational, Rational};
pub use parse::parse_exact;

/// Floating complex backend.
pub type FloatComplex = Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("non-finite float value {0}")]
    NonFinite(f64),
}

/// Field operations shared by the exact and floating backends.
///
/// Exact backends ignore tolerances: [`Scalar::is_negligible`] only accepts a
/// literal zero.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;
    /// Square root of a nonnegative integer, when the backend can represent it.
    fn sqrt_int(n: u64) -> Option<Self>;

    fn conj(&self) -> Self;
    fn try_inv(&self) -> Result<Self, ScalarError>;
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    /// Literal zero for exact backends, `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_complex().norm() <= tol
        }
    }

    /// True when the imaginary part vanishes (exactly, or within `tol` for floats).
    fn is_real(&self, tol: f64) -> bool {
        (self.clone() - self.conj()).is_negligible(2.0 * tol)
    }

    fn re(&self) -> f64 {
        self.to_complex().re
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn sqrt_int(n: u64) -> Option<Self> {
        Some(Complex64::new((n as f64).sqrt(), 0.0))
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if *self == Complex64::new(0.0, 0.0) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.inv())
        }
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Rejects NaN and infinite components.
pub fn finite_complex(re: f64, im: f64) -> Result<FloatComplex, ScalarError> {
    for v in [re, im] {
        if !v.is_finite() {
            return Err(ScalarError::NonFinite(v));
        }
    }
    Ok(Complex64::new(re, im))
}
