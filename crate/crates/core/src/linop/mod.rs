//! Dense linear algebra over a [`Scalar`] backend, with tensor-factor bookkeeping.
//!
//! Basis states of a composite space are ordered row-major: the first site is
//! the slowest-varying index.

mod eigen;
mod kernel;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::scalar::{Scalar, ScalarError};

pub use eigen::{hermitian_eigen, spectral_apply, EigenDecomposition, MAX_SWEEPS};
pub use kernel::{kernel_by_elimination, null_space, NullSpace};

/// Tolerance used wherever none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinopError {
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: SpaceShape, right: SpaceShape },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("matrix is not Hermitian (‖M − M†‖_F = {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Per-site dimensions of a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceShape {
    dims: Vec<usize>,
}

impl SpaceShape {
    pub fn new(dims: Vec<usize>) -> Result<Self, LinopError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(LinopError::InvalidShape(format!("{dims:?}")));
        }
        Ok(Self { dims })
    }

    pub fn single(dim: usize) -> Self {
        Self::new(vec![dim]).expect("dimension must be positive")
    }

    /// `sites` copies of a `dim`-dimensional site.
    pub fn uniform(dim: usize, sites: usize) -> Self {
        Self::new(vec![dim; sites]).expect("dimension and site count must be positive")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn sites(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &SpaceShape) -> SpaceShape {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        SpaceShape { dims }
    }

    /// Splits a flat index into per-site indices.
    pub fn unflatten(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn flatten(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

impl fmt::Display for SpaceShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.dims)
    }
}

fn check_same(left: &SpaceShape, right: &SpaceShape) -> Result<(), LinopError> {
    if left == right {
        Ok(())
    } else {
        Err(LinopError::ShapeMismatch {
            left: left.clone(),
            right: right.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    shape: SpaceShape,
    entries: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(shape: SpaceShape, entries: Vec<S>) -> Result<Self, LinopError> {
        if entries.len() != shape.total() {
            return Err(LinopError::InvalidShape(format!(
                "{} entries for shape {shape}",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn zeros(shape: SpaceShape) -> Self {
        let entries = vec![S::zero(); shape.total()];
        Self { shape, entries }
    }

    pub fn basis(shape: SpaceShape, index: usize) -> Self {
        let mut v = Self::zeros(shape);
        v.entries[index] = S::one();
        v
    }

    pub fn from_i64(shape: SpaceShape, entries: &[i64]) -> Result<Self, LinopError> {
        Self::new(shape, entries.iter().map(|&x| S::from_i64(x)).collect())
    }

    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn reshape(self, shape: SpaceShape) -> Result<Self, LinopError> {
        Self::new(shape, self.entries)
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> S {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.inner(self)
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| x.to_complex().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, k: &S) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|x| k.clone() * x.clone()).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinopError> {
        check_same(&self.shape, &other.shape)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinopError> {
        check_same(&self.shape, &other.shape)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a.clone() * b.clone());
            }
        }
        Self {
            shape: self.shape.concat(&other.shape),
            entries,
        }
    }

    /// |self⟩⟨other|
    pub fn outer(&self, other: &Self) -> Matrix<S> {
        Matrix::from_fn(self.shape.clone(), |r, c| {
            self.entries[r].clone() * other.entries[c].conj()
        })
        .expect("outer product of equal-length vectors")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn to_float(&self) -> Vector<Complex64> {
        Vector {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|x| x.to_complex()).collect(),
        }
    }
}

/// Square matrix over a tensor-product space, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    shape: SpaceShape,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(shape: SpaceShape, entries: Vec<S>) -> Result<Self, LinopError> {
        let n = shape.total();
        if entries.len() != n * n {
            return Err(LinopError::InvalidShape(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn from_fn(shape: SpaceShape, mut f: impl FnMut(usize, usize) -> S) -> Result<Self, LinopError> {
        let n = shape.total();
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(shape, entries)
    }

    pub fn from_rows(shape: SpaceShape, rows: Vec<Vec<S>>) -> Result<Self, LinopError> {
        let n = shape.total();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(LinopError::InvalidShape(format!("expected {n} rows of length {n}")));
        }
        Self::new(shape, rows.into_iter().flatten().collect())
    }

    pub fn zeros(shape: SpaceShape) -> Self {
        let n = shape.total();
        Self {
            shape,
            entries: vec![S::zero(); n * n],
        }
    }

    pub fn identity(shape: SpaceShape) -> Self {
        Self::diagonal(shape.clone(), vec![S::one(); shape.total()]).expect("diagonal length matches")
    }

    pub fn diagonal(shape: SpaceShape, diag: Vec<S>) -> Result<Self, LinopError> {
        if diag.len() != shape.total() {
            return Err(LinopError::InvalidShape(format!(
                "{} diagonal entries for {shape}",
                diag.len()
            )));
        }
        let mut m = Self::zeros(shape);
        let n = diag.len();
        for (k, d) in diag.into_iter().enumerate() {
            m.entries[k * n + k] = d;
        }
        Ok(m)
    }

    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.total()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim() + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        let n = self.dim();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn column(&self, col: usize) -> Vector<S> {
        let n = self.dim();
        Vector {
            shape: self.shape.clone(),
            entries: (0..n).map(|r| self.get(r, col).clone()).collect(),
        }
    }

    pub fn reshape(self, shape: SpaceShape) -> Result<Self, LinopError> {
        Self::new(shape, self.entries)
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| k.clone() * x.clone())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        Self::from_fn(self.shape.clone(), |r, c| self.entries[c * n + r].conj()).expect("same shape")
    }

    pub fn trace(&self) -> S {
        (0..self.dim()).fold(S::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinopError> {
        check_same(&self.shape, &other.shape)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinopError> {
        check_same(&self.shape, &other.shape)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self, LinopError> {
        check_same(&self.shape, &other.shape)?;
        let n = self.dim();
        let mut out = vec![S::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out[i * n + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Self {
            shape: self.shape.clone(),
            entries: out,
        })
    }

    pub fn try_apply(&self, v: &Vector<S>) -> Result<Vector<S>, LinopError> {
        check_same(&self.shape, &v.shape)?;
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                self.row(i).iter().zip(&v.entries).fold(S::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                })
            })
            .collect();
        Ok(Vector {
            shape: v.shape.clone(),
            entries,
        })
    }

    /// Kronecker product; the result's shape is the concatenation of both shapes.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let shape = self.shape.concat(&other.shape);
        let entries = (0..n * m * n * m)
            .map(|k| {
                let (r, c) = (k / (n * m), k % (n * m));
                let a = &self.entries[(r / m) * n + c / m];
                let b = &other.entries[(r % m) * m + c % m];
                if a.is_zero() || b.is_zero() {
                    S::zero()
                } else {
                    a.clone() * b.clone()
                }
            })
            .collect();
        Self { shape, entries }
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &Self) -> Result<Self, LinopError> {
        self.try_matmul(other)?.try_sub(&other.try_matmul(self)?)
    }

    /// `ab + ba`
    pub fn anticommutator(&self, other: &Self) -> Result<Self, LinopError> {
        self.try_matmul(other)?.try_add(&other.try_matmul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| x.to_complex().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖self − other‖_F`, reported as exactly 0.0 whenever the difference is a
    /// literal zero matrix.
    pub fn distance(&self, other: &Self) -> Result<f64, LinopError> {
        let diff = self.try_sub(other)?;
        Ok(if diff.is_zero() { 0.0 } else { diff.frobenius_norm() })
    }

    pub fn hermiticity_gap(&self) -> f64 {
        self.distance(&self.adjoint()).expect("adjoint has the same shape")
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if S::EXACT {
            *self == self.adjoint()
        } else {
            self.hermiticity_gap() <= tol
        }
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        Matrix {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|x| x.to_complex()).collect(),
        }
    }

    /// Sum of a nonempty list of same-shape matrices.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Result<Self, LinopError> {
        let mut iter = terms.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| LinopError::InvalidShape("empty sum".into()))?
            .clone();
        iter.try_fold(first, |acc, m| acc.try_add(m))
    }
}

// Operator sugar for internal code where shapes agree by construction. These
// panic on mismatch; the `try_*` methods report it instead.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_matmul(rhs).expect("matrix shapes must agree")
    }
}

impl<S: Scalar> Mul<&Vector<S>> for &Matrix<S> {
    type Output = Vector<S>;
    fn mul(self, rhs: &Vector<S>) -> Vector<S> {
        self.try_apply(rhs).expect("matrix and vector shapes must agree")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_sub(rhs).expect("matrix shapes must agree")
    }
}

impl<S: Scalar> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        self.try_sub(rhs).expect("vector shapes must agree")
    }
}
