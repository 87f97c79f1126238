use num_complex::Complex64;

use super::{hermitian_eigen, Matrix, Vector};
use crate::scalar::{ExactScalar, Scalar};

/// Backend-specific kernel extraction.
///
/// The exact backend eliminates over the field and returns an unnormalized
/// basis; the float backend diagonalizes `M†M` and returns orthonormal vectors
/// with `‖Mv‖ ≤ tol·‖M‖_F`.
pub trait NullSpace: Scalar {
    fn null_space(m: &Matrix<Self>, tol: f64) -> Vec<Vector<Self>>;

    /// Basis of the intersection of the kernels of all `ms` (same shape, nonempty).
    fn joint_null_space(ms: &[Matrix<Self>], tol: f64) -> Vec<Vector<Self>>;
}

pub fn null_space<S: NullSpace>(m: &Matrix<S>, tol: f64) -> Vec<Vector<S>> {
    S::null_space(m, tol)
}

/// Gauss–Jordan elimination over the scalar field; returns one kernel vector
/// per free column, with that column's entry set to 1.
///
/// Pivots are entries that are not negligible at `tol` (exact backends only
/// accept literal nonzeros).
pub fn kernel_by_elimination<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize, tol: f64) -> Vec<Vec<S>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let candidate = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_negligible(tol))
            .max_by(|&a, &b| {
                rows[a][col]
                    .to_complex()
                    .norm()
                    .total_cmp(&rows[b][col].to_complex().norm())
            });
        let Some(pivot_row) = candidate else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].try_inv().expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = inv.clone() * x.clone();
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }

    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][free].clone();
            }
            v
        })
        .collect()
}

impl NullSpace for ExactScalar {
    fn null_space(m: &Matrix<Self>, tol: f64) -> Vec<Vector<Self>> {
        Self::joint_null_space(std::slice::from_ref(m), tol)
    }

    fn joint_null_space(ms: &[Matrix<Self>], tol: f64) -> Vec<Vector<Self>> {
        let shape = ms[0].shape().clone();
        let n = shape.total();
        let rows: Vec<Vec<Self>> = ms.iter().flat_map(|m| (0..n).map(|r| m.row(r).to_vec())).collect();
        kernel_by_elimination(rows, n, tol)
            .into_iter()
            .map(|v| Vector::new(shape.clone(), v).expect("kernel vector has full length"))
            .collect()
    }
}

impl NullSpace for Complex64 {
    fn null_space(m: &Matrix<Self>, tol: f64) -> Vec<Vector<Self>> {
        let gram = &m.adjoint() * m;
        let Ok(eig) = hermitian_eigen(&gram, tol) else {
            return Vec::new();
        };
        let bound = tol * m.frobenius_norm();
        (0..m.dim())
            .map(|k| eig.eigenvector(k))
            .take_while(|v| (m * v).norm() <= bound)
            .collect()
    }

    fn joint_null_space(ms: &[Matrix<Self>], tol: f64) -> Vec<Vector<Self>> {
        let grams: Vec<Matrix<Self>> = ms.iter().map(|m| &m.adjoint() * m).collect();
        let total = Matrix::sum(&grams).expect("nonempty list of same-shape operators");
        Self::null_space(&total, tol)
    }
}
