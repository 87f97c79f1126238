use num_complex::Complex64;

use super::{LinopError, Matrix, Vector};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order; column `k` of `eigenvectors` belongs to `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix<Complex64>,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vector<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `‖VΛV† − M‖_F`
    pub fn reconstruction_residual(&self, m: &Matrix<Complex64>) -> f64 {
        let lambda = Matrix::diagonal(
            self.eigenvectors.shape().clone(),
            self.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
        .expect("one eigenvalue per column");
        let rebuilt = &(&self.eigenvectors * &lambda) * &self.eigenvectors.adjoint();
        (&rebuilt - m).frobenius_norm()
    }

    /// `‖V†V − I‖_F`
    pub fn orthonormality_residual(&self) -> f64 {
        let gram = &self.eigenvectors.adjoint() * &self.eigenvectors;
        (&gram - &Matrix::identity(gram.shape().clone())).frobenius_norm()
    }

    /// Groups eigenvalues closer than `tol` to the running cluster mean.
    pub fn multiplicities(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for &x in &self.eigenvalues {
            match groups.last_mut() {
                Some((mean, count)) if (x - *mean).abs() <= tol => {
                    *mean = (*mean * *count as f64 + x) / (*count as f64 + 1.0);
                    *count += 1;
                }
                _ => groups.push((x, 1)),
            }
        }
        groups
    }
}

fn off_diagonal_mass(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[p * n + q].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal unitary,
/// then applies a real Givens rotation that zeroes the now-real entry.
pub fn hermitian_eigen(m: &Matrix<Complex64>, tol: f64) -> Result<EigenDecomposition, LinopError> {
    let gap = m.hermiticity_gap();
    if gap > 0.0 && gap >= tol {
        return Err(LinopError::NotHermitian(gap));
    }
    let n = m.dim();
    let half = Complex64::new(0.5, 0.0);
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|k| {
            let (r, c) = (k / n, k % n);
            (m.entries()[r * n + c] + m.entries()[c * n + r].conj()) * half
        })
        .collect();
    let mut v: Vec<Complex64> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();

    let scale = m.frobenius_norm();
    let target = (1e-3 * f64::EPSILON * scale).min(tol);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_mass(&a, n);
        if off == 0.0 || off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                if r <= 1e-18 * (app.abs() + aqq.abs()) || r < 1e-290 {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G restricted to the (p, q) plane.
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                for k in 0..n {
                    let (x, y) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = x * g_pp + y * g_qp;
                    a[k * n + q] = x * g_pq + y * g_qq;
                }
                for k in 0..n {
                    let (x, y) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = g_pp.conj() * x + g_qp.conj() * y;
                    a[q * n + k] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let (x, y) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = x * g_pp + y * g_qp;
                    v[k * n + q] = x * g_pq + y * g_qq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_mass(&a, n);
        if off > tol {
            return Err(LinopError::NoConvergence(MAX_SWEEPS));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&k| a[k * n + k].re).collect();
    let eigenvectors = Matrix::from_fn(m.shape().clone(), |r, c| v[r * n + order[c]])?;
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `V f(Λ) V†` for a Hermitian `m`.
pub fn spectral_apply(
    m: &Matrix<Complex64>,
    f: impl Fn(f64) -> Complex64,
    tol: f64,
) -> Result<Matrix<Complex64>, LinopError> {
    let eig = hermitian_eigen(m, tol)?;
    let fl = Matrix::diagonal(m.shape().clone(), eig.eigenvalues.iter().map(|&x| f(x)).collect())?;
    Ok(&(&eig.eigenvectors * &fl) * &eig.eigenvectors.adjoint())
}
