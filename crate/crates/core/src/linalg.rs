//! Small dense kernels: complex Gaussian elimination for the Cayley step
//! and cyclic Jacobi for Hermitian eigenproblems.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// Solves `a x = b` in place (`b` becomes `x`). `a` is `n x n` row-major
/// and is overwritten by its elimination.
pub fn solve_in_place(a: &mut [Complex64], n: usize, b: &mut [Complex64]) -> Result<()> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col * n + col].norm_sqr();
        for row in col + 1..n {
            let mag = a[row * n + col].norm_sqr();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return Err(Error::SingularSolve);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let inv = a[col * n + col].inv();
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for k in col + 1..n {
                let upper = a[col * n + k];
                a[row * n + k] -= factor * upper;
            }
            let bc = b[col];
            b[row] -= factor * bc;
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * b[k];
        }
        b[row] = acc / a[row * n + row];
    }
    Ok(())
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the normalized eigenvector of `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalization.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Eigen {
    let n = h.dim();
    let mut a: Vec<Complex64> = h.as_slice().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let scale = h.norm();
    let threshold = (f64::EPSILON * scale).powi(2);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum();
        if off <= threshold {
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
                let phase = apq / r; // e^{i phi}
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q)
                let up_q = -s * phase.conj();
                let uq_q = c * phase.conj();
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * up_q;
                    a[k * n + q] = akp * s + akq * uq_q;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * up_q;
                    v[k * n + q] = vkp * s + vkq * uq_q;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * up_q.conj();
                    a[q * n + k] = apk * s + aqk * uq_q.conj();
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    Eigen {
        values: order.iter().map(|&k| a[k * n + k].re).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
            .collect(),
    }
}
