use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense Hermitian matrix, row-major. Off-diagonal entries are always
/// written in conjugate pairs so Hermiticity holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    /// Builds from a full row-major array, rejecting non-Hermitian input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * dim + j] = v;
            }
        }
        if !m.is_hermitian() {
            return Err(Error::InvalidParameter("matrix is not Hermitian".into()));
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set_diag(&mut self, i: usize, value: f64) {
        self.data[i * self.dim + i] = Complex64::new(value, 0.0);
    }

    /// Sets `(i, j)` to `value` and `(j, i)` to its conjugate.
    pub fn set_pair(&mut self, i: usize, j: usize, value: Complex64) {
        if i == j {
            self.set_diag(i, value.re);
        } else {
            self.data[i * self.dim + j] = value;
            self.data[j * self.dim + i] = value.conj();
        }
    }

    pub fn fill_zero(&mut self) {
        self.data.fill(ZERO);
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// `V^H M V` for an isometry `V` given as `rows x cols` row-major.
    pub fn compress(&self, v: &[Complex64], cols: usize) -> Result<Self> {
        if v.len() != self.dim * cols {
            return Err(Error::DimensionMismatch {
                expected: self.dim * cols,
                got: v.len(),
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(cols);
        for a in 0..cols {
            for b in a..cols {
                let mut acc = ZERO;
                for i in 0..n {
                    let vi = v[i * cols + a].conj();
                    if vi == ZERO {
                        continue;
                    }
                    for j in 0..n {
                        acc += vi * self.get(i, j) * v[j * cols + b];
                    }
                }
                out.set_pair(a, b, acc);
            }
        }
        Ok(out)
    }
}
