//! Dense symmetric eigendecomposition with deterministic ordering and signs.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Eigen-decomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted non-increasing; eigenvector `k` is column `k` of
/// `vectors`, with its first component of magnitude above `1e-12` made
/// positive.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl SpectralData {
    pub fn of_symmetric(m: &DMatrix<f64>) -> SpectralData {
        assert!(m.is_square(), "spectral data of a non-square matrix");
        let n = m.nrows();
        if n == 0 {
            return SpectralData { values: vec![], vectors: DMatrix::zeros(0, 0) };
        }
        // symmetrize exactly so round-off asymmetry cannot leak into the solver
        let sym = (m + m.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col = eig.eigenvectors.column(src).into_owned();
            if let Some(first) = col.iter().find(|v| v.abs() > 1e-12) {
                if *first < 0.0 {
                    col.neg_mut();
                }
            }
            vectors.set_column(dst, &col);
        }
        SpectralData { values, vectors }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }

    /// Δ = 1 − λ₁. Zero for a 1×1 matrix.
    pub fn gap(&self) -> f64 {
        match self.values.get(1) {
            Some(l1) => 1.0 - l1,
            None => 0.0,
        }
    }

    /// Σ_k λ_k v_k v_kᵀ.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(&DVector::from_vec(self.values.clone()));
        &self.vectors * d * self.vectors.transpose()
    }
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn norm_c(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm_r(v: &[f64]) -> f64 {
    v.iter().map(|z| z * z).sum::<f64>().sqrt()
}

pub fn dot_r(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// ⟨a|b⟩ with conjugation on the left.
pub fn inner_c(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn diff_norm_c(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}
