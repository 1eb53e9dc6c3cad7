//! Invariant planes of W(s): B_k = span{|v_k⟩|0̄⟩, W|v_k⟩|0̄⟩}.

use num_complex::Complex64;

use super::operator::WalkOperator;
use crate::error::{Error, Result};
use crate::linalg::{inner_c, to_complex, SpectralData};

const UNIT_TOL: f64 = 1e-12;
const BREAKDOWN_TOL: f64 = 1e-8;

/// Real orthonormal pairs (a_k, b_k) with a_k = v_k ⊗ |0̄⟩ and
/// W a_k = cos φ_k a_k + sin φ_k b_k, W b_k = −sin φ_k a_k + cos φ_k b_k.
#[derive(Debug, Clone)]
pub struct WalkEigensystem {
    n: usize,
    pub lambda: Vec<f64>,
    /// φ_k = arccos λ_k; φ_0 = 0.
    pub phi: Vec<f64>,
    a: Vec<Vec<f64>>,
    /// b_k for k ≥ 1; index 0 is empty.
    b: Vec<Vec<f64>>,
}

/// Coordinates of a walk-space vector relative to the invariant planes.
#[derive(Debug, Clone)]
pub struct PlaneCoordinates {
    /// ⟨a_k|ψ⟩, k = 0..n.
    pub alpha: Vec<Complex64>,
    /// ⟨b_k|ψ⟩, k = 1..n (index 0 is zero).
    pub beta: Vec<Complex64>,
    /// The part of ψ orthogonal to every plane and to Ψ_0.
    pub rest: Vec<Complex64>,
}

impl WalkEigensystem {
    /// `spectrum` must be the spectrum of the discriminant of the chain
    /// `op` was built from.
    pub fn new(op: &WalkOperator, spectrum: &SpectralData) -> Result<WalkEigensystem> {
        let n = op.n();
        if spectrum.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: spectrum.len() });
        }
        let d = n * n;
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        let mut phi = Vec::with_capacity(n);
        for k in 0..n {
            let lambda = spectrum.values[k].clamp(-1.0, 1.0);
            let mut ak = vec![0.0; d];
            for x in 0..n {
                ak[x * n] = spectrum.vectors[(x, k)];
            }
            if k == 0 {
                phi.push(0.0);
                a.push(ak);
                b.push(Vec::new());
                continue;
            }
            if lambda > 1.0 - UNIT_TOL {
                return Err(Error::DegenerateEigenvalue { k, eigenvalue: lambda });
            }
            let mut wa = to_complex(&ak);
            op.apply_w_uncounted(&mut wa);
            let mut bk: Vec<f64> = wa.iter().zip(&ak).map(|(w, a)| w.re - lambda * a).collect();
            let norm = bk.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < BREAKDOWN_TOL {
                return Err(Error::NumericalBreakdown(format!(
                    "orthogonal component of W a_{k} has norm {norm:e}"
                )));
            }
            bk.iter_mut().for_each(|v| *v /= norm);
            phi.push(lambda.acos());
            a.push(ak);
            b.push(bk);
        }
        Ok(WalkEigensystem { n, lambda: spectrum.values.clone(), phi, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self, k: usize) -> &[f64] {
        &self.a[k]
    }

    pub fn b(&self, k: usize) -> &[f64] {
        &self.b[k]
    }

    /// Ψ_0 = v_0 ⊗ |0̄⟩, fixed by W.
    pub fn psi0(&self) -> Vec<Complex64> {
        to_complex(&self.a[0])
    }

    /// Ψ±_k = (a_k ∓ i b_k)/√2 with W Ψ±_k = e^{±iφ_k} Ψ±_k.
    pub fn psi(&self, k: usize, plus: bool) -> Vec<Complex64> {
        assert!(k >= 1, "Ψ± exists for k >= 1");
        let sign = if plus { -1.0 } else { 1.0 };
        let h = std::f64::consts::FRAC_1_SQRT_2;
        self.a[k]
            .iter()
            .zip(&self.b[k])
            .map(|(&a, &b)| Complex64::new(a * h, sign * b * h))
            .collect()
    }

    pub fn coordinates(&self, psi: &[Complex64]) -> PlaneCoordinates {
        let zero = Complex64::new(0.0, 0.0);
        let mut rest = psi.to_vec();
        let mut alpha = vec![zero; self.n];
        let mut beta = vec![zero; self.n];
        for k in 0..self.n {
            alpha[k] = real_inner(&self.a[k], psi);
            axpy(&mut rest, -alpha[k], &self.a[k]);
            if k >= 1 {
                beta[k] = real_inner(&self.b[k], psi);
                axpy(&mut rest, -beta[k], &self.b[k]);
            }
        }
        PlaneCoordinates { alpha, beta, rest }
    }

    /// Σ_k α_k a_k + β_k b_k + rest.
    pub fn assemble(&self, coords: &PlaneCoordinates) -> Vec<Complex64> {
        let mut out = coords.rest.clone();
        for k in 0..self.n {
            axpy(&mut out, coords.alpha[k], &self.a[k]);
            if k >= 1 {
                axpy(&mut out, coords.beta[k], &self.b[k]);
            }
        }
        out
    }
}

pub(crate) fn real_inner(basis: &[f64], psi: &[Complex64]) -> Complex64 {
    basis.iter().zip(psi).filter(|(b, _)| **b != 0.0).map(|(b, z)| z * b).sum()
}

pub(crate) fn axpy(out: &mut [Complex64], coef: Complex64, basis: &[f64]) {
    if coef == Complex64::new(0.0, 0.0) {
        return;
    }
    for (o, &b) in out.iter_mut().zip(basis) {
        if b != 0.0 {
            *o += coef * b;
        }
    }
}

/// Eigenvalue check ‖W Ψ − e^{iφ}Ψ‖ for one eigenvector.
pub fn eigen_residual(op: &WalkOperator, psi: &[Complex64], phase: f64) -> f64 {
    let mut w = psi.to_vec();
    op.apply_w_uncounted(&mut w);
    let e = Complex64::from_polar(1.0, phase);
    w.iter().zip(psi).map(|(x, y)| (x - e * y).norm_sqr()).sum::<f64>().sqrt()
}

/// |⟨ψ|W|ψ⟩| style expectation used in tests.
pub fn expectation(op: &WalkOperator, psi: &[Complex64]) -> Complex64 {
    let mut w = psi.to_vec();
    op.apply_w_uncounted(&mut w);
    inner_c(psi, &w)
}
