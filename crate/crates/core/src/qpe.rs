//! Phase estimation over a walk operator: the explicit circuit and its
//! closed-form projection onto the all-zero ancilla.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{check_budget, hadamard_ancilla, inverse_qft_ancilla, PowerLadder, AMPLITUDE_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::norm_c;
use crate::walkspace::eigen::PlaneCoordinates;
use crate::walkspace::{UnitaryOp, WalkEigensystem, WalkOperator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QpeConfig {
    /// Ancilla qubits.
    pub tau: u32,
    /// Γ₁ = rπ√HT / (√2 ε).
    pub gamma1: f64,
    /// Largest explicit state, in amplitudes.
    pub budget: usize,
}

impl QpeConfig {
    /// τ = ⌈log₂ Γ₁⌉, at least 1.
    pub fn from_gamma(gamma1: f64) -> Result<QpeConfig> {
        if !(gamma1.is_finite() && gamma1 > 0.0) {
            return Err(Error::Precondition(format!("gamma1 must be positive, got {gamma1}")));
        }
        let tau = gamma1.log2().ceil().max(1.0);
        if tau > 62.0 {
            return Err(Error::AncillaTooLarge { required: usize::MAX, budget: AMPLITUDE_BUDGET });
        }
        Ok(QpeConfig { tau: tau as u32, gamma1, budget: AMPLITUDE_BUDGET })
    }

    /// Γ₁ for r steps at accuracy ε and hitting time `ht`.
    pub fn for_search(r: usize, epsilon: f64, ht: f64) -> Result<QpeConfig> {
        QpeConfig::from_gamma(gamma1(r, epsilon, ht))
    }

    pub fn with_tau(tau: u32) -> QpeConfig {
        QpeConfig { tau, gamma1: (1u64 << tau.min(62)) as f64, budget: AMPLITUDE_BUDGET }
    }

    pub fn ancilla_dim(&self) -> usize {
        1usize << self.tau
    }
}

pub fn gamma1(r: usize, epsilon: f64, ht: f64) -> f64 {
    r as f64 * std::f64::consts::PI * ht.sqrt() / (std::f64::consts::SQRT_2 * epsilon)
}

/// ⟨0^τ|ξ⟩ = (1/N) Σ_{l<N} e^{ilφ} for N = 2^τ.
pub fn delta(phi: f64, tau: u32) -> Complex64 {
    let big = (1u64 << tau) as f64;
    let half = phi / 2.0;
    let s = half.sin();
    if s.abs() < 1e-300 || (phi / std::f64::consts::TAU).fract() == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let mag = (big * half).sin() / (big * s);
    Complex64::from_polar(mag, (big - 1.0) * half)
}

/// π / (2^τ φ), the bound on |δ(φ)| for φ ∈ (0, π].
pub fn delta_bound(phi: f64, tau: u32) -> f64 {
    std::f64::consts::PI / ((1u64 << tau) as f64 * phi)
}

/// Explicit U_qee on an ancilla-major state of length 2^τ · dim: H^{⊗τ},
/// controlled U^{2^j}, inverse Fourier transform. Records 2^τ − 1 calls.
pub fn u_qee_explicit<U: UnitaryOp + ?Sized>(op: &U, config: &QpeConfig, state: &mut [Complex64]) -> Result<()> {
    let d = op.dim();
    check_budget(d, config.tau, config.budget)?;
    let expected = d << config.tau;
    if state.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: state.len() });
    }
    hadamard_ancilla(state, d, config.tau);
    let ladder = PowerLadder::new(op, config.tau, false);
    let calls = ladder.apply_controlled(config.tau, state);
    op.record_calls(calls);
    inverse_qft_ancilla(state, d, config.tau);
    Ok(())
}

/// ψ ⊗ |0^τ⟩ in ancilla-major order.
pub fn attach_zero_ancilla(psi: &[Complex64], tau: u32) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len() << tau];
    out[..psi.len()].copy_from_slice(psi);
    out
}

/// The ancilla-|0^τ⟩ slice.
pub fn zero_ancilla_slice(state: &[Complex64], d: usize) -> Vec<Complex64> {
    state[..d].to_vec()
}

#[derive(Debug, Clone)]
pub struct FilterOutput {
    pub state: Vec<Complex64>,
    /// √(‖in‖² − ‖out‖²): norm removed by the ancilla projection.
    pub discarded: f64,
}

/// Π_{0^τ} U_qee (ψ ⊗ |0^τ⟩) read back on the walk space, in closed form.
///
/// On each invariant plane the projected operator is (1/N) Σ_l W^l =
/// C·I + S·J with C + iS = δ(φ_k) and J the quarter turn a_k → b_k,
/// b_k → −a_k. Ψ_0 passes unchanged. On the complement of the planes
/// W = −V†SV, an involution with eigenvalues ±1, so the filter keeps
/// (I − V†SV)/2 of it.
pub fn u_qee_filter(es: &WalkEigensystem, op: &WalkOperator, tau: u32, psi: &[Complex64]) -> Result<FilterOutput> {
    if psi.len() != op.walk_dim() || es.n() != op.n() {
        return Err(Error::DimensionMismatch { expected: op.walk_dim(), found: psi.len() });
    }
    let coords = es.coordinates(psi);
    let mut alpha = coords.alpha.clone();
    let mut beta = coords.beta.clone();
    for k in 1..es.n() {
        let dk = delta(es.phi[k], tau);
        let (a, b) = (alpha[k], beta[k]);
        alpha[k] = a * dk.re - b * dk.im;
        beta[k] = a * dk.im + b * dk.re;
    }
    let mut rest = coords.rest;
    if norm_c(&rest) > 0.0 {
        let mut t = rest.clone();
        op.apply_t1(&mut t)?;
        for (r, t) in rest.iter_mut().zip(&t) {
            *r = (*r - t) * 0.5;
        }
    }
    let state = es.assemble(&PlaneCoordinates { alpha, beta, rest });
    let n_in = norm_c(psi);
    let n_out = norm_c(&state);
    let discarded = (n_in * n_in - n_out * n_out).max(0.0).sqrt();
    Ok(FilterOutput { state, discarded })
}
