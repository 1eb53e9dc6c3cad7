use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::norm_c;

/// Ordered tensor factors; the first register is the most significant in
/// the flat index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    dims: Vec<usize>,
    names: Vec<String>,
}

impl RegisterLayout {
    pub fn new(registers: &[(&str, usize)]) -> RegisterLayout {
        assert!(registers.iter().all(|(_, d)| *d > 0), "register dimensions must be positive");
        RegisterLayout {
            dims: registers.iter().map(|(_, d)| *d).collect(),
            names: registers.iter().map(|(s, _)| s.to_string()).collect(),
        }
    }

    /// R1 ⊗ R2: system and coin.
    pub fn walk(n: usize) -> RegisterLayout {
        RegisterLayout::new(&[("R1", n), ("R2", n)])
    }

    /// R3 ⊗ R1 ⊗ R2: a τ-qubit ancilla ahead of the walk space, so every
    /// ancilla value owns one contiguous walk-space slice.
    pub fn with_ancilla(n: usize, tau: u32) -> RegisterLayout {
        RegisterLayout::new(&[("R3", 1 << tau), ("R1", n), ("R2", n)])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn flatten(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.dims.len(), "digit count does not match the layout");
        digits.iter().zip(&self.dims).fold(0, |acc, (&d, &dim)| {
            assert!(d < dim, "digit {d} out of range for dimension {dim}");
            acc * dim + d
        })
    }

    pub fn unflatten(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, &dim) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = index % dim;
            index /= dim;
        }
        digits
    }
}

/// A complex amplitude vector over a register layout.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub layout: RegisterLayout,
    pub amplitudes: Vec<Complex64>,
}

impl WalkState {
    pub fn zeros(layout: RegisterLayout) -> WalkState {
        let amplitudes = vec![Complex64::new(0.0, 0.0); layout.total()];
        WalkState { layout, amplitudes }
    }

    pub fn basis(layout: RegisterLayout, digits: &[usize]) -> WalkState {
        let mut state = WalkState::zeros(layout);
        let i = state.layout.flatten(digits);
        state.amplitudes[i] = Complex64::new(1.0, 0.0);
        state
    }

    /// |v⟩|0̄⟩ on the walk space of `v.len()` vertices.
    pub fn from_system(v: &[f64]) -> WalkState {
        let n = v.len();
        let mut state = WalkState::zeros(RegisterLayout::walk(n));
        for (x, &a) in v.iter().enumerate() {
            state.amplitudes[x * n] = Complex64::new(a, 0.0);
        }
        state
    }

    pub fn from_amplitudes(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<WalkState> {
        if amplitudes.len() != layout.total() {
            return Err(Error::DimensionMismatch { expected: layout.total(), found: amplitudes.len() });
        }
        Ok(WalkState { layout, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        norm_c(&self.amplitudes)
    }
}

/// |v⟩|0̄⟩ as a flat walk-space vector.
pub fn embed_system(v: &[f64]) -> Vec<Complex64> {
    WalkState::from_system(v).amplitudes
}
