//! Ancilla-controlled building blocks shared by phase estimation and fast
//! forwarding. States are ancilla-major: index `m * d + w` for ancilla value
//! m and operator index w.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::walkspace::UnitaryOp;

/// Default cap on the number of amplitudes of an explicit circuit state.
pub const AMPLITUDE_BUDGET: usize = 1 << 27;

/// Operators up to this dimension get their 2^j-th powers materialized.
const MATERIALIZE_MAX_DIM: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn check_budget(d: usize, tau: u32, budget: usize) -> Result<()> {
    let required = d.checked_shl(tau).filter(|v| v >> tau == d).unwrap_or(usize::MAX);
    if tau >= usize::BITS || required > budget {
        return Err(Error::AncillaTooLarge { required, budget });
    }
    Ok(())
}

/// U^{2^j} (or its adjoint) for j = 0..τ.
pub(crate) struct PowerLadder<'a, U: UnitaryOp + ?Sized> {
    op: &'a U,
    adjoint: bool,
    powers: Vec<DMatrix<Complex64>>,
}

impl<'a, U: UnitaryOp + ?Sized> PowerLadder<'a, U> {
    pub(crate) fn new(op: &'a U, tau: u32, adjoint: bool) -> PowerLadder<'a, U> {
        let d = op.dim();
        let mut powers = Vec::new();
        if d <= MATERIALIZE_MAX_DIM && tau > 0 {
            let mut base = DMatrix::from_element(d, d, ZERO);
            let mut col = vec![ZERO; d];
            for j in 0..d {
                col.iter_mut().for_each(|z| *z = ZERO);
                col[j] = Complex64::new(1.0, 0.0);
                if adjoint {
                    op.apply_adjoint(&mut col);
                } else {
                    op.apply(&mut col);
                }
                base.set_column(j, &nalgebra::DVector::from_column_slice(&col));
            }
            powers.push(base);
            for j in 1..tau as usize {
                let sq = &powers[j - 1] * &powers[j - 1];
                powers.push(sq);
            }
        }
        PowerLadder { op, adjoint, powers }
    }

    fn apply_power(&self, j: usize, v: &mut [Complex64]) {
        if let Some(m) = self.powers.get(j) {
            let d = v.len();
            let mut out = vec![ZERO; d];
            for (c, &z) in v.iter().enumerate() {
                if z == ZERO {
                    continue;
                }
                let col = m.column(c);
                for (o, &e) in out.iter_mut().zip(col.iter()) {
                    *o += e * z;
                }
            }
            v.copy_from_slice(&out);
        } else {
            for _ in 0..(1u64 << j) {
                if self.adjoint {
                    self.op.apply_adjoint(v);
                } else {
                    self.op.apply(v);
                }
            }
        }
    }

    /// Σ_m U^m ⊗ |m⟩⟨m| as the product of controlled U^{2^j} over the ancilla
    /// bits. Returns the number of controlled-U calls, 2^τ − 1.
    pub(crate) fn apply_controlled(&self, tau: u32, state: &mut [Complex64]) -> u64 {
        let d = self.op.dim();
        state.par_chunks_mut(d).enumerate().for_each(|(m, slice)| {
            for j in 0..tau as usize {
                if (m >> j) & 1 == 1 {
                    self.apply_power(j, slice);
                }
            }
        });
        (1u64 << tau) - 1
    }
}

/// H^{⊗τ} on the ancilla.
pub(crate) fn hadamard_ancilla(state: &mut [Complex64], d: usize, tau: u32) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..tau {
        let bit = 1usize << j;
        let big = state.len() / d;
        for m in 0..big {
            if m & bit != 0 {
                continue;
            }
            let (lo, hi) = (m * d, (m | bit) * d);
            for w in 0..d {
                let (a, b) = (state[lo + w], state[hi + w]);
                state[lo + w] = (a + b) * h;
                state[hi + w] = (a - b) * h;
            }
        }
    }
}

/// out_m = (1/√N) Σ_l e^{−2πi lm/N} in_l on the ancilla, for every w.
pub(crate) fn inverse_qft_ancilla(state: &mut [Complex64], d: usize, tau: u32) {
    let big = 1usize << tau;
    if big == 1 {
        return;
    }
    let fft = rustfft::FftPlanner::<f64>::new().plan_fft_forward(big);
    let mut buf = vec![ZERO; big * d];
    for m in 0..big {
        for w in 0..d {
            buf[w * big + m] = state[m * d + w];
        }
    }
    fft.process(&mut buf);
    let scale = 1.0 / (big as f64).sqrt();
    for m in 0..big {
        for w in 0..d {
            state[m * d + w] = buf[w * big + m] * scale;
        }
    }
}

/// Symmetric orthogonal reflection mapping e_0 to the unit vector `u`.
pub(crate) struct Householder {
    w: Vec<f64>,
    coef: f64,
}

impl Householder {
    pub(crate) fn to(u: &[f64]) -> Householder {
        let mut w: Vec<f64> = u.iter().map(|x| -x).collect();
        w[0] += 1.0;
        let norm2: f64 = w.iter().map(|x| x * x).sum();
        let coef = if norm2 < 1e-30 { 0.0 } else { 2.0 / norm2 };
        Householder { w, coef }
    }

    /// Applies the reflection to the ancilla index of an ancilla-major state.
    pub(crate) fn apply_ancilla(&self, state: &mut [Complex64], d: usize) {
        if self.coef == 0.0 {
            return;
        }
        let big = self.w.len();
        debug_assert_eq!(state.len(), big * d);
        let mut proj = vec![ZERO; d];
        for (m, &wm) in self.w.iter().enumerate() {
            if wm != 0.0 {
                for (p, z) in proj.iter_mut().zip(&state[m * d..(m + 1) * d]) {
                    *p += z * wm;
                }
            }
        }
        for (m, &wm) in self.w.iter().enumerate() {
            if wm != 0.0 {
                let f = self.coef * wm;
                for (z, p) in state[m * d..(m + 1) * d].iter_mut().zip(&proj) {
                    *z -= p * f;
                }
            }
        }
    }
}
