//! Quantum fast-forwarding: U_qff = V_q† W_ctrl V_q, its closed-form
//! projection Σ_l p̃_l T_l(D), and the five-register flagged step U_qfs.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{check_budget, Householder, PowerLadder, AMPLITUDE_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{norm_c, SpectralData};
use crate::walkspace::{RegisterLayout, UnitaryOp};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pr[|X_t| = l] for the t-step ±1 walk, l = 0..=t.
pub fn pl_distribution(t: u64) -> Vec<f64> {
    let t = t as usize;
    // binomial(t, 1/2) weights by ratio recurrences from the mode, then
    // normalized; avoids overflow of C(t, k) and 2^t
    let mode = t / 2;
    let mut b = vec![0.0f64; t + 1];
    b[mode] = 1.0;
    for k in mode..t {
        b[k + 1] = b[k] * (t - k) as f64 / (k + 1) as f64;
    }
    for k in (1..=mode).rev() {
        b[k - 1] = b[k] * k as f64 / (t - k + 1) as f64;
    }
    let total: f64 = b.iter().sum();
    b.iter_mut().for_each(|v| *v /= total);
    (0..=t)
        .map(|l| {
            if !(t - l).is_multiple_of(2) {
                0.0
            } else if l == 0 {
                b[t / 2]
            } else {
                2.0 * b[(t + l) / 2]
            }
        })
        .collect()
}

/// Γ = ⌈√(2t ln(4/ε))⌉, capped at t + 1. The flag reports a cap.
pub fn gamma_for(t: u64, epsilon: f64) -> (u64, bool) {
    let raw = (2.0 * t as f64 * (4.0 / epsilon).ln()).sqrt().ceil().max(1.0) as u64;
    if raw > t + 1 {
        (t + 1, true)
    } else {
        (raw, false)
    }
}

pub fn tau_for_gamma(gamma: u64) -> u32 {
    if gamma <= 1 {
        0
    } else {
        64 - (gamma - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QffConfig {
    pub t: u64,
    pub epsilon: f64,
    pub gamma: u64,
    pub tau: u32,
    /// p̃_l for l = 0..2^τ, truncated and renormalized.
    pub pl: Vec<f64>,
    /// Mass of p_l at l ≥ 2^τ before renormalization.
    pub tail: f64,
    /// Γ was capped at t + 1.
    pub shrunk: bool,
    pub budget: usize,
}

impl QffConfig {
    pub fn new(t: u64, epsilon: f64) -> Result<QffConfig> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Precondition(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        let (gamma, shrunk) = gamma_for(t, epsilon);
        if shrunk {
            log::warn!("Γ for t = {t}, ε = {epsilon} exceeds t + 1; using Γ = {gamma}");
        }
        QffConfig::build(t, epsilon, gamma, tau_for_gamma(gamma), shrunk)
    }

    /// Same t and ε but a wider ancilla of τ ≥ ⌈log₂ Γ⌉ qubits.
    pub fn with_tau(t: u64, epsilon: f64, tau: u32) -> Result<QffConfig> {
        let own = QffConfig::new(t, epsilon)?;
        if tau < own.tau {
            return Err(Error::Precondition(format!("tau {tau} below the required {}", own.tau)));
        }
        QffConfig::build(t, epsilon, own.gamma, tau, own.shrunk)
    }

    /// Explicit truncation radius; τ = ⌈log₂ Γ⌉.
    pub fn with_gamma(t: u64, epsilon: f64, gamma: u64) -> Result<QffConfig> {
        if gamma == 0 {
            return Err(Error::Precondition("gamma must be >= 1".into()));
        }
        let gamma = gamma.min(t + 1);
        QffConfig::build(t, epsilon, gamma, tau_for_gamma(gamma), false)
    }

    fn build(t: u64, epsilon: f64, gamma: u64, tau: u32, shrunk: bool) -> Result<QffConfig> {
        if tau > 30 {
            return Err(Error::AncillaTooLarge { required: usize::MAX, budget: AMPLITUDE_BUDGET });
        }
        let big = 1usize << tau;
        let full = pl_distribution(t);
        let mut pl = vec![0.0; big];
        for (l, p) in full.iter().enumerate().take(big) {
            pl[l] = *p;
        }
        let kept: f64 = pl.iter().sum();
        let tail = (1.0 - kept).max(0.0);
        pl.iter_mut().for_each(|p| *p /= kept);
        Ok(QffConfig { t, epsilon, gamma, tau, pl, tail, shrunk, budget: AMPLITUDE_BUDGET })
    }

    pub fn ancilla_dim(&self) -> usize {
        1usize << self.tau
    }

    /// f(φ) = Σ_l p̃_l cos(lφ).
    pub fn filter_value(&self, phi: f64) -> f64 {
        self.pl
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0.0)
            .map(|(l, p)| p * (l as f64 * phi).cos())
            .sum()
    }

    /// The ladder count of one U_qff: 2^τ − 1 controlled-W calls.
    pub fn ladder_calls(&self) -> u64 {
        (1u64 << self.tau) - 1
    }
}

/// Explicit U_qff (or U_qff†) on an ancilla-major state of length
/// 2^τ · dim. Records 2^τ − 1 controlled calls.
pub fn u_qff_explicit<U: UnitaryOp + ?Sized>(
    op: &U,
    config: &QffConfig,
    state: &mut [Complex64],
    adjoint: bool,
) -> Result<()> {
    let d = op.dim();
    check_budget(d, config.tau, config.budget)?;
    let expected = d << config.tau;
    if state.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: state.len() });
    }
    let amplitudes: Vec<f64> = config.pl.iter().map(|p| p.sqrt()).collect();
    let vq = Householder::to(&amplitudes);
    vq.apply_ancilla(state, d);
    let ladder = PowerLadder::new(op, config.tau, adjoint);
    let calls = ladder.apply_controlled(config.tau, state);
    op.record_calls(calls);
    vq.apply_ancilla(state, d);
    Ok(())
}

/// Σ_k f(φ_k) v_k v_kᵀ with cos φ_k = λ_k.
pub fn qff_filter_matrix(spectrum: &SpectralData, config: &QffConfig) -> DMatrix<f64> {
    let n = spectrum.len();
    let mut f = DMatrix::zeros(n, n);
    for k in 0..n {
        let scale = config.filter_value(spectrum.values[k].clamp(-1.0, 1.0).acos());
        let v = spectrum.vectors.column(k);
        f += v * v.transpose() * scale;
    }
    f
}

/// Scales the D-eigencomponent k of `v` by f(φ_k).
pub fn u_qff_filter(spectrum: &SpectralData, config: &QffConfig, v: &[f64]) -> Vec<f64> {
    let n = spectrum.len();
    let mut out = vec![0.0; n];
    for k in 0..n {
        let vk = spectrum.vectors.column(k);
        let coef: f64 = vk.iter().zip(v).map(|(a, b)| a * b).sum();
        let scale = config.filter_value(spectrum.values[k].clamp(-1.0, 1.0).acos());
        for (o, a) in out.iter_mut().zip(vk.iter()) {
            *o += coef * scale * a;
        }
    }
    out
}

/// Five-register state R1 R2 R3 R4 R5 with the flag block stored sparsely:
/// each key (bit 0 = R4, bit i = γ_i) owns a dense R3 ⊗ R1 ⊗ R2 vector in
/// ancilla-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct FlaggedState {
    pub n: usize,
    pub tau: u32,
    pub r: usize,
    pub branches: BTreeMap<u64, Vec<Complex64>>,
}

impl FlaggedState {
    /// |v⟩|0̄⟩|0^τ⟩|0⟩|0^r⟩.
    pub fn new(system: &[f64], tau: u32, r: usize) -> FlaggedState {
        let n = system.len();
        let mut vec = vec![ZERO; (n * n) << tau];
        for (x, &a) in system.iter().enumerate() {
            vec[x * n] = Complex64::new(a, 0.0);
        }
        let mut branches = BTreeMap::new();
        branches.insert(0, vec);
        FlaggedState { n, tau, r, branches }
    }

    pub fn walk_dim(&self) -> usize {
        self.n * self.n
    }

    pub fn flags_mask(&self) -> u64 {
        ((1u64 << self.r) - 1) << 1
    }

    pub fn norm(&self) -> f64 {
        self.branches.values().map(|v| norm_c(v).powi(2)).sum::<f64>().sqrt()
    }

    /// Σ over branches selected by `keep` of ‖⟨x|_R1 branch‖².
    pub fn system_probability(&self, x: usize, keep: impl Fn(u64) -> bool) -> f64 {
        let (n, d) = (self.n, self.walk_dim());
        self.branches
            .iter()
            .filter(|(k, _)| keep(**k))
            .map(|(_, v)| {
                v.chunks_exact(d)
                    .map(|slice| slice[x * n..(x + 1) * n].iter().map(|z| z.norm_sqr()).sum::<f64>())
                    .sum::<f64>()
            })
            .sum()
    }

    /// Probability that every flag γ_1..γ_r is set.
    pub fn accepted_probability(&self) -> f64 {
        let mask = self.flags_mask();
        self.branches
            .iter()
            .filter(|(k, _)| *k & mask == mask)
            .map(|(_, v)| norm_c(v).powi(2))
            .sum()
    }

    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout::new(&[
            ("R1", self.n),
            ("R2", self.n),
            ("R3", 1 << self.tau),
            ("R4", 2),
            ("R5", 1 << self.r),
        ])
    }

    /// Dense vector over [`FlaggedState::layout`]; γ_i is bit i − 1 of R5.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let layout = self.layout();
        let (n, d) = (self.n, self.walk_dim());
        let mut out = vec![ZERO; layout.total()];
        for (key, v) in &self.branches {
            let r4 = (key & 1) as usize;
            let r5 = (key >> 1) as usize;
            for (idx, z) in v.iter().enumerate() {
                let (m, w) = (idx / d, idx % d);
                out[layout.flatten(&[w / n, w % n, m, r4, r5])] += z;
            }
        }
        out
    }

    fn insert_add(map: &mut BTreeMap<u64, Vec<Complex64>>, key: u64, part: Vec<Complex64>) {
        match map.get_mut(&key) {
            Some(existing) => existing.iter_mut().zip(&part).for_each(|(e, p)| *e += p),
            None => {
                map.insert(key, part);
            }
        }
    }

    /// Moves the entries selected by `hit` (walk index within a slice,
    /// ancilla value) of branches selected by `on` to key ^ `flip`.
    fn controlled_flip(&mut self, on: impl Fn(u64) -> bool, hit: impl Fn(usize, usize) -> bool, flip: u64) {
        let d = self.walk_dim();
        let old = std::mem::take(&mut self.branches);
        for (key, v) in old {
            if !on(key) {
                FlaggedState::insert_add(&mut self.branches, key, v);
                continue;
            }
            let mut moved = vec![ZERO; v.len()];
            let mut stay = v;
            let mut any = false;
            for (idx, z) in stay.iter_mut().enumerate() {
                if *z != ZERO && hit(idx % d, idx / d) {
                    moved[idx] = *z;
                    *z = ZERO;
                    any = true;
                }
            }
            if any {
                FlaggedState::insert_add(&mut self.branches, key ^ flip, moved);
            }
            if stay.iter().any(|z| *z != ZERO) {
                FlaggedState::insert_add(&mut self.branches, key, stay);
            }
        }
    }

    fn flip_r4(&mut self) {
        let old = std::mem::take(&mut self.branches);
        self.branches = old.into_iter().map(|(k, v)| (k ^ 1, v)).collect();
    }
}

/// One U_qfs step, gates applied in the order
/// ccX_{2,4}, X_4, U_qff, ccX_{234,γ_i}, U_qff†, X_4, ccX_{2,4}.
///
/// ccX_{a,b} flips b on basis states where block a is all zero. The step is
/// an involution.
pub fn u_qfs_step<U: UnitaryOp + ?Sized>(op: &U, config: &QffConfig, i: usize, state: &mut FlaggedState) -> Result<()> {
    if i == 0 || i > state.r {
        return Err(Error::StepIndexOutOfRange { i, r: state.r });
    }
    if op.dim() != state.walk_dim() || config.tau != state.tau {
        return Err(Error::DimensionMismatch { expected: state.walk_dim(), found: op.dim() });
    }
    let n = state.n;
    let coin_zero = move |w: usize, _m: usize| w.is_multiple_of(n);
    let all_zero = move |w: usize, m: usize| m == 0 && w.is_multiple_of(n);
    state.controlled_flip(|_| true, coin_zero, 1);
    state.flip_r4();
    for v in state.branches.values_mut() {
        u_qff_explicit(op, config, v, false)?;
    }
    state.controlled_flip(|k| k & 1 == 0, all_zero, 1u64 << i);
    for v in state.branches.values_mut() {
        u_qff_explicit(op, config, v, true)?;
    }
    state.flip_r4();
    state.controlled_flip(|_| true, coin_zero, 1);
    state.branches.retain(|_, v| v.iter().any(|z| *z != ZERO));
    Ok(())
}

/// The same step on a dense vector over the R1 R2 R3 R4 R5 layout of an
/// n-vertex walk with τ ancilla qubits and r flags.
pub fn u_qfs_step_dense<U: UnitaryOp + ?Sized>(
    op: &U,
    config: &QffConfig,
    i: usize,
    r: usize,
    state: &mut [Complex64],
) -> Result<()> {
    if i == 0 || i > r {
        return Err(Error::StepIndexOutOfRange { i, r });
    }
    let d = op.dim();
    let n = (d as f64).sqrt().round() as usize;
    let big = 1usize << config.tau;
    let flags = 1usize << r;
    let layout = RegisterLayout::new(&[("R1", n), ("R2", n), ("R3", big), ("R4", 2), ("R5", flags)]);
    if state.len() != layout.total() || n * n != d {
        return Err(Error::DimensionMismatch { expected: layout.total(), found: state.len() });
    }
    let swap_where = |state: &mut [Complex64], cond: &dyn Fn(&[usize]) -> bool, reg: usize, bit: usize| {
        for idx in 0..state.len() {
            let digits = layout.unflatten(idx);
            if (digits[reg] >> bit) & 1 == 0 && cond(&digits) {
                let mut other = digits.clone();
                other[reg] |= 1 << bit;
                state.swap(idx, layout.flatten(&other));
            }
        }
    };
    let qff = |state: &mut [Complex64], adjoint: bool| -> Result<()> {
        for r4 in 0..2 {
            for r5 in 0..flags {
                let mut buf = vec![ZERO; d * big];
                for x in 0..n {
                    for y in 0..n {
                        for m in 0..big {
                            buf[m * d + x * n + y] = state[layout.flatten(&[x, y, m, r4, r5])];
                        }
                    }
                }
                u_qff_explicit(op, config, &mut buf, adjoint)?;
                for x in 0..n {
                    for y in 0..n {
                        for m in 0..big {
                            state[layout.flatten(&[x, y, m, r4, r5])] = buf[m * d + x * n + y];
                        }
                    }
                }
            }
        }
        Ok(())
    };
    let coin_zero = |dg: &[usize]| dg[1] == 0;
    let everywhere = |_: &[usize]| true;
    let gate_234 = |dg: &[usize]| dg[1] == 0 && dg[2] == 0 && dg[3] == 0;
    swap_where(state, &coin_zero, 3, 0);
    swap_where(state, &everywhere, 3, 0);
    qff(state, false)?;
    swap_where(state, &gate_234, 4, i - 1);
    qff(state, true)?;
    swap_where(state, &everywhere, 3, 0);
    swap_where(state, &coin_zero, 3, 0);
    Ok(())
}
