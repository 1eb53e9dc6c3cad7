use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::markov::MarkovChain;

/// A unitary acting in place on vectors of length `dim()`.
pub trait UnitaryOp: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, v: &mut [Complex64]);
    fn apply_adjoint(&self, v: &mut [Complex64]);
    /// Called by circuits with the number of controlled applications they
    /// performed.
    fn record_calls(&self, _k: u64) {}
}

/// How the coin columns orthogonal to |0̄⟩ are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Gram–Schmidt over the standard basis.
    #[default]
    Standard,
    /// Gram–Schmidt over seeded random vectors.
    Seeded(u64),
}

/// W(P) = V† S V R_0̄ on Λ_V ⊗ Λ_V, applied factor by factor.
///
/// Walk-space index is `x * n + y` for system x and coin y; |0̄⟩ is coin 0.
/// Operators act on any vector whose length is a multiple of n², one
/// contiguous slice at a time.
#[derive(Debug)]
pub struct WalkOperator {
    n: usize,
    coins: Vec<DMatrix<f64>>,
    edges: Vec<bool>,
    calls: AtomicU64,
}

impl Clone for WalkOperator {
    fn clone(&self) -> Self {
        WalkOperator {
            n: self.n,
            coins: self.coins.clone(),
            edges: self.edges.clone(),
            calls: AtomicU64::new(self.calls()),
        }
    }
}

impl WalkOperator {
    pub fn new(chain: &MarkovChain) -> WalkOperator {
        WalkOperator::with_completion(chain, Completion::Standard)
    }

    pub fn with_completion(chain: &MarkovChain, completion: Completion) -> WalkOperator {
        let n = chain.n();
        let mut rng = match completion {
            Completion::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Completion::Standard => None,
        };
        let coins = (0..n)
            .map(|x| {
                let first = DVector::from_fn(n, |y, _| chain.prob(x, y).sqrt());
                complete_columns(&first, rng.as_mut())
            })
            .collect();
        let edges = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                chain.prob(x, y) + chain.prob(y, x) > 0.0
            })
            .collect();
        WalkOperator { n, coins, edges, calls: AtomicU64::new(0) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// n², the walk-space dimension.
    pub fn walk_dim(&self) -> usize {
        self.n * self.n
    }

    /// The coin unitary U_x; column 0 is (√p_xy)_y.
    pub fn coin(&self, x: usize) -> &DMatrix<f64> {
        &self.coins[x]
    }

    fn check(&self, state: &[Complex64]) -> Result<()> {
        let d = self.walk_dim();
        if state.is_empty() || !state.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch { expected: d, found: state.len() });
        }
        Ok(())
    }

    /// V|x⟩|c⟩ = |x⟩ U_x|c⟩ (forward) or its adjoint.
    pub fn apply_v(&self, state: &mut [Complex64], forward: bool) -> Result<()> {
        self.check(state)?;
        self.v_raw(state, forward);
        Ok(())
    }

    pub fn apply_s(&self, state: &mut [Complex64]) -> Result<()> {
        self.check(state)?;
        self.s_raw(state);
        Ok(())
    }

    pub fn apply_r0(&self, state: &mut [Complex64]) -> Result<()> {
        self.check(state)?;
        self.r0_raw(state);
        Ok(())
    }

    /// V† S V, the involution whose restriction to the coin-|0̄⟩ subspace is
    /// the discriminant.
    pub fn apply_t1(&self, state: &mut [Complex64]) -> Result<()> {
        self.check(state)?;
        self.t1_raw(state);
        Ok(())
    }

    /// One W application; counts one controlled-W call.
    pub fn apply_w(&self, state: &mut [Complex64]) -> Result<()> {
        self.apply_w_power(1, state)
    }

    /// W^l; counts l controlled-W calls.
    pub fn apply_w_power(&self, l: u64, state: &mut [Complex64]) -> Result<()> {
        self.check(state)?;
        for _ in 0..l {
            self.w_raw(state);
        }
        self.add_calls(l);
        Ok(())
    }

    /// W applied without touching the call counter.
    pub fn apply_w_uncounted(&self, state: &mut [Complex64]) {
        self.w_raw(state);
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn add_calls(&self, k: u64) {
        self.calls.fetch_add(k, Ordering::Relaxed);
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    fn w_raw(&self, state: &mut [Complex64]) {
        self.r0_raw(state);
        self.t1_raw(state);
    }

    fn t1_raw(&self, state: &mut [Complex64]) {
        self.v_raw(state, true);
        self.s_raw(state);
        self.v_raw(state, false);
    }

    fn v_raw(&self, state: &mut [Complex64], forward: bool) {
        let n = self.n;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for slice in state.chunks_exact_mut(n * n) {
            for (x, block) in slice.chunks_exact_mut(n).enumerate() {
                buf.copy_from_slice(block);
                let u = &self.coins[x];
                for (row, out) in block.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (col, z) in buf.iter().enumerate() {
                        let w = if forward { u[(row, col)] } else { u[(col, row)] };
                        if w != 0.0 {
                            acc += z * w;
                        }
                    }
                    *out = acc;
                }
            }
        }
    }

    fn s_raw(&self, state: &mut [Complex64]) {
        let n = self.n;
        for slice in state.chunks_exact_mut(n * n) {
            for x in 0..n {
                for y in (x + 1)..n {
                    if self.edges[x * n + y] {
                        slice.swap(x * n + y, y * n + x);
                    }
                }
            }
        }
    }

    fn r0_raw(&self, state: &mut [Complex64]) {
        let n = self.n;
        for (i, z) in state.iter_mut().enumerate() {
            if i % n != 0 {
                *z = -*z;
            }
        }
    }
}

impl UnitaryOp for WalkOperator {
    fn dim(&self) -> usize {
        self.walk_dim()
    }

    fn apply(&self, v: &mut [Complex64]) {
        self.w_raw(v);
    }

    fn apply_adjoint(&self, v: &mut [Complex64]) {
        // W† = R_0̄ V† S V, both factors being involutions
        self.t1_raw(v);
        self.r0_raw(v);
    }

    fn record_calls(&self, k: u64) {
        self.add_calls(k);
    }
}

/// Orthogonal matrix with `first` as column 0 and the rest filled by
/// Gram–Schmidt over candidate vectors.
fn complete_columns(first: &DVector<f64>, mut rng: Option<&mut ChaCha8Rng>) -> DMatrix<f64> {
    let n = first.len();
    let mut cols: Vec<DVector<f64>> = vec![first / first.norm()];
    let mut next_standard = 0;
    while cols.len() < n {
        let candidate = match rng.as_deref_mut() {
            Some(rng) => DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0)),
            None => {
                let mut e = DVector::zeros(n);
                e[next_standard] = 1.0;
                next_standard += 1;
                e
            }
        };
        let mut v = candidate;
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dot(&v);
                v -= c * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            cols.push(v / norm);
        }
    }
    DMatrix::from_columns(&cols)
}
