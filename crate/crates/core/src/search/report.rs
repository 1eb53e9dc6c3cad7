use serde::{Deserialize, Serialize};

/// Per-step diagnostics of a search or qsampling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub i: usize,
    pub s: f64,
    pub theta: f64,
    /// Δ(s_i) = 1 − λ₁ of D(s_i).
    pub gap: f64,
    /// Simulated classical steps (fast-forwarding only).
    pub t: Option<u64>,
    pub tau: u32,
    /// Truncation radius (Γ₁ for phase estimation, Γ_i for fast-forwarding).
    pub gamma: f64,
    /// Norm the step lets through on the components orthogonal to v0(s_i),
    /// times the overlaps of the earlier steps.
    pub leak: f64,
    /// Norm removed by the ancilla projection at this step.
    pub discarded: f64,
    /// Controlled-W calls of the circuit ladder.
    pub calls: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub mode: String,
    pub n: usize,
    pub marked: usize,
    pub r: usize,
    pub epsilon: f64,
    /// π_g: probability that the initial check already hits g.
    pub p_initial_hit: f64,
    /// Hitting time fed into Γ₁ (phase estimation only).
    pub hitting_time: Option<f64>,
    pub tau: u32,
    pub steps: Vec<StepRecord>,
    /// Success probability after a failed initial check.
    pub p_conditional: f64,
    pub p_succ: f64,
    /// Probability of g in R1 ignoring the flags (fast-forwarding explicit
    /// modes only).
    pub p_unconditioned: Option<f64>,
    /// Probability that every flag is set (fast-forwarding explicit modes).
    pub p_accepted: Option<f64>,
    pub bound: f64,
    pub total_leak: f64,
    /// Σ of the ladder counts, 2^τ − 1 per controlled power circuit.
    pub controlled_w_calls: u64,
    /// Σ of the truncation radii, the count the complexity statements use.
    pub gamma_scale_calls: f64,
}
