//! Interpolated search with fast-forwarding, and qsampling by running the
//! step chain backwards from the marked vertex.

use num_complex::Complex64;

use super::report::{RunReport, StepRecord};
use super::{bound, prepare, Alg2Mode, LeakTracker, Prepared};
use crate::circuit::check_budget;
use crate::error::{Error, Result};
use crate::markov::MarkovChain;
use crate::qff::{u_qff_filter, u_qfs_step, u_qfs_step_dense, FlaggedState, QffConfig};

/// Per-step fast-forwarding parameters for one search instance.
pub struct Alg2Plan {
    pub r: usize,
    pub epsilon: f64,
    /// Common ancilla width, the largest ⌈log₂ Γ_i⌉.
    pub tau: u32,
    /// t_i = ⌈ln(2r/ε) · 2/Δ(s_i)⌉.
    pub t: Vec<u64>,
    pub configs: Vec<QffConfig>,
    prepared: Prepared,
}

impl Alg2Plan {
    pub fn new(chain: &MarkovChain, g: usize, r: usize, epsilon: f64) -> Result<Alg2Plan> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Precondition(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        let prepared = prepare(chain, g, r)?;
        let per_step = epsilon / (2.0 * r as f64);
        let log_term = (2.0 * r as f64 / epsilon).ln();
        let mut t = Vec::with_capacity(r);
        for step in &prepared.steps {
            let gap = step.spectrum.gap();
            if gap.is_nan() || gap <= 0.0 {
                return Err(Error::NumericalBreakdown(format!("gap of P(s = {}) is {gap}", step.s)));
            }
            t.push((log_term * 2.0 / gap).ceil() as u64);
        }
        let own = t.iter().map(|&ti| QffConfig::new(ti, per_step)).collect::<Result<Vec<_>>>()?;
        let tau = own.iter().map(|c| c.tau).max().unwrap_or(0);
        let configs = t.iter().map(|&ti| QffConfig::with_tau(ti, per_step, tau)).collect::<Result<Vec<_>>>()?;
        Ok(Alg2Plan { r, epsilon, tau, t, configs, prepared })
    }

    pub fn n(&self) -> usize {
        self.prepared.family.n()
    }

    pub fn marked(&self) -> usize {
        self.prepared.family.marked()[0]
    }

    pub fn s(&self) -> &[f64] {
        &self.prepared.schedule.s
    }

    pub fn pi_bar(&self) -> Vec<f64> {
        self.prepared.family.pi_bar().as_slice().to_vec()
    }

    /// Ladder count of one U_qfs step: U_qff and U_qff†.
    pub fn step_calls(&self) -> u64 {
        2 * ((1u64 << self.tau) - 1)
    }

    fn check_explicit(&self, dense: bool) -> Result<()> {
        let d = self.n() * self.n();
        let budget = self.configs.first().map(|c| c.budget).unwrap_or(usize::MAX);
        check_budget(d, self.tau, budget)?;
        if dense {
            check_budget(d << (self.r + 1), self.tau, budget)?;
        }
        Ok(())
    }

    /// Applies the steps 1..=r in order, or r..=1 when `forward` is false.
    pub fn apply(&self, state: &mut FlaggedState, forward: bool) -> Result<()> {
        self.check_explicit(false)?;
        for i in self.order(forward) {
            let step = &self.prepared.steps[i - 1];
            u_qfs_step(&step.op, &self.configs[i - 1], i, state)?;
        }
        Ok(())
    }

    pub fn apply_dense(&self, state: &mut [Complex64], forward: bool) -> Result<()> {
        self.check_explicit(true)?;
        for i in self.order(forward) {
            let step = &self.prepared.steps[i - 1];
            u_qfs_step_dense(&step.op, &self.configs[i - 1], i, self.r, state)?;
        }
        Ok(())
    }

    /// F_{i_k} ⋯ F_{i_1} v over the same step order.
    pub fn apply_filters(&self, v: &[f64], forward: bool) -> Vec<f64> {
        let mut v = v.to_vec();
        for i in self.order(forward) {
            v = u_qff_filter(&self.prepared.steps[i - 1].spectrum, &self.configs[i - 1], &v);
        }
        v
    }

    fn order(&self, forward: bool) -> Vec<usize> {
        if forward {
            (1..=self.r).collect()
        } else {
            (1..=self.r).rev().collect()
        }
    }

    fn records(&self, discarded: &[f64]) -> Vec<StepRecord> {
        let mut leaks = LeakTracker::new(self.prepared.family.pi_bar());
        self.prepared
            .steps
            .iter()
            .zip(&self.configs)
            .enumerate()
            .map(|(idx, (step, config))| StepRecord {
                i: idx + 1,
                s: step.s,
                theta: step.theta,
                gap: step.spectrum.gap(),
                t: Some(config.t),
                tau: self.tau,
                gamma: config.gamma as f64,
                leak: leaks.advance(step, |phi| config.filter_value(phi)),
                discarded: discarded.get(idx).copied().unwrap_or(0.0),
                calls: self.step_calls(),
            })
            .collect()
    }

    fn report(&self, mode: Alg2Mode, algorithm: &str, records: Vec<StepRecord>, p_conditional: f64) -> RunReport {
        let pi_g = self.prepared.family.pi_marked();
        RunReport {
            algorithm: algorithm.into(),
            mode: mode.to_string(),
            n: self.n(),
            marked: self.marked(),
            r: self.r,
            epsilon: self.epsilon,
            p_initial_hit: pi_g,
            hitting_time: None,
            tau: self.tau,
            total_leak: records.iter().map(|s| s.leak).sum(),
            controlled_w_calls: records.iter().map(|s| s.calls).sum(),
            gamma_scale_calls: self.configs.iter().map(|c| 2.0 * c.gamma as f64).sum(),
            steps: records,
            p_conditional,
            p_succ: pi_g + (1.0 - pi_g) * p_conditional,
            p_unconditioned: None,
            p_accepted: None,
            bound: bound(self.r, self.epsilon),
        }
    }
}

/// Flag bits γ_1..γ_i of a sparse key.
fn flags_set(key: u64, upto: usize) -> bool {
    let mask = ((1u64 << upto) - 1) << 1;
    key & mask == mask
}

pub fn alg2_search(chain: &MarkovChain, g: usize, r: usize, epsilon: f64, mode: Alg2Mode) -> Result<RunReport> {
    let plan = Alg2Plan::new(chain, g, r, epsilon)?;
    let start = plan.pi_bar();
    match mode {
        Alg2Mode::FilterProduct => {
            let mut v = start;
            let mut discarded = Vec::with_capacity(r);
            for i in 1..=r {
                let before: f64 = v.iter().map(|a| a * a).sum();
                let step = &plan.prepared.steps[i - 1];
                v = u_qff_filter(&step.spectrum, &plan.configs[i - 1], &v);
                let after: f64 = v.iter().map(|a| a * a).sum();
                discarded.push((before - after).max(0.0).sqrt());
            }
            let records = plan.records(&discarded);
            Ok(plan.report(mode, "alg2", records, v[g] * v[g]))
        }
        Alg2Mode::ExplicitSparse => {
            plan.check_explicit(false)?;
            let mut state = FlaggedState::new(&start, plan.tau, r);
            let mut discarded = Vec::with_capacity(r);
            let mut kept = 1.0;
            for i in 1..=r {
                let step = &plan.prepared.steps[i - 1];
                u_qfs_step(&step.op, &plan.configs[i - 1], i, &mut state)?;
                let now: f64 = state
                    .branches
                    .iter()
                    .filter(|(k, _)| flags_set(**k, i))
                    .map(|(_, v)| v.iter().map(|z| z.norm_sqr()).sum::<f64>())
                    .sum();
                discarded.push((kept - now).max(0.0).sqrt());
                kept = now;
            }
            let mask = state.flags_mask();
            let p_cond = state.system_probability(g, |k| k & mask == mask);
            let mut report = plan.report(mode, "alg2", plan.records(&discarded), p_cond);
            report.p_unconditioned = Some(state.system_probability(g, |_| true));
            report.p_accepted = Some(state.accepted_probability());
            Ok(report)
        }
        Alg2Mode::ExplicitDense => {
            let initial = FlaggedState::new(&start, plan.tau, r);
            let layout = initial.layout();
            let mut dense = initial.to_dense();
            plan.apply_dense(&mut dense, true)?;
            let (mut p_cond, mut p_all, mut p_acc) = (0.0, 0.0, 0.0);
            for (idx, z) in dense.iter().enumerate() {
                let p = z.norm_sqr();
                if p == 0.0 {
                    continue;
                }
                let digits = layout.unflatten(idx);
                let accepted = digits[4] == (1 << r) - 1;
                if accepted {
                    p_acc += p;
                }
                if digits[0] == g {
                    p_all += p;
                    if accepted {
                        p_cond += p;
                    }
                }
            }
            let mut report = plan.report(mode, "alg2", plan.records(&[]), p_cond);
            report.p_unconditioned = Some(p_all);
            report.p_accepted = Some(p_acc);
            Ok(report)
        }
    }
}

#[derive(Debug, Clone)]
pub struct QsampleOutput {
    pub report: RunReport,
    /// Σ over accepted branches and R2 R3 of |⟨√π|·⟩_R1|².
    pub fidelity: f64,
    /// |⟨√π| F_1 ⋯ F_r |g⟩|².
    pub filter_estimate: f64,
    /// Final state of the explicit run.
    pub state: Option<FlaggedState>,
}

/// Runs the steps r..=1 from |g⟩ and scores the accepted branch against
/// the stationary amplitudes √π. The report's success fields carry the
/// fidelity.
pub fn qsample(chain: &MarkovChain, g: usize, r: usize, epsilon: f64, mode: Alg2Mode) -> Result<QsampleOutput> {
    let plan = Alg2Plan::new(chain, g, r, epsilon)?;
    let n = plan.n();
    let sqrt_pi = plan.prepared.family.pi_amplitudes();
    let mut basis = vec![0.0; n];
    basis[g] = 1.0;
    let filtered = plan.apply_filters(&basis, false);
    let filter_estimate = sqrt_pi.as_slice().iter().zip(&filtered).map(|(a, b)| a * b).sum::<f64>().powi(2);
    let overlap = |slice: &[Complex64], stride: usize, offset: usize| -> f64 {
        (0..n).map(|x| slice[x * stride + offset] * sqrt_pi[x]).sum::<Complex64>().norm_sqr()
    };
    let (fidelity, state) = match mode {
        Alg2Mode::FilterProduct => (filter_estimate, None),
        Alg2Mode::ExplicitSparse => {
            let mut state = FlaggedState::new(&basis, plan.tau, r);
            plan.apply(&mut state, false)?;
            let d = n * n;
            let mask = state.flags_mask();
            let fid = state
                .branches
                .iter()
                .filter(|(k, _)| *k & mask == mask)
                .map(|(_, v)| v.chunks_exact(d).map(|slice| (0..n).map(|y| overlap(slice, n, y)).sum::<f64>()).sum::<f64>())
                .sum();
            (fid, Some(state))
        }
        Alg2Mode::ExplicitDense => {
            let initial = FlaggedState::new(&basis, plan.tau, r);
            let layout = initial.layout();
            let mut dense = initial.to_dense();
            plan.apply_dense(&mut dense, false)?;
            let mut overlaps = std::collections::HashMap::<(usize, usize, usize), Complex64>::new();
            for (idx, z) in dense.iter().enumerate() {
                let digits = layout.unflatten(idx);
                if digits[4] == (1 << r) - 1 {
                    *overlaps.entry((digits[1], digits[2], digits[3])).or_default() += z * sqrt_pi[digits[0]];
                }
            }
            (overlaps.values().map(|z| z.norm_sqr()).sum(), None)
        }
    };
    let mut report = plan.report(mode, "qsample", plan.records(&[]), fidelity);
    report.p_succ = fidelity;
    Ok(QsampleOutput { report, fidelity, filter_estimate, state })
}
