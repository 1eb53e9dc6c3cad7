//! Interpolated search with phase estimation at every schedule step.

use num_complex::Complex64;

use super::report::{RunReport, StepRecord};
use super::{bound, prepare, Alg1Mode, HtChoice, LeakTracker};
use crate::circuit::check_budget;
use crate::error::{Error, Result};
use crate::linalg::norm_c;
use crate::markov::{hitting_time_spectral, max_hitting_time, MarkovChain};
use crate::qpe::{attach_zero_ancilla, delta, u_qee_explicit, u_qee_filter, zero_ancilla_slice, QpeConfig};
use crate::walkspace::{embed_system, WalkEigensystem};

/// Largest ancilla register the unreset diagnostic accepts.
const LITERAL_MAX_TAU: u32 = 12;

#[derive(Debug, Clone, Copy, Default)]
pub struct Alg1Options {
    pub mode: Alg1Mode,
    pub ht: HtChoice,
    /// Overrides τ = ⌈log₂ Γ₁⌉.
    pub tau: Option<u32>,
}

pub fn alg1_search(chain: &MarkovChain, g: usize, r: usize, epsilon: f64, mode: Alg1Mode) -> Result<RunReport> {
    alg1_search_with(chain, g, r, epsilon, &Alg1Options { mode, ..Default::default() })
}

pub fn alg1_search_with(
    chain: &MarkovChain,
    g: usize,
    r: usize,
    epsilon: f64,
    options: &Alg1Options,
) -> Result<RunReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Precondition(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let prepared = prepare(chain, g, r)?;
    let family = &prepared.family;
    let n = chain.n();
    let d = n * n;
    let ht = match options.ht {
        HtChoice::Measured => hitting_time_spectral(chain, &[g])?,
        HtChoice::MaxOverVertices => max_hitting_time(chain)?,
    };
    let mut config = QpeConfig::for_search(r, epsilon, ht)?;
    if let Some(tau) = options.tau {
        config.tau = tau;
    }
    let tau = config.tau;
    match options.mode {
        Alg1Mode::ProjectedFilter => {}
        Alg1Mode::Explicit => check_budget(d, tau, config.budget)?,
        Alg1Mode::ExplicitLiteral => {
            if tau > LITERAL_MAX_TAU {
                return Err(Error::AncillaTooLarge { required: d << tau, budget: d << LITERAL_MAX_TAU });
            }
            check_budget(d, tau, config.budget)?;
        }
    }

    let pibar = family.pi_bar();
    let start = embed_system(pibar.as_slice());
    let mut psi = start.clone();
    let mut literal = attach_zero_ancilla(&start, if options.mode == Alg1Mode::ExplicitLiteral { tau } else { 0 });
    let mut leaks = LeakTracker::new(pibar.clone());
    let ladder = (1u64 << tau) - 1;
    let mut records = Vec::with_capacity(r);

    for (idx, step) in prepared.steps.iter().enumerate() {
        let leak = leaks.advance(step, |phi| delta(phi, tau).norm());
        step.op.reset_calls();
        let discarded = match options.mode {
            Alg1Mode::ProjectedFilter => {
                let es = WalkEigensystem::new(&step.op, &step.spectrum)?;
                let out = u_qee_filter(&es, &step.op, tau, &psi)?;
                psi = out.state;
                out.discarded
            }
            Alg1Mode::Explicit => {
                let before = norm_c(&psi);
                let mut full = attach_zero_ancilla(&psi, tau);
                u_qee_explicit(&step.op, &config, &mut full)?;
                psi = zero_ancilla_slice(&full, d);
                let after = norm_c(&psi);
                (before * before - after * after).max(0.0).sqrt()
            }
            Alg1Mode::ExplicitLiteral => {
                u_qee_explicit(&step.op, &config, &mut literal)?;
                0.0
            }
        };
        let calls = match options.mode {
            Alg1Mode::ProjectedFilter => ladder,
            _ => step.op.calls(),
        };
        records.push(StepRecord {
            i: idx + 1,
            s: step.s,
            theta: step.theta,
            gap: step.spectrum.gap(),
            t: None,
            tau,
            gamma: config.gamma1,
            leak,
            discarded,
            calls,
        });
    }

    let final_state: &[Complex64] = match options.mode {
        Alg1Mode::ExplicitLiteral => &literal,
        _ => &psi,
    };
    let p_conditional: f64 = final_state
        .chunks_exact(d)
        .map(|slice| slice[g * n..(g + 1) * n].iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum();
    let pi_g = family.pi_marked();
    Ok(RunReport {
        algorithm: "alg1".into(),
        mode: options.mode.to_string(),
        n,
        marked: g,
        r,
        epsilon,
        p_initial_hit: pi_g,
        hitting_time: Some(ht),
        tau,
        total_leak: records.iter().map(|s| s.leak).sum(),
        controlled_w_calls: records.iter().map(|s| s.calls).sum(),
        gamma_scale_calls: r as f64 * config.gamma1.ceil(),
        steps: records,
        p_conditional,
        p_succ: pi_g + (1.0 - pi_g) * p_conditional,
        p_unconditioned: None,
        p_accepted: None,
        bound: bound(r, epsilon),
    })
}
