//! Success probability against the number of interpolation steps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{alg1_search, bound, Alg1Mode};
use crate::error::{Error, Result};
use crate::markov::{max_schedule_r, schedule_paper, InterpolatedFamily, MarkovChain};
use crate::walkspace::{embed_system, WalkOperator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub r: usize,
    pub p_succ: f64,
    pub bound: f64,
    pub controlled_w_calls: u64,
    pub total_leak: f64,
    pub mode: String,
}

/// Fixed-s walk repeated r times, with s from the one-step schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineRow {
    pub r: usize,
    pub s: f64,
    pub p_succ: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub rows: Vec<CurveRow>,
    /// First requested r whose schedule does not exist.
    pub truncated_at: Option<usize>,
    pub note: Option<String>,
    pub baseline: Vec<BaselineRow>,
}

impl CurveReport {
    pub fn bound_strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].bound > w[0].bound)
    }

    pub fn meets_bound(&self) -> bool {
        self.rows.iter().all(|row| row.p_succ + 1e-9 >= row.bound)
    }

    /// Some r₁ < r₂ with p(r₁) > p(r₂) in the baseline.
    pub fn baseline_drops(&self) -> bool {
        self.baseline.iter().enumerate().any(|(i, a)| self.baseline[i + 1..].iter().any(|b| a.p_succ > b.p_succ))
    }
}

/// Rows for r = 1..=r_max with phase-estimation search in projected-filter
/// mode, stopping at the first infeasible r.
pub fn success_curve(chain: &MarkovChain, g: usize, r_max: usize, epsilon: f64) -> Result<CurveReport> {
    if r_max == 0 {
        return Err(Error::Precondition("r_max must be >= 1".into()));
    }
    chain.require_lazy()?;
    let family = InterpolatedFamily::new(chain, &[g])?;
    let pi_g = family.pi_marked();
    let feasible = max_schedule_r(pi_g).min(r_max);
    let rows = (1..=feasible)
        .into_par_iter()
        .map(|r| {
            let report = alg1_search(chain, g, r, epsilon, Alg1Mode::ProjectedFilter)?;
            Ok(CurveRow {
                r,
                p_succ: report.p_succ,
                bound: bound(r, epsilon),
                controlled_w_calls: report.controlled_w_calls,
                total_leak: report.total_leak,
                mode: report.mode,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (truncated_at, note) = if feasible < r_max {
        let r = feasible + 1;
        log::warn!("curve truncated at r = {r}: no schedule exists beyond r = {feasible} for π_g = {pi_g}");
        (Some(r), Some(format!("no schedule for r >= {r} (largest feasible r is {feasible} at pi_g = {pi_g})")))
    } else {
        (None, None)
    };
    Ok(CurveReport { rows, truncated_at, note, baseline: baseline(&family, g, r_max)? })
}

/// π_g + (1 − π_g)‖Π_g W(s*)^r |π̄⟩|0̄⟩‖² for r = 1..=r_max.
pub fn baseline(family: &InterpolatedFamily, g: usize, r_max: usize) -> Result<Vec<BaselineRow>> {
    let pi_g = family.pi_marked();
    let s = match schedule_paper(pi_g, 1) {
        Ok(schedule) => schedule.s[0],
        Err(Error::ROutOfRange { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let op = WalkOperator::new(&family.chain(s)?);
    let n = family.n();
    let mut psi = embed_system(family.pi_bar().as_slice());
    let mut rows = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        op.apply_w_uncounted(&mut psi);
        let hit: f64 = psi[g * n..(g + 1) * n].iter().map(|z| z.norm_sqr()).sum();
        rows.push(BaselineRow { r, s, p_succ: pi_g + (1.0 - pi_g) * hit });
    }
    Ok(rows)
}
