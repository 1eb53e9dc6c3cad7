//! Slowly varying chain sequences whose consecutive stationary amplitude
//! vectors overlap by at least q.

use std::f64::consts::PI;

use nalgebra::DVector;

use super::chain::MarkovChain;
use super::interpolation::{s_of_theta, InterpolatedFamily};
use super::schedule::max_schedule_r;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct AdiabaticStage {
    pub s: f64,
    pub theta: f64,
    pub chain: MarkovChain,
    /// 1-eigenvector v0(s) of D(s).
    pub amplitudes: DVector<f64>,
}

#[derive(Debug, Clone)]
pub struct AdiabaticSequence {
    pub r: usize,
    pub q: f64,
    /// From the absorbing end (v0 = |g⟩) toward the base chain.
    pub stages: Vec<AdiabaticStage>,
    /// ⟨v0_j|v0_{j+1}⟩ for consecutive stages.
    pub overlaps: Vec<f64>,
}

/// r = ⌈π/(2 arccos q) − 1⌉, at least 1.
pub fn adiabatic_steps(q: f64) -> Result<usize> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::QOutOfRange(q));
    }
    let r = (PI / (2.0 * q.acos()) - 1.0).ceil();
    Ok((r as usize).max(1))
}

/// Stages at angles θ_j = π/2 − jπ/(2(r+1)), j = 0..r, so consecutive
/// stationary vectors sit π/(2(r+1)) apart in span{|π̄⟩, |g⟩}.
pub fn adiabatic_sequence(chain: &MarkovChain, g: usize, q: f64) -> Result<AdiabaticSequence> {
    let r = adiabatic_steps(q)?;
    chain.require_lazy()?;
    let family = InterpolatedFamily::new(chain, &[g])?;
    let pi_g = family.pi_marked();
    let max_r = max_schedule_r(pi_g);
    if r > max_r {
        return Err(Error::ROutOfRange { r, max_r });
    }
    let step = PI / (2.0 * (r + 1) as f64);
    let mut stages = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let theta = PI / 2.0 - j as f64 * step;
        let s = s_of_theta(pi_g, theta).clamp(0.0, 1.0);
        stages.push(AdiabaticStage {
            s,
            theta,
            chain: family.chain(s)?,
            amplitudes: family.v0(s)?,
        });
    }
    let overlaps = stages
        .windows(2)
        .map(|w| w[0].amplitudes.dot(&w[1].amplitudes))
        .collect();
    Ok(AdiabaticSequence { r, q, stages, overlaps })
}
