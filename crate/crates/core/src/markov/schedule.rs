//! Interpolation schedules: the equal-angle schedule and sequences driven by a
//! meta-chain Q over a parameter set.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::interpolation::s_of_theta;
use crate::error::{Error, Result};

/// Which meta-chain produced a schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ScheduleSource {
    /// Equal angles θ_i = iπ/(2(r+1)).
    EqualAngle,
    /// q_{i,i+1} = 1.
    Sequential,
    /// A single parameter repeated.
    Single,
    /// i.i.d. uniform indices.
    Uniform { seed: u64 },
    Custom { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationSchedule {
    /// s_1, s_2, ... in application order.
    pub s: Vec<f64>,
    /// θ_0..θ_r when the schedule comes from angles.
    pub theta: Option<Vec<f64>>,
    pub source: ScheduleSource,
}

impl InterpolationSchedule {
    pub fn r(&self) -> usize {
        self.s.len()
    }
}

/// Largest r with sin²(π/(2(r+1))) ≥ π_g.
pub fn max_schedule_r(pi_g: f64) -> usize {
    let ratio = PI / (2.0 * pi_g.sqrt().asin());
    // the 1e-9 nudge keeps exact cases such as π_g = 1/2 on the right side
    ((ratio + 1e-9).floor() as usize).saturating_sub(1)
}

pub fn equal_angle_theta(r: usize) -> Vec<f64> {
    (0..=r).map(|i| i as f64 * PI / (2.0 * (r + 1) as f64)).collect()
}

/// θ_i = iπ/(2(r+1)) and s_i = (1 − π_g/sin²θ_i)/(1 − π_g).
pub fn schedule_paper(pi_g: f64, r: usize) -> Result<InterpolationSchedule> {
    if !(pi_g > 0.0 && pi_g < 1.0) {
        return Err(Error::Precondition(format!("pi_g must lie in (0, 1), got {pi_g}")));
    }
    if r == 0 {
        return Err(Error::Precondition("schedule needs r >= 1".into()));
    }
    let max_r = max_schedule_r(pi_g);
    if r > max_r {
        return Err(Error::ROutOfRange { r, max_r });
    }
    let theta = equal_angle_theta(r);
    let s = theta[1..]
        .iter()
        .map(|&th| {
            let s = s_of_theta(pi_g, th);
            if s < 0.0 && s > -1e-12 {
                0.0
            } else {
                s
            }
        })
        .collect::<Vec<_>>();
    if let Some(&bad) = s.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::SOutOfRange(bad));
    }
    Ok(InterpolationSchedule { s, theta: Some(theta), source: ScheduleSource::EqualAngle })
}

/// q_{i,i+1} = 1, with the last state absorbing.
pub fn sequential_q(size: usize) -> DMatrix<f64> {
    DMatrix::from_fn(size, size, |i, j| if j == (i + 1).min(size - 1) { 1.0 } else { 0.0 })
}

pub fn uniform_q(size: usize) -> DMatrix<f64> {
    DMatrix::from_element(size, size, 1.0 / size as f64)
}

/// Walks the meta-chain Q over `params` for `len` steps starting at the
/// 1-based index `start`, emitting the visited parameters.
pub fn schedule_from_q(
    params: &[f64],
    q: &DMatrix<f64>,
    start: usize,
    len: usize,
    seed: u64,
) -> Result<InterpolationSchedule> {
    let size = params.len();
    if size == 0 || q.nrows() != size || q.ncols() != size {
        return Err(Error::NonStochasticQ(format!(
            "Q is {}x{} but there are {size} parameters",
            q.nrows(),
            q.ncols()
        )));
    }
    for i in 0..size {
        let row = q.row(i);
        if row.iter().any(|&v| !v.is_finite() || !(0.0..=1.0).contains(&v)) {
            return Err(Error::NonStochasticQ(format!("row {i} has an entry outside [0, 1]")));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NonStochasticQ(format!("row {i} sums to {sum}")));
        }
    }
    if let Some(&bad) = params.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::SOutOfRange(bad));
    }
    if !(1..=size).contains(&start) {
        return Err(Error::Precondition(format!("start index {start} outside 1..={size}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = start - 1;
    let mut s = Vec::with_capacity(len);
    for step in 0..len {
        if step > 0 {
            state = sample_row(q, state, rng.random::<f64>());
        }
        s.push(params[state]);
    }
    Ok(InterpolationSchedule { s, theta: None, source: classify(q, seed) })
}

fn sample_row(q: &DMatrix<f64>, from: usize, u: f64) -> usize {
    let mut acc = 0.0;
    let mut last_positive = from;
    for j in 0..q.ncols() {
        let w = q[(from, j)];
        if w > 0.0 {
            acc += w;
            last_positive = j;
            if u < acc {
                return j;
            }
        }
    }
    last_positive
}

fn classify(q: &DMatrix<f64>, seed: u64) -> ScheduleSource {
    let size = q.nrows();
    if size == 1 {
        ScheduleSource::Single
    } else if q == &sequential_q(size) {
        ScheduleSource::Sequential
    } else if q.iter().all(|&v| (v - 1.0 / size as f64).abs() < 1e-15) {
        ScheduleSource::Uniform { seed }
    } else {
        ScheduleSource::Custom { seed }
    }
}
