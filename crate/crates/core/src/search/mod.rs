//! Search drivers: phase-estimation search, fast-forwarding search,
//! qsampling by reversal, and success curves.

pub mod alg1;
pub mod alg2;
pub mod curve;
pub mod report;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SpectralData;
use crate::markov::{schedule_paper, InterpolatedFamily, InterpolationSchedule, MarkovChain};
use crate::walkspace::WalkOperator;

pub use alg1::{alg1_search, alg1_search_with, Alg1Options};
pub use alg2::{alg2_search, qsample, Alg2Plan, QsampleOutput};
pub use curve::{baseline, success_curve, BaselineRow, CurveReport, CurveRow};
pub use report::{RunReport, StepRecord};

/// (cos^{r+1}(π/(2(r+1))) − ε)², clamped at 0.
pub fn bound(r: usize, epsilon: f64) -> f64 {
    let c = (PI / (2.0 * (r + 1) as f64)).cos().powi(r as i32 + 1);
    (c - epsilon).max(0.0).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alg1Mode {
    /// Closed-form Π_{0^τ} U_qee per step.
    #[default]
    ProjectedFilter,
    /// The circuit, with the ancilla projected to |0^τ⟩ between steps.
    Explicit,
    /// The circuit with the ancilla carried across steps unreset.
    ExplicitLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alg2Mode {
    /// The five-register circuit with a sparse flag block.
    #[default]
    ExplicitSparse,
    /// The five-register circuit as one dense vector.
    ExplicitDense,
    /// Product of the closed-form fast-forwarding filters.
    FilterProduct,
}

/// Which hitting time enters Γ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HtChoice {
    #[default]
    Measured,
    MaxOverVertices,
}

macro_rules! kebab_enum {
    ($ty:ty, $($variant:ident => $name:literal),+) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(Self::$variant),)+
                    other => Err(Error::BadSpec(format!("unknown mode {other:?}"))),
                }
            }
        }
    };
}

kebab_enum!(Alg1Mode, ProjectedFilter => "projected-filter", Explicit => "explicit", ExplicitLiteral => "explicit-literal");
kebab_enum!(Alg2Mode, ExplicitSparse => "explicit-sparse", ExplicitDense => "explicit-dense", FilterProduct => "filter-product");
kebab_enum!(HtChoice, Measured => "measured", MaxOverVertices => "max-over-vertices");

/// Everything one schedule step needs.
pub(crate) struct Step {
    pub s: f64,
    pub theta: f64,
    pub op: WalkOperator,
    pub spectrum: SpectralData,
    pub v0: DVector<f64>,
}

pub(crate) struct Prepared {
    pub family: InterpolatedFamily,
    pub schedule: InterpolationSchedule,
    pub steps: Vec<Step>,
}

pub(crate) fn prepare(chain: &MarkovChain, g: usize, r: usize) -> Result<Prepared> {
    chain.require_lazy()?;
    let family = InterpolatedFamily::new(chain, &[g])?;
    let schedule = schedule_paper(family.pi_marked(), r)?;
    let theta = schedule.theta.clone().expect("equal-angle schedules carry angles");
    let steps = schedule
        .s
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let chain_s = family.chain(s)?;
            Ok(Step {
                s,
                theta: theta[idx + 1],
                op: WalkOperator::new(&chain_s),
                spectrum: chain_s.spectrum(),
                v0: family.v0(s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared { family, schedule, steps })
}

/// Leak bookkeeping: the component of the previous stationary vector
/// orthogonal to v0(s_i), passed through a per-eigenvalue scale.
pub(crate) struct LeakTracker {
    prev: DVector<f64>,
    product: f64,
}

impl LeakTracker {
    pub fn new(start: DVector<f64>) -> LeakTracker {
        LeakTracker { prev: start, product: 1.0 }
    }

    /// Returns the leak of this step and advances to `step`.
    pub fn advance(&mut self, step: &Step, scale: impl Fn(f64) -> f64) -> f64 {
        let beta = step.v0.dot(&self.prev);
        let residual = &self.prev - &step.v0 * beta;
        let mut sum = 0.0;
        for k in 1..step.spectrum.len() {
            let alpha = step.spectrum.vectors.column(k).dot(&residual);
            let phi = step.spectrum.values[k].clamp(-1.0, 1.0).acos();
            sum += (alpha * scale(phi)).powi(2);
        }
        let leak = sum.sqrt() * self.product;
        self.product *= beta.abs();
        self.prev = step.v0.clone();
        leak
    }
}
