//! Experiment descriptions and instance generation.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use interwalk::markov::generators;
use interwalk::{Error as CoreError, MarkovChain};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    #[serde(rename = "grid2d-torus")]
    Torus {
        width: usize,
        height: usize,
    },
    Complete {
        n: usize,
    },
    MetropolisRandom {
        n: usize,
        seed: u64,
        #[serde(default = "default_weight_min")]
        weight_min: f64,
        #[serde(default = "default_weight_max")]
        weight_max: f64,
    },
    /// JSON array of rows, used as given.
    File {
        path: PathBuf,
    },
}

fn default_weight_min() -> f64 {
    0.2
}

fn default_weight_max() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Ht,
    Alg1,
    Alg2,
    Qsample,
    Curve,
    Adiabatic,
    Gen,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Ht => "ht",
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Qsample => "qsample",
            Algorithm::Curve => "curve",
            Algorithm::Adiabatic => "adiabatic",
            Algorithm::Gen => "gen",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub generator: GeneratorSpec,
    pub algorithm: Algorithm,
    #[serde(default)]
    pub marked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Overlap threshold of the adiabatic sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Hitting time fed into Γ₁: "measured" or "max-over-vertices".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ht_choice: Option<String>,
    pub output: OutputSpec,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<ExperimentSpec> {
        serde_json::from_str(text).map_err(|e| CliError::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs always serialize")
    }

    pub fn r(&self) -> Result<usize> {
        self.r.ok_or_else(|| CliError::Spec(format!("{} needs r", self.algorithm)))
    }

    pub fn epsilon(&self) -> Result<f64> {
        self.epsilon.ok_or_else(|| CliError::Spec(format!("{} needs epsilon", self.algorithm)))
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or(match self.algorithm {
            Algorithm::Curve => Format::Csv,
            _ => Format::Json,
        })
    }

    /// Seeds that determine the run, for the sidecar.
    pub fn seeds(&self) -> Vec<(String, u64)> {
        match &self.generator {
            GeneratorSpec::MetropolisRandom { seed, .. } => vec![("generator".into(), *seed)],
            _ => Vec::new(),
        }
    }
}

/// Configs hold one spec or a batch.
pub fn parse_config(text: &str) -> Result<Vec<ExperimentSpec>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Spec(e.to_string()))?;
    let specs = match value {
        serde_json::Value::Array(items) => items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<std::result::Result<Vec<ExperimentSpec>, _>>(),
        other => serde_json::from_value(other).map(|s| vec![s]),
    };
    specs.map_err(|e| CliError::Spec(e.to_string()))
}

pub fn generate(spec: &GeneratorSpec) -> Result<MarkovChain> {
    let chain = match spec {
        GeneratorSpec::Cycle { n } => generators::cycle(*n)?,
        GeneratorSpec::Torus { width, height } => generators::torus(*width, *height)?,
        GeneratorSpec::Complete { n } => generators::complete(*n)?,
        GeneratorSpec::MetropolisRandom { n, seed, weight_min, weight_max } => {
            generators::metropolis_random(*n, *seed, *weight_min, *weight_max)?
        }
        GeneratorSpec::File { path } => load_rows(path)?,
    };
    Ok(chain)
}

fn load_rows(path: &Path) -> Result<MarkovChain> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("{}: {e}", path.display())))?;
    MarkovChain::from_rows(&rows).map_err(|e| match e {
        CoreError::BadSpec(m) => CliError::Spec(m),
        other => other.into(),
    })
}
