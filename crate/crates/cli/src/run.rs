//! Executes one experiment and writes its results plus a sidecar.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use interwalk::markov::{adiabatic_sequence, discriminant_of, hitting_time_spectral};
use interwalk::search::{
    alg1_search_with, alg2_search, qsample, success_curve, Alg1Mode, Alg1Options, Alg2Mode, HtChoice, RunReport,
};

use crate::error::{CliError, Result};
use crate::spec::{generate, Algorithm, ExperimentSpec, Format};

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub written: Vec<PathBuf>,
    pub note: Option<String>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    spec: &'a ExperimentSpec,
    version: &'static str,
    seeds: BTreeMap<String, u64>,
    outputs: Vec<String>,
    note: Option<String>,
    finished_unix: u64,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct StageOut {
    s: f64,
    theta: f64,
    stationary: Vec<f64>,
    /// ‖D(s)v − v‖_∞.
    residual: f64,
}

#[derive(Serialize)]
struct AdiabaticOut {
    r: usize,
    q: f64,
    overlaps: Vec<f64>,
    stages: Vec<StageOut>,
}

#[derive(Serialize)]
struct GenOut {
    n: usize,
    rows: Vec<Vec<f64>>,
    stationary: Vec<f64>,
    lazy: bool,
    reversible: bool,
}

#[derive(Serialize)]
struct QsampleOut {
    report: RunReport,
    fidelity: f64,
    filter_estimate: f64,
}

#[derive(Serialize)]
struct BaselineCsvRow {
    r: usize,
    s: f64,
    p_succ: f64,
}

/// Writes `bytes` to a temporary file next to `path` and renames it over.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

pub fn baseline_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.baseline.csv"))
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("results always serialize");
    bytes.push(b'\n');
    bytes
}

fn csv_bytes<T: Serialize>(rows: &[T], header: &[&str]) -> Result<Vec<u8>> {
    let mut writer = csv::WriterBuilder::new().has_headers(!rows.is_empty()).from_writer(Vec::new());
    if rows.is_empty() {
        writer.write_record(header)?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

const CURVE_HEADER: [&str; 6] = ["r", "p_succ", "bound", "controlled_w_calls", "total_leak", "mode"];

fn parse<T: std::str::FromStr<Err = interwalk::Error>>(mode: Option<&str>, default: T) -> Result<T> {
    match mode {
        Some(m) => m.parse().map_err(|e: interwalk::Error| CliError::Spec(e.to_string())),
        None => Ok(default),
    }
}

fn require_json(spec: &ExperimentSpec) -> Result<()> {
    if spec.format() == Format::Csv {
        return Err(CliError::Spec(format!("{} results are JSON only", spec.algorithm)));
    }
    Ok(())
}

/// Result files produced by a run: (path, bytes).
type Files = Vec<(PathBuf, Vec<u8>)>;

fn execute(spec: &ExperimentSpec) -> Result<(Files, Option<String>, Option<CliError>)> {
    let chain = generate(&spec.generator)?;
    let out = spec.output.path.clone();
    let g = spec.marked;
    let single = |bytes| -> Files { vec![(out.clone(), bytes)] };
    match spec.algorithm {
        Algorithm::Ht => {
            require_json(spec)?;
            let ht = hitting_time_spectral(&chain, &[g])?;
            Ok((single(json_bytes(&ht)), None, None))
        }
        Algorithm::Alg1 => {
            require_json(spec)?;
            let options = Alg1Options {
                mode: parse(spec.mode.as_deref(), Alg1Mode::default())?,
                ht: parse(spec.ht_choice.as_deref(), HtChoice::default())?,
                tau: None,
            };
            let report = alg1_search_with(&chain, g, spec.r()?, spec.epsilon()?, &options)?;
            Ok((single(json_bytes(&report)), None, None))
        }
        Algorithm::Alg2 => {
            require_json(spec)?;
            let mode = parse(spec.mode.as_deref(), Alg2Mode::default())?;
            let report = alg2_search(&chain, g, spec.r()?, spec.epsilon()?, mode)?;
            Ok((single(json_bytes(&report)), None, None))
        }
        Algorithm::Qsample => {
            require_json(spec)?;
            let mode = parse(spec.mode.as_deref(), Alg2Mode::default())?;
            let result = qsample(&chain, g, spec.r()?, spec.epsilon()?, mode)?;
            let body = QsampleOut { report: result.report, fidelity: result.fidelity, filter_estimate: result.filter_estimate };
            Ok((single(json_bytes(&body)), None, None))
        }
        Algorithm::Curve => {
            if parse(spec.mode.as_deref(), Alg1Mode::ProjectedFilter)? != Alg1Mode::ProjectedFilter {
                return Err(CliError::Spec("curves run in projected-filter mode".into()));
            }
            let curve = success_curve(&chain, g, spec.r()?, spec.epsilon()?)?;
            let main = match spec.format() {
                Format::Csv => csv_bytes(&curve.rows, &CURVE_HEADER)?,
                Format::Json => json_bytes(&curve),
            };
            let baseline: Vec<BaselineCsvRow> =
                curve.baseline.iter().map(|b| BaselineCsvRow { r: b.r, s: b.s, p_succ: b.p_succ }).collect();
            let files = vec![(out.clone(), main), (baseline_path(&out), csv_bytes(&baseline, &["r", "s", "p_succ"])?)];
            let partial = curve.truncated_at.map(|r| CliError::Partial {
                code: "schedule_infeasible",
                exit: 3,
                message: format!("curve truncated at r = {r}: {}", curve.note.clone().unwrap_or_default()),
            });
            Ok((files, curve.note, partial))
        }
        Algorithm::Adiabatic => {
            require_json(spec)?;
            let q = spec.q.ok_or_else(|| CliError::Spec("adiabatic needs q".into()))?;
            let seq = adiabatic_sequence(&chain, g, q)?;
            let stages = seq
                .stages
                .iter()
                .map(|st| {
                    let d = discriminant_of(st.chain.matrix());
                    let residual = (&d * &st.amplitudes - &st.amplitudes).amax();
                    StageOut { s: st.s, theta: st.theta, stationary: st.amplitudes.iter().map(|a| a * a).collect(), residual }
                })
                .collect();
            let body = AdiabaticOut { r: seq.r, q: seq.q, overlaps: seq.overlaps, stages };
            Ok((single(json_bytes(&body)), None, None))
        }
        Algorithm::Gen => {
            require_json(spec)?;
            let n = chain.n();
            let body = GenOut {
                n,
                rows: (0..n).map(|x| (0..n).map(|y| chain.prob(x, y)).collect()).collect(),
                stationary: chain.stationary()?.iter().copied().collect(),
                lazy: chain.is_lazy(),
                reversible: chain.is_reversible(),
            };
            Ok((single(json_bytes(&body)), None, None))
        }
    }
}

/// Runs `spec`, writing the results and `<out>.meta.json`. A run that wrote
/// partial results returns [`CliError::Partial`] after writing them.
pub fn run(spec: &ExperimentSpec) -> Result<RunOutcome> {
    let started = Instant::now();
    log::info!("running {} -> {}", spec.algorithm, spec.output.path.display());
    let (files, note, partial) = execute(spec)?;
    for (path, bytes) in &files {
        write_atomic(path, bytes)?;
    }
    let written: Vec<PathBuf> = files.into_iter().map(|(p, _)| p).collect();
    let sidecar = Sidecar {
        spec,
        version: env!("CARGO_PKG_VERSION"),
        seeds: spec.seeds().into_iter().collect(),
        outputs: written.iter().map(|p| p.display().to_string()).collect(),
        note: note.clone(),
        finished_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        elapsed_ms: started.elapsed().as_millis(),
    };
    let meta = sidecar_path(&spec.output.path);
    write_atomic(&meta, &json_bytes(&sidecar))?;
    if let Some(err) = partial {
        return Err(err);
    }
    let mut written = written;
    written.push(meta);
    Ok(RunOutcome { written, note })
}

/// Runs every spec on a pool of `jobs` threads; results come back in input
/// order.
pub fn run_batch(specs: &[ExperimentSpec], jobs: usize) -> Result<Vec<Result<RunOutcome>>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(pool.install(|| specs.par_iter().map(run).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{GeneratorSpec, OutputSpec};

    fn spec(dir: &Path, algorithm: Algorithm, generator: GeneratorSpec, file: &str) -> ExperimentSpec {
        ExperimentSpec {
            generator,
            algorithm,
            marked: 0,
            r: None,
            epsilon: None,
            mode: None,
            q: None,
            ht_choice: None,
            output: OutputSpec { path: dir.join(file), format: None },
        }
    }

    #[test]
    fn ht_on_two_states_is_two() {
        let dir = tempfile::tempdir().unwrap();
        let rows = dir.path().join("two.json");
        std::fs::write(&rows, "[[0.5, 0.5], [0.5, 0.5]]").unwrap();
        let mut s = spec(dir.path(), Algorithm::Ht, GeneratorSpec::File { path: rows }, "ht.json");
        s.marked = 1;
        let outcome = run(&s).unwrap();
        assert_eq!(std::fs::read_to_string(&s.output.path).unwrap().trim(), "2.0");
        assert!(outcome.written.contains(&sidecar_path(&s.output.path)));
    }

    #[test]
    fn truncated_curve_is_written_and_flagged() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = spec(dir.path(), Algorithm::Curve, GeneratorSpec::Cycle { n: 8 }, "curve.csv");
        s.r = Some(5);
        s.epsilon = Some(0.01);
        let err = run(&s).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let text = std::fs::read_to_string(&s.output.path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "r,p_succ,bound,controlled_w_calls,total_leak,mode");
        assert_eq!(lines.count(), 3);
        assert!(baseline_path(&s.output.path).exists());
        assert!(sidecar_path(&s.output.path).exists());
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = spec(dir.path(), Algorithm::Alg1, GeneratorSpec::Cycle { n: 8 }, "a.json");
        assert_eq!(run(&s).unwrap_err().exit_code(), 2);
        s.r = Some(11);
        s.epsilon = Some(0.01);
        assert_eq!(run(&s).unwrap_err().exit_code(), 3);
        s.r = Some(2);
        s.mode = Some("explicit".into());
        s.epsilon = Some(1e-9);
        assert_eq!(run(&s).unwrap_err().exit_code(), 4);
        s.mode = Some("nope".into());
        assert_eq!(run(&s).unwrap_err().code(), "invalid_spec");
    }
}
