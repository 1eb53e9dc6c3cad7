use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use interwalk_cli::{
    parse_config, run_batch, Algorithm, CliError, ExperimentSpec, Format, GeneratorSpec, OutputSpec, Result,
};

#[derive(Parser)]
#[command(name = "interwalk", version, about = "Interpolated quantum walk experiments")]
struct Cli {
    /// Worker threads for batch configs and parallel kernels.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// -v for info, -vv for debug logging.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hitting time of the marked vertex.
    Ht(RunArgs),
    /// Search with phase estimation.
    SearchQpe(RunArgs),
    /// Search with fast-forwarding.
    SearchQff(RunArgs),
    /// Prepare the stationary state by running search backwards.
    Qsample(RunArgs),
    /// Success probability for r = 1..=r, plus the fixed-s baseline.
    Curve(RunArgs),
    /// Chain sequence with consecutive overlaps of at least q.
    Adiabatic(RunArgs),
    /// Write the generated chain.
    Gen(RunArgs),
    /// Run every spec in a config file as written.
    Run {
        config: PathBuf,
    },
}

#[derive(Args, Default)]
struct RunArgs {
    /// JSON spec, or an array of specs run as a batch.
    #[arg(long)]
    config: Option<PathBuf>,
    /// cycle | grid2d-torus | complete | metropolis-random | file
    #[arg(long)]
    generator: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    weight_min: Option<f64>,
    #[arg(long)]
    weight_max: Option<f64>,
    /// Row-stochastic matrix as a JSON array of rows.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    marked: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    q: Option<f64>,
    /// measured | max-over-vertices
    #[arg(long)]
    ht_choice: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
}

impl RunArgs {
    fn generator(&self, base: Option<&GeneratorSpec>) -> Result<GeneratorSpec> {
        let kind = match (&self.generator, base) {
            (Some(kind), _) => kind.clone(),
            (None, Some(base)) => {
                let mut g = base.clone();
                self.patch(&mut g);
                return Ok(g);
            }
            (None, None) if self.file.is_some() => "file".into(),
            (None, None) => "cycle".into(),
        };
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| CliError::Spec(format!("{kind} needs --{name}")));
        let mut g = match kind.as_str() {
            "cycle" => GeneratorSpec::Cycle { n: need(self.n, "n")? },
            "grid2d-torus" => GeneratorSpec::Torus { width: need(self.width, "width")?, height: need(self.height, "height")? },
            "complete" => GeneratorSpec::Complete { n: need(self.n, "n")? },
            "metropolis-random" => GeneratorSpec::MetropolisRandom {
                n: need(self.n, "n")?,
                seed: self.seed.unwrap_or(0),
                weight_min: 0.2,
                weight_max: 1.0,
            },
            "file" => GeneratorSpec::File {
                path: self.file.clone().ok_or_else(|| CliError::Spec("file generator needs --file".into()))?,
            },
            other => return Err(CliError::Spec(format!("unknown generator {other:?}"))),
        };
        self.patch(&mut g);
        Ok(g)
    }

    fn patch(&self, g: &mut GeneratorSpec) {
        match g {
            GeneratorSpec::Cycle { n } | GeneratorSpec::Complete { n } => *n = self.n.unwrap_or(*n),
            GeneratorSpec::Torus { width, height } => {
                *width = self.width.unwrap_or(*width);
                *height = self.height.unwrap_or(*height);
            }
            GeneratorSpec::MetropolisRandom { n, seed, weight_min, weight_max } => {
                *n = self.n.unwrap_or(*n);
                *seed = self.seed.unwrap_or(*seed);
                *weight_min = self.weight_min.unwrap_or(*weight_min);
                *weight_max = self.weight_max.unwrap_or(*weight_max);
            }
            GeneratorSpec::File { path } => {
                if let Some(f) = &self.file {
                    *path = f.clone();
                }
            }
        }
    }

    fn format(&self) -> Result<Option<Format>> {
        match self.format.as_deref() {
            None => Ok(None),
            Some("csv") => Ok(Some(Format::Csv)),
            Some("json") => Ok(Some(Format::Json)),
            Some(other) => Err(CliError::Spec(format!("unknown format {other:?}"))),
        }
    }

    /// Specs from --config with inline flags applied on top, or one spec
    /// built from the flags alone.
    fn specs(&self, algorithm: Algorithm) -> Result<Vec<ExperimentSpec>> {
        let format = self.format()?;
        let mut specs = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => {
                let out = self.out.clone().ok_or_else(|| CliError::Spec("--out is required without --config".into()))?;
                vec![ExperimentSpec {
                    generator: self.generator(None)?,
                    algorithm,
                    marked: 0,
                    r: None,
                    epsilon: None,
                    mode: None,
                    q: None,
                    ht_choice: None,
                    output: OutputSpec { path: out, format: None },
                }]
            }
        };
        if specs.len() > 1 && self.out.is_some() {
            return Err(CliError::Spec("--out cannot override a batch".into()));
        }
        for spec in &mut specs {
            if spec.algorithm != algorithm {
                return Err(CliError::Spec(format!(
                    "config asks for {} but the subcommand runs {algorithm}; use `interwalk run` for mixed batches",
                    spec.algorithm
                )));
            }
            if self.config.is_some() {
                spec.generator = self.generator(Some(&spec.generator))?;
            }
            spec.marked = self.marked.unwrap_or(spec.marked);
            spec.r = self.r.or(spec.r);
            spec.epsilon = self.eps.or(spec.epsilon);
            spec.mode = self.mode.clone().or(spec.mode.take());
            spec.q = self.q.or(spec.q);
            spec.ht_choice = self.ht_choice.clone().or(spec.ht_choice.take());
            if let Some(out) = &self.out {
                spec.output.path = out.clone();
            }
            spec.output.format = format.or(spec.output.format);
        }
        Ok(specs)
    }
}

fn report(err: &CliError) {
    let record = serde_json::to_string(&err.record()).expect("error records serialize");
    eprintln!("{record}");
}

fn subcommand_specs(command: &Command) -> Result<Vec<ExperimentSpec>> {
    let (algorithm, args) = match command {
        Command::Ht(a) => (Algorithm::Ht, a),
        Command::SearchQpe(a) => (Algorithm::Alg1, a),
        Command::SearchQff(a) => (Algorithm::Alg2, a),
        Command::Qsample(a) => (Algorithm::Qsample, a),
        Command::Curve(a) => (Algorithm::Curve, a),
        Command::Adiabatic(a) => (Algorithm::Adiabatic, a),
        Command::Gen(a) => (Algorithm::Gen, a),
        Command::Run { .. } => unreachable!("run takes its specs from the config"),
    };
    args.specs(algorithm)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let specs = match &cli.command {
        Command::Run { config } => std::fs::read_to_string(config)
            .map_err(|e| CliError::Io(format!("{}: {e}", config.display())))
            .and_then(|text| parse_config(&text)),
        other => subcommand_specs(other),
    };
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1);
    let outcome = specs.and_then(|specs| run_batch(&specs, jobs));
    let results = match outcome {
        Ok(results) => results,
        Err(err) => {
            report(&err);
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let mut code = 0;
    for result in results {
        match result {
            Ok(done) => {
                for path in &done.written {
                    println!("{}", path.display());
                }
            }
            Err(err) => {
                report(&err);
                if code == 0 {
                    code = err.exit_code();
                }
            }
        }
    }
    ExitCode::from(code as u8)
}
