//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Supplementary lines rerun a check on lazy C_72
//! where the named instance has no feasible schedule at the requested r.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use interwalk::markov::{
    adiabatic_sequence, discriminant_of, generators, hitting_time_classical, hitting_time_spectral, max_schedule_r,
    InterpolatedFamily, MarkovChain,
};
use interwalk::oracle::{dt_apply, materialize, mc_hitting};
use interwalk::qff::{u_qff_explicit, u_qff_filter, QffConfig};
use interwalk::qpe::{attach_zero_ancilla, delta_bound, u_qee_explicit, QpeConfig};
use interwalk::search::{alg1_search, alg2_search, bound, qsample, Alg1Mode, Alg2Mode};
use interwalk::walkspace::{embed_system, WalkEigensystem, WalkOperator};

const CURVE_HEADER: &str = "r,p_succ,bound,controlled_w_calls,total_leak,mode";

struct Check {
    id: String,
    ok: bool,
    text: String,
}

/// Collects checks, then prints one line per criterion. Supplementary
/// checks are printed under their criterion and do not decide it.
#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn check(&mut self, id: &str, what: &str, ok: bool, detail: String) {
        self.checks.push(Check { id: id.to_string(), ok, text: format!("{what}: {detail}") });
    }

    /// Prints the report and returns the number of failed criteria.
    fn report(&self) -> usize {
        let mut failed = 0;
        for id in 1..=11 {
            let main: Vec<&Check> = self.checks.iter().filter(|c| c.id == id.to_string()).collect();
            let ok = !main.is_empty() && main.iter().all(|c| c.ok);
            let texts: Vec<&str> = main.iter().map(|c| c.text.as_str()).collect();
            println!("{} criterion {id:>2}: {}", if ok { "PASS" } else { "FAIL" }, texts.join(" | "));
            failed += !ok as usize;
            for c in self.checks.iter().filter(|c| c.id == format!("{id} supplementary")) {
                println!("        supplementary {}: {}", if c.ok { "pass" } else { "fail" }, c.text);
            }
        }
        failed
    }
}

fn lazy_chain(n: usize, seed: u64) -> MarkovChain {
    generators::metropolis_random(n, seed, 0.2, 1.0).unwrap()
}

/// Metropolis chain on K_n with target weight `w0` on vertex 0 and 1 elsewhere.
fn light_mark(n: usize, w0: f64, seed: u64) -> MarkovChain {
    let weights = DMatrix::from_fn(n, n, |x, y| {
        if x == y {
            1.0
        } else {
            let (a, b) = (x.min(y), x.max(y));
            0.5 + 0.5 * (((a * 31 + b * 17) as u64 ^ seed) % 7) as f64 / 7.0
        }
    });
    let mut target = vec![1.0; n];
    target[0] = w0;
    generators::metropolis(&weights, &target).unwrap()
}

fn unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// cos of the eigenphases of W restricted to span(A, WA), A = {|x⟩|0̄⟩}.
/// The basis comes from the Gram matrix of the part of WA orthogonal to A,
/// and the restricted block is real orthogonal, so its symmetric part has
/// eigenvalues cos φ.
fn restricted_cosines(w: &DMatrix<f64>, n: usize) -> (Vec<f64>, f64) {
    let d = n * n;
    let a = DMatrix::from_fn(d, n, |i, x| if i == x * n { 1.0 } else { 0.0 });
    let wa = w * &a;
    let perp = &wa - &a * (a.transpose() * &wa);
    let eig = (perp.transpose() * &perp).symmetric_eigen();
    let mut cols: Vec<DVector<f64>> = a.column_iter().map(|c| c.into_owned()).collect();
    for j in 0..n {
        if eig.eigenvalues[j] > 1e-12 {
            cols.push(&perp * eig.eigenvectors.column(j) / eig.eigenvalues[j].sqrt());
        }
    }
    let q = DMatrix::from_columns(&cols);
    let block = q.transpose() * w * &q;
    let orth = (block.transpose() * &block - DMatrix::identity(block.nrows(), block.ncols())).amax();
    let sym = (&block + block.transpose()) * 0.5;
    let mut cosines: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    cosines.sort_by(f64::total_cmp);
    (cosines, orth)
}

fn spectral_correspondence(suite: &mut Suite) {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut orth = 0.0f64;
    let mut cases = 0;
    let mut sizes_ok = true;
    for i in 0..20u64 {
        let n = if i < 10 { 4 } else { 8 };
        let family = InterpolatedFamily::new(&lazy_chain(n, 500 + i), &[0]).unwrap();
        for s in [0.0, 0.3, 0.7] {
            let p = family.chain(s).unwrap();
            let w = materialize(&WalkOperator::new(&p)).unwrap().value;
            let imag = w.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let (got, o) = restricted_cosines(&w.map(|z| z.re), n);
            orth = orth.max(o).max(imag);
            // {0} ∪ {±arccos λ_k}: cos of the expected phases is 1 and each λ_k twice.
            let lambda = family.spectrum(s).unwrap().values;
            let mut want = vec![1.0];
            for l in lambda.iter().skip(1) {
                let phi = l.clamp(-1.0, 1.0).acos();
                want.push(phi.cos());
                want.push((-phi).cos());
            }
            want.sort_by(f64::total_cmp);
            sizes_ok &= got.len() == want.len();
            for (a, b) in got.iter().zip(&want) {
                worst = worst.max((a - b).abs());
            }
            cases += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    suite.check(
        "1",
        "eigenphases of W(s) on the walk space match the discriminant",
        sizes_ok && worst <= 1e-9 && orth <= 1e-9 && secs < 10.0,
        format!("{cases} cases, max |Δcos φ| = {worst:.2e}, block residual {orth:.1e}, {secs:.2}s"),
    );
}

fn hitting_times(suite: &mut Suite) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let n = rng.random_range(2..=16usize);
        let g = rng.random_range(0..n);
        let p = lazy_chain(n, 9000 + i);
        let spectral = hitting_time_spectral(&p, &[g]).unwrap();
        let linear = hitting_time_classical(&p, &[g]).unwrap();
        worst = worst.max((spectral - linear).abs() / linear.abs().max(1e-300));
    }
    let mut mc_worst = 0.0f64;
    let mut instances: Vec<MarkovChain> = (0..3).map(|i| lazy_chain(4 + 2 * i, 300 + i as u64)).collect();
    instances.push(generators::cycle(8).unwrap());
    instances.push(generators::torus(3, 3).unwrap());
    for (i, p) in instances.iter().enumerate() {
        let exact = hitting_time_classical(p, &[0]).unwrap();
        let est = mc_hitting(p, &[0], 100_000, 77 + i as u64).unwrap().value;
        mc_worst = mc_worst.max((est.mean - exact).abs() / est.stderr);
    }
    let secs = started.elapsed().as_secs_f64();
    suite.check(
        "2",
        "spectral vs linear hitting time, and Monte Carlo",
        worst <= 1e-8 && mc_worst <= 4.0 && secs < 60.0,
        format!("50 instances max rel {worst:.1e}; 5 MC runs of 1e5 max {mc_worst:.2} stderr; {secs:.2}s"),
    );
}

fn qff_accuracy(suite: &mut Suite) {
    let started = Instant::now();
    let mut trials = 0;
    let mut violations = 0;
    let mut worst_ratio = 0.0f64;
    let mut filter_gap = 0.0f64;
    for t in [4u64, 8, 16, 32, 64] {
        for eps in [1e-2, 1e-3] {
            for n in [2usize, 4, 8] {
                let seed = 100 * t + n as u64 + (eps * 1e4) as u64;
                let p = lazy_chain(n, seed);
                let config = QffConfig::new(t, eps).unwrap();
                let psi = unit_vector(n, seed);
                let op = WalkOperator::new(&p);
                let mut state = attach_zero_ancilla(&embed_system(&psi), config.tau);
                u_qff_explicit(&op, &config, &mut state, false).unwrap();
                let exact = dt_apply(&p.discriminant(), t, &psi).value;
                let err = (0..n).map(|x| (state[x * n] - Complex64::new(exact[x], 0.0)).norm_sqr()).sum::<f64>().sqrt();
                let filtered = u_qff_filter(&p.spectrum(), &config, &psi);
                for x in 0..n {
                    filter_gap = filter_gap.max((state[x * n].re - filtered[x]).abs());
                }
                worst_ratio = worst_ratio.max(err / eps);
                violations += (err > eps) as usize;
                trials += 1;
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    suite.check(
        "3",
        "‖Π U_qff ψ − D^t ψ‖ ≤ ε",
        violations == 0 && trials >= 30 && secs < 120.0,
        format!(
            "{trials} trials, {violations} over, max err/ε = {worst_ratio:.3}, explicit vs filter {filter_gap:.1e}, {secs:.2}s"
        ),
    );
}

fn qpe_contract(suite: &mut Suite) {
    let mut worst = 0.0f64;
    let mut bound_ok = true;
    let mut components = 0;
    for (n, seed) in [(3usize, 11u64), (4, 12)] {
        let p = lazy_chain(n, seed);
        let op = WalkOperator::new(&p);
        let es = WalkEigensystem::new(&op, &p.spectrum()).unwrap();
        for k in 1..n {
            for plus in [true, false] {
                let psi = es.psi(k, plus);
                let phase = if plus { es.phi[k] } else { -es.phi[k] };
                for tau in 3..=10u32 {
                    let big = 1u64 << tau;
                    let direct = (0..big).map(|l| Complex64::from_polar(1.0, l as f64 * phase)).sum::<Complex64>() / big as f64;
                    let mut state = attach_zero_ancilla(&psi, tau);
                    u_qee_explicit(&op, &QpeConfig::with_tau(tau), &mut state).unwrap();
                    // ⟨0^τ|ξ_k⟩ is the ancilla-zero block, a multiple of ψ_k.
                    let overlap: Complex64 = psi.iter().zip(&state[..n * n]).map(|(a, b)| a.conj() * b).sum();
                    worst = worst.max((overlap - direct).norm());
                    let b = delta_bound(es.phi[k], tau);
                    bound_ok &= direct.norm_sqr() <= b * b * (1.0 + 1e-12);
                    components += 1;
                }
            }
        }
    }
    suite.check(
        "4",
        "U_qee reproduces the phase-estimation amplitude, δ² within its bound",
        worst <= 1e-10 && bound_ok,
        format!("{components} eigencomponents, max deviation {worst:.1e}, bound holds: {bound_ok}"),
    );
}

fn c72() -> MarkovChain {
    generators::cycle(72).unwrap()
}

fn infeasible(suite: &mut Suite, id: &str, what: &str, result: Result<f64, interwalk::Error>, floor: f64) {
    match result {
        Ok(p) => suite.check(id, what, p + 1e-12 >= floor, format!("p = {p:.6}, required ≥ {floor:.6}")),
        Err(e) => suite.check(id, what, false, format!("{e}")),
    }
}

fn qpe_search(suite: &mut Suite) {
    let eps = 0.01;
    let floor = bound(11, eps).max(0.8);
    let c8 = generators::cycle(8).unwrap();
    let faithful = alg1_search(&c8, 0, 11, eps, Alg1Mode::ProjectedFilter).map(|r| r.p_succ);
    infeasible(suite, "5", "phase-estimation search on lazy C_8, r = 11, ε = 0.01", faithful, floor);

    let filter = alg1_search(&c8, 0, 3, eps, Alg1Mode::ProjectedFilter).unwrap();
    let explicit = alg1_search(&c8, 0, 3, eps, Alg1Mode::Explicit).unwrap();
    let gap = (filter.p_succ - explicit.p_succ).abs();
    suite.check(
        "5",
        "explicit vs projected-filter on lazy C_8 (largest feasible r = 3)",
        explicit.tau <= 14 && gap <= 1e-8,
        format!("τ = {}, p = {:.10} vs {:.10}, gap {gap:.1e}", explicit.tau, explicit.p_succ, filter.p_succ),
    );

    let report = alg1_search(&c72(), 0, 11, eps, Alg1Mode::ProjectedFilter).unwrap();
    suite.check(
        "5 supplementary",
        "phase-estimation search on lazy C_72, r = 11, ε = 0.01",
        report.p_succ >= 0.8 && report.p_succ + 1e-12 >= report.bound,
        format!("p = {:.6}, bound {:.6}, τ = {}", report.p_succ, report.bound, report.tau),
    );
}

fn qff_search(suite: &mut Suite) {
    let eps = 0.01;
    let c8 = generators::cycle(8).unwrap();
    let faithful = alg2_search(&c8, 0, 11, eps, Alg2Mode::FilterProduct).map(|r| r.p_succ);
    infeasible(suite, "6", "fast-forwarding search on lazy C_8, r = 11, ε = 0.01", faithful, bound(11, eps));

    let mut worst = 0.0f64;
    let mut cases = 0;
    for (n, w0, r, e) in [(2usize, 1.0, 1usize, 0.05), (3, 0.3, 2, 0.05), (4, 0.15, 3, 0.05), (4, 0.05, 4, 0.1)] {
        let p = light_mark(n, w0, 5);
        if max_schedule_r(p.stationary().unwrap()[0]) < r {
            continue;
        }
        let explicit = alg2_search(&p, 0, r, e, Alg2Mode::ExplicitSparse).unwrap();
        let filter = alg2_search(&p, 0, r, e, Alg2Mode::FilterProduct).unwrap();
        worst = worst.max((explicit.p_succ - filter.p_succ).abs() / (2.0 * e));
        cases += 1;
    }
    suite.check(
        "6",
        "explicit-sparse vs filter-product within 2ε (n ≤ 4, r ≤ 4)",
        cases == 4 && worst <= 1.0,
        format!("{cases} instances, max gap / 2ε = {worst:.2e}"),
    );

    let report = alg2_search(&c72(), 0, 11, eps, Alg2Mode::FilterProduct).unwrap();
    suite.check(
        "6 supplementary",
        "fast-forwarding search on lazy C_72, r = 11, ε = 0.01",
        report.p_succ + 1e-12 >= report.bound,
        format!("p = {:.6}, bound {:.6}, τ = {}", report.p_succ, report.bound, report.tau),
    );
}

fn interwalk_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_interwalk"))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = interwalk_bin().args(args).output().expect("interwalk binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

/// Rows of a curve CSV, checked against the column contract.
fn read_curve(path: &Path) -> Result<Vec<(usize, f64, f64)>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    if lines.next() != Some(CURVE_HEADER) {
        return Err("bad header".into());
    }
    lines
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 6 {
                return Err(format!("bad row {line:?}"));
            }
            let num = |i: usize| cols[i].parse::<f64>().map_err(|e| format!("{line:?}: {e}"));
            cols[3].parse::<u64>().map_err(|e| e.to_string())?;
            Ok((cols[0].parse().map_err(|e| format!("{e}"))?, num(1)?, num(2)?))
        })
        .collect()
}

fn curve_checks(rows: &[(usize, f64, f64)], r_max: usize) -> (bool, String) {
    let complete = rows.len() == r_max && rows.iter().enumerate().all(|(i, row)| row.0 == i + 1);
    let increasing = rows.windows(2).all(|w| w[1].2 > w[0].2);
    let above = rows.iter().all(|row| row.1 + 1e-12 >= row.2);
    let ok = complete && increasing && above;
    (ok, format!("{} of {r_max} rows, bound increasing: {increasing}, p ≥ bound: {above}", rows.len()))
}

fn success_curves(suite: &mut Suite, dir: &Path) {
    let out = dir.join("c8_curve.csv");
    let (code, stderr) =
        run_cli(&["curve", "--generator", "cycle", "--n", "8", "--r", "12", "--eps", "0.01", "--out", out.to_str().unwrap()]);
    let (ok, detail) = match read_curve(&out) {
        Ok(rows) => curve_checks(&rows, 12),
        Err(e) => (false, e),
    };
    suite.check(
        "7",
        "success curve on lazy C_8, r = 1..12",
        ok && code == 0,
        format!("exit {code}; {detail}; {}", stderr.lines().last().unwrap_or("")),
    );

    let out = dir.join("c72_curve.csv");
    let (code, _) =
        run_cli(&["curve", "--generator", "cycle", "--n", "72", "--r", "12", "--eps", "0.01", "--out", out.to_str().unwrap()]);
    let baseline = dir.join("c72_curve.baseline.csv");
    let (ok, detail) = match read_curve(&out) {
        Ok(rows) => curve_checks(&rows, 12),
        Err(e) => (false, e),
    };
    suite.check(
        "7 supplementary",
        "success curve on lazy C_72, r = 1..12",
        ok && code == 0 && baseline.exists(),
        format!("exit {code}; {detail}"),
    );
}

fn scaling(suite: &mut Suite) {
    let p = c72();
    let r = 11;
    let a1 = |eps| alg1_search(&p, 0, r, eps, Alg1Mode::ProjectedFilter).unwrap();
    let a2 = |eps| alg2_search(&p, 0, r, eps, Alg2Mode::FilterProduct).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        let ratio1 = a1(eps / 10.0).gamma_scale_calls / a1(eps).gamma_scale_calls;
        let ratio2 = a2(eps / 10.0).gamma_scale_calls / a2(eps).gamma_scale_calls;
        ok &= (8.0..=12.0).contains(&ratio1) && ratio2 <= 2.0;
        parts.push(format!("ε={eps:.0e}: {ratio1:.2}/{ratio2:.2}"));
    }
    let (t1, t2) = (a1(0.01).tau, a2(0.01).tau);
    suite.check(
        "8",
        "controlled-W call ratios per decade of ε on lazy C_72, r = 11 (alg1/alg2)",
        ok && t2 < t1,
        format!("{}; τ at ε = 0.01: {t1} vs {t2}", parts.join(", ")),
    );
}

fn qsampling(suite: &mut Suite) {
    let eps = 0.01;
    let c16 = generators::cycle(16).unwrap();
    let faithful = qsample(&c16, 0, 11, eps, Alg2Mode::FilterProduct).map(|q| q.fidelity);
    infeasible(suite, "9", "stationary-state preparation on lazy C_16, r = 11", faithful, 0.8);

    let q = qsample(&c72(), 0, 11, eps, Alg2Mode::FilterProduct).unwrap();
    suite.check(
        "9 supplementary",
        "stationary-state preparation on lazy C_72, r = 11",
        q.fidelity >= 0.8,
        format!("fidelity {:.6}", q.fidelity),
    );
}

fn adiabatic(suite: &mut Suite) {
    let q: f64 = 0.99;
    let expected_r = (PI / (2.0 * q.acos()) - 1.0).ceil() as usize;
    let overlap = (PI / (2.0 * (expected_r + 1) as f64)).cos();
    for (name, chain) in [("lazy C_72", c72()), ("lazy 9x9 torus", generators::torus(9, 9).unwrap())] {
        let seq = match adiabatic_sequence(&chain, 0, q) {
            Ok(seq) => seq,
            Err(e) => {
                suite.check("10", &format!("adiabatic sequence on {name}"), false, e.to_string());
                continue;
            }
        };
        let dev = seq.overlaps.iter().map(|o| (o - overlap).abs()).fold(0.0, f64::max);
        let at_least_q = seq.overlaps.iter().all(|&o| o >= q);
        let residual = seq
            .stages
            .iter()
            .map(|st| (discriminant_of(st.chain.matrix()) * &st.amplitudes - &st.amplitudes).amax())
            .fold(0.0, f64::max);
        suite.check(
            "10",
            &format!("adiabatic sequence on {name}, q = 0.99"),
            seq.r == expected_r && seq.overlaps.len() == expected_r && dev <= 1e-12 && at_least_q && residual <= 1e-10,
            format!("r = {} (expected {expected_r}), overlap dev {dev:.1e}, eigen residual {residual:.1e}", seq.r),
        );
    }
}

fn result_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.to_string_lossy().ends_with(".meta.json"))
        .collect();
    files.sort();
    files
}

fn determinism(suite: &mut Suite, root: &Path) {
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("ht.json", vec!["ht", "--generator", "metropolis-random", "--n", "12", "--seed", "7"]),
        ("gen.json", vec!["gen", "--generator", "metropolis-random", "--n", "8", "--seed", "3"]),
        ("alg1.json", vec!["search-qpe", "--n", "72", "--r", "11", "--eps", "0.01"]),
        ("alg2.json", vec!["search-qff", "--n", "72", "--r", "11", "--eps", "0.01", "--mode", "filter-product"]),
        ("alg2_sparse.json", vec!["search-qff", "--n", "8", "--r", "3", "--eps", "0.05"]),
        ("qsample.json", vec!["qsample", "--n", "72", "--r", "11", "--eps", "0.01", "--mode", "filter-product"]),
        ("curve.csv", vec!["curve", "--n", "72", "--r", "12", "--eps", "0.01"]),
        ("c8.csv", vec!["curve", "--n", "8", "--r", "12", "--eps", "0.01"]),
        ("adiabatic.json", vec!["adiabatic", "--n", "72", "--q", "0.99"]),
    ];
    let mut dirs = Vec::new();
    for attempt in 0..2 {
        let dir = root.join(format!("run{attempt}"));
        std::fs::create_dir_all(&dir).unwrap();
        for (file, args) in &runs {
            let out = dir.join(file);
            let mut full: Vec<&str> = args.clone();
            let jobs = if attempt == 0 { "1" } else { "4" };
            full.extend(["--out", out.to_str().unwrap(), "--jobs", jobs]);
            run_cli(&full);
        }
        dirs.push(dir);
    }
    let (a, b) = (result_files(&dirs[0]), result_files(&dirs[1]));
    let names = |v: &[PathBuf]| v.iter().map(|p| p.file_name().unwrap().to_owned()).collect::<Vec<_>>();
    let mut differing = Vec::new();
    for (x, y) in a.iter().zip(&b) {
        if std::fs::read(x).unwrap() != std::fs::read(y).unwrap() {
            differing.push(x.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    suite.check(
        "11",
        "repeated runs give byte-identical result files (1 vs 4 threads)",
        names(&a) == names(&b) && a.len() >= runs.len() && differing.is_empty(),
        format!("{} files compared, differing: {differing:?}", a.len()),
    );
}

fn main() -> ExitCode {
    let tmp = tempfile::tempdir().unwrap();
    let mut suite = Suite::default();
    spectral_correspondence(&mut suite);
    hitting_times(&mut suite);
    qff_accuracy(&mut suite);
    qpe_contract(&mut suite);
    qpe_search(&mut suite);
    qff_search(&mut suite);
    success_curves(&mut suite, tmp.path());
    scaling(&mut suite);
    qsampling(&mut suite);
    adiabatic(&mut suite);
    determinism(&mut suite, tmp.path());
    let failed = suite.report();
    if failed == 0 {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 11 acceptance criteria failed");
        ExitCode::FAILURE
    }
}
