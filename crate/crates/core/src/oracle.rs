//! Brute-force references: matrix powers by repeated squaring, Monte Carlo
//! hitting times, and dense materialization of operators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::markov::{check_marked, MarkovChain};
use crate::walkspace::UnitaryOp;

/// Largest operator dimension [`materialize`] accepts.
pub const MATERIALIZE_CAP: usize = 4096;

const BATCH: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    RepeatedSquaring,
    MonteCarlo,
    Columnwise,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub value: T,
    pub method: OracleMethod,
    pub residual: Option<f64>,
}

/// D^t ψ with D^t formed by repeated squaring.
pub fn dt_apply(d: &DMatrix<f64>, t: u64, psi: &[f64]) -> OracleResult<DVector<f64>> {
    let n = d.nrows();
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut base = d.clone();
    let mut e = t;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    OracleResult {
        value: result * DVector::from_column_slice(psi),
        method: OracleMethod::RepeatedSquaring,
        residual: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Mean absorption time into `marked` of walks started from π̄. Trials run in
/// batches of 4096, batch b drawing from stream b of a ChaCha8 generator
/// seeded with `seed`, so the estimate does not depend on the thread count.
pub fn mc_hitting(chain: &MarkovChain, marked: &[usize], trials: u64, seed: u64) -> Result<OracleResult<McEstimate>> {
    mc_hitting_from(chain, marked, None, trials, seed)
}

/// As [`mc_hitting`]; `start` fixes the starting vertex instead of π̄.
pub fn mc_hitting_from(
    chain: &MarkovChain,
    marked: &[usize],
    start: Option<usize>,
    trials: u64,
    seed: u64,
) -> Result<OracleResult<McEstimate>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be >= 1".into()));
    }
    let n = chain.n();
    let marked = check_marked(n, marked)?;
    let mut is_marked = vec![false; n];
    marked.iter().for_each(|&m| is_marked[m] = true);
    if let Some(x) = start {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
        if is_marked[x] {
            return Err(Error::Precondition(format!("start vertex {x} is marked")));
        }
    }
    let pi = chain.stationary()?;
    let mut start_cdf = Vec::with_capacity(n);
    let mut acc = 0.0;
    for x in 0..n {
        if !is_marked[x] {
            acc += pi[x];
        }
        start_cdf.push(acc);
    }
    start_cdf.iter_mut().for_each(|c| *c /= acc);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|x| {
            let mut acc = 0.0;
            (0..n)
                .map(|y| {
                    acc += chain.prob(x, y);
                    acc
                })
                .collect()
        })
        .collect();
    let sample = |cdf: &[f64], u: f64| cdf.partition_point(|&c| c <= u * cdf[n - 1]).min(n - 1);

    let batches = trials.div_ceil(BATCH);
    let sums: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(trials - b * BATCH);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let mut x = match start {
                    Some(x) => x,
                    None => sample(&start_cdf, rng.random::<f64>()),
                };
                let mut steps = 0u64;
                while !is_marked[x] {
                    x = sample(&rows[x], rng.random::<f64>());
                    steps += 1;
                }
                s1 += steps as f64;
                s2 += (steps as f64).powi(2);
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let k = trials as f64;
    let mean = s1 / k;
    let var = if trials > 1 { (s2 - k * mean * mean).max(0.0) / (k - 1.0) } else { 0.0 };
    Ok(OracleResult {
        value: McEstimate { mean, stderr: (var / k).sqrt(), trials },
        method: OracleMethod::MonteCarlo,
        residual: None,
    })
}

/// Dense matrix of a linear map on `dim` amplitudes, one basis column at a
/// time. The residual is ‖U†U − I‖_max.
pub fn materialize_with(
    dim: usize,
    cap: usize,
    apply: impl Fn(&mut [Complex64]) -> Result<()>,
) -> Result<OracleResult<DMatrix<Complex64>>> {
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        col[j] = Complex64::new(1.0, 0.0);
        apply(&mut col)?;
        m.column_mut(j).copy_from_slice(&col);
    }
    let residual = unitarity_residual(&m);
    Ok(OracleResult { value: m, method: OracleMethod::Columnwise, residual: Some(residual) })
}

pub fn materialize<U: UnitaryOp + ?Sized>(op: &U) -> Result<OracleResult<DMatrix<Complex64>>> {
    materialize_with(op.dim(), MATERIALIZE_CAP, |v| {
        op.apply(v);
        Ok(())
    })
}

pub fn unitarity_residual(m: &DMatrix<Complex64>) -> f64 {
    let g = m.adjoint() * m;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::generators;
    use crate::walkspace::WalkOperator;

    fn two_chain() -> MarkovChain {
        MarkovChain::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap()
    }

    #[test]
    fn powers() {
        let d = generators::cycle(5).unwrap().discriminant();
        let psi = [0.1, 0.2, -0.3, 0.4, 0.5];
        assert_eq!(dt_apply(&d, 0, &psi).value.as_slice(), &psi);
        let one = dt_apply(&d, 1, &psi).value;
        assert!((one - &d * DVector::from_column_slice(&psi)).amax() < 1e-15);
        let two = two_chain().discriminant();
        let v = dt_apply(&two, 8, &[1.0, 0.0]).value;
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn geometric_hitting() {
        let est = mc_hitting(&two_chain(), &[1], 100_000, 7).unwrap().value;
        assert!((est.mean - 2.0).abs() < 4.0 * est.stderr, "{est:?}");
        assert!(est.stderr < 0.01);
        let again = mc_hitting(&two_chain(), &[1], 100_000, 7).unwrap().value;
        assert_eq!(est, again);
    }

    #[test]
    fn marked_start_is_rejected() {
        let err = mc_hitting_from(&two_chain(), &[1], Some(1), 10, 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn walk_operator_is_unitary() {
        let op = WalkOperator::new(&two_chain());
        let m = materialize(&op).unwrap();
        assert_eq!(m.value.nrows(), 4);
        assert!(m.residual.unwrap() < 1e-11);
        let r0 = materialize_with(4, 16, |v| op.apply_r0(v)).unwrap().value;
        for i in 0..4 {
            let expected = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(r0[(i, i)], Complex64::new(expected, 0.0));
        }
        assert_eq!(materialize_with(17, 16, |_| Ok(())).unwrap_err(), Error::DimensionCap { dim: 17, cap: 16 });
    }
}
