//! Standard instances: simple random walks on small graphs and seeded
//! Metropolis chains. Every generator returns the lazy version.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::MarkovChain;
use crate::error::{Error, Result};

/// Lazy simple random walk on the n-cycle.
pub fn cycle(n: usize) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::BadSpec(format!("cycle needs n >= 2, got {n}")));
    }
    let mut p = DMatrix::zeros(n, n);
    for x in 0..n {
        p[(x, (x + 1) % n)] += 0.5;
        p[(x, (x + n - 1) % n)] += 0.5;
    }
    finish(p)
}

/// Lazy simple random walk on the width × height torus grid; vertex
/// `row * width + col`.
pub fn torus(width: usize, height: usize) -> Result<MarkovChain> {
    if width < 2 || height < 2 {
        return Err(Error::BadSpec(format!("torus needs both sides >= 2, got {width}x{height}")));
    }
    let n = width * height;
    let mut p = DMatrix::zeros(n, n);
    for row in 0..height {
        for col in 0..width {
            let x = row * width + col;
            let neighbours = [
                row * width + (col + 1) % width,
                row * width + (col + width - 1) % width,
                ((row + 1) % height) * width + col,
                ((row + height - 1) % height) * width + col,
            ];
            for y in neighbours {
                p[(x, y)] += 0.25;
            }
        }
    }
    finish(p)
}

/// Lazy simple random walk on the complete graph K_n.
pub fn complete(n: usize) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::BadSpec(format!("complete graph needs n >= 2, got {n}")));
    }
    let w = 1.0 / (n - 1) as f64;
    let p = DMatrix::from_fn(n, n, |x, y| if x == y { 0.0 } else { w });
    finish(p)
}

/// Metropolis chain for `target` with the symmetric proposal `weights`
/// (normalized by the largest off-diagonal row sum), then made lazy.
pub fn metropolis(weights: &DMatrix<f64>, target: &[f64]) -> Result<MarkovChain> {
    let n = target.len();
    if weights.nrows() != n || weights.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: weights.nrows() });
    }
    if target.iter().any(|&t| t.is_nan() || t <= 0.0 || !t.is_finite()) {
        return Err(Error::BadSpec("target weights must be positive".into()));
    }
    let row_max = (0..n)
        .map(|x| (0..n).filter(|&y| y != x).map(|y| weights[(x, y)]).sum::<f64>())
        .fold(0.0f64, f64::max);
    if row_max <= 0.0 {
        return Err(Error::BadSpec("proposal weights are all zero".into()));
    }
    let mut p = DMatrix::zeros(n, n);
    for x in 0..n {
        let mut off = 0.0;
        for y in 0..n {
            if y != x {
                let q = 0.5 * (weights[(x, y)] + weights[(y, x)]) / row_max;
                let v = q * (target[y] / target[x]).min(1.0);
                p[(x, y)] = v;
                off += v;
            }
        }
        p[(x, x)] = 1.0 - off;
    }
    finish(p)
}

/// Seeded Metropolis chain on K_n: proposal weights and target weights drawn
/// uniformly from `[weight_min, weight_max]`.
pub fn metropolis_random(n: usize, seed: u64, weight_min: f64, weight_max: f64) -> Result<MarkovChain> {
    if n < 2 {
        return Err(Error::BadSpec(format!("metropolis-random needs n >= 2, got {n}")));
    }
    if !(weight_min > 0.0 && weight_max >= weight_min && weight_max.is_finite()) {
        return Err(Error::BadSpec(format!(
            "weight range [{weight_min}, {weight_max}] must be positive and ordered"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        if weight_max > weight_min {
            rng.random_range(weight_min..weight_max)
        } else {
            weight_min
        }
    };
    let mut weights = DMatrix::zeros(n, n);
    for x in 0..n {
        for y in (x + 1)..n {
            let w = draw();
            weights[(x, y)] = w;
            weights[(y, x)] = w;
        }
    }
    let target: Vec<f64> = (0..n).map(|_| draw()).collect();
    metropolis(&weights, &target)
}

fn finish(p: DMatrix<f64>) -> Result<MarkovChain> {
    let simple = MarkovChain::stochastic(p)?;
    let lazy = simple.lazy();
    MarkovChain::validate(lazy.matrix().clone())
}
