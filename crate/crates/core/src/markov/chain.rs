use std::collections::VecDeque;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::SpectralData;

const ROW_SUM_TOL: f64 = 1e-9;
const ENTRY_TOL: f64 = 1e-12;
pub const DETAILED_BALANCE_TOL: f64 = 1e-10;

/// A row-stochastic transition matrix over vertices `0..n`.
///
/// The stationary distribution is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    p: DMatrix<f64>,
    ergodic: bool,
    stationary: OnceLock<Option<DVector<f64>>>,
}

impl MarkovChain {
    /// Validates a raw matrix as an ergodic Markov chain.
    ///
    /// Fails with `NotErgodic` for reducible or periodic chains; use
    /// [`MarkovChain::stochastic`] to accept those.
    pub fn validate(raw: DMatrix<f64>) -> Result<MarkovChain> {
        let chain = MarkovChain::stochastic(raw)?;
        if !chain.ergodic {
            return Err(Error::NotErgodic);
        }
        chain.stationary()?;
        Ok(chain)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<MarkovChain> {
        MarkovChain::validate(matrix_from_rows(rows)?)
    }

    /// Checks stochasticity only; ergodicity is recorded, not required.
    pub fn stochastic(raw: DMatrix<f64>) -> Result<MarkovChain> {
        if !raw.is_square() {
            return Err(Error::NotSquare { rows: raw.nrows(), cols: raw.ncols() });
        }
        let n = raw.nrows();
        if n == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        for x in 0..n {
            let mut sum = 0.0;
            for y in 0..n {
                let v = raw[(x, y)];
                if !v.is_finite() || !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&v) {
                    return Err(Error::BadEntry { row: x, col: y, value: v });
                }
                sum += v;
            }
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::NonStochastic { row: x, sum });
            }
        }
        let p = raw.map(|v| v.clamp(0.0, 1.0));
        let ergodic = is_ergodic(&p);
        Ok(MarkovChain { p, ergodic, stationary: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.p[(x, y)]
    }

    pub fn is_ergodic(&self) -> bool {
        self.ergodic
    }

    /// Stationary distribution from a dense solve of (Pᵀ − I)π = 0 with the
    /// last equation replaced by Σπ = 1.
    pub fn stationary(&self) -> Result<&DVector<f64>> {
        let cached = self.stationary.get_or_init(|| {
            if !self.ergodic {
                return None;
            }
            stationary_by_solve(&self.p)
        });
        match cached {
            Some(pi) => Ok(pi),
            None if !self.ergodic => Err(Error::NotErgodic),
            None => Err(Error::SingularSystem),
        }
    }

    /// max_{x,y} |π_x p_xy − π_y p_yx|.
    pub fn detailed_balance_residual(&self) -> Result<f64> {
        let pi = self.stationary()?;
        let n = self.n();
        let mut worst = 0.0f64;
        for x in 0..n {
            for y in (x + 1)..n {
                worst = worst.max((pi[x] * self.p[(x, y)] - pi[y] * self.p[(y, x)]).abs());
            }
        }
        Ok(worst)
    }

    pub fn is_reversible(&self) -> bool {
        self.detailed_balance_residual()
            .map(|r| r <= DETAILED_BALANCE_TOL)
            .unwrap_or(false)
    }

    pub fn require_reversible(&self) -> Result<()> {
        let residual = self.detailed_balance_residual()?;
        if residual > DETAILED_BALANCE_TOL {
            return Err(Error::NotReversible { residual });
        }
        Ok(())
    }

    /// Every diagonal entry is at least 1/2, which makes the discriminant of
    /// a reversible chain positive semidefinite.
    pub fn is_lazy(&self) -> bool {
        self.first_non_lazy().is_none()
    }

    pub fn require_lazy(&self) -> Result<()> {
        match self.first_non_lazy() {
            Some(vertex) => Err(Error::NotLazy { vertex, value: self.p[(vertex, vertex)] }),
            None => Ok(()),
        }
    }

    fn first_non_lazy(&self) -> Option<usize> {
        (0..self.n()).find(|&x| self.p[(x, x)] < 0.5 - 1e-12)
    }

    /// (P + I) / 2.
    pub fn lazy(&self) -> MarkovChain {
        let n = self.n();
        let p = (&self.p + DMatrix::identity(n, n)) * 0.5;
        // laziness adds self-loops, so an irreducible chain becomes aperiodic
        let ergodic = is_ergodic(&p);
        let stationary = OnceLock::new();
        if let Some(Some(pi)) = self.stationary.get() {
            let _ = stationary.set(Some(pi.clone()));
        }
        MarkovChain { p, ergodic, stationary }
    }

    /// D(P) = sqrt(P ∘ Pᵀ), entrywise.
    pub fn discriminant(&self) -> DMatrix<f64> {
        discriminant_of(&self.p)
    }

    /// Spectrum of the discriminant matrix.
    pub fn spectrum(&self) -> SpectralData {
        SpectralData::of_symmetric(&self.discriminant())
    }

    /// Δ = 1 − λ₁ of the discriminant spectrum.
    pub fn gap(&self) -> Result<f64> {
        if !self.ergodic {
            return Err(Error::NotErgodic);
        }
        Ok(self.spectrum().gap())
    }

    /// Replaces the rows of marked vertices by unit self-loops.
    pub fn absorbing(&self, marked: &[usize]) -> Result<MarkovChain> {
        let marked = check_marked(self.n(), marked)?;
        let mut p = self.p.clone();
        for &g in &marked {
            for y in 0..self.n() {
                p[(g, y)] = if y == g { 1.0 } else { 0.0 };
            }
        }
        let ergodic = is_ergodic(&p);
        Ok(MarkovChain { p, ergodic, stationary: OnceLock::new() })
    }

    /// P(s) = (1 − s)·self + s·other.
    pub fn interpolate(&self, other: &MarkovChain, s: f64) -> Result<MarkovChain> {
        if other.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::SOutOfRange(s));
        }
        if s == 0.0 {
            return Ok(self.clone());
        }
        if s == 1.0 {
            return Ok(other.clone());
        }
        let p = &self.p * (1.0 - s) + &other.p * s;
        let ergodic = is_ergodic(&p);
        Ok(MarkovChain { p, ergodic, stationary: OnceLock::new() })
    }
}

pub fn discriminant_of(p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = p.nrows();
    DMatrix::from_fn(n, n, |x, y| (p[(x, y)] * p[(y, x)]).sqrt())
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    Ok(DMatrix::from_fn(n, n, |x, y| rows[x][y]))
}

/// Sorted, deduplicated marked set; nonempty and a proper subset of `0..n`.
pub fn check_marked(n: usize, marked: &[usize]) -> Result<Vec<usize>> {
    if marked.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    let mut m = marked.to_vec();
    m.sort_unstable();
    m.dedup();
    if let Some(&bad) = m.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    if m.len() == n {
        return Err(Error::AllMarked);
    }
    Ok(m)
}

fn stationary_by_solve(p: &DMatrix<f64>) -> Option<DVector<f64>> {
    let n = p.nrows();
    let mut a = p.transpose() - DMatrix::identity(n, n);
    for y in 0..n {
        a[(n - 1, y)] = 1.0;
    }
    let mut b = DVector::zeros(n);
    b[n - 1] = 1.0;
    let pi = a.lu().solve(&b)?;
    if pi.iter().any(|v| !v.is_finite()) {
        return None;
    }
    // tiny negative round-off on near-zero entries
    let mut pi = pi.map(|v| v.max(0.0));
    let total = pi.sum();
    pi /= total;
    Some(pi)
}

/// Stationary distribution by power iteration from the uniform distribution.
/// Slow; kept as a cross-check of the dense solve.
pub fn stationary_by_power_iteration(p: &DMatrix<f64>, iterations: usize) -> DVector<f64> {
    let n = p.nrows();
    let mut v = DVector::from_element(n, 1.0 / n as f64);
    let pt = p.transpose();
    for _ in 0..iterations {
        v = &pt * v;
    }
    v
}

/// Irreducible (strongly connected support) and aperiodic (gcd of cycle
/// lengths is 1).
fn is_ergodic(p: &DMatrix<f64>) -> bool {
    let n = p.nrows();
    let reach = |forward: bool| -> Vec<Option<usize>> {
        let mut level = vec![None; n];
        level[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let lu = level[u].unwrap();
            for v in 0..n {
                let w = if forward { p[(u, v)] } else { p[(v, u)] };
                if w > 0.0 && level[v].is_none() {
                    level[v] = Some(lu + 1);
                    queue.push_back(v);
                }
            }
        }
        level
    };
    let fwd = reach(true);
    if fwd.iter().any(Option::is_none) || reach(false).iter().any(Option::is_none) {
        return false;
    }
    let mut period = 0usize;
    for u in 0..n {
        for v in 0..n {
            if p[(u, v)] > 0.0 {
                let lu = fwd[u].unwrap() as i64;
                let lv = fwd[v].unwrap() as i64;
                period = gcd(period, (lu + 1 - lv).unsigned_abs() as usize);
            }
        }
    }
    period == 1
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
