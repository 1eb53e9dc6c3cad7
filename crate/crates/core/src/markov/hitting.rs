//! Classical hitting times: the spectral formula over the absorbing
//! discriminant, a linear-solve reference, and the interpolated variant.

use nalgebra::{DMatrix, DVector};

use super::chain::{check_marked, MarkovChain};
use super::interpolation::InterpolatedFamily;
use crate::error::{Error, Result};
use crate::linalg::SpectralData;

const UNIT_EIGENVALUE_TOL: f64 = 1e-12;

/// HT(P, M) = Σ_k |⟨v'_k|π̄⟩|² / (1 − λ'_k) over the eigenpairs of the
/// unmarked block of D(P').
pub fn hitting_time_spectral(chain: &MarkovChain, marked: &[usize]) -> Result<f64> {
    let marked = check_marked(chain.n(), marked)?;
    chain.require_reversible()?;
    let pi = chain.stationary()?;
    let unmarked: Vec<usize> = (0..chain.n()).filter(|x| marked.binary_search(x).is_err()).collect();
    let mass: f64 = unmarked.iter().map(|&x| pi[x]).sum();
    // D(P') restricted to U equals D(P) restricted to U: marked rows of P' only
    // touch the marked diagonal.
    let m = unmarked.len();
    let block = DMatrix::from_fn(m, m, |i, j| {
        let (x, y) = (unmarked[i], unmarked[j]);
        (chain.prob(x, y) * chain.prob(y, x)).sqrt()
    });
    let pibar = DVector::from_fn(m, |i, _| (pi[unmarked[i]] / mass).sqrt());
    let spec = SpectralData::of_symmetric(&block);
    let mut ht = 0.0;
    for (k, &lambda) in spec.values.iter().enumerate() {
        if lambda > 1.0 - UNIT_EIGENVALUE_TOL {
            return Err(Error::DegenerateUnmarkedBlock { eigenvalue: lambda });
        }
        let overlap = spec.vectors.column(k).dot(&pibar);
        ht += overlap * overlap / (1.0 - lambda);
    }
    Ok(ht)
}

/// Expected steps to hit M from each unmarked vertex, solving
/// (I − P_UU) h = 1. Entries for marked vertices are zero.
pub fn hitting_times_from_vertices(chain: &MarkovChain, marked: &[usize]) -> Result<DVector<f64>> {
    let marked = check_marked(chain.n(), marked)?;
    let unmarked: Vec<usize> = (0..chain.n()).filter(|x| marked.binary_search(x).is_err()).collect();
    let m = unmarked.len();
    let a = DMatrix::from_fn(m, m, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - chain.prob(unmarked[i], unmarked[j])
    });
    let h = a.lu().solve(&DVector::from_element(m, 1.0)).ok_or(Error::SingularSystem)?;
    if h.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem);
    }
    let mut out = DVector::zeros(chain.n());
    for (i, &x) in unmarked.iter().enumerate() {
        out[x] = h[i];
    }
    Ok(out)
}

/// Σ_{x∉M} (π_x / π(U)) h_x: the linear-solve reference for
/// [`hitting_time_spectral`].
pub fn hitting_time_classical(chain: &MarkovChain, marked: &[usize]) -> Result<f64> {
    let marked_sorted = check_marked(chain.n(), marked)?;
    let pi = chain.stationary()?;
    let h = hitting_times_from_vertices(chain, &marked_sorted)?;
    let mass: f64 = (0..chain.n())
        .filter(|x| marked_sorted.binary_search(x).is_err())
        .map(|x| pi[x])
        .sum();
    Ok((0..chain.n()).map(|x| pi[x] * h[x]).sum::<f64>() / mass)
}

/// HT(s) = Σ_{k≥1} |⟨v_k(s)|π̄⟩|² / (1 − λ_k(s)) for a single marked vertex.
pub fn interpolated_hitting_time(chain: &MarkovChain, g: usize, s: f64) -> Result<f64> {
    let family = InterpolatedFamily::new(chain, &[g])?;
    interpolated_hitting_time_in(&family, s)
}

pub fn interpolated_hitting_time_in(family: &InterpolatedFamily, s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::SOutOfRange(s));
    }
    if family.marked().len() != 1 {
        return Err(Error::Precondition("interpolated hitting time needs one marked vertex".into()));
    }
    let spec = family.spectrum(s)?;
    let pibar = family.pi_bar();
    let mut ht = 0.0;
    for k in 1..spec.len() {
        let lambda = spec.values[k];
        if lambda > 1.0 - UNIT_EIGENVALUE_TOL {
            return Err(Error::DegenerateEigenvalue { k, eigenvalue: lambda });
        }
        let overlap = spec.vectors.column(k).dot(&pibar);
        ht += overlap * overlap / (1.0 - lambda);
    }
    Ok(ht)
}

/// max_x HT(P, {x}).
pub fn max_hitting_time(chain: &MarkovChain) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in 0..chain.n() {
        worst = worst.max(hitting_time_spectral(chain, &[x])?);
    }
    Ok(worst)
}
