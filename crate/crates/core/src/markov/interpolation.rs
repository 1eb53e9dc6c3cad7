use nalgebra::{DMatrix, DVector};

use super::chain::{check_marked, discriminant_of, MarkovChain};
use crate::error::{Error, Result};
use crate::linalg::SpectralData;

/// The family P(s) = (1 − s)P + sP' for a fixed base chain and marked set.
#[derive(Debug, Clone)]
pub struct InterpolatedFamily {
    base: MarkovChain,
    absorbing: MarkovChain,
    marked: Vec<usize>,
    pi: DVector<f64>,
    pi_marked: f64,
}

impl InterpolatedFamily {
    /// Requires an ergodic reversible base chain.
    pub fn new(base: &MarkovChain, marked: &[usize]) -> Result<InterpolatedFamily> {
        let marked = check_marked(base.n(), marked)?;
        base.require_reversible()?;
        let pi = base.stationary()?.clone();
        let pi_marked = marked.iter().map(|&g| pi[g]).sum();
        let absorbing = base.absorbing(&marked)?;
        Ok(InterpolatedFamily { base: base.clone(), absorbing, marked, pi, pi_marked })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &MarkovChain {
        &self.base
    }

    pub fn absorbing(&self) -> &MarkovChain {
        &self.absorbing
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn stationary(&self) -> &DVector<f64> {
        &self.pi
    }

    /// π_M, the stationary mass of the marked set.
    pub fn pi_marked(&self) -> f64 {
        self.pi_marked
    }

    pub fn is_marked(&self, x: usize) -> bool {
        self.marked.binary_search(&x).is_ok()
    }

    pub fn chain(&self, s: f64) -> Result<MarkovChain> {
        self.base.interpolate(&self.absorbing, s)
    }

    pub fn discriminant(&self, s: f64) -> Result<DMatrix<f64>> {
        Ok(discriminant_of(self.chain(s)?.matrix()))
    }

    pub fn spectrum(&self, s: f64) -> Result<SpectralData> {
        Ok(SpectralData::of_symmetric(&self.discriminant(s)?))
    }

    /// Amplitude vector √(((1−s)π_x + sπ'_x) / (1 − s + sπ_M)), a
    /// 1-eigenvector of D(s); π' is π on marked vertices and 0 elsewhere.
    pub fn v0(&self, s: f64) -> Result<DVector<f64>> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::SOutOfRange(s));
        }
        let norm = 1.0 - s + s * self.pi_marked;
        Ok(DVector::from_fn(self.n(), |x, _| {
            let marked = if self.is_marked(x) { self.pi[x] } else { 0.0 };
            (((1.0 - s) * self.pi[x] + s * marked) / norm).sqrt()
        }))
    }

    /// √π restricted to the unmarked vertices and normalized; zero on M.
    pub fn pi_bar(&self) -> DVector<f64> {
        let unmarked = 1.0 - self.pi_marked;
        DVector::from_fn(self.n(), |x, _| {
            if self.is_marked(x) {
                0.0
            } else {
                (self.pi[x] / unmarked).sqrt()
            }
        })
    }

    /// √π as an amplitude vector.
    pub fn pi_amplitudes(&self) -> DVector<f64> {
        self.pi.map(f64::sqrt)
    }
}

/// sin²θ(s) = π_g / (1 − s(1 − π_g)) for a single marked vertex g, where
/// |v0(s)⟩ = cos θ |π̄⟩ + sin θ |g⟩.
pub fn sin2_theta(pi_g: f64, s: f64) -> f64 {
    pi_g / (1.0 - s * (1.0 - pi_g))
}

pub fn theta_of_s(pi_g: f64, s: f64) -> f64 {
    sin2_theta(pi_g, s).sqrt().clamp(0.0, 1.0).asin()
}

/// Inverse of [`theta_of_s`]: s = (1 − π_g / sin²θ) / (1 − π_g).
pub fn s_of_theta(pi_g: f64, theta: f64) -> f64 {
    let sin2 = theta.sin().powi(2);
    (1.0 - pi_g / sin2) / (1.0 - pi_g)
}

/// Diagnostic angle pair cos θ = √((1−s)/s), sin θ = √((2s−1)/s).
///
/// This parametrization is not the one the schedules use: it ignores π_g and
/// only exists for s ≥ 1/2. Returns `None` outside that range.
pub fn balanced_mark_angles(s: f64) -> Option<(f64, f64)> {
    if !(0.5..=1.0).contains(&s) {
        return None;
    }
    Some((((1.0 - s) / s).sqrt(), ((2.0 * s - 1.0) / s).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::generators;

    #[test]
    fn v0_is_fixed_by_discriminant() {
        let c = generators::metropolis_random(6, 3, 0.2, 1.0).unwrap();
        let fam = InterpolatedFamily::new(&c, &[2]).unwrap();
        for s in [0.0, 0.1, 0.5, 0.9, 0.999, 1.0] {
            let d = fam.discriminant(s).unwrap();
            let v = fam.v0(s).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((&d * &v - &v).amax() < 1e-10, "s = {s}");
        }
    }

    #[test]
    fn v0_endpoints() {
        let c = generators::cycle(5).unwrap();
        let fam = InterpolatedFamily::new(&c, &[0]).unwrap();
        assert!((fam.v0(0.0).unwrap() - fam.pi_amplitudes()).amax() < 1e-15);
        let end = fam.v0(1.0).unwrap();
        assert!((end[0] - 1.0).abs() < 1e-15 && end.rows(1, 4).amax() == 0.0);
        assert_eq!(fam.v0(1.2).unwrap_err(), Error::SOutOfRange(1.2));
    }

    #[test]
    fn single_mark_geometry() {
        let c = generators::metropolis_random(5, 9, 0.1, 1.0).unwrap();
        let g = 3;
        let fam = InterpolatedFamily::new(&c, &[g]).unwrap();
        let pi_g = fam.pi_marked();
        let pibar = fam.pi_bar();
        let mut e_g = DVector::zeros(5);
        e_g[g] = 1.0;
        for s in [0.0, 0.2, 0.6, 0.95] {
            let th = theta_of_s(pi_g, s);
            let expected = &pibar * th.cos() + &e_g * th.sin();
            assert!((fam.v0(s).unwrap() - expected).amax() < 1e-12);
            assert!((s_of_theta(pi_g, th) - s).abs() < 1e-12);
        }
    }

    #[test]
    fn balanced_angles_are_unit_and_limited_to_upper_half() {
        assert!(balanced_mark_angles(0.4).is_none());
        for s in [0.5, 0.7, 1.0] {
            let (c, sn) = balanced_mark_angles(s).unwrap();
            assert!((c * c + sn * sn - 1.0).abs() < 1e-14);
        }
    }
}
