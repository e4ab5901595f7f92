//! Diagnostic-expectations updating and the misspecified signal model that
//! reproduces it.
//!
//! The true data-generating process is `s = x + ε` with Gaussian noise
//! `ε ~ N(0, σ_ε²)` and a Gaussian prior `x ~ N(x̄, σ²)`. A correctly
//! specified Bayesian lands on mean `x̄ + K(s - x̄)` with `K` the Kalman
//! gain; a diagnostic updater with parameter θ overshoots to
//! `x̄ + (1+θ)K(s - x̄)` at the same posterior variance `(1-K)σ²`. The same
//! posterior arises from exact Bayes updating under a subjective model
//! whose noise is less dispersed and negatively correlated with the state:
//! `ε ~ N(-θ/(1+θ)·x, σ_ε²/(1+θ)²)`.
//!
//! Two centerings of the subjective noise mean are implemented. `Literal`
//! uses `-θ/(1+θ)·x` as displayed above and reproduces the diagnostic
//! posterior exactly when `x̄ = 0`; with `x̄ ≠ 0` its posterior mean is
//! `x̄ + (1+θ)K·s - K·x̄`, off by `θ·K·x̄`. `Centered` replaces `x` with
//! `x - x̄` and coincides signal-by-signal for every `x̄`. Both are exposed
//! so the gap is measurable rather than silently patched over.

use crate::error::{Error, Result};

#[cfg(test)]
const ACCEPT_TOL: f64 = 1e-12;


/// A Gaussian belief about the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPrior {
    pub mean: f64,
    pub variance: f64,
}

impl GaussianPrior {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) {
            return Err(Error::NonpositiveVariance(variance));
        }
        Ok(Self { mean, variance })
    }
}

/// Variance of the true additive signal noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalNoise {
    pub variance: f64,
}

impl SignalNoise {
    pub fn new(variance: f64) -> Result<Self> {
        if !(variance > 0.0) {
            return Err(Error::NonpositiveVariance(variance));
        }
        Ok(Self { variance })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    /// Noise mean `slope·x`, as displayed.
    Literal,
    /// Noise mean `slope·(x - x̄)`.
    Centered,
}

/// The subjective signal model rationalizing diagnostic updating:
/// `s = x + ε` with `ε ~ N(slope·x, variance)` (or `slope·(x-x̄)` when
/// centered).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisspecifiedSignalModel {
    pub noise_mean_slope: f64,
    pub noise_variance: f64,
    pub centering: Centering,
}

/// `K = σ²/(σ² + σ_ε²)`.
pub fn kalman_gain(prior_variance: f64, noise_variance: f64) -> Result<f64> {
    if !(prior_variance > 0.0) {
        return Err(Error::NonpositiveVariance(prior_variance));
    }
    if !(noise_variance > 0.0) {
        return Err(Error::NonpositiveVariance(noise_variance));
    }
    Ok(prior_variance / (prior_variance + noise_variance))
}

/// Conjugate update under the true model: `N(x̄ + K(s-x̄), (1-K)σ²)`.
pub fn correct_posterior(prior: &GaussianPrior, noise: &SignalNoise, s: f64) -> GaussianPrior {
    let k = prior.variance / (prior.variance + noise.variance);
    GaussianPrior {
        mean: prior.mean + k * (s - prior.mean),
        variance: (1.0 - k) * prior.variance,
    }
}

/// Diagnostic update: `N(x̄ + (1+θ)K(s-x̄), (1-K)σ²)`.
pub fn diagnostic_posterior(
    prior: &GaussianPrior,
    noise: &SignalNoise,
    s: f64,
    theta: f64,
) -> Result<GaussianPrior> {
    if theta < 0.0 {
        return Err(Error::NegativeTheta(theta));
    }
    let k = prior.variance / (prior.variance + noise.variance);
    Ok(GaussianPrior {
        mean: prior.mean + (1.0 + theta) * k * (s - prior.mean),
        variance: (1.0 - k) * prior.variance,
    })
}

/// The subjective noise law for diagnosticity θ:
/// slope `-θ/(1+θ)` and variance `σ_ε²/(1+θ)²`.
pub fn misspecified_model(
    theta: f64,
    noise: &SignalNoise,
    centering: Centering,
) -> Result<MisspecifiedSignalModel> {
    if theta < 0.0 {
        return Err(Error::NegativeTheta(theta));
    }
    let one_plus = 1.0 + theta;
    Ok(MisspecifiedSignalModel {
        noise_mean_slope: -theta / one_plus,
        noise_variance: noise.variance / (one_plus * one_plus),
        centering,
    })
}

/// Exact Gaussian conditioning of the state on the signal under the
/// subjective model. With noise mean `g·x + b`, the signal reads
/// `s = (1+g)·x + b + η`, `η ~ N(0, τ²)`, and the posterior follows from
/// the conjugate precision form.
pub fn misspecified_posterior(
    prior: &GaussianPrior,
    model: &MisspecifiedSignalModel,
    s: f64,
) -> GaussianPrior {
    let g = model.noise_mean_slope;
    let tau2 = model.noise_variance;
    let gain_slope = 1.0 + g;
    let offset = match model.centering {
        Centering::Literal => 0.0,
        Centering::Centered => -g * prior.mean,
    };
    let precision = 1.0 / prior.variance + gain_slope * gain_slope / tau2;
    let variance = 1.0 / precision;
    let mean = variance * (prior.mean / prior.variance + gain_slope * (s - offset) / tau2);
    GaussianPrior { mean, variance }
}

/// Worst-case deviations between the subjective-model posterior and the
/// diagnostic posterior over a signal grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub max_mean_deviation: f64,
    pub max_variance_deviation: f64,
    pub grid_points: usize,
}

impl EquivalenceReport {
    pub fn within(&self, tol: f64) -> bool {
        self.max_mean_deviation <= tol && self.max_variance_deviation <= tol
    }
}

/// Sweeps `signals` and reports the worst-case posterior mean and variance
/// gaps between exact updating under [`misspecified_model`] and the
/// diagnostic formulas.
pub fn equivalence_report(
    prior: &GaussianPrior,
    noise: &SignalNoise,
    theta: f64,
    centering: Centering,
    signals: impl IntoIterator<Item = f64>,
) -> Result<EquivalenceReport> {
    let model = misspecified_model(theta, noise, centering)?;
    let mut max_mean = 0.0f64;
    let mut max_var = 0.0f64;
    let mut count = 0;
    for s in signals {
        let subjective = misspecified_posterior(prior, &model, s);
        let diagnostic = diagnostic_posterior(prior, noise, s, theta)?;
        max_mean = max_mean.max((subjective.mean - diagnostic.mean).abs());
        max_var = max_var.max((subjective.variance - diagnostic.variance).abs());
        count += 1;
    }
    Ok(EquivalenceReport {
        max_mean_deviation: max_mean,
        max_variance_deviation: max_var,
        grid_points: count,
    })
}

/// Inclusive grid `[-span, span]` with the given step.
pub fn signal_grid(span: f64, step: f64) -> Vec<f64> {
    let n = (2.0 * span / step).round() as usize;
    (0..=n).map(|i| -span + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn kalman_gain_formula() {
        assert_eq!(kalman_gain(1.0, 1.0).unwrap(), 0.5);
        assert_eq!(kalman_gain(1.0, 3.0).unwrap(), 0.25);
        assert!((kalman_gain(1.0, 1e-12).unwrap() - 1.0).abs() < 1e-6);
        assert!(kalman_gain(0.0, 1.0).is_err());
        assert!(kalman_gain(1.0, -1.0).is_err());
    }

    #[test]
    fn correct_posterior_examples() {
        let prior = GaussianPrior::new(0.0, 1.0).unwrap();
        let noise = SignalNoise::new(1.0).unwrap();
        let post = correct_posterior(&prior, &noise, 1.0);
        assert_eq!(post.mean, 0.5);
        assert_eq!(post.variance, 0.5);
        // signal at the prior mean leaves the mean alone
        let post = correct_posterior(&prior, &noise, 0.0);
        assert_eq!(post.mean, 0.0);
        // uninformative signal leaves the prior approximately intact
        let vague = SignalNoise::new(1e12).unwrap();
        let post = correct_posterior(&prior, &vague, 5.0);
        assert!((post.mean - prior.mean).abs() < 1e-10);
        assert!((post.variance - prior.variance).abs() < 1e-10);
    }

    #[test]
    fn correct_posterior_against_monte_carlo() {
        // simulate the conjugate update by importance-weighting draws from
        // the prior with the signal likelihood
        let prior = GaussianPrior::new(0.3, 2.0).unwrap();
        let noise = SignalNoise::new(0.7).unwrap();
        let s = 1.1;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let prior_draw = Normal::new(prior.mean, prior.variance.sqrt()).unwrap();
        let mut wsum = 0.0;
        let mut wx = 0.0;
        let mut wxx = 0.0;
        for _ in 0..2_000_000 {
            let x = prior_draw.sample(&mut rng);
            let w = (-(s - x) * (s - x) / (2.0 * noise.variance)).exp();
            wsum += w;
            wx += w * x;
            wxx += w * x * x;
        }
        let mc_mean = wx / wsum;
        let mc_var = wxx / wsum - mc_mean * mc_mean;
        let post = correct_posterior(&prior, &noise, s);
        assert!((post.mean - mc_mean).abs() < 5e-3, "{} vs {mc_mean}", post.mean);
        assert!((post.variance - mc_var).abs() < 5e-3);
    }

    #[test]
    fn diagnostic_posterior_examples() {
        let prior = GaussianPrior::new(0.0, 1.0).unwrap();
        let noise = SignalNoise::new(1.0).unwrap();
        let post = diagnostic_posterior(&prior, &noise, 1.0, 1.0).unwrap();
        assert_eq!(post.mean, 1.0);
        assert_eq!(post.variance, 0.5);
        // θ = 0 is the correct posterior, bit for bit
        let a = diagnostic_posterior(&prior, &noise, 0.37, 0.0).unwrap();
        let b = correct_posterior(&prior, &noise, 0.37);
        assert_eq!(a, b);
        // no surprise, no overreaction
        for theta in [0.0, 0.5, 3.0] {
            let p = diagnostic_posterior(&prior, &noise, prior.mean, theta).unwrap();
            assert_eq!(p.mean, prior.mean);
        }
        assert!(diagnostic_posterior(&prior, &noise, 0.0, -0.1).is_err());
    }

    #[test]
    fn misspecified_model_parameters() {
        let noise = SignalNoise::new(1.0).unwrap();
        let m = misspecified_model(0.0, &noise, Centering::Literal).unwrap();
        assert_eq!(m.noise_mean_slope, 0.0);
        assert_eq!(m.noise_variance, 1.0);
        let m = misspecified_model(1.0, &noise, Centering::Literal).unwrap();
        assert_eq!(m.noise_mean_slope, -0.5);
        assert_eq!(m.noise_variance, 0.25);
        let m = misspecified_model(1e6, &noise, Centering::Literal).unwrap();
        assert!((m.noise_mean_slope + 1.0).abs() < 1e-5);
        assert!(m.noise_variance < 1e-11);
    }

    #[test]
    fn centered_model_matches_diagnostic_for_any_prior_mean() {
        let noise = SignalNoise::new(0.5).unwrap();
        for mean in [0.0, 1.0, -2.5] {
            let prior = GaussianPrior::new(mean, 1.7).unwrap();
            for theta in [0.0, 0.5, 1.0, 2.0] {
                let report = equivalence_report(
                    &prior,
                    &noise,
                    theta,
                    Centering::Centered,
                    signal_grid(5.0, 0.1),
                )
                .unwrap();
                assert!(report.within(ACCEPT_TOL), "{report:?} at mean {mean} θ {theta}");
            }
        }
    }

    #[test]
    fn literal_model_gap_is_theta_k_xbar() {
        let noise = SignalNoise::new(1.0).unwrap();
        let prior = GaussianPrior::new(1.0, 1.0).unwrap();
        let theta = 1.0;
        let k = kalman_gain(prior.variance, noise.variance).unwrap();
        let report = equivalence_report(
            &prior,
            &noise,
            theta,
            Centering::Literal,
            signal_grid(5.0, 0.1),
        )
        .unwrap();
        let predicted = theta * k * prior.mean;
        assert!((report.max_mean_deviation - predicted).abs() < 1e-9);
        // zero prior mean closes the gap
        let centered_at_zero = GaussianPrior::new(0.0, 1.0).unwrap();
        let report = equivalence_report(
            &centered_at_zero,
            &noise,
            theta,
            Centering::Literal,
            signal_grid(5.0, 0.1),
        )
        .unwrap();
        assert!(report.within(ACCEPT_TOL));
    }

    #[test]
    fn misspecified_posterior_against_conditioning_oracle() {
        // independent route: joint covariance of (x, s) and the Schur
        // complement, rather than the precision form
        let prior = GaussianPrior::new(0.8, 1.3).unwrap();
        let noise = SignalNoise::new(0.6).unwrap();
        for theta in [0.0, 0.5, 2.0] {
            for centering in [Centering::Literal, Centering::Centered] {
                let model = misspecified_model(theta, &noise, centering).unwrap();
                let a = 1.0 + model.noise_mean_slope;
                let b = match centering {
                    Centering::Literal => 0.0,
                    Centering::Centered => -model.noise_mean_slope * prior.mean,
                };
                let s_mean = a * prior.mean + b;
                let s_var = a * a * prior.variance + model.noise_variance;
                let cov_xs = a * prior.variance;
                for s in signal_grid(4.0, 0.5) {
                    let oracle_mean = prior.mean + cov_xs / s_var * (s - s_mean);
                    let oracle_var = prior.variance - cov_xs * cov_xs / s_var;
                    let got = misspecified_posterior(&prior, &model, s);
                    assert!((got.mean - oracle_mean).abs() < 1e-12);
                    assert!((got.variance - oracle_var).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn posterior_variance_is_theta_free() {
        let prior = GaussianPrior::new(0.4, 1.5).unwrap();
        let noise = SignalNoise::new(2.0).unwrap();
        let k = kalman_gain(prior.variance, noise.variance).unwrap();
        let expected = (1.0 - k) * prior.variance;
        for theta in [0.0, 0.1, 1.0, 5.0] {
            let d = diagnostic_posterior(&prior, &noise, 0.9, theta).unwrap();
            assert_eq!(d.variance, expected);
            let model = misspecified_model(theta, &noise, Centering::Centered).unwrap();
            let m = misspecified_posterior(&prior, &model, 0.9);
            assert!((m.variance - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn diagnostic_slope_recovered_by_finite_differences() {
        let prior = GaussianPrior::new(0.2, 0.9).unwrap();
        let noise = SignalNoise::new(1.4).unwrap();
        let theta = 0.8;
        let k = kalman_gain(prior.variance, noise.variance).unwrap();
        let h = 1e-4;
        let up = diagnostic_posterior(&prior, &noise, 1.0 + h, theta).unwrap();
        let down = diagnostic_posterior(&prior, &noise, 1.0 - h, theta).unwrap();
        let slope = (up.mean - down.mean) / (2.0 * h);
        assert!((slope - (1.0 + theta) * k).abs() < 1e-9);
    }
}
