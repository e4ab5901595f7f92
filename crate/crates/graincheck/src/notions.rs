//! Stricter rationalizability notions and the implication ladder.
//!
//! Three nested notions classify a finite instance. Bayes plausibility
//! demands the average posterior equal the prior (correctly specified
//! signal beliefs). The Shmaya–Yariv condition relaxes that to the
//! existence of a strictly positive reweighting λ of the realized
//! posteriors whose barycenter is the prior — equivalently, the prior lies
//! in the relative interior of the posteriors' convex hull. Misspecified
//! Bayesianism relaxes further to the grain condition. Each notion implies
//! the next, never the reverse.


use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::measures::{FiniteDistribution, Posterior, PosteriorEnsemble};
use crate::rationalizer::check_finite_support;
use crate::scalar::Scalar;

/// A strictly positive reweighting of the ensemble's posteriors whose
/// barycenter is the prior.
#[derive(Debug, Clone, PartialEq)]
pub struct SYCertificate<T: Scalar> {
    pub lambda: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SYOutcome<T: Scalar> {
    Certificate(SYCertificate<T>),
    Infeasible,
}

impl<T: Scalar> SYOutcome<T> {
    pub fn is_certificate(&self) -> bool {
        matches!(self, SYOutcome::Certificate(_))
    }
}

/// Classification of one instance along the three notions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotionLadder {
    pub bayes_plausible: bool,
    pub shmaya_yariv: bool,
    pub misspecified_bayesian: bool,
}

fn finite_posteriors<'a, T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &'a PosteriorEnsemble<T>,
) -> Result<Vec<&'a FiniteDistribution<T>>> {
    let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
    entries
        .iter()
        .map(|e| match &e.posterior {
            Posterior::Finite(d) => {
                prior.same_states(d)?;
                Ok(d)
            }
            Posterior::Parametric(_) => Err(Error::MixedRepresentation),
        })
        .collect()
}

/// Does the average posterior equal the prior?
pub fn bayes_plausibility_test<T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
) -> Result<bool> {
    let posteriors = finite_posteriors(prior, ensemble)?;
    let entries = ensemble.entries().expect("finite ensemble");
    for x in 0..prior.len() {
        let avg = entries
            .iter()
            .zip(&posteriors)
            .map(|(e, q)| e.weight.clone() * q.prob(x).clone())
            .fold(T::zero(), |a, b| a + b);
        if !avg.close_to(prior.prob(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for a strictly positive barycentric reweighting by solving
///
/// `maximize δ subject to λⱼ ≥ δ, Σλⱼ = 1, Σλⱼ·μⱼ(x) = prior(x) ∀x`
///
/// with the in-repo exact simplex. A strictly positive optimum yields the
/// certificate; a zero optimum means the prior sits on the relative
/// boundary of the hull, which the notion rejects.
pub fn shmaya_yariv_test<T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
) -> Result<SYOutcome<T>> {
    let posteriors = finite_posteriors(prior, ensemble)?;
    let n = posteriors.len();
    let d = prior.len();
    // variables: λ_0..λ_{n-1}, δ, s_0..s_{n-1} (slack of λ_j − δ ≥ 0)
    let vars = 2 * n + 1;
    let mut constraints: Vec<(Vec<T>, T)> = Vec::with_capacity(d + 1 + n);
    for x in 0..d {
        let mut row = vec![T::zero(); vars];
        for (j, q) in posteriors.iter().enumerate() {
            row[j] = q.prob(x).clone();
        }
        constraints.push((row, prior.prob(x).clone()));
    }
    let mut sum_row = vec![T::zero(); vars];
    for cell in sum_row.iter_mut().take(n) {
        *cell = T::one();
    }
    constraints.push((sum_row, T::one()));
    for j in 0..n {
        let mut row = vec![T::zero(); vars];
        row[j] = T::one();
        row[n] = -T::one();
        row[n + 1 + j] = -T::one();
        constraints.push((row, T::zero()));
    }
    let mut objective = vec![T::zero(); vars];
    objective[n] = T::one();

    match maximize(&objective, &constraints) {
        LpOutcome::Infeasible => Ok(SYOutcome::Infeasible),
        LpOutcome::Unbounded => Err(Error::LadderViolation(
            "the reweighting program is bounded by construction".into(),
        )),
        LpOutcome::Optimal {
            objective: delta,
            solution,
        } => {
            let strictly_positive = if T::EXACT {
                delta > T::zero()
            } else {
                delta.to_f64() > 1e-9
            };
            if !strictly_positive {
                return Ok(SYOutcome::Infeasible);
            }
            Ok(SYOutcome::Certificate(SYCertificate {
                lambda: solution[..n].to_vec(),
            }))
        }
    }
}

/// Runs the three tests and checks the implication chain
/// `bayes_plausible ⇒ shmaya_yariv ⇒ misspecified_bayesian`.
/// A chain violation is an internal error, never a valid output.
pub fn classify<T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
) -> Result<NotionLadder> {
    let bayes_plausible = bayes_plausibility_test(prior, ensemble)?;
    let shmaya_yariv = shmaya_yariv_test(prior, ensemble)?.is_certificate();
    let misspecified_bayesian = check_finite_support(prior, ensemble)?.is_consistent();
    let ladder = NotionLadder {
        bayes_plausible,
        shmaya_yariv,
        misspecified_bayesian,
    };
    if (bayes_plausible && !shmaya_yariv) || (shmaya_yariv && !misspecified_bayesian) {
        return Err(Error::LadderViolation(format!("{ladder:?}")));
    }
    Ok(ladder)
}
