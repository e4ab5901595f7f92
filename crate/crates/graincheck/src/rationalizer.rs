//! Deciding consistency with misspecified Bayesian updating, and building
//! explicit rationalizing models when it holds.
//!
//! A pair (prior, posterior distribution) is consistent with misspecified
//! Bayesianism when some subjective joint distribution Q over states and
//! signals (a) has the prior as its state marginal, (b) gives positive
//! probability to every signal that truly occurs, and (c) updates by Bayes'
//! rule to reproduce the observed distribution of posteriors. For finite
//! ensembles this reduces to the prior containing a grain of the average
//! posterior; the constructive direction builds Q explicitly from the grain
//! decomposition, routing the non-grain residual mass through a reserved
//! signal ⊖ that never occurs under the true signal law.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::grain::{
    decompose_finite, decompose_parametric, tail_order_compare, verify_certificate_parametric,
    GrainCertificate, GrainOutcome, NoGrainReason, SupportWitness, TailRelation, TailVerdict,
};
use crate::measures::{
    average_posterior, cell_average_posterior, coverage_interval, AveragePosterior,
    FiniteDistribution, ParametricDistribution, Posterior, PosteriorEnsemble,
};
use crate::scalar::Scalar;

/// The true law of signals, with signals labeled by the posterior they
/// induce (positions index the model's posterior signals in order). The
/// reserved ⊖ signal always has true probability zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueSignalModel<T: Scalar> {
    probs: Vec<T>,
}

impl<T: Scalar> TrueSignalModel<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        let total = probs.iter().cloned().fold(T::zero(), |a, b| a + b);
        if !total.close_to(&T::one()) {
            return Err(Error::validation(
                "true_signals",
                format!("signal probabilities sum to {total}, not 1"),
            ));
        }
        if probs.iter().any(|p| !p.is_nonnegative()) {
            return Err(Error::validation(
                "true_signals",
                "negative signal probability",
            ));
        }
        Ok(Self { probs })
    }

    /// Identity labeling: one signal per ensemble entry, with the entry's
    /// weight as its true probability.
    pub fn from_ensemble(ensemble: &PosteriorEnsemble<T>) -> Result<Self> {
        let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
        Ok(Self {
            probs: entries.iter().map(|e| e.weight.clone()).collect(),
        })
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }
}

/// A signal label: the posterior it induces, or the reserved residual
/// signal ⊖.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    Entry(usize),
    Residual,
}

/// A subjective joint distribution over states × signals.
///
/// Rows follow the state list, columns the signal list; the last column is
/// always the reserved ⊖ signal. The conditional kernel ν is the
/// column-normalized joint wherever a column has positive mass, so the
/// defining identity `Q(D×E) = Σ_{s∈E} ν(s,D)·Q_S(s)` holds by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SubjectiveModel<T: Scalar> {
    states: Arc<[String]>,
    signals: Vec<Signal>,
    joint: Vec<Vec<T>>,
}

impl<T: Scalar> SubjectiveModel<T> {
    pub fn new(states: Arc<[String]>, signals: Vec<Signal>, joint: Vec<Vec<T>>) -> Result<Self> {
        let d = states.len();
        let m = signals.len();
        if joint.len() != d || joint.iter().any(|row| row.len() != m) {
            return Err(Error::validation(
                "model.joint",
                format!("joint must be {d}×{m} (states × signals)"),
            ));
        }
        let residuals = signals.iter().filter(|s| **s == Signal::Residual).count();
        if residuals != 1 || *signals.last().unwrap() != Signal::Residual {
            return Err(Error::validation(
                "model.signals",
                "exactly one reserved ⊖ signal, in last position",
            ));
        }
        let mut total = T::zero();
        for row in &joint {
            for v in row {
                if !v.is_nonnegative() {
                    return Err(Error::validation("model.joint", "negative entry"));
                }
                total = total + v.clone();
            }
        }
        if !total.close_to(&T::one()) {
            return Err(Error::validation(
                "model.joint",
                format!("joint sums to {total}, not 1"),
            ));
        }
        Ok(Self {
            states,
            signals,
            joint,
        })
    }

    pub fn states(&self) -> &Arc<[String]> {
        &self.states
    }

    pub fn signals(&self) -> &[Signal] {
        &self.signals
    }

    pub fn joint(&self) -> &[Vec<T>] {
        &self.joint
    }

    /// State marginal Q_X (row sums).
    pub fn x_marginal(&self) -> Vec<T> {
        self.joint
            .iter()
            .map(|row| row.iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }

    /// Signal marginal Q_S (column sums).
    pub fn s_marginal(&self) -> Vec<T> {
        (0..self.signals.len())
            .map(|j| {
                self.joint
                    .iter()
                    .map(|row| row[j].clone())
                    .fold(T::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Bayes posterior given the signal in column `j`, when defined.
    pub fn kernel(&self, j: usize) -> Option<FiniteDistribution<T>> {
        let mass = self
            .joint
            .iter()
            .map(|row| row[j].clone())
            .fold(T::zero(), |a, b| a + b);
        if !(mass > T::zero()) {
            return None;
        }
        let probs: Vec<T> = self
            .joint
            .iter()
            .map(|row| row[j].clone() / mass.clone())
            .collect();
        FiniteDistribution::new(self.states.clone(), probs).ok()
    }
}

/// Which partition of the ensemble's entries a construction uses.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionSpec {
    /// One cell holding every entry.
    Trivial,
    /// One cell per entry.
    Singleton,
    Cells(Vec<Vec<usize>>),
}

impl PartitionSpec {
    fn cells(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        match self {
            PartitionSpec::Trivial => Ok(vec![(0..n).collect()]),
            PartitionSpec::Singleton => Ok((0..n).map(|i| vec![i]).collect()),
            PartitionSpec::Cells(cells) => {
                let mut seen = vec![false; n];
                for cell in cells {
                    if cell.is_empty() {
                        return Err(Error::ZeroMassCell("empty partition cell".into()));
                    }
                    for &i in cell {
                        if i >= n || seen[i] {
                            return Err(Error::validation(
                                "partition",
                                format!("entry {i} missing or repeated"),
                            ));
                        }
                        seen[i] = true;
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::validation("partition", "entries left uncovered"));
                }
                Ok(cells.clone())
            }
        }
    }
}

/// A grain certificate attached to the cell it certifies.
#[derive(Debug, Clone)]
pub struct CellCertificate<T: Scalar> {
    pub cell: CellId,
    pub certificate: GrainCertificate<T>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellId {
    Entries(Vec<usize>),
    Interval { lo: f64, hi: f64 },
}

#[derive(Debug, Clone)]
pub enum PartitionDescription {
    Trivial,
    Singleton,
    IntervalCells {
        width: f64,
        horizon: f64,
        tail_note: String,
    },
    SupportArgument,
}

#[derive(Debug, Clone)]
pub enum InconsistencyWitness {
    SupportViolation { witness: SupportWitness },
    /// Ensemble entries whose tails dominate the prior's.
    TailViolation { flagged: Vec<(usize, TailVerdict)> },
    /// A realized posterior with unbounded density ratio against the prior
    /// despite comparable tails.
    UnboundedDensityRatio { entry: usize, witness_radius: f64 },
    NoPartitionFound { failing_cell: (f64, f64), reason: String },
}

#[derive(Debug, Clone)]
pub struct ConsistencyEvidence<T: Scalar> {
    pub model: Option<SubjectiveModel<T>>,
    pub certificates: Vec<CellCertificate<T>>,
    pub partition: PartitionDescription,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub enum ConsistencyVerdict<T: Scalar> {
    Consistent(ConsistencyEvidence<T>),
    Inconsistent(InconsistencyWitness),
    Undecided { reason: String },
}

impl<T: Scalar> ConsistencyVerdict<T> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyVerdict::Consistent(_))
    }
}

fn finite_posteriors<'a, T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &'a PosteriorEnsemble<T>,
) -> Result<Vec<&'a FiniteDistribution<T>>> {
    let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
    let mut out = Vec::with_capacity(entries.len());
    for entry in entries {
        match &entry.posterior {
            Posterior::Finite(d) => {
                prior.same_states(d)?;
                out.push(d);
            }
            Posterior::Parametric(_) => return Err(Error::MixedRepresentation),
        }
    }
    Ok(out)
}

/// Consistency test for a finite-state prior and a finite ensemble.
///
/// Tests whether the prior contains a grain of the average posterior, and
/// independently whether it contains a grain of every realized posterior;
/// the two must agree, and on success the explicit model is constructed
/// with the trivial partition.
pub fn check_finite_support<T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
) -> Result<ConsistencyVerdict<T>> {
    let posteriors = finite_posteriors(prior, ensemble)?;
    let avg = match average_posterior(ensemble, None)? {
        AveragePosterior::Finite(d) => d,
        _ => return Err(Error::MixedRepresentation),
    };
    let average_grain = decompose_finite(prior, &avg)?;
    let each_grain: Vec<GrainOutcome<T>> = posteriors
        .iter()
        .map(|q| decompose_finite(prior, q))
        .collect::<Result<_>>()?;
    let all_each = each_grain.iter().all(GrainOutcome::is_certificate);
    if average_grain.is_certificate() != all_each {
        return Err(Error::LadderViolation(
            "grain of the average posterior must coincide with grain of every realized posterior"
                .into(),
        ));
    }
    match average_grain {
        GrainOutcome::NoGrain(reason) => {
            let witness = match reason {
                NoGrainReason::SupportViolation { witness } => witness,
                other => {
                    return Err(Error::LadderViolation(format!(
                        "finite grain test failed for a non-support reason: {other}"
                    )))
                }
            };
            Ok(ConsistencyVerdict::Inconsistent(
                InconsistencyWitness::SupportViolation { witness },
            ))
        }
        GrainOutcome::Certificate(_) => {
            let signals = TrueSignalModel::from_ensemble(ensemble)?;
            let (model, certificates) =
                construct_subjective_model(prior, ensemble, &signals, &PartitionSpec::Trivial)?;
            Ok(ConsistencyVerdict::Consistent(ConsistencyEvidence {
                model: Some(model),
                certificates,
                partition: PartitionDescription::Trivial,
                note: None,
            }))
        }
    }
}

/// Support inclusion `supp(avg) ⊆ supp(prior)` for finite representations.
pub fn support_inclusion_finite<T: Scalar>(
    prior: &FiniteDistribution<T>,
    avg: &FiniteDistribution<T>,
) -> Result<bool> {
    prior.same_states(avg)?;
    Ok((0..prior.len()).all(|i| !(*avg.prob(i) > T::zero()) || *prior.prob(i) > T::zero()))
}

/// Support inclusion for parametric representations. The average posterior
/// is passed as its mixture components; all laws must have continuous
/// positive densities on their supports.
pub fn support_inclusion_parametric(
    prior: &ParametricDistribution,
    avg_components: &[&ParametricDistribution],
) -> Result<bool> {
    if prior.is_atomic() || avg_components.iter().any(|c| c.is_atomic()) {
        return Err(Error::HypothesisViolated(
            "support-inclusion test needs continuous positive densities".into(),
        ));
    }
    Ok(avg_components
        .iter()
        .all(|c| crate::measures::supported_within(c, prior)))
}

/// A tail-order refutation: posteriors with heavier tails than the prior.
#[derive(Debug, Clone)]
pub struct TailViolation {
    pub flagged: Vec<(usize, TailVerdict)>,
}

/// Flags realized posteriors whose tails dominate an unbounded-support
/// prior. Point-mass families never trip this test: each realized point
/// mass has compact support.
pub fn tail_inconsistency_test<T: Scalar>(
    prior: &ParametricDistribution,
    ensemble: &PosteriorEnsemble<T>,
) -> Result<Option<TailViolation>> {
    if prior.support().is_bounded() {
        return Ok(None);
    }
    let entries = match ensemble {
        PosteriorEnsemble::PointMassFamily { .. } => return Ok(None),
        PosteriorEnsemble::Finite { entries } => entries,
    };
    let mut flagged = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        let q = match &entry.posterior {
            Posterior::Parametric(q) => q,
            Posterior::Finite(_) => return Err(Error::MixedRepresentation),
        };
        let verdict = tail_order_compare(prior, q);
        if verdict.relation == TailRelation::QHeavier {
            flagged.push((i, verdict));
        }
    }
    Ok((!flagged.is_empty()).then_some(TailViolation { flagged }))
}

/// Builds the subjective model of the constructive proof.
///
/// Per positive-mass cell k of the partition the maximal grain share εₖ of
/// the cell's average posterior is extracted; the signal labeled by
/// posterior μ gets subjective mass εₖ·ℙ(μ), the reserved ⊖ signal absorbs
/// `Σₖ(1-εₖ)·F(Eₖ)`, its conditional is the residual mixture, and the
/// joint is the kernel times the signal marginal. The construction
/// guarantees `Q_X = prior` and that Bayes updating under Q reproduces the
/// ensemble.
pub fn construct_subjective_model<T: Scalar>(
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
    true_signals: &TrueSignalModel<T>,
    partition: &PartitionSpec,
) -> Result<(SubjectiveModel<T>, Vec<CellCertificate<T>>)> {
    let posteriors = finite_posteriors(prior, ensemble)?;
    let entries = ensemble.entries().expect("finite ensemble");
    let n = entries.len();
    if true_signals.probs().len() != n {
        return Err(Error::validation(
            "true_signals",
            format!("{} probabilities for {n} posteriors", true_signals.probs().len()),
        ));
    }
    for (entry, p) in entries.iter().zip(true_signals.probs()) {
        if !entry.weight.close_to(p) {
            return Err(Error::validation(
                "true_signals",
                "identity labeling requires signal probabilities equal to ensemble weights",
            ));
        }
    }
    let cells = partition.cells(n)?;

    let mut epsilon_of_entry = vec![T::zero(); n];
    let mut certificates = Vec::with_capacity(cells.len());
    // per-cell residual terms (1-εₖ)·F(Eₖ)·μ'ₖ, summed state by state
    let mut residual_mix = vec![T::zero(); prior.len()];
    let mut residual_mass = T::zero();
    for cell in &cells {
        let cell_weight = cell
            .iter()
            .map(|&i| entries[i].weight.clone())
            .fold(T::zero(), |a, b| a + b);
        let avg = match average_posterior(ensemble, Some(cell))? {
            AveragePosterior::Finite(d) => d,
            _ => return Err(Error::MixedRepresentation),
        };
        let outcome = decompose_finite(prior, &avg)?;
        let cert = match outcome {
            GrainOutcome::Certificate(c) => c,
            GrainOutcome::NoGrain(reason) => {
                return Err(Error::NoGrain {
                    cell: format!("{cell:?}"),
                    reason,
                })
            }
        };
        let eps = cert.epsilon.clone();
        for &i in cell {
            epsilon_of_entry[i] = eps.clone();
        }
        let shortfall = (T::one() - eps.clone()) * cell_weight;
        if shortfall > T::zero() {
            if let crate::grain::Residual::Finite(res) = &cert.residual {
                for (acc, p) in residual_mix.iter_mut().zip(res.probs()) {
                    *acc = acc.clone() + shortfall.clone() * p.clone();
                }
            }
            residual_mass = residual_mass + shortfall;
        }
        let verified = crate::grain::verify_certificate_finite(prior, &avg, &cert).pass();
        certificates.push(CellCertificate {
            cell: CellId::Entries(cell.clone()),
            certificate: cert,
            verified,
        });
    }

    let residual_signal_mass = residual_mass.clone();
    let residual_kernel: Vec<T> = if residual_signal_mass > T::zero() {
        residual_mix
            .iter()
            .map(|v| v.clone() / residual_signal_mass.clone())
            .collect()
    } else {
        // ⊖ never occurs subjectively; by convention its posterior is the prior
        prior.probs().to_vec()
    };

    let mut signals: Vec<Signal> = (0..n).map(Signal::Entry).collect();
    signals.push(Signal::Residual);
    let mut joint: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; prior.len()];
    for (j, posterior) in posteriors.iter().enumerate() {
        let signal_mass = epsilon_of_entry[j].clone() * true_signals.probs()[j].clone();
        for (x, row) in joint.iter_mut().enumerate() {
            row[j] = posterior.prob(x).clone() * signal_mass.clone();
        }
    }
    for (x, row) in joint.iter_mut().enumerate() {
        row[n] = residual_kernel[x].clone() * residual_signal_mass.clone();
    }
    let model = SubjectiveModel::new(prior.states().clone(), signals, joint)?;
    Ok((model, certificates))
}

/// Report on the three defining conditions of a subjective model.
#[derive(Debug, Clone)]
pub struct ModelReport {
    /// (a) the state marginal equals the prior
    pub prior_matches: bool,
    /// (b) every true-positive signal has positive subjective mass
    pub signals_supported: bool,
    /// (c) Bayes conditionals at true-positive signals equal their labels
    pub kernels_match: bool,
    /// (c) the pushforward of the kernel under the true law equals the
    /// ensemble weights
    pub pushforward_matches: bool,
    pub failures: Vec<String>,
}

impl ModelReport {
    pub fn pass(&self) -> bool {
        self.prior_matches && self.signals_supported && self.kernels_match && self.pushforward_matches
    }
}

/// Compares a computed value against a reference. With an explicit grid
/// tolerance, zero references are structural: the grid represents zero
/// exactly, so quantization slack applies only to positive magnitudes.
fn eq_within<T: Scalar>(got: &T, reference: &T, tol: Option<&T>) -> bool {
    match tol {
        None => got.close_to(reference),
        Some(t) => {
            if reference.is_zero() {
                return got.is_zero();
            }
            let diff = got.clone() - reference.clone();
            let diff = if diff.is_nonnegative() { diff } else { -diff };
            diff <= *t
        }
    }
}

/// Checks a candidate model against the three conditions with the mode's
/// default tolerance (exact in rational mode).
pub fn verify_model<T: Scalar>(
    model: &SubjectiveModel<T>,
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
    true_signals: &TrueSignalModel<T>,
) -> Result<ModelReport> {
    verify_model_with_tol(model, prior, ensemble, true_signals, None)
}

/// As [`verify_model`], with an explicit absolute tolerance on every
/// compared identity (used by the coarse grid oracle).
pub fn verify_model_with_tol<T: Scalar>(
    model: &SubjectiveModel<T>,
    prior: &FiniteDistribution<T>,
    ensemble: &PosteriorEnsemble<T>,
    true_signals: &TrueSignalModel<T>,
    tol: Option<&T>,
) -> Result<ModelReport> {
    let posteriors = finite_posteriors(prior, ensemble)?;
    if model.states() != prior.states() {
        return Err(Error::StateMismatch("model vs prior".into()));
    }
    let posterior_positions: Vec<usize> = model
        .signals()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Signal::Entry(_)))
        .map(|(j, _)| j)
        .collect();
    if posterior_positions.len() != true_signals.probs().len() {
        return Err(Error::validation(
            "true_signals",
            format!(
                "{} probabilities for {} posterior signals",
                true_signals.probs().len(),
                posterior_positions.len()
            ),
        ));
    }
    for (j, signal) in model.signals().iter().enumerate() {
        if let Signal::Entry(e) = signal {
            if *e >= posteriors.len() {
                return Err(Error::validation(
                    "model.signals",
                    format!("signal {j} labels missing ensemble entry {e}"),
                ));
            }
        }
    }

    let mut failures = Vec::new();

    // (a)
    let x_marginal = model.x_marginal();
    let mut prior_matches = true;
    for (i, got) in x_marginal.iter().enumerate() {
        if !eq_within(got, prior.prob(i), tol) {
            prior_matches = false;
            failures.push(format!(
                "Q_X({}) = {got}, prior has {}",
                prior.states()[i],
                prior.prob(i)
            ));
        }
    }

    // (b)
    let s_marginal = model.s_marginal();
    let mut signals_supported = true;
    for (pos, &j) in posterior_positions.iter().enumerate() {
        if *true_signals.probs().get(pos).unwrap_or(&T::zero()) > T::zero()
            && !(s_marginal[j] > T::zero())
        {
            signals_supported = false;
            failures.push(format!("signal {j} occurs truly but Q_S gives it zero mass"));
        }
    }

    // (c) conditionals equal their labels at truly occurring signals
    let mut kernels_match = true;
    for (pos, &j) in posterior_positions.iter().enumerate() {
        if !(true_signals.probs()[pos] > T::zero()) {
            continue;
        }
        let Signal::Entry(e) = model.signals()[j] else {
            unreachable!()
        };
        match model.kernel(j) {
            Some(kernel) => {
                let expected = posteriors[e];
                let ok = (0..kernel.len())
                    .all(|x| eq_within(kernel.prob(x), expected.prob(x), tol));
                if !ok {
                    kernels_match = false;
                    failures.push(format!(
                        "posterior at signal {j} is {kernel}, labeled {expected}"
                    ));
                }
            }
            None => {
                kernels_match = false;
                failures.push(format!("signal {j} has no conditional (zero mass)"));
            }
        }
    }

    // (c) pushforward of the kernel under the true law matches the weights
    let entries = ensemble.entries().expect("finite ensemble");
    let mut pushforward_matches = true;
    let mut pushed = vec![T::zero(); entries.len()];
    for (pos, &j) in posterior_positions.iter().enumerate() {
        let p = true_signals.probs()[pos].clone();
        if !(p > T::zero()) {
            continue;
        }
        let Some(kernel) = model.kernel(j) else {
            pushforward_matches = false;
            continue;
        };
        // assign the signal's mass to the nearest realized posterior
        let mut best: Option<(usize, f64)> = None;
        for (e, q) in posteriors.iter().enumerate() {
            let dist = (0..kernel.len())
                .map(|x| (kernel.prob(x).to_f64() - q.prob(x).to_f64()).abs())
                .fold(0.0f64, f64::max);
            if best.map_or(true, |(_, d)| dist < d) {
                best = Some((e, dist));
            }
        }
        let (e, _) = best.expect("nonempty ensemble");
        let matches_label = (0..kernel.len())
            .all(|x| eq_within(kernel.prob(x), posteriors[e].prob(x), tol));
        if matches_label {
            pushed[e] = pushed[e].clone() + p;
        } else {
            pushforward_matches = false;
            failures.push(format!(
                "signal {j} induces a posterior outside the ensemble"
            ));
        }
    }
    if pushforward_matches {
        for (e, entry) in entries.iter().enumerate() {
            if !eq_within(&pushed[e], &entry.weight, tol) {
                pushforward_matches = false;
                failures.push(format!(
                    "posterior {e} realized with probability {}, ensemble says {}",
                    pushed[e], entry.weight
                ));
            }
        }
    }

    Ok(ModelReport {
        prior_matches,
        signals_supported,
        kernels_match,
        pushforward_matches,
        failures,
    })
}

/// Consistency check for a parametric prior with finitely many parametric
/// posteriors: support inclusion, then the tail order, then a grain
/// certificate for every realized posterior.
pub fn check_parametric_ensemble(
    prior: &ParametricDistribution,
    ensemble: &PosteriorEnsemble<f64>,
) -> Result<ConsistencyVerdict<f64>> {
    let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
    let posteriors: Vec<&ParametricDistribution> = entries
        .iter()
        .map(|e| match &e.posterior {
            Posterior::Parametric(q) => Ok(q),
            Posterior::Finite(_) => Err(Error::MixedRepresentation),
        })
        .collect::<Result<_>>()?;

    if let Some(violation) = tail_inconsistency_test(prior, ensemble)? {
        return Ok(ConsistencyVerdict::Inconsistent(
            InconsistencyWitness::TailViolation {
                flagged: violation.flagged,
            },
        ));
    }

    let mut certificates = Vec::with_capacity(posteriors.len());
    for (i, q) in posteriors.iter().enumerate() {
        match decompose_parametric(prior, q)? {
            GrainOutcome::Certificate(cert) => {
                let verified = verify_certificate_parametric(prior, q, &cert).pass();
                certificates.push(CellCertificate {
                    cell: CellId::Entries(vec![i]),
                    certificate: cert,
                    verified,
                });
            }
            GrainOutcome::NoGrain(reason) => {
                let witness = match reason {
                    NoGrainReason::SupportViolation { witness } => {
                        InconsistencyWitness::SupportViolation { witness }
                    }
                    NoGrainReason::UnboundedRatio { witness_radius } => {
                        InconsistencyWitness::UnboundedDensityRatio {
                            entry: i,
                            witness_radius,
                        }
                    }
                    NoGrainReason::AtomAgainstContinuous { location } => {
                        InconsistencyWitness::SupportViolation {
                            witness: SupportWitness::Point(location),
                        }
                    }
                };
                return Ok(ConsistencyVerdict::Inconsistent(witness));
            }
        }
    }
    Ok(ConsistencyVerdict::Consistent(ConsistencyEvidence {
        model: None,
        certificates,
        partition: PartitionDescription::Singleton,
        note: Some(
            "grain certificates found for every realized posterior; a rationalizing model exists"
                .into(),
        ),
    }))
}

/// Consistency check for a point-mass family of posteriors.
///
/// Realized posteriors are point masses δ_Z; consistency is equivalent to
/// the location law assigning all of its mass to the prior's support while
/// both densities stay positive there, which is exactly what the interval
/// partition certifies cell by cell. Run [`partition_prover`] for the
/// explicit per-cell certificates.
pub fn check_point_mass_family(
    prior: &ParametricDistribution,
    location_law: &ParametricDistribution,
) -> Result<ConsistencyVerdict<f64>> {
    if prior.is_atomic() {
        return Err(Error::HypothesisViolated(
            "prior must be non-atomic with a positive continuous density".into(),
        ));
    }
    if let ParametricDistribution::PointMass { location } = location_law {
        // the posterior is a fixed point mass: never absolutely continuous
        // with respect to a non-atomic prior
        return Ok(ConsistencyVerdict::Inconsistent(
            InconsistencyWitness::SupportViolation {
                witness: SupportWitness::Point(*location),
            },
        ));
    }
    if !crate::measures::supported_within(location_law, prior) {
        let ps = prior.support();
        let ls = location_law.support();
        let witness = if ls.hi > ps.hi {
            if ls.hi.is_finite() {
                0.5 * (ps.hi + ls.hi)
            } else {
                ps.hi + 1.0
            }
        } else if ls.lo.is_finite() {
            0.5 * (ps.lo + ls.lo)
        } else {
            ps.lo - 1.0
        };
        return Ok(ConsistencyVerdict::Inconsistent(
            InconsistencyWitness::SupportViolation {
                witness: SupportWitness::Point(witness),
            },
        ));
    }
    Ok(ConsistencyVerdict::Consistent(ConsistencyEvidence {
        model: None,
        certificates: Vec::new(),
        partition: PartitionDescription::SupportArgument,
        note: Some(
            "point-mass locations stay inside the prior's support, so every interval cell \
             certifies; run the partition command for explicit per-cell certificates"
                .into(),
        ),
    }))
}

/// Certifies or refutes the interval-partition grain condition for a
/// point-mass family of posteriors.
///
/// The line is split into cells `[k·w, (k+1)·w)`. Every cell with positive
/// location mass inside a horizon covering all but `1e-12` of both laws'
/// mass is certified by an explicit, grid-verified grain certificate of
/// its truncated average posterior; cells beyond the horizon are certified
/// analytically: on any bounded cell inside the prior's support the
/// truncated density ratio attains a finite maximum, so a certificate
/// exists for each of the countably many tail cells.
pub fn partition_prover(
    prior: &ParametricDistribution,
    location_law: &ParametricDistribution,
    cell_width: f64,
) -> Result<ConsistencyVerdict<f64>> {
    if prior.is_atomic() {
        return Err(Error::HypothesisViolated(
            "prior must be non-atomic with a positive continuous density".into(),
        ));
    }
    if !(cell_width > 0.0) || !cell_width.is_finite() {
        return Err(Error::HypothesisViolated(format!(
            "cell width must be positive and finite, got {cell_width}"
        )));
    }
    if let ParametricDistribution::PointMass { location } = location_law {
        let k = (location / cell_width).floor();
        return Ok(ConsistencyVerdict::Inconsistent(
            InconsistencyWitness::NoPartitionFound {
                failing_cell: (k * cell_width, (k + 1.0) * cell_width),
                reason: NoGrainReason::AtomAgainstContinuous {
                    location: *location,
                }
                .to_string(),
            },
        ));
    }

    let (plo, phi) = coverage_interval(prior, 1e-12);
    let (llo, lhi) = coverage_interval(location_law, 1e-12);
    let horizon = plo.abs().max(phi.abs()).max(llo.abs()).max(lhi.abs());
    let k_min = (llo.max(-horizon) / cell_width).floor() as i64;
    let k_max = (lhi.min(horizon) / cell_width).ceil() as i64;

    // deterministic center-outward cell order
    let mut ks: Vec<i64> = (k_min..=k_max).collect();
    ks.sort_by_key(|k| (k.abs(), *k));

    let mut certificates = Vec::new();
    for k in ks {
        let (lo, hi) = (k as f64 * cell_width, (k + 1) as f64 * cell_width);
        if location_law.interval_mass(lo, hi) <= 0.0 {
            continue;
        }
        let avg = cell_average_posterior(location_law, lo, hi)?;
        match decompose_parametric(prior, &avg)? {
            GrainOutcome::Certificate(cert) => {
                let verified = verify_certificate_parametric(prior, &avg, &cert).pass();
                if !verified {
                    return Ok(ConsistencyVerdict::Inconsistent(
                        InconsistencyWitness::NoPartitionFound {
                            failing_cell: (lo, hi),
                            reason: "certificate failed grid verification".into(),
                        },
                    ));
                }
                certificates.push(CellCertificate {
                    cell: CellId::Interval { lo, hi },
                    certificate: cert,
                    verified,
                });
            }
            GrainOutcome::NoGrain(reason) => {
                return Ok(ConsistencyVerdict::Inconsistent(
                    InconsistencyWitness::NoPartitionFound {
                        failing_cell: (lo, hi),
                        reason: reason.to_string(),
                    },
                ));
            }
        }
    }

    // tail cells: beyond the horizon, each bounded cell certifies as long
    // as the prior's support keeps covering it
    let mut tail_notes = Vec::new();
    let loc_support = location_law.support();
    let prior_support = prior.support();
    for (side, unbounded, first_k) in [
        ("right", loc_support.hi == f64::INFINITY, k_max + 1),
        ("left", loc_support.lo == f64::NEG_INFINITY, k_min - 1),
    ] {
        if !unbounded {
            continue;
        }
        let side_covered = if side == "right" {
            prior_support.hi == f64::INFINITY
        } else {
            prior_support.lo == f64::NEG_INFINITY
        };
        let (lo, hi) = (
            first_k as f64 * cell_width,
            (first_k + 1) as f64 * cell_width,
        );
        if !side_covered {
            return Ok(ConsistencyVerdict::Inconsistent(
                InconsistencyWitness::NoPartitionFound {
                    failing_cell: (lo, hi),
                    reason: format!("prior support ends before the {side} tail cells"),
                },
            ));
        }
        // sample the first beyond-horizon cell as a witness of the pattern
        let sample = cell_average_posterior(location_law, lo, hi)
            .and_then(|avg| decompose_parametric(prior, &avg));
        match sample {
            Ok(GrainOutcome::Certificate(cert)) => {
                tail_notes.push(format!(
                    "{side} tail: bounded cells inside the prior's support; first tail cell \
                     [{lo}, {hi}) certifies with log c = {:.3}",
                    cert.log_c
                ));
            }
            _ => {
                return Ok(ConsistencyVerdict::Inconsistent(
                    InconsistencyWitness::NoPartitionFound {
                        failing_cell: (lo, hi),
                        reason: format!("first {side} tail cell fails to certify"),
                    },
                ));
            }
        }
    }

    Ok(ConsistencyVerdict::Consistent(ConsistencyEvidence {
        model: None,
        certificates,
        partition: PartitionDescription::IntervalCells {
            width: cell_width,
            horizon,
            tail_note: if tail_notes.is_empty() {
                "location law has bounded support; no tail cells".into()
            } else {
                tail_notes.join("; ")
            },
        },
        note: None,
    }))
}
