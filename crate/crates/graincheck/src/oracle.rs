//! Independent brute-force and Monte Carlo verifiers.
//!
//! `exhaustive_model_search` enumerates every joint table on a probability
//! grid (entries in multiples of 1/g) and returns the first one that
//! passes the model verifier at the grid tolerance 2/g. It is the desk-
//! scale oracle for the necessity direction: if no grid table works, no
//! model close to the grid does either. The enumeration runs in exact
//! integer arithmetic on a common denominator, pruning branches that
//! provably cannot reach a feasible table; pruning never removes a table
//! the verifier would accept.
//!
//! `monte_carlo_posterior_law` samples signals from the true law, pushes
//! them through a model's updating kernel, and tallies the realized
//! posteriors. Sampling is seeded and reproducible; the default seed is
//! 0x5EED.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::measures::{FiniteDistribution, PosteriorEnsemble};
use crate::rationalizer::{verify_model_with_tol, Signal, SubjectiveModel, TrueSignalModel};
use crate::scalar::Scalar;

/// Default RNG seed for reproducible sampling.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Hard caps for the exhaustive search.
const MAX_STATES: usize = 3;
const MAX_POSTERIORS: usize = 3;
const MAX_RESOLUTION: u32 = 20;
const MAX_DENOMINATOR: i128 = 1_000_000_000;

/// The space of subjective-model joint tables with probabilities in
/// multiples of `1/resolution`.
#[derive(Debug, Clone)]
pub struct GridModelSpace {
    pub state_count: usize,
    /// Posterior-labeled signals; the reserved ⊖ signal is implicit.
    pub posterior_count: usize,
    pub resolution: u32,
}

impl GridModelSpace {
    pub fn new(state_count: usize, posterior_count: usize, resolution: u32) -> Result<Self> {
        if resolution < 4 {
            return Err(Error::validation(
                "grid",
                format!("resolution must be at least 4, got {resolution}"),
            ));
        }
        if state_count > MAX_STATES
            || posterior_count > MAX_POSTERIORS
            || resolution > MAX_RESOLUTION
        {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{state_count} states × {posterior_count} posteriors at grid {resolution} \
                 (limits: {MAX_STATES} states, {MAX_POSTERIORS} posteriors, grid {MAX_RESOLUTION})"
            )));
        }
        Ok(Self {
            state_count,
            posterior_count,
            resolution,
        })
    }

    /// Number of joint tables on the grid: compositions of `resolution`
    /// into `state_count · (posterior_count + 1)` cells.
    pub fn table_count(&self) -> u128 {
        let cells = (self.state_count * (self.posterior_count + 1)) as u128;
        let g = self.resolution as u128;
        // C(g + cells - 1, cells - 1)
        let mut result: u128 = 1;
        for i in 0..(cells - 1) {
            result = result * (g + i + 1) / (i + 1);
        }
        result
    }
}

/// Optional restrictions on the searched model space.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchRestrictions {
    /// Force zero subjective mass on the reserved ⊖ signal.
    pub forbid_residual_mass: bool,
    /// Pin the signal marginal to the true signal law, `Q_S = ℙ`.
    pub pin_signal_marginal: bool,
}

struct ScaledSearch {
    d: usize,
    n: usize,
    denominator: i128,
    unit: i128,
    tol: i128,
    prior: Vec<i128>,
    weights: Vec<i128>,
    posteriors: Vec<Vec<i128>>,
}

fn rational_denominator(r: &BigRational) -> BigInt {
    r.denom().clone()
}

fn scale_to(r: &BigRational, denominator: &BigInt) -> i128 {
    let scaled = r.numer() * (denominator / r.denom());
    scaled.to_i128().expect("scaled probability fits i128")
}

/// Enumerates grid joint tables for a finite-state instance and returns
/// the first model passing [`verify_model_with_tol`] at tolerance
/// `2/resolution`, or `None` when no grid table passes.
pub fn exhaustive_model_search(
    prior: &FiniteDistribution<BigRational>,
    ensemble: &PosteriorEnsemble<BigRational>,
    true_signals: &TrueSignalModel<BigRational>,
    resolution: u32,
    restrictions: SearchRestrictions,
) -> Result<Option<SubjectiveModel<BigRational>>> {
    let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
    let space = GridModelSpace::new(prior.len(), entries.len(), resolution)?;
    let d = space.state_count;
    let n = space.posterior_count;

    // common denominator for the grid and every instance probability
    let mut denominator = BigInt::from(resolution);
    let mut fold = |den: BigInt| {
        denominator = denominator.lcm(&den);
    };
    for p in prior.probs() {
        fold(rational_denominator(p));
    }
    let mut posterior_probs: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for entry in entries {
        match &entry.posterior {
            crate::measures::Posterior::Finite(q) => {
                prior.same_states(q)?;
                for p in q.probs() {
                    fold(rational_denominator(p));
                }
                posterior_probs.push(q.probs().to_vec());
            }
            crate::measures::Posterior::Parametric(_) => return Err(Error::MixedRepresentation),
        }
        fold(rational_denominator(&entry.weight));
    }
    for p in true_signals.probs() {
        fold(rational_denominator(p));
    }
    let denominator_int = denominator
        .to_i128()
        .filter(|d| *d <= MAX_DENOMINATOR)
        .ok_or_else(|| {
            Error::SearchSpaceTooLarge(format!(
                "common denominator {denominator} too fine for the grid oracle"
            ))
        })?;

    let search = ScaledSearch {
        d,
        n,
        denominator: denominator_int,
        unit: denominator_int / resolution as i128,
        tol: 2 * denominator_int / resolution as i128,
        prior: prior.probs().iter().map(|p| scale_to(p, &denominator)).collect(),
        weights: true_signals
            .probs()
            .iter()
            .map(|p| scale_to(p, &denominator))
            .collect(),
        posteriors: posterior_probs
            .iter()
            .map(|q| q.iter().map(|p| scale_to(p, &denominator)).collect())
            .collect(),
    };

    let mut columns: Vec<Vec<i128>> = vec![vec![0; d]; n];
    let mut rows: Vec<i128> = vec![0; d];
    let mut found = None;
    search_columns(
        &search,
        restrictions,
        prior,
        ensemble,
        true_signals,
        resolution,
        0,
        &mut columns,
        &mut rows,
        0,
        &mut found,
    )?;
    Ok(found)
}

fn ceil_to_multiple(value: i128, unit: i128) -> i128 {
    value.div_euclid(unit) * unit + if value.rem_euclid(unit) > 0 { unit } else { 0 }
}

fn floor_to_multiple(value: i128, unit: i128) -> i128 {
    value.div_euclid(unit) * unit
}

fn ceil_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b) + if a.rem_euclid(b) > 0 { 1 } else { 0 }
}

#[allow(clippy::too_many_arguments)]
fn search_columns(
    search: &ScaledSearch,
    restrictions: SearchRestrictions,
    prior: &FiniteDistribution<BigRational>,
    ensemble: &PosteriorEnsemble<BigRational>,
    true_signals: &TrueSignalModel<BigRational>,
    resolution: u32,
    column: usize,
    columns: &mut Vec<Vec<i128>>,
    rows: &mut Vec<i128>,
    total: i128,
    found: &mut Option<SubjectiveModel<BigRational>>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    let u = search.unit;
    if column == search.n {
        return finish_table(
            search,
            restrictions,
            prior,
            ensemble,
            true_signals,
            resolution,
            columns,
            rows,
            total,
            found,
        );
    }
    let remaining_columns_after = (search.n - column - 1) as i128;
    let masses: Vec<i128> = if restrictions.pin_signal_marginal {
        let m = search.weights[column];
        if m % u != 0 || m <= 0 {
            return Ok(()); // no grid table can carry this exact marginal
        }
        vec![m]
    } else {
        let max = search.denominator - total - remaining_columns_after * u;
        (1..)
            .map(|k| k as i128 * u)
            .take_while(|m| *m <= max)
            .collect()
    };

    for mass in masses {
        if total + mass + remaining_columns_after * u > search.denominator {
            break;
        }
        let mut cell = vec![0i128; search.d];
        enumerate_column(
            search,
            restrictions,
            prior,
            ensemble,
            true_signals,
            resolution,
            column,
            mass,
            0,
            mass,
            &mut cell,
            columns,
            rows,
            total,
            found,
        )?;
        if found.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

/// Assigns the cells of one signal column, state by state, subject to the
/// conditional-tolerance window `|cell/mass − μ(x)| ≤ 2/g`.
#[allow(clippy::too_many_arguments)]
fn enumerate_column(
    search: &ScaledSearch,
    restrictions: SearchRestrictions,
    prior: &FiniteDistribution<BigRational>,
    ensemble: &PosteriorEnsemble<BigRational>,
    true_signals: &TrueSignalModel<BigRational>,
    resolution: u32,
    column: usize,
    mass: i128,
    state: usize,
    left: i128,
    cell: &mut Vec<i128>,
    columns: &mut Vec<Vec<i128>>,
    rows: &mut Vec<i128>,
    total: i128,
    found: &mut Option<SubjectiveModel<BigRational>>,
) -> Result<()> {
    if found.is_some() {
        return Ok(());
    }
    let u = search.unit;
    let d = search.d;
    if state == d {
        if left != 0 {
            return Ok(());
        }
        // commit the column, prune on row overshoot and row feasibility
        for x in 0..d {
            rows[x] += cell[x];
        }
        let new_total = total + mass;
        let mut ok = true;
        let mut still_needed = 0i128;
        for x in 0..d {
            let cap = if search.prior[x] == 0 {
                0 // structural zero: no mass may ever land on a dead state
            } else {
                search.prior[x] + search.tol
            };
            if rows[x] > cap {
                ok = false;
                break;
            }
            still_needed += (search.prior[x] - search.tol - rows[x]).max(0);
        }
        if ok && still_needed <= search.denominator - new_total {
            columns[column] = cell.clone();
            search_columns(
                search,
                restrictions,
                prior,
                ensemble,
                true_signals,
                resolution,
                column + 1,
                columns,
                rows,
                new_total,
                found,
            )?;
        }
        for x in 0..d {
            rows[x] -= cell[x];
        }
        return Ok(());
    }
    let target = search.posteriors[column][state];
    // zero posterior probabilities are structural: the kernel must vanish
    // there exactly, tolerance covers only positive magnitudes
    let (lo, hi) = if target == 0 {
        (0, 0)
    } else {
        let lo_raw = ceil_div((target - search.tol).max(0) * mass, search.denominator);
        let hi_raw = ((target + search.tol) * mass) / search.denominator;
        (
            ceil_to_multiple(lo_raw, u).max(0),
            floor_to_multiple(hi_raw.min(left), u),
        )
    };
    let mut value = lo;
    while value <= hi {
        cell[state] = value;
        enumerate_column(
            search,
            restrictions,
            prior,
            ensemble,
            true_signals,
            resolution,
            column,
            mass,
            state + 1,
            left - value,
            cell,
            columns,
            rows,
            total,
            found,
        )?;
        if found.is_some() {
            return Ok(());
        }
        value += u;
    }
    cell[state] = 0;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish_table(
    search: &ScaledSearch,
    restrictions: SearchRestrictions,
    prior: &FiniteDistribution<BigRational>,
    ensemble: &PosteriorEnsemble<BigRational>,
    true_signals: &TrueSignalModel<BigRational>,
    resolution: u32,
    columns: &[Vec<i128>],
    rows: &[i128],
    total: i128,
    found: &mut Option<SubjectiveModel<BigRational>>,
) -> Result<()> {
    let d = search.d;
    let u = search.unit;
    let leftover = search.denominator - total;
    let residual: Vec<i128> = if restrictions.forbid_residual_mass {
        if leftover != 0 {
            return Ok(());
        }
        for x in 0..d {
            if rows[x] < (search.prior[x] - search.tol).max(0) {
                return Ok(());
            }
        }
        vec![0; d]
    } else {
        let mut lo = vec![0i128; d];
        let mut hi = vec![0i128; d];
        let mut lo_sum = 0i128;
        let mut hi_sum = 0i128;
        for x in 0..d {
            let lo_x = ceil_to_multiple((search.prior[x] - search.tol - rows[x]).max(0), u);
            let hi_x = if search.prior[x] == 0 {
                0
            } else {
                floor_to_multiple(search.prior[x] + search.tol - rows[x], u)
            };
            if hi_x < lo_x {
                return Ok(());
            }
            lo[x] = lo_x;
            hi[x] = hi_x;
            lo_sum += lo_x;
            hi_sum += hi_x;
        }
        if leftover < lo_sum || leftover > hi_sum {
            return Ok(());
        }
        let mut spare = leftover - lo_sum;
        let mut out = lo;
        for x in 0..d {
            let room = hi[x] - out[x];
            let add = room.min(spare);
            out[x] += add;
            spare -= add;
        }
        debug_assert_eq!(spare, 0);
        out
    };

    let den = BigInt::from(search.denominator);
    let mut joint: Vec<Vec<BigRational>> = vec![Vec::with_capacity(search.n + 1); d];
    for (x, row) in joint.iter_mut().enumerate() {
        for column in columns {
            row.push(BigRational::new(BigInt::from(column[x]), den.clone()));
        }
        row.push(BigRational::new(BigInt::from(residual[x]), den.clone()));
    }
    let mut signals: Vec<Signal> = (0..search.n).map(Signal::Entry).collect();
    signals.push(Signal::Residual);
    let Ok(model) = SubjectiveModel::new(prior.states().clone(), signals, joint) else {
        return Ok(());
    };
    let tol = BigRational::from_ratio(2, resolution as i64);
    let report = verify_model_with_tol(&model, prior, ensemble, true_signals, Some(&tol))?;
    if report.pass() {
        *found = Some(model);
    }
    Ok(())
}

/// Empirical distribution of posteriors from seeded sampling: draws
/// signals i.i.d. from the true law, maps each through the model's
/// updating kernel, and groups realized posteriors by value.
#[derive(Debug, Clone)]
pub struct EmpiricalPosteriorLaw<T: Scalar> {
    pub groups: Vec<(FiniteDistribution<T>, f64)>,
    pub draws: u64,
}

impl<T: Scalar> EmpiricalPosteriorLaw<T> {
    /// Frequencies aligned to a finite ensemble's entries. Fails if some
    /// realized posterior matches no entry.
    pub fn align_to_ensemble(&self, ensemble: &PosteriorEnsemble<T>) -> Result<Vec<f64>> {
        let entries = ensemble.entries().ok_or(Error::MixedRepresentation)?;
        let mut out = vec![0.0; entries.len()];
        for (dist, freq) in &self.groups {
            let position = entries
                .iter()
                .position(|e| match &e.posterior {
                    crate::measures::Posterior::Finite(q) => q.close_to(dist),
                    crate::measures::Posterior::Parametric(_) => false,
                })
                .ok_or_else(|| {
                    Error::validation("simulation", "realized posterior outside the ensemble")
                })?;
            out[position] += freq;
        }
        Ok(out)
    }
}

pub fn monte_carlo_posterior_law<T: Scalar>(
    model: &SubjectiveModel<T>,
    true_signals: &TrueSignalModel<T>,
    draws: u64,
    seed: u64,
) -> Result<EmpiricalPosteriorLaw<T>> {
    if draws == 0 {
        return Err(Error::validation("draws", "at least one draw required"));
    }
    let positions: Vec<usize> = model
        .signals()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Signal::Entry(_)))
        .map(|(j, _)| j)
        .collect();
    if positions.len() != true_signals.probs().len() {
        return Err(Error::validation(
            "true_signals",
            "signal probabilities must align with the model's posterior signals",
        ));
    }
    let mut kernels = Vec::with_capacity(positions.len());
    for (&j, p) in positions.iter().zip(true_signals.probs()) {
        if *p > T::zero() {
            let kernel = model.kernel(j).ok_or_else(|| {
                Error::validation(
                    "model",
                    format!("signal {j} occurs truly but has zero subjective mass"),
                )
            })?;
            kernels.push(Some(kernel));
        } else {
            kernels.push(None);
        }
    }
    let cumulative: Vec<f64> = true_signals
        .probs()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p.to_f64();
            Some(*acc)
        })
        .collect();

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; positions.len()];
    for _ in 0..draws {
        let x: f64 = rng.random();
        let idx = cumulative
            .iter()
            .position(|c| x < *c)
            .unwrap_or(positions.len() - 1);
        counts[idx] += 1;
    }

    let mut groups: Vec<(FiniteDistribution<T>, f64)> = Vec::new();
    for (idx, count) in counts.iter().enumerate() {
        if *count == 0 {
            continue;
        }
        let Some(kernel) = &kernels[idx] else {
            continue;
        };
        let freq = *count as f64 / draws as f64;
        match groups.iter_mut().find(|(g, _)| g.close_to(kernel)) {
            Some((_, f)) => *f += freq,
            None => groups.push((kernel.clone(), freq)),
        }
    }
    Ok(EmpiricalPosteriorLaw { groups, draws })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{state_labels, EnsembleEntry, Posterior};
    use crate::rationalizer::{construct_subjective_model, PartitionSpec};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn overconfident_instance(
    ) -> (FiniteDistribution<BigRational>, PosteriorEnsemble<BigRational>) {
        let st = state_labels(&["H", "L"]);
        let prior = FiniteDistribution::new(st.clone(), vec![r(1, 2), r(1, 2)]).unwrap();
        let ensemble = PosteriorEnsemble::finite(vec![
            EnsembleEntry {
                posterior: Posterior::Finite(
                    FiniteDistribution::new(st.clone(), vec![r(4, 5), r(1, 5)]).unwrap(),
                ),
                weight: r(1, 4),
            },
            EnsembleEntry {
                posterior: Posterior::Finite(
                    FiniteDistribution::new(st, vec![r(1, 1), r(0, 1)]).unwrap(),
                ),
                weight: r(3, 4),
            },
        ])
        .unwrap();
        (prior, ensemble)
    }

    #[test]
    fn grid_search_finds_a_model_for_the_consistent_instance() {
        let (prior, ensemble) = overconfident_instance();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        let model = exhaustive_model_search(
            &prior,
            &ensemble,
            &signals,
            16,
            SearchRestrictions::default(),
        )
        .unwrap();
        assert!(model.is_some());
    }

    #[test]
    fn grid_search_rejects_support_violations() {
        let st = state_labels(&["H", "L"]);
        let prior = FiniteDistribution::new(st.clone(), vec![r(0, 1), r(1, 1)]).unwrap();
        let ensemble = PosteriorEnsemble::finite(vec![EnsembleEntry {
            posterior: Posterior::Finite(
                FiniteDistribution::new(st, vec![r(1, 1), r(0, 1)]).unwrap(),
            ),
            weight: r(1, 1),
        }])
        .unwrap();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        let model = exhaustive_model_search(
            &prior,
            &ensemble,
            &signals,
            12,
            SearchRestrictions::default(),
        )
        .unwrap();
        assert!(model.is_none());
    }

    #[test]
    fn restricted_search_reproduces_the_unsolvable_system() {
        // with zero ⊖ mass and the signal marginal pinned to the truth, the
        // overconfident instance admits no joint table
        let (prior, ensemble) = overconfident_instance();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        let model = exhaustive_model_search(
            &prior,
            &ensemble,
            &signals,
            20,
            SearchRestrictions {
                forbid_residual_mass: true,
                pin_signal_marginal: true,
            },
        )
        .unwrap();
        assert!(model.is_none());
    }

    #[test]
    fn search_space_limits_enforced() {
        let st = state_labels(&["a", "b", "c", "d"]);
        let prior = FiniteDistribution::uniform(st.clone());
        let ensemble = PosteriorEnsemble::finite(vec![EnsembleEntry {
            posterior: Posterior::Finite(FiniteDistribution::<BigRational>::point_mass(
                st.clone(),
                0,
            )),
            weight: r(1, 1),
        }])
        .unwrap();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        assert!(matches!(
            exhaustive_model_search(&prior, &ensemble, &signals, 16, Default::default()),
            Err(Error::SearchSpaceTooLarge(_))
        ));
        assert!(GridModelSpace::new(2, 2, 3).is_err());
        assert!(GridModelSpace::new(2, 2, 30).is_err());
        let space = GridModelSpace::new(2, 2, 16).unwrap();
        assert_eq!(space.table_count(), 20349); // C(21, 5)
    }

    #[test]
    fn monte_carlo_matches_the_true_law() {
        let (prior, ensemble) = overconfident_instance();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        let (model, _) =
            construct_subjective_model(&prior, &ensemble, &signals, &PartitionSpec::Trivial)
                .unwrap();
        let law = monte_carlo_posterior_law(&model, &signals, 100_000, DEFAULT_SEED).unwrap();
        let freqs = law.align_to_ensemble(&ensemble).unwrap();
        let sigma = (0.25f64 * 0.75 / 100_000.0).sqrt();
        assert!((freqs[0] - 0.25).abs() <= 4.0 * sigma, "{freqs:?}");
        assert!((freqs[1] - 0.75).abs() <= 4.0 * sigma, "{freqs:?}");
        // reproducible
        let again = monte_carlo_posterior_law(&model, &signals, 100_000, DEFAULT_SEED).unwrap();
        assert_eq!(law.align_to_ensemble(&ensemble).unwrap(), again.align_to_ensemble(&ensemble).unwrap());
    }

    #[test]
    fn monte_carlo_deterministic_single_signal() {
        let st = state_labels(&["H", "L"]);
        let prior = FiniteDistribution::new(st.clone(), vec![r(1, 2), r(1, 2)]).unwrap();
        let ensemble = PosteriorEnsemble::finite(vec![EnsembleEntry {
            posterior: Posterior::Finite(
                FiniteDistribution::new(st, vec![r(1, 3), r(2, 3)]).unwrap(),
            ),
            weight: r(1, 1),
        }])
        .unwrap();
        let signals = TrueSignalModel::from_ensemble(&ensemble).unwrap();
        let (model, _) =
            construct_subjective_model(&prior, &ensemble, &signals, &PartitionSpec::Trivial)
                .unwrap();
        let law = monte_carlo_posterior_law(&model, &signals, 10_000, 1).unwrap();
        assert_eq!(law.groups.len(), 1);
        assert_eq!(law.groups[0].1, 1.0);
    }

    #[test]
    fn monte_carlo_groups_duplicate_posterior_signals() {
        // four equally likely signals inducing two posteriors, two signals
        // apiece: the pushforward tallies ≈ (1/2, 1/2)
        let st = state_labels(&["H", "L"]);
        let q0 = FiniteDistribution::new(st.clone(), vec![r(1, 4), r(3, 4)]).unwrap();
        let q1 = FiniteDistribution::new(st.clone(), vec![r(3, 4), r(1, 4)]).unwrap();
        let signals_list = vec![
            Signal::Entry(0),
            Signal::Entry(0),
            Signal::Entry(1),
            Signal::Entry(1),
            Signal::Residual,
        ];
        let quarter = r(1, 4);
        let joint = vec![
            vec![
                q0.prob(0) * &quarter,
                q0.prob(0) * &quarter,
                q1.prob(0) * &quarter,
                q1.prob(0) * &quarter,
                r(0, 1),
            ],
            vec![
                q0.prob(1) * &quarter,
                q0.prob(1) * &quarter,
                q1.prob(1) * &quarter,
                q1.prob(1) * &quarter,
                r(0, 1),
            ],
        ];
        let model = SubjectiveModel::new(st.clone(), signals_list, joint).unwrap();
        let truth = TrueSignalModel::new(vec![quarter.clone(); 4]).unwrap();
        let law = monte_carlo_posterior_law(&model, &truth, 100_000, DEFAULT_SEED).unwrap();
        assert_eq!(law.groups.len(), 2);
        let sigma = (0.5f64 * 0.5 / 100_000.0).sqrt();
        for (_, freq) in &law.groups {
            assert!((freq - 0.5).abs() <= 4.0 * sigma);
        }
    }
}
