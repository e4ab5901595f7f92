//! Distributions over posteriors and their cell averages.

use crate::error::{Error, Result};
use crate::measures::finite::FiniteDistribution;
use crate::measures::parametric::{ParametricDistribution, ParametricMixture};
use crate::scalar::Scalar;

/// A realized posterior: a probability vector over the instance's states,
/// or a parametric law on the real line.
#[derive(Debug, Clone, PartialEq)]
pub enum Posterior<T: Scalar> {
    Finite(FiniteDistribution<T>),
    Parametric(ParametricDistribution),
}

impl<T: Scalar> Posterior<T> {
    pub fn close_to(&self, other: &Self) -> bool {
        match (self, other) {
            (Posterior::Finite(a), Posterior::Finite(b)) => a.close_to(b),
            (Posterior::Parametric(a), Posterior::Parametric(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleEntry<T: Scalar> {
    pub posterior: Posterior<T>,
    pub weight: T,
}

/// The population distribution of posteriors.
///
/// `Finite` lists the realized posteriors with their probabilities.
/// `PointMassFamily` is the family of point-mass posteriors `δ_Z` with the
/// location `Z` drawn from `location_law`.
#[derive(Debug, Clone, PartialEq)]
pub enum PosteriorEnsemble<T: Scalar> {
    Finite { entries: Vec<EnsembleEntry<T>> },
    PointMassFamily { location_law: ParametricDistribution },
}

impl<T: Scalar> PosteriorEnsemble<T> {
    pub fn finite(entries: Vec<EnsembleEntry<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("empty ensemble".into()));
        }
        let mut total = T::zero();
        for (i, entry) in entries.iter().enumerate() {
            if !(entry.weight > T::zero()) {
                return Err(Error::InvalidDistribution(format!(
                    "ensemble weight {} at entry {i} is not positive",
                    entry.weight
                )));
            }
            total = total + entry.weight.clone();
        }
        if !total.close_to(&T::one()) {
            return Err(Error::InvalidDistribution(format!(
                "ensemble weights sum to {total}, not 1"
            )));
        }
        for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                if entries[i].posterior.close_to(&entries[j].posterior) {
                    return Err(Error::InvalidDistribution(format!(
                        "posteriors at entries {i} and {j} coincide; merge their weights"
                    )));
                }
            }
        }
        Ok(Self::Finite { entries })
    }

    pub fn point_mass_family(location_law: ParametricDistribution) -> Self {
        Self::PointMassFamily { location_law }
    }

    pub fn entries(&self) -> Option<&[EnsembleEntry<T>]> {
        match self {
            Self::Finite { entries } => Some(entries),
            Self::PointMassFamily { .. } => None,
        }
    }
}

/// The average posterior over a finite ensemble, or over the sub-ensemble
/// selected by `cell` (entry indices), renormalized by the cell's weight.
#[derive(Debug, Clone, PartialEq)]
pub enum AveragePosterior<T: Scalar> {
    Finite(FiniteDistribution<T>),
    Parametric(ParametricDistribution),
    Mixture(ParametricMixture),
}

pub fn average_posterior<T: Scalar>(
    ensemble: &PosteriorEnsemble<T>,
    cell: Option<&[usize]>,
) -> Result<AveragePosterior<T>> {
    let entries = ensemble.entries().ok_or_else(|| {
        Error::MixedRepresentation
    })?;
    let picked: Vec<&EnsembleEntry<T>> = match cell {
        Some(indices) => {
            let mut out = Vec::with_capacity(indices.len());
            for &i in indices {
                out.push(entries.get(i).ok_or_else(|| {
                    Error::ZeroMassCell(format!("cell refers to missing entry {i}"))
                })?);
            }
            out
        }
        None => entries.iter().collect(),
    };
    if picked.is_empty() {
        return Err(Error::ZeroMassCell("cell selects no entries".into()));
    }
    let all_finite = picked
        .iter()
        .all(|e| matches!(e.posterior, Posterior::Finite(_)));
    let all_parametric = picked
        .iter()
        .all(|e| matches!(e.posterior, Posterior::Parametric(_)));
    if all_finite {
        let parts: Vec<(T, &FiniteDistribution<T>)> = picked
            .iter()
            .map(|e| match &e.posterior {
                Posterior::Finite(d) => (e.weight.clone(), d),
                Posterior::Parametric(_) => unreachable!(),
            })
            .collect();
        Ok(AveragePosterior::Finite(FiniteDistribution::mix(&parts)?))
    } else if all_parametric {
        let total: f64 = picked.iter().map(|e| e.weight.to_f64()).sum();
        if total <= 0.0 {
            return Err(Error::ZeroMassCell("cell has zero weight".into()));
        }
        let components: Vec<(f64, ParametricDistribution)> = picked
            .iter()
            .map(|e| match &e.posterior {
                Posterior::Parametric(d) => (e.weight.to_f64() / total, d.clone()),
                Posterior::Finite(_) => unreachable!(),
            })
            .collect();
        match ParametricMixture::new(components)?.simplify() {
            Ok(single) => Ok(AveragePosterior::Parametric(single)),
            Err(mixture) => Ok(AveragePosterior::Mixture(mixture)),
        }
    } else {
        Err(Error::MixedRepresentation)
    }
}

/// Average posterior of a point-mass family over the location cell
/// `[lo, hi)`: the truncation of the location law to the cell.
pub fn cell_average_posterior(
    location_law: &ParametricDistribution,
    lo: f64,
    hi: f64,
) -> Result<ParametricDistribution> {
    ParametricDistribution::truncated(location_law.clone(), lo, hi)
}
