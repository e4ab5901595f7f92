//! Probability vectors over labeled states.

use std::fmt;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A probability distribution over an ordered list of state labels.
///
/// Invariants enforced at construction: every probability is nonnegative,
/// the probabilities sum to one (exactly in rational mode, to `1e-9` in
/// float mode), and the support is nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution<T: Scalar> {
    states: Arc<[String]>,
    probs: Vec<T>,
}

impl<T: Scalar> FiniteDistribution<T> {
    pub fn new(states: Arc<[String]>, probs: Vec<T>) -> Result<Self> {
        if states.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} states but {} probabilities",
                states.len(),
                probs.len()
            )));
        }
        if states.is_empty() {
            return Err(Error::InvalidDistribution("empty state list".into()));
        }
        for (label, p) in states.iter().zip(&probs) {
            if !p.is_nonnegative() {
                return Err(Error::InvalidDistribution(format!(
                    "negative probability {p} at state {label}"
                )));
            }
        }
        let total = probs.iter().cloned().fold(T::zero(), |a, b| a + b);
        if !total.close_to(&T::one()) {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        if !probs.iter().any(|p| p > &T::zero()) {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        Ok(Self { states, probs })
    }

    pub fn from_labels(labels: &[&str], probs: Vec<T>) -> Result<Self> {
        let states: Arc<[String]> = labels.iter().map(|s| s.to_string()).collect();
        Self::new(states, probs)
    }

    pub fn uniform(states: Arc<[String]>) -> Self {
        let n = states.len() as i64;
        let probs = vec![T::from_ratio(1, n); states.len()];
        Self { states, probs }
    }

    pub fn point_mass(states: Arc<[String]>, at: usize) -> Self {
        let mut probs = vec![T::zero(); states.len()];
        probs[at] = T::one();
        Self { states, probs }
    }

    pub fn states(&self) -> &Arc<[String]> {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, i: usize) -> &T {
        &self.probs[i]
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// Indices of states with strictly positive probability.
    pub fn support(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > T::zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|p| *p > T::zero())
    }

    /// Checks that `other` lives on the same ordered state list.
    pub fn same_states(&self, other: &Self) -> Result<()> {
        if self.states != other.states {
            return Err(Error::StateMismatch(format!(
                "[{}] vs [{}]",
                self.states.join(", "),
                other.states.join(", ")
            )));
        }
        Ok(())
    }

    /// Entrywise equality in the mode's sense: exact, or within tolerance.
    pub fn close_to(&self, other: &Self) -> bool {
        self.states == other.states
            && self
                .probs
                .iter()
                .zip(&other.probs)
                .all(|(a, b)| a.close_to(b))
    }

    /// Convex combination of distributions over the same states. Weights
    /// must be positive with positive total; the result is renormalized.
    pub fn mix(parts: &[(T, &Self)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::ZeroMassCell("empty mixture".into()))?;
        let mut total = T::zero();
        let mut probs = vec![T::zero(); first.len()];
        for (w, dist) in parts {
            first.same_states(dist)?;
            if !w.is_nonnegative() {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
            total = total.clone() + w.clone();
            for (acc, p) in probs.iter_mut().zip(&dist.probs) {
                *acc = acc.clone() + w.clone() * p.clone();
            }
        }
        if total <= T::zero() {
            return Err(Error::ZeroMassCell("mixture weights sum to zero".into()));
        }
        for p in &mut probs {
            *p = p.clone() / total.clone();
        }
        Self::new(first.states.clone(), probs)
    }

    pub fn to_f64(&self) -> FiniteDistribution<f64> {
        FiniteDistribution {
            states: self.states.clone(),
            probs: self.probs.iter().map(|p| p.to_f64()).collect(),
        }
    }
}

impl<T: Scalar> fmt::Display for FiniteDistribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Shared state list helper.
pub fn state_labels(labels: &[&str]) -> Arc<[String]> {
    labels.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn rejects_bad_vectors() {
        let st = state_labels(&["H", "L"]);
        assert!(FiniteDistribution::new(st.clone(), vec![r(1, 2)]).is_err());
        assert!(FiniteDistribution::new(st.clone(), vec![r(-1, 2), r(3, 2)]).is_err());
        assert!(FiniteDistribution::new(st.clone(), vec![r(1, 2), r(1, 3)]).is_err());
        assert!(FiniteDistribution::new(st, vec![r(1, 2), r(1, 2)]).is_ok());
    }

    #[test]
    fn float_mode_tolerates_rounding() {
        let st = state_labels(&["a", "b", "c"]);
        let d = FiniteDistribution::new(st, vec![0.1, 0.2, 0.7 + 1e-12]).unwrap();
        assert_eq!(d.support(), vec![0, 1, 2]);
    }

    #[test]
    fn support_and_mixing() {
        let st = state_labels(&["H", "L"]);
        let a = FiniteDistribution::new(st.clone(), vec![r(4, 5), r(1, 5)]).unwrap();
        let b = FiniteDistribution::new(st.clone(), vec![r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(b.support(), vec![0]);
        let avg = FiniteDistribution::mix(&[(r(1, 4), &a), (r(3, 4), &b)]).unwrap();
        assert_eq!(avg.probs(), &[r(19, 20), r(1, 20)]);
    }

    #[test]
    fn mismatched_states_detected() {
        let a: FiniteDistribution<f64> =
            FiniteDistribution::from_labels(&["H", "L"], vec![0.5, 0.5]).unwrap();
        let b = FiniteDistribution::from_labels(&["x", "y"], vec![0.5, 0.5]).unwrap();
        assert!(a.same_states(&b).is_err());
    }
}
