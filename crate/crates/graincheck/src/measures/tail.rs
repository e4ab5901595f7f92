//! Asymptotic tail-decay classes.
//!
//! `TailClass` is an ordering key for the decay of `log P(|X| > r)`. The
//! classes form a total preorder from lightest to heaviest:
//! compact support, then Gaussian-squared decay, then exponential decay,
//! then polynomial decay. Within a class the decay parameters break ties:
//! a larger exponential rate is lighter; for Gaussian decay a larger
//! quadratic coefficient is lighter, and at equal coefficients a larger
//! linear correction (from a shifted mean) is heavier.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    Compact { radius: f64 },
    /// `log P(|X| > r) ~ -half_inv_var · r² + slope · r`.
    GaussianSquared { half_inv_var: f64, slope: f64 },
    /// `log P(|X| > r) ~ -rate · r`.
    Exponential { rate: f64 },
    /// `P(|X| > r) ~ r^{-exponent}`. No implemented family decays this
    /// slowly; the variant completes the preorder.
    Polynomial { exponent: f64 },
}

/// How the tails of `q` compare against the tails of `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailOrdering {
    /// `Q(|x|>r) / P(|x|>r) → ∞`.
    QHeavier,
    /// `Q(|x|>r) / P(|x|>r) → 0`.
    QLighter,
    /// The ratio stays bounded away from 0 and ∞.
    Equivalent,
}

impl TailClass {
    fn rank(&self) -> u8 {
        match self {
            TailClass::Compact { .. } => 0,
            TailClass::GaussianSquared { .. } => 1,
            TailClass::Exponential { .. } => 2,
            TailClass::Polynomial { .. } => 3,
        }
    }

    /// Compares the decay of `q` against `p`.
    pub fn compare(q: &TailClass, p: &TailClass) -> TailOrdering {
        match q.rank().cmp(&p.rank()) {
            Ordering::Greater => return TailOrdering::QHeavier,
            Ordering::Less => return TailOrdering::QLighter,
            Ordering::Equal => {}
        }
        match (q, p) {
            (TailClass::Compact { radius: rq }, TailClass::Compact { radius: rp }) => {
                // wider compact support keeps mass where the other has none
                if rq > rp {
                    TailOrdering::QHeavier
                } else if rq < rp {
                    TailOrdering::QLighter
                } else {
                    TailOrdering::Equivalent
                }
            }
            (
                TailClass::GaussianSquared {
                    half_inv_var: aq,
                    slope: bq,
                },
                TailClass::GaussianSquared {
                    half_inv_var: ap,
                    slope: bp,
                },
            ) => {
                if aq < ap {
                    TailOrdering::QHeavier
                } else if aq > ap {
                    TailOrdering::QLighter
                } else if bq > bp {
                    TailOrdering::QHeavier
                } else if bq < bp {
                    TailOrdering::QLighter
                } else {
                    TailOrdering::Equivalent
                }
            }
            (TailClass::Exponential { rate: rq }, TailClass::Exponential { rate: rp }) => {
                if rq < rp {
                    TailOrdering::QHeavier
                } else if rq > rp {
                    TailOrdering::QLighter
                } else {
                    TailOrdering::Equivalent
                }
            }
            (TailClass::Polynomial { exponent: eq }, TailClass::Polynomial { exponent: ep }) => {
                if eq < ep {
                    TailOrdering::QHeavier
                } else if eq > ep {
                    TailOrdering::QLighter
                } else {
                    TailOrdering::Equivalent
                }
            }
            _ => unreachable!("equal ranks match identical variants"),
        }
    }

    pub(crate) fn heavier_or_equal(a: &TailClass, b: &TailClass) -> bool {
        !matches!(TailClass::compare(a, b), TailOrdering::QLighter)
    }
}
