//! One-dimensional parametric laws with closed-form densities and tails.
//!
//! The implemented families are normal, Laplace, exponential (right-facing
//! or mirrored onto the negative half-line), uniform, point mass, and
//! truncations of the above to an interval `[lower, upper)`. Every law
//! exposes a density, a CDF, a precise survival function, and the two-sided
//! tail probability `P(|x| > r)`.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::measures::tail::TailClass;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const TAU: f64 = std::f64::consts::TAU;

/// Closure of a law's support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
}

impl Support {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Largest |x| over the support; infinite for unbounded laws.
    pub fn radius(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParametricDistribution {
    Normal { mean: f64, variance: f64 },
    Laplace { location: f64, scale: f64 },
    /// `mirrored = false` is supported on `[0, ∞)`; `mirrored = true` is the
    /// law of `-X` for `X` exponential, supported on `(-∞, 0]`.
    Exponential { rate: f64, mirrored: bool },
    Uniform { lower: f64, upper: f64 },
    PointMass { location: f64 },
    Truncated {
        inner: Box<ParametricDistribution>,
        lower: f64,
        upper: f64,
    },
}

impl ParametricDistribution {
    pub fn normal(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) || !mean.is_finite() || !variance.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "normal variance must be positive and finite, got mean={mean} variance={variance}"
            )));
        }
        Ok(Self::Normal { mean, variance })
    }

    pub fn laplace(location: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !location.is_finite() || !scale.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "laplace scale must be positive and finite, got location={location} scale={scale}"
            )));
        }
        Ok(Self::Laplace { location, scale })
    }

    pub fn exponential(rate: f64, mirrored: bool) -> Result<Self> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "exponential rate must be positive and finite, got {rate}"
            )));
        }
        Ok(Self::Exponential { rate, mirrored })
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "uniform needs finite lower < upper, got [{lower}, {upper}]"
            )));
        }
        Ok(Self::Uniform { lower, upper })
    }

    pub fn point_mass(location: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "point mass location must be finite, got {location}"
            )));
        }
        Ok(Self::PointMass { location })
    }

    /// Restriction of `inner` to the interval `[lower, upper)`, renormalized.
    /// Collapses no-op truncations, nested truncations, and truncated point
    /// masses; rejects intervals of zero inner mass.
    pub fn truncated(inner: ParametricDistribution, lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) || lower.is_nan() || upper.is_nan() {
            return Err(Error::InvalidDistribution(format!(
                "truncation interval [{lower}, {upper}) is empty or malformed"
            )));
        }
        match inner {
            Self::PointMass { location } => {
                if lower <= location && location < upper {
                    Ok(Self::PointMass { location })
                } else {
                    Err(Error::ZeroMassCell(format!(
                        "point mass at {location} outside [{lower}, {upper})"
                    )))
                }
            }
            Self::Truncated {
                inner: core,
                lower: l0,
                upper: u0,
            } => Self::truncated(*core, lower.max(l0), upper.min(u0)),
            other => {
                let mass = other.interval_mass(lower, upper);
                if mass <= 0.0 {
                    return Err(Error::ZeroMassCell(format!(
                        "{other:?} has zero mass on [{lower}, {upper})"
                    )));
                }
                if mass >= 1.0 {
                    return Ok(other);
                }
                Ok(Self::Truncated {
                    inner: Box::new(other),
                    lower,
                    upper,
                })
            }
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Self::PointMass { .. })
    }

    pub fn support(&self) -> Support {
        match self {
            Self::Normal { .. } => Support {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
            Self::Laplace { .. } => Support {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
            Self::Exponential { mirrored, .. } => {
                if *mirrored {
                    Support {
                        lo: f64::NEG_INFINITY,
                        hi: 0.0,
                    }
                } else {
                    Support {
                        lo: 0.0,
                        hi: f64::INFINITY,
                    }
                }
            }
            Self::Uniform { lower, upper } => Support {
                lo: *lower,
                hi: *upper,
            },
            Self::PointMass { location } => Support {
                lo: *location,
                hi: *location,
            },
            Self::Truncated { inner, lower, upper } => {
                let s = inner.support();
                Support {
                    lo: s.lo.max(*lower),
                    hi: s.hi.min(*upper),
                }
            }
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match self {
            Self::Normal { mean, variance } => {
                let z = x - mean;
                (-z * z / (2.0 * variance)).exp() / (TAU * variance).sqrt()
            }
            Self::Laplace { location, scale } => {
                (-(x - location).abs() / scale).exp() / (2.0 * scale)
            }
            Self::Exponential { rate, mirrored } => {
                let t = if *mirrored { -x } else { x };
                if t < 0.0 {
                    0.0
                } else {
                    rate * (-rate * t).exp()
                }
            }
            Self::Uniform { lower, upper } => {
                if x >= *lower && x < *upper {
                    1.0 / (upper - lower)
                } else {
                    0.0
                }
            }
            Self::PointMass { .. } => f64::NAN,
            Self::Truncated { inner, lower, upper } => {
                if x >= *lower && x < *upper {
                    inner.density(x) / inner.interval_mass(*lower, *upper)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn log_density(&self, x: f64) -> f64 {
        match self {
            Self::Normal { mean, variance } => {
                let z = x - mean;
                -z * z / (2.0 * variance) - 0.5 * (TAU * variance).ln()
            }
            Self::Laplace { location, scale } => {
                -(x - location).abs() / scale - (2.0 * scale).ln()
            }
            Self::Exponential { rate, mirrored } => {
                let t = if *mirrored { -x } else { x };
                if t < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    rate.ln() - rate * t
                }
            }
            Self::Uniform { lower, upper } => {
                if x >= *lower && x < *upper {
                    -(upper - lower).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            Self::PointMass { .. } => f64::NAN,
            Self::Truncated { inner, lower, upper } => {
                if x >= *lower && x < *upper {
                    inner.log_density(x) - inner.interval_mass(*lower, *upper).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// `P(X <= x)`. Accepts infinite arguments.
    pub fn cdf(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        if x == f64::NEG_INFINITY {
            return 0.0;
        }
        match self {
            Self::Normal { mean, variance } => {
                let z = (mean - x) / (variance.sqrt() * SQRT_2);
                0.5 * erfc(z)
            }
            Self::Laplace { location, scale } => {
                if x < *location {
                    0.5 * ((x - location) / scale).exp()
                } else {
                    1.0 - 0.5 * ((location - x) / scale).exp()
                }
            }
            Self::Exponential { rate, mirrored } => {
                if *mirrored {
                    if x >= 0.0 {
                        1.0
                    } else {
                        (rate * x).exp()
                    }
                } else if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (-rate * x).exp()
                }
            }
            Self::Uniform { lower, upper } => ((x - lower) / (upper - lower)).clamp(0.0, 1.0),
            Self::PointMass { location } => {
                if x >= *location {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Truncated { inner, lower, upper } => {
                let mass = inner.interval_mass(*lower, *upper);
                ((inner.cdf(x.min(*upper)) - inner.cdf(*lower)) / mass).clamp(0.0, 1.0)
            }
        }
    }

    /// `P(X > t)`, computed without cancellation in the upper tail.
    pub fn survival(&self, t: f64) -> f64 {
        if t == f64::INFINITY {
            return 0.0;
        }
        if t == f64::NEG_INFINITY {
            return 1.0;
        }
        match self {
            Self::Normal { mean, variance } => {
                let z = (t - mean) / (variance.sqrt() * SQRT_2);
                0.5 * erfc(z)
            }
            Self::Laplace { location, scale } => {
                if t >= *location {
                    0.5 * ((location - t) / scale).exp()
                } else {
                    1.0 - 0.5 * ((t - location) / scale).exp()
                }
            }
            Self::Exponential { rate, mirrored } => {
                if *mirrored {
                    if t >= 0.0 {
                        0.0
                    } else {
                        1.0 - (rate * t).exp()
                    }
                } else if t <= 0.0 {
                    1.0
                } else {
                    (-rate * t).exp()
                }
            }
            Self::Uniform { .. } | Self::PointMass { .. } => 1.0 - self.cdf(t),
            Self::Truncated { inner, lower, upper } => {
                if t >= *upper {
                    return 0.0;
                }
                let mass = inner.interval_mass(*lower, *upper);
                ((inner.cdf(*upper) - inner.cdf(t.max(*lower))) / mass).clamp(0.0, 1.0)
            }
        }
    }

    /// Mass assigned to the interval `[lo, hi)`.
    pub fn interval_mass(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        if let Self::PointMass { location } = self {
            return if lo <= *location && *location < hi {
                1.0
            } else {
                0.0
            };
        }
        (self.cdf(hi) - self.cdf(lo)).clamp(0.0, 1.0)
    }

    /// The two-sided tail probability `P(|X| > r)` for `r >= 0`.
    pub fn tail_probability(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        if let Self::PointMass { location } = self {
            return if location.abs() > r { 1.0 } else { 0.0 };
        }
        (self.survival(r) + self.cdf(-r)).min(1.0)
    }

    /// Asymptotic decay class of `P(|X| > r)`; see [`TailClass`].
    pub fn tail_class(&self) -> TailClass {
        let support = self.support();
        let left = if support.lo == f64::NEG_INFINITY {
            self.side_decay(Side::Left)
        } else {
            None
        };
        let right = if support.hi == f64::INFINITY {
            self.side_decay(Side::Right)
        } else {
            None
        };
        match (left, right) {
            (None, None) => TailClass::Compact {
                radius: support.radius(),
            },
            (Some(c), None) | (None, Some(c)) => c,
            (Some(a), Some(b)) => {
                if TailClass::heavier_or_equal(&a, &b) {
                    a
                } else {
                    b
                }
            }
        }
    }

    fn side_decay(&self, side: Side) -> Option<TailClass> {
        match self {
            Self::Normal { mean, variance } => {
                // log P(|X|>r) on this side ~ -r²/(2v) + slope·r + O(log r)
                let slope = match side {
                    Side::Right => mean / variance,
                    Side::Left => -mean / variance,
                };
                Some(TailClass::GaussianSquared {
                    half_inv_var: 1.0 / (2.0 * variance),
                    slope,
                })
            }
            Self::Laplace { scale, .. } => Some(TailClass::Exponential { rate: 1.0 / scale }),
            Self::Exponential { rate, .. } => Some(TailClass::Exponential { rate: *rate }),
            Self::Uniform { .. } | Self::PointMass { .. } => None,
            Self::Truncated { inner, .. } => inner.side_decay(side),
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Measure-theoretic support inclusion: `supp(q) ⊆ supp(p)`, checked as
/// "q puts all of its mass on the closure of p's support". Boundaries carry
/// no mass for the continuous families, so this is exact for nested
/// intervals and robust at shared endpoints.
pub fn supported_within(q: &ParametricDistribution, p: &ParametricDistribution) -> bool {
    let ps = p.support();
    if let ParametricDistribution::PointMass { location } = q {
        return ps.contains(*location);
    }
    q.interval_mass(ps.lo, next_up(ps.hi)) >= 1.0 - 1e-12
}

fn next_up(x: f64) -> f64 {
    if x == f64::INFINITY {
        x
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

/// Smallest symmetric interval holding all but `eps` of the mass,
/// intersected with the support.
pub fn coverage_interval(p: &ParametricDistribution, eps: f64) -> (f64, f64) {
    let support = p.support();
    if support.is_bounded() {
        return (support.lo, support.hi);
    }
    let mut r = 1.0;
    while p.tail_probability(r) > eps && r < 1e12 {
        r *= 2.0;
    }
    let (mut lo, mut hi) = (r / 2.0, r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p.tail_probability(mid) > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (support.lo.max(-hi), support.hi.min(hi))
}

/// A finite mixture of parametric laws. Produced by averaging parametric
/// posteriors; recognizes a couple of exact closures back into single laws.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricMixture {
    components: Vec<(f64, ParametricDistribution)>,
}

impl ParametricMixture {
    pub fn new(components: Vec<(f64, ParametricDistribution)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDistribution("empty mixture".into()));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| *w <= 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "mixture weights must be positive and sum to 1, got total {total}"
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, ParametricDistribution)] {
        &self.components
    }

    pub fn density(&self, x: f64) -> f64 {
        self.components
            .iter()
            .map(|(w, d)| w * d.density(x))
            .sum()
    }

    pub fn tail_probability(&self, r: f64) -> f64 {
        self.components
            .iter()
            .map(|(w, d)| w * d.tail_probability(r))
            .sum()
    }

    /// Collapse the mixture to a single law when an exact closure applies:
    /// a single component, or the equal-weight pair of a right-facing and a
    /// mirrored exponential with common rate (which is a centered Laplace).
    pub fn simplify(self) -> std::result::Result<ParametricDistribution, ParametricMixture> {
        if self.components.len() == 1 {
            return Ok(self.components.into_iter().next().unwrap().1);
        }
        if self.components.len() == 2 {
            let (w0, a) = &self.components[0];
            let (w1, b) = &self.components[1];
            if (w0 - 0.5).abs() <= 1e-12 && (w1 - 0.5).abs() <= 1e-12 {
                if let (
                    ParametricDistribution::Exponential {
                        rate: ra,
                        mirrored: ma,
                    },
                    ParametricDistribution::Exponential {
                        rate: rb,
                        mirrored: mb,
                    },
                ) = (a, b)
                {
                    if ra == rb && ma != mb {
                        return Ok(ParametricDistribution::Laplace {
                            location: 0.0,
                            scale: 1.0 / ra,
                        });
                    }
                }
            }
        }
        Err(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normal01() -> ParametricDistribution {
        ParametricDistribution::normal(0.0, 1.0).unwrap()
    }

    #[test]
    fn densities_integrate_to_one() {
        let laws = vec![
            normal01(),
            ParametricDistribution::normal(1.5, 0.25).unwrap(),
            ParametricDistribution::laplace(0.0, 1.0).unwrap(),
            ParametricDistribution::laplace(-2.0, 0.5).unwrap(),
            ParametricDistribution::exponential(1.0, false).unwrap(),
            ParametricDistribution::exponential(2.0, true).unwrap(),
            ParametricDistribution::uniform(-1.0, 3.0).unwrap(),
            ParametricDistribution::truncated(
                ParametricDistribution::laplace(0.0, 1.0).unwrap(),
                1.0,
                2.0,
            )
            .unwrap(),
        ];
        for law in laws {
            let (lo, hi) = coverage_interval(&law, 1e-14);
            let n = 400_000;
            let h = (hi - lo) / n as f64;
            // midpoint rule avoids landing exactly on kinks and boundaries
            let integral: f64 = (0..n)
                .map(|i| law.density(lo + (i as f64 + 0.5) * h) * h)
                .sum();
            assert!(
                (integral - 1.0).abs() < 1e-6,
                "{law:?} integrates to {integral}"
            );
        }
    }

    #[test]
    fn cdf_matches_density_quadrature() {
        let law = ParametricDistribution::laplace(0.5, 2.0).unwrap();
        let n = 200_000;
        let (lo, hi) = (-90.0, 1.25);
        let h = (hi - lo) / n as f64;
        let integral: f64 = (0..n)
            .map(|i| law.density(lo + (i as f64 + 0.5) * h) * h)
            .sum();
        assert!((integral - law.cdf(1.25)).abs() < 1e-8);
    }

    #[test]
    fn tail_probability_closed_forms() {
        assert_eq!(normal01().tail_probability(0.0), 1.0);
        let laplace = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        assert!((laplace.tail_probability(1.0) - (-1.0f64).exp()).abs() < 1e-15);
        let exp = ParametricDistribution::exponential(1.0, false).unwrap();
        assert!((exp.tail_probability(2.0) - (-2.0f64).exp()).abs() < 1e-15);
        let mirrored = ParametricDistribution::exponential(1.0, true).unwrap();
        assert!((mirrored.tail_probability(2.0) - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn tail_probability_nonincreasing() {
        let laws = [
            normal01(),
            ParametricDistribution::laplace(1.0, 0.7).unwrap(),
            ParametricDistribution::uniform(-2.0, 5.0).unwrap(),
        ];
        for law in laws {
            let mut prev = 1.0;
            for i in 0..400 {
                let r = i as f64 * 0.05;
                let t = law.tail_probability(r);
                assert!(t <= prev + 1e-12);
                prev = t;
            }
        }
    }

    #[test]
    fn truncation_normalizes() {
        // no-op truncation returns the inner law
        let t = ParametricDistribution::truncated(normal01(), f64::NEG_INFINITY, f64::INFINITY)
            .unwrap();
        assert_eq!(t, normal01());
        // zero-mass interval rejected
        let exp = ParametricDistribution::exponential(1.0, false).unwrap();
        assert!(matches!(
            ParametricDistribution::truncated(exp, -2.0, -1.0),
            Err(Error::ZeroMassCell(_))
        ));
        // nested truncations collapse
        let inner = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        let once = ParametricDistribution::truncated(inner.clone(), 0.0, 3.0).unwrap();
        let twice = ParametricDistribution::truncated(once, 1.0, 2.0).unwrap();
        assert_eq!(
            twice,
            ParametricDistribution::truncated(inner, 1.0, 2.0).unwrap()
        );
    }

    #[test]
    fn truncated_survival_consistent() {
        let t = ParametricDistribution::truncated(
            ParametricDistribution::laplace(0.0, 1.0).unwrap(),
            1.0,
            2.0,
        )
        .unwrap();
        assert!((t.survival(0.0) - 1.0).abs() < 1e-15);
        assert_eq!(t.survival(2.0), 0.0);
        assert!((t.cdf(1.5) + t.survival(1.5) - 1.0).abs() < 1e-12);
        assert!((t.tail_probability(1.2) - t.survival(1.2)).abs() < 1e-12);
    }

    #[test]
    fn support_inclusion() {
        let laplace = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        let trunc = ParametricDistribution::truncated(laplace.clone(), 1.0, 2.0).unwrap();
        assert!(supported_within(&trunc, &normal01()));
        assert!(supported_within(&laplace, &normal01()));
        let u01 = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let u02 = ParametricDistribution::uniform(0.0, 2.0).unwrap();
        assert!(supported_within(&u01, &u02));
        assert!(!supported_within(&u02, &u01));
        assert!(!supported_within(&laplace, &u01));
        // shared endpoints
        assert!(supported_within(&u01, &u01));
    }

    #[test]
    fn mixture_recognizes_centered_laplace() {
        let mix = ParametricMixture::new(vec![
            (0.5, ParametricDistribution::exponential(1.0, false).unwrap()),
            (0.5, ParametricDistribution::exponential(1.0, true).unwrap()),
        ])
        .unwrap();
        assert_eq!(
            mix.simplify().unwrap(),
            ParametricDistribution::laplace(0.0, 1.0).unwrap()
        );
        let stay = ParametricMixture::new(vec![
            (0.25, normal01()),
            (0.75, ParametricDistribution::laplace(0.0, 1.0).unwrap()),
        ])
        .unwrap();
        assert!(stay.simplify().is_err());
    }

    #[test]
    fn coverage_interval_covers() {
        let law = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        let (lo, hi) = coverage_interval(&law, 1e-12);
        assert!(law.tail_probability(hi) <= 1e-12);
        assert!(lo < -20.0 && hi > 20.0);
        let u = ParametricDistribution::uniform(-1.0, 2.0).unwrap();
        assert_eq!(coverage_interval(&u, 1e-12), (-1.0, 2.0));
    }
}
