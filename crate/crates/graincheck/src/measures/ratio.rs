//! Supremum of density ratios.
//!
//! Every implemented non-atomic family has a log-density that is piecewise
//! quadratic: normals contribute a quadratic, Laplace and exponential laws
//! contribute linear segments split at their kink, uniforms a constant, and
//! truncations clip segments and shift them by a normalizing constant. The
//! log of a density ratio is therefore piecewise quadratic as well, and its
//! supremum over the numerator's support can be resolved segment by
//! segment: a quadratic on an interval attains its supremum at an endpoint
//! or an interior vertex, and it diverges on an unbounded segment exactly
//! when the leading coefficient (or, failing that, the slope toward the
//! unbounded side) is positive.

use crate::error::{Error, Result};
use crate::measures::parametric::{coverage_interval, supported_within, ParametricDistribution};

/// Ratio value past which an unbounded ratio is considered witnessed.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// `log f(x) = a2·x² + a1·x + a0` on `[lo, hi)`; density is zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogQuadPiece {
    pub lo: f64,
    pub hi: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl LogQuadPiece {
    #[cfg(test)]
    fn eval(&self, x: f64) -> f64 {
        (self.a2 * x + self.a1) * x + self.a0
    }
}

/// Piecewise-quadratic log-density, or `None` for atomic laws.
pub fn log_quad_pieces(law: &ParametricDistribution) -> Option<Vec<LogQuadPiece>> {
    use ParametricDistribution::*;
    let pieces = match law {
        Normal { mean, variance } => {
            let a2 = -1.0 / (2.0 * variance);
            let a1 = mean / variance;
            let a0 = -mean * mean / (2.0 * variance)
                - 0.5 * (std::f64::consts::TAU * variance).ln();
            vec![LogQuadPiece {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
                a2,
                a1,
                a0,
            }]
        }
        Laplace { location, scale } => {
            let norm = -(2.0 * scale).ln();
            vec![
                LogQuadPiece {
                    lo: f64::NEG_INFINITY,
                    hi: *location,
                    a2: 0.0,
                    a1: 1.0 / scale,
                    a0: norm - location / scale,
                },
                LogQuadPiece {
                    lo: *location,
                    hi: f64::INFINITY,
                    a2: 0.0,
                    a1: -1.0 / scale,
                    a0: norm + location / scale,
                },
            ]
        }
        Exponential { rate, mirrored } => {
            if *mirrored {
                vec![LogQuadPiece {
                    lo: f64::NEG_INFINITY,
                    hi: 0.0,
                    a2: 0.0,
                    a1: *rate,
                    a0: rate.ln(),
                }]
            } else {
                vec![LogQuadPiece {
                    lo: 0.0,
                    hi: f64::INFINITY,
                    a2: 0.0,
                    a1: -rate,
                    a0: rate.ln(),
                }]
            }
        }
        Uniform { lower, upper } => vec![LogQuadPiece {
            lo: *lower,
            hi: *upper,
            a2: 0.0,
            a1: 0.0,
            a0: -(upper - lower).ln(),
        }],
        PointMass { .. } => return None,
        Truncated { inner, lower, upper } => {
            let shift = -inner.interval_mass(*lower, *upper).ln();
            log_quad_pieces(inner)?
                .into_iter()
                .filter_map(|p| {
                    let lo = p.lo.max(*lower);
                    let hi = p.hi.min(*upper);
                    (lo < hi).then_some(LogQuadPiece { lo, hi, a0: p.a0 + shift, ..p })
                })
                .collect()
        }
    };
    Some(pieces)
}

/// Why a density ratio is unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioDivergence {
    /// `q` puts mass where `p` has none; `witness` is such a point.
    SupportViolation { witness: f64 },
    /// The ratio exceeds [`DIVERGENCE_THRESHOLD`] at `|x| = witness_radius`
    /// and grows without bound from there.
    Unbounded { witness_radius: f64 },
}

/// Result of [`density_ratio_sup`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSup {
    /// `sup log(q/p)` over the support of `p`; `+∞` when unbounded.
    pub log_sup: f64,
    /// `exp(log_sup)`. May round to `+∞` for extreme but finite suprema;
    /// `divergence` is authoritative for boundedness.
    pub sup: f64,
    pub divergence: Option<RatioDivergence>,
    /// A point approaching the supremum, when finite.
    pub argmax: Option<f64>,
}

impl RatioSup {
    pub fn is_finite(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Supremum of `density(q)/density(p)` over the support of `p`.
///
/// Returns an unbounded result when `supp(q) ⊄ supp(p)` or the ratio
/// diverges in a tail; rejects atomic inputs.
pub fn density_ratio_sup(
    q: &ParametricDistribution,
    p: &ParametricDistribution,
) -> Result<RatioSup> {
    if q.is_atomic() || p.is_atomic() {
        return Err(Error::UnsupportedPair(
            "density ratio needs two non-atomic laws".into(),
        ));
    }
    if q == p {
        return Ok(RatioSup {
            log_sup: 0.0,
            sup: 1.0,
            divergence: None,
            argmax: Some(q.support().lo.max(0.0).min(q.support().hi)),
        });
    }
    if !supported_within(q, p) {
        let witness = support_violation_witness(q, p);
        return Ok(RatioSup {
            log_sup: f64::INFINITY,
            sup: f64::INFINITY,
            divergence: Some(RatioDivergence::SupportViolation { witness }),
            argmax: None,
        });
    }
    let q_pieces = log_quad_pieces(q).expect("non-atomic");
    let p_pieces = log_quad_pieces(p).expect("non-atomic");
    analyze_segments(&q_pieces, &p_pieces, q)
}

fn support_violation_witness(q: &ParametricDistribution, p: &ParametricDistribution) -> f64 {
    let qs = q.support();
    let ps = p.support();
    if qs.hi > ps.hi {
        return if qs.hi.is_finite() {
            0.5 * (ps.hi + qs.hi)
        } else {
            ps.hi + 1.0
        };
    }
    if qs.lo < ps.lo {
        return if qs.lo.is_finite() {
            0.5 * (ps.lo + qs.lo)
        } else {
            ps.lo - 1.0
        };
    }
    0.5 * (qs.lo.max(-1e300) + qs.hi.min(1e300))
}

fn analyze_segments(
    q_pieces: &[LogQuadPiece],
    p_pieces: &[LogQuadPiece],
    q: &ParametricDistribution,
) -> Result<RatioSup> {
    let log_threshold = DIVERGENCE_THRESHOLD.ln();
    let qsupp = q.support();
    let mut cuts: Vec<f64> = Vec::new();
    for piece in q_pieces.iter().chain(p_pieces) {
        for b in [piece.lo, piece.hi] {
            if b >= qsupp.lo && b <= qsupp.hi {
                cuts.push(b);
            }
        }
    }
    cuts.push(qsupp.lo);
    cuts.push(qsupp.hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut best = f64::NEG_INFINITY;
    let mut best_at = None;
    let mut divergence_witness: Option<f64> = None;

    for window in cuts.windows(2) {
        let (lo, hi) = (window[0], window[1]);
        if !(lo < hi) {
            continue;
        }
        let probe = segment_probe(lo, hi);
        let Some(qp) = piece_at(q_pieces, probe) else {
            continue; // q density vanishes on this segment
        };
        let pp = piece_at(p_pieces, probe).ok_or_else(|| {
            Error::UnsupportedPair(format!(
                "denominator density undefined near x = {probe} despite support inclusion"
            ))
        })?;
        let d2 = qp.a2 - pp.a2;
        let d1 = qp.a1 - pp.a1;
        let d0 = qp.a0 - pp.a0;
        let eval = |x: f64| (d2 * x + d1) * x + d0;

        let mut consider = |value: f64, at: f64| {
            if value > best {
                best = value;
                best_at = Some(at);
            }
        };

        if hi == f64::INFINITY {
            if d2 > 0.0 || (d2 == 0.0 && d1 > 0.0) {
                let w = crossing_above(d2, d1, d0, log_threshold, lo, true);
                divergence_witness = Some(match divergence_witness {
                    Some(prev) => prev.min(w.abs()),
                    None => w.abs(),
                });
                continue;
            }
        } else {
            consider(eval(hi), hi);
        }
        if lo == f64::NEG_INFINITY {
            if d2 > 0.0 || (d2 == 0.0 && d1 < 0.0) {
                let w = crossing_above(d2, d1, d0, log_threshold, hi, false);
                divergence_witness = Some(match divergence_witness {
                    Some(prev) => prev.min(w.abs()),
                    None => w.abs(),
                });
                continue;
            }
        } else {
            consider(eval(lo), lo);
        }
        if d2 == 0.0 && d1 == 0.0 {
            consider(d0, probe);
        }
        if d2 < 0.0 {
            let vertex = -d1 / (2.0 * d2);
            if vertex > lo && vertex < hi {
                consider(eval(vertex), vertex);
            }
        }
    }

    if let Some(witness_radius) = divergence_witness {
        return Ok(RatioSup {
            log_sup: f64::INFINITY,
            sup: f64::INFINITY,
            divergence: Some(RatioDivergence::Unbounded { witness_radius }),
            argmax: None,
        });
    }
    // a probability ratio whose sup is attained is at least 1
    let log_sup = best.max(0.0);
    Ok(RatioSup {
        log_sup,
        sup: log_sup.exp(),
        divergence: None,
        argmax: best_at,
    })
}

fn segment_probe(lo: f64, hi: f64) -> f64 {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0,
        (false, true) => hi - 1.0,
        (false, false) => 0.0,
    }
}

fn piece_at(pieces: &[LogQuadPiece], x: f64) -> Option<&LogQuadPiece> {
    pieces.iter().find(|p| p.lo <= x && x < p.hi)
}

/// Smallest |x| on the divergent side where the quadratic reaches `level`,
/// clamped into the segment. `rightward` selects the +∞ side.
fn crossing_above(d2: f64, d1: f64, d0: f64, level: f64, boundary: f64, rightward: bool) -> f64 {
    let x = if d2 > 0.0 {
        let disc = d1 * d1 - 4.0 * d2 * (d0 - level);
        if disc <= 0.0 {
            // quadratic already above the level everywhere
            return if boundary.is_finite() {
                boundary
            } else if rightward {
                0.0
            } else {
                0.0
            };
        }
        let root = disc.sqrt();
        if rightward {
            (-d1 + root) / (2.0 * d2)
        } else {
            (-d1 - root) / (2.0 * d2)
        }
    } else {
        // linear with slope pointing toward the unbounded side
        (level - d0) / d1
    };
    if boundary.is_finite() {
        if rightward {
            x.max(boundary)
        } else {
            x.min(boundary)
        }
    } else {
        x
    }
}

/// Maximum of `density(q)/density(p)` over an `n`-point grid covering all
/// but `1e-12` of `p`'s mass, restricted to the support of `q`. A slow,
/// direct bound used to cross-check the analytic supremum.
pub fn grid_max_ratio(q: &ParametricDistribution, p: &ParametricDistribution, n: usize) -> f64 {
    let (plo, phi) = coverage_interval(p, 1e-12);
    let qs = q.support();
    let lo = plo.max(qs.lo);
    let hi = phi.min(qs.hi);
    if !(lo < hi) {
        return 0.0;
    }
    let step = (hi - lo) / n as f64;
    let mut max = 0.0f64;
    for i in 0..n {
        let x = lo + (i as f64 + 0.5) * step;
        let pd = p.density(x);
        if pd > 0.0 {
            max = max.max(q.density(x) / pd);
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    fn normal(m: f64, v: f64) -> ParametricDistribution {
        ParametricDistribution::normal(m, v).unwrap()
    }

    fn laplace(m: f64, b: f64) -> ParametricDistribution {
        ParametricDistribution::laplace(m, b).unwrap()
    }

    #[test]
    fn identical_laws_have_unit_sup() {
        let sup = density_ratio_sup(&normal(0.0, 1.0), &normal(0.0, 1.0)).unwrap();
        assert_eq!(sup.sup, 1.0);
        assert!(sup.is_finite());
    }

    #[test]
    fn laplace_over_normal_diverges() {
        let sup = density_ratio_sup(&laplace(0.0, 1.0), &normal(0.0, 1.0)).unwrap();
        assert!(!sup.is_finite());
        match sup.divergence.unwrap() {
            RatioDivergence::Unbounded { witness_radius } => {
                // ratio at the witness radius really does exceed the threshold
                let q = laplace(0.0, 1.0);
                let p = normal(0.0, 1.0);
                let r = q.density(witness_radius) / p.density(witness_radius);
                assert!(r >= DIVERGENCE_THRESHOLD * 0.99, "ratio {r} at witness");
            }
            other => panic!("expected unbounded ratio, got {other:?}"),
        }
    }

    #[test]
    fn normal_over_laplace_is_bounded() {
        let sup = density_ratio_sup(&normal(0.0, 1.0), &laplace(0.0, 1.0)).unwrap();
        assert!(sup.is_finite());
        let grid = grid_max_ratio(&normal(0.0, 1.0), &laplace(0.0, 1.0), 100_000);
        assert!(sup.sup >= grid - 1e-9);
        assert!((sup.sup - grid) / sup.sup < 1e-3);
    }

    #[test]
    fn exponential_within_laplace() {
        // density ratio is exactly 2 on the right half-line
        let sup = density_ratio_sup(
            &ParametricDistribution::exponential(1.0, false).unwrap(),
            &laplace(0.0, 1.0),
        )
        .unwrap();
        assert!((sup.sup - 2.0).abs() < 1e-12);
    }

    #[test]
    fn support_violation_detected() {
        let sup = density_ratio_sup(
            &laplace(0.0, 1.0),
            &ParametricDistribution::uniform(0.0, 1.0).unwrap(),
        )
        .unwrap();
        match sup.divergence.unwrap() {
            RatioDivergence::SupportViolation { witness } => {
                assert!(laplace(0.0, 1.0).density(witness) > 0.0);
                assert_eq!(
                    ParametricDistribution::uniform(0.0, 1.0).unwrap().density(witness),
                    0.0
                );
            }
            other => panic!("expected support violation, got {other:?}"),
        }
    }

    #[test]
    fn truncated_laplace_over_normal_matches_grid() {
        let q = ParametricDistribution::truncated(laplace(0.0, 1.0), 1.0, 2.0).unwrap();
        let p = normal(0.0, 1.0);
        let sup = density_ratio_sup(&q, &p).unwrap();
        assert!(sup.is_finite());
        let grid = grid_max_ratio(&q, &p, 2_000_000);
        assert!(sup.sup >= grid - 1e-9);
        assert!((sup.sup - grid).abs() / sup.sup < 1e-5, "sup {} grid {grid}", sup.sup);
    }

    #[test]
    fn same_variance_shifted_normals_diverge() {
        let sup = density_ratio_sup(&normal(1.0, 1.0), &normal(0.0, 1.0)).unwrap();
        assert!(!sup.is_finite());
    }

    #[test]
    fn smaller_variance_normal_is_bounded() {
        let sup = density_ratio_sup(&normal(0.3, 0.5), &normal(0.0, 1.0)).unwrap();
        assert!(sup.is_finite());
        let grid = grid_max_ratio(&normal(0.3, 0.5), &normal(0.0, 1.0), 200_000);
        assert!((sup.sup - grid).abs() / sup.sup < 1e-3);
    }

    #[test]
    fn atomic_inputs_rejected() {
        let pm = ParametricDistribution::point_mass(0.0).unwrap();
        assert!(matches!(
            density_ratio_sup(&pm, &normal(0.0, 1.0)),
            Err(Error::UnsupportedPair(_))
        ));
    }
}
