//! The grain relation and its certificates.
//!
//! `P` contains a grain of `Q` when `P = εQ + (1-ε)Q'` for some ε in (0,1]
//! and some probability measure `Q'`. Equivalently the Radon–Nikodym
//! derivative `dQ/dP` is bounded by `c = 1/ε`. The decompositions here
//! always return the maximal ε (equivalently the least bound `c`), which
//! makes certificates unique; the verifier accepts any smaller ε with a
//! recomputed residual.

use std::fmt;


use crate::error::{Error, Result};
use crate::measures::{
    coverage_interval, density_ratio_sup, FiniteDistribution, ParametricDistribution,
    RatioDivergence, TailClass, TailOrdering, DIVERGENCE_THRESHOLD,
};
use crate::scalar::Scalar;

/// Grid resolution for parametric certificate checks.
const VERIFY_GRID_POINTS: usize = 10_000;
/// Pointwise tolerance for parametric mixture-identity checks on the grid.
const VERIFY_GRID_TOL: f64 = 1e-6;

/// The residual measure `Q'` of a grain decomposition.
#[derive(Debug, Clone, PartialEq)]
pub enum Residual<T: Scalar> {
    Finite(FiniteDistribution<T>),
    Parametric(ParametricDistribution),
    /// ε = 1 forces `Q = P`; any residual works, so none is fabricated.
    Arbitrary,
    /// Left symbolic: the density `(p - εq)/(1-ε)` implied by the pair the
    /// certificate was issued for.
    Implied,
}

/// A verifiable witness that `P = εQ + (1-ε)Q'`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrainCertificate<T: Scalar> {
    pub epsilon: T,
    /// The density-ratio bound `c = 1/ε`.
    pub c: T,
    pub residual: Residual<T>,
    /// `log c`, kept alongside for parametric certificates whose bound can
    /// exceed floating-point range.
    pub log_c: f64,
}

impl<T: Scalar> GrainCertificate<T> {
    pub fn new(epsilon: T, residual: Residual<T>) -> Self {
        let c = T::one() / epsilon.clone();
        let log_c = c.to_f64().ln();
        Self {
            epsilon,
            c,
            residual,
            log_c,
        }
    }
}

/// Why no grain certificate exists.
#[derive(Debug, Clone, PartialEq)]
pub enum NoGrainReason {
    /// `Q` gives positive probability to a set `P` ignores.
    SupportViolation { witness: SupportWitness },
    /// The density ratio grows without bound; it crosses the divergence
    /// threshold by `|x| = witness_radius`.
    UnboundedRatio { witness_radius: f64 },
    /// An atomic posterior against a non-atomic prior.
    AtomAgainstContinuous { location: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SupportWitness {
    State(String),
    Point(f64),
}

impl fmt::Display for NoGrainReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoGrainReason::SupportViolation {
                witness: SupportWitness::State(s),
            } => write!(f, "support violation at state {s}"),
            NoGrainReason::SupportViolation {
                witness: SupportWitness::Point(x),
            } => write!(f, "support violation near x = {x}"),
            NoGrainReason::UnboundedRatio { witness_radius } => {
                write!(f, "density ratio unbounded (exceeds threshold by |x| = {witness_radius})")
            }
            NoGrainReason::AtomAgainstContinuous { location } => {
                write!(f, "point mass at {location} cannot be carried by a non-atomic prior")
            }
        }
    }
}

/// Outcome of a grain test: a certificate or a refutation.
#[derive(Debug, Clone, PartialEq)]
pub enum GrainOutcome<T: Scalar> {
    Certificate(GrainCertificate<T>),
    NoGrain(NoGrainReason),
}

impl<T: Scalar> GrainOutcome<T> {
    pub fn certificate(self) -> Option<GrainCertificate<T>> {
        match self {
            GrainOutcome::Certificate(c) => Some(c),
            GrainOutcome::NoGrain(_) => None,
        }
    }

    pub fn is_certificate(&self) -> bool {
        matches!(self, GrainOutcome::Certificate(_))
    }
}

/// Grain decomposition for finite distributions over a common state list.
///
/// When `supp(q) ⊆ supp(p)` the maximal ε is `1/c` with
/// `c = max over supp(p) of q(x)/p(x)`, and the residual is
/// `(p - εq)/(1-ε)`; ε = 1 happens exactly when `q = p` and leaves the
/// residual arbitrary. Otherwise the refutation names a state where
/// `q > 0 = p`.
pub fn decompose_finite<T: Scalar>(
    p: &FiniteDistribution<T>,
    q: &FiniteDistribution<T>,
) -> Result<GrainOutcome<T>> {
    p.same_states(q)?;
    for i in 0..p.len() {
        if *q.prob(i) > T::zero() && !(*p.prob(i) > T::zero()) {
            return Ok(GrainOutcome::NoGrain(NoGrainReason::SupportViolation {
                witness: SupportWitness::State(p.states()[i].clone()),
            }));
        }
    }
    let mut c = T::zero();
    for i in 0..p.len() {
        if *p.prob(i) > T::zero() {
            let ratio = q.prob(i).clone() / p.prob(i).clone();
            if ratio > c {
                c = ratio;
            }
        }
    }
    // q and p are both probability vectors, so the max ratio is at least 1
    let epsilon = T::one() / c.clone();
    if c.close_to(&T::one()) {
        return Ok(GrainOutcome::Certificate(GrainCertificate::new(
            T::one(),
            Residual::Arbitrary,
        )));
    }
    let one_minus = T::one() - epsilon.clone();
    let probs: Vec<T> = (0..p.len())
        .map(|i| {
            let raw =
                (p.prob(i).clone() - epsilon.clone() * q.prob(i).clone()) / one_minus.clone();
            // the binding state gives an exact zero in rational mode; clear
            // float dust so the residual is a valid distribution
            if !T::EXACT && raw.to_f64().abs() <= 1e-12 {
                T::zero()
            } else {
                raw
            }
        })
        .collect();
    let residual = FiniteDistribution::new(p.states().clone(), probs)?;
    Ok(GrainOutcome::Certificate(GrainCertificate::new(
        epsilon,
        Residual::Finite(residual),
    )))
}

/// Grain test for parametric laws via the density-ratio supremum.
///
/// A finite supremum `c` certifies the grain with ε = 1/c and a residual
/// left symbolic; an infinite supremum refutes it, distinguishing support
/// violations from genuinely unbounded ratios. Atomic posteriors never have
/// a grain inside the implemented (non-atomic) priors.
pub fn decompose_parametric(
    p: &ParametricDistribution,
    q: &ParametricDistribution,
) -> Result<GrainOutcome<f64>> {
    if p.is_atomic() {
        return Err(Error::HypothesisViolated(
            "prior must be non-atomic for the parametric grain test".into(),
        ));
    }
    if let ParametricDistribution::PointMass { location } = q {
        return Ok(GrainOutcome::NoGrain(NoGrainReason::AtomAgainstContinuous {
            location: *location,
        }));
    }
    let sup = density_ratio_sup(q, p)?;
    match sup.divergence {
        Some(RatioDivergence::SupportViolation { witness }) => {
            Ok(GrainOutcome::NoGrain(NoGrainReason::SupportViolation {
                witness: SupportWitness::Point(witness),
            }))
        }
        Some(RatioDivergence::Unbounded { witness_radius }) => {
            Ok(GrainOutcome::NoGrain(NoGrainReason::UnboundedRatio { witness_radius }))
        }
        None => {
            let residual = if sup.log_sup == 0.0 {
                Residual::Arbitrary
            } else {
                Residual::Implied
            };
            let mut cert = GrainCertificate::new((-sup.log_sup).exp(), residual);
            cert.log_c = sup.log_sup;
            cert.c = sup.log_sup.exp();
            Ok(GrainOutcome::Certificate(cert))
        }
    }
}

/// Report from checking a certificate by direct substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    /// ε ∈ (0, 1] and ε·c = 1.
    pub epsilon_valid: bool,
    /// `P = εQ + (1-ε)Q'`, state by state or on the verification grid.
    pub mixture_identity: bool,
    /// The residual is a probability measure (nonnegative, unit mass).
    pub residual_valid: bool,
    pub detail: Option<String>,
}

impl CertificateReport {
    pub fn pass(&self) -> bool {
        self.epsilon_valid && self.mixture_identity && self.residual_valid
    }

    fn fail(detail: String) -> Self {
        CertificateReport {
            epsilon_valid: false,
            mixture_identity: false,
            residual_valid: false,
            detail: Some(detail),
        }
    }
}

/// Verifies a finite-state certificate by substitution into
/// `P = εQ + (1-ε)Q'`. Exact in rational mode.
pub fn verify_certificate_finite<T: Scalar>(
    p: &FiniteDistribution<T>,
    q: &FiniteDistribution<T>,
    cert: &GrainCertificate<T>,
) -> CertificateReport {
    if p.same_states(q).is_err() {
        return CertificateReport::fail("state lists differ".into());
    }
    let eps = &cert.epsilon;
    let epsilon_valid = *eps > T::zero()
        && *eps <= T::one()
        && (eps.clone() * cert.c.clone()).close_to(&T::one());
    let one_minus = T::one() - eps.clone();
    match &cert.residual {
        Residual::Arbitrary => {
            // only meaningful when ε = 1, where the identity reads P = Q
            let mixture_identity = eps.close_to(&T::one()) && p.close_to(q);
            CertificateReport {
                epsilon_valid,
                mixture_identity,
                residual_valid: true,
                detail: (!mixture_identity).then(|| "ε = 1 requires q = p".into()),
            }
        }
        Residual::Implied => {
            let mut residual_valid = true;
            let mut detail = None;
            for i in 0..p.len() {
                let implied = p.prob(i).clone() - eps.clone() * q.prob(i).clone();
                if !implied.is_nonnegative() {
                    residual_valid = false;
                    detail = Some(format!(
                        "implied residual negative at state {}",
                        p.states()[i]
                    ));
                    break;
                }
            }
            // the implied residual sums to 1-ε by construction, so the
            // mixture identity reduces to nonnegativity
            CertificateReport {
                epsilon_valid,
                mixture_identity: residual_valid,
                residual_valid,
                detail,
            }
        }
        Residual::Finite(residual) => {
            if residual.same_states(p).is_err() {
                return CertificateReport::fail("residual state list differs".into());
            }
            let mut mixture_identity = true;
            let mut detail = None;
            for i in 0..p.len() {
                let mixed = eps.clone() * q.prob(i).clone()
                    + one_minus.clone() * residual.prob(i).clone();
                if !mixed.close_to(p.prob(i)) {
                    mixture_identity = false;
                    detail = Some(format!(
                        "mixture misses p at state {}: {} vs {}",
                        p.states()[i],
                        mixed,
                        p.prob(i)
                    ));
                    break;
                }
            }
            CertificateReport {
                epsilon_valid,
                mixture_identity,
                residual_valid: true, // construction of FiniteDistribution enforced it
                detail,
            }
        }
        Residual::Parametric(_) => {
            CertificateReport::fail("parametric residual against finite distributions".into())
        }
    }
}

/// Verifies a parametric certificate on a 10⁴-point grid covering all but
/// `1e-12` of the prior's mass, to a pointwise tolerance of `1e-6`;
/// residual mass is checked through the closed-form CDFs.
pub fn verify_certificate_parametric(
    p: &ParametricDistribution,
    q: &ParametricDistribution,
    cert: &GrainCertificate<f64>,
) -> CertificateReport {
    let eps = cert.epsilon;
    let epsilon_valid = eps > 0.0 && eps <= 1.0 && (eps * cert.c - 1.0).abs() <= 1e-9;
    let (lo, hi) = coverage_interval(p, 1e-12);
    let qs = q.support();
    let (glo, ghi) = (lo.min(qs.lo.max(-1e300)), hi.max(qs.hi.min(1e300)));
    let step = (ghi - glo) / VERIFY_GRID_POINTS as f64;

    match &cert.residual {
        Residual::Arbitrary => {
            let mut identical = eps == 1.0 || (eps - 1.0).abs() <= 1e-12;
            if identical {
                for i in 0..VERIFY_GRID_POINTS {
                    let x = glo + (i as f64 + 0.5) * step;
                    if (p.density(x) - q.density(x)).abs() > VERIFY_GRID_TOL {
                        identical = false;
                        break;
                    }
                }
            }
            CertificateReport {
                epsilon_valid,
                mixture_identity: identical,
                residual_valid: true,
                detail: (!identical).then(|| "ε = 1 requires identical densities".into()),
            }
        }
        Residual::Implied => {
            let mut nonneg = true;
            let mut detail = None;
            for i in 0..VERIFY_GRID_POINTS {
                let x = glo + (i as f64 + 0.5) * step;
                let slack = p.density(x) - eps * q.density(x);
                if slack < -VERIFY_GRID_TOL {
                    nonneg = false;
                    detail = Some(format!("p - εq = {slack} at x = {x}"));
                    break;
                }
            }
            // residual mass through closed forms: ∫(p - εq)/(1-ε) over the
            // whole line equals (1 - ε·Q(ℝ))/(1-ε) = 1
            let residual_mass = if eps < 1.0 {
                let p_mass = p.interval_mass(f64::NEG_INFINITY, f64::INFINITY);
                let q_mass = q.interval_mass(f64::NEG_INFINITY, f64::INFINITY);
                (p_mass - eps * q_mass) / (1.0 - eps)
            } else {
                1.0
            };
            let mass_ok = (residual_mass - 1.0).abs() <= 1e-9;
            CertificateReport {
                epsilon_valid,
                mixture_identity: nonneg,
                residual_valid: nonneg && mass_ok,
                detail,
            }
        }
        Residual::Parametric(residual) => {
            let mut mixture_identity = true;
            let mut detail = None;
            for i in 0..VERIFY_GRID_POINTS {
                let x = glo + (i as f64 + 0.5) * step;
                let mixed = eps * q.density(x) + (1.0 - eps) * residual.density(x);
                if (mixed - p.density(x)).abs() > VERIFY_GRID_TOL {
                    mixture_identity = false;
                    detail = Some(format!("mixture misses p at x = {x}"));
                    break;
                }
            }
            CertificateReport {
                epsilon_valid,
                mixture_identity,
                residual_valid: true,
                detail,
            }
        }
        Residual::Finite(_) => {
            CertificateReport::fail("finite residual against parametric laws".into())
        }
    }
}

/// Outcome of comparing the tails of `q` against the prior-side law `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailVerdict {
    pub relation: TailRelation,
    /// For `QHeavier`: a radius where the survival ratio exceeds the
    /// divergence threshold.
    pub witness_radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailRelation {
    QHeavier,
    PHeavier,
    /// `Q(|x|>r) ≤ c·P(|x|>r)` on the verification grid.
    Comparable { c: f64 },
}

/// Compares tail decay per the survival-ratio limit, resolving equal decay
/// classes by their rate parameters and certifying comparable pairs with a
/// grid-computed constant. A bounded-support `q` against an unbounded `p`
/// is always comparable; `q` reaching beyond a bounded `p` is heavier
/// outright.
pub fn tail_order_compare(
    p: &ParametricDistribution,
    q: &ParametricDistribution,
) -> TailVerdict {
    let qs = q.support();
    let ps = p.support();
    if qs.is_bounded() || ps.is_bounded() {
        if ps.is_bounded() && qs.radius() > ps.radius() {
            // q keeps mass at radii where p has none
            let upper = qs.radius().min(ps.radius() + 1.0);
            return TailVerdict {
                relation: TailRelation::QHeavier,
                witness_radius: Some(0.5 * (ps.radius() + upper)),
            };
        }
        return TailVerdict {
            relation: TailRelation::Comparable {
                c: survival_ratio_bound(p, q),
            },
            witness_radius: None,
        };
    }
    let qc = q.tail_class();
    let pc = p.tail_class();
    match TailClass::compare(&qc, &pc) {
        TailOrdering::QHeavier => TailVerdict {
            relation: TailRelation::QHeavier,
            witness_radius: divergence_radius(p, q),
        },
        TailOrdering::QLighter => TailVerdict {
            relation: TailRelation::PHeavier,
            witness_radius: None,
        },
        TailOrdering::Equivalent => {
            let c = survival_ratio_bound(p, q);
            TailVerdict {
                relation: TailRelation::Comparable { c },
                witness_radius: None,
            }
        }
    }
}

/// First radius (by doubling, then bisection) where the survival ratio
/// exceeds the divergence threshold.
fn divergence_radius(p: &ParametricDistribution, q: &ParametricDistribution) -> Option<f64> {
    let ratio = |r: f64| {
        let pr = p.tail_probability(r);
        let qr = q.tail_probability(r);
        if pr <= 0.0 {
            if qr > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        } else {
            qr / pr
        }
    };
    let mut r = 1.0;
    let mut iterations = 0;
    while ratio(r) < DIVERGENCE_THRESHOLD && iterations < 64 {
        r *= 2.0;
        iterations += 1;
    }
    if ratio(r) < DIVERGENCE_THRESHOLD {
        return None; // tails decay too fast to witness within float range
    }
    let (mut lo, mut hi) = (r / 2.0, r);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) < DIVERGENCE_THRESHOLD {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// Least c with `Q(|x|>r) ≤ c·P(|x|>r)` over the verification grid.
fn survival_ratio_bound(p: &ParametricDistribution, q: &ParametricDistribution) -> f64 {
    let (plo, phi) = coverage_interval(p, 1e-12);
    let (qlo, qhi) = coverage_interval(q, 1e-12);
    let rmax = plo.abs().max(phi.abs()).max(qlo.abs()).max(qhi.abs());
    let mut c = 1.0f64;
    let n = 4096;
    for i in 0..n {
        let r = rmax * i as f64 / n as f64;
        let pr = p.tail_probability(r);
        let qr = q.tail_probability(r);
        if pr > 0.0 && qr > 0.0 {
            c = c.max(qr / pr);
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::state_labels;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn fd(probs: &[(i64, i64)]) -> FiniteDistribution<BigRational> {
        let labels: Vec<String> = (0..probs.len()).map(|i| format!("s{i}")).collect();
        let states = labels.iter().map(String::as_str).collect::<Vec<_>>();
        FiniteDistribution::from_labels(&states, probs.iter().map(|&(n, d)| r(n, d)).collect())
            .unwrap()
    }

    #[test]
    fn two_state_decomposition_is_exact() {
        let p = fd(&[(1, 2), (1, 2)]);
        let q = fd(&[(19, 20), (1, 20)]);
        let cert = decompose_finite(&p, &q).unwrap().certificate().unwrap();
        assert_eq!(cert.epsilon, r(10, 19));
        assert_eq!(cert.c, r(19, 10));
        match &cert.residual {
            Residual::Finite(res) => assert_eq!(res.probs(), &[r(0, 1), r(1, 1)]),
            other => panic!("{other:?}"),
        }
        assert!(verify_certificate_finite(&p, &q, &cert).pass());
    }

    #[test]
    fn identical_distributions_give_epsilon_one() {
        let p = fd(&[(1, 2), (1, 2)]);
        let cert = decompose_finite(&p, &p).unwrap().certificate().unwrap();
        assert_eq!(cert.epsilon, r(1, 1));
        assert_eq!(cert.residual, Residual::Arbitrary);
        assert!(verify_certificate_finite(&p, &p, &cert).pass());
    }

    #[test]
    fn support_violation_names_the_state() {
        let p = fd(&[(0, 1), (1, 1)]);
        let q = fd(&[(1, 1), (0, 1)]);
        match decompose_finite(&p, &q).unwrap() {
            GrainOutcome::NoGrain(NoGrainReason::SupportViolation {
                witness: SupportWitness::State(s),
            }) => assert_eq!(s, "s0"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_epsilon_fails_verification() {
        let p = fd(&[(1, 2), (1, 2)]);
        let q = fd(&[(19, 20), (1, 20)]);
        // ε = 0.9 overshoots: 1/2 - 0.9·19/20 < 0
        let bad = GrainCertificate::new(r(9, 10), Residual::Finite(fd(&[(0, 1), (1, 1)])));
        assert!(!verify_certificate_finite(&p, &q, &bad).pass());
        let bad_implied = GrainCertificate::new(r(9, 10), Residual::Implied);
        assert!(!verify_certificate_finite(&p, &q, &bad_implied).pass());
    }

    #[test]
    fn smaller_epsilon_with_recomputed_residual_verifies() {
        let p = fd(&[(1, 2), (1, 2)]);
        let q = fd(&[(19, 20), (1, 20)]);
        let maximal = decompose_finite(&p, &q).unwrap().certificate().unwrap();
        let smaller = r(1, 4);
        assert!(smaller < maximal.epsilon);
        let cert = GrainCertificate::new(smaller, Residual::Implied);
        assert!(verify_certificate_finite(&p, &q, &cert).pass());
        // but any ε above the maximal one must fail on the binding state
        let above = maximal.epsilon.clone() + r(1, 1_000_000_000);
        let bad = GrainCertificate::new(above, Residual::Implied);
        assert!(!verify_certificate_finite(&p, &q, &bad).pass());
    }

    #[test]
    fn parametric_certificates() {
        let normal = ParametricDistribution::normal(0.0, 1.0).unwrap();
        let laplace = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        let trunc = ParametricDistribution::truncated(laplace.clone(), 1.0, 2.0).unwrap();
        // bounded case: truncated Laplace inside a normal prior
        let cert = decompose_parametric(&normal, &trunc)
            .unwrap()
            .certificate()
            .unwrap();
        assert!(cert.epsilon > 0.0 && cert.epsilon < 1.0);
        assert!(verify_certificate_parametric(&normal, &trunc, &cert).pass());
        // unbounded case
        match decompose_parametric(&normal, &laplace).unwrap() {
            GrainOutcome::NoGrain(NoGrainReason::UnboundedRatio { .. }) => {}
            other => panic!("{other:?}"),
        }
        // identical laws
        let cert = decompose_parametric(&laplace, &laplace)
            .unwrap()
            .certificate()
            .unwrap();
        assert_eq!(cert.epsilon, 1.0);
        assert!(verify_certificate_parametric(&laplace, &laplace, &cert).pass());
    }

    #[test]
    fn point_mass_posterior_has_no_grain() {
        let normal = ParametricDistribution::normal(0.0, 1.0).unwrap();
        let pm = ParametricDistribution::point_mass(0.3).unwrap();
        match decompose_parametric(&normal, &pm).unwrap() {
            GrainOutcome::NoGrain(NoGrainReason::AtomAgainstContinuous { location }) => {
                assert_eq!(location, 0.3)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tail_comparisons() {
        let normal = ParametricDistribution::normal(0.0, 1.0).unwrap();
        let laplace = ParametricDistribution::laplace(0.0, 1.0).unwrap();
        let exp = ParametricDistribution::exponential(1.0, false).unwrap();

        let v = tail_order_compare(&normal, &laplace);
        assert_eq!(v.relation, TailRelation::QHeavier);
        let r = v.witness_radius.unwrap();
        assert!(laplace.tail_probability(r) / normal.tail_probability(r) >= 1e6 * 0.99);

        let v = tail_order_compare(&normal, &normal);
        assert!(matches!(v.relation, TailRelation::Comparable { c } if (c - 1.0).abs() < 1e-12));

        assert_eq!(
            tail_order_compare(&normal, &exp).relation,
            TailRelation::QHeavier
        );
        assert_eq!(
            tail_order_compare(&laplace, &normal).relation,
            TailRelation::PHeavier
        );
    }

    #[test]
    fn bounded_q_against_unbounded_p_is_comparable() {
        let normal = ParametricDistribution::normal(0.0, 1.0).unwrap();
        let uniform = ParametricDistribution::uniform(-1.0, 1.0).unwrap();
        let v = tail_order_compare(&normal, &uniform);
        match v.relation {
            TailRelation::Comparable { c } => {
                for i in 0..100 {
                    let r = i as f64 * 0.05;
                    assert!(
                        uniform.tail_probability(r) <= c * normal.tail_probability(r) + 1e-12
                    );
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tail_heavier_implies_no_grain() {
        let pairs = [
            (
                ParametricDistribution::normal(0.0, 1.0).unwrap(),
                ParametricDistribution::laplace(0.0, 1.0).unwrap(),
            ),
            (
                ParametricDistribution::normal(0.0, 1.0).unwrap(),
                ParametricDistribution::normal(0.5, 1.0).unwrap(),
            ),
            (
                ParametricDistribution::laplace(0.0, 1.0).unwrap(),
                ParametricDistribution::laplace(0.0, 2.0).unwrap(),
            ),
        ];
        for (p, q) in pairs {
            if tail_order_compare(&p, &q).relation == TailRelation::QHeavier {
                assert!(!decompose_parametric(&p, &q).unwrap().is_certificate());
            }
        }
    }

    #[test]
    fn states_must_match() {
        let p: FiniteDistribution<f64> =
            FiniteDistribution::from_labels(&["a", "b"], vec![0.5, 0.5]).unwrap();
        let q = FiniteDistribution::from_labels(&["x", "y"], vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            decompose_finite(&p, &q),
            Err(Error::StateMismatch(_))
        ));
        let _ = state_labels(&["a"]);
    }
}
