//! Mechanical certification that the L^p-cohomology torsion T^{k,p} vanishes.
//!
//! Two routes are implemented, both purely rational:
//!
//! - flow route: the degree-(k−1) splitting is entirely contracted (or
//!   entirely dilated) and p is non-critical in degree k−2;
//! - closed-range route (k ≥ 2): δ is injective on Λ^{k−1}_{+(p)} and its
//!   image meets W = span{θ^i ∧ ψ : ψ ∈ Λ^{k−1}_{+(p)}} ⊆ Λ^k only in 0,
//!   again with degree k−2 non-critical.
//!
//! Every emitted Vanishes* certificate passes an audit that re-verifies its
//! preconditions from scratch (fresh basis enumeration, reversed elimination
//! order); an audit failure aborts, since it can only mean a bug here.
//! On top of single queries sit per-degree interval tables over p ∈ [1, ∞],
//! the vanishing-window reproduction, the exactness-defect classification of
//! two-step algebras, and the comparison against curvature-only bounds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra_core::{GradedLieAlgebra, Rational, ValidationReport};
use crate::exec;
use crate::exterior::{
    basis, delta_form, delta_of_monomial, generator_differentials, sigma, ExteriorForm,
    ExteriorIndex, Feed, RowReducer,
};
use crate::spectra::{
    anosov_split, colliding_weight, critical_exponents, flow_status, one_plus_sqrt_multiple,
    threshold, CriticalExponents, ExtendedExponent, FlowStatus, PinchBound, SpectraError,
};

/// Errors from certification queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifierError {
    #[error("algebra '{name}' fails validation:\n{report}")]
    InvalidAlgebra { name: String, report: Box<ValidationReport> },
    #[error("degree {degree} out of range; expected {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("window undefined in degree {degree}: need 2·k ≤ h but h = {h}")]
    WindowDegreeTooHigh { degree: usize, h: Rational },
    #[error("window undefined: σ({degree}) has {count} element(s); need at least 2")]
    WindowSpectrumTooSmall { degree: usize, count: usize },
    #[error("window undefined: second-largest weight {suiv} in the lower degree is not positive")]
    WindowSuivNotPositive { suiv: Rational },
    #[error("window (1, {sup}) is empty")]
    WindowEmpty { sup: Rational },
    #[error("window assertion failed on {segment}: expected a vanishing certificate, got {}", certificate.label())]
    WindowAssertionFailed { segment: Segment, certificate: Box<Certificate> },
    #[error("not a two-step {{1,2}}-graded algebra: {detail}")]
    NotTwoStep { detail: String },
}

/// The structural part of a splitting used as certificate evidence; the
/// exponent itself is dropped so certificates compare equal along a whole
/// breakpoint-free segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvidence {
    pub degree: usize,
    pub plus: Vec<ExteriorIndex>,
    pub minus: Vec<ExteriorIndex>,
}

/// Exact-rank evidence for the closed-range route in degree k−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedRangeReport {
    /// dim Λ^{k−1}_{+(p)}.
    pub plus_dim: usize,
    /// dim W for W = span{θ^i ∧ ψ : ψ a plus monomial}.
    pub w_dim: usize,
    /// rank of δ restricted to the plus monomials.
    pub image_rank: usize,
    pub delta_injective: bool,
    /// Basis of ker(δ|plus); nonempty exactly when not injective.
    pub kernel: Vec<ExteriorForm>,
    pub transversal: bool,
    /// Basis of δ(Λ^{k−1}_+) ∩ W; nonempty exactly when not transversal.
    pub intersection: Vec<ExteriorForm>,
}

/// Outcome of a torsion-vanishing query at one (k, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Λ^{k−1}_{+(p)} = 0 and degree k−2 is non-critical.
    VanishesContracting { split: SplitEvidence },
    /// Λ^{k−1}_{−(p)} = 0 and degree k−2 is non-critical.
    VanishesDilating { split: SplitEvidence },
    /// δ-injectivity plus transversality, degree k−2 non-critical.
    VanishesClosedRange { report: ClosedRangeReport },
    /// The threshold collides with a weight in degree k−1 or k−2.
    InconclusiveCritical { degree: usize, weight: Rational },
    /// No implemented route applies.
    InconclusiveUnknown { report: Option<ClosedRangeReport> },
}

impl Certificate {
    /// Variant name, used in table cells and error messages.
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::VanishesContracting { .. } => "VanishesContracting",
            Certificate::VanishesDilating { .. } => "VanishesDilating",
            Certificate::VanishesClosedRange { .. } => "VanishesClosedRange",
            Certificate::InconclusiveCritical { .. } => "InconclusiveCritical",
            Certificate::InconclusiveUnknown { .. } => "InconclusiveUnknown",
        }
    }

    /// True for any Vanishes* variant.
    pub fn is_vanishing(&self) -> bool {
        matches!(
            self,
            Certificate::VanishesContracting { .. }
                | Certificate::VanishesDilating { .. }
                | Certificate::VanishesClosedRange { .. }
        )
    }

    /// One-line human summary of the attached evidence.
    pub fn evidence_summary(&self) -> String {
        match self {
            Certificate::VanishesContracting { split } => format!(
                "degree-{} plus space is zero; all {} monomials lie below the threshold",
                split.degree,
                split.minus.len()
            ),
            Certificate::VanishesDilating { split } => format!(
                "degree-{} minus space is zero; all {} monomials lie above the threshold",
                split.degree,
                split.plus.len()
            ),
            Certificate::VanishesClosedRange { report } => format!(
                "delta injective on plus (dim {}); image of rank {} transversal to W (dim {})",
                report.plus_dim, report.image_rank, report.w_dim
            ),
            Certificate::InconclusiveCritical { degree, weight } => {
                format!("threshold collides with weight {weight} in degree {degree}")
            }
            Certificate::InconclusiveUnknown { report: Some(report) } => format!(
                "plus dim {}, delta kernel dim {}, intersection with W has dim {}",
                report.plus_dim,
                report.kernel.len(),
                report.intersection.len()
            ),
            Certificate::InconclusiveUnknown { report: None } => {
                "splitting is mixed; the closed-range route needs degree ≥ 2".to_string()
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::InconclusiveCritical { degree, .. } => {
                write!(f, "InconclusiveCritical(degree {degree})")
            }
            other => write!(f, "{}", other.label()),
        }
    }
}

/// One piece of a table partition of [1, ∞].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    /// A single critical exponent.
    Point(Rational),
    /// An interval with rational (or infinite) endpoints.
    Interval {
        lo: Rational,
        hi: ExtendedExponent,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Point(p) => write!(f, "{{{p}}}"),
            Segment::Interval { lo, hi, lo_closed, hi_closed } => {
                let open = if *lo_closed { '[' } else { '(' };
                let close = if *hi_closed { ']' } else { ')' };
                write!(f, "{open}{lo}, {hi}{close}")
            }
        }
    }
}

/// Per-degree partition of p ∈ [1, ∞] into certified segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionTable {
    pub degree: usize,
    /// Critical exponents of degrees k−1 and k−2, merged and sorted.
    pub breakpoints: Vec<Rational>,
    pub segments: Vec<(Segment, Certificate)>,
}

/// The certified vanishing window (1, h/suiv σ(k−1)) with its exception point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowReport {
    pub degree: usize,
    pub window_sup: Rational,
    pub exception: Rational,
    pub segments: Vec<(Segment, Certificate)>,
}

/// Whether closedness of a top-weight component is detectable by exterior
/// algebra alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactnessClassification {
    PurelyAlgebraicCriterion,
    RequiresDifferentialCondition,
}

impl fmt::Display for ExactnessClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactnessClassification::PurelyAlgebraicCriterion => {
                write!(f, "PurelyAlgebraicCriterion")
            }
            ExactnessClassification::RequiresDifferentialCondition => {
                write!(f, "RequiresDifferentialCondition")
            }
        }
    }
}

/// Evidence for [`exactness_defect`]: rank of wedge-with-δ(τ) on 𝔫₁*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub classification: ExactnessClassification,
    pub n1_dim: usize,
    pub n2_dim: usize,
    pub wedge_rank: usize,
    pub tau: ExteriorIndex,
    pub delta_tau: ExteriorForm,
}

/// Curvature-only bound vs. the bound certified by the table machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRecord {
    pub degree: usize,
    pub delta: Rational,
    pub curvature_bound: PinchBound,
    pub certified_bound: ExtendedExponent,
    pub difference: PinchBound,
}

fn ensure_valid(alg: &GradedLieAlgebra) -> Result<(), CertifierError> {
    let report = alg.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(CertifierError::InvalidAlgebra {
            name: alg.name().to_string(),
            report: Box::new(report),
        })
    }
}

fn ensure_degree(k: usize, min: usize, max: usize) -> Result<(), CertifierError> {
    if k < min || k > max {
        return Err(CertifierError::DegreeOutOfRange { degree: k, min, max });
    }
    Ok(())
}

fn ensure_exponent(p: &ExtendedExponent) -> Result<(), CertifierError> {
    if !p.is_admissible() {
        return Err(SpectraError::ExponentOutOfRange { exponent: p.clone() }.into());
    }
    Ok(())
}

/// Non-criticality of degree k−2, with k = 1 vacuously fine.
fn lower_degree_noncritical(alg: &GradedLieAlgebra, k: usize, p: &ExtendedExponent) -> bool {
    k == 1 || colliding_weight(alg, k - 2, p).is_none()
}

fn flow_core(alg: &GradedLieAlgebra, k: usize, p: &ExtendedExponent) -> Option<Certificate> {
    let status = flow_status(alg, k - 1, p).expect("degree and exponent pre-checked");
    let conclusive = matches!(status, FlowStatus::Contracting | FlowStatus::Dilating);
    if !conclusive || !lower_degree_noncritical(alg, k, p) {
        return None;
    }
    let split = anosov_split(alg, k - 1, p).expect("status is non-critical");
    let evidence = SplitEvidence { degree: k - 1, plus: split.plus, minus: split.minus };
    Some(match status {
        FlowStatus::Contracting => Certificate::VanishesContracting { split: evidence },
        FlowStatus::Dilating => Certificate::VanishesDilating { split: evidence },
        _ => unreachable!(),
    })
}

/// The monomials θ^i ∧ ψ spanning W, for ψ ranging over the plus basis.
fn wedge_span_monomials(n: usize, plus: &[ExteriorIndex]) -> BTreeSet<ExteriorIndex> {
    let mut out = BTreeSet::new();
    for psi in plus {
        for i in 1..=n {
            if !psi.contains(i) {
                out.insert(psi.union(ExteriorIndex::from_indices([i])));
            }
        }
    }
    out
}

fn closed_range_core(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<(ClosedRangeReport, Option<Certificate>), SpectraError> {
    let n = alg.dim();
    let split = anosov_split(alg, k - 1, p)?;
    let plus = split.plus;
    let deltas = generator_differentials(alg);
    let row_pos: BTreeMap<ExteriorIndex, usize> =
        basis(n, k).into_iter().enumerate().map(|(pos, s)| (s, pos)).collect();
    let delta_columns: Vec<BTreeMap<usize, Rational>> = plus
        .iter()
        .map(|psi| {
            delta_of_monomial(&deltas, *psi)
                .terms()
                .map(|(s, c)| (row_pos[&s], c.clone()))
                .collect()
        })
        .collect();

    let mut injectivity = RowReducer::new();
    let mut kernel = Vec::new();
    for column in &delta_columns {
        if let Feed::Dependent(combo) = injectivity.feed(column.clone()) {
            kernel.push(ExteriorForm::from_terms(
                k - 1,
                combo.into_iter().map(|(pos, c)| (plus[pos], c)),
            ));
        }
    }
    let image_rank = injectivity.rank();
    let delta_injective = kernel.is_empty();

    let w_monomials = wedge_span_monomials(n, &plus);
    let w_dim = w_monomials.len();
    let mut transversality = RowReducer::new();
    for m in &w_monomials {
        transversality.feed(BTreeMap::from([(row_pos[m], Rational::one())]));
    }
    let mut candidates = Vec::new();
    for column in &delta_columns {
        if let Feed::Dependent(combo) = transversality.feed(column.clone()) {
            // Positions ≥ w_dim index the delta columns; the plus-part of the
            // combination maps under δ into W, giving an intersection vector.
            let mut preimage = ExteriorForm::zero(k - 1);
            for (pos, c) in combo {
                if pos >= w_dim {
                    preimage.add_term(plus[pos - w_dim], c);
                }
            }
            let mut image = ExteriorForm::zero(k);
            for (psi, c) in preimage.terms() {
                let mut piece = delta_of_monomial(&deltas, psi);
                piece.scale(c);
                image.add(&piece);
            }
            if !image.is_zero() {
                candidates.push(image);
            }
        }
    }
    let mut independent = RowReducer::new();
    let mut intersection = Vec::new();
    for form in candidates {
        let column: BTreeMap<usize, Rational> =
            form.terms().map(|(s, c)| (row_pos[&s], c.clone())).collect();
        if matches!(independent.feed(column), Feed::Pivot(_)) {
            intersection.push(form);
        }
    }
    let transversal = intersection.is_empty();

    let report = ClosedRangeReport {
        plus_dim: plus.len(),
        w_dim,
        image_rank,
        delta_injective,
        kernel,
        transversal,
        intersection,
    };
    let certificate = (delta_injective && transversal && lower_degree_noncritical(alg, k, p))
        .then(|| Certificate::VanishesClosedRange { report: report.clone() });
    Ok((report, certificate))
}

/// Re-verifies a vanishing certificate's preconditions by independent means:
/// fresh basis enumeration with strict comparisons for the flow route, a
/// reversed-order elimination for the closed-range ranks. Panics on failure,
/// which would indicate a certification bug.
fn audit(alg: &GradedLieAlgebra, k: usize, p: &ExtendedExponent, cert: &Certificate) {
    let n = alg.dim();
    let h = alg.trace_h();
    let theta = threshold(&h, p);
    let fresh_weight = |s: ExteriorIndex| -> Rational {
        s.indices().fold(Rational::zero(), |acc, i| acc + alg.weight(i))
    };
    let assert_lower_noncritical = || {
        if k >= 2 {
            for s in basis(n, k - 2) {
                assert!(
                    fresh_weight(s) != theta,
                    "audit failed: degree {} is critical at p = {p}",
                    k - 2
                );
            }
        }
    };
    match cert {
        Certificate::VanishesContracting { split } => {
            assert!(split.plus.is_empty(), "audit failed: plus evidence nonempty");
            let lower = basis(n, k - 1);
            assert_eq!(split.minus.len(), lower.len(), "audit failed: minus evidence incomplete");
            for s in lower {
                assert!(
                    fresh_weight(s) < theta,
                    "audit failed: monomial {s} does not contract at p = {p}"
                );
            }
            assert_lower_noncritical();
        }
        Certificate::VanishesDilating { split } => {
            assert!(split.minus.is_empty(), "audit failed: minus evidence nonempty");
            let lower = basis(n, k - 1);
            assert_eq!(split.plus.len(), lower.len(), "audit failed: plus evidence incomplete");
            for s in lower {
                assert!(
                    fresh_weight(s) > theta,
                    "audit failed: monomial {s} does not dilate at p = {p}"
                );
            }
            assert_lower_noncritical();
        }
        Certificate::VanishesClosedRange { report } => {
            assert!(report.delta_injective && report.transversal, "audit failed: report flags");
            let mut plus = Vec::new();
            for s in basis(n, k - 1) {
                let w = fresh_weight(s);
                assert!(w != theta, "audit failed: degree {} critical at p = {p}", k - 1);
                if w > theta {
                    plus.push(s);
                }
            }
            assert_eq!(plus.len(), report.plus_dim, "audit failed: plus dimension");
            assert_lower_noncritical();
            let w_monomials = wedge_span_monomials(n, &plus);
            assert_eq!(w_monomials.len(), report.w_dim, "audit failed: W dimension");
            // Reversed feed order forces a different pivot trajectory; the
            // combined rank certifies injectivity and transversality at once.
            let deltas = generator_differentials(alg);
            let row_pos: BTreeMap<ExteriorIndex, usize> =
                basis(n, k).into_iter().enumerate().map(|(pos, s)| (s, pos)).collect();
            let mut reducer = RowReducer::new();
            for m in w_monomials.iter().rev() {
                reducer.feed(BTreeMap::from([(row_pos[m], Rational::one())]));
            }
            for psi in plus.iter().rev() {
                let column: BTreeMap<usize, Rational> = delta_of_monomial(&deltas, *psi)
                    .terms()
                    .map(|(s, c)| (row_pos[&s], c.clone()))
                    .collect();
                reducer.feed(column);
            }
            assert_eq!(
                reducer.rank(),
                report.w_dim + report.plus_dim,
                "audit failed: rank deficit in reversed elimination"
            );
        }
        Certificate::InconclusiveCritical { .. } | Certificate::InconclusiveUnknown { .. } => {}
    }
}

fn certify_core(alg: &GradedLieAlgebra, k: usize, p: &ExtendedExponent) -> Certificate {
    if let Some(weight) = colliding_weight(alg, k - 1, p) {
        return Certificate::InconclusiveCritical { degree: k - 1, weight };
    }
    if k >= 2 {
        if let Some(weight) = colliding_weight(alg, k - 2, p) {
            return Certificate::InconclusiveCritical { degree: k - 2, weight };
        }
    }
    if let Some(cert) = flow_core(alg, k, p) {
        audit(alg, k, p, &cert);
        return cert;
    }
    if k >= 2 {
        let (report, cert) =
            closed_range_core(alg, k, p).expect("criticality excluded above");
        if let Some(cert) = cert {
            audit(alg, k, p, &cert);
            return cert;
        }
        return Certificate::InconclusiveUnknown { report: Some(report) };
    }
    Certificate::InconclusiveUnknown { report: None }
}

/// Flow route: certifies T^{k,p} = 0 when the degree-(k−1) splitting is
/// entirely on one side and degree k−2 is non-critical; `None` otherwise.
pub fn check_flow_vanishing(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<Option<Certificate>, CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 1, alg.dim())?;
    ensure_exponent(p)?;
    let cert = flow_core(alg, k, p);
    if let Some(cert) = &cert {
        audit(alg, k, p, cert);
    }
    Ok(cert)
}

/// Closed-range route: reports δ-injectivity on Λ^{k−1}_{+(p)} and
/// transversality of its image to W, plus the certificate when everything
/// holds; errors when p is critical in degree k−1.
pub fn check_closed_range(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<(ClosedRangeReport, Option<Certificate>), CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 2, alg.dim())?;
    ensure_exponent(p)?;
    let (report, cert) = closed_range_core(alg, k, p)?;
    if let Some(cert) = &cert {
        audit(alg, k, p, cert);
    }
    Ok((report, cert))
}

/// Full decision procedure at one (k, p): criticality first, then the flow
/// route, then the closed-range route.
pub fn certify(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<Certificate, CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 1, alg.dim())?;
    ensure_exponent(p)?;
    Ok(certify_core(alg, k, p))
}

/// Finite critical exponents of one degree; empty when every p is critical,
/// since that situation produces no usable breakpoints.
fn finite_criticals(alg: &GradedLieAlgebra, degree: usize) -> Vec<Rational> {
    match critical_exponents(alg, degree).expect("degree pre-checked") {
        CriticalExponents::AllCritical => Vec::new(),
        CriticalExponents::Finite(list) => list,
    }
}

/// Mediant (a+c)/(b+d) of lo = a/b and hi = c/d, with hi = None meaning the
/// point at infinity = 1/0; always strictly between the two.
fn mediant(lo: &Rational, hi: Option<&Rational>) -> Rational {
    match hi {
        Some(hi) => Rational::new(lo.numer() + hi.numer(), lo.denom() + hi.denom()),
        None => Rational::new(lo.numer() + 1, lo.denom().clone()),
    }
}

fn segment_certificate(alg: &GradedLieAlgebra, k: usize, segment: &Segment) -> Certificate {
    match segment {
        Segment::Point(b) => {
            certify_core(alg, k, &ExtendedExponent::Finite(b.clone()))
        }
        Segment::Interval { lo, hi, .. } => {
            let s1 = mediant(lo, hi.as_finite());
            let s2 = mediant(lo, Some(&s1));
            let c1 = certify_core(alg, k, &ExtendedExponent::Finite(s1.clone()));
            let c2 = certify_core(alg, k, &ExtendedExponent::Finite(s2.clone()));
            assert!(
                c1 == c2,
                "internal consistency failure: certificates disagree inside {segment} \
                 of degree {k} (samples {s1} and {s2}); this is a bug"
            );
            c1
        }
    }
}

fn segment_shapes(breakpoints: &[Rational]) -> Vec<Segment> {
    let one = Rational::one();
    let mut shapes = Vec::new();
    if breakpoints.is_empty() {
        shapes.push(Segment::Interval {
            lo: one,
            hi: ExtendedExponent::Infinity,
            lo_closed: true,
            hi_closed: true,
        });
        return shapes;
    }
    if breakpoints[0] > one {
        shapes.push(Segment::Interval {
            lo: one,
            hi: ExtendedExponent::Finite(breakpoints[0].clone()),
            lo_closed: true,
            hi_closed: false,
        });
    }
    for (i, b) in breakpoints.iter().enumerate() {
        shapes.push(Segment::Point(b.clone()));
        let hi = breakpoints
            .get(i + 1)
            .map(|next| ExtendedExponent::Finite(next.clone()))
            .unwrap_or(ExtendedExponent::Infinity);
        shapes.push(Segment::Interval {
            lo: b.clone(),
            hi,
            lo_closed: false,
            hi_closed: i + 1 == breakpoints.len(),
        });
    }
    shapes
}

/// Partitions p ∈ [1, ∞] at the critical exponents of degrees k−1 and k−2 and
/// certifies each piece, sampling two mediants per open segment.
pub fn torsion_table(alg: &GradedLieAlgebra, k: usize) -> Result<TorsionTable, CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 1, alg.dim())?;
    let mut breakpoints = finite_criticals(alg, k - 1);
    if k >= 2 {
        breakpoints.extend(finite_criticals(alg, k - 2));
    }
    breakpoints.sort();
    breakpoints.dedup();
    let shapes = segment_shapes(&breakpoints);
    let segments = exec::map_collect(shapes, |segment| {
        let certificate = segment_certificate(alg, k, &segment);
        (segment, certificate)
    });
    Ok(TorsionTable { degree: k, breakpoints, segments })
}

/// Reproduces the vanishing window (1, h/suiv σ(k−1)) with exception point
/// h/max σ(k−1): every open sub-segment must certify as Vanishes*.
pub fn vanishing_window(alg: &GradedLieAlgebra, k: usize) -> Result<WindowReport, CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 1, alg.dim())?;
    let h = alg.trace_h();
    if Rational::from_integer((2 * k as i64).into()) > h {
        return Err(CertifierError::WindowDegreeTooHigh { degree: k, h });
    }
    let spectrum = sigma(alg, k - 1);
    if spectrum.len() < 2 {
        return Err(CertifierError::WindowSpectrumTooSmall {
            degree: k - 1,
            count: spectrum.len(),
        });
    }
    let max = spectrum[spectrum.len() - 1].clone();
    let suiv = spectrum[spectrum.len() - 2].clone();
    if !suiv.is_positive() {
        return Err(CertifierError::WindowSuivNotPositive { suiv });
    }
    let window_sup = &h / &suiv;
    let exception = &h / &max;
    let one = Rational::one();
    if window_sup <= one {
        return Err(CertifierError::WindowEmpty { sup: window_sup });
    }
    let mut breakpoints = finite_criticals(alg, k - 1);
    if k >= 2 {
        breakpoints.extend(finite_criticals(alg, k - 2));
    }
    breakpoints.sort();
    breakpoints.dedup();
    breakpoints.retain(|b| *b > one && *b < window_sup);

    let mut shapes = Vec::new();
    let mut cursor = one;
    for b in &breakpoints {
        shapes.push(Segment::Interval {
            lo: cursor.clone(),
            hi: ExtendedExponent::Finite(b.clone()),
            lo_closed: false,
            hi_closed: false,
        });
        shapes.push(Segment::Point(b.clone()));
        cursor = b.clone();
    }
    shapes.push(Segment::Interval {
        lo: cursor,
        hi: ExtendedExponent::Finite(window_sup.clone()),
        lo_closed: false,
        hi_closed: false,
    });

    let segments = exec::map_collect(shapes, |segment| {
        let certificate = segment_certificate(alg, k, &segment);
        (segment, certificate)
    });
    for (segment, certificate) in &segments {
        if matches!(segment, Segment::Interval { .. }) && !certificate.is_vanishing() {
            return Err(CertifierError::WindowAssertionFailed {
                segment: segment.clone(),
                certificate: Box::new(certificate.clone()),
            });
        }
    }
    Ok(WindowReport { degree: k, window_sup, exception, segments })
}

/// Classifies a two-step {1,2}-graded algebra by whether wedge-with-δ(τ) is
/// injective on 𝔫₁*, where τ is the top monomial of Λ^{dim 𝔫₂}𝔫₂*.
pub fn exactness_defect(alg: &GradedLieAlgebra) -> Result<ExactnessReport, CertifierError> {
    ensure_valid(alg)?;
    let one = Rational::one();
    let two = &one + &one;
    let mut n1 = Vec::new();
    let mut n2 = Vec::new();
    for i in 1..=alg.dim() {
        let w = alg.weight(i);
        if *w == one {
            n1.push(i);
        } else if *w == two {
            n2.push(i);
        } else {
            return Err(CertifierError::NotTwoStep {
                detail: format!("index {i} has weight {w}; weights must be exactly {{1, 2}}"),
            });
        }
    }
    if n1.is_empty() || n2.is_empty() {
        return Err(CertifierError::NotTwoStep {
            detail: "both the weight-1 and the weight-2 layer must be nontrivial".to_string(),
        });
    }
    let tau = ExteriorIndex::from_indices(n2.iter().copied());
    let delta_tau = delta_form(alg, &ExteriorForm::monomial(tau));
    let target_degree = delta_tau.degree() + 1;
    let row_pos: BTreeMap<ExteriorIndex, usize> = basis(alg.dim(), target_degree)
        .into_iter()
        .enumerate()
        .map(|(pos, s)| (s, pos))
        .collect();
    let mut reducer = RowReducer::new();
    for u in &n1 {
        let product = delta_tau.wedge(&ExteriorForm::monomial(ExteriorIndex::from_indices([*u])));
        let column: BTreeMap<usize, Rational> =
            product.terms().map(|(s, c)| (row_pos[&s], c.clone())).collect();
        reducer.feed(column);
    }
    let wedge_rank = reducer.rank();
    let classification = if wedge_rank == n1.len() {
        ExactnessClassification::PurelyAlgebraicCriterion
    } else {
        ExactnessClassification::RequiresDifferentialCondition
    };
    Ok(ExactnessReport {
        classification,
        n1_dim: n1.len(),
        n2_dim: n2.len(),
        wedge_rank,
        tau,
        delta_tau,
    })
}

/// Compares the curvature-only vanishing bound 1 + ((n−k)/(k−1))·√(−δ) on the
/// homogeneous space of dimension n = dim 𝔫 + 1 with the bound certified by
/// the torsion table: the supremum of the contiguous certified contraction
/// region starting at p = 1, skipping isolated critical points.
pub fn compare_with_curvature_bound(
    alg: &GradedLieAlgebra,
    k: usize,
    delta: &Rational,
) -> Result<ComparisonRecord, CertifierError> {
    ensure_valid(alg)?;
    ensure_degree(k, 2, alg.dim())?;
    if *delta < -Rational::one() || !delta.is_negative() {
        return Err(SpectraError::CurvatureOutOfRange { delta: delta.clone() }.into());
    }
    let n_space = alg.dim() + 1;
    let coef = Rational::new(((n_space - k) as i64).into(), ((k - 1) as i64).into());
    let curvature_bound = one_plus_sqrt_multiple(&coef, &-delta, false);
    let table = torsion_table(alg, k)?;
    let mut certified_bound = ExtendedExponent::Finite(Rational::one());
    for (segment, certificate) in &table.segments {
        match segment {
            Segment::Point(_) => continue,
            Segment::Interval { hi, .. } => {
                let extends = matches!(
                    certificate,
                    Certificate::VanishesContracting { .. }
                        | Certificate::VanishesClosedRange { .. }
                );
                if extends {
                    certified_bound = hi.clone();
                } else {
                    break;
                }
            }
        }
    }
    let difference = match (&certified_bound, &curvature_bound) {
        (ExtendedExponent::Infinity, _) => PinchBound::Unbounded,
        (ExtendedExponent::Finite(c), PinchBound::Exact(v)) => PinchBound::Exact(c - v),
        (ExtendedExponent::Finite(c), PinchBound::RoundedDown(v)) => PinchBound::RoundedUp(c - v),
        (ExtendedExponent::Finite(c), PinchBound::RoundedUp(v)) => PinchBound::RoundedDown(c - v),
        (ExtendedExponent::Finite(_), PinchBound::Unbounded) => {
            unreachable!("curvature bound is always finite for k ≥ 2")
        }
    };
    Ok(ComparisonRecord {
        degree: k,
        delta: delta.clone(),
        curvature_bound,
        certified_bound,
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational;
    use crate::catalog::{
        build_abelian, build_complex_heisenberg, build_quaternionic_heisenberg, build_sol,
    };

    fn fin(n: i64, d: i64) -> ExtendedExponent {
        ExtendedExponent::Finite(rational(n, d))
    }

    fn heis3() -> GradedLieAlgebra {
        build_complex_heisenberg(2)
    }

    #[test]
    fn flow_route_on_heisenberg_degree_two() {
        let alg = heis3();
        let cert = check_flow_vanishing(&alg, 2, &fin(3, 2)).unwrap();
        assert!(matches!(cert, Some(Certificate::VanishesContracting { .. })));
        assert_eq!(check_flow_vanishing(&alg, 2, &fin(3, 1)).unwrap(), None);
        let dilated = check_flow_vanishing(&alg, 2, &fin(5, 1)).unwrap();
        assert!(matches!(dilated, Some(Certificate::VanishesDilating { .. })));
    }

    #[test]
    fn flow_route_blocked_by_critical_lower_degree() {
        let sol = build_sol();
        for p in [fin(1, 1), fin(7, 3), ExtendedExponent::Infinity] {
            assert_eq!(check_flow_vanishing(&sol, 2, &p).unwrap(), None);
        }
    }

    #[test]
    fn closed_range_on_heisenberg_mixed_segment() {
        let alg = heis3();
        let (report, cert) = check_closed_range(&alg, 2, &fin(3, 1)).unwrap();
        assert_eq!(report.plus_dim, 1);
        assert_eq!(report.w_dim, 2);
        assert_eq!(report.image_rank, 1);
        assert!(report.delta_injective);
        assert!(report.transversal);
        assert!(matches!(cert, Some(Certificate::VanishesClosedRange { .. })));
    }

    #[test]
    fn closed_range_rejects_critical_exponent() {
        let alg = heis3();
        let err = check_closed_range(&alg, 2, &fin(2, 1)).unwrap_err();
        assert!(matches!(
            err,
            CertifierError::Spectra(SpectraError::CriticalExponent { degree: 1, .. })
        ));
    }

    #[test]
    fn closed_range_weight_separated_segment_of_quaternionic() {
        let alg = build_quaternionic_heisenberg(2);
        let (report, cert) = check_closed_range(&alg, 4, &fin(9, 5)).unwrap();
        assert_eq!(report.plus_dim, 1);
        assert!(report.delta_injective);
        assert!(report.transversal);
        assert!(cert.is_some());
    }

    #[test]
    fn closed_range_transversality_fails_past_the_window() {
        let alg = build_quaternionic_heisenberg(2);
        // p ∈ (2, 5/2): the image of the pure-centre monomial lands inside W.
        let (report, cert) = check_closed_range(&alg, 4, &fin(9, 4)).unwrap();
        assert!(report.delta_injective);
        assert!(!report.transversal);
        assert!(!report.intersection.is_empty());
        assert_eq!(cert, None);
    }

    #[test]
    fn certify_walks_all_routes_on_heisenberg() {
        let alg = heis3();
        assert_eq!(
            certify(&alg, 2, &fin(2, 1)).unwrap(),
            Certificate::InconclusiveCritical { degree: 1, weight: rational(2, 1) }
        );
        assert!(matches!(
            certify(&alg, 2, &fin(3, 1)).unwrap(),
            Certificate::VanishesClosedRange { .. }
        ));
        assert!(matches!(
            certify(&alg, 2, &fin(5, 1)).unwrap(),
            Certificate::VanishesDilating { .. }
        ));
        assert!(matches!(
            certify(&alg, 2, &fin(3, 2)).unwrap(),
            Certificate::VanishesContracting { .. }
        ));
    }

    #[test]
    fn heisenberg_degree_two_table_has_five_segments() {
        let alg = heis3();
        let table = torsion_table(&alg, 2).unwrap();
        assert_eq!(table.breakpoints, vec![rational(2, 1), rational(4, 1)]);
        assert_eq!(table.segments.len(), 5);
        let labels: Vec<&str> = table.segments.iter().map(|(_, c)| c.label()).collect();
        assert_eq!(
            labels,
            vec![
                "VanishesContracting",
                "InconclusiveCritical",
                "VanishesClosedRange",
                "InconclusiveCritical",
                "VanishesDilating"
            ]
        );
        let rendered: Vec<String> =
            table.segments.iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(rendered, vec!["[1, 2)", "{2}", "(2, 4)", "{4}", "(4, inf]"]);
    }

    #[test]
    fn abelian_table_matches_single_breakpoint() {
        let alg = build_abelian(vec![rational(1, 1); 4]).unwrap();
        let table = torsion_table(&alg, 2).unwrap();
        assert_eq!(table.breakpoints, vec![rational(4, 1)]);
        let labels: Vec<&str> = table.segments.iter().map(|(_, c)| c.label()).collect();
        assert_eq!(
            labels,
            vec!["VanishesContracting", "InconclusiveCritical", "VanishesDilating"]
        );
    }

    #[test]
    fn sol_tables_degenerate_to_one_critical_segment() {
        let sol = build_sol();
        let table = torsion_table(&sol, 1).unwrap();
        assert_eq!(table.segments.len(), 1);
        let (segment, certificate) = &table.segments[0];
        assert_eq!(segment.to_string(), "[1, inf]");
        assert_eq!(
            certificate,
            &Certificate::InconclusiveCritical { degree: 0, weight: rational(0, 1) }
        );
    }

    #[test]
    fn window_for_heisenberg_degree_two() {
        let alg = heis3();
        let report = vanishing_window(&alg, 2).unwrap();
        assert_eq!(report.window_sup, rational(4, 1));
        assert_eq!(report.exception, rational(2, 1));
        let rendered: Vec<String> =
            report.segments.iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(rendered, vec!["(1, 2)", "{2}", "(2, 4)"]);
    }

    #[test]
    fn window_for_quaternionic_degree_four() {
        let alg = build_quaternionic_heisenberg(2);
        let report = vanishing_window(&alg, 4).unwrap();
        assert_eq!(report.window_sup, rational(2, 1));
        assert_eq!(report.exception, rational(5, 3));
    }

    #[test]
    fn window_rejects_singleton_spectrum() {
        let alg = build_abelian(vec![rational(1, 1); 4]).unwrap();
        assert!(matches!(
            vanishing_window(&alg, 2),
            Err(CertifierError::WindowSpectrumTooSmall { degree: 1, count: 1 })
        ));
    }

    #[test]
    fn exactness_defect_splits_the_complex_family()
    {
        let ch2 = exactness_defect(&heis3()).unwrap();
        assert_eq!(
            ch2.classification,
            ExactnessClassification::RequiresDifferentialCondition
        );
        assert_eq!(ch2.n1_dim, 2);
        assert_eq!(ch2.wedge_rank, 0);

        let ch3 = exactness_defect(&build_complex_heisenberg(3)).unwrap();
        assert_eq!(ch3.classification, ExactnessClassification::PurelyAlgebraicCriterion);

        let hh2 = exactness_defect(&build_quaternionic_heisenberg(2)).unwrap();
        assert_eq!(hh2.classification, ExactnessClassification::PurelyAlgebraicCriterion);

        let sol = build_sol();
        assert!(matches!(
            exactness_defect(&sol),
            Err(CertifierError::NotTwoStep { .. })
        ));
    }

    #[test]
    fn curvature_comparison_examples() {
        let ch2 = compare_with_curvature_bound(&heis3(), 2, &rational(-1, 4)).unwrap();
        assert_eq!(ch2.curvature_bound, PinchBound::Exact(rational(2, 1)));
        assert_eq!(ch2.certified_bound, fin(4, 1));
        assert_eq!(ch2.difference, PinchBound::Exact(rational(2, 1)));

        let flat = build_abelian(vec![rational(1, 1); 4]).unwrap();
        let real = compare_with_curvature_bound(&flat, 2, &rational(-1, 1)).unwrap();
        assert_eq!(real.curvature_bound, PinchBound::Exact(rational(4, 1)));
        assert_eq!(real.certified_bound, fin(4, 1));
        assert_eq!(real.difference, PinchBound::Exact(rational(0, 1)));

        let hh2 = compare_with_curvature_bound(
            &build_quaternionic_heisenberg(2),
            4,
            &rational(-1, 4),
        )
        .unwrap();
        assert_eq!(hh2.curvature_bound, PinchBound::Exact(rational(5, 3)));
        assert_eq!(hh2.certified_bound, fin(2, 1));
        assert_eq!(hh2.difference, PinchBound::Exact(rational(1, 3)));
    }

    #[test]
    fn mediant_stays_strictly_inside() {
        let lo = rational(2, 1);
        let hi = rational(4, 1);
        let m = mediant(&lo, Some(&hi));
        assert!(lo < m && m < hi);
        let beyond = mediant(&lo, None);
        assert!(beyond > lo);
    }
}
