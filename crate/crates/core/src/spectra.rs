//! Critical exponents and weight splittings of the Anosov-type flow.
//!
//! For h = tr α and an exponent p ∈ [1, ∞], the threshold is θ(p) = h/p
//! (θ(∞) = 0). Degree k is critical at p when θ(p) lies in σ(k), the weight
//! spectrum of Λ^k𝔫*. Away from critical exponents the flow splits
//! Λ^k = Λ^k_{+(p)} ⊕ Λ^k_{−(p)} into the monomials of weight above and below
//! the threshold, with spectral gap min_{w ∈ σ(k)} |h − p·w|.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra_core::{GradedLieAlgebra, Rational};
use crate::exterior::{basis, sigma, subset_weight, ExteriorIndex};

/// An exponent p ∈ [1, ∞]; the point at infinity is a first-class value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedExponent {
    Finite(Rational),
    Infinity,
}

impl ExtendedExponent {
    /// Wraps a finite exponent.
    pub fn finite(p: Rational) -> Self {
        ExtendedExponent::Finite(p)
    }

    /// The point at infinity, printed as `inf`.
    pub fn infinity() -> Self {
        ExtendedExponent::Infinity
    }

    /// True for the point at infinity.
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedExponent::Infinity)
    }

    /// The finite value, when there is one.
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedExponent::Finite(p) => Some(p),
            ExtendedExponent::Infinity => None,
        }
    }

    /// True for values in the admissible range [1, ∞].
    pub fn is_admissible(&self) -> bool {
        match self {
            ExtendedExponent::Finite(p) => *p >= Rational::one(),
            ExtendedExponent::Infinity => true,
        }
    }
}

impl PartialOrd for ExtendedExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedExponent::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedExponent::Finite(p) => write!(f, "{p}"),
            ExtendedExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Parse error for [`ExtendedExponent`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse exponent '{input}'; expected a rational like 5/2 or 'inf'")]
pub struct ParseExponentError {
    pub input: String,
}

impl FromStr for ExtendedExponent {
    type Err = ParseExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed == "inf" {
            return Ok(ExtendedExponent::Infinity);
        }
        Rational::from_str(trimmed)
            .map(ExtendedExponent::Finite)
            .map_err(|_| ParseExponentError { input: s.to_string() })
    }
}

/// Errors from spectral queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("exponent {exponent} out of range; need 1 ≤ p ≤ inf")]
    ExponentOutOfRange { exponent: ExtendedExponent },
    #[error("p = {exponent} is critical in degree {degree}: threshold meets weight {weight}")]
    CriticalExponent {
        degree: usize,
        weight: Rational,
        exponent: ExtendedExponent,
    },
    #[error("curvature upper bound δ = {delta} out of range; need -1 ≤ δ < 0")]
    CurvatureOutOfRange { delta: Rational },
}

/// Threshold θ(p) = h/p, with θ(∞) = 0.
pub fn threshold(h: &Rational, p: &ExtendedExponent) -> Rational {
    match p {
        ExtendedExponent::Finite(q) => h / q,
        ExtendedExponent::Infinity => Rational::zero(),
    }
}

/// The critical exponents of one degree: either every p ∈ [1, ∞] (h = 0 with
/// 0 ∈ σ(k)) or a finite sorted list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriticalExponents {
    AllCritical,
    Finite(Vec<Rational>),
}

fn check_degree(alg: &GradedLieAlgebra, k: usize) -> Result<(), SpectraError> {
    if k > alg.dim() {
        return Err(SpectraError::DegreeOutOfRange { degree: k, dim: alg.dim() });
    }
    Ok(())
}

fn check_exponent(p: &ExtendedExponent) -> Result<(), SpectraError> {
    if !p.is_admissible() {
        return Err(SpectraError::ExponentOutOfRange { exponent: p.clone() });
    }
    Ok(())
}

/// All p ∈ [1, ∞) with θ(p) ∈ σ(k), sorted ascending; the point at infinity
/// is critical exactly when 0 ∈ σ(k), which for h = 0 collapses to the
/// `AllCritical` sentinel.
pub fn critical_exponents(
    alg: &GradedLieAlgebra,
    k: usize,
) -> Result<CriticalExponents, SpectraError> {
    check_degree(alg, k)?;
    let h = alg.trace_h();
    let weights = sigma(alg, k);
    if h.is_zero() {
        if weights.contains(&Rational::zero()) {
            return Ok(CriticalExponents::AllCritical);
        }
        return Ok(CriticalExponents::Finite(Vec::new()));
    }
    let mut out: Vec<Rational> = weights
        .into_iter()
        .filter(|w| w.is_positive() && *w <= h)
        .map(|w| &h / &w)
        .collect();
    out.sort();
    Ok(CriticalExponents::Finite(out))
}

/// The weight of σ(k) that θ(p) collides with, when p is critical in degree k.
/// Assumes p admissible and k ≤ dim.
pub fn colliding_weight(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Option<Rational> {
    let theta = threshold(&alg.trace_h(), p);
    sigma(alg, k).into_iter().find(|w| *w == theta)
}

/// The splitting of Λ^k𝔫* at a non-critical exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnosovSplit {
    pub degree: usize,
    pub exponent: ExtendedExponent,
    pub threshold: Rational,
    /// Monomials of weight strictly above the threshold.
    pub plus: Vec<ExteriorIndex>,
    /// Monomials of weight strictly below the threshold.
    pub minus: Vec<ExteriorIndex>,
    /// min_{w ∈ σ(k)} |h − p·w| for finite p, min |w| at infinity.
    pub spectral_gap: Rational,
}

/// Splits Λ^k𝔫* by weight against θ(p); errors when p is critical in degree k.
pub fn anosov_split(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<AnosovSplit, SpectraError> {
    check_degree(alg, k)?;
    check_exponent(p)?;
    if let Some(weight) = colliding_weight(alg, k, p) {
        return Err(SpectraError::CriticalExponent {
            degree: k,
            weight,
            exponent: p.clone(),
        });
    }
    let h = alg.trace_h();
    let theta = threshold(&h, p);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for s in basis(alg.dim(), k) {
        if subset_weight(alg, s) > theta {
            plus.push(s);
        } else {
            minus.push(s);
        }
    }
    let spectral_gap = sigma(alg, k)
        .into_iter()
        .map(|w| match p {
            ExtendedExponent::Finite(q) => (&h - q * &w).abs(),
            ExtendedExponent::Infinity => w.abs(),
        })
        .min()
        .expect("σ(k) nonempty for k ≤ dim");
    Ok(AnosovSplit {
        degree: k,
        exponent: p.clone(),
        threshold: theta,
        plus,
        minus,
        spectral_gap,
    })
}

/// Qualitative behaviour of the flow on Λ^k𝔫* at exponent p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowStatus {
    /// Every weight lies below the threshold (Λ^k_{+(p)} = 0).
    Contracting,
    /// Every weight lies above the threshold (Λ^k_{−(p)} = 0).
    Dilating,
    /// Both sides of the splitting are nonzero.
    Mixed,
    /// θ(p) collides with this weight; no splitting exists.
    Critical(Rational),
}

impl fmt::Display for FlowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowStatus::Contracting => write!(f, "contracting"),
            FlowStatus::Dilating => write!(f, "dilating"),
            FlowStatus::Mixed => write!(f, "mixed"),
            FlowStatus::Critical(w) => write!(f, "critical (weight {w})"),
        }
    }
}

/// Classifies the flow on Λ^k𝔫* at p.
pub fn flow_status(
    alg: &GradedLieAlgebra,
    k: usize,
    p: &ExtendedExponent,
) -> Result<FlowStatus, SpectraError> {
    check_degree(alg, k)?;
    check_exponent(p)?;
    if let Some(weight) = colliding_weight(alg, k, p) {
        return Ok(FlowStatus::Critical(weight));
    }
    let split = anosov_split(alg, k, p)?;
    Ok(if split.plus.is_empty() {
        FlowStatus::Contracting
    } else if split.minus.is_empty() {
        FlowStatus::Dilating
    } else {
        FlowStatus::Mixed
    })
}

/// A pinching-interval endpoint: exact rational, or a 12-digit decimal
/// rounded toward the stated direction, or no finite bound at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PinchBound {
    Exact(Rational),
    RoundedDown(Rational),
    RoundedUp(Rational),
    Unbounded,
}

const DECIMAL_DIGITS: u32 = 12;

fn decimal_string(value: &Rational) -> String {
    let scale = BigInt::from(10u32).pow(DECIMAL_DIGITS);
    let scaled = value * Rational::from_integer(scale.clone());
    debug_assert!(scaled.is_integer());
    let t = scaled.to_integer();
    let sign = if t.is_negative() { "-" } else { "" };
    let magnitude = t.abs();
    let int_part = &magnitude / &scale;
    let frac_part = &magnitude % &scale;
    let frac = format!("{:012}", frac_part);
    let trimmed = frac.trim_end_matches('0');
    if trimmed.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{trimmed}")
    }
}

impl PinchBound {
    /// The bound's numeric value, when finite.
    pub fn value(&self) -> Option<&Rational> {
        match self {
            PinchBound::Exact(v) | PinchBound::RoundedDown(v) | PinchBound::RoundedUp(v) => {
                Some(v)
            }
            PinchBound::Unbounded => None,
        }
    }

    /// True when the value is exact rather than rounded.
    pub fn is_exact(&self) -> bool {
        matches!(self, PinchBound::Exact(_))
    }
}

impl fmt::Display for PinchBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PinchBound::Exact(v) => write!(f, "{v}"),
            PinchBound::RoundedDown(v) | PinchBound::RoundedUp(v) => {
                write!(f, "{}", decimal_string(v))
            }
            PinchBound::Unbounded => write!(f, "inf"),
        }
    }
}

/// 1 + coef·√radicand, exact when the radicand is a rational square and
/// otherwise rounded to 12 decimals in the requested direction.
pub(crate) fn one_plus_sqrt_multiple(
    coef: &Rational,
    radicand: &Rational,
    round_up: bool,
) -> PinchBound {
    debug_assert!(!radicand.is_negative());
    if coef.is_zero() {
        return PinchBound::Exact(Rational::one());
    }
    debug_assert!(coef.is_positive());
    let n = radicand.numer().clone();
    let d = radicand.denom().clone();
    let sqrt_n = n.sqrt();
    let sqrt_d = d.sqrt();
    if &sqrt_n * &sqrt_n == n && &sqrt_d * &sqrt_d == d {
        return PinchBound::Exact(Rational::one() + coef * Rational::new(sqrt_n, sqrt_d));
    }
    // coef·√(n/d) = a·√(n·d)/(b·d); scale by 10^12 and isqrt the square of
    // the numerator, using ⌊⌊√M⌋/q⌋ = ⌊√M/q⌋.
    let a = coef.numer().clone();
    let b = coef.denom().clone();
    let scale = BigInt::from(10u32).pow(DECIMAL_DIGITS);
    let radical = &a * &a * &scale * &scale * &n * &d;
    let root = radical.sqrt();
    let divisor = &b * &d;
    let floor = &root / &divisor;
    let t = if round_up { floor + 1 } else { floor };
    PinchBound::RoundedDown(Rational::one() + Rational::new(t, scale))
        .reorient(round_up)
}

impl PinchBound {
    fn reorient(self, round_up: bool) -> PinchBound {
        match self {
            PinchBound::RoundedDown(v) if round_up => PinchBound::RoundedUp(v),
            other => other,
        }
    }
}

/// Sub- and super-critical exponent bounds for degree-k Busemann cocycles on
/// an n-dimensional pinched space with sectional curvature in [−1, δ]:
/// contraction below 1 + ((n−k−1)/k)·√(−δ), dilation above
/// 1 + (n−k−1)/(k·√(−δ)). Degree 0 has no finite bound on either side.
pub fn busemann_bounds(
    n: usize,
    k: usize,
    delta: &Rational,
) -> Result<(PinchBound, PinchBound), SpectraError> {
    if *delta < Rational::from_integer((-1).into()) || !delta.is_negative() {
        return Err(SpectraError::CurvatureOutOfRange { delta: delta.clone() });
    }
    if n < 2 || k > n - 1 {
        return Err(SpectraError::DegreeOutOfRange { degree: k, dim: n });
    }
    if k == 0 {
        return Ok((PinchBound::Unbounded, PinchBound::Unbounded));
    }
    let coef = Rational::new((n - k - 1).into(), k.into());
    let minus_delta = -delta;
    let contract_sup = one_plus_sqrt_multiple(&coef, &minus_delta, false);
    let dilate_inf = one_plus_sqrt_multiple(&coef, &minus_delta.recip(), true);
    Ok((contract_sup, dilate_inf))
}
