//! Exact-arithmetic weight splittings and torsion-vanishing certification for
//! Heintze-type homogeneous spaces R⋉_α N.
//!
//! The input is a graded nilpotent Lie algebra 𝔫 with a diagonal derivation α
//! (rational weights w_1..w_n). From that data the crate computes, entirely over
//! exact rationals:
//!
//! - the eigenvalue sets σ(k) of Λ^k α^⊤ and the critical exponents p with
//!   h/p ∈ σ(k), where h = tr α;
//! - the weight splittings Λ^k = Λ^k_{+(p)} ⊕ Λ^k_{−(p)} at non-critical p,
//!   with their spectral gaps;
//! - certificates that the L^p-cohomology torsion T^{k,p} vanishes on explicit
//!   p-intervals, via flow contraction/dilation or via δ-injectivity plus
//!   transversality of the algebraic differential, together with per-degree
//!   interval tables and curvature-bound comparisons.
//!
//! All certification logic is rational-only; the single operation allowed to
//! produce non-rational output is the curvature bound helper, which returns
//! directed-rounded decimals when √(−δ) is irrational.

pub mod algebra_core;
pub mod catalog;
pub mod certifier;
mod exec;
pub mod exterior;
pub mod spectra;

pub use algebra_core::{AlgebraError, GradedLieAlgebra, Rational, ValidationReport};
pub use certifier::{
    certify, check_closed_range, check_flow_vanishing, compare_with_curvature_bound,
    exactness_defect, torsion_table, vanishing_window, Certificate, CertifierError,
    ClosedRangeReport, ComparisonRecord, ExactnessClassification, ExactnessReport, Segment,
    SplitEvidence, TorsionTable, WindowReport,
};
pub use exterior::{ExteriorForm, ExteriorIndex, SparseRationalMatrix};
pub use spectra::{
    anosov_split, busemann_bounds, critical_exponents, flow_status, AnosovSplit,
    CriticalExponents, ExtendedExponent, FlowStatus, PinchBound, SpectraError,
};
