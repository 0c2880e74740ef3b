//! Graded nilpotent Lie algebras with a diagonal derivation.
//!
//! An algebra is stored as a weight vector (w_1, …, w_n) and the structure
//! constants c^k_{ij} of [e_i, e_j] = Σ_k c^k_{ij} e_k for i < j. The diagonal
//! derivation α e_i = w_i e_i is a derivation exactly when every nonzero
//! bracket satisfies w_i + w_j = w_k; that check, together with the Jacobi
//! identity, lives in [`GradedLieAlgebra::validate`] rather than the
//! constructor so that near-miss inputs can still be inspected.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{Signed, Zero};
use thiserror::Error;

/// Exact scalar used everywhere: arbitrary-precision rational.
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Largest supported dimension; basis subsets are packed into `u16` bitmasks.
pub const MAX_DIM: usize = 16;

/// Construction-time errors. Structural axioms (Jacobi, grading) are *not*
/// checked here; see [`GradedLieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension {0} out of range (need 1 ≤ n ≤ {MAX_DIM})")]
    DimensionOutOfRange(usize),
    #[error("bracket ({i},{j}) → {k} references indices outside 1..={dim}")]
    BracketIndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("bracket ({i},{j}) must have i < j; supply each pair once, ordered")]
    BracketNotOrdered { i: usize, j: usize },
    #[error("duplicate bracket entry for ({i},{j}) → {k}")]
    DuplicateBracket { i: usize, j: usize, k: usize },
    #[error("trace of the derivation is {h} < 0; negate all weights to flip the sign")]
    NegativeTrace { h: String },
}

/// One failing Jacobi triple, with the nonzero residual
/// [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] expanded in the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<(usize, Rational)>,
}

/// One bracket whose output weight disagrees with the sum of its input weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub input_weight: Rational,
    pub output_weight: Rational,
}

/// Outcome of [`GradedLieAlgebra::validate`]: empty means the data is a graded
/// Lie algebra and α is a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub jacobi_violations: Vec<JacobiViolation>,
    pub grading_violations: Vec<GradingViolation>,
}

impl ValidationReport {
    /// True when no axiom fails.
    pub fn is_valid(&self) -> bool {
        self.jacobi_violations.is_empty() && self.grading_violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.grading_violations {
            writeln!(
                f,
                "grading: [e{}, e{}] hits e{} of weight {} but w{} + w{} = {}",
                v.i, v.j, v.k, v.output_weight, v.i, v.j, v.input_weight
            )?;
        }
        for v in &self.jacobi_violations {
            let terms: Vec<String> = v
                .residual
                .iter()
                .map(|(idx, c)| format!("{c}·e{idx}"))
                .collect();
            writeln!(
                f,
                "jacobi: triple ({}, {}, {}) leaves residual {}",
                v.triple.0,
                v.triple.1,
                v.triple.2,
                terms.join(" + ")
            )?;
        }
        Ok(())
    }
}

/// Graded nilpotent Lie algebra 𝔫 together with the diagonal derivation
/// weights. Indices are 1-based throughout, matching the basis labels
/// e_1, …, e_n used in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    name: String,
    weights: Vec<Rational>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl GradedLieAlgebra {
    /// Builds an algebra from weights and bracket entries (i, j, k, c^k_{ij}).
    ///
    /// Rejects out-of-range data and h = tr α < 0, but does not verify Jacobi
    /// or the grading; call [`Self::validate`] for that.
    pub fn new(
        name: impl Into<String>,
        weights: Vec<Rational>,
        bracket_entries: Vec<(usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let dim = weights.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(AlgebraError::DimensionOutOfRange(dim));
        }
        let h: Rational = weights.iter().sum();
        if h.is_negative() {
            return Err(AlgebraError::NegativeTrace { h: h.to_string() });
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, k, c) in bracket_entries {
            if i >= j {
                return Err(AlgebraError::BracketNotOrdered { i, j });
            }
            if i < 1 || j > dim || k < 1 || k > dim {
                return Err(AlgebraError::BracketIndexOutOfRange { i, j, k, dim });
            }
            if !seen.insert((i, j, k)) {
                return Err(AlgebraError::DuplicateBracket { i, j, k });
            }
            if !c.is_zero() {
                brackets.entry((i, j)).or_default().push((k, c));
            }
        }
        Ok(Self { name: name.into(), weights, brackets })
    }

    /// Algebra name, used verbatim in file headers and report titles.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Returns a copy with a different name; catalog entries use this to match
    /// command-line aliases.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Dimension n of 𝔫.
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Weight w_i of the 1-based basis index i.
    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i - 1]
    }

    /// All weights in basis order.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Trace h = Σ w_i of the derivation.
    pub fn trace_h(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Nonzero bracket entries (i, j, k, c^k_{ij}) with i < j, in index order.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), terms)| terms.iter().map(move |(k, c)| (i, j, *k, c)))
    }

    /// Expansion of [e_a, e_b] for any index order (empty when a = b).
    pub fn bracket(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        if a < b {
            self.brackets.get(&(a, b)).cloned().unwrap_or_default()
        } else if a > b {
            self.brackets
                .get(&(b, a))
                .map(|terms| terms.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Checks the Jacobi identity and the grading condition w_i + w_j = w_k on
    /// every nonzero bracket, reporting each failure.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (i, j, k, c) in self.bracket_entries() {
            if c.is_zero() {
                continue;
            }
            let input = self.weight(i) + self.weight(j);
            if &input != self.weight(k) {
                report.grading_violations.push(GradingViolation {
                    i,
                    j,
                    k,
                    input_weight: input,
                    output_weight: self.weight(k).clone(),
                });
            }
        }
        let n = self.dim();
        for i in 1..=n {
            for j in (i + 1)..=n {
                for l in (j + 1)..=n {
                    let mut residual: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                        for (k, c1) in self.bracket(a, b) {
                            for (m, c2) in self.bracket(k, c) {
                                let entry = residual.entry(m).or_insert_with(Rational::zero);
                                *entry += &c1 * &c2;
                            }
                        }
                    }
                    residual.retain(|_, v| !v.is_zero());
                    if !residual.is_empty() {
                        report.jacobi_violations.push(JacobiViolation {
                            triple: (i, j, l),
                            residual: residual.into_iter().collect(),
                        });
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis3() -> GradedLieAlgebra {
        GradedLieAlgebra::new(
            "heis3",
            vec![rational(1, 1), rational(1, 1), rational(2, 1)],
            vec![(1, 2, 3, rational(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn trace_sums_weights() {
        assert_eq!(heis3().trace_h(), rational(4, 1));
    }

    #[test]
    fn heisenberg_is_valid() {
        assert!(heis3().validate().is_valid());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let alg = heis3();
        assert_eq!(alg.bracket(1, 2), vec![(3, rational(1, 1))]);
        assert_eq!(alg.bracket(2, 1), vec![(3, rational(-1, 1))]);
        assert!(alg.bracket(2, 2).is_empty());
    }

    #[test]
    fn grading_violation_is_reported() {
        let alg = GradedLieAlgebra::new(
            "bad-grading",
            vec![rational(1, 1), rational(1, 1), rational(3, 1)],
            vec![(1, 2, 3, rational(1, 1))],
        )
        .unwrap();
        let report = alg.validate();
        assert_eq!(report.grading_violations.len(), 1);
        assert_eq!(report.grading_violations[0].input_weight, rational(2, 1));
    }

    #[test]
    fn jacobi_violation_is_reported_with_residual() {
        // Weights are consistent ((1,1,1,2,3) with products landing in weight
        // 2 and 3), but the triple (1,2,3) fails Jacobi with residual -e5.
        let alg = GradedLieAlgebra::new(
            "bad-jacobi",
            vec![
                rational(1, 1),
                rational(1, 1),
                rational(1, 1),
                rational(2, 1),
                rational(3, 1),
            ],
            vec![
                (1, 2, 4, rational(1, 1)),
                (2, 3, 4, rational(1, 1)),
                (3, 4, 5, rational(1, 1)),
            ],
        )
        .unwrap();
        let report = alg.validate();
        assert!(report.grading_violations.is_empty());
        assert_eq!(report.jacobi_violations.len(), 1);
        let violation = &report.jacobi_violations[0];
        assert_eq!(violation.triple, (1, 2, 3));
        assert_eq!(violation.residual, vec![(5, rational(-1, 1))]);
    }

    #[test]
    fn negative_trace_is_rejected() {
        let err = GradedLieAlgebra::new(
            "neg",
            vec![rational(-1, 1), rational(-2, 1)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::NegativeTrace { .. }));
        assert!(err.to_string().contains("negate all weights"));
    }

    #[test]
    fn zero_trace_is_accepted() {
        let alg = GradedLieAlgebra::new(
            "sol",
            vec![rational(1, 1), rational(-1, 1)],
            vec![],
        )
        .unwrap();
        assert_eq!(alg.trace_h(), rational(0, 1));
    }

    #[test]
    fn duplicate_and_unordered_brackets_are_rejected() {
        let dup = GradedLieAlgebra::new(
            "dup",
            vec![rational(1, 1), rational(1, 1), rational(2, 1)],
            vec![(1, 2, 3, rational(1, 1)), (1, 2, 3, rational(2, 1))],
        );
        assert!(matches!(dup, Err(AlgebraError::DuplicateBracket { .. })));
        let unordered = GradedLieAlgebra::new(
            "ord",
            vec![rational(1, 1), rational(1, 1), rational(2, 1)],
            vec![(2, 1, 3, rational(1, 1))],
        );
        assert!(matches!(unordered, Err(AlgebraError::BracketNotOrdered { .. })));
    }

    #[test]
    fn oversized_dimension_is_rejected() {
        let weights = vec![rational(1, 1); MAX_DIM + 1];
        assert!(matches!(
            GradedLieAlgebra::new("big", weights, vec![]),
            Err(AlgebraError::DimensionOutOfRange(_))
        ));
    }
}
