//! Exterior algebra Λ^•𝔫* over exact rationals.
//!
//! Basis monomials θ^{i_1}∧…∧θ^{i_k} (i_1 < … < i_k) are packed into `u16`
//! bitmasks, so everything here assumes dim 𝔫 ≤ 16. The algebraic
//! differential is the Chevalley–Eilenberg one, pinned on generators by
//! δθ^k = −Σ_{i<j} c^k_{ij} θ^i∧θ^j and extended as an antiderivation; with
//! that sign, δ∘δ = 0 is equivalent to the Jacobi identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra_core::{GradedLieAlgebra, Rational, ValidationReport};

/// Errors from exterior-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("algebra '{name}' fails validation:\n{report}")]
    InvalidAlgebra { name: String, report: Box<ValidationReport> },
    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// A basis monomial of Λ^k𝔫*, stored as a bitmask over the 1-based basis
/// indices (bit i−1 set ⟺ θ^i present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExteriorIndex(u16);

impl ExteriorIndex {
    /// The empty monomial, spanning Λ^0.
    pub const EMPTY: ExteriorIndex = ExteriorIndex(0);

    /// Builds a monomial from raw bits.
    pub fn from_bits(bits: u16) -> Self {
        ExteriorIndex(bits)
    }

    /// Builds a monomial from 1-based indices. Panics on duplicates or
    /// indices outside 1..=16; callers own the range check.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u16;
        for i in indices {
            assert!((1..=16).contains(&i), "basis index {i} out of 1..=16");
            let bit = 1u16 << (i - 1);
            assert!(bits & bit == 0, "duplicate basis index {i}");
            bits |= bit;
        }
        ExteriorIndex(bits)
    }

    /// The full monomial θ^1∧…∧θ^n.
    pub fn full(n: usize) -> Self {
        assert!(n <= 16);
        ExteriorIndex(if n == 16 { u16::MAX } else { (1u16 << n) - 1 })
    }

    /// Raw bitmask.
    pub fn bits(self) -> u16 {
        self.0
    }

    /// Number of factors k.
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Whether θ^i (1-based) is a factor.
    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 16 && self.0 & (1 << (i - 1)) != 0
    }

    /// Whether the two monomials share no factor.
    pub fn disjoint(self, other: ExteriorIndex) -> bool {
        self.0 & other.0 == 0
    }

    /// Union of factors; meaningful when disjoint.
    pub fn union(self, other: ExteriorIndex) -> ExteriorIndex {
        ExteriorIndex(self.0 | other.0)
    }

    /// Factors as ascending 1-based indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=16usize).filter(move |i| bits & (1 << (i - 1)) != 0)
    }
}

impl fmt::Display for ExteriorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Sign of the shuffle sorting θ^S∧θ^T into the canonical monomial θ^{S∪T};
/// assumes S and T are disjoint.
pub fn shuffle_sign(s: ExteriorIndex, t: ExteriorIndex) -> i8 {
    debug_assert!(s.disjoint(t));
    let mut inversions = 0u32;
    for pos in 0..16 {
        if t.bits() & (1 << pos) != 0 {
            inversions += (s.bits() >> (pos + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All degree-k basis monomials over n indices, in ascending bitmask order.
pub fn basis(n: usize, k: usize) -> Vec<ExteriorIndex> {
    assert!(n <= 16);
    if k > n {
        return Vec::new();
    }
    let top: u32 = 1u32 << n;
    (0..top)
        .filter(|bits| bits.count_ones() as usize == k)
        .map(|bits| ExteriorIndex(bits as u16))
        .collect()
}

/// A homogeneous element of Λ^k𝔫*, as a sparse rational combination of basis
/// monomials. The degree is carried even when the form is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorForm {
    degree: usize,
    terms: BTreeMap<ExteriorIndex, Rational>,
}

impl ExteriorForm {
    /// The zero form of the given degree.
    pub fn zero(degree: usize) -> Self {
        ExteriorForm { degree, terms: BTreeMap::new() }
    }

    /// A single monomial with coefficient 1.
    pub fn monomial(index: ExteriorIndex) -> Self {
        Self::term(index, Rational::one())
    }

    /// A single monomial with the given coefficient.
    pub fn term(index: ExteriorIndex, coeff: Rational) -> Self {
        let mut form = ExteriorForm::zero(index.degree());
        form.add_term(index, coeff);
        form
    }

    /// Collects (monomial, coefficient) pairs of one common degree.
    pub fn from_terms<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExteriorIndex, Rational)>,
    {
        let mut form = ExteriorForm::zero(degree);
        for (index, coeff) in terms {
            form.add_term(index, coeff);
        }
        form
    }

    /// Degree k.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// True when every coefficient cancelled.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (bitmask-ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (ExteriorIndex, &Rational)> {
        self.terms.iter().map(|(idx, c)| (*idx, c))
    }

    /// Coefficient of one monomial (zero when absent).
    pub fn coeff(&self, index: ExteriorIndex) -> Rational {
        self.terms.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds coeff·θ^index, cancelling zeros.
    pub fn add_term(&mut self, index: ExteriorIndex, coeff: Rational) {
        debug_assert_eq!(index.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// Adds another form of the same degree.
    pub fn add(&mut self, other: &ExteriorForm) {
        debug_assert_eq!(self.degree, other.degree);
        for (idx, c) in other.terms() {
            self.add_term(idx, c.clone());
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    /// Wedge product, with the shuffle sign on each pair of disjoint monomials.
    pub fn wedge(&self, other: &ExteriorForm) -> ExteriorForm {
        let mut out = ExteriorForm::zero(self.degree + other.degree);
        for (s, cs) in self.terms() {
            for (t, ct) in other.terms() {
                if s.disjoint(t) {
                    let sign = shuffle_sign(s, t);
                    let mut c = cs * ct;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(s.union(t), c);
                }
            }
        }
        out
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (idx, coeff)) in self.terms().enumerate() {
            let magnitude = coeff.abs();
            if pos == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude.is_one() {
                write!(f, "{idx}")?;
            } else {
                write!(f, "{magnitude}·{idx}")?;
            }
        }
        Ok(())
    }
}

/// target -= coeff · source, dropping entries that cancel to zero.
fn axpy_sub(target: &mut BTreeMap<usize, Rational>, coeff: &Rational, source: &BTreeMap<usize, Rational>) {
    for (row, value) in source {
        let entry = target.entry(*row).or_insert_with(Rational::zero);
        *entry -= coeff * value;
        if entry.is_zero() {
            target.remove(row);
        }
    }
}

/// Outcome of feeding one column into a [`RowReducer`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Feed {
    /// Column was independent and claimed this pivot row.
    Pivot(usize),
    /// Column is a combination of earlier ones; the map sends fed-column
    /// positions to coefficients of a vanishing combination (this column
    /// included with coefficient 1 before normalisation).
    Dependent(BTreeMap<usize, Rational>),
}

#[derive(Debug, Clone)]
struct Reduced {
    vector: BTreeMap<usize, Rational>,
    combo: BTreeMap<usize, Rational>,
}

/// Incremental exact Gauss–Jordan elimination on sparse rational columns.
///
/// Every stored column stays fully reduced: its support meets the pivot-row
/// set only in its own pivot, where the entry is 1. Feeding a dependent
/// column therefore yields the exact combination of previously fed columns
/// that reproduces it, which is how kernel vectors are extracted.
#[derive(Debug, Default)]
pub(crate) struct RowReducer {
    pivots: BTreeMap<usize, Reduced>,
    columns_fed: usize,
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent columns seen so far.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces one column against the current pivots and either records it as
    /// a new pivot or reports the dependency.
    pub fn feed(&mut self, column: BTreeMap<usize, Rational>) -> Feed {
        let position = self.columns_fed;
        self.columns_fed += 1;
        let mut vector = column;
        let mut combo = BTreeMap::from([(position, Rational::one())]);
        loop {
            let hit = vector.keys().find(|row| self.pivots.contains_key(row)).copied();
            let Some(row) = hit else { break };
            let coeff = vector.get(&row).cloned().expect("pivot hit just found");
            let reduced = &self.pivots[&row];
            axpy_sub(&mut vector, &coeff, &reduced.vector);
            axpy_sub(&mut combo, &coeff, &reduced.combo);
        }
        if vector.is_empty() {
            return Feed::Dependent(combo);
        }
        let pivot_row = *vector.keys().next().expect("nonempty vector");
        let scale = vector.get(&pivot_row).cloned().expect("pivot entry");
        if !scale.is_one() {
            for value in vector.values_mut() {
                *value /= &scale;
            }
            for value in combo.values_mut() {
                *value /= &scale;
            }
        }
        let owners: Vec<usize> = self
            .pivots
            .iter()
            .filter(|(_, reduced)| reduced.vector.contains_key(&pivot_row))
            .map(|(row, _)| *row)
            .collect();
        for row in owners {
            let mut reduced = self.pivots.remove(&row).expect("owner row present");
            let coeff = reduced.vector.get(&pivot_row).cloned().expect("entry present");
            axpy_sub(&mut reduced.vector, &coeff, &vector);
            axpy_sub(&mut reduced.combo, &coeff, &combo);
            self.pivots.insert(row, reduced);
        }
        self.pivots.insert(pivot_row, Reduced { vector, combo });
        Feed::Pivot(pivot_row)
    }
}

/// A linear map between exterior powers, stored column-major over explicit
/// row and column monomial bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    row_basis: Vec<ExteriorIndex>,
    col_basis: Vec<ExteriorIndex>,
    row_pos: BTreeMap<ExteriorIndex, usize>,
    col_pos: BTreeMap<ExteriorIndex, usize>,
    columns: Vec<BTreeMap<usize, Rational>>,
}

impl SparseRationalMatrix {
    /// Assembles a matrix from one form per column; every monomial of every
    /// column must lie in the row basis.
    pub fn from_columns(
        row_basis: Vec<ExteriorIndex>,
        col_basis: Vec<ExteriorIndex>,
        column_forms: &[ExteriorForm],
    ) -> Self {
        assert_eq!(col_basis.len(), column_forms.len());
        let row_pos: BTreeMap<ExteriorIndex, usize> =
            row_basis.iter().enumerate().map(|(pos, idx)| (*idx, pos)).collect();
        let col_pos: BTreeMap<ExteriorIndex, usize> =
            col_basis.iter().enumerate().map(|(pos, idx)| (*idx, pos)).collect();
        let columns = column_forms
            .iter()
            .map(|form| {
                form.terms()
                    .map(|(idx, c)| {
                        let row = *row_pos.get(&idx).expect("column monomial outside row basis");
                        (row, c.clone())
                    })
                    .collect()
            })
            .collect();
        SparseRationalMatrix { row_basis, col_basis, row_pos, col_pos, columns }
    }

    /// Codomain basis monomials.
    pub fn row_basis(&self) -> &[ExteriorIndex] {
        &self.row_basis
    }

    /// Domain basis monomials.
    pub fn col_basis(&self) -> &[ExteriorIndex] {
        &self.col_basis
    }

    /// Entry at (row monomial, column monomial); zero when absent.
    pub fn entry(&self, row: ExteriorIndex, col: ExteriorIndex) -> Rational {
        let (Some(r), Some(c)) = (self.row_pos.get(&row), self.col_pos.get(&col)) else {
            return Rational::zero();
        };
        self.columns[*c].get(r).cloned().unwrap_or_else(Rational::zero)
    }

    /// Column as a form over the row basis.
    pub fn column_form(&self, col: usize) -> ExteriorForm {
        let degree = self.row_basis.first().map_or(0, |idx| idx.degree());
        ExteriorForm::from_terms(
            degree,
            self.columns[col]
                .iter()
                .map(|(row, c)| (self.row_basis[*row], c.clone())),
        )
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|col| col.is_empty())
    }

    /// Applies the matrix to a form over the column basis.
    pub fn apply(&self, form: &ExteriorForm) -> ExteriorForm {
        let degree = self.row_basis.first().map_or(form.degree() + 1, |idx| idx.degree());
        let mut out = ExteriorForm::zero(degree);
        for (idx, coeff) in form.terms() {
            let col = *self.col_pos.get(&idx).expect("form monomial outside column basis");
            for (row, value) in &self.columns[col] {
                out.add_term(self.row_basis[*row], coeff * value);
            }
        }
        out
    }

    /// Composition self ∘ rhs; rhs's row basis must be contained in self's
    /// column basis.
    pub fn compose(&self, rhs: &SparseRationalMatrix) -> SparseRationalMatrix {
        let forms: Vec<ExteriorForm> =
            (0..rhs.col_basis.len()).map(|j| self.apply(&rhs.column_form(j))).collect();
        SparseRationalMatrix::from_columns(self.row_basis.clone(), rhs.col_basis.clone(), &forms)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        self.rank_and_kernel().0
    }

    /// Basis of the kernel, as forms over the column basis.
    pub fn kernel_basis(&self) -> Vec<ExteriorForm> {
        self.rank_and_kernel().1
    }

    /// Rank and kernel basis in a single elimination pass.
    pub fn rank_and_kernel(&self) -> (usize, Vec<ExteriorForm>) {
        let degree = self.col_basis.first().map_or(0, |idx| idx.degree());
        let mut reducer = RowReducer::new();
        let mut kernel = Vec::new();
        for column in &self.columns {
            if let Feed::Dependent(combo) = reducer.feed(column.clone()) {
                kernel.push(ExteriorForm::from_terms(
                    degree,
                    combo.into_iter().map(|(col, c)| (self.col_basis[col], c)),
                ));
            }
        }
        (reducer.rank(), kernel)
    }
}

/// Weight of a monomial: the sum of the derivation weights of its factors.
pub fn subset_weight(alg: &GradedLieAlgebra, s: ExteriorIndex) -> Rational {
    s.indices().map(|i| alg.weight(i).clone()).sum()
}

/// σ(k): the set of weights occurring on Λ^k𝔫*, sorted ascending. Empty for
/// k > dim 𝔫.
pub fn sigma(alg: &GradedLieAlgebra, k: usize) -> Vec<Rational> {
    let set: BTreeSet<Rational> = basis(alg.dim(), k)
        .into_iter()
        .map(|s| subset_weight(alg, s))
        .collect();
    set.into_iter().collect()
}

/// Groups the degree-k basis monomials by weight.
pub fn weight_decomposition(
    alg: &GradedLieAlgebra,
    k: usize,
) -> BTreeMap<Rational, Vec<ExteriorIndex>> {
    let mut out: BTreeMap<Rational, Vec<ExteriorIndex>> = BTreeMap::new();
    for s in basis(alg.dim(), k) {
        out.entry(subset_weight(alg, s)).or_default().push(s);
    }
    out
}

/// δ on the generators: index l−1 holds δθ^l = −Σ_{i<j} c^l_{ij} θ^i∧θ^j.
pub(crate) fn generator_differentials(alg: &GradedLieAlgebra) -> Vec<ExteriorForm> {
    let mut out = vec![ExteriorForm::zero(2); alg.dim()];
    for (i, j, k, c) in alg.bracket_entries() {
        out[k - 1].add_term(ExteriorIndex::from_indices([i, j]), -c.clone());
    }
    out
}

/// δ of one basis monomial, expanded by the antiderivation rule.
pub(crate) fn delta_of_monomial(
    generator_deltas: &[ExteriorForm],
    s: ExteriorIndex,
) -> ExteriorForm {
    let mut out = ExteriorForm::zero(s.degree() + 1);
    for (pos, i) in s.indices().enumerate() {
        let before = ExteriorIndex::from_bits(s.bits() & ((1 << (i - 1)) - 1));
        let after = ExteriorIndex::from_bits(s.bits() & !((1 << i) - 1));
        let rest = before.union(after);
        for (pair, coeff) in generator_deltas[i - 1].terms() {
            if !pair.disjoint(rest) {
                continue;
            }
            let mut sign = shuffle_sign(before, pair) * shuffle_sign(before.union(pair), after);
            if pos % 2 == 1 {
                sign = -sign;
            }
            let mut c = coeff.clone();
            if sign < 0 {
                c = -c;
            }
            out.add_term(rest.union(pair), c);
        }
    }
    out
}

/// δ of an arbitrary homogeneous form, without validating the algebra.
pub fn delta_form(alg: &GradedLieAlgebra, form: &ExteriorForm) -> ExteriorForm {
    let deltas = generator_differentials(alg);
    let mut out = ExteriorForm::zero(form.degree() + 1);
    for (s, coeff) in form.terms() {
        let mut piece = delta_of_monomial(&deltas, s);
        piece.scale(coeff);
        out.add(&piece);
    }
    out
}

/// Matrix of δ: Λ^k𝔫* → Λ^{k+1}𝔫*, after validating the algebra.
pub fn delta_matrix(alg: &GradedLieAlgebra, k: usize) -> Result<SparseRationalMatrix, ExteriorError> {
    let report = alg.validate();
    if !report.is_valid() {
        return Err(ExteriorError::InvalidAlgebra {
            name: alg.name().to_string(),
            report: Box::new(report),
        });
    }
    Ok(delta_matrix_unchecked(alg, k))
}

/// Matrix of δ without the validity check; δ∘δ = 0 only holds for valid
/// algebras, which is exactly what the unchecked variant lets tests probe.
pub fn delta_matrix_unchecked(alg: &GradedLieAlgebra, k: usize) -> SparseRationalMatrix {
    let n = alg.dim();
    assert!(k <= n, "degree {k} out of range for dimension {n}");
    let deltas = generator_differentials(alg);
    let col_basis = basis(n, k);
    let row_basis = basis(n, k + 1);
    let forms: Vec<ExteriorForm> =
        col_basis.iter().map(|s| delta_of_monomial(&deltas, *s)).collect();
    SparseRationalMatrix::from_columns(row_basis, col_basis, &forms)
}

/// Matrix of left wedge multiplication ω ↦ φ∧ω on Λ^q𝔫*.
pub fn wedge_matrix(
    alg: &GradedLieAlgebra,
    phi: &ExteriorForm,
    q: usize,
) -> Result<SparseRationalMatrix, ExteriorError> {
    let n = alg.dim();
    if q > n {
        return Err(ExteriorError::DegreeOutOfRange { degree: q, dim: n });
    }
    for (s, _) in phi.terms() {
        for i in s.indices() {
            if i > n {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim: n });
            }
        }
    }
    let col_basis = basis(n, q);
    let row_basis = basis(n, q + phi.degree());
    let forms: Vec<ExteriorForm> = col_basis
        .iter()
        .map(|s| phi.wedge(&ExteriorForm::monomial(*s)))
        .collect();
    Ok(SparseRationalMatrix::from_columns(row_basis, col_basis, &forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational;

    fn heis3() -> GradedLieAlgebra {
        GradedLieAlgebra::new(
            "heis3",
            vec![rational(1, 1), rational(1, 1), rational(2, 1)],
            vec![(1, 2, 3, rational(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn monomial_rendering() {
        assert_eq!(ExteriorIndex::from_indices([1, 3]).to_string(), "{1,3}");
        assert_eq!(ExteriorIndex::EMPTY.to_string(), "{}");
    }

    #[test]
    fn basis_order_is_bitmask_ascending() {
        let b = basis(4, 2);
        let expected: Vec<ExteriorIndex> = [
            [1usize, 2],
            [1, 3],
            [2, 3],
            [1, 4],
            [2, 4],
            [3, 4],
        ]
        .into_iter()
        .map(ExteriorIndex::from_indices)
        .collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn wedge_onto_disjoint_monomials_is_signed() {
        let a = ExteriorForm::monomial(ExteriorIndex::from_indices([2]));
        let b = ExteriorForm::monomial(ExteriorIndex::from_indices([1]));
        let ab = a.wedge(&b);
        assert_eq!(ab.coeff(ExteriorIndex::from_indices([1, 2])), rational(-1, 1));
        let self_square = a.wedge(&a);
        assert!(self_square.is_zero());
    }

    #[test]
    fn shuffle_sign_counts_inversions() {
        let s = ExteriorIndex::from_indices([3]);
        let t = ExteriorIndex::from_indices([1, 2]);
        assert_eq!(shuffle_sign(s, t), 1);
        let s = ExteriorIndex::from_indices([2]);
        let t = ExteriorIndex::from_indices([1]);
        assert_eq!(shuffle_sign(s, t), -1);
    }

    #[test]
    fn heisenberg_generator_delta_sign() {
        let alg = heis3();
        let deltas = generator_differentials(&alg);
        assert!(deltas[0].is_zero());
        assert!(deltas[1].is_zero());
        assert_eq!(
            deltas[2].coeff(ExteriorIndex::from_indices([1, 2])),
            rational(-1, 1)
        );
    }

    #[test]
    fn heisenberg_delta_ranks() {
        let alg = heis3();
        let d1 = delta_matrix(&alg, 1).unwrap();
        assert_eq!(d1.rank(), 1);
        let kernel = d1.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for form in &kernel {
            assert!(d1.apply(form).is_zero());
        }
        let d2 = delta_matrix(&alg, 2).unwrap();
        assert!(d2.is_zero());
    }

    #[test]
    fn delta_squared_vanishes_via_compose() {
        let alg = heis3();
        for k in 0..=2 {
            let dk = delta_matrix(&alg, k).unwrap();
            let dk1 = delta_matrix(&alg, k + 1).unwrap();
            assert!(dk1.compose(&dk).is_zero(), "δ∘δ ≠ 0 in degree {k}");
        }
    }

    #[test]
    fn delta_on_invalid_algebra_is_rejected() {
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
        assert!(matches!(
            delta_matrix(&alg, 1),
            Err(ExteriorError::InvalidAlgebra { .. })
        ));
        // The unchecked variant exposes the broken identity: δ∘δ ≠ 0.
        let d1 = delta_matrix_unchecked(&alg, 1);
        let d2 = delta_matrix_unchecked(&alg, 2);
        assert!(!d2.compose(&d1).is_zero());
    }

    #[test]
    fn sigma_and_weight_decomposition() {
        let alg = heis3();
        assert_eq!(sigma(&alg, 0), vec![rational(0, 1)]);
        assert_eq!(sigma(&alg, 1), vec![rational(1, 1), rational(2, 1)]);
        assert_eq!(sigma(&alg, 2), vec![rational(2, 1), rational(3, 1)]);
        assert_eq!(sigma(&alg, 3), vec![rational(4, 1)]);
        assert!(sigma(&alg, 4).is_empty());

        let dec = weight_decomposition(&alg, 1);
        assert_eq!(
            dec[&rational(1, 1)],
            vec![
                ExteriorIndex::from_indices([1]),
                ExteriorIndex::from_indices([2])
            ]
        );
        assert_eq!(dec[&rational(2, 1)], vec![ExteriorIndex::from_indices([3])]);
    }

    #[test]
    fn subset_weight_sums_factor_weights() {
        let alg = heis3();
        assert_eq!(
            subset_weight(&alg, ExteriorIndex::from_indices([1, 3])),
            rational(3, 1)
        );
        assert_eq!(subset_weight(&alg, ExteriorIndex::EMPTY), rational(0, 1));
    }

    #[test]
    fn wedge_matrix_of_volume_class() {
        let alg = heis3();
        let phi = ExteriorForm::monomial(ExteriorIndex::from_indices([1, 2]));
        let m = wedge_matrix(&alg, &phi, 1).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(
            m.entry(
                ExteriorIndex::from_indices([1, 2, 3]),
                ExteriorIndex::from_indices([3])
            ),
            rational(1, 1)
        );
    }

    #[test]
    fn reducer_reports_exact_dependencies() {
        let mut reducer = RowReducer::new();
        let c0 = BTreeMap::from([(0, rational(1, 1))]);
        let c1 = BTreeMap::from([(1, rational(1, 1))]);
        let c2 = BTreeMap::from([(0, rational(1, 1)), (1, rational(1, 1))]);
        assert!(matches!(reducer.feed(c0), Feed::Pivot(0)));
        assert!(matches!(reducer.feed(c1), Feed::Pivot(1)));
        match reducer.feed(c2) {
            Feed::Dependent(combo) => {
                assert_eq!(combo[&0], rational(-1, 1));
                assert_eq!(combo[&1], rational(-1, 1));
                assert_eq!(combo[&2], rational(1, 1));
            }
            other => panic!("expected dependency, got {other:?}"),
        }
        assert_eq!(reducer.rank(), 2);
    }
}
