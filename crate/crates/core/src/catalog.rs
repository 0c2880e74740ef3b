//! Builders for the standard examples: abelian and diagonal algebras, and the
//! Heisenberg-type algebras 𝔫 = 𝔫₁ ⊕ 𝔫₂ over ℂ, ℍ and 𝕆 whose Heintze groups
//! are the rank-one symmetric spaces.
//!
//! Conventions, fixed once so reports are reproducible:
//! - complex: 𝔫₁ basis X₁, Y₁, …, X_{m−1}, Y_{m−1} (weight 1), then Z
//!   (weight 2); [X_i, Y_i] = Z.
//! - quaternionic: 𝔫₁ groups four coordinates (1, i, j, k) per quaternionic
//!   direction, then Z₁, Z₂, Z₃; brackets come from [u, v] = Im(ū v).
//! - octonionic: 𝔫₁ basis 1, e₁, …, e₇, then Z₁, …, Z₇; the product on
//!   imaginary units follows the Fano-plane lines below.

use num::One;

use crate::algebra_core::{AlgebraError, GradedLieAlgebra, Rational};

fn one() -> Rational {
    Rational::one()
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// Abelian 𝔫 with the given derivation weights, named `abelian<n>`.
pub fn build_abelian(weights: Vec<Rational>) -> Result<GradedLieAlgebra, AlgebraError> {
    let name = format!("abelian{}", weights.len());
    GradedLieAlgebra::new(name, weights, Vec::new())
}

/// Horospherical algebra of the real hyperbolic space H^n_ℝ: abelian ℝ^{n−1}
/// with α = id. Panics unless 2 ≤ n ≤ 17.
pub fn build_real_hyperbolic(n: usize) -> GradedLieAlgebra {
    assert!((2..=17).contains(&n), "real hyperbolic space needs 2 ≤ n ≤ 17");
    GradedLieAlgebra::new(format!("real{n}"), vec![one(); n - 1], Vec::new())
        .expect("abelian data is always well-formed")
}

/// The three-dimensional Sol geometry's horospherical data: weights (1, −1).
pub fn build_sol() -> GradedLieAlgebra {
    GradedLieAlgebra::new("sol", vec![one(), -one()], Vec::new())
        .expect("trace is zero, not negative")
}

/// Abelian ℝ² with weights (1, λ), named `diag`. Errors when 1 + λ < 0.
pub fn build_diag(lambda: Rational) -> Result<GradedLieAlgebra, AlgebraError> {
    GradedLieAlgebra::new("diag", vec![one(), lambda], Vec::new())
}

/// Complex Heisenberg algebra heis{2m−1}, the horospherical algebra of
/// H^m_ℂ. Panics unless 2 ≤ m ≤ 8.
pub fn build_complex_heisenberg(m: usize) -> GradedLieAlgebra {
    assert!((2..=8).contains(&m), "complex hyperbolic space needs 2 ≤ m ≤ 8");
    let dim = 2 * m - 1;
    let mut weights = vec![one(); 2 * (m - 1)];
    weights.push(two());
    let brackets = (1..m)
        .map(|i| (2 * i - 1, 2 * i, dim, one()))
        .collect();
    GradedLieAlgebra::new(format!("heis{dim}"), weights, brackets)
        .expect("heisenberg data is well-formed")
}

/// Quaternionic Heisenberg algebra qheis{4m−1}, the horospherical algebra of
/// H^m_ℍ. Panics unless 2 ≤ m ≤ 4.
pub fn build_quaternionic_heisenberg(m: usize) -> GradedLieAlgebra {
    assert!((2..=4).contains(&m), "quaternionic hyperbolic space needs 2 ≤ m ≤ 4");
    let n1 = 4 * (m - 1);
    let dim = n1 + 3;
    let mut weights = vec![one(); n1];
    weights.extend([two(), two(), two()]);
    // Per quaternionic coordinate (base+1..base+4) ↔ (1, i, j, k), the
    // brackets [u, v] = Im(ū v) hit the three centre directions Z₁, Z₂, Z₃.
    let z = |l: usize| n1 + l;
    let mut brackets = Vec::new();
    for c in 0..(m - 1) {
        let b = 4 * c;
        brackets.extend([
            (b + 1, b + 2, z(1), one()),
            (b + 1, b + 3, z(2), one()),
            (b + 1, b + 4, z(3), one()),
            (b + 2, b + 3, z(3), -one()),
            (b + 2, b + 4, z(2), one()),
            (b + 3, b + 4, z(1), -one()),
        ]);
    }
    GradedLieAlgebra::new(format!("qheis{dim}"), weights, brackets)
        .expect("heisenberg data is well-formed")
}

/// Oriented lines of the Fano plane: e_a·e_b = e_c with sign +1 along each
/// cyclic order (a → b → c → a).
const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// Product e_a·e_b of distinct imaginary octonion units: (index, sign).
fn octonion_imaginary_product(a: usize, b: usize) -> (usize, i64) {
    for line in FANO_LINES {
        if line.contains(&a) && line.contains(&b) {
            let c = *line.iter().find(|x| **x != a && **x != b).expect("third point");
            let pos_a = line.iter().position(|x| *x == a).expect("a on line");
            let sign = if line[(pos_a + 1) % 3] == b { 1 } else { -1 };
            return (c, sign);
        }
    }
    unreachable!("every pair of Fano points lies on one line");
}

/// Octonionic Heisenberg algebra oheis15, the horospherical algebra of H²_𝕆.
pub fn build_octonionic_heisenberg() -> GradedLieAlgebra {
    let mut weights = vec![one(); 8];
    weights.extend(vec![two(); 7]);
    // 𝔫₁ basis indices: 1 ↔ the real unit, 1+l ↔ e_l; centre: 8+l ↔ Z_l.
    // [u, v] = Im(ū v) gives [1, e_l] = e_l ↦ Z_l and
    // [e_i, e_j] = −(e_i e_j) ↦ −ε Z_k.
    let mut brackets = Vec::new();
    for l in 1..=7 {
        brackets.push((1, 1 + l, 8 + l, one()));
    }
    for i in 1..=7 {
        for j in (i + 1)..=7 {
            let (k, sign) = octonion_imaginary_product(i, j);
            brackets.push((1 + i, 1 + j, 8 + k, -Rational::from_integer(sign.into())));
        }
    }
    GradedLieAlgebra::new("oheis15", weights, brackets)
        .expect("heisenberg data is well-formed")
}
