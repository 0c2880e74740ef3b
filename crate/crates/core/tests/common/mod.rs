//! Shared generators for the property suites: the catalog corpus plus random
//! valid graded algebras of dimension ≤ 8 drawn from three families whose
//! Jacobi identity holds by construction (abelian, two-step with central
//! image, filiform chains).

use lptorsion_core::catalog::{
    build_abelian, build_complex_heisenberg, build_octonionic_heisenberg,
    build_quaternionic_heisenberg, build_real_hyperbolic, build_sol,
};
use lptorsion_core::{GradedLieAlgebra, Rational};
use proptest::prelude::*;

pub fn catalog_corpus() -> Vec<GradedLieAlgebra> {
    let mut out = vec![build_sol(), build_octonionic_heisenberg()];
    for n in 3..=6 {
        out.push(build_real_hyperbolic(n));
    }
    for m in 2..=4 {
        out.push(build_complex_heisenberg(m));
    }
    for m in 2..=3 {
        out.push(build_quaternionic_heisenberg(m));
    }
    out.push(build_abelian(vec![Rational::new(1.into(), 1.into()); 4]).unwrap());
    out
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn scale_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn abelian_strategy() -> impl Strategy<Value = GradedLieAlgebra> {
    proptest::collection::vec((1i64..=5, 1i64..=3), 1..=8).prop_map(|pairs| {
        let weights = pairs.into_iter().map(|(n, d)| rat(n, d)).collect();
        GradedLieAlgebra::new("random_abelian", weights, Vec::new()).unwrap()
    })
}

/// Two-step: n1 generators of weight t, n2 central directions of weight 2t,
/// arbitrary bracket coefficients; Jacobi is automatic since double brackets
/// land in the (central) kernel.
fn two_step_strategy() -> impl Strategy<Value = GradedLieAlgebra> {
    (2usize..=5, 1usize..=3, scale_strategy())
        .prop_flat_map(|(n1, n2, t)| {
            let pairs: Vec<(usize, usize)> =
                (1..=n1).flat_map(|i| (i + 1..=n1).map(move |j| (i, j))).collect();
            let coeffs = proptest::collection::vec(-2i64..=2, pairs.len() * n2);
            (Just(n1), Just(n2), Just(t), Just(pairs), coeffs)
        })
        .prop_map(|(n1, n2, t, pairs, coeffs)| {
            let mut weights = vec![t.clone(); n1];
            weights.extend(std::iter::repeat(&t + &t).take(n2));
            let mut brackets = Vec::new();
            for (c, chunk) in coeffs.chunks(pairs.len()).enumerate() {
                for (&(i, j), &coeff) in pairs.iter().zip(chunk) {
                    if coeff != 0 {
                        brackets.push((i, j, n1 + c + 1, rat(coeff, 1)));
                    }
                }
            }
            GradedLieAlgebra::new("random_two_step", weights, brackets).unwrap()
        })
}

/// Filiform chain [e_1, e_i] = c_i·e_{i+1} with weights (1, 1, 2, …, n−1)·t;
/// every double bracket avoids e_1 twice, so Jacobi holds termwise.
fn filiform_strategy() -> impl Strategy<Value = GradedLieAlgebra> {
    (3usize..=8, scale_strategy())
        .prop_flat_map(|(n, t)| {
            (Just(n), Just(t), proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], n - 2))
        })
        .prop_map(|(n, t, coeffs)| {
            let mut weights = vec![t.clone(), t.clone()];
            for step in 2..n {
                weights.push(&t * rat(step as i64, 1));
            }
            let brackets = coeffs
                .into_iter()
                .enumerate()
                .map(|(offset, c)| (1, offset + 2, offset + 3, rat(c, 1)))
                .collect();
            GradedLieAlgebra::new("random_filiform", weights, brackets).unwrap()
        })
}

pub fn random_algebra() -> impl Strategy<Value = GradedLieAlgebra> {
    prop_oneof![abelian_strategy(), two_step_strategy(), filiform_strategy()]
}
