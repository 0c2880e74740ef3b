//! Integration checks for the certification tables: coverage of [1, ∞],
//! constancy of certificates along segments, the higher-dimensional catalog
//! tables, window reproduction, and the weight-disjointness of the
//! closed-range route past the window exception.

use std::collections::BTreeSet;

use lptorsion_core::algebra_core::rational;
use lptorsion_core::catalog::{
    build_complex_heisenberg, build_octonionic_heisenberg, build_quaternionic_heisenberg,
    build_real_hyperbolic, build_sol,
};
use lptorsion_core::exterior::{delta_form, subset_weight};
use lptorsion_core::{
    anosov_split, certify, check_closed_range, torsion_table, vanishing_window, Certificate,
    CertifierError, ExtendedExponent, ExteriorForm, ExteriorIndex, GradedLieAlgebra, Rational,
    Segment, TorsionTable,
};
use num::One;

fn fin(n: i64, d: i64) -> ExtendedExponent {
    ExtendedExponent::Finite(rational(n, d))
}

/// The segments must tile [1, ∞] exactly: consecutive endpoints meet, each
/// junction is covered on exactly one side, and the tail closes at ∞.
fn assert_covers_the_ray(table: &TorsionTable) {
    let mut cursor = Rational::one();
    let mut cursor_covered = false;
    for (segment, _) in &table.segments {
        match segment {
            Segment::Point(b) => {
                assert_eq!(*b, cursor, "point off the cursor in degree {}", table.degree);
                assert!(!cursor_covered, "point {b} covered twice");
                cursor_covered = true;
            }
            Segment::Interval { lo, hi, lo_closed, hi_closed } => {
                assert_eq!(*lo, cursor, "gap before {segment} in degree {}", table.degree);
                assert_eq!(
                    *lo_closed, !cursor_covered,
                    "junction at {lo} covered on both or neither side"
                );
                match hi {
                    ExtendedExponent::Finite(hi) => {
                        assert!(*hi > cursor, "degenerate interval {segment}");
                        cursor = hi.clone();
                        cursor_covered = *hi_closed;
                    }
                    ExtendedExponent::Infinity => {
                        assert!(*hi_closed, "the last segment must close at inf");
                        cursor_covered = true;
                    }
                }
            }
        }
    }
    assert!(cursor_covered, "the ray is left open at {cursor}");
    assert!(
        matches!(
            table.segments.last(),
            Some((Segment::Interval { hi: ExtendedExponent::Infinity, .. }, _))
        ),
        "tables must end with the unbounded segment"
    );
}

/// Extra deterministic samples inside each open segment must reproduce the
/// tabled certificate (the table itself already compares two mediants).
fn assert_segment_constancy(alg: &GradedLieAlgebra, table: &TorsionTable) {
    for (segment, certificate) in &table.segments {
        let Segment::Interval { lo, hi, .. } = segment else { continue };
        let samples: Vec<Rational> = match hi {
            ExtendedExponent::Finite(hi) => {
                (1..=3).map(|j| lo + (hi - lo) * rational(j, 7)).collect()
            }
            ExtendedExponent::Infinity => (1..=3).map(|j| lo + rational(j, 1)).collect(),
        };
        for p in samples {
            let fresh = certify(alg, table.degree, &ExtendedExponent::Finite(p.clone())).unwrap();
            assert_eq!(
                &fresh, certificate,
                "certificate drifts inside {segment} of degree {} at p = {p}",
                table.degree
            );
        }
    }
}

#[test]
fn heisenberg_tables_cover_and_stay_constant() {
    let alg = build_complex_heisenberg(2);
    for k in 1..=3 {
        let table = torsion_table(&alg, k).unwrap();
        assert_covers_the_ray(&table);
        assert_segment_constancy(&alg, &table);
    }
}

#[test]
fn real_hyperbolic_tables_cover_and_stay_constant() {
    let alg = build_real_hyperbolic(5);
    for k in 1..=4 {
        let table = torsion_table(&alg, k).unwrap();
        assert_covers_the_ray(&table);
        assert_segment_constancy(&alg, &table);
    }
}

#[test]
fn sol_table_is_the_single_critical_segment() {
    let sol = build_sol();
    for k in 1..=2 {
        let table = torsion_table(&sol, k).unwrap();
        assert_covers_the_ray(&table);
        assert_eq!(table.segments.len(), 1);
    }
}

#[test]
fn quaternionic_m2_degree_four_chain() {
    let alg = build_quaternionic_heisenberg(2);
    let table = torsion_table(&alg, 4).unwrap();
    assert_covers_the_ray(&table);
    assert_eq!(
        table.breakpoints,
        vec![rational(5, 3), rational(2, 1), rational(5, 2), rational(10, 3), rational(5, 1)]
    );
    let labels: Vec<&str> = table.segments.iter().map(|(_, c)| c.label()).collect();
    assert_eq!(labels[0], "VanishesContracting");
    assert_eq!(labels[2], "VanishesClosedRange");
    assert_eq!(labels[4], "InconclusiveUnknown");
    assert_segment_constancy(&alg, &table);
}

#[test]
fn quaternionic_m3_tables_hold_together() {
    let alg = build_quaternionic_heisenberg(3);
    for k in [2, 3, 4, 5, 8] {
        let table = torsion_table(&alg, k).unwrap();
        assert_covers_the_ray(&table);
    }
}

#[test]
fn octonionic_tables_hold_together() {
    let alg = build_octonionic_heisenberg();
    for k in [2, 3, 4] {
        let table = torsion_table(&alg, k).unwrap();
        assert_covers_the_ray(&table);
    }
}

#[test]
fn windows_match_the_catalog_values() {
    let ch3 = vanishing_window(&build_complex_heisenberg(3), 3).unwrap();
    assert_eq!(ch3.window_sup, rational(3, 1));
    assert_eq!(ch3.exception, rational(2, 1));

    let oct = vanishing_window(&build_octonionic_heisenberg(), 2).unwrap();
    assert_eq!(oct.window_sup, rational(22, 1));
    assert_eq!(oct.exception, rational(11, 1));
    assert!(oct.segments.iter().any(|(segment, _)| {
        matches!(segment, Segment::Point(b) if *b == rational(11, 1))
    }));
}

#[test]
fn window_degree_guard_fires_on_sol() {
    assert!(matches!(
        vanishing_window(&build_sol(), 1),
        Err(CertifierError::WindowDegreeTooHigh { degree: 1, .. })
    ));
}

/// Past the window exception the plus space is the top weight block, so the
/// image of δ and the wedge span W live in disjoint weights; transversality
/// must hold for that reason alone.
fn assert_weight_disjoint_closed_range(alg: &GradedLieAlgebra, k: usize, p: &ExtendedExponent) {
    let (report, certificate) = check_closed_range(alg, k, p).unwrap();
    assert!(report.delta_injective && report.transversal);
    assert!(matches!(certificate, Some(Certificate::VanishesClosedRange { .. })));

    let split = anosov_split(alg, k - 1, p).unwrap();
    let mut image_weights = BTreeSet::new();
    for psi in &split.plus {
        for (s, _) in delta_form(alg, &ExteriorForm::monomial(*psi)).terms() {
            image_weights.insert(subset_weight(alg, s));
        }
    }
    let mut w_weights = BTreeSet::new();
    for psi in &split.plus {
        for i in 1..=alg.dim() {
            if !psi.contains(i) {
                let m = psi.union(ExteriorIndex::from_indices([i]));
                w_weights.insert(subset_weight(alg, m));
            }
        }
    }
    assert!(
        image_weights.is_disjoint(&w_weights),
        "image weights {image_weights:?} meet W weights {w_weights:?} on {}",
        alg.name()
    );
}

#[test]
fn closed_range_is_weight_disjoint_past_the_exception() {
    assert_weight_disjoint_closed_range(&build_quaternionic_heisenberg(2), 4, &fin(9, 5));
    assert_weight_disjoint_closed_range(&build_quaternionic_heisenberg(3), 4, &fin(5, 2));
    assert_weight_disjoint_closed_range(&build_octonionic_heisenberg(), 8, &fin(27, 17));
}
