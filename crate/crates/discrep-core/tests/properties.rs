//! Property-based invariants for the core algorithms.

use proptest::prelude::*;

use discrep_core::constants::{self, BoundQuery, ConstantProfile, VariantTag};
use discrep_core::discrepancy::{
    extreme_discrepancy_exact, star_discrepancy_exact, DiscrepancyKind,
};
use discrep_core::geometry::CountMode;
use discrep_core::{MatrixSource, PointSet};

fn small_point_set() -> impl Strategy<Value = PointSet> {
    (1usize..=6, 1usize..=3, any::<u64>()).prop_map(|(n, s, seed)| {
        MatrixSource::new(seed).prefix(n, s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_extreme_sandwich(points in small_point_set()) {
        let star = star_discrepancy_exact(&points).unwrap().value;
        let extreme = extreme_discrepancy_exact(&points).unwrap().value;
        let factor = (1u64 << points.dim()) as f64;
        prop_assert!(star <= extreme + 1e-12);
        prop_assert!(extreme <= factor * star + 1e-12);
        prop_assert!(star > 0.0 && extreme <= 1.0 + 1e-12);
    }

    #[test]
    fn point_permutation_invariance(points in small_point_set(), rot in 0usize..6) {
        let star = star_discrepancy_exact(&points).unwrap().value;
        let mut rows = points.points().to_vec();
        let k = rot % rows.len();
        rows.rotate_left(k);
        let permuted = PointSet::new(rows).unwrap();
        let star_p = star_discrepancy_exact(&permuted).unwrap().value;
        prop_assert!((star - star_p).abs() < 1e-15);
    }

    #[test]
    fn coordinate_permutation_invariance(points in small_point_set()) {
        let star = star_discrepancy_exact(&points).unwrap().value;
        let extreme = extreme_discrepancy_exact(&points).unwrap().value;
        let rows: Vec<Vec<f64>> = points
            .points()
            .iter()
            .map(|p| p.iter().rev().copied().collect())
            .collect();
        let flipped = PointSet::new(rows).unwrap();
        prop_assert!((star - star_discrepancy_exact(&flipped).unwrap().value).abs() < 1e-15);
        prop_assert!((extreme - extreme_discrepancy_exact(&flipped).unwrap().value).abs() < 1e-15);
    }

    #[test]
    fn witness_consistency(points in small_point_set()) {
        for kind in [DiscrepancyKind::Star, DiscrepancyKind::Extreme] {
            let result = match kind {
                DiscrepancyKind::Star => star_discrepancy_exact(&points).unwrap(),
                DiscrepancyKind::Extreme => extreme_discrepancy_exact(&points).unwrap(),
            };
            let open = discrep_core::discrepancy::local_discrepancy(
                &points, &result.witness, CountMode::Open).unwrap();
            let closed = discrep_core::discrepancy::local_discrepancy(
                &points, &result.witness, CountMode::Closed).unwrap();
            let attained = (-open).max(closed);
            prop_assert!((attained - result.value).abs() < 1e-12);
        }
    }

    #[test]
    fn matrix_entries_unit_interval(seed in any::<u64>(), n in 1u64..1000, s in 1u64..100) {
        let x = MatrixSource::new(seed).entry(n, s);
        prop_assert!((0.0..1.0).contains(&x));
    }

    #[test]
    fn matrix_prefix_consistency(seed in any::<u64>(), n in 1usize..20, s in 1usize..6) {
        let src = MatrixSource::new(seed);
        let small = src.prefix(n, s).unwrap();
        let large = src.prefix(n + 3, s + 1).unwrap();
        for i in 0..n {
            for j in 0..s {
                prop_assert_eq!(small.points()[i][j], large.points()[i][j]);
            }
        }
    }

    #[test]
    fn zeta_strictly_decreasing(a in 1.05f64..10.0, gap in 0.01f64..5.0) {
        let za = constants::zeta(a).unwrap();
        let zb = constants::zeta(a + gap).unwrap();
        prop_assert!(zb < za);
        prop_assert!(zb > 1.0);
    }

    #[test]
    fn zeta_inv_round_trip(x in 1.1f64..10.0) {
        let y = constants::zeta(x).unwrap();
        let back = constants::zeta_inv(y).unwrap();
        prop_assert!((back - x).abs() < 1e-8);
    }

    #[test]
    fn bound_recomputation_deterministic(
        n_exp in 1u32..20,
        s in 1u32..50,
        alpha in 1.0f64..3.0,
    ) {
        let profile =
            ConstantProfile::new(VariantTag::Star, alpha, alpha, 1e-6, &[s]).unwrap();
        let q = BoundQuery::new(1u64 << n_exp, s).unwrap();
        let a = profile.bound(q).unwrap();
        let b = profile.bound(q).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
        prop_assert!(a.is_finite() && a > 0.0);
    }

    #[test]
    fn big_a_scales_with_certified_tolerance(s in 1u32..200) {
        // tighter tolerance can only lower the certified upper bound
        let loose = constants::big_a(VariantTag::Extreme, s, 1e-3).unwrap();
        let tight = constants::big_a(VariantTag::Extreme, s, 1e-9).unwrap();
        prop_assert!(tight <= loose + 1e-12);
        prop_assert!(loose - tight <= 1e-3 + 1e-12);
    }
}
