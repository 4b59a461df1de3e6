mod common;

use common::{general_system, homogeneous_system, place};
use proptest::prelude::*;
use triaffine::dimension::{
    affinity_dimension, homogeneous_affinity, lyapunov_dimension, moran_residual_x, moran_residual_y,
    phase_branch, phase_transition_profile, Theorem, theorem_dimension,
};
use triaffine::model::AffineIfs;

proptest! {
    #[test]
    fn moran_roots_have_small_residual(s in general_system(5)) {
        let a = affinity_dimension(&s);
        prop_assert!(moran_residual_x(&s, a.s_hat_x, a.d_x).abs() <= 1e-12);
        prop_assert!(moran_residual_y(&s, a.s_hat_y, a.d_y).abs() <= 1e-12);
    }

    #[test]
    fn solver_matches_closed_form(s in homogeneous_system(6)) {
        let (c, b) = s.homogeneous_diagonal().unwrap();
        // the closed form is the x-dominated branch, which for c > b means Ncb <= 1
        prop_assume!(c > b && s.len() as f64 * c * b <= 1.0);
        let closed = homogeneous_affinity(s.len(), c, b).unwrap();
        prop_assert!((affinity_dimension(&s).dim_aff - closed).abs() <= 1e-9);
    }

    #[test]
    fn y_dominates_beyond_ncb_one(n in 4usize..=6, c in 0.6..0.95f64, t in 0.5..0.999f64) {
        let b = c * t;
        prop_assume!(c > b && n as f64 * c * b > 1.0);
        let maps = (0..n).map(|i| place(c, b, (0.5, i as f64 / (n - 1) as f64, 0.5))).collect();
        let a = affinity_dimension(&AffineIfs::new(maps, None).unwrap());
        prop_assert!(a.d_y >= a.d_x - 1e-9);
        prop_assert!(a.dim_aff > 2.0 - 1e-9);
    }

    #[test]
    fn lyapunov_middle_case_is_affinity(n in 2usize..=6, c in 0.05..0.95f64, b in 0.05..0.95f64) {
        let nf = n as f64;
        prop_assume!(nf * c > 1.0 && nf * c * b <= 1.0 && c > b);
        let maps = (0..n).map(|i| place(c, b, (0.5, i as f64 / (n - 1) as f64, 0.5))).collect();
        let s = AffineIfs::new(maps, None).unwrap();
        let lyap = lyapunov_dimension(&s, &vec![1.0 / nf; n]).unwrap();
        prop_assert!((lyap - homogeneous_affinity(n, c, b).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn closed_form_monotone(n in 1usize..=6, c in 0.05..0.94f64, b in 0.05..0.94f64, dc in 0.0..0.05f64, db in 0.0..0.05f64) {
        prop_assume!(c > b + db);
        let base = homogeneous_affinity(n, c, b).unwrap();
        prop_assert!(homogeneous_affinity(n, c + dc, b).unwrap() >= base - 1e-12);
        prop_assert!(homogeneous_affinity(n, c, b + db).unwrap() >= base - 1e-12);
    }

    #[test]
    fn phase_profile_continuous_at_breakpoint(c in 0.5774..0.999f64) {
        let star = 1.0 / (3.0 * c);
        prop_assume!(star < c / 2.0);
        let grid = [star - 1e-9, star, star + 1e-9];
        let p = phase_transition_profile(c, &grid).unwrap();
        prop_assert!((p.breakpoint - star).abs() <= 1e-15);
        prop_assert!((phase_branch(c, star) - 2.0).abs() <= 1e-12);
        for w in p.points.windows(2) {
            prop_assert!((w[1].1 - w[0].1).abs() <= 1e-6);
        }
    }

    #[test]
    fn selected_theorem_has_value(s in homogeneous_system(5)) {
        let v = theorem_dimension(&s);
        prop_assert_eq!(v.formula_value.is_some(), v.theorem != Theorem::None);
        if let Some(x) = v.formula_value {
            prop_assert!(x >= 0.0 && x <= 2.0 + 1e-12);
        }
    }
}
