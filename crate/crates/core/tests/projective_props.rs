mod common;

use common::{general_system, word};
use proptest::prelude::*;
use triaffine::model::AffineIfs;
use triaffine::projective::{derive_scalar_ifs, invariant_interval, ScalarIfsKind};
use triaffine::scalar::Rational;

fn x_dominated() -> impl Strategy<Value = AffineIfs<f64>> {
    general_system(4).prop_filter("needs c > b", |s| s.maps().iter().all(|m| m.c > m.b))
}

proptest! {
    #[test]
    fn fixed_points_are_fixed(s in x_dominated()) {
        let f = derive_scalar_ifs(&s, ScalarIfsKind::FurstenbergForward).unwrap();
        for m in f.maps() {
            let z = m.fixed_point();
            prop_assert!((m.apply(&z) - z).abs() <= 1e-12 * (1.0 + z.abs()));
        }
    }

    #[test]
    fn invariant_interval_is_forward_invariant(s in x_dominated()) {
        let f = derive_scalar_ifs(&s.to_exact(), ScalarIfsKind::FurstenbergForward).unwrap();
        let i = invariant_interval(&f).unwrap();
        for m in f.maps() {
            prop_assert!(i.contains_interval(&i.image(m)));
        }
    }

    #[test]
    fn conjugation_on_truncations((s, w) in x_dominated().prop_flat_map(|s| {
        let n = s.len();
        (Just(s), word(n, 10))
    })) {
        prop_assume!(!w.is_empty());
        let f = derive_scalar_ifs(&s.to_exact(), ScalarIfsKind::FurstenbergForward).unwrap();
        let anchor = Rational::from_integer(0.into());
        let tail = f.apply_word(&w[1..], &anchor).unwrap();
        prop_assert_eq!(f.maps()[w[0]].apply(&tail), f.apply_word(&w, &anchor).unwrap());
    }
}
