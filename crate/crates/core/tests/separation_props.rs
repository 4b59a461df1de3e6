mod common;

use common::homogeneous_system;
use proptest::prelude::*;
use triaffine::model::{AffineIfs, TriangularMap};
use triaffine::projective::ScalarIfs;
use triaffine::scalar::{ratio, Rational};
use triaffine::separation::{
    count_intersecting_pairs, delta_n_exact, delta_n_symbolic, ssp_certificate, verify_certificate, DeltaValue,
    Offset,
};

fn line_system() -> impl Strategy<Value = ScalarIfs<Rational>> {
    (1i64..8, 2i64..9, prop::collection::vec(-6i64..7, 2..=3)).prop_filter_map("ratio < 1", |(p, q, offs)| {
        (p < q).then(|| {
            let pairs: Vec<_> = offs.iter().map(|&o| (ratio(p, q), ratio(o, 1))).collect();
            ScalarIfs::from_pairs(&pairs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_is_nonincreasing(s in line_system()) {
        let mut prev: Option<DeltaValue> = None;
        for n in 1..=8 {
            let cur = delta_n_exact(&s, n).unwrap();
            if let (Some(DeltaValue::Finite(p)), DeltaValue::Finite(c)) = (&prev, &cur) {
                prop_assert!(c <= p, "level {n}: {c} > {p}");
            }
            prev = Some(cur);
        }
    }

    #[test]
    fn separation_terms_bounded(p in 1i64..4, q in 2i64..6, radicand in 2i64..50, n in 1usize..=6) {
        prop_assume!(p < q);
        let root = (radicand as f64).sqrt();
        prop_assume!(root.fract() != 0.0);
        // normal form of the bound: offsets 0, 1 and an irrational in (0, 1)
        let tau = triaffine::model::HighPrecision::sqrt(&ratio(radicand, 1), 256)
            .scale(&ratio(1, root.ceil() as i64));
        let offsets = vec![Offset::Exact(ratio(0, 1)), Offset::Exact(ratio(1, 1)), Offset::Symbolic(tau)];
        let r = delta_n_symbolic(&ratio(p, q), &offsets, n).unwrap();
        prop_assert!(r.coefficient_bound_holds);
    }

    #[test]
    fn pair_counts_are_even(s in homogeneous_system(3), level in 1usize..=5, l in 0.0..3.0f64) {
        prop_assume!(s.len() >= 2);
        prop_assert_eq!(count_intersecting_pairs(&s, level, l).unwrap().count % 2, 0);
    }

    #[test]
    fn certificates_reverify(s in homogeneous_system(3)) {
        let (c, b) = s.homogeneous_diagonal().unwrap();
        prop_assume!(c > b && s.len() >= 2);
        let exact = s.to_exact();
        let out = ssp_certificate(&exact, 4, &ratio(1, 100)).unwrap();
        if let Some(cert) = out.certificate() {
            prop_assert_eq!(verify_certificate(&exact, cert).unwrap(), Some(cert.margin.clone()));
        }
    }
}

#[test]
fn certified_system_pair_count_vanishes() {
    let s = AffineIfs::new(
        vec![
            TriangularMap::new(0.3, 0.2, 0.1, 0.0, 0.0),
            TriangularMap::new(0.3, 0.2, -0.1, 0.6, 0.5),
        ],
        None,
    )
    .unwrap();
    let cert = ssp_certificate(&s, 4, &0.01).unwrap();
    assert!(cert.certificate().is_some());
    let counts: Vec<u64> = (1..=10).map(|l| count_intersecting_pairs(&s, l, 0.5).unwrap().count).collect();
    assert_eq!(*counts.last().unwrap(), 0, "{counts:?}");
}
