// Shared generators for the property tests.
#![allow(dead_code)]

use proptest::prelude::*;
use triaffine::model::{AffineIfs, TriangularMap};

/// Fractions `(t_d, t_u, t_v)` in [0,1] placed into the admissible ranges of
/// `d`, `u`, `v` so that every map sends the unit square into itself.
pub fn place(c: f64, b: f64, t: (f64, f64, f64)) -> TriangularMap<f64> {
    let span = 0.9 * (1.0 - b);
    let d = span * (2.0 * t.0 - 1.0);
    let u = (1.0 - c) * t.1;
    let lo = (-d).max(0.0);
    let hi = 1.0 - b - d.max(0.0);
    let v = lo + (hi - lo) * t.2;
    TriangularMap::new(c, b, d, u, v)
}

fn fractions() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
}

pub fn homogeneous_system(max_maps: usize) -> impl Strategy<Value = AffineIfs<f64>> {
    (0.05..0.95f64, 0.05..0.95f64, prop::collection::vec(fractions(), 1..=max_maps)).prop_map(|(c, b, ts)| {
        AffineIfs::new(ts.into_iter().map(|t| place(c, b, t)).collect(), None).expect("placed maps are valid")
    })
}

pub fn general_system(max_maps: usize) -> impl Strategy<Value = AffineIfs<f64>> {
    prop::collection::vec((0.05..0.95f64, 0.05..0.95f64, fractions()), 1..=max_maps).prop_map(|ms| {
        AffineIfs::new(ms.into_iter().map(|(c, b, t)| place(c, b, t)).collect(), None)
            .expect("placed maps are valid")
    })
}

pub fn word(n_symbols: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n_symbols, 1..=max_len)
}
