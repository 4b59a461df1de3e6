//! Convex polygon predicates in the max metric, generic over the field.

use crate::scalar::Scalar;

type Point<T> = (T, T);

fn max<T: Scalar>(a: T, b: T) -> T {
    if a > b {
        a
    } else {
        b
    }
}

fn min<T: Scalar>(a: T, b: T) -> T {
    if a < b {
        a
    } else {
        b
    }
}

fn edges<T: Scalar>(poly: &[Point<T>]) -> impl Iterator<Item = (&Point<T>, &Point<T>)> {
    poly.iter().zip(poly.iter().cycle().skip(1))
}

/// Separating-axis test for convex polygons; touching counts as intersecting.
pub fn polygons_intersect<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> bool {
    for poly in [a, b] {
        for (p, q) in edges(poly) {
            let nx = p.1.clone() - q.1.clone();
            let ny = q.0.clone() - p.0.clone();
            let project = |v: &Point<T>| nx.clone() * v.0.clone() + ny.clone() * v.1.clone();
            let range = |s: &[Point<T>]| {
                let first = project(&s[0]);
                s[1..].iter().fold((first.clone(), first), |(lo, hi), v| {
                    let t = project(v);
                    (min(lo, t.clone()), max(hi, t))
                })
            };
            let (alo, ahi) = range(a);
            let (blo, bhi) = range(b);
            if ahi < blo || bhi < alo {
                return false;
            }
        }
    }
    true
}

/// Max-metric distance from the origin to the segment `[s0, s1]`.
pub(crate) fn origin_segment_distance<T: Scalar>(s0: &Point<T>, s1: &Point<T>) -> T {
    let ex = s1.0.clone() - s0.0.clone();
    let ey = s1.1.clone() - s0.1.clone();
    let at = |t: &T| {
        let x = s0.0.clone() + t.clone() * ex.clone();
        let y = s0.1.clone() + t.clone() * ey.clone();
        max(x.abs(), y.abs())
    };
    // the norm along the segment is convex and piecewise linear; its kinks sit
    // where a coordinate vanishes or the two magnitudes cross
    let mut candidates = vec![T::zero(), T::one()];
    let mut push_root = |num: T, den: T| {
        if !den.is_zero() {
            let t = num / den;
            if t > T::zero() && t < T::one() {
                candidates.push(t);
            }
        }
    };
    push_root(-s0.0.clone(), ex.clone());
    push_root(-s0.1.clone(), ey.clone());
    push_root(s0.1.clone() - s0.0.clone(), ex.clone() - ey.clone());
    push_root(-(s0.0.clone() + s0.1.clone()), ex.clone() + ey.clone());
    candidates
        .iter()
        .map(at)
        .reduce(min)
        .expect("at least the endpoints")
}

fn point_segment_distance<T: Scalar>(p: &Point<T>, s0: &Point<T>, s1: &Point<T>) -> T {
    let shift = |q: &Point<T>| (q.0.clone() - p.0.clone(), q.1.clone() - p.1.clone());
    origin_segment_distance(&shift(s0), &shift(s1))
}

/// Max-metric distance between two convex polygons; zero when they meet.
pub fn linf_distance<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> T {
    if polygons_intersect(a, b) {
        return T::zero();
    }
    let one_way = |from: &[Point<T>], to: &[Point<T>]| {
        from.iter()
            .flat_map(|p| edges(to).map(move |(s0, s1)| point_segment_distance(p, s0, s1)))
            .reduce(min)
            .expect("non-empty polygons")
    };
    min(one_way(a, b), one_way(b, a))
}

fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
        - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

/// Counter-clockwise convex hull (monotone chain), collinear points dropped.
fn convex_hull<T: Scalar>(mut pts: Vec<Point<T>>) -> Vec<Point<T>> {
    pts.sort_by(|p, q| {
        p.0.partial_cmp(&q.0)
            .unwrap()
            .then_with(|| p.1.partial_cmp(&q.1).unwrap())
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point<T>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point<T>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= T::zero()
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

/// The same distance computed as the max-norm distance from the origin to
/// the Minkowski difference `a - b`.
pub(crate) fn minkowski_linf_distance<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> T {
    let diffs: Vec<Point<T>> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| (p.0.clone() - q.0.clone(), p.1.clone() - q.1.clone())))
        .collect();
    let hull = convex_hull(diffs);
    let origin = (T::zero(), T::zero());
    if hull.len() >= 3 && edges(&hull).all(|(p, q)| cross(p, q, &origin) >= T::zero()) {
        return T::zero();
    }
    if hull.len() == 1 {
        return max(hull[0].0.abs(), hull[0].1.abs());
    }
    edges(&hull)
        .map(|(p, q)| origin_segment_distance(p, q))
        .reduce(min)
        .expect("non-empty hull")
}
