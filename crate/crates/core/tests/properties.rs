mod common;

use binormal::analysis::{brute_force_packing, holder_verify, packing_count};
use binormal::geometry::subspace_nearest_pair;
use binormal::io::{parse_off, parse_polytope_json, polytope_json, write_off};
use binormal::polytope::{build_hull, enumerate_double_normals, shapes};
use binormal::smooth::{default_starts, find_double_normals, tangential_residual, SupportBody};
use binormal::{AffineSubspace, Chord, Point, DEFAULT_TOL};
use proptest::prelude::*;

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-2.0f64..2.0, dim).prop_map(Point::new)
}

fn chord(dim: usize) -> impl Strategy<Value = Chord> {
    (point(dim), point(dim)).prop_map(|(a, b)| Chord::new(a, b))
}

fn rotation(angle: f64, axis: usize) -> Vec<Point> {
    let (c, s) = (angle.cos(), angle.sin());
    let mut cols: Vec<Point> = (0..3).map(|i| Point::basis(3, i)).collect();
    let (i, j) = (axis, (axis + 1) % 3);
    let mut a = vec![0.0; 3];
    a[i] = c;
    a[j] = s;
    let mut b = vec![0.0; 3];
    b[i] = -s;
    b[j] = c;
    cols[i] = Point::new(a);
    cols[j] = Point::new(b);
    cols
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chord_metric_axioms(a in chord(3), b in chord(3), c in chord(3)) {
        prop_assert_eq!(a.distance(&a), 0.0);
        prop_assert!((a.distance(&b) - b.distance(&a)).abs() < 1e-15);
        prop_assert!(a.distance(&c) <= a.distance(&b) + b.distance(&c) + 1e-12);
        prop_assert!(a.unoriented_distance(&b) <= a.distance(&b));
        prop_assert!((a.reversed().distance(&b.reversed()) - a.distance(&b)).abs() < 1e-15);
    }

    #[test]
    fn length_is_lipschitz_in_the_chord_metric(a in chord(2), b in chord(2)) {
        prop_assert!((a.length() - b.length()).abs() <= 2.0 * a.distance(&b) + 1e-12);
    }

    #[test]
    fn nearest_pair_is_orthogonal(
        p in point(4), q in point(4),
        u in prop::collection::vec(point(4), 1..3),
        v in prop::collection::vec(point(4), 1..3),
        s in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let a = AffineSubspace::new(p, &u, 1e-9);
        let b = AffineSubspace::new(q, &v, 1e-9);
        let np = subspace_nearest_pair(&a, &b, 1e-9);
        let w = &np.on_b - &np.on_a;
        for d in a.basis.iter().chain(&b.basis) {
            prop_assert!(w.dot(d).abs() <= 1e-8 * (1.0 + w.norm()));
        }
        prop_assert!((w.norm() - np.distance).abs() < 1e-9);
        let mut x = np.on_a.clone();
        for (d, t) in a.basis.iter().zip(&s) {
            x = x.offset(d, *t);
        }
        let mut y = np.on_b.clone();
        for (d, t) in b.basis.iter().zip(s.iter().rev()) {
            y = y.offset(d, *t);
        }
        prop_assert!(x.dist(&y) >= np.distance - 1e-9);
    }

    #[test]
    fn packing_is_monotone_in_delta(pts in prop::collection::vec(point(2), 1..40), d in 0.01f64..2.0) {
        prop_assert!(packing_count(&pts, d) >= packing_count(&pts, 1.5 * d));
    }

    #[test]
    fn packing_sandwich(pts in prop::collection::vec(point(2), 1..=15), d in 0.05f64..2.0) {
        let g = packing_count(&pts, d);
        let exact = common::exhaustive_packing(&pts, d);
        prop_assert!(g <= exact);
        prop_assert!(common::exhaustive_packing(&pts, 2.0 * d * (1.0 + 1e-12)) <= g);
        prop_assert_eq!(brute_force_packing(&pts, d), exact);
    }

    #[test]
    fn residual_is_odd(a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.5f64..3.0, u in point(3)) {
        prop_assume!(u.norm() > 0.1);
        let u = u.normalized().unwrap();
        let e = SupportBody::ellipsoid(&[a, b, c]).unwrap();
        let r = tangential_residual(&e, &u);
        let s = tangential_residual(&e, &-&u);
        prop_assert!((&r + &s).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kuiper_and_support_on_random_polytopes(dim in 2usize..=3, extra in 0usize..6, seed in 0u64..10_000) {
        let p = shapes::random_polytope(dim, dim + 1 + extra, seed);
        let inv = enumerate_double_normals(&p, DEFAULT_TOL).unwrap();
        prop_assert!(inv.count() >= dim);
        for n in &inv.isolated {
            prop_assert!(n.certificate.tail_support >= -1e-9);
            prop_assert!(n.certificate.head_support >= -1e-9);
            prop_assert!(n.certificate.membership <= 1e-9);
        }
        let h = holder_verify(&inv, DEFAULT_TOL).unwrap();
        prop_assert!(h.square_pass, "{:?}", h);
        prop_assert!(h.max_ratio <= 2.0 * h.bound * (1.0 + 1e-9));
    }

    #[test]
    fn spectrum_is_rigid_motion_invariant(seed in 0u64..10_000, angle in 0.0f64..6.3, axis in 0usize..3, shift in point(3)) {
        let p = shapes::random_standard_polytope(3, 7, seed);
        let q = p.transformed(&rotation(angle, axis), &shift).unwrap();
        let a = enumerate_double_normals(&p, DEFAULT_TOL).unwrap().isolated_lengths();
        let b = enumerate_double_normals(&q, DEFAULT_TOL).unwrap().isolated_lengths();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn reflected_polytope_has_reflected_normals(seed in 0u64..10_000) {
        let p = shapes::random_standard_polytope(2, 6, seed);
        let neg: Vec<Point> = p.vertices().iter().map(|v| -v).collect();
        let q = build_hull(&neg, DEFAULT_TOL).unwrap();
        let a = enumerate_double_normals(&p, DEFAULT_TOL).unwrap();
        let b = enumerate_double_normals(&q, DEFAULT_TOL).unwrap();
        prop_assert_eq!(a.isolated.len(), b.isolated.len());
        for n in &a.isolated {
            let m = Chord::new(-&n.chord.tail, -&n.chord.head);
            prop_assert!(b.isolated.iter().any(|k| k.chord.unoriented_distance(&m) < 1e-9));
        }
    }

    #[test]
    fn ellipsoid_holder_and_axes(a in 1.0f64..3.0, b in 1.0f64..3.0) {
        prop_assume!((a - b).abs() > 0.05);
        let e = SupportBody::ellipsoid(&[a, b]).unwrap();
        let inv = find_double_normals(&e, default_starts(2), DEFAULT_TOL).unwrap();
        prop_assert_eq!(inv.isolated.len(), 2);
        let h = holder_verify(&inv, DEFAULT_TOL).unwrap();
        prop_assert!(h.pass, "{:?}", h);
    }

    #[test]
    fn file_formats_round_trip(dim in 2usize..=3, seed in 0u64..10_000) {
        let p = shapes::random_polytope(dim, dim + 4, seed);
        let json = polytope_json(&p, Some("x"));
        let back = parse_polytope_json(&json).unwrap().points().unwrap();
        prop_assert_eq!(back.len(), p.vertices().len());
        for (u, v) in back.iter().zip(p.vertices()) {
            prop_assert_eq!(u, v);
        }
        let off = parse_off(&write_off(&p)).unwrap();
        prop_assert_eq!(off.len(), p.vertices().len());
        for (u, v) in off.iter().zip(p.vertices()) {
            prop_assert!(u.dist(v) < 1e-15);
        }
    }
}
