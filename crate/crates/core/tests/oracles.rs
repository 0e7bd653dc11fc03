mod common;

use binormal::analysis::{classify_maximizing, spectrum, DEFAULT_ALPHA};
use binormal::constructions::{arc_ladder_d1, rectangle_graft, sphere_ladder_d2};
use binormal::polytope::{build_hull, enumerate_double_normals, shapes};
use binormal::smooth::{default_starts, find_double_normals, SupportBody};
use binormal::{Chord, Point, DEFAULT_TOL};

fn interior(inv: &binormal::NormalInventory) -> Vec<f64> {
    let mut l: Vec<f64> = inv.isolated.iter().filter(|n| n.interior).map(|n| n.length).collect();
    l.sort_by(f64::total_cmp);
    l
}

#[test]
fn grid_oracle_on_named_shapes() {
    for (name, p, n) in [
        ("triangle", shapes::equilateral_triangle(), 12),
        ("square", shapes::unit_square(), 12),
        ("pentagon", shapes::regular_polygon(5, 1.0), 12),
        ("hexagon", shapes::regular_polygon(6, 1.0), 12),
        ("tetrahedron", shapes::regular_tetrahedron(), 12),
        ("cube", shapes::hypercube(3), 4),
    ] {
        let inv = enumerate_double_normals(&p, DEFAULT_TOL).unwrap();
        if let Err(e) = common::grid_agrees(&p, &inv, n) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn triangle_altitudes_through_the_interior() {
    let inv = enumerate_double_normals(&shapes::equilateral_triangle(), DEFAULT_TOL).unwrap();
    let l = interior(&inv);
    assert_eq!(l.len(), 3);
    for x in l {
        assert!((x - 3f64.sqrt() / 2.0).abs() <= 1e-9);
    }
    // the three sides are double normals as well; one of them is the diameter
    let sides: Vec<_> = inv.isolated.iter().filter(|n| !n.interior).collect();
    assert_eq!(sides.len(), 3);
    assert!(sides.iter().all(|n| (n.length - 1.0).abs() <= 1e-9));
}

#[test]
fn tetrahedron_interior_spectrum() {
    let inv = enumerate_double_normals(&shapes::regular_tetrahedron(), DEFAULT_TOL).unwrap();
    let l = interior(&inv);
    let mut want = vec![0.5f64.sqrt(); 3];
    want.extend([(2.0f64 / 3.0).sqrt(); 4]);
    assert_eq!(l.len(), 7);
    for (a, b) in l.iter().zip(&want) {
        assert!((a - b).abs() <= 1e-9, "{l:?}");
    }
}

#[test]
fn regular_polygon_counts() {
    // odd n ≥ 5: vertex-to-midpoint chords and the near-diametral diagonals;
    // even n: n/2 long diagonals and n/2 edge families
    for n in 3..=9usize {
        let p = shapes::regular_polygon(n, 1.0);
        let inv = enumerate_double_normals(&p, DEFAULT_TOL).unwrap();
        let through = inv.isolated.iter().filter(|c| c.interior).count();
        if n % 2 == 1 {
            assert_eq!(through, if n == 3 { 3 } else { 2 * n }, "n={n}");
            assert!(inv.families.is_empty());
        } else {
            assert_eq!(inv.families.len(), n / 2, "n={n}");
            let long = inv.isolated.iter().filter(|c| (c.length - 2.0).abs() < 1e-9).count();
            assert_eq!(long, n / 2, "n={n}");
        }
    }
}

#[test]
fn ellipse_axes_closed_form() {
    for (a, b) in [(2.0, 1.0), (3.0, 0.5), (1.2, 1.1)] {
        let e = SupportBody::ellipsoid(&[a, b]).unwrap();
        let inv = find_double_normals(&e, default_starts(2), DEFAULT_TOL).unwrap();
        let s = spectrum(&inv, DEFAULT_TOL).unwrap();
        assert_eq!(s.lengths.len(), 2);
        assert!((s.lengths[0] - 2.0 * b).abs() < 1e-9 && (s.lengths[1] - 2.0 * a).abs() < 1e-9);
        assert!(s.injective);
    }
}

#[test]
fn ladder_formulas() {
    let l = arc_ladder_d1(1.0, 0.5, 10).unwrap();
    assert_eq!(l.delta, 0.25 / 400.0);
    let lengths: Vec<f64> = l.rung_chords().iter().map(Chord::length).collect();
    for (i, x) in lengths.iter().enumerate() {
        assert!((x - 2.0 * (1.0 + (i + 1) as f64 * l.delta)).abs() < 1e-12);
    }
    let l2 = sphere_ladder_d2(1.0, 0.1, 0.4, 3).unwrap();
    assert_eq!(l2.points.len(), 27);
    assert!((l2.delta - 1.23457e-4).abs() < 1e-9);
    let lm = 3f64.ln();
    assert!((l2.dimension_ratio() - 3.0 * lm / (4.0 * lm - (0.16f64 / 32.0).ln())).abs() < 1e-14);
}

#[test]
fn rectangle_graft_diagonals_closed_form() {
    let sq = build_hull(
        &[[-1.0, -1.0].into(), [1.0, -1.0].into(), [1.0, 1.0].into(), [-1.0, 1.0].into()],
        DEFAULT_TOL,
    )
    .unwrap();
    let b = Chord::new(Point::from([-1.0, -1.0]), Point::from([1.0, 1.0]));
    let (e, w) = (0.1, 0.05);
    let g = rectangle_graft(&sq, &b, e, w, None, DEFAULT_TOL).unwrap();
    let want = ((b.length() + 2.0 * e).powi(2) + w * w).sqrt();
    for d in &g.diagonals {
        assert!((d.length() - want).abs() < 1e-12);
        let c = classify_maximizing(&g.polytope, d, 0.1, DEFAULT_ALPHA, DEFAULT_TOL).unwrap();
        assert!(c.is_strict());
    }
    assert!(g.separations.iter().all(|s| *s > 0.0));
}

#[test]
fn rectangle_graft_rejects_wide_rectangles() {
    let tri = shapes::equilateral_triangle();
    let inv = enumerate_double_normals(&tri, DEFAULT_TOL).unwrap();
    let altitude = inv.isolated.iter().find(|n| n.interior).unwrap().chord.clone();
    assert!(matches!(
        rectangle_graft(&tri, &altitude, 0.05, 0.2, None, DEFAULT_TOL),
        Err(binormal::Error::WidthTooLarge { .. })
    ));
    assert!(rectangle_graft(&tri, &altitude, 0.05, 0.02, None, DEFAULT_TOL).is_ok());
}
