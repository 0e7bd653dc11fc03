//! Named polytopes and seeded random ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_hull, is_standard_points, Polytope};
use crate::geometry::{Point, DEFAULT_TOL};

fn hull(points: Vec<Point>) -> Polytope {
    build_hull(&points, DEFAULT_TOL).expect("named polytopes are full-dimensional")
}

/// `[0,1]²`.
pub fn unit_square() -> Polytope {
    hull(vec![
        [0.0, 0.0].into(),
        [1.0, 0.0].into(),
        [1.0, 1.0].into(),
        [0.0, 1.0].into(),
    ])
}

/// Equilateral triangle with side 1.
pub fn equilateral_triangle() -> Polytope {
    hull(vec![
        [0.0, 0.0].into(),
        [1.0, 0.0].into(),
        [0.5, 3f64.sqrt() / 2.0].into(),
    ])
}

/// Regular tetrahedron with edge 1, centred at the origin.
pub fn regular_tetrahedron() -> Polytope {
    let s = 1.0 / (2.0 * 2f64.sqrt());
    hull(vec![
        [s, s, s].into(),
        [s, -s, -s].into(),
        [-s, s, -s].into(),
        [-s, -s, s].into(),
    ])
}

/// `[0,1]^dim`.
pub fn hypercube(dim: usize) -> Polytope {
    let pts = (0..1u32 << dim)
        .map(|i| Point::new((0..dim).map(|k| ((i >> k) & 1) as f64).collect()))
        .collect();
    hull(pts)
}

/// Regular `n`-gon inscribed in the circle of radius `r`.
pub fn regular_polygon(n: usize, r: f64) -> Polytope {
    let pts = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            Point::from([r * t.cos(), r * t.sin()])
        })
        .collect();
    hull(pts)
}

/// Standard normal sample via Box-Muller.
pub(crate) fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// `count` independent uniform points on the unit sphere.
pub fn random_sphere_points(dim: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point::new((0..dim).map(|_| gaussian(&mut rng)).collect());
        if let Some(u) = p.normalized() {
            out.push(u);
        }
    }
    out
}

/// Hull of `count` random points on the unit sphere (all of them vertices).
pub fn random_polytope(dim: usize, count: usize, seed: u64) -> Polytope {
    let mut s = seed;
    loop {
        if let Ok(p) = build_hull(&random_sphere_points(dim, count, s), DEFAULT_TOL) {
            return p;
        }
        s = s.wrapping_add(0x9e37_79b9);
    }
}

/// Like [`random_polytope`], redrawing until the vertex set is standard.
pub fn random_standard_polytope(dim: usize, count: usize, seed: u64) -> Polytope {
    let mut s = seed;
    loop {
        let p = random_polytope(dim, count, s);
        if is_standard_points(p.vertices(), 1e-6).standard {
            return p;
        }
        s = s.wrapping_add(0x9e37_79b9);
    }
}
