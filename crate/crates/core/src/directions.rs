//! Seeded low-discrepancy direction nets on the unit sphere.
//!
//! Dimension 2 uses equally spaced angles with a seeded phase. Higher
//! dimensions push a Cranley-Patterson rotated Halton sequence through
//! Box-Muller and normalize. No OS entropy is ever consulted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{linalg, Point};

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % b) as f64 * f;
        i /= b;
        f *= inv;
    }
    r
}

/// `count` unit directions in dimension `dim`, fully determined by `seed`.
pub fn sphere_net(dim: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match dim {
        0 => Vec::new(),
        1 => (0..count)
            .map(|k| Point::from([if k % 2 == 0 { 1.0 } else { -1.0 }]))
            .collect(),
        2 => {
            let phase: f64 = rng.random();
            (0..count)
                .map(|k| {
                    let t = std::f64::consts::TAU * (k as f64 + phase) / count as f64;
                    Point::from([t.cos(), t.sin()])
                })
                .collect()
        }
        _ => {
            let pairs = dim.div_ceil(2);
            let shift: Vec<f64> = (0..2 * pairs).map(|_| rng.random()).collect();
            let mut out = Vec::with_capacity(count);
            let mut index = 1u64;
            while out.len() < count {
                let mut g = Vec::with_capacity(2 * pairs);
                for p in 0..pairs {
                    let u1 = (radical_inverse(index, PRIMES[2 * p % 8]) + shift[2 * p]).fract();
                    let u2 =
                        (radical_inverse(index, PRIMES[(2 * p + 1) % 8]) + shift[2 * p + 1]).fract();
                    let r = (-2.0 * u1.max(1e-300).ln()).sqrt();
                    let t = std::f64::consts::TAU * u2;
                    g.push(r * t.cos());
                    g.push(r * t.sin());
                }
                g.truncate(dim);
                index += 1;
                if let Some(u) = Point::from(g).normalized() {
                    out.push(u);
                }
            }
            out
        }
    }
}

/// Angular resolution of [`sphere_net`] as a chord length: the largest
/// distance from a probe direction to its nearest net member.
///
/// Exact in dimension 2; estimated with `probes` independent directions
/// otherwise.
pub fn covering_radius(net: &[Point], probes: usize, seed: u64) -> f64 {
    let Some(first) = net.first() else {
        return 2.0;
    };
    let dim = first.dim();
    if dim == 2 {
        let mut angles: Vec<f64> = net.iter().map(|u| u[1].atan2(u[0])).collect();
        angles.sort_by(f64::total_cmp);
        let mut gap: f64 = std::f64::consts::TAU - (angles[angles.len() - 1] - angles[0]);
        for w in angles.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        return 2.0 * (gap / 4.0).sin();
    }
    let probe = sphere_net(dim, probes, seed ^ 0x9e37_79b9_7f4a_7c15);
    probe
        .iter()
        .map(|p| net.iter().map(|u| u.dist(p)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Orthonormal basis of the tangent space of the unit sphere at `u`.
pub fn tangent_basis(u: &Point) -> Vec<Point> {
    linalg::complement(std::slice::from_ref(u), u.dim())
}

/// Unit vector at angle `theta` in the plane.
pub fn unit_angle(theta: f64) -> Point {
    Point::from([theta.cos(), theta.sin()])
}
