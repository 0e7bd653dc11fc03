use serde::Serialize;

use crate::directions;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::polytope::{build_hull, Polytope};

/// The hull of a point set cut by solid half-cones of revolution at the
/// feet of selected chords.
#[derive(Clone, Debug, Serialize)]
pub struct SharpenedBody {
    pub base: Polytope,
    /// `(u_i, v_i)` feet of each sharpened chord.
    pub apexes: Vec<(Point, Point)>,
    /// Half-angle `π/2 - 1/p` between the axis and the generatrices.
    pub half_angle: f64,
    /// Hull of boundary samples of the intersection.
    pub hull: Polytope,
}

impl SharpenedBody {
    /// Membership in the exact intersection.
    pub fn contains(&self, z: &Point) -> bool {
        self.base.contains(z) && self.in_cones(z)
    }

    fn in_cones(&self, z: &Point) -> bool {
        let cos = self.half_angle.cos();
        let eps = self.base.eps();
        self.apexes.iter().all(|(u, v)| {
            [(u, v), (v, u)].iter().all(|(a, b)| {
                let d = z - *a;
                let n = d.norm();
                n <= eps || (*b - *a).dot(&d) >= cos * n * (*b - *a).norm() - eps
            })
        })
    }
}

/// Intersects `conv(points)` with, for each chord `(u_i, v_i)` given by index
/// pairs, the half-cones with apexes at both feet, axis the chord and
/// half-angle `π/2 - 1/p`. The discretization keeps the hull vertices inside
/// every cone, the apexes, and boundary points found by bisection along rays
/// from an interior point.
pub fn cone_sharpen(
    points: &[Point],
    pairs: &[(usize, usize)],
    p: u32,
    samples_per_radian: f64,
    tol: f64,
) -> Result<SharpenedBody> {
    if p < 2 {
        return Err(Error::Parameter(format!("p must be at least 2, got {p}")));
    }
    if pairs.is_empty() {
        return Err(Error::EmptyInput("chord pairs"));
    }
    let base = build_hull(points, tol)?;
    let mut apexes = Vec::new();
    for &(i, j) in pairs {
        for k in [i, j] {
            let pt = points.get(k).ok_or_else(|| Error::Parameter(format!("index {k} out of range")))?;
            if base.is_vertex(pt).is_none() {
                return Err(Error::NotExtreme { index: k });
            }
        }
        if i == j {
            return Err(Error::Parameter("chord feet coincide".into()));
        }
        apexes.push((points[i].clone(), points[j].clone()));
    }
    let mut body = SharpenedBody {
        hull: base.clone(),
        base,
        apexes,
        half_angle: std::f64::consts::FRAC_PI_2 - 1.0 / p as f64,
    };

    let mids: Vec<Point> = body.apexes.iter().map(|(u, v)| u.midpoint(v)).collect();
    let centroid = Point::centroid(&mids).expect("nonempty");
    let center = std::iter::once(centroid)
        .chain(mids.iter().cloned())
        .find(|c| body.contains(c))
        .ok_or_else(|| Error::Parameter("cones leave no common interior point".into()))?;

    let mut samples: Vec<Point> = Vec::new();
    for (u, v) in &body.apexes {
        samples.push(u.clone());
        samples.push(v.clone());
    }
    let mut targets: Vec<Point> = Vec::new();
    for v in body.base.vertices() {
        if body.in_cones(v) {
            samples.push(v.clone());
        } else {
            targets.push(v.clone());
        }
    }
    let dim = body.base.dim();
    let rays = ((std::f64::consts::TAU * samples_per_radian) as usize).pow(dim as u32 - 1).clamp(16, 20000);
    let reach = 2.0 * body.base.diameter();
    for w in directions::sphere_net(dim, rays, 7) {
        targets.push(center.offset(&w, reach));
    }
    for t in targets {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let at = |s: f64| &center + &((&t - &center) * s);
        if body.contains(&at(hi)) {
            samples.push(at(hi));
            continue;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if body.contains(&at(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        samples.push(at(lo));
    }
    body.hull = build_hull(&samples, tol)?;
    Ok(body)
}
