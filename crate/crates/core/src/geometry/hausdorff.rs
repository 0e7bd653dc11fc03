use serde::Serialize;

use super::{distance_to_hull, Point};
use crate::directions;
use crate::error::{Error, Result};

/// Pompeiu-Hausdorff distance between two convex hulls.
#[derive(Clone, Debug, Serialize)]
pub struct HausdorffReport {
    /// Exact value: the larger of the vertex-to-hull distances in both directions.
    pub distance: f64,
    /// `max |h_P(u) - h_Q(u)|` over the direction net, a lower bound.
    pub net_estimate: f64,
    /// Chord radius `ρ` of the direction net.
    pub net_resolution: f64,
    /// `(R_P + R_Q) ρ`, where `R` is the largest vertex norm. The true
    /// distance lies in `[net_estimate, net_estimate + net_slack]`.
    pub net_slack: f64,
}

const NET_SIZE: usize = 512;

fn support(points: &[Point], u: &Point) -> f64 {
    points.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Pompeiu-Hausdorff distance between `conv(p)` and `conv(q)`.
///
/// The distance to a convex set is convex, so its maximum over a hull is
/// attained at a vertex; the vertex-to-hull distances are therefore exact.
/// A support-function sweep over a seeded direction net is reported
/// alongside as an independent estimate with its accuracy bound.
pub fn hausdorff_distance(p: &[Point], q: &[Point]) -> Result<HausdorffReport> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyInput("hausdorff_distance"));
    }
    let dim = p[0].dim();
    if let Some(bad) = p.iter().chain(q).find(|x| x.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let one_way = |a: &[Point], b: &[Point]| {
        a.iter()
            .map(|x| distance_to_hull(x, b))
            .fold(0.0, f64::max)
    };
    let distance = one_way(p, q).max(one_way(q, p));

    let net = directions::sphere_net(dim, NET_SIZE.max(1 << dim.min(12)), 0);
    let net_estimate = net
        .iter()
        .map(|u| (support(p, u) - support(q, u)).abs())
        .fold(0.0, f64::max);
    let net_resolution = directions::covering_radius(&net, 256, 0);
    let radius = |s: &[Point]| s.iter().map(Point::norm).fold(0.0, f64::max);
    Ok(HausdorffReport {
        distance,
        net_estimate,
        net_resolution,
        net_slack: (radius(p) + radius(q)) * net_resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(s: f64, dx: f64) -> Vec<Point> {
        vec![
            [dx, 0.0].into(),
            [s + dx, 0.0].into(),
            [s + dx, s].into(),
            [dx, s].into(),
        ]
    }

    #[test]
    fn translated_square() {
        let r = hausdorff_distance(&square(1.0, 0.0), &square(1.0, 0.1)).unwrap();
        assert!((r.distance - 0.1).abs() < 1e-12);
        assert!(r.net_estimate <= r.distance + 1e-12);
        assert!(r.distance <= r.net_estimate + r.net_slack);
    }

    #[test]
    fn identical_sets() {
        let r = hausdorff_distance(&square(1.0, 0.0), &square(1.0, 0.0)).unwrap();
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn nested_squares() {
        let r = hausdorff_distance(&square(1.0, 0.0), &square(2.0, 0.0)).unwrap();
        assert!((r.distance - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(
            hausdorff_distance(&[], &square(1.0, 0.0)),
            Err(Error::EmptyInput(_))
        ));
    }
}
