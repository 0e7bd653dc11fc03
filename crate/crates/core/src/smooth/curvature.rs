use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Boundary;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Number of smallest scales whose radii bracket the estimate.
pub const PROBE_WINDOW: usize = 3;

/// A curvature radius that may be infinite (flat direction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    pub fn value(self) -> f64 {
        match self {
            Radius::Finite(r) => r,
            Radius::Infinite => f64::INFINITY,
        }
    }

    /// Reciprocal curvature, `0` for an infinite radius.
    pub fn curvature(self) -> f64 {
        match self {
            Radius::Finite(r) => 1.0 / r,
            Radius::Infinite => 0.0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Radius::Finite(_))
    }
}

impl PartialOrd for Radius {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => s.serialize_f64(*r),
            Radius::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Radius {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(r) => Ok(Radius::Finite(r)),
            Raw::Str(s) if s == "inf" => Ok(Radius::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad radius {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureEstimate {
    pub lower_radius: Radius,
    pub upper_radius: Radius,
    pub scales_used: Vec<f64>,
    /// `(scale, radius)` for every scale that produced a section point.
    pub radii: Vec<(f64, Radius)>,
}

impl CurvatureEstimate {
    /// Lower curvature `1 / upper_radius`.
    pub fn lower_curvature(&self) -> f64 {
        match self.upper_radius {
            Radius::Finite(r) if r <= 0.0 => f64::INFINITY,
            r => r.curvature(),
        }
    }

    /// Upper curvature `1 / lower_radius`.
    pub fn upper_curvature(&self) -> f64 {
        match self.lower_radius {
            Radius::Finite(r) if r <= 0.0 => f64::INFINITY,
            r => r.curvature(),
        }
    }
}

/// `0.1 · diam · 2^-k` for `k = 0..10`.
pub fn default_scales(diameter: f64) -> Vec<f64> {
    (0..10).map(|k| 0.1 * diameter * 0.5f64.powi(k)).collect()
}

/// Curvature radii at `x` in the tangent direction `tau` from circles through
/// `x` and nearby boundary points with centre on the normal line.
///
/// An empty `scales` uses [`default_scales`]. The bracket is taken over the
/// [`PROBE_WINDOW`] smallest scales.
pub fn curvature_probe<'a>(
    body: impl Into<Boundary<'a>>,
    x: &Point,
    tau: &Point,
    scales: &[f64],
    tol: f64,
) -> Result<CurvatureEstimate> {
    let body = body.into();
    if x.dim() != body.dim() || tau.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: if x.dim() != body.dim() { x.dim() } else { tau.dim() },
        });
    }
    let tau = tau
        .normalized()
        .ok_or_else(|| Error::Parameter("zero tangent".into()))?;
    let nu = body.normal(x, Some(&tau), tol)?;
    let tau = tau.reject(&nu).normalized().expect("tangent");
    let diam = body.diameter();

    let mut scales: Vec<f64> = if scales.is_empty() {
        default_scales(diam)
    } else {
        scales.to_vec()
    };
    if scales.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
        return Err(Error::Parameter("scales must be positive".into()));
    }
    scales.sort_by(f64::total_cmp);

    let mut radii: Vec<(f64, Radius)> = Vec::new();
    let mut guess: Option<Point> = None;
    for &s in &scales {
        let Some((z, u)) = body.section(x, &nu, &tau, s, guess.as_ref()) else {
            continue;
        };
        guess = Some(u);
        let d = &z - x;
        let depth = -d.dot(&nu);
        let r = if depth <= tol * diam {
            Radius::Infinite
        } else {
            Radius::Finite(d.norm_sq() / (2.0 * depth))
        };
        radii.push((s, r));
    }
    if radii.is_empty() {
        return Err(Error::Parameter("no scale produced a boundary point".into()));
    }
    let window = &radii[..radii.len().min(PROBE_WINDOW)];
    let pick = |better: fn(f64, f64) -> bool| {
        window
            .iter()
            .map(|(_, r)| *r)
            .reduce(|a, b| if better(b.value(), a.value()) { b } else { a })
            .expect("nonempty")
    };
    let lower_radius = pick(|b, a| b < a);
    let upper_radius = pick(|b, a| b > a);
    let scales_used = window.iter().map(|(s, _)| *s).collect();
    radii.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(CurvatureEstimate {
        lower_radius,
        upper_radius,
        scales_used,
        radii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::SupportBody;

    #[test]
    fn circle_radius() {
        let c = SupportBody::parse("circle:2").unwrap();
        let x = Point::from([2.0f64.sqrt(), 2.0f64.sqrt()]);
        let t = Point::from([-1.0, 1.0]);
        let est = curvature_probe(&c, &x, &t, &[], 1e-9).unwrap();
        assert!((est.lower_radius.value() - 2.0).abs() < 0.02);
        assert!((est.upper_radius.value() - 2.0).abs() < 0.02);
        assert!(est.lower_radius <= est.upper_radius);
    }

    #[test]
    fn ellipse_vertex_and_convergence() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let x = Point::from([2.0, 0.0]);
        let t = Point::from([0.0, 1.0]);
        let est = curvature_probe(&e, &x, &t, &[], 1e-9).unwrap();
        assert!((est.upper_radius.value() - 0.5).abs() < 0.005);
        // error shrinks with the scale
        let err: Vec<f64> = est.radii.iter().map(|(_, r)| (r.value() - 0.5).abs()).collect();
        assert!(err.last().unwrap() < &(err[0] * 0.1));
    }

    #[test]
    fn square_corner_radius_vanishes() {
        let sq = SupportBody::parse("square:2").unwrap();
        let x = Point::from([1.0, 1.0]);
        let t = Point::from([-1.0, 1.0]);
        let est = curvature_probe(&sq, &x, &t, &[], 1e-9).unwrap();
        assert!(est.upper_radius.value() < 1e-2);
        assert!(est.lower_curvature() > 100.0);
    }

    #[test]
    fn flat_edge_is_infinite() {
        let sq = SupportBody::parse("square:2").unwrap();
        let x = Point::from([1.0, 0.0]);
        let est = curvature_probe(&sq, &x, &Point::from([0.0, 1.0]), &[0.1, 0.05, 0.01], 1e-9).unwrap();
        assert_eq!(est.lower_radius, Radius::Infinite);
        assert_eq!(serde_json::to_string(&est.upper_radius).unwrap(), "\"inf\"");
    }

    #[test]
    fn non_tangent_is_rejected() {
        let c = SupportBody::parse("circle:2").unwrap();
        let r = curvature_probe(&c, &Point::from([2.0, 0.0]), &Point::from([1.0, 0.2]), &[], 1e-9);
        assert!(matches!(r, Err(Error::NotTangent { .. })));
    }
}
