use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::directions::{self, tangent_basis};
use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};
use crate::polytope::Polytope;
use crate::smooth::{chord_length_gradient, curvature_probe, Boundary, SupportBody};

/// Angle threshold used when the caller has no sharper one.
pub const DEFAULT_ALPHA: f64 = FRAC_PI_2 - 1e-6;

// Scaled Hessian eigenvalues within this of zero count as zero.
const SECOND_ORDER_ZERO: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxClass {
    StrictMax,
    /// The sufficient criterion does not apply; not a refutation.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxClassification {
    pub class: MaxClass,
    /// `π/2` minus the largest observed angle for polytopes; `-λ_max · w`
    /// of the chord-length Hessian for smooth bodies.
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_angle: Option<f64>,
    /// Largest Hessian eigenvalue times the chord length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_order: Option<f64>,
}

impl MaxClassification {
    pub fn is_strict(&self) -> bool {
        self.class == MaxClass::StrictMax
    }

    /// Whether the chord is at least a non-strict local maximum to the
    /// available order.
    pub fn is_maximizing(&self) -> bool {
        self.is_strict() || self.second_order.is_some_and(|l| l <= SECOND_ORDER_ZERO)
    }
}

fn angle(a: &Point, b: &Point) -> f64 {
    let c = a.dot(b) / (a.norm() * b.norm());
    c.clamp(-1.0, 1.0).acos()
}

/// Sufficient test for a strictly maximizing chord: all angles `∠y x x'`
/// and `∠x y y'` with `x'`, `y'` near the feet stay below `alpha`.
///
/// On a polytope the angles to the vertices bound those of every boundary
/// point, so the test is exact and `eta` only needs to be positive. On a
/// smooth body the angles tend to `π/2` at the feet; the chord-length Hessian
/// in tangent charts decides instead, and the chord is a strict maximum when
/// it is negative definite.
pub fn classify_maximizing<'a>(
    body: impl Into<Boundary<'a>>,
    b: &Chord,
    eta: f64,
    alpha: f64,
    tol: f64,
) -> Result<MaxClassification> {
    if !(eta > 0.0) {
        return Err(Error::Parameter("eta must be positive".into()));
    }
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(Error::Parameter("alpha must lie in (0, π/2]".into()));
    }
    match body.into() {
        Boundary::Polytope(p) => classify_polytope(p, b, alpha, tol),
        Boundary::Smooth(s) => match s.polygon() {
            Some(p) => classify_polytope(p, b, alpha, tol),
            None => classify_smooth(s, b, tol),
        },
    }
}

fn classify_polytope(p: &Polytope, b: &Chord, alpha: f64, tol: f64) -> Result<MaxClassification> {
    let p = p.clone().with_tol(tol);
    let eps = p.eps();
    for foot in [&b.tail, &b.head] {
        let v = p.max_violation(foot);
        if v.abs() > eps {
            return Err(Error::NotOnBoundary { distance: v.abs() });
        }
    }
    let u = b
        .direction()
        .ok_or_else(|| Error::NotDoubleNormal("degenerate chord".into()))?;
    let (mt, mh) = (p.support_margin(&b.tail, &u), p.support_margin(&b.head, &-&u));
    if mt < -tol || mh < -tol {
        return Err(Error::NotDoubleNormal(format!(
            "support margins {mt:.3e}, {mh:.3e}"
        )));
    }
    let mut max_angle = 0.0f64;
    for (x, y) in [(&b.tail, &b.head), (&b.head, &b.tail)] {
        let axis = y - x;
        for v in p.vertices() {
            let d = v - x;
            if d.norm() > eps {
                max_angle = max_angle.max(angle(&axis, &d));
            }
        }
    }
    Ok(MaxClassification {
        class: if max_angle < alpha {
            MaxClass::StrictMax
        } else {
            MaxClass::Inconclusive
        },
        margin: FRAC_PI_2 - max_angle,
        max_angle: Some(max_angle),
        second_order: None,
    })
}

fn classify_smooth(s: &SupportBody, b: &Chord, tol: f64) -> Result<MaxClassification> {
    let g = chord_length_gradient(s, b, tol)?;
    if g.norm > 10.0 * tol {
        return Err(Error::NotDoubleNormal(format!("gradient norm {:.3e}", g.norm)));
    }
    let w = b.length();
    let e = b.vector() * (1.0 / w);
    let t = tangent_basis(&e);
    let k = t.len();
    let shape = |u: &Point| {
        let j = s.touching_jacobian(u, &t);
        let j = (&j + j.transpose()) * 0.5;
        j.try_inverse()
    };
    let (Some(sx), Some(sy)) = (shape(&-&e), shape(&e)) else {
        return Err(Error::NotStrictlyConvex("singular radii of curvature".into()));
    };
    let h = nalgebra::DMatrix::from_fn(2 * k, 2 * k, |r, c| {
        let (br, bc) = (r / k, c / k);
        let (i, j) = (r % k, c % k);
        let id = if i == j { 1.0 / w } else { 0.0 };
        match (br, bc) {
            (0, 0) => id - sx[(i, j)],
            (1, 1) => id - sy[(i, j)],
            _ => -id,
        }
    });
    let lmax = h
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        * w;
    Ok(MaxClassification {
        class: if lmax < -SECOND_ORDER_ZERO {
            MaxClass::StrictMax
        } else {
            MaxClass::Inconclusive
        },
        margin: -lmax,
        max_angle: None,
        second_order: Some(lmax),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureBound {
    pub pass: bool,
    pub min_lower_curvature: f64,
    /// `1 / ℓ(c)`.
    pub bound: f64,
    pub probes: usize,
}

/// Lower curvature at both feet of a maximizing chord, probed along
/// `probes_per_foot` tangent directions, against `1 / ℓ(c)`.
pub fn curvature_bound_check<'a>(
    body: impl Into<Boundary<'a>>,
    c: &Chord,
    probes_per_foot: usize,
    tol: f64,
) -> Result<CurvatureBound> {
    let body = body.into();
    let cls = classify_maximizing(body, c, 1.0, DEFAULT_ALPHA, tol)?;
    if !cls.is_maximizing() {
        return Err(Error::NotMaximizing(format!("margin {:.3e}", cls.margin)));
    }
    let e = c.direction().expect("nondegenerate");
    let basis = tangent_basis(&e);
    let tangents: Vec<Point> = if basis.len() == 1 {
        vec![basis[0].clone(), -&basis[0]]
    } else {
        directions::sphere_net(basis.len(), probes_per_foot.max(1), 0)
            .iter()
            .map(|w| {
                basis
                    .iter()
                    .zip(w.coords())
                    .fold(Point::zeros(e.dim()), |acc, (q, a)| acc.offset(q, *a))
            })
            .collect()
    };
    let mut min_lower = f64::INFINITY;
    let mut probes = 0;
    for foot in [&c.tail, &c.head] {
        for t in &tangents {
            let est = curvature_probe(body, foot, t, &[], tol)?;
            min_lower = min_lower.min(est.lower_curvature());
            probes += 1;
        }
    }
    let bound = 1.0 / c.length();
    Ok(CurvatureBound {
        pass: min_lower >= bound - tol,
        min_lower_curvature: min_lower,
        bound,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes;

    fn chord(a: [f64; 2], b: [f64; 2]) -> Chord {
        Chord::new(Point::from(a), Point::from(b))
    }

    #[test]
    fn ellipse_and_circle() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let r = classify_maximizing(&e, &chord([-2.0, 0.0], [2.0, 0.0]), 0.5, 1.5, 1e-9).unwrap();
        assert!(r.is_strict(), "{r:?}");
        let minor = classify_maximizing(&e, &chord([0.0, -1.0], [0.0, 1.0]), 0.5, 1.5, 1e-9).unwrap();
        assert!(!minor.is_maximizing());
        let c = SupportBody::parse("circle:1").unwrap();
        let r = classify_maximizing(&c, &chord([-1.0, 0.0], [1.0, 0.0]), 0.5, 1.5, 1e-9).unwrap();
        assert_eq!(r.class, MaxClass::Inconclusive);
        assert!(r.is_maximizing());
    }

    #[test]
    fn polytope_diagonals_and_edges() {
        let sq = shapes::unit_square();
        let d = chord([0.0, 0.0], [1.0, 1.0]);
        assert!(classify_maximizing(&sq, &d, 0.1, DEFAULT_ALPHA, 1e-9).unwrap().is_strict());
        let fam = chord([0.5, 0.0], [0.5, 1.0]);
        let r = classify_maximizing(&sq, &fam, 0.1, DEFAULT_ALPHA, 1e-9).unwrap();
        assert_eq!(r.class, MaxClass::Inconclusive);
        let bad = chord([0.0, 0.0], [1.0, 0.5]);
        assert!(matches!(
            classify_maximizing(&sq, &bad, 0.1, DEFAULT_ALPHA, 1e-9),
            Err(Error::NotDoubleNormal(_))
        ));
    }

    #[test]
    fn curvature_bounds() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let r = curvature_bound_check(&e, &chord([-2.0, 0.0], [2.0, 0.0]), 4, 1e-9).unwrap();
        assert!(r.pass);
        assert!((r.min_lower_curvature - 2.0).abs() < 0.02);
        let ball = SupportBody::ball(1.5, 3).unwrap();
        let c = Chord::new(Point::from([0.0, 0.0, -1.5]), Point::from([0.0, 0.0, 1.5]));
        let r = curvature_bound_check(&ball, &c, 6, 1e-9).unwrap();
        assert!(r.pass && (r.min_lower_curvature - 1.0 / 1.5).abs() < 0.01, "{r:?}");
        assert!(curvature_bound_check(&e, &chord([0.0, -1.0], [0.0, 1.0]), 4, 1e-9).is_err());
    }

    #[test]
    fn polytope_vertex_feet_have_unbounded_curvature() {
        let tri = shapes::equilateral_triangle();
        let alt = {
            let v = tri.vertices();
            Chord::new(v[0].clone(), v[1].midpoint(&v[2]))
        };
        let r = classify_maximizing(&tri, &alt, 0.1, DEFAULT_ALPHA, 1e-9).unwrap();
        assert_eq!(r.class, MaxClass::Inconclusive);
        let sq = shapes::unit_square();
        let r = curvature_bound_check(&sq, &chord([0.0, 0.0], [1.0, 1.0]), 2, 1e-9).unwrap();
        assert!(r.pass && r.min_lower_curvature > 100.0);
    }
}
