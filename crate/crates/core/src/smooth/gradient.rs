use serde::{Deserialize, Serialize};

use super::SupportBody;
use crate::directions::tangent_basis;
use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};

/// Gradient of the chord length in orthonormal tangent charts at both feet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChordGradient {
    pub tail: Vec<f64>,
    pub head: Vec<f64>,
    pub norm: f64,
}

/// Tangent frame at a boundary point with outer normal `nu`. In the plane
/// this is the counter-clockwise tangent.
pub fn oriented_tangents(nu: &Point) -> Vec<Point> {
    if nu.dim() == 2 {
        vec![Point::from([-nu[1], nu[0]])]
    } else {
        tangent_basis(nu)
    }
}

pub fn chord_length_gradient(body: &SupportBody, b: &Chord, tol: f64) -> Result<ChordGradient> {
    let len = b.length();
    if len <= tol * body.diameter() {
        return Err(Error::NotDoubleNormal("degenerate chord".into()));
    }
    let nx = body.normal_at(&b.tail, tol)?;
    let ny = body.normal_at(&b.head, tol)?;
    let e = b.vector() * (1.0 / len);
    let tail: Vec<f64> = oriented_tangents(&nx).iter().map(|t| -t.dot(&e)).collect();
    let head: Vec<f64> = oriented_tangents(&ny).iter().map(|t| t.dot(&e)).collect();
    let norm = tail.iter().chain(&head).map(|v| v * v).sum::<f64>().sqrt();
    Ok(ChordGradient { tail, head, norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes_are_critical() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let c = Chord::new(Point::from([-2.0, 0.0]), Point::from([2.0, 0.0]));
        assert!(chord_length_gradient(&e, &c, 1e-9).unwrap().norm <= 1e-9);
        let circle = SupportBody::parse("circle:1.5").unwrap();
        let c = Chord::new(Point::from([0.0, -1.5]), Point::from([0.0, 1.5]));
        assert!(chord_length_gradient(&circle, &c, 1e-9).unwrap().norm <= 1e-9);
    }

    #[test]
    fn matches_finite_differences() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let x = Point::from([2.0, 0.0]);
        let y = Point::from([0.0, 1.0]);
        let g = chord_length_gradient(&e, &Chord::new(x.clone(), y.clone()), 1e-9).unwrap();
        // boundary parameterized by polar angle of the normal; tangent is ccw
        let foot = |t: f64| e.touching(&Point::from([t.cos(), t.sin()]));
        let h = 1e-6;
        let speed = |t: f64| foot(t + h).dist(&foot(t - h)) / (2.0 * h);
        let dx = (foot(h).dist(&y) - foot(-h).dist(&y)) / (2.0 * h) / speed(0.0);
        let ty = std::f64::consts::FRAC_PI_2;
        let dy = (x.dist(&foot(ty + h)) - x.dist(&foot(ty - h))) / (2.0 * h) / speed(ty);
        assert!((g.tail[0] - dx).abs() < 1e-6, "{g:?} {dx}");
        assert!((g.head[0] - dy).abs() < 1e-6, "{g:?} {dy}");
        // moving the head ccw toward (-2, 0) lengthens the chord
        assert!(g.head[0] > 0.0);
    }

    #[test]
    fn off_boundary_is_rejected() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let c = Chord::new(Point::from([0.0, 0.0]), Point::from([2.0, 0.0]));
        assert!(matches!(
            chord_length_gradient(&e, &c, 1e-9),
            Err(Error::NotOnBoundary { .. })
        ));
    }
}
