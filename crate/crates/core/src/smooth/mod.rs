//! Smooth convex bodies given by support functions.

mod body;
mod curvature;
mod gradient;
mod hessian;
mod solver;

pub use body::{BodyKind, Perturbation, SupportBody};
pub use curvature::{curvature_probe, default_scales, CurvatureEstimate, Radius, PROBE_WINDOW};
pub use gradient::{chord_length_gradient, oriented_tangents, ChordGradient};
pub use hessian::{hessian_check_d1, Definiteness, HessianCheck};
pub use solver::{
    default_starts, find_double_normals, find_double_normals_seeded, tangential_residual,
    FAMILY_MIN_ZEROS,
};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::polytope::Polytope;

/// A boundary that can be probed locally: a support-function body or a polytope.
#[derive(Clone, Copy, Debug)]
pub enum Boundary<'a> {
    Smooth(&'a SupportBody),
    Polytope(&'a Polytope),
}

impl<'a> From<&'a SupportBody> for Boundary<'a> {
    fn from(b: &'a SupportBody) -> Self {
        Boundary::Smooth(b)
    }
}

impl<'a> From<&'a Polytope> for Boundary<'a> {
    fn from(p: &'a Polytope) -> Self {
        Boundary::Polytope(p)
    }
}

impl Boundary<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Boundary::Smooth(b) => b.dim(),
            Boundary::Polytope(p) => p.dim(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Boundary::Smooth(b) => b.diameter(),
            Boundary::Polytope(p) => p.diameter(),
        }
    }

    /// Outer unit normal at `x`; with `tangent`, one orthogonal to it.
    pub fn normal(&self, x: &Point, tangent: Option<&Point>, tol: f64) -> Result<Point> {
        match self {
            Boundary::Smooth(b) => {
                if let Some(p) = b.polygon() {
                    return body::polytope_normal(p, x, tangent);
                }
                let nu = b.normal_at(x, tol)?;
                if let Some(t) = tangent {
                    let c = nu.dot(t);
                    if c.abs() > tol.max(1e-7) {
                        return Err(Error::NotTangent { normal_component: c });
                    }
                }
                Ok(nu)
            }
            Boundary::Polytope(p) => {
                let p = (*p).clone().with_tol(tol);
                body::polytope_normal(&p, x, tangent)
            }
        }
    }

    /// Boundary point `z` with `⟨z - x, τ⟩ = s`, outermost along `ν`.
    pub(crate) fn section(
        &self,
        x: &Point,
        nu: &Point,
        tau: &Point,
        s: f64,
        guess: Option<&Point>,
    ) -> Option<(Point, Point)> {
        match self {
            Boundary::Smooth(b) => b.section_point(x, nu, tau, s, guess),
            Boundary::Polytope(p) => body::polytope_section(p, x, nu, tau, s).map(|z| (z, nu.clone())),
        }
    }
}
