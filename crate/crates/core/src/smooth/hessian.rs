use serde::{Deserialize, Serialize};

use super::{chord_length_gradient, oriented_tangents, SupportBody};
use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    NegativeDefinite,
    PositiveDefinite,
    Indefinite,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HessianCheck {
    pub analytic: [[f64; 2]; 2],
    pub numeric: [[f64; 2]; 2],
    pub max_abs_diff: f64,
    /// `max_abs_diff` over the Frobenius norm of `analytic`.
    pub relative_diff: f64,
    /// `|1/γ_tail + 1/γ_head - w|`.
    pub degeneracy: f64,
    pub eigenvalues: [f64; 2],
    pub definiteness: Definiteness,
}

fn sym_eigen(m: [[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    [0.5 * tr - disc, 0.5 * tr + disc]
}

/// Hessian of the chord length at a planar double normal, in arclength
/// charts with counter-clockwise tangents, against central differences.
pub fn hessian_check_d1(
    body: &SupportBody,
    b: &Chord,
    gamma_tail: f64,
    gamma_head: f64,
    tol: f64,
) -> Result<HessianCheck> {
    if body.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: body.dim(),
        });
    }
    if !body.is_smooth() {
        return Err(Error::NotStrictlyConvex("polyline boundary".into()));
    }
    if !(gamma_tail > 0.0 && gamma_head > 0.0) {
        return Err(Error::Parameter("curvatures must be positive".into()));
    }
    let g = chord_length_gradient(body, b, tol)?;
    if g.norm > 10.0 * tol {
        return Err(Error::NotDoubleNormal(format!("gradient norm {:.3e}", g.norm)));
    }
    let w = b.length();
    let analytic = [
        [1.0 / w - gamma_tail, 1.0 / w],
        [1.0 / w, 1.0 / w - gamma_head],
    ];

    let chart = |x: &Point| -> Result<(Point, Point)> {
        let nu = body.normal_at(x, tol)?;
        let tau = oriented_tangents(&nu).remove(0);
        Ok((nu, tau))
    };
    let (nx, tx) = chart(&b.tail)?;
    let (ny, ty) = chart(&b.head)?;
    let point = |x: &Point, nu: &Point, tau: &Point, s: f64| -> Result<Point> {
        if s == 0.0 {
            return Ok(x.clone());
        }
        body.section_point(x, nu, tau, s, Some(nu))
            .map(|(z, _)| z)
            .ok_or_else(|| Error::Parameter(format!("no boundary point at offset {s}")))
    };
    let h = tol.cbrt() * body.diameter();
    let estimate = |h: f64| -> Result<[[f64; 2]; 2]> {
        let xs: Vec<Point> = [-h, 0.0, h]
            .iter()
            .map(|s| point(&b.tail, &nx, &tx, *s))
            .collect::<Result<_>>()?;
        let ys: Vec<Point> = [-h, 0.0, h]
            .iter()
            .map(|s| point(&b.head, &ny, &ty, *s))
            .collect::<Result<_>>()?;
        let l = |i: usize, j: usize| xs[i].dist(&ys[j]);
        let ss = (l(2, 1) - 2.0 * l(1, 1) + l(0, 1)) / (h * h);
        let tt = (l(1, 2) - 2.0 * l(1, 1) + l(1, 0)) / (h * h);
        let st = (l(2, 2) - l(2, 0) - l(0, 2) + l(0, 0)) / (4.0 * h * h);
        Ok([[ss, st], [st, tt]])
    };
    let coarse = estimate(h)?;
    let fine = estimate(0.5 * h)?;
    let mut numeric = [[0.0; 2]; 2];
    let mut max_abs_diff = 0.0f64;
    let mut norm = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            numeric[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
            max_abs_diff = max_abs_diff.max((numeric[i][j] - analytic[i][j]).abs());
            norm += analytic[i][j] * analytic[i][j];
        }
    }
    let norm = norm.sqrt();
    let eigenvalues = sym_eigen(analytic);
    let zero = 1e-10 * norm.max(1.0);
    let definiteness = if eigenvalues.iter().any(|l| l.abs() <= zero) {
        Definiteness::Degenerate
    } else if eigenvalues[1] < 0.0 {
        Definiteness::NegativeDefinite
    } else if eigenvalues[0] > 0.0 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::Indefinite
    };
    Ok(HessianCheck {
        analytic,
        numeric,
        max_abs_diff,
        relative_diff: if norm > 0.0 { max_abs_diff / norm } else { max_abs_diff },
        degeneracy: (1.0 / gamma_tail + 1.0 / gamma_head - w).abs(),
        eigenvalues,
        definiteness,
    })
}
