use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::directions::{self, tangent_basis};
use crate::error::{Error, Result};
use crate::geometry::{check_dim, linalg, Point, DEFAULT_TOL};
use crate::polytope::{build_hull, Polytope};

/// One additive term of a perturbed ball's support function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Perturbation {
    /// `amplitude * ⟨axis, u⟩^power`, any dimension.
    Zonal {
        amplitude: f64,
        axis: Point,
        power: u32,
    },
    /// `amplitude * cos(frequency * θ + phase)` with `θ` the polar angle; planar only.
    Harmonic {
        amplitude: f64,
        frequency: u32,
        phase: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BodyKind {
    Ellipsoid { semiaxes: Vec<f64> },
    PerturbedBall { radius: f64, terms: Vec<Perturbation> },
    /// A convex polygon; support and touching points come from its vertices.
    PolylineBoundary { vertices: Vec<Point> },
}

/// A convex body given by its support function `h` and touching map `∇h`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportBody {
    dim: usize,
    kind: BodyKind,
    diameter: f64,
    #[serde(skip)]
    polygon: Option<Polytope>,
}

impl SupportBody {
    /// Axis-aligned ellipsoid centred at the origin.
    pub fn ellipsoid(semiaxes: &[f64]) -> Result<Self> {
        check_dim(semiaxes.len())?;
        if semiaxes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::Parameter("semiaxes must be positive".into()));
        }
        let diameter = 2.0 * semiaxes.iter().cloned().fold(0.0, f64::max);
        Ok(SupportBody {
            dim: semiaxes.len(),
            kind: BodyKind::Ellipsoid {
                semiaxes: semiaxes.to_vec(),
            },
            diameter,
            polygon: None,
        })
    }

    pub fn ball(radius: f64, dim: usize) -> Result<Self> {
        Self::ellipsoid(&vec![radius; dim])
    }

    /// `h(u) = radius + Σ terms(u)`. Convexity is spot-checked.
    pub fn perturbed_ball(dim: usize, radius: f64, terms: Vec<Perturbation>) -> Result<Self> {
        check_dim(dim)?;
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Parameter("radius must be positive".into()));
        }
        for t in &terms {
            match t {
                Perturbation::Harmonic { .. } if dim != 2 => {
                    return Err(Error::Parameter(
                        "harmonic perturbations are planar only".into(),
                    ))
                }
                Perturbation::Zonal { axis, .. } if axis.dim() != dim => {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: axis.dim(),
                    })
                }
                _ => {}
            }
        }
        let terms = terms
            .into_iter()
            .map(|t| match t {
                Perturbation::Zonal {
                    amplitude,
                    axis,
                    power,
                } => Perturbation::Zonal {
                    amplitude,
                    axis: axis.normalized().unwrap_or(axis),
                    power,
                },
                other => other,
            })
            .collect();
        let mut body = SupportBody {
            dim,
            kind: BodyKind::PerturbedBall { radius, terms },
            diameter: 2.0 * radius,
            polygon: None,
        };
        body.diameter = directions::sphere_net(dim, 2048, 0)
            .iter()
            .map(|u| body.width(u))
            .fold(0.0, f64::max);
        body.check_convexity(256, 0)?;
        Ok(body)
    }

    /// Planar `h(θ) = radius + amplitude * cos(frequency θ + phase)`.
    pub fn harmonic(radius: f64, amplitude: f64, frequency: u32, phase: f64) -> Result<Self> {
        Self::perturbed_ball(
            2,
            radius,
            vec![Perturbation::Harmonic {
                amplitude,
                frequency,
                phase,
            }],
        )
    }

    /// Convex polygon from its vertices (any order; hull taken).
    pub fn polyline(vertices: &[Point]) -> Result<Self> {
        if vertices.iter().any(|v| v.dim() != 2) {
            return Err(Error::UnsupportedDimension(
                vertices.iter().find(|v| v.dim() != 2).map_or(0, Point::dim),
            ));
        }
        let hull = build_hull(vertices, DEFAULT_TOL)?;
        let c = hull.centroid();
        let mut verts: Vec<Point> = hull.vertices().to_vec();
        verts.sort_by(|a, b| {
            let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
            let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
            ta.total_cmp(&tb)
        });
        Ok(SupportBody {
            dim: 2,
            diameter: hull.diameter(),
            kind: BodyKind::PolylineBoundary { vertices: verts },
            polygon: Some(hull),
        })
    }

    /// Parse `name:p1,p2,...`, for example `ellipsoid:2,1.5,1`.
    ///
    /// Names: `ellipsoid`/`ellipse` (semiaxes), `ball`/`sphere` (radius,
    /// optional dimension, default 3), `circle` (radius), `perturbed`
    /// (radius, amplitude, frequency, optional phase), `zonal` (dimension,
    /// radius, amplitude, power; axis e₁), `polygon` (x₁,y₁,x₂,y₂,...),
    /// `square` (side, centred at the origin).
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let nums: Vec<f64> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number {s:?} in body spec {spec:?}")))
                })
                .collect::<Result<_>>()?
        };
        let need = |k: usize| -> Result<()> {
            if nums.len() < k {
                Err(Error::Parse(format!(
                    "body {name:?} needs at least {k} parameters"
                )))
            } else {
                Ok(())
            }
        };
        let as_count = |x: f64, what: &str| -> Result<usize> {
            if x >= 1.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(Error::Parse(format!("{what} must be a positive integer")))
            }
        };
        match name.trim().to_ascii_lowercase().as_str() {
            "ellipsoid" | "ellipse" => {
                need(1)?;
                Self::ellipsoid(&nums)
            }
            "ball" | "sphere" => {
                need(1)?;
                let dim = match nums.get(1) {
                    Some(&d) => as_count(d, "dimension")?,
                    None => 3,
                };
                Self::ball(nums[0], dim)
            }
            "circle" => {
                need(1)?;
                Self::ball(nums[0], 2)
            }
            "perturbed" => {
                need(3)?;
                let k = as_count(nums[2], "frequency")? as u32;
                Self::harmonic(nums[0], nums[1], k, nums.get(3).copied().unwrap_or(0.0))
            }
            "zonal" => {
                need(4)?;
                let dim = as_count(nums[0], "dimension")?;
                let power = as_count(nums[3], "power")? as u32;
                Self::perturbed_ball(
                    dim,
                    nums[1],
                    vec![Perturbation::Zonal {
                        amplitude: nums[2],
                        axis: Point::basis(dim, 0),
                        power,
                    }],
                )
            }
            "polygon" => {
                if nums.len() < 6 || !nums.len().is_multiple_of(2) {
                    return Err(Error::Parse(
                        "polygon needs an even number (at least 6) of coordinates".into(),
                    ));
                }
                let v: Vec<Point> = nums.chunks(2).map(|c| Point::from([c[0], c[1]])).collect();
                Self::polyline(&v)
            }
            "square" => {
                let s = nums.first().copied().unwrap_or(1.0) / 2.0;
                Self::polyline(&[
                    [-s, -s].into(),
                    [s, -s].into(),
                    [s, s].into(),
                    [-s, s].into(),
                ])
            }
            other => Err(Error::Parse(format!("unknown body {other:?}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    /// Maximal width, which equals the diameter of a convex body.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// The underlying polygon of a polyline body.
    pub fn polygon(&self) -> Option<&Polytope> {
        self.polygon.as_ref()
    }

    /// Whether the touching map is single-valued and continuous.
    pub fn is_smooth(&self) -> bool {
        !matches!(self.kind, BodyKind::PolylineBoundary { .. })
    }

    /// A point of the interior.
    pub fn center(&self) -> Point {
        match &self.polygon {
            Some(p) => p.centroid(),
            None => Point::zeros(self.dim),
        }
    }

    /// Support value `h(u)` for a unit vector `u`.
    pub fn h(&self, u: &Point) -> f64 {
        match &self.kind {
            BodyKind::Ellipsoid { semiaxes } => semiaxes
                .iter()
                .zip(u.coords())
                .map(|(a, x)| a * a * x * x)
                .sum::<f64>()
                .sqrt(),
            BodyKind::PerturbedBall { radius, terms } => {
                radius + terms.iter().map(|t| term_value(t, u)).sum::<f64>()
            }
            BodyKind::PolylineBoundary { vertices } => vertices
                .iter()
                .map(|v| v.dot(u))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Touching point `∇h(u)`: the boundary point with outer normal `u`.
    ///
    /// For a polygon and a normal of an edge, the first maximizing vertex.
    pub fn touching(&self, u: &Point) -> Point {
        match &self.kind {
            BodyKind::Ellipsoid { semiaxes } => {
                let h = self.h(u);
                Point::new(
                    semiaxes
                        .iter()
                        .zip(u.coords())
                        .map(|(a, x)| a * a * x / h)
                        .collect(),
                )
            }
            BodyKind::PerturbedBall { terms, .. } => {
                let mut x = u * self.h(u);
                for t in terms {
                    x = &x + &term_gradient(t, u);
                }
                x
            }
            BodyKind::PolylineBoundary { vertices } => vertices
                .iter()
                .fold((f64::NEG_INFINITY, &vertices[0]), |acc, v| {
                    let s = v.dot(u);
                    if s > acc.0 + 1e-15 {
                        (s, v)
                    } else {
                        acc
                    }
                })
                .1
                .clone(),
        }
    }

    /// `h(u) + h(-u)`.
    pub fn width(&self, u: &Point) -> f64 {
        self.h(u) + self.h(&-u)
    }

    /// Jacobian of the touching map at `u` in the tangent basis `t`:
    /// `J[i][j] = ⟨t_i, ∂_j touching⟩`, the matrix of radii of curvature.
    pub fn touching_jacobian(&self, u: &Point, t: &[Point]) -> nalgebra::DMatrix<f64> {
        let k = t.len();
        let step = 1e-5;
        let mut j = nalgebra::DMatrix::zeros(k, k);
        for c in 0..k {
            let plus = self.touching(&u.offset(&t[c], step).normalized().expect("unit"));
            let minus = self.touching(&u.offset(&t[c], -step).normalized().expect("unit"));
            let d = (&plus - &minus) * (0.5 / step);
            for r in 0..k {
                j[(r, c)] = t[r].dot(&d);
            }
        }
        j
    }

    /// Spot-check the support-function axioms on `samples` seeded direction pairs:
    /// the midpoint inequality `h(u + v) ≤ h(u) + h(v)` of the homogeneous
    /// extension, `⟨∇h(u), u⟩ = h(u)`, and a positive definite touching
    /// Jacobian for smooth bodies.
    pub fn check_convexity(&self, samples: usize, seed: u64) -> Result<()> {
        let slack = 1e-9 * self.diameter.max(1.0);
        let a = crate::polytope::shapes::random_sphere_points(self.dim, samples, seed);
        let b = crate::polytope::shapes::random_sphere_points(self.dim, samples, seed ^ 0x5555);
        for (u, v) in a.iter().zip(&b) {
            let s = u + v;
            let n = s.norm();
            if n > 1e-9 {
                let lhs = n * self.h(&(&s * (1.0 / n)));
                if lhs > self.h(u) + self.h(v) + slack {
                    return Err(Error::NotStrictlyConvex(format!(
                        "midpoint inequality fails at u = {u:?}, v = {v:?}"
                    )));
                }
            }
            let x = self.touching(u);
            if (x.dot(u) - self.h(u)).abs() > slack {
                return Err(Error::Parameter(format!(
                    "touching map inconsistent with support at {u:?}"
                )));
            }
            if self.is_smooth() {
                let t = tangent_basis(u);
                let j = self.touching_jacobian(u, &t);
                let sym = (&j + j.transpose()) * 0.5;
                let min = sym.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
                if min <= slack {
                    return Err(Error::NotStrictlyConvex(format!(
                        "radius of curvature {min:.3e} at {u:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Outer unit normal at the boundary point `x`.
    pub fn normal_at(&self, x: &Point, tol: f64) -> Result<Point> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if let Some(p) = &self.polygon {
            return polytope_normal(p, x, None);
        }
        let eps = tol * self.diameter;
        let net = directions::sphere_net(self.dim, 64 << self.dim.min(6), 1);
        let mut u = net
            .iter()
            .min_by(|a, b| {
                self.touching(a)
                    .dist(x)
                    .total_cmp(&self.touching(b).dist(x))
            })
            .expect("nonempty net")
            .clone();
        for _ in 0..60 {
            let t = tangent_basis(&u);
            let r = &self.touching(&u) - x;
            let rt: Vec<f64> = t.iter().map(|q| q.dot(&r)).collect();
            let rn = rt.iter().map(|v| v * v).sum::<f64>().sqrt();
            if rn <= 1e-3 * eps {
                break;
            }
            let j = self.touching_jacobian(&u, &t);
            let rhs = nalgebra::DVector::from_vec(rt.iter().map(|v| -v).collect());
            let Some(step) = linalg::solve(j, &rhs) else {
                break;
            };
            let mut scale = 1.0;
            let mut moved = false;
            for _ in 0..30 {
                let mut cand = u.clone();
                for (q, s) in t.iter().zip(step.iter()) {
                    cand = cand.offset(q, scale * s);
                }
                let cand = cand.normalized().expect("unit");
                let r2 = &self.touching(&cand) - x;
                let rt2: f64 = tangent_basis(&cand)
                    .iter()
                    .map(|q| q.dot(&r2).powi(2))
                    .sum::<f64>()
                    .sqrt();
                if rt2 < rn {
                    u = cand;
                    moved = true;
                    break;
                }
                scale *= 0.5;
            }
            if !moved {
                break;
            }
        }
        let dist = self.touching(&u).dist(x);
        if dist > eps.max(1e-12) {
            return Err(Error::NotOnBoundary { distance: dist });
        }
        Ok(u)
    }

    /// Boundary point `z` with `⟨z - x, τ⟩ = s` in the half-plane through `x`
    /// spanned by the normal line and `τ`. `guess` warm-starts the search
    /// with a previous normal.
    pub(crate) fn section_point(
        &self,
        x: &Point,
        nu: &Point,
        tau: &Point,
        s: f64,
        guess: Option<&Point>,
    ) -> Option<(Point, Point)> {
        if let Some(p) = &self.polygon {
            return polytope_section(p, x, nu, tau, s).map(|z| (z, nu.clone()));
        }
        // tangent frame with τ first
        let mut frame = vec![tau.clone()];
        frame.extend(linalg::complement(&[nu.clone(), tau.clone()], self.dim));
        let eval = |u: &Point| -> Vec<f64> {
            let d = &self.touching(u) - x;
            frame
                .iter()
                .enumerate()
                .map(|(k, q)| q.dot(&d) - if k == 0 { s } else { 0.0 })
                .collect()
        };
        let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
        let mut u = guess.cloned().unwrap_or_else(|| nu.clone());
        let mut r = eval(&u);
        let target = 1e-14 * self.diameter;
        for _ in 0..80 {
            let rn = norm(&r);
            if rn <= target {
                break;
            }
            let basis = tangent_basis(&u);
            let k = basis.len();
            let h = 1e-6;
            let mut j = nalgebra::DMatrix::zeros(k, k);
            for c in 0..k {
                let p = eval(&u.offset(&basis[c], h).normalized()?);
                let m = eval(&u.offset(&basis[c], -h).normalized()?);
                for row in 0..k {
                    j[(row, c)] = (p[row] - m[row]) / (2.0 * h);
                }
            }
            let rhs = nalgebra::DVector::from_vec(r.iter().map(|v| -v).collect());
            let step = linalg::solve(j, &rhs)?;
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let mut cand = u.clone();
                for (q, d) in basis.iter().zip(step.iter()) {
                    cand = cand.offset(q, scale * d);
                }
                let cand = cand.normalized()?;
                let rc = eval(&cand);
                if norm(&rc) < rn {
                    u = cand;
                    r = rc;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        (norm(&r) <= 1e-9 * self.diameter).then(|| (self.touching(&u), u))
    }

    /// Uniformly spaced boundary samples (planar bodies) by normal angle.
    pub fn boundary_samples(&self, count: usize) -> Vec<Point> {
        (0..count)
            .map(|k| self.touching(&directions::unit_angle(TAU * k as f64 / count as f64)))
            .collect()
    }
}

fn term_value(t: &Perturbation, u: &Point) -> f64 {
    match t {
        Perturbation::Zonal {
            amplitude,
            axis,
            power,
        } => amplitude * axis.dot(u).powi(*power as i32),
        Perturbation::Harmonic {
            amplitude,
            frequency,
            phase,
        } => {
            let th = u[1].atan2(u[0]);
            amplitude * (*frequency as f64 * th + phase).cos()
        }
    }
}

// Spherical gradient of one term.
fn term_gradient(t: &Perturbation, u: &Point) -> Point {
    match t {
        Perturbation::Zonal {
            amplitude,
            axis,
            power,
        } => {
            if *power == 0 {
                return Point::zeros(u.dim());
            }
            let s = axis.dot(u);
            let c = amplitude * *power as f64 * s.powi(*power as i32 - 1);
            axis.offset(u, -s) * c
        }
        Perturbation::Harmonic {
            amplitude,
            frequency,
            phase,
        } => {
            let th = u[1].atan2(u[0]);
            let k = *frequency as f64;
            let d = -amplitude * k * (k * th + phase).sin();
            Point::from([-th.sin() * d, th.cos() * d])
        }
    }
}

/// Outer normal of a polytope at `x`, orthogonal to `tangent` when given.
pub(crate) fn polytope_normal(p: &Polytope, x: &Point, tangent: Option<&Point>) -> Result<Point> {
    let viol = p.max_violation(x);
    if viol.abs() > p.eps() {
        return Err(Error::NotOnBoundary { distance: viol.abs() });
    }
    let tight = p.tight_facets(x);
    let mut cands: Vec<Point> = tight.iter().map(|&i| p.facets()[i].normal.clone()).collect();
    if let Some(avg) = Point::centroid(&cands) {
        cands.insert(0, avg);
    }
    if let Some(t) = tangent {
        if p.dim() == 2 {
            cands.push(Point::from([t[1], -t[0]]));
            cands.push(Point::from([-t[1], t[0]]));
        }
        cands = cands
            .into_iter()
            .filter_map(|c| c.reject(t).normalized())
            .collect();
    } else {
        cands = cands.into_iter().filter_map(|c| c.normalized()).collect();
    }
    let eps = p.eps();
    cands
        .into_iter()
        .find(|nu| p.vertices().iter().all(|v| nu.dot(&(v - x)) <= eps))
        .ok_or_else(|| Error::NotTangent {
            normal_component: tangent.map_or(1.0, |t| {
                tight
                    .iter()
                    .map(|&i| p.facets()[i].normal.dot(t).abs())
                    .fold(f64::INFINITY, f64::min)
            }),
        })
}

/// Outermost boundary point on the line `x + sτ + λν`.
pub(crate) fn polytope_section(p: &Polytope, x: &Point, nu: &Point, tau: &Point, s: f64) -> Option<Point> {
    let base = x.offset(tau, s);
    let mut hi = f64::INFINITY;
    let mut lo = f64::NEG_INFINITY;
    for f in p.facets() {
        let a = f.normal.dot(nu);
        let c = f.offset - f.normal.dot(&base);
        if a > 1e-15 {
            hi = hi.min(c / a);
        } else if a < -1e-15 {
            lo = lo.max(c / a);
        } else if c < -p.eps() {
            return None;
        }
    }
    (hi.is_finite() && hi >= lo - p.eps()).then(|| base.offset(nu, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_support_and_width() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        assert_eq!(e.width(&Point::from([1.0, 0.0])), 4.0);
        assert_eq!(e.width(&Point::from([0.0, 1.0])), 2.0);
        let h = 0.5f64.sqrt();
        assert!((e.width(&Point::from([h, h])) - 2.0 * 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn touching_is_consistent() {
        for spec in ["ellipsoid:2,1.5,1", "perturbed:1,0.05,3", "zonal:3,1,0.05,3"] {
            let b = SupportBody::parse(spec).unwrap();
            for u in directions::sphere_net(b.dim(), 50, 2) {
                assert!((b.touching(&u).dot(&u) - b.h(&u)).abs() < 1e-12, "{spec}");
            }
        }
    }

    #[test]
    fn homogeneity_of_extension() {
        let b = SupportBody::parse("zonal:3,1,0.05,3").unwrap();
        // ∇h matches a finite difference of the homogeneous extension
        let u = Point::from([0.6, 0.0, 0.8]);
        let ext = |x: &Point| x.norm() * b.h(&x.normalized().unwrap());
        let g = b.touching(&u);
        for k in 0..3 {
            let e = Point::basis(3, k);
            let fd = (ext(&u.offset(&e, 1e-6)) - ext(&u.offset(&e, -1e-6))) / 2e-6;
            assert!((fd - g[k]).abs() < 1e-8);
        }
    }

    #[test]
    fn non_convex_perturbation_is_rejected() {
        assert!(matches!(
            SupportBody::harmonic(1.0, 0.2, 3, 0.0),
            Err(Error::NotStrictlyConvex(_))
        ));
    }

    #[test]
    fn normal_recovery() {
        let b = SupportBody::parse("ellipsoid:2,1.5,1").unwrap();
        let u = Point::from([0.3, -0.5, 0.8]).normalized().unwrap();
        let x = b.touching(&u);
        let n = b.normal_at(&x, 1e-9).unwrap();
        assert!(n.dist(&u) < 1e-9);
        assert!(matches!(
            b.normal_at(&Point::zeros(3), 1e-9),
            Err(Error::NotOnBoundary { .. })
        ));
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(SupportBody::parse("blob:1"), Err(Error::Parse(_))));
        assert!(matches!(SupportBody::parse("ellipse:a,b"), Err(Error::Parse(_))));
        assert!(matches!(SupportBody::parse("ellipse:-1,1"), Err(Error::Parameter(_))));
    }
}
