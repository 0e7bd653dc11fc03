use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DEFAULT_SAMPLES_PER_RADIAN;
use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};
use crate::inventory::{Certificate, IsolatedNormal, NormalInventory};
use crate::polytope::{build_hull, Polytope};

/// Rungs `v_i = o + R_i u(iΘ/n)` with `R_i = R + iδ` and their reflections in `o`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderD1 {
    pub center: Point,
    pub radius: f64,
    pub theta: f64,
    pub n: usize,
    pub base_dir: Point,
    pub delta: f64,
    /// `v_1 … v_n`.
    pub points: Vec<Point>,
    /// `v_i' = 2o - v_i`.
    pub antipodes: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcuteCheck {
    pub pass: bool,
    /// Smallest inequality slack observed.
    pub min_margin: f64,
    /// Index pairs whose inequality fails, capped at 100.
    pub failing: Vec<(usize, usize)>,
    pub checked: usize,
}

fn cosine_bound_root(theta: f64) -> Option<f64> {
    let steps = 4096;
    (1..=steps)
        .map(|k| theta * k as f64 / steps as f64)
        .find(|t| t.cos() > 1.0 - t * t / 3.0 + 1e-15)
}

/// Arc ladder centred at the origin with base direction `e_1`.
pub fn arc_ladder_d1(radius: f64, theta: f64, n: usize) -> Result<LadderD1> {
    arc_ladder_d1_at(radius, theta, n, &Point::zeros(2), &Point::from([1.0, 0.0]))
}

pub fn arc_ladder_d1_at(
    radius: f64,
    theta: f64,
    n: usize,
    center: &Point,
    base_dir: &Point,
) -> Result<LadderD1> {
    if !(radius > 0.0) || !(theta > 0.0) || n == 0 {
        return Err(Error::Parameter("need R > 0, Θ > 0 and n ≥ 1".into()));
    }
    if center.dim() != 2 || base_dir.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: if center.dim() != 2 { center.dim() } else { base_dir.dim() },
        });
    }
    if let Some(t) = cosine_bound_root(theta) {
        return Err(Error::Parameter(format!(
            "Θ = {theta} too large: cos θ ≤ 1 - θ²/3 fails at θ ≈ {t:.4}"
        )));
    }
    let e = base_dir
        .normalized()
        .ok_or_else(|| Error::Parameter("zero base direction".into()))?;
    let f = Point::from([-e[1], e[0]]);
    let delta = radius * theta * theta / (4.0 * (n * n) as f64);
    let points: Vec<Point> = (1..=n)
        .map(|i| {
            let r = radius + i as f64 * delta;
            let a = i as f64 * theta / n as f64;
            center.offset(&e, r * a.cos()).offset(&f, r * a.sin())
        })
        .collect();
    let antipodes = points.iter().map(|v| &(center * 2.0) - v).collect();
    Ok(LadderD1 {
        center: center.clone(),
        radius,
        theta,
        n,
        base_dir: e,
        delta,
        points,
        antipodes,
    })
}

impl LadderD1 {
    /// `R_i = R + iδ` for `i = 1..=n`.
    pub fn radii(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.radius + i as f64 * self.delta).collect()
    }

    pub fn rung_chords(&self) -> Vec<Chord> {
        self.points
            .iter()
            .zip(&self.antipodes)
            .map(|(v, w)| Chord::new(v.clone(), w.clone()))
            .collect()
    }

    /// `ln n / (-ln(δ/2))`, tending to 1/2.
    pub fn dimension_ratio(&self) -> f64 {
        (self.n as f64).ln() / -(self.delta / 2.0).ln()
    }

    /// Checks `R_j / R_i > cos((i - j)Θ/n)` for all `1 ≤ j < i ≤ n`, which
    /// makes every triangle `o v_i v_j` acute.
    pub fn acute_check(&self) -> AcuteCheck {
        let r = self.radii();
        let n = self.n;
        let step = self.theta / n as f64;
        let rows: Vec<(f64, Vec<(usize, usize)>)> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut min = f64::INFINITY;
                let mut bad = Vec::new();
                for j in 0..i {
                    let m = r[j] / r[i] - ((i - j) as f64 * step).cos();
                    min = min.min(m);
                    if m <= 0.0 {
                        bad.push((j + 1, i + 1));
                    }
                }
                (min, bad)
            })
            .collect();
        let min_margin = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let mut failing: Vec<(usize, usize)> = rows.into_iter().flat_map(|r| r.1).collect();
        let pass = failing.is_empty();
        failing.truncate(100);
        AcuteCheck {
            pass,
            min_margin,
            failing,
            checked: n * (n - 1) / 2,
        }
    }

    /// The two base arcs of radius `R` over `[0, 2Θ]`, sampled at
    /// `samples_per_radian`, and their reflections.
    pub fn base_arcs(&self, samples_per_radian: f64) -> Vec<Point> {
        let e = &self.base_dir;
        let f = Point::from([-e[1], e[0]]);
        let k = ((2.0 * self.theta * samples_per_radian).ceil() as usize).max(2);
        let mut out = Vec::with_capacity(2 * (k + 1));
        for s in 0..=k {
            let a = 2.0 * self.theta * s as f64 / k as f64;
            let p = self
                .center
                .offset(e, self.radius * a.cos())
                .offset(&f, self.radius * a.sin());
            out.push(&(&self.center * 2.0) - &p);
            out.push(p);
        }
        out
    }

    /// Rungs, their reflections and the base arcs.
    pub fn cloud(&self, samples_per_radian: f64) -> Vec<Point> {
        let mut pts = self.points.clone();
        pts.extend(self.antipodes.iter().cloned());
        pts.extend(self.base_arcs(samples_per_radian));
        pts
    }

    /// Hull of [`LadderD1::cloud`] at the default density.
    pub fn hull(&self, tol: f64) -> Result<Polytope> {
        build_hull(&self.cloud(DEFAULT_SAMPLES_PER_RADIAN), tol)
    }

    /// The rung chords as an inventory, certified against the ladder cloud.
    pub fn inventory(&self) -> NormalInventory {
        let cloud = self.cloud(DEFAULT_SAMPLES_PER_RADIAN);
        let diam = 2.0 * (self.radius + self.n as f64 * self.delta);
        let margin = |x: &Point, u: &Point| {
            cloud.iter().map(|v| u.dot(&(v - x))).fold(f64::INFINITY, f64::min) / diam
        };
        let isolated = self
            .rung_chords()
            .into_iter()
            .map(|c| {
                let u = c.direction().expect("nondegenerate");
                IsolatedNormal {
                    length: c.length(),
                    certificate: Certificate {
                        tail_support: margin(&c.tail, &u),
                        head_support: margin(&c.head, &-&u),
                        membership: 0.0,
                        tangential_residual: None,
                    },
                    chord: c,
                    tail_face: None,
                    head_face: None,
                    interior: true,
                }
            })
            .collect();
        NormalInventory::new(2, isolated, vec![], false)
    }
}

/// Points `v_ij = r_ij φ(iT/m², jT/m)` on a spherical patch with
/// `r_ij = R + A - (j m² + i)δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderD2 {
    pub radius: f64,
    pub a: f64,
    pub t: f64,
    pub m: usize,
    pub delta: f64,
    /// Row-major over `(i, j)` with `j` outer.
    pub points: Vec<Point>,
    pub radii: Vec<f64>,
    pub indices: Vec<(usize, usize)>,
}

pub fn sphere_ladder_d2(radius: f64, a: f64, t: f64, m: usize) -> Result<LadderD2> {
    if !(radius > 0.0) {
        return Err(Error::Parameter(format!("R must be positive, got {radius}")));
    }
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("A must be positive, got {a}")));
    }
    if !(t > 0.0 && t < std::f64::consts::FRAC_PI_4) {
        return Err(Error::Parameter(format!("T must lie in (0, π/4), got {t}")));
    }
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    let m2 = m * m;
    let delta = radius * t * t / (16.0 * (m2 * m2) as f64);
    let mut points = Vec::with_capacity(m2 * m);
    let mut radii = Vec::with_capacity(m2 * m);
    let mut indices = Vec::with_capacity(m2 * m);
    for j in 0..m {
        for i in 0..m2 {
            let r = radius + a - (j * m2 + i) as f64 * delta;
            let lam = i as f64 * t / m2 as f64;
            let th = j as f64 * t / m as f64;
            points.push(Point::from([
                r * lam.cos() * th.cos(),
                r * lam.cos() * th.sin(),
                r * lam.sin(),
            ]));
            radii.push(r);
            indices.push((i, j));
        }
    }
    Ok(LadderD2 {
        radius,
        a,
        t,
        m,
        delta,
        points,
        radii,
        indices,
    })
}

impl LadderD2 {
    /// `3 ln m / (4 ln m - ln(RT²/32))`, tending to 3/4.
    pub fn dimension_ratio(&self) -> f64 {
        let lm = (self.m as f64).ln();
        3.0 * lm / (4.0 * lm - (self.radius * self.t * self.t / 32.0).ln())
    }

    /// Chords `(v_ij, -v_ij)`.
    pub fn chords(&self) -> Vec<Chord> {
        self.points.iter().map(|v| Chord::new(v.clone(), -v)).collect()
    }

    /// Ladder points and their antipodes.
    pub fn cloud(&self) -> Vec<Point> {
        let mut pts = self.points.clone();
        pts.extend(self.points.iter().map(|v| -v));
        pts
    }

    pub fn hull(&self, tol: f64) -> Result<Polytope> {
        build_hull(&self.cloud(), tol)
    }
}

/// Evaluates `⟨v', v' - v⟩ > 0` over all ordered pairs of distinct ladder points.
pub fn acute_check_d2(ladder: &LadderD2) -> AcuteCheck {
    acute_check_points(&ladder.points)
}

pub(crate) fn acute_check_points(points: &[Point]) -> AcuteCheck {
    let n = points.len();
    let rows: Vec<(f64, Vec<(usize, usize)>)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let vp = &points[k];
            let nn = vp.norm_sq();
            let mut min = f64::INFINITY;
            let mut bad = Vec::new();
            for (l, v) in points.iter().enumerate() {
                if l != k {
                    let d = nn - vp.dot(v);
                    min = min.min(d);
                    if d <= 0.0 {
                        bad.push((l, k));
                    }
                }
            }
            (min, bad)
        })
        .collect();
    let min_margin = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let mut failing: Vec<(usize, usize)> = rows.into_iter().flat_map(|r| r.1).collect();
    let pass = failing.is_empty();
    failing.truncate(100);
    AcuteCheck {
        pass,
        min_margin,
        failing,
        checked: n * n.saturating_sub(1),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdScan {
    /// Smallest `m` from which every scanned size passes.
    pub m0: Option<usize>,
    /// `(m, pass, min_margin)`.
    pub results: Vec<(usize, bool, f64)>,
}

/// Runs [`acute_check_d2`] for `m = 1..=m_max`.
pub fn scan_acute_threshold(radius: f64, a: f64, t: f64, m_max: usize) -> Result<ThresholdScan> {
    let mut results = Vec::new();
    for m in 1..=m_max {
        let l = sphere_ladder_d2(radius, a, t, m)?;
        let c = acute_check_d2(&l);
        results.push((m, c.pass, c.min_margin));
    }
    let m0 = results
        .iter()
        .rposition(|r| !r.1)
        .map_or(Some(1), |k| (k + 1 < results.len()).then(|| results[k + 1].0));
    Ok(ThresholdScan { m0, results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ladder_arithmetic() {
        let l = arc_ladder_d1(1.0, 0.5, 2).unwrap();
        assert_eq!(l.delta, 0.015625);
        assert_eq!(l.radii(), vec![1.015625, 1.03125]);
        for (v, r) in l.points.iter().zip(l.radii()) {
            assert!((v.norm() - r).abs() < 1e-15);
        }
        assert!(l.acute_check().pass);
    }

    #[test]
    fn cosine_bound_gate() {
        let e = arc_ladder_d1(1.0, 3.0, 10).unwrap_err();
        assert!(e.to_string().contains("cos θ"));
        assert!(arc_ladder_d1(1.0, 2.0, 10).is_ok());
    }

    #[test]
    fn ladder_chords_are_strict_maxima_on_the_hull() {
        let l = arc_ladder_d1(1.0, 0.5, 10).unwrap();
        let hull = l.hull(1e-9).unwrap();
        for c in l.rung_chords() {
            let r = crate::analysis::classify_maximizing(&hull, &c, 0.1, crate::analysis::DEFAULT_ALPHA, 1e-9)
                .unwrap();
            assert!(r.is_strict(), "{r:?}");
        }
    }

    #[test]
    fn sphere_ladder_arithmetic() {
        let l = sphere_ladder_d2(1.0, 0.1, 0.4, 3).unwrap();
        assert!((l.delta - 0.16 / 1296.0).abs() < 1e-18);
        assert_eq!(l.points.len(), 27);
        assert!((l.radii[0] - 1.1).abs() < 1e-15);
        let one = sphere_ladder_d2(1.0, 0.1, 0.4, 1).unwrap();
        assert_eq!(one.points, vec![Point::from([1.1, 0.0, 0.0])]);
        assert!(acute_check_d2(&one).pass);
        assert!(sphere_ladder_d2(1.0, 0.1, 0.8, 3).is_err());
    }

    #[test]
    fn collinear_points_fail() {
        let v = Point::from([1.0, 2.0, 0.5]);
        let c = acute_check_points(&[v.clone(), &v * 0.5]);
        assert!(!c.pass);
        assert_eq!(c.failing, vec![(0, 1)]);
    }

    #[test]
    fn threshold_scan() {
        let s = scan_acute_threshold(1.0, 0.1, 0.4, 4).unwrap();
        assert_eq!(s.results.len(), 4);
        assert!(s.m0.is_some());
    }
}
