use serde::Serialize;

use crate::directions::{self, tangent_basis};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, Chord, Point};
use crate::polytope::{build_hull, Polytope};

#[derive(Clone, Debug, Serialize)]
pub struct CapGraft {
    pub polytope: Polytope,
    pub center: Point,
    pub radius: f64,
    pub hausdorff: f64,
    /// Chords through the centre of length `2R` joining antipodal cap
    /// samples, each passing the support check at both feet.
    pub cap_chords: Vec<Chord>,
}

fn validate_chord(p: &Polytope, b: &Chord, tol: f64) -> Result<Point> {
    if b.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: b.dim(),
        });
    }
    let e = b
        .direction()
        .ok_or_else(|| Error::NotDoubleNormal("degenerate chord".into()))?;
    let p = p.clone().with_tol(tol);
    if !p.support_check(&b.tail, &e)? || !p.support_check(&b.head, &-&e)? {
        return Err(Error::NotDoubleNormal("support check fails at a foot".into()));
    }
    Ok(e)
}

// Unit vectors of the cap `{⟨w, e⟩ ≥ cos α}` around `e`.
fn cap_directions(e: &Point, alpha: f64, per_radian: f64) -> Vec<Point> {
    let t = tangent_basis(e);
    let rings = ((alpha * per_radian).ceil() as usize).max(1);
    let mut out = vec![e.clone()];
    for r in 1..=rings {
        let phi = alpha * r as f64 / rings as f64;
        let count = match t.len() {
            0 => 0,
            1 => 2,
            2 => ((std::f64::consts::TAU * phi.sin() * per_radian).ceil() as usize).max(3),
            k => ((per_radian * phi.sin()).powi(k as i32 - 1).ceil() as usize).clamp(k + 1, 4096),
        };
        for w in directions::sphere_net(t.len(), count, r as u64) {
            let mut d = e * phi.cos();
            for (q, c) in t.iter().zip(w.coords()) {
                d = d.offset(q, phi.sin() * c);
            }
            out.push(d);
        }
    }
    out
}

/// Discretized `conv(P ∪ (B̄(o, R) \ Δ))` where `o` is the midpoint of `b`
/// and `Δ` the open slab between the hyperplanes through the feet normal to
/// `b`. Fails with [`Error::CapGraftExceeds`] unless the result is within
/// `epsilon` of `P`.
pub fn spherical_cap_graft(
    p: &Polytope,
    b: &Chord,
    radius: f64,
    epsilon: f64,
    samples_per_radian: f64,
    tol: f64,
) -> Result<CapGraft> {
    let e = validate_chord(p, b, tol)?;
    let half = 0.5 * b.length();
    if !(radius > half * (1.0 + tol)) {
        return Err(Error::Parameter(format!(
            "R = {radius} must exceed half the chord length {half}"
        )));
    }
    if !(epsilon > 0.0) || !(samples_per_radian > 0.0) {
        return Err(Error::Parameter("epsilon and resolution must be positive".into()));
    }
    let o = b.midpoint();
    let alpha = (half / radius).acos();
    let dirs = cap_directions(&e, alpha, samples_per_radian);
    let mut pts: Vec<Point> = p.vertices().to_vec();
    for w in &dirs {
        pts.push(o.offset(w, radius));
        pts.push(o.offset(w, -radius));
    }
    let q = build_hull(&pts, tol)?;
    let h = hausdorff_distance(p.vertices(), q.vertices())?;
    if h.distance >= epsilon {
        return Err(Error::CapGraftExceeds {
            distance: h.distance,
            epsilon,
        });
    }
    let q = q.with_tol(tol);
    let mut cap_chords = Vec::new();
    for w in &dirs {
        let c = Chord::new(o.offset(w, -radius), o.offset(w, radius));
        if q.contains(&c.tail)
            && q.contains(&c.head)
            && q.support_margin(&c.tail, w) >= -tol
            && q.support_margin(&c.head, &-w) >= -tol
        {
            cap_chords.push(c);
        }
    }
    Ok(CapGraft {
        polytope: q,
        center: o,
        radius,
        hausdorff: h.distance,
        cap_chords,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RectangleGraft {
    pub polytope: Polytope,
    /// `(x₃, y₃)` and `(x₃', y₃')`.
    pub diagonals: [Chord; 2],
    /// Smallest `⟨g, v - foot⟩` over the vertices of `P`, per diagonal foot.
    pub separations: [f64; 4],
    pub hausdorff: f64,
}

/// Hull of `P` with a thin rectangle centred at the midpoint of `b`, long
/// side parallel to `b` of length `ℓ(b) + 2 extra_len`, short side `width`
/// along `side` (default: the first direction orthogonal to `b`).
///
/// The hyperplanes normal to each rectangle diagonal at its endpoints must
/// strictly separate `P`; otherwise [`Error::WidthTooLarge`] names the
/// offending foot.
pub fn rectangle_graft(
    p: &Polytope,
    b: &Chord,
    extra_len: f64,
    width: f64,
    side: Option<&Point>,
    tol: f64,
) -> Result<RectangleGraft> {
    let e = validate_chord(p, b, tol)?;
    if !(extra_len > 0.0) {
        return Err(Error::Parameter(format!("extra_len must be positive, got {extra_len}")));
    }
    if !(width >= 10.0 * tol) {
        return Err(Error::Parameter(format!(
            "width {width} below the degenerate limit {}",
            10.0 * tol
        )));
    }
    let f = match side {
        Some(s) => s
            .reject(&e)
            .normalized()
            .ok_or_else(|| Error::Parameter("side direction parallel to the chord".into()))?,
        None => tangent_basis(&e).remove(0),
    };
    let o = b.midpoint();
    let l = b.length() + 2.0 * extra_len;
    let corner = |a: f64, c: f64| o.offset(&e, a * l / 2.0).offset(&f, c * width / 2.0);
    let x3 = corner(-1.0, -1.0);
    let x3p = corner(-1.0, 1.0);
    let y3 = corner(1.0, 1.0);
    let y3p = corner(1.0, -1.0);
    let diagonals = [Chord::new(x3.clone(), y3.clone()), Chord::new(x3p.clone(), y3p.clone())];

    let names = ["x3", "y3", "x3'", "y3'"];
    let mut separations = [0.0; 4];
    let scale = p.diameter();
    for (k, d) in diagonals.iter().enumerate() {
        let g = d.direction().expect("nondegenerate");
        let at_tail = p
            .vertices()
            .iter()
            .map(|v| g.dot(&(v - &d.tail)))
            .fold(f64::INFINITY, f64::min);
        let at_head = p
            .vertices()
            .iter()
            .map(|v| g.dot(&(&d.head - v)))
            .fold(f64::INFINITY, f64::min);
        separations[2 * k] = at_tail;
        separations[2 * k + 1] = at_head;
        for (s, name) in [(at_tail, names[2 * k]), (at_head, names[2 * k + 1])] {
            if s <= 10.0 * tol * scale {
                return Err(Error::WidthTooLarge {
                    separation: s,
                    foot: name,
                });
            }
        }
    }
    let mut pts = p.vertices().to_vec();
    pts.extend([x3, x3p, y3, y3p]);
    let q = build_hull(&pts, tol)?;
    let h = hausdorff_distance(p.vertices(), q.vertices())?;
    Ok(RectangleGraft {
        polytope: q,
        diagonals,
        separations,
        hausdorff: h.distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::DEFAULT_SAMPLES_PER_RADIAN;
    use crate::analysis::{classify_maximizing, DEFAULT_ALPHA};
    use crate::polytope::{enumerate_double_normals, shapes};

    fn square2() -> Polytope {
        build_hull(
            &[
                Point::from([-1.0, -1.0]),
                Point::from([1.0, -1.0]),
                Point::from([1.0, 1.0]),
                Point::from([-1.0, 1.0]),
            ],
            1e-9,
        )
        .unwrap()
    }

    fn diagonal() -> Chord {
        Chord::new(Point::from([-1.0, -1.0]), Point::from([1.0, 1.0]))
    }

    #[test]
    fn cap_graft_on_square() {
        let g = spherical_cap_graft(&square2(), &diagonal(), 1.43, 0.2, DEFAULT_SAMPLES_PER_RADIAN, 1e-9).unwrap();
        assert!(g.hausdorff < 0.2);
        assert!(!g.cap_chords.is_empty());
        for c in &g.cap_chords {
            assert!((c.length() - 2.86).abs() < 1e-12);
        }
        let inv = enumerate_double_normals(&g.polytope, 1e-9).unwrap();
        let long = inv.isolated.iter().filter(|n| (n.length - 2.86).abs() < 1e-9).count();
        assert!(long >= g.cap_chords.len());
    }

    #[test]
    fn cap_graft_limits() {
        let r = spherical_cap_graft(&square2(), &diagonal(), 1.45, 0.2, DEFAULT_SAMPLES_PER_RADIAN, 1e-9);
        assert!(matches!(r, Err(Error::CapGraftExceeds { .. })));
        let r = spherical_cap_graft(&square2(), &diagonal(), 2f64.sqrt(), 0.2, DEFAULT_SAMPLES_PER_RADIAN, 1e-9);
        assert!(matches!(r, Err(Error::Parameter(_))));
    }

    #[test]
    fn rectangle_graft_on_square() {
        let g = rectangle_graft(&square2(), &diagonal(), 0.05, 0.02, None, 1e-9).unwrap();
        let inv = enumerate_double_normals(&g.polytope, 1e-9).unwrap();
        for d in &g.diagonals {
            assert!(inv.isolated.iter().any(|n| n.chord.unoriented_distance(d) < 1e-9));
            let c = classify_maximizing(&g.polytope, d, 0.01, DEFAULT_ALPHA, 1e-9).unwrap();
            assert!(c.is_strict());
        }
        assert!(g.hausdorff <= 0.05 + 0.02);
        assert!(rectangle_graft(&square2(), &diagonal(), 0.05, 1e-9, None, 1e-9).is_err());
    }

    #[test]
    fn rectangle_graft_on_triangle_altitude() {
        let tri = shapes::equilateral_triangle();
        let v = tri.vertices();
        let alt = Chord::new(v[0].clone(), v[1].midpoint(&v[2]));
        let g = rectangle_graft(&tri, &alt, 0.05, 0.02, None, 1e-9).unwrap();
        for d in &g.diagonals {
            assert!(classify_maximizing(&g.polytope, d, 0.01, DEFAULT_ALPHA, 1e-9).unwrap().is_strict());
        }
        let wide = rectangle_graft(&tri, &alt, 0.05, 0.2, None, 1e-9);
        assert!(matches!(wide, Err(Error::WidthTooLarge { .. })));
    }
}
