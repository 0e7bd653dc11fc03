use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::directions::unit_angle;
use crate::error::{Error, Result};
use crate::geometry::Chord;
use crate::smooth::SupportBody;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiametralMap {
    /// Polar angle of each tail about the body's centre.
    pub tail_params: Vec<f64>,
    /// Polar angle of the corresponding head.
    pub head_params: Vec<f64>,
    /// Head parameter nondecreasing modulo `2π`, up to one sample step.
    pub monotone: bool,
    /// The affine diameter `(∇h(u), ∇h(-u))` for each sampled `u`.
    pub affine_diameters: Vec<Chord>,
}

/// Samples the map sending the touching point of `u` to that of `-u` over a
/// uniform net of `samples` directions.
pub fn diametral_map_d1(body: &SupportBody, samples: usize) -> Result<DiametralMap> {
    if body.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: body.dim(),
        });
    }
    if !body.is_smooth() {
        return Err(Error::NotStrictlyConvex("polyline boundary".into()));
    }
    if samples < 3 {
        return Err(Error::Parameter("need at least 3 samples".into()));
    }
    let c = body.center();
    let param = |x: &crate::geometry::Point| {
        let d = x - &c;
        d[1].atan2(d[0])
    };
    let mut tails = Vec::with_capacity(samples);
    let mut heads = Vec::with_capacity(samples);
    let mut chords = Vec::with_capacity(samples);
    for k in 0..samples {
        let u = unit_angle(TAU * k as f64 / samples as f64);
        let x = body.touching(&u);
        let y = body.touching(&-&u);
        tails.push(param(&x));
        heads.push(param(&y));
        chords.push(Chord::new(x, y));
    }
    let step = TAU / samples as f64;
    let wrap = |d: f64| (d + TAU / 2.0).rem_euclid(TAU) - TAU / 2.0;
    let mut total_head = 0.0;
    let mut total_tail = 0.0;
    let mut monotone = true;
    for k in 0..samples {
        let n = (k + 1) % samples;
        let dt = wrap(tails[n] - tails[k]);
        let dh = wrap(heads[n] - heads[k]);
        total_tail += dt;
        total_head += dh;
        if dt < -step || dh < -step {
            monotone = false;
        }
    }
    // one full turn each
    if (total_tail - TAU).abs() > step || (total_head - TAU).abs() > step {
        monotone = false;
    }
    Ok(DiametralMap {
        tail_params: tails,
        head_params: heads,
        monotone,
        affine_diameters: chords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_is_antipodal() {
        let e = SupportBody::parse("ellipse:2,1").unwrap();
        let m = diametral_map_d1(&e, 256).unwrap();
        assert!(m.monotone);
        for c in &m.affine_diameters {
            assert!((&c.tail + &c.head).norm() < 1e-12);
        }
    }

    #[test]
    fn perturbed_ball_is_monotone() {
        let b = SupportBody::harmonic(1.0, 0.05, 3, 0.0).unwrap();
        let m = diametral_map_d1(&b, 512).unwrap();
        assert!(m.monotone);
    }

    #[test]
    fn rejects_polygons_and_space() {
        assert!(diametral_map_d1(&SupportBody::parse("square:1").unwrap(), 32).is_err());
        assert!(diametral_map_d1(&SupportBody::ball(1.0, 3).unwrap(), 32).is_err());
    }
}
