use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};

/// Greedy maximal `delta`-separated subset size by farthest-point insertion
/// from `items[seed]`.
///
/// The result `N` satisfies `P_{2δ} ≤ N ≤ P_δ`.
pub fn packing_count_with<T, F>(items: &[T], delta: f64, seed: usize, dist: F) -> usize
where
    F: Fn(&T, &T) -> f64,
{
    if items.is_empty() {
        return 0;
    }
    let mut nearest: Vec<f64> = items.iter().map(|p| dist(p, &items[seed])).collect();
    let mut count = 1;
    loop {
        let (far, d) = nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, d)| if *d > acc.1 { (i, *d) } else { acc });
        if d < delta {
            return count;
        }
        count += 1;
        for (i, p) in items.iter().enumerate() {
            nearest[i] = nearest[i].min(dist(p, &items[far]));
        }
    }
}

fn lexicographic_min<'a, I: Iterator<Item = &'a [f64]>>(keys: I) -> usize {
    let mut best: Option<(usize, &[f64])> = None;
    for (i, k) in keys.enumerate() {
        let smaller = match best {
            None => true,
            Some((_, b)) => k.iter().zip(b).find(|(x, y)| x != y).is_some_and(|(x, y)| x < y),
        };
        if smaller {
            best = Some((i, k));
        }
    }
    best.map_or(0, |b| b.0)
}

/// [`packing_count_with`] in the Euclidean metric, seeded at the
/// lexicographically smallest point.
pub fn packing_count(points: &[Point], delta: f64) -> usize {
    let seed = lexicographic_min(points.iter().map(|p| p.coords()));
    packing_count_with(points, delta, seed, |a, b| a.dist(b))
}

/// [`packing_count_with`] in the chord metric, seeded at the
/// lexicographically smallest `(tail, head)`.
pub fn packing_count_chords(chords: &[Chord], delta: f64) -> usize {
    let keys: Vec<Vec<f64>> = chords
        .iter()
        .map(|c| c.tail.coords().iter().chain(c.head.coords()).copied().collect())
        .collect();
    let seed = lexicographic_min(keys.iter().map(|k| k.as_slice()));
    packing_count_with(chords, delta, seed, |a, b| a.distance(b))
}

/// Largest `delta`-separated subset by exhaustive search. Exponential; small inputs only.
pub fn brute_force_packing(points: &[Point], delta: f64) -> usize {
    let n = points.len();
    assert!(n <= 20, "brute force limited to 20 points");
    let ok: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && points[i].dist(&points[j]) >= delta)
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    fn grow(cands: u32, ok: &[u32], size: usize, best: &mut usize) {
        if size + cands.count_ones() as usize <= *best {
            return;
        }
        if cands == 0 {
            *best = size;
            return;
        }
        let i = cands.trailing_zeros() as usize;
        grow(cands & ok[i], ok, size + 1, best);
        grow(cands & !(1 << i), ok, size, best);
    }
    let mut best = 0;
    grow(if n == 0 { 0 } else { (1u32 << n) - 1 }, &ok, 0, &mut best);
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingReport {
    pub delta_ladder: Vec<f64>,
    pub counts: Vec<usize>,
    /// Least-squares slope of `ln P_δ` against `-ln δ`.
    pub slope_fit: f64,
    /// Smallest consecutive-rung slope, a lower box-dimension proxy.
    pub slope_min_window: f64,
    /// Largest consecutive-rung slope, an upper box-dimension proxy.
    pub slope_max_window: f64,
}

/// Geometric ladder with ratio 1/2 and 8 rungs from `diameter / 4`.
pub fn default_ladder(diameter: f64) -> Vec<f64> {
    (0..8).map(|k| 0.25 * diameter * 0.5f64.powi(k)).collect()
}

pub fn box_dimension_estimate(points: &[Point], ladder: &[f64]) -> Result<PackingReport> {
    box_dimension_with(ladder, |d| packing_count(points, d))
}

/// [`box_dimension_estimate`] for a chord set under the chord metric.
pub fn box_dimension_chords(chords: &[Chord], ladder: &[f64]) -> Result<PackingReport> {
    box_dimension_with(ladder, |d| packing_count_chords(chords, d))
}

pub(crate) fn box_dimension_with(ladder: &[f64], count: impl Fn(f64) -> usize) -> Result<PackingReport> {
    if ladder.len() < 4 {
        return Err(Error::Parameter(format!(
            "ladder needs at least 4 rungs, got {}",
            ladder.len()
        )));
    }
    if ladder.iter().any(|d| !(*d > 0.0)) || ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("ladder must be positive and strictly decreasing".into()));
    }
    let counts: Vec<usize> = ladder.iter().map(|d| count(*d)).collect();
    if counts.contains(&0) {
        return Err(Error::EmptyInput("point set"));
    }
    let xs: Vec<f64> = ladder.iter().map(|d| -d.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|c| (*c as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let windows: Vec<f64> = (1..xs.len())
        .map(|k| (ys[k] - ys[k - 1]) / (xs[k] - xs[k - 1]))
        .collect();
    Ok(PackingReport {
        delta_ladder: ladder.to_vec(),
        counts,
        slope_fit: sxy / sxx,
        slope_min_window: windows.iter().cloned().fold(f64::INFINITY, f64::min),
        slope_max_window: windows.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    })
}
