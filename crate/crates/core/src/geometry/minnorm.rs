use nalgebra::{DMatrix, DVector};

use super::{linalg, Point};

/// Minimum-norm point of a convex hull together with its convex weights.
#[derive(Clone, Debug)]
pub struct MinNormPoint {
    pub point: Point,
    /// `(index into the input, weight)` for the active generators.
    pub weights: Vec<(usize, f64)>,
}

impl MinNormPoint {
    pub fn norm(&self) -> f64 {
        self.point.norm()
    }
}

/// Wolfe's algorithm for the point of `conv(points)` closest to the origin.
///
/// Returns `None` for an empty input.
pub fn min_norm_point(points: &[Point]) -> Option<MinNormPoint> {
    let first = points.first()?;
    let dim = first.dim();
    let scale = points.iter().map(Point::norm_sq).fold(0.0, f64::max);
    if scale == 0.0 {
        return Some(MinNormPoint {
            point: Point::zeros(dim),
            weights: vec![(0, 1.0)],
        });
    }
    let eps = 1e-12 * scale;

    let start = (0..points.len())
        .min_by(|&a, &b| points[a].norm_sq().total_cmp(&points[b].norm_sq()))
        .expect("nonempty");
    let mut active: Vec<usize> = vec![start];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = points[start].clone();

    let max_outer = 50 * (points.len() + dim + 1);
    for _ in 0..max_outer {
        let xx = x.norm_sq();
        let (j, xq) = points
            .iter()
            .enumerate()
            .map(|(i, q)| (i, x.dot(q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        if xx - xq <= eps || active.contains(&j) {
            break;
        }
        active.push(j);
        lambda.push(0.0);

        loop {
            let mu = affine_min_norm(points, &active);
            if mu.iter().all(|&m| m > 1e-14) {
                lambda = mu;
                break;
            }
            let mut theta = 1.0;
            for (l, m) in lambda.iter().zip(&mu) {
                if *m <= 1e-14 && l - m > 0.0 {
                    theta = f64::min(theta, l / (l - m));
                }
            }
            for (l, m) in lambda.iter_mut().zip(&mu) {
                *l += theta * (m - *l);
            }
            let mut k = 0;
            while k < active.len() {
                if lambda[k] <= 1e-14 {
                    active.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            for l in lambda.iter_mut() {
                *l /= total;
            }
            if active.len() <= 1 {
                break;
            }
        }
        x = combine(points, &active, &lambda, dim);
    }
    Some(MinNormPoint {
        point: x,
        weights: active.into_iter().zip(lambda).collect(),
    })
}

fn combine(points: &[Point], active: &[usize], lambda: &[f64], dim: usize) -> Point {
    let mut x = Point::zeros(dim);
    for (&i, &l) in active.iter().zip(lambda) {
        x = x.offset(&points[i], l);
    }
    x
}

// Minimizer of ‖Σ μ_i q_i‖ subject to Σ μ_i = 1 over the active set.
fn affine_min_norm(points: &[Point], active: &[usize]) -> Vec<f64> {
    let k = active.len();
    let mut m = DMatrix::zeros(k + 1, k + 1);
    for a in 0..k {
        for b in 0..k {
            m[(a, b)] = points[active[a]].dot(&points[active[b]]);
        }
        m[(a, k)] = 1.0;
        m[(k, a)] = 1.0;
    }
    let mut rhs = DVector::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = linalg::solve(m.clone(), &rhs).unwrap_or_else(|| linalg::least_squares(m, &rhs, 1e-13));
    let mut mu: Vec<f64> = sol.iter().take(k).cloned().collect();
    let total: f64 = mu.iter().sum();
    if total.abs() > 1e-300 {
        for v in mu.iter_mut() {
            *v /= total;
        }
    }
    mu
}

/// Euclidean distance from `p` to `conv(points)`.
pub fn distance_to_hull(p: &Point, points: &[Point]) -> f64 {
    let shifted: Vec<Point> = points.iter().map(|q| q - p).collect();
    min_norm_point(&shifted).map_or(f64::INFINITY, |m| m.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point> {
        vec![
            [0.0, 0.0].into(),
            [1.0, 0.0].into(),
            [1.0, 1.0].into(),
            [0.0, 1.0].into(),
        ]
    }

    #[test]
    fn inside_is_zero() {
        assert!(distance_to_hull(&Point::from([0.3, 0.6]), &square()) < 1e-12);
    }

    #[test]
    fn edge_and_corner_distances() {
        let d = distance_to_hull(&Point::from([0.5, -2.0]), &square());
        assert!((d - 2.0).abs() < 1e-12);
        let d = distance_to_hull(&Point::from([2.0, 2.0]), &square());
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weights_reproduce_point() {
        let pts: Vec<Point> = vec![
            [1.0, 0.0, 1.0].into(),
            [0.0, 1.0, 1.0].into(),
            [-1.0, -1.0, 1.0].into(),
            [2.0, 2.0, 3.0].into(),
        ];
        let m = min_norm_point(&pts).unwrap();
        assert!((m.norm() - 1.0).abs() < 1e-12);
        let mut x = Point::zeros(3);
        for (i, w) in &m.weights {
            x = x.offset(&pts[*i], *w);
        }
        assert!(x.dist(&m.point) < 1e-12);
    }
}
