//! Vector and affine primitives, the chord metric, and set distances.
//!
//! The ambient dimension is a runtime value. Every other module builds on the
//! types here: [`Point`], [`Chord`], [`AffineSubspace`] and [`Hyperplane`].

mod hausdorff;
pub mod linalg;
mod minnorm;
mod point;

use serde::{Deserialize, Serialize};

pub use hausdorff::{hausdorff_distance, HausdorffReport};
pub use minnorm::{distance_to_hull, min_norm_point, MinNormPoint};
pub use point::Point;

use crate::error::{Error, Result};

/// Default absolute tolerance, applied after scaling inputs to unit diameter.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest supported ambient dimension `d + 1`.
pub const MAX_AMBIENT_DIM: usize = 8;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_AMBIENT_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// An oriented chord `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub tail: Point,
    pub head: Point,
}

impl Chord {
    pub fn new(tail: Point, head: Point) -> Self {
        assert_eq!(tail.dim(), head.dim(), "chord endpoints differ in dimension");
        Chord { tail, head }
    }

    /// Euclidean length `‖head - tail‖`.
    pub fn length(&self) -> f64 {
        self.tail.dist(&self.head)
    }

    /// The chord metric `max(‖tail₁ - tail₂‖, ‖head₁ - head₂‖)`.
    pub fn distance(&self, other: &Chord) -> f64 {
        self.tail.dist(&other.tail).max(self.head.dist(&other.head))
    }

    /// Distance between the underlying non-oriented chords.
    pub fn unoriented_distance(&self, other: &Chord) -> f64 {
        self.distance(other).min(self.reversed().distance(other))
    }

    pub fn reversed(&self) -> Chord {
        Chord {
            tail: self.head.clone(),
            head: self.tail.clone(),
        }
    }

    pub fn midpoint(&self) -> Point {
        self.tail.midpoint(&self.head)
    }

    /// `head - tail`.
    pub fn vector(&self) -> Point {
        &self.head - &self.tail
    }

    /// Unit direction from tail to head; `None` for a degenerate chord.
    pub fn direction(&self) -> Option<Point> {
        self.vector().normalized()
    }

    pub fn dim(&self) -> usize {
        self.tail.dim()
    }
}

/// Length of an oriented chord.
pub fn chord_length(c: &Chord) -> f64 {
    c.length()
}

/// The max-endpoint chord metric.
pub fn chord_distance(c1: &Chord, c2: &Chord) -> f64 {
    c1.distance(c2)
}

/// An affine subspace `base + span(basis)` with an orthonormal basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub base: Point,
    pub basis: Vec<Point>,
}

impl AffineSubspace {
    /// Build from a base point and arbitrary spanning directions.
    pub fn new(base: Point, directions: &[Point], tol: f64) -> Self {
        let basis = linalg::orthonormalize(directions, tol);
        AffineSubspace { base, basis }
    }

    /// Affine hull of a nonempty point list.
    pub fn spanned_by(points: &[&Point], tol: f64) -> Result<Self> {
        let base = (*points.first().ok_or(Error::EmptyInput("affine span"))?).clone();
        let basis = linalg::affine_basis(points, tol);
        Ok(AffineSubspace { base, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    /// Orthogonal projection of `p` onto the subspace.
    pub fn project(&self, p: &Point) -> Point {
        let rel = p - &self.base;
        let mut out = self.base.clone();
        for q in &self.basis {
            out = out.offset(q, q.dot(&rel));
        }
        out
    }
}

/// A hyperplane `{x : ⟨normal, x⟩ = offset}` with unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Point,
    pub offset: f64,
}

impl Hyperplane {
    /// Hyperplane through `point` with the given (not necessarily unit) normal.
    pub fn through(point: &Point, normal: &Point) -> Option<Self> {
        let normal = normal.normalized()?;
        let offset = normal.dot(point);
        Some(Hyperplane { normal, offset })
    }

    /// Signed distance `⟨normal, p⟩ - offset`.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Result of [`subspace_nearest_pair`].
#[derive(Clone, Debug, PartialEq)]
pub struct NearestPair {
    pub distance: f64,
    pub on_a: Point,
    pub on_b: Point,
    /// `false` when the direction spaces meet outside the origin, so the
    /// minimizers form a family; `(on_a, on_b)` is then its minimum-norm member.
    pub unique: bool,
    /// Orthonormal basis of the intersection of the two direction spaces.
    pub common_directions: Vec<Point>,
}

/// Closest pair of points between two affine subspaces.
pub fn subspace_nearest_pair(a: &AffineSubspace, b: &AffineSubspace, tol: f64) -> NearestPair {
    let n = a.ambient_dim();
    assert_eq!(n, b.ambient_dim(), "subspaces live in different dimensions");
    let ka = a.dim();
    let kb = b.dim();
    let diff = &b.base - &a.base;
    if ka + kb == 0 {
        return NearestPair {
            distance: diff.norm(),
            on_a: a.base.clone(),
            on_b: b.base.clone(),
            unique: true,
            common_directions: Vec::new(),
        };
    }
    // Columns [U, -V]; solve U s - V t = b - a in the least-squares sense.
    let mut cols: Vec<Point> = a.basis.clone();
    cols.extend(b.basis.iter().map(|v| -v));
    let m = linalg::to_matrix(&cols, n);
    let svd = m.clone().svd(true, true);
    let cutoff = tol; // columns are unit vectors
    let rhs = linalg::to_dvector(&diff);
    let sol = svd
        .solve(&rhs, cutoff)
        .unwrap_or_else(|_| nalgebra::DVector::zeros(ka + kb));

    let mut on_a = a.base.clone();
    for (i, q) in a.basis.iter().enumerate() {
        on_a = on_a.offset(q, sol[i]);
    }
    let mut on_b = b.base.clone();
    for (j, q) in b.basis.iter().enumerate() {
        on_b = on_b.offset(q, sol[ka + j]);
    }

    // Null space of [U, -V] gives the shared directions w = U s = V t.
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sv = &svd.singular_values;
    let mut shared = Vec::new();
    let total = ka + kb;
    for row in 0..total {
        let sigma = if row < sv.len() { sv[row] } else { 0.0 };
        if sigma <= cutoff && row < v_t.nrows() {
            let mut w = Point::zeros(n);
            for (i, q) in a.basis.iter().enumerate() {
                w = w.offset(q, v_t[(row, i)]);
            }
            shared.push(w);
        }
    }
    // Rows of V^T beyond min(n, ka+kb) are not returned by a thin SVD;
    // recover the missing null directions directly when the system is wide.
    if total > n {
        let rank = sv.iter().filter(|s| **s > cutoff).count();
        let nullity = total - rank;
        if shared.len() < nullity {
            shared = null_space_directions(&cols, a, ka, n, cutoff);
        }
    }
    let common_directions = linalg::orthonormalize(&shared, 1e-7);
    NearestPair {
        distance: on_a.dist(&on_b),
        on_a,
        on_b,
        unique: common_directions.is_empty(),
        common_directions,
    }
}

// Null space of the n x (ka+kb) matrix `cols` via the SVD of its Gram matrix,
// which is square and therefore returns a full V.
fn null_space_directions(
    cols: &[Point],
    a: &AffineSubspace,
    ka: usize,
    n: usize,
    cutoff: f64,
) -> Vec<Point> {
    let total = cols.len();
    let gram = nalgebra::DMatrix::from_fn(total, total, |i, j| cols[i].dot(&cols[j]));
    let eig = gram.symmetric_eigen();
    let mut out = Vec::new();
    for k in 0..total {
        if eig.eigenvalues[k].abs().sqrt() <= cutoff.max(1e-7) {
            let mut w = Point::zeros(n);
            for i in 0..ka {
                w = w.offset(&a.basis[i], eig.eigenvectors[(i, k)]);
            }
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chord(a: [f64; 2], b: [f64; 2]) -> Chord {
        Chord::new(a.into(), b.into())
    }

    #[test]
    fn chord_lengths() {
        assert_eq!(chord_length(&chord([0.0, 0.0], [3.0, 4.0])), 5.0);
        assert_eq!(chord_length(&chord([1.0, 1.0], [1.0, 1.0])), 0.0);
        assert_eq!(chord_length(&chord([-2.0, 0.0], [2.0, 0.0])), 4.0);
    }

    #[test]
    fn chord_distances() {
        let c = chord([0.0, 0.0], [1.0, 0.0]);
        assert_eq!(chord_distance(&c, &chord([0.0, 1.0], [1.0, 0.0])), 1.0);
        assert_eq!(chord_distance(&c, &c), 0.0);
        let d = chord_distance(&c, &chord([0.3, 0.0], [1.0, 0.4]));
        assert!((d - 0.4).abs() < 1e-15);
    }

    fn line(base: [f64; 3], dir: [f64; 3]) -> AffineSubspace {
        AffineSubspace::new(base.into(), &[dir.into()], DEFAULT_TOL)
    }

    #[test]
    fn skew_perpendicular_lines() {
        let a = line([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let b = line([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]);
        let np = subspace_nearest_pair(&a, &b, DEFAULT_TOL);
        assert!((np.distance - 1.0).abs() < 1e-14);
        assert!(np.unique);
        assert!(np.on_a.dist(&Point::from([0.0, 0.0, 0.0])) < 1e-14);
        assert!(np.on_b.dist(&Point::from([0.0, 0.0, 1.0])) < 1e-14);
    }

    #[test]
    fn parallel_lines_are_not_unique() {
        let a = line([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let b = line([0.0, 1.0, 0.0], [1.0, 0.0, 0.0]);
        let np = subspace_nearest_pair(&a, &b, DEFAULT_TOL);
        assert!((np.distance - 1.0).abs() < 1e-14);
        assert!(!np.unique);
        assert_eq!(np.common_directions.len(), 1);
    }

    #[test]
    fn intersecting_lines() {
        let a = line([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let b = line([2.0, -1.0, 0.0], [0.0, 1.0, 0.0]);
        let np = subspace_nearest_pair(&a, &b, DEFAULT_TOL);
        assert!(np.distance < 1e-14);
        assert!(np.unique);
    }

    #[test]
    fn wide_system_finds_all_shared_directions() {
        // Two planes in R^3 meet along a line.
        let a = AffineSubspace::new(
            Point::from([0.0, 0.0, 0.0]),
            &[[1.0, 0.0, 0.0].into(), [0.0, 1.0, 0.0].into()],
            DEFAULT_TOL,
        );
        let b = AffineSubspace::new(
            Point::from([0.0, 0.0, 2.0]),
            &[[1.0, 0.0, 0.0].into(), [0.0, 0.0, 1.0].into()],
            DEFAULT_TOL,
        );
        let np = subspace_nearest_pair(&a, &b, DEFAULT_TOL);
        assert!(np.distance < 1e-12);
        assert_eq!(np.common_directions.len(), 1);
        assert!(np.common_directions[0][0].abs() > 1.0 - 1e-12);
    }

    #[test]
    fn point_to_point_pair() {
        let a = AffineSubspace::new(Point::from([1.0, 2.0]), &[], DEFAULT_TOL);
        let b = AffineSubspace::new(Point::from([4.0, 6.0]), &[], DEFAULT_TOL);
        let np = subspace_nearest_pair(&a, &b, DEFAULT_TOL);
        assert_eq!(np.distance, 5.0);
    }
}
