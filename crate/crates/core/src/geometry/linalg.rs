//! Small dense linear algebra on runtime-dimension vectors.

use nalgebra::{DMatrix, DVector};

use super::Point;

/// Orthonormal basis of `span(vectors)` by modified Gram-Schmidt.
///
/// A vector is discarded when its residual after projection drops below
/// `tol * (largest column norm)`. Each vector is orthogonalized twice.
pub fn orthonormalize(vectors: &[Point], tol: f64) -> Vec<Point> {
    let max_norm = vectors.iter().map(Point::norm).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return Vec::new();
    }
    let cutoff = tol * max_norm;
    let mut basis: Vec<Point> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dot(&w);
                w = w.offset(q, -c);
            }
        }
        let n = w.norm();
        if n > cutoff {
            basis.push(&w * (1.0 / n));
        }
    }
    basis
}

/// Dimension of the affine hull of `points`, with the same rank cutoff as
/// [`orthonormalize`].
pub fn affine_dim(points: &[&Point], tol: f64) -> usize {
    affine_basis(points, tol).len()
}

/// Orthonormal basis of the direction space of the affine hull of `points`.
pub fn affine_basis(points: &[&Point], tol: f64) -> Vec<Point> {
    match points.split_first() {
        None => Vec::new(),
        Some((base, rest)) => {
            let diffs: Vec<Point> = rest.iter().map(|p| *p - *base).collect();
            orthonormalize(&diffs, tol)
        }
    }
}

/// Orthonormal basis of the orthogonal complement of `span(basis)` in
/// dimension `dim`. `basis` must already be orthonormal.
pub fn complement(basis: &[Point], dim: usize) -> Vec<Point> {
    let mut all: Vec<Point> = basis.to_vec();
    let mut extra = Vec::new();
    // Try the coordinate axes in order of how much survives projection, so
    // the chosen completion is well conditioned.
    let mut candidates: Vec<(f64, usize)> = (0..dim)
        .map(|i| {
            let e = Point::basis(dim, i);
            let mut w = e;
            for q in &all {
                let c = q.dot(&w);
                w = w.offset(q, -c);
            }
            (w.norm(), i)
        })
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, i) in candidates {
        if all.len() == dim {
            break;
        }
        let mut w = Point::basis(dim, i);
        for _ in 0..2 {
            for q in &all {
                let c = q.dot(&w);
                w = w.offset(q, -c);
            }
        }
        let n = w.norm();
        if n > 1e-8 {
            let q = &w * (1.0 / n);
            all.push(q.clone());
            extra.push(q);
        }
    }
    extra
}

/// Unit normal of the hyperplane spanned by `dim - 1` independent vectors.
pub fn hyperplane_normal(directions: &[Point], dim: usize, tol: f64) -> Option<Point> {
    let basis = orthonormalize(directions, tol);
    if basis.len() + 1 != dim {
        return None;
    }
    complement(&basis, dim).into_iter().next()
}

pub(crate) fn to_matrix(columns: &[Point], rows: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, columns.len(), |r, c| columns[c][r])
}

pub(crate) fn to_dvector(p: &Point) -> DVector<f64> {
    DVector::from_column_slice(p.coords())
}

/// Numerical rank of the matrix whose columns are `columns`, using the
/// modified Gram-Schmidt cutoff `tol * (largest column norm)`.
pub fn column_rank(columns: &[Point], tol: f64) -> usize {
    orthonormalize(columns, tol).len()
}

/// Solve the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let lu = a.lu();
    let x = lu.solve(b)?;
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn least_squares(a: DMatrix<f64>, b: &DVector<f64>, rcond: f64) -> DVector<f64> {
    let svd = a.svd(true, true);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.solve(b, rcond * max_sv.max(f64::MIN_POSITIVE))
        .unwrap_or_else(|_| DVector::zeros(b.len()))
}
