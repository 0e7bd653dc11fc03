use rayon::prelude::*;
use serde::Serialize;

use super::Polytope;
use crate::geometry::{linalg, Point};

/// A pair of index sets violating the standardness condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// `dim(→X₁ ∩ →X₂)` as computed.
    pub intersection_dim: usize,
    /// `max(0, dim →X₁ + dim →X₂ - d - 1)`.
    pub required: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StandardReport {
    pub standard: bool,
    pub witnesses: Vec<Witness>,
    /// Number of pairs examined.
    pub checked: usize,
}

struct Span {
    indices: Vec<usize>,
    basis: Vec<Point>,
}

fn span(points: &[Point], indices: Vec<usize>, tol: f64) -> Span {
    let base = &points[indices[0]];
    let diffs: Vec<Point> = indices[1..].iter().map(|&i| &points[i] - base).collect();
    Span {
        basis: linalg::orthonormalize(&diffs, tol),
        indices,
    }
}

// dim(→A ∩ →B) = dim A + dim B - dim(→A + →B)
fn intersection_dim(a: &Span, b: &Span, tol: f64) -> usize {
    let mut cols = a.basis.clone();
    cols.extend(b.basis.iter().cloned());
    let sum = linalg::column_rank(&cols, tol);
    a.basis.len() + b.basis.len() - sum
}

fn check_pair(a: &Span, b: &Span, n: usize, tol: f64) -> Option<Witness> {
    let got = intersection_dim(a, b, tol);
    let required = (a.basis.len() + b.basis.len()).saturating_sub(n);
    (got != required).then(|| Witness {
        first: a.indices.clone(),
        second: b.indices.clone(),
        intersection_dim: got,
        required,
    })
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

fn subsets(count: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, count: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= min {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..count {
            cur.push(i);
            rec(i + 1, count, min, max, cur, out);
            cur.pop();
        }
    }
    rec(0, count, min, max, &mut cur, &mut out);
    out
}

/// Standardness of a finite point set: for disjoint subsets of size at most
/// `d + 1`, the direction spaces of their affine hulls meet minimally.
///
/// Singletons have a zero direction space and satisfy the condition
/// trivially, so only subsets of size at least 2 are examined.
pub fn is_standard_points(points: &[Point], tol: f64) -> StandardReport {
    let Some(first) = points.first() else {
        return StandardReport {
            standard: true,
            witnesses: Vec::new(),
            checked: 0,
        };
    };
    let n = first.dim();
    let spans: Vec<Span> = subsets(points.len(), 2, n)
        .into_iter()
        .map(|s| span(points, s, tol))
        .collect();
    let results: Vec<(usize, Vec<Witness>)> = (0..spans.len())
        .into_par_iter()
        .map(|i| {
            let mut w = Vec::new();
            let mut checked = 0;
            for j in i + 1..spans.len() {
                if disjoint(&spans[i].indices, &spans[j].indices) {
                    checked += 1;
                    if let Some(x) = check_pair(&spans[i], &spans[j], n, tol) {
                        w.push(x);
                    }
                }
            }
            (checked, w)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let witnesses: Vec<Witness> = results.into_iter().flat_map(|r| r.1).collect();
    StandardReport {
        standard: witnesses.is_empty(),
        witnesses,
        checked,
    }
}

/// Standardness of a polytope: the condition restricted to pairs of facets
/// without a common vertex.
pub fn is_standard_polytope(p: &Polytope, tol: f64) -> StandardReport {
    let n = p.dim();
    let facets = p.faces(n.saturating_sub(1));
    let spans: Vec<Span> = facets
        .iter()
        .map(|f| span(p.vertices(), f.vertices.clone(), tol))
        .collect();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if facets[i].shares_vertex(&facets[j]) {
                continue;
            }
            checked += 1;
            if let Some(w) = check_pair(&spans[i], &spans[j], n, tol) {
                witnesses.push(w);
            }
        }
    }
    StandardReport {
        standard: witnesses.is_empty(),
        witnesses,
        checked,
    }
}
