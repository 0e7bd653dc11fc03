use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::DMatrix;

use super::{Face, Facet, Polytope};
use crate::error::{Error, Result};
use crate::geometry::{check_dim, linalg, Point};

struct Simplex {
    vertices: Vec<usize>,
    normal: Point,
    offset: f64,
}

/// Convex hull of `points` by beneath-beyond insertion.
///
/// Non-extreme input points are discarded; duplicates within `tol * diameter`
/// collapse onto their first occurrence.
pub fn build_hull(points: &[Point], tol: f64) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput("build_hull"))?;
    let n = first.dim();
    check_dim(n)?;
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        if !p.is_finite() {
            return Err(Error::Parameter("non-finite coordinate".into()));
        }
    }
    let mut diameter: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            diameter = diameter.max(p.dist(q));
        }
    }
    if diameter == 0.0 {
        return Err(Error::DimensionDeficiency {
            found: 0,
            required: n,
        });
    }
    let eps = tol * diameter;

    let mut cands: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if cands.iter().all(|&j| points[j].dist(p) > eps) {
            cands.push(i);
        }
    }

    let (vertex_src, facets) = if n == 1 {
        interval(points, &cands)
    } else {
        let simplices = beneath_beyond(points, &cands, eps)?;
        merge(points, &cands, &simplices, eps, tol)
    };

    let mut remap = HashMap::new();
    for (new, &old) in vertex_src.iter().enumerate() {
        remap.insert(old, new);
    }
    let vertices: Vec<Point> = vertex_src.iter().map(|&i| points[i].clone()).collect();
    let facets: Vec<Facet> = facets
        .into_iter()
        .map(|(verts, normal, offset)| {
            let mut v: Vec<usize> = verts.iter().filter_map(|i| remap.get(i).copied()).collect();
            v.sort_unstable();
            Facet {
                vertices: v,
                normal,
                offset,
            }
        })
        .collect();

    let mut poly = Polytope {
        dim: n,
        vertices,
        source: vertex_src,
        facets,
        faces: Vec::new(),
        diameter,
        tol,
    };
    poly.faces = face_lattice(&poly);
    Ok(poly)
}

type RawFacet = (Vec<usize>, Point, f64);

fn interval(points: &[Point], cands: &[usize]) -> (Vec<usize>, Vec<RawFacet>) {
    let lo = *cands
        .iter()
        .min_by(|&&a, &&b| points[a][0].total_cmp(&points[b][0]))
        .expect("nonempty");
    let hi = *cands
        .iter()
        .max_by(|&&a, &&b| points[a][0].total_cmp(&points[b][0]))
        .expect("nonempty");
    let mut src = vec![lo, hi];
    src.sort_unstable();
    let facets = vec![
        (vec![lo], Point::from([-1.0]), -points[lo][0]),
        (vec![hi], Point::from([1.0]), points[hi][0]),
    ];
    (src, facets)
}

fn distance_to_span(p: &Point, base: &Point, basis: &[Point]) -> f64 {
    let mut r = p - base;
    for _ in 0..2 {
        for q in basis {
            let c = q.dot(&r);
            r = r.offset(q, -c);
        }
    }
    r.norm()
}

fn initial_simplex(points: &[Point], cands: &[usize], eps: f64) -> Result<Vec<usize>> {
    let n = points[cands[0]].dim();
    let i0 = *cands
        .iter()
        .min_by(|&&a, &&b| {
            points[a]
                .coords()
                .partial_cmp(points[b].coords())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("nonempty");
    let mut chosen = vec![i0];
    let mut basis: Vec<Point> = Vec::new();
    while chosen.len() < n + 1 {
        let base = &points[i0];
        let (best, dist) = cands
            .iter()
            .filter(|i| !chosen.contains(i))
            .map(|&i| (i, distance_to_span(&points[i], base, &basis)))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == usize::MAX || dist <= eps {
            return Err(Error::DimensionDeficiency {
                found: chosen.len() - 1,
                required: n,
            });
        }
        chosen.push(best);
        let mut dirs = basis.clone();
        dirs.push(&points[best] - base);
        basis = linalg::orthonormalize(&dirs, 0.0);
    }
    Ok(chosen)
}

fn oriented_simplex(points: &[Point], verts: Vec<usize>, interior: &Point) -> Option<Simplex> {
    let n = interior.dim();
    let base = &points[verts[0]];
    let dirs: Vec<Point> = verts[1..].iter().map(|&i| &points[i] - base).collect();
    let mut normal = linalg::hyperplane_normal(&dirs, n, 1e-12)?;
    let mut offset = normal.dot(base);
    if normal.dot(interior) - offset > 0.0 {
        normal = -normal;
        offset = -offset;
    }
    Some(Simplex {
        vertices: verts,
        normal,
        offset,
    })
}

fn beneath_beyond(points: &[Point], cands: &[usize], eps: f64) -> Result<Vec<Simplex>> {
    let simplex = initial_simplex(points, cands, eps)?;
    let interior = Point::centroid(simplex.iter().map(|&i| &points[i])).expect("nonempty");
    let mut facets: Vec<Option<Simplex>> = Vec::new();
    for skip in 0..simplex.len() {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &i)| i)
            .collect();
        facets.push(oriented_simplex(points, verts, &interior));
    }

    for &p in cands {
        if simplex.contains(&p) {
            continue;
        }
        let x = &points[p];
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter_map(|(k, f)| {
                f.as_ref()
                    .filter(|f| f.normal.dot(x) - f.offset > eps)
                    .map(|_| k)
            })
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for &k in &visible {
            let verts = &facets[k].as_ref().expect("live").vertices;
            for skip in 0..verts.len() {
                let mut r: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                r.sort_unstable();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        for &k in &visible {
            facets[k] = None;
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            if let Some(s) = oriented_simplex(points, r, &interior) {
                facets.push(Some(s));
            }
        }
    }
    Ok(facets.into_iter().flatten().collect())
}

fn merge(
    points: &[Point],
    cands: &[usize],
    simplices: &[Simplex],
    eps: f64,
    tol: f64,
) -> (Vec<usize>, Vec<RawFacet>) {
    let n = points[cands[0]].dim();
    let mut groups: BTreeMap<Vec<usize>, Point> = BTreeMap::new();
    for s in simplices {
        let on: Vec<usize> = cands
            .iter()
            .copied()
            .filter(|&i| (s.normal.dot(&points[i]) - s.offset).abs() <= eps)
            .collect();
        groups.entry(on).or_insert_with(|| s.normal.clone());
    }

    let mut raw: Vec<RawFacet> = Vec::new();
    for (on, hint) in groups {
        let normal = refit_normal(points, &on, &hint);
        let offset = on
            .iter()
            .map(|&i| normal.dot(&points[i]))
            .fold(f64::NEG_INFINITY, f64::max);
        raw.push((on, normal, offset));
    }

    // A point is extreme iff the normals of its facets span the space.
    let mut incident: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
    for (on, normal, _) in &raw {
        for &i in on {
            incident.entry(i).or_default().push(normal.clone());
        }
    }
    let rank_tol = tol.max(1e-12);
    let extreme: BTreeSet<usize> = incident
        .into_iter()
        .filter(|(_, normals)| linalg::column_rank(normals, rank_tol) == n)
        .map(|(i, _)| i)
        .collect();
    for f in raw.iter_mut() {
        f.0.retain(|i| extreme.contains(i));
    }
    (extreme.into_iter().collect(), raw)
}

fn refit_normal(points: &[Point], on: &[usize], hint: &Point) -> Point {
    let n = hint.dim();
    if on.len() < n {
        return hint.clone();
    }
    let c = Point::centroid(on.iter().map(|&i| &points[i])).expect("nonempty");
    let m = DMatrix::from_fn(on.len(), n, |r, k| points[on[r]][k] - c[k]);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (k_min, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, s)| if *s < acc.1 { (k, *s) } else { acc });
    if svd.singular_values.len() < n {
        return hint.clone();
    }
    let mut normal = Point::new((0..n).map(|k| v_t[(k_min, k)]).collect());
    if normal.dot(hint) < 0.0 {
        normal = -normal;
    }
    normal.normalized().unwrap_or_else(|| hint.clone())
}

fn face_lattice(poly: &Polytope) -> Vec<Vec<Face>> {
    let n = poly.dim;
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); n];
    if n == 1 {
        faces[0] = (0..poly.vertices.len())
            .map(|i| Face {
                dim: 0,
                vertices: vec![i],
            })
            .collect();
        return faces;
    }
    let mut top: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &poly.facets {
        top.insert(f.vertices.clone());
    }
    faces[n - 1] = top
        .into_iter()
        .map(|vertices| Face {
            dim: n - 1,
            vertices,
        })
        .collect();
    for k in (1..n).rev() {
        let mut lower: BTreeSet<Vec<usize>> = BTreeSet::new();
        for face in &faces[k] {
            for g in &poly.facets {
                let s: Vec<usize> = face
                    .vertices
                    .iter()
                    .copied()
                    .filter(|v| g.vertices.binary_search(v).is_ok())
                    .collect();
                if s.len() < k || s.len() == face.vertices.len() || lower.contains(&s) {
                    continue;
                }
                let refs: Vec<&Point> = s.iter().map(|&i| &poly.vertices[i]).collect();
                if linalg::affine_dim(&refs, poly.tol.max(1e-12)) == k - 1 {
                    lower.insert(s);
                }
            }
        }
        faces[k - 1] = lower
            .into_iter()
            .map(|vertices| Face { dim: k - 1, vertices })
            .collect();
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DEFAULT_TOL;

    fn pts(v: &[&[f64]]) -> Vec<Point> {
        v.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    #[test]
    fn square_hull() {
        let p = build_hull(
            &pts(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.faces(0).len(), 4);
    }

    #[test]
    fn center_is_discarded() {
        let p = build_hull(
            &pts(&[
                &[0.0, 0.0],
                &[1.0, 0.0],
                &[0.5, 0.5],
                &[1.0, 1.0],
                &[0.0, 1.0],
                &[0.5, 0.0],
            ]),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.source_indices(), &[0, 1, 3, 4]);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn tetrahedron_hull() {
        let p = build_hull(
            &pts(&[
                &[1.0, 1.0, 1.0],
                &[1.0, -1.0, -1.0],
                &[-1.0, 1.0, -1.0],
                &[-1.0, -1.0, 1.0],
            ]),
            DEFAULT_TOL,
        )
        .unwrap();
        assert_eq!(p.facets().len(), 4);
        assert!(p.facets().iter().all(|f| f.vertices.len() == 3));
        assert_eq!(p.faces(1).len(), 6);
        assert_eq!(p.faces(0).len(), 4);
    }

    #[test]
    fn cube_merges_coplanar_triangles() {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(Point::from([
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ]));
        }
        v.push(Point::from([0.5, 0.5, 0.5]));
        v.push(Point::from([0.5, 0.5, 1.0]));
        let p = build_hull(&v, DEFAULT_TOL).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
        assert!(p.facets().iter().all(|f| f.vertices.len() == 4));
        assert_eq!(p.faces(1).len(), 12);
    }

    #[test]
    fn facets_are_valid() {
        let v: Vec<Point> = crate::directions::sphere_net(3, 40, 5);
        let p = build_hull(&v, DEFAULT_TOL).unwrap();
        for f in p.facets() {
            for (i, x) in p.vertices().iter().enumerate() {
                let s = f.normal.dot(x) - f.offset;
                assert!(s <= 1e-9);
                let on = s.abs() <= 1e-9;
                assert_eq!(on, f.vertices.contains(&i));
            }
        }
        // Euler characteristic V - E + F = 2
        let (v, e, f) = (p.faces(0).len(), p.faces(1).len(), p.faces(2).len());
        assert_eq!(v as i64 - e as i64 + f as i64, 2);
    }

    #[test]
    fn degenerate_input() {
        let err = build_hull(
            &pts(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]),
            DEFAULT_TOL,
        );
        assert!(matches!(
            err,
            Err(Error::DimensionDeficiency {
                found: 2,
                required: 3
            })
        ));
    }

    #[test]
    fn hypercube_in_four_dimensions() {
        let mut v = Vec::new();
        for i in 0..16u32 {
            v.push(Point::new((0..4).map(|k| ((i >> k) & 1) as f64).collect()));
        }
        let p = build_hull(&v, DEFAULT_TOL).unwrap();
        assert_eq!(p.facets().len(), 8);
        assert_eq!(p.faces(2).len(), 24);
        assert_eq!(p.faces(1).len(), 32);
        assert_eq!(p.faces(0).len(), 16);
    }
}
