use rayon::prelude::*;

use super::{Face, Polytope};
use crate::error::{Error, Result};
use crate::geometry::{linalg, subspace_nearest_pair, AffineSubspace, Chord, Point};
use crate::inventory::{Certificate, Family, IsolatedNormal, NormalInventory};

enum Candidate {
    Isolated(Chord),
    Family {
        chord: Chord,
        dim: usize,
        tail_span: usize,
        head_span: usize,
    },
}

/// All double normals of `p`, exact up to `tol`.
///
/// Every pair of vertex-disjoint faces is examined through the nearest pair
/// of their affine spans. Continua (parallel face pairs) are reported as
/// families; isolated chords carry their support residuals. Fails with
/// [`Error::KuiperViolation`] if fewer than `d + 1` entries are found.
pub fn enumerate_double_normals(p: &Polytope, tol: f64) -> Result<NormalInventory> {
    let p = p.clone().with_tol(tol);
    let eps = p.eps();
    let faces: Vec<&Face> = p.all_faces().collect();
    let spans: Vec<AffineSubspace> = faces.iter().map(|f| p.affine_span(f)).collect();

    let mut pairs = Vec::new();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if !faces[i].shares_vertex(faces[j]) {
                pairs.push((i, j));
            }
        }
    }
    let candidates: Vec<Candidate> = pairs
        .par_iter()
        .filter_map(|&(i, j)| examine(&p, &spans[i], &spans[j], i, j, eps))
        .collect();

    struct Kept {
        chord: Chord,
        dim: usize,
        tail_span: usize,
        head_span: usize,
    }
    let mut fams: Vec<Kept> = Vec::new();
    let mut raw_iso: Vec<Chord> = Vec::new();
    for c in candidates {
        match c {
            Candidate::Isolated(ch) => raw_iso.push(ch),
            Candidate::Family {
                chord,
                dim,
                tail_span,
                head_span,
            } => fams.push(Kept {
                chord,
                dim,
                tail_span,
                head_span,
            }),
        }
    }
    fams.sort_by_key(|f| std::cmp::Reverse(f.dim));

    let member = |c: &Chord, f: &Kept| -> bool {
        let v = f.chord.vector();
        let on = |x: &Point, s: usize| spans[s].project(x).dist(x) <= eps;
        let fits = |c: &Chord| {
            c.vector().dist(&v) <= 2.0 * eps && on(&c.tail, f.tail_span) && on(&c.head, f.head_span)
        };
        fits(c) || fits(&c.reversed())
    };

    let mut kept: Vec<Kept> = Vec::new();
    for f in fams {
        if !kept.iter().any(|k| member(&f.chord, k)) {
            kept.push(f);
        }
    }

    let mut isolated: Vec<IsolatedNormal> = Vec::new();
    for ch in raw_iso {
        if kept.iter().any(|k| member(&ch, k)) {
            continue;
        }
        if isolated
            .iter()
            .any(|n| n.chord.unoriented_distance(&ch) <= 10.0 * eps)
        {
            continue;
        }
        let (chord, tail_face, head_face) = canonical(&p, ch)?;
        isolated.push(IsolatedNormal {
            length: chord.length(),
            certificate: certify(&p, &chord),
            interior: p.max_violation(&chord.midpoint()) < -eps,
            chord,
            tail_face: Some(tail_face),
            head_face: Some(head_face),
        });
    }
    isolated.sort_by(|a, b| (&a.tail_face, &a.head_face).cmp(&(&b.tail_face, &b.head_face)));

    let mut families = Vec::new();
    for k in kept {
        let (chord, tail_face, head_face) = canonical(&p, k.chord)?;
        families.push(Family {
            length: chord.length(),
            representative: chord,
            tail_face: Some(tail_face),
            head_face: Some(head_face),
            dim: k.dim,
            samples: None,
        });
    }
    families.sort_by(|a, b| (&a.tail_face, &a.head_face).cmp(&(&b.tail_face, &b.head_face)));

    let inv = NormalInventory::new(p.dim(), isolated, families, false);
    if !inv.kuiper.satisfied {
        return Err(Error::KuiperViolation {
            found: inv.kuiper.count,
            required: inv.kuiper.required,
        });
    }
    Ok(inv)
}

fn canonical(p: &Polytope, ch: Chord) -> Result<(Chord, Face, Face)> {
    let ft = p.minimal_face(&ch.tail)?;
    let fh = p.minimal_face(&ch.head)?;
    Ok(if fh < ft {
        (ch.reversed(), fh, ft)
    } else {
        (ch, ft, fh)
    })
}

fn certify(p: &Polytope, ch: &Chord) -> Certificate {
    let u = ch.vector();
    Certificate {
        tail_support: p.support_margin(&ch.tail, &u),
        head_support: p.support_margin(&ch.head, &(-&u)),
        membership: p.max_violation(&ch.tail).max(p.max_violation(&ch.head)).max(0.0) / p.diameter(),
        tangential_residual: None,
    }
}

fn examine(
    p: &Polytope,
    a: &AffineSubspace,
    b: &AffineSubspace,
    ia: usize,
    ib: usize,
    eps: f64,
) -> Option<Candidate> {
    let np = subspace_nearest_pair(a, b, p.tol());
    if np.distance <= eps {
        return None;
    }
    let u = (&np.on_b - &np.on_a) * (1.0 / np.distance);
    // ⟨u, ·⟩ is constant on both spans, so support can be tested before membership.
    let support_ok = |x: &Point, dir: &Point| p.vertices().iter().all(|v| dir.dot(&(v - x)) >= -eps);
    if !support_ok(&np.on_a, &u) || !support_ok(&np.on_b, &(-&u)) {
        return None;
    }
    if np.unique {
        return (p.contains(&np.on_a) && p.contains(&np.on_b))
            .then(|| Candidate::Isolated(Chord::new(np.on_a, np.on_b)));
    }

    let w = &np.common_directions;
    let k = w.len();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for f in p.facets() {
        let a: Vec<f64> = w.iter().map(|q| q.dot(&f.normal)).collect();
        let an = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        for base in [&np.on_a, &np.on_b] {
            let c = f.offset - f.normal.dot(base);
            if an <= 1e-12 {
                if c < -eps {
                    return None;
                }
            } else {
                rows.push((a.clone(), c));
            }
        }
    }
    let verts = clipped_vertices(&rows, k, eps);
    if verts.is_empty() {
        return None;
    }
    let refs: Vec<&Point> = verts.iter().collect();
    let dim = linalg::affine_dim(&refs, 1e-7);
    let z = Point::centroid(&verts).expect("nonempty");
    let mut shift = Point::zeros(p.dim());
    for (q, zi) in w.iter().zip(z.coords()) {
        shift = shift.offset(q, *zi);
    }
    let chord = Chord::new(&np.on_a + &shift, &np.on_b + &shift);
    Some(if dim == 0 {
        Candidate::Isolated(chord)
    } else {
        Candidate::Family {
            chord,
            dim,
            tail_span: ia,
            head_span: ib,
        }
    })
}

// Vertices of {z ∈ R^k : a_r · z ≤ c_r + eps} by solving every k-subset of rows.
fn clipped_vertices(rows: &[(Vec<f64>, f64)], k: usize, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let m = rows.len();
    if m < k {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let a = nalgebra::DMatrix::from_fn(k, k, |r, c| rows[idx[r]].0[c]);
        let b = nalgebra::DVector::from_fn(k, |r, _| rows[idx[r]].1);
        if let Some(z) = linalg::solve(a, &b) {
            let feasible = rows.iter().all(|(a, c)| {
                let s: f64 = a.iter().zip(z.iter()).map(|(x, y)| x * y).sum();
                s <= c + 4.0 * eps
            });
            if feasible {
                let pt = Point::new(z.iter().cloned().collect());
                if out.iter().all(|q| q.dist(&pt) > 4.0 * eps) {
                    out.push(pt);
                }
            }
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + m - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
