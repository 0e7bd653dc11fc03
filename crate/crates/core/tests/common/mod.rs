#![allow(dead_code)]

use binormal::inventory::NormalInventory;
use binormal::{Chord, Point, Polytope};

/// Lattice points `Σ (k_i / n) v_i` over every facet.
pub fn boundary_grid(p: &Polytope, n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for f in p.facets() {
        let verts: Vec<&Point> = f.vertices.iter().map(|&i| p.vertex(i)).collect();
        let mut ks = vec![0usize; verts.len()];
        lattice(&mut ks, 0, n, &mut |ks| {
            let mut x = Point::zeros(p.dim());
            for (v, k) in verts.iter().zip(ks) {
                x = x.offset(v, *k as f64 / n as f64);
            }
            if out.iter().all(|q| q.dist(&x) > 1e-12) {
                out.push(x);
            }
        });
    }
    out
}

fn lattice(ks: &mut Vec<usize>, i: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
    if i + 1 == ks.len() {
        ks[i] = left;
        f(ks);
        return;
    }
    for k in 0..=left {
        ks[i] = k;
        lattice(ks, i + 1, left - k, f);
    }
}

/// Every pair of grid points whose chord is normal to a supporting hyperplane
/// at both ends, up to `slack`.
pub fn grid_double_normals(p: &Polytope, n: usize, slack: f64) -> Vec<Chord> {
    let grid = boundary_grid(p, n);
    let supports = |x: &Point, u: &Point| p.vertices().iter().all(|v| u.dot(&(v - x)) >= -slack);
    let mut out = Vec::new();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let d = &grid[j] - &grid[i];
            let len = d.norm();
            if len <= 1e-12 {
                continue;
            }
            let u = &d * (1.0 / len);
            if supports(&grid[i], &u) && supports(&grid[j], &-&u) {
                out.push(Chord::new(grid[i].clone(), grid[j].clone()));
            }
        }
    }
    out
}

fn near_span(p: &Polytope, x: &Point, face: &binormal::polytope::Face, tol: f64) -> bool {
    let s = p.affine_span(face);
    s.project(x).dist(x) <= tol
}

/// Whether `c` is an isolated chord of `inv` or a member of one of its families.
pub fn explained(p: &Polytope, inv: &NormalInventory, c: &Chord, tol: f64) -> bool {
    if inv.isolated.iter().any(|n| n.chord.unoriented_distance(c) <= tol) {
        return true;
    }
    inv.families.iter().any(|f| {
        let (Some(tf), Some(hf)) = (&f.tail_face, &f.head_face) else {
            return false;
        };
        [c.clone(), c.reversed()].iter().any(|c| {
            c.vector().dist(&f.representative.vector()) <= tol
                && near_span(p, &c.tail, tf, tol)
                && near_span(p, &c.head, hf, tol)
        })
    })
}

/// Cross-check of an enumeration against the lattice oracle: every isolated
/// chord is found on the grid, and every grid double normal is explained.
pub fn grid_agrees(p: &Polytope, inv: &NormalInventory, n: usize) -> Result<(), String> {
    let tol = 1e-9 * p.diameter();
    let grid = grid_double_normals(p, n, tol);
    for iso in &inv.isolated {
        if !grid.iter().any(|g| g.unoriented_distance(&iso.chord) <= tol) {
            return Err(format!("isolated chord of length {} missing on the grid", iso.length));
        }
    }
    for g in &grid {
        if !explained(p, inv, g, tol) {
            return Err(format!("grid chord {:?} -> {:?} unexplained", g.tail, g.head));
        }
    }
    Ok(())
}

pub fn cantor(depth: u32) -> Vec<Point> {
    let mut xs = vec![0.0f64];
    let mut len = 1.0;
    for _ in 0..depth {
        len /= 3.0;
        xs = xs.iter().flat_map(|&x| [x, x + 2.0 * len]).collect();
    }
    xs.into_iter().map(|x| Point::from([x])).collect()
}

/// Exhaustive largest δ-set by subset enumeration.
pub fn exhaustive_packing(points: &[Point], delta: f64) -> usize {
    let n = points.len();
    assert!(n <= 16);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let ok = idx
            .iter()
            .enumerate()
            .all(|(a, &i)| idx[a + 1..].iter().all(|&j| points[i].dist(&points[j]) >= delta));
        if ok {
            best = k;
        }
    }
    best
}

/// Hölder quotient `|ℓ(b) - ℓ(c)| / d(b, c)²` with `c` oriented to the nearer
/// orientation.
pub fn holder_quotient(b: &Chord, c: &Chord) -> f64 {
    let d = b.distance(c).min(b.distance(&c.reversed()));
    (b.length() - c.length()).abs() / (d * d)
}
