use rayon::prelude::*;

use super::SupportBody;
use crate::directions::{self, tangent_basis};
use crate::error::{Error, Result};
use crate::geometry::{linalg, Chord, Point};
use crate::inventory::{Certificate, Family, IsolatedNormal, NormalInventory};

/// Smallest connected set of zeros reported as a family.
pub const FAMILY_MIN_ZEROS: usize = 20;

const MAX_ITER: usize = 50;
const POLISH_ITER: usize = 4;

/// Default multistart count `100 · 2^d`.
pub fn default_starts(dim: usize) -> usize {
    100 << dim.saturating_sub(1).min(10)
}

/// Tangential residual `(∇h(u) - ∇h(-u))` projected orthogonally to `u`.
pub fn tangential_residual(body: &SupportBody, u: &Point) -> Point {
    let d = &body.touching(u) - &body.touching(&-u);
    d.reject(u)
}

struct Zero {
    u: Point,
    residual: f64,
    converged: bool,
}

fn refine(body: &SupportBody, start: &Point, tol: f64) -> Zero {
    let target = tol * body.diameter();
    let fd = tol.sqrt().clamp(1e-7, 1e-3);
    let mut u = start.clone();
    let mut r = tangential_residual(body, &u);
    let mut rn = r.norm();
    let mut polish = 0;
    for _ in 0..MAX_ITER + POLISH_ITER {
        if rn <= target {
            if polish == POLISH_ITER {
                break;
            }
            polish += 1;
        }
        let t = tangent_basis(&u);
        let n = u.dim();
        let k = t.len();
        if k == 0 {
            break;
        }
        let mut j = nalgebra::DMatrix::zeros(n, k);
        for c in 0..k {
            let p = tangential_residual(body, &u.offset(&t[c], fd).normalized().expect("unit"));
            let m = tangential_residual(body, &u.offset(&t[c], -fd).normalized().expect("unit"));
            for row in 0..n {
                j[(row, c)] = (p[row] - m[row]) / (2.0 * fd);
            }
        }
        let rhs = nalgebra::DVector::from_iterator(n, r.coords().iter().map(|v| -v));
        let step = linalg::least_squares(j, &rhs, 1e-12);
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let mut cand = u.clone();
            for (q, s) in t.iter().zip(step.iter()) {
                cand = cand.offset(q, scale * s);
            }
            let Some(cand) = cand.normalized() else { break };
            let rc = tangential_residual(body, &cand);
            let rcn = rc.norm();
            if rcn < rn {
                u = cand;
                r = rc;
                rn = rcn;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Zero {
        converged: rn <= target,
        residual: rn,
        u,
    }
}

// Sign with the first clearly nonzero coordinate positive.
fn canonical(u: &Point) -> Point {
    match u.coords().iter().find(|x| x.abs() > 1e-9) {
        Some(x) if *x < 0.0 => -u,
        _ => u.clone(),
    }
}

fn direction_distance(a: &Point, b: &Point) -> (f64, bool) {
    let plus = a.dist(b);
    let minus = a.dist(&-b);
    if minus < plus {
        (minus, true)
    } else {
        (plus, false)
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Double normals of a smooth strictly convex body as zeros of the
/// tangential residual on the direction sphere.
///
/// `n_starts` seeded low-discrepancy directions are refined by damped
/// Gauss-Newton in a tangent chart. Zeros closer than `10 tol · diam` in the
/// chord metric are merged. Two zeros are linked when their directions are
/// within three net spacings and the residual stays below `tol · diam` at
/// sampled points of the arc between them; a linked set of at least
/// [`FAMILY_MIN_ZEROS`] zeros is reported as one family.
pub fn find_double_normals(body: &SupportBody, n_starts: usize, tol: f64) -> Result<NormalInventory> {
    find_double_normals_seeded(body, n_starts, tol, 0)
}

/// [`find_double_normals`] with an explicit net seed.
pub fn find_double_normals_seeded(
    body: &SupportBody,
    n_starts: usize,
    tol: f64,
    seed: u64,
) -> Result<NormalInventory> {
    if !body.is_smooth() {
        return Err(Error::NotStrictlyConvex(
            "polyline bodies have no single-valued touching map; use polytope enumeration".into(),
        ));
    }
    let dim = body.dim();
    let diam = body.diameter();
    let target = tol * diam;
    let starts = directions::sphere_net(dim, n_starts.max(1), seed);
    let zeros: Vec<Zero> = starts.par_iter().map(|s| refine(body, s, tol)).collect();

    if !zeros.iter().any(|z| z.converged) {
        let mut hist = std::collections::BTreeMap::new();
        for z in &zeros {
            let bin = if z.residual > 0.0 {
                z.residual.log10().floor() as i32
            } else {
                i32::MIN
            };
            *hist.entry(bin).or_insert(0usize) += 1;
        }
        return Err(Error::NonConvergence {
            histogram: hist.into_iter().collect(),
        });
    }

    let chord_of = |u: &Point| Chord::new(body.touching(&-u), body.touching(u));
    let mut kept: Vec<(Point, f64, Chord)> = Vec::new();
    for z in zeros.iter().filter(|z| z.converged) {
        let u = canonical(&z.u);
        let c = chord_of(&u);
        if kept
            .iter()
            .all(|(_, _, k)| k.unoriented_distance(&c) >= 10.0 * target)
        {
            kept.push((u, z.residual, c));
        }
    }

    let spacing = directions::covering_radius(&starts, 256, seed);
    let link = 3.0 * spacing;
    let m = kept.len();
    let mut parent: Vec<usize> = (0..m).collect();
    if m >= FAMILY_MIN_ZEROS {
        let edges: Vec<(usize, usize)> = (0..m)
            .into_par_iter()
            .flat_map_iter(|i| {
                let kept = &kept;
                (i + 1..m).filter_map(move |j| {
                    let (d, flip) = direction_distance(&kept[i].0, &kept[j].0);
                    if d > link {
                        return None;
                    }
                    let b = if flip { -&kept[j].0 } else { kept[j].0.clone() };
                    let a = &kept[i].0;
                    let along = (1..=8).all(|s| {
                        let t = s as f64 / 9.0;
                        let w = (a * (1.0 - t) + &b * t).normalized();
                        w.is_some_and(|w| tangential_residual(body, &w).norm() <= target)
                    });
                    along.then_some((i, j))
                })
            })
            .collect();
        for (i, j) in edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }

    let probe = directions::sphere_net(dim, 512, seed ^ 0xabcd);
    let support_margin = |foot: &Point, dir: &Point| {
        probe
            .iter()
            .map(|w| dir.dot(&(&body.touching(w) - foot)))
            .fold(f64::INFINITY, f64::min)
            .min(dir.dot(&(&body.touching(&-dir) - foot)).min(dir.dot(&(&body.touching(dir) - foot))))
            / diam
    };

    let mut isolated = Vec::new();
    let mut families = Vec::new();
    for members in comps.values() {
        if members.len() >= FAMILY_MIN_ZEROS {
            let rep = kept[members[0]].2.clone();
            families.push(Family {
                tail_face: None,
                head_face: None,
                dim: family_dim(&kept.iter().map(|k| k.0.clone()).collect::<Vec<_>>(), members, link),
                length: rep.length(),
                representative: rep,
                samples: Some(members.len()),
            });
        } else {
            for &i in members {
                let (_, res, chord) = &kept[i];
                let e = chord.direction().unwrap_or_else(|| kept[i].0.clone());
                isolated.push(IsolatedNormal {
                    length: chord.length(),
                    certificate: Certificate {
                        tail_support: support_margin(&chord.tail, &e),
                        head_support: support_margin(&chord.head, &-&e),
                        membership: 0.0,
                        tangential_residual: Some(*res),
                    },
                    interior: true,
                    chord: chord.clone(),
                    tail_face: None,
                    head_face: None,
                });
            }
        }
    }
    isolated.sort_by(|a, b| b.length.total_cmp(&a.length));
    Ok(NormalInventory::new(dim, isolated, families, true))
}

// Median local rank of neighbour offsets projected to the tangent space.
fn family_dim(dirs: &[Point], members: &[usize], radius: f64) -> usize {
    let mut dims: Vec<usize> = Vec::new();
    for &i in members.iter().take(64) {
        let u = &dirs[i];
        let t = tangent_basis(u);
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for &j in members {
            if i == j {
                continue;
            }
            let (d, flip) = direction_distance(u, &dirs[j]);
            if d <= radius {
                let v = if flip { -&dirs[j] } else { dirs[j].clone() };
                let off = &v - u;
                rows.push(t.iter().map(|q| q.dot(&off)).collect());
            }
        }
        if rows.len() < 2 || t.is_empty() {
            continue;
        }
        let m = nalgebra::DMatrix::from_fn(rows.len(), t.len(), |r, c| rows[r][c]);
        let sv = m.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max);
        dims.push(sv.iter().filter(|s| **s > 0.25 * top).count());
    }
    if dims.is_empty() {
        return 1;
    }
    dims.sort_unstable();
    dims[dims.len() / 2].max(1)
}
