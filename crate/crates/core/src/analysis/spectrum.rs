use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Chord;
use crate::inventory::NormalInventory;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyLength {
    pub length: f64,
    pub dim: usize,
    /// Whether the length is constant along the family. Parallel-face
    /// families of polytopes and constant-width continua always are.
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Sorted lengths of the isolated non-oriented chords.
    pub lengths: Vec<f64>,
    pub families: Vec<FamilyLength>,
    /// No two isolated chords share a length within tolerance.
    pub injective: bool,
    /// Smallest length over chords and families.
    pub min_length: f64,
    /// Index pairs into the inventory's isolated list.
    pub collisions: Vec<(usize, usize)>,
}

/// Length spectrum of an inventory. Collisions are reported for isolated
/// chords whose lengths differ by at most `tol` times the largest length.
pub fn spectrum(inv: &NormalInventory, tol: f64) -> Result<SpectrumReport> {
    if inv.is_empty() {
        return Err(Error::EmptyInput("inventory"));
    }
    let mut order: Vec<usize> = (0..inv.isolated.len()).collect();
    order.sort_by(|a, b| inv.isolated[*a].length.total_cmp(&inv.isolated[*b].length));
    let lengths: Vec<f64> = order.iter().map(|i| inv.isolated[*i].length).collect();
    let top = lengths
        .iter()
        .chain(inv.families.iter().map(|f| &f.length))
        .cloned()
        .fold(0.0, f64::max);
    let slack = tol * top;
    let mut collisions = Vec::new();
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if lengths[b] - lengths[a] > slack {
                break;
            }
            let (i, j) = (order[a].min(order[b]), order[a].max(order[b]));
            collisions.push((i, j));
        }
    }
    collisions.sort_unstable();
    let families: Vec<FamilyLength> = inv
        .families
        .iter()
        .map(|f| FamilyLength {
            length: f.length,
            dim: f.dim,
            constant: true,
        })
        .collect();
    let min_length = lengths
        .iter()
        .chain(families.iter().map(|f| &f.length))
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(SpectrumReport {
        injective: collisions.is_empty(),
        lengths,
        families,
        min_length,
        collisions,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    /// `max |ℓ(b₀) - ℓ(b₁)| / d(b₀, b₁)²` over oriented pairs.
    pub max_ratio: f64,
    /// `1 / min sp(K)`.
    pub bound: f64,
    pub pass: bool,
    pub witness: Option<(Chord, Chord)>,
    /// `max |ℓ(b₀)² - ℓ(b₁)²| / 4 d(b₀, b₁)²`, at most 1 for every body.
    pub square_ratio: f64,
    pub square_pass: bool,
    pub pairs_checked: usize,
}

/// Checks `|ℓ(b₀) - ℓ(b₁)| ≤ d(b₀, b₁)² / min sp(K)` on every pair of listed
/// double normals, isolated chords and family representatives alike.
///
/// Both orientations of each non-oriented chord are tried and the largest
/// ratio is kept, since reversing a double normal gives another one.
///
/// The squared-length form `|ℓ(b₀)² - ℓ(b₁)²| ≤ 4 d(b₀, b₁)²` is reported
/// next to it. The square's diagonal against its edge-to-edge family passes
/// the second and fails the first.
pub fn holder_verify(inv: &NormalInventory, tol: f64) -> Result<HolderReport> {
    let chords: Vec<&Chord> = inv
        .isolated
        .iter()
        .map(|n| &n.chord)
        .chain(inv.families.iter().map(|f| &f.representative))
        .collect();
    if chords.len() < 2 {
        return Err(Error::Parameter(format!(
            "need at least two chords, got {}",
            chords.len()
        )));
    }
    let min_len = chords.iter().map(|c| c.length()).fold(f64::INFINITY, f64::min);
    if !(min_len > 0.0) {
        return Err(Error::Parameter("degenerate spectrum: zero-length chord".into()));
    }
    let bound = 1.0 / min_len;
    let n = chords.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = (0.0f64, i, i, false, 0.0f64);
            let li = chords[i].length();
            for j in i + 1..n {
                let lj = chords[j].length();
                let dl = (li - lj).abs();
                for flip in [false, true] {
                    let other = if flip { chords[j].reversed() } else { chords[j].clone() };
                    let d = chords[i].distance(&other);
                    if d <= 0.0 {
                        continue;
                    }
                    let r = dl / (d * d);
                    if r > best.0 {
                        best = (r, i, j, flip, best.4);
                    }
                    best.4 = best.4.max(dl * (li + lj) / (4.0 * d * d));
                }
            }
            best
        })
        .reduce(
            || (0.0, 0, 0, false, 0.0),
            |a, b| {
                let sq = a.4.max(b.4);
                let mut m = if b.0 > a.0 { b } else { a };
                m.4 = sq;
                m
            },
        );
    let witness = (best.0 > 0.0).then(|| {
        let other = if best.3 {
            chords[best.2].reversed()
        } else {
            chords[best.2].clone()
        };
        (chords[best.1].clone(), other)
    });
    Ok(HolderReport {
        max_ratio: best.0,
        bound,
        pass: best.0 <= bound * (1.0 + tol) + tol,
        witness,
        square_ratio: best.4,
        square_pass: best.4 <= 1.0 + tol,
        pairs_checked: n * (n - 1) / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::inventory::{Certificate, IsolatedNormal};

    fn iso(a: [f64; 2], b: [f64; 2]) -> IsolatedNormal {
        let chord = Chord::new(Point::from(a), Point::from(b));
        IsolatedNormal {
            length: chord.length(),
            chord,
            tail_face: None,
            head_face: None,
            interior: true,
            certificate: Certificate {
                tail_support: 0.0,
                head_support: 0.0,
                membership: 0.0,
                tangential_residual: None,
            },
        }
    }

    #[test]
    fn square_breaks_the_reciprocal_bound() {
        let inv = crate::polytope::enumerate_double_normals(&crate::polytope::shapes::unit_square(), 1e-9).unwrap();
        let h = holder_verify(&inv, 1e-9).unwrap();
        assert!(!h.pass);
        assert!(h.square_pass, "{h:?}");
        assert!(h.max_ratio > 1.6 && h.bound == 1.0);
    }

    #[test]
    fn ellipse_axes() {
        let inv = NormalInventory::new(
            2,
            vec![iso([-2.0, 0.0], [2.0, 0.0]), iso([0.0, -1.0], [0.0, 1.0])],
            vec![],
            true,
        );
        let s = spectrum(&inv, 1e-9).unwrap();
        assert_eq!(s.lengths, vec![2.0, 4.0]);
        assert!(s.injective);
        let h = holder_verify(&inv, 1e-9).unwrap();
        assert!((h.max_ratio - 0.4).abs() < 1e-12);
        assert_eq!(h.bound, 0.5);
        assert!(h.pass);
    }

    #[test]
    fn identical_chords() {
        let inv = NormalInventory::new(
            2,
            vec![iso([0.0, 0.0], [1.0, 0.0]), iso([1.0, 0.0], [0.0, 0.0])],
            vec![],
            true,
        );
        let h = holder_verify(&inv, 1e-9).unwrap();
        assert_eq!(h.max_ratio, 0.0);
        assert!(h.witness.is_none());
        let s = spectrum(&inv, 1e-9).unwrap();
        assert_eq!(s.collisions, vec![(0, 1)]);
        assert!(!s.injective);
    }

    #[test]
    fn empty_inventory() {
        let inv = NormalInventory::new(2, vec![], vec![], false);
        assert!(spectrum(&inv, 1e-9).is_err());
        assert!(holder_verify(&inv, 1e-9).is_err());
    }
}
