//! Double-normal inventories shared by the polytope and smooth solvers.

use serde::{Deserialize, Serialize};

use crate::geometry::Chord;
use crate::polytope::Face;

/// Residuals certifying one double normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// `min_v ⟨u, v - tail⟩ / diameter` with `u` the unit chord direction.
    pub tail_support: f64,
    /// Same at the head with `-u`.
    pub head_support: f64,
    /// Largest facet violation of either foot, scaled by the diameter.
    pub membership: f64,
    /// Tangential residual `‖g(u)‖` for support-function bodies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tangential_residual: Option<f64>,
}

/// An isolated non-oriented double normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedNormal {
    pub chord: Chord,
    pub length: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_face: Option<Face>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head_face: Option<Face>,
    /// `false` when the chord lies in the boundary, such as a polygon side.
    pub interior: bool,
    pub certificate: Certificate,
}

/// A continuum of double normals of constant direction or constant length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_face: Option<Face>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head_face: Option<Face>,
    pub dim: usize,
    pub representative: Chord,
    pub length: f64,
    /// Number of sampled members behind a numerically detected family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

/// Outcome of the lower bound on non-oriented double normals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuiperStatus {
    pub count: usize,
    pub required: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalInventory {
    /// Ambient dimension `d + 1`.
    pub dim: usize,
    pub isolated: Vec<IsolatedNormal>,
    pub families: Vec<Family>,
    pub kuiper: KuiperStatus,
}

impl NormalInventory {
    /// Build an inventory and evaluate the count `#isolated + #families ≥ dim`, `dim` being the ambient dimension.
    ///
    /// With `families_infinite`, any family of positive dimension satisfies the
    /// bound on its own, since it holds infinitely many non-oriented chords.
    pub fn new(
        dim: usize,
        isolated: Vec<IsolatedNormal>,
        families: Vec<Family>,
        families_infinite: bool,
    ) -> Self {
        let count = isolated.len() + families.len();
        let required = dim;
        let satisfied =
            count >= required || (families_infinite && families.iter().any(|f| f.dim >= 1));
        NormalInventory {
            dim,
            isolated,
            families,
            kuiper: KuiperStatus {
                count,
                required,
                satisfied,
            },
        }
    }

    /// Number of non-oriented entries, families counted once.
    pub fn count(&self) -> usize {
        self.isolated.len() + self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn chords(&self) -> impl Iterator<Item = &Chord> {
        self.isolated.iter().map(|n| &n.chord)
    }

    /// Isolated lengths, sorted ascending.
    pub fn isolated_lengths(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.isolated.iter().map(|n| n.length).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}
