//! Convex polytopes in vertex form with derived facets and face lattice.

mod enumerate;
mod hull;
pub mod shapes;
mod standard;

use serde::{Deserialize, Serialize};

pub use enumerate::enumerate_double_normals;
pub use hull::build_hull;
pub use standard::{is_standard_points, is_standard_polytope, StandardReport, Witness};

use crate::error::{Error, Result};
use crate::geometry::{linalg, AffineSubspace, Point};

/// A face given by its dimension and sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn shares_vertex(&self, other: &Face) -> bool {
        // both sorted
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A facet `{x : ⟨normal, x⟩ = offset}` with `⟨normal, x⟩ ≤ offset` on the polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub normal: Point,
    pub offset: f64,
}

/// A full-dimensional convex polytope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    /// Input index of each vertex.
    source: Vec<usize>,
    facets: Vec<Facet>,
    /// `faces[k]` lists the `k`-dimensional faces.
    faces: Vec<Vec<Face>>,
    diameter: f64,
    tol: f64,
}

impl Polytope {
    /// Ambient dimension `d + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    /// Index into the hull input of each vertex.
    pub fn source_indices(&self) -> &[usize] {
        &self.source
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Faces of dimension `k`, sorted.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    /// All proper faces, lowest dimension first.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Absolute tolerance `tol * diameter`.
    pub fn eps(&self) -> f64 {
        self.tol * self.diameter
    }

    /// Same polytope with a different tolerance for later queries.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// `max_F (⟨n_F, x⟩ - b_F)`: zero on the boundary, negative inside.
    pub fn max_violation(&self, x: &Point) -> f64 {
        self.facets
            .iter()
            .map(|f| f.normal.dot(x) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.max_violation(x) <= self.eps()
    }

    pub fn on_boundary(&self, x: &Point) -> bool {
        self.max_violation(x).abs() <= self.eps()
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices).expect("polytope has vertices")
    }

    /// Facets whose hyperplane contains `x` within tolerance.
    pub fn tight_facets(&self, x: &Point) -> Vec<usize> {
        let eps = self.eps();
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| (f.normal.dot(x) - f.offset).abs() <= eps)
            .map(|(i, _)| i)
            .collect()
    }

    /// The smallest face containing the boundary point `x`.
    pub fn minimal_face(&self, x: &Point) -> Result<Face> {
        let tight = self.tight_facets(x);
        if tight.is_empty() || self.max_violation(x) > self.eps() {
            return Err(Error::NotOnBoundary {
                distance: self.max_violation(x).abs(),
            });
        }
        let mut verts = self.facets[tight[0]].vertices.clone();
        for &t in &tight[1..] {
            let other = &self.facets[t].vertices;
            verts.retain(|v| other.binary_search(v).is_ok());
        }
        Ok(self.face_of(verts))
    }

    pub(crate) fn face_of(&self, vertices: Vec<usize>) -> Face {
        let refs: Vec<&Point> = vertices.iter().map(|&i| &self.vertices[i]).collect();
        Face {
            dim: linalg::affine_dim(&refs, self.tol),
            vertices,
        }
    }

    pub fn affine_span(&self, face: &Face) -> AffineSubspace {
        let refs: Vec<&Point> = face.vertices.iter().map(|&i| &self.vertices[i]).collect();
        AffineSubspace::spanned_by(&refs, self.tol).expect("faces are nonempty")
    }

    /// `min_v ⟨u, v - x⟩ / diameter` over the vertices, `u` normalized.
    pub fn support_margin(&self, x: &Point, u: &Point) -> f64 {
        let u = u.normalized().unwrap_or_else(|| u.clone());
        self.vertices
            .iter()
            .map(|v| u.dot(&(v - x)))
            .fold(f64::INFINITY, f64::min)
            / self.diameter
    }

    /// Whether the hyperplane through the boundary point `x` with normal `u`
    /// supports the polytope, which lies on the side `u` points to.
    pub fn support_check(&self, x: &Point, u: &Point) -> Result<bool> {
        let viol = self.max_violation(x);
        if viol.abs() > self.eps() {
            return Err(Error::NotOnBoundary { distance: viol.abs() });
        }
        Ok(self.support_margin(x, u) >= -self.tol)
    }

    /// Index of the vertex at `x`, if any.
    pub fn is_vertex(&self, x: &Point) -> Option<usize> {
        let eps = self.eps();
        self.vertices.iter().position(|v| v.dist(x) <= eps)
    }

    /// Apply `x ↦ rotation · x + shift`, given the rotation by its columns.
    pub fn transformed(&self, columns: &[Point], shift: &Point) -> Result<Polytope> {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                let mut out = shift.clone();
                for (c, x) in columns.iter().zip(v.coords()) {
                    out = out.offset(c, *x);
                }
                out
            })
            .collect();
        build_hull(&pts, self.tol)
    }
}

/// Support check as a free function.
pub fn support_check(p: &Polytope, x: &Point, u: &Point) -> Result<bool> {
    p.support_check(x, u)
}
