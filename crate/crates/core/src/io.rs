//! Polytope JSON and OFF files, figure and mesh export, and report envelopes.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Chord, Point};
use crate::polytope::{build_hull, Polytope};

/// Schema tag carried by every report.
pub const REPORT_SCHEMA: &str = "binormal-report/1";

/// `{"dim": n, "vertices": [[...], ...], "name": "..."}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeFile {
    pub fn from_points(points: &[Point], name: Option<&str>) -> Self {
        PolytopeFile {
            dim: points.first().map_or(0, |p| p.dim()),
            vertices: points.iter().map(|p| p.coords().to_vec()).collect(),
            name: name.map(str::to_owned),
        }
    }

    pub fn points(&self) -> Result<Vec<Point>> {
        if self.vertices.is_empty() {
            return Err(Error::Parse("polytope file has no vertices".into()));
        }
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != self.dim {
                    Err(Error::Parse(format!(
                        "vertex {i} has {} coordinates, dim is {}",
                        v.len(),
                        self.dim
                    )))
                } else {
                    Ok(Point::new(v.clone()))
                }
            })
            .collect()
    }
}

pub fn parse_polytope_json(text: &str) -> Result<PolytopeFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("polytope JSON: {e}")))
}

pub fn polytope_json(p: &Polytope, name: Option<&str>) -> String {
    serde_json::to_string_pretty(&PolytopeFile::from_points(p.vertices(), name)).expect("serializable")
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

/// Vertices of an `OFF` (3D) or `nOFF` (any dimension) file. Faces are
/// ignored; the hull is recomputed from the vertices.
pub fn parse_off(text: &str) -> Result<Vec<Point>> {
    let mut t = tokens(text);
    let head = t.next().ok_or_else(|| Error::Parse("empty OFF file".into()))?;
    let num = |s: Option<&str>, what: &str| -> Result<f64> {
        s.ok_or_else(|| Error::Parse(format!("OFF: missing {what}")))?
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("OFF: bad {what}: {e}")))
    };
    let dim = match head {
        "OFF" => 3,
        "nOFF" => num(t.next(), "dimension")? as usize,
        other => return Err(Error::Parse(format!("OFF: unknown header {other:?}"))),
    };
    let nv = num(t.next(), "vertex count")? as usize;
    let _nf = num(t.next(), "face count")?;
    let _ne = num(t.next(), "edge count")?;
    (0..nv)
        .map(|i| {
            (0..dim)
                .map(|_| num(t.next(), &format!("coordinate of vertex {i}")))
                .collect::<Result<Vec<f64>>>()
                .map(Point::new)
        })
        .collect()
}

/// Vertex indices of a 3D facet in counter-clockwise order seen from outside.
pub fn ordered_facet(p: &Polytope, facet: usize) -> Vec<usize> {
    let f = &p.facets()[facet];
    let verts = &f.vertices;
    let pts: Vec<&Point> = verts.iter().map(|&i| p.vertex(i)).collect();
    let c = Point::centroid(pts.iter().copied()).expect("nonempty facet");
    if p.dim() == 2 {
        return verts.clone();
    }
    let a = (pts[0] - &c).normalized().unwrap_or_else(|| Point::basis(3, 0));
    let n = &f.normal;
    let b = Point::from([
        n[1] * a[2] - n[2] * a[1],
        n[2] * a[0] - n[0] * a[2],
        n[0] * a[1] - n[1] * a[0],
    ]);
    let mut idx: Vec<(f64, usize)> = verts
        .iter()
        .zip(&pts)
        .map(|(&i, q)| {
            let d = *q - &c;
            (d.dot(&b).atan2(d.dot(&a)), i)
        })
        .collect();
    idx.sort_by(|x, y| x.0.total_cmp(&y.0));
    idx.into_iter().map(|x| x.1).collect()
}

/// Counter-clockwise vertex order of a polygon.
pub fn polygon_order(p: &Polytope) -> Vec<usize> {
    let c = p.centroid();
    let mut idx: Vec<(f64, usize)> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| ((v[1] - c[1]).atan2(v[0] - c[0]), i))
        .collect();
    idx.sort_by(|x, y| x.0.total_cmp(&y.0));
    idx.into_iter().map(|x| x.1).collect()
}

/// `OFF` for 3D polytopes with polygonal facets, `nOFF` with facet vertex
/// lists otherwise.
pub fn write_off(p: &Polytope) -> String {
    let mut s = String::new();
    if p.dim() == 3 {
        s.push_str("OFF\n");
    } else {
        let _ = writeln!(s, "nOFF\n{}", p.dim());
    }
    let _ = writeln!(s, "{} {} 0", p.vertices().len(), p.facets().len());
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(|x| format!("{x:.17}")).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    for k in 0..p.facets().len() {
        let f = if p.dim() == 3 {
            ordered_facet(p, k)
        } else {
            p.facets()[k].vertices.clone()
        };
        let row: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "{} {}", f.len(), row.join(" "));
    }
    s
}

/// Triangulated `OFF` mesh of a 3D polytope (fan triangulation of facets).
pub fn write_mesh(p: &Polytope) -> Result<String> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p.dim(),
        });
    }
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for k in 0..p.facets().len() {
        let f = ordered_facet(p, k);
        for i in 1..f.len().saturating_sub(1) {
            tris.push([f[0], f[i], f[i + 1]]);
        }
    }
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{} {} 0", p.vertices().len(), tris.len());
    for v in p.vertices() {
        let _ = writeln!(s, "{:.17} {:.17} {:.17}", v[0], v[1], v[2]);
    }
    for t in tris {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    Ok(s)
}

/// One labelled chord in a figure or mesh sidecar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChordAnnotation {
    pub label: String,
    pub tail: Vec<f64>,
    pub head: Vec<f64>,
    pub length: f64,
}

pub fn annotations(chords: &[Chord]) -> Vec<ChordAnnotation> {
    chords
        .iter()
        .enumerate()
        .map(|(i, c)| ChordAnnotation {
            label: format!("b{}", i + 1),
            tail: c.tail.coords().to_vec(),
            head: c.head.coords().to_vec(),
            length: c.length(),
        })
        .collect()
}

/// SVG of a closed planar outline with labelled chords.
pub fn write_svg(outline: &[Point], chords: &[Chord]) -> Result<String> {
    if let Some(p) = outline.iter().chain(chords.iter().map(|c| &c.tail)).find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if outline.len() < 3 {
        return Err(Error::EmptyInput("outline"));
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in outline {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let size = 512.0;
    let pad = 32.0;
    let scale = (size - 2.0 * pad) / span;
    let map = |p: &Point| (pad + (p[0] - lo[0]) * scale, size - pad - (p[1] - lo[1]) * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let pts: Vec<String> = outline
        .iter()
        .map(|p| {
            let (x, y) = map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"  <polygon points="{}" fill="#eef3fb" stroke="#1f3b73" stroke-width="1.5"/>"##,
        pts.join(" ")
    );
    for a in annotations(chords) {
        let (x1, y1) = map(&Point::new(a.tail.clone()));
        let (x2, y2) = map(&Point::new(a.head.clone()));
        let _ = writeln!(
            s,
            r##"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c0392b" stroke-width="1.2"><title>{} length {:.9}</title></line>"##,
            a.label, a.length
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12" font-family="sans-serif">{}</text>"#,
            x1 + 0.85 * (x2 - x1) + 4.0,
            y1 + 0.85 * (y2 - y1) - 4.0,
            a.label
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Reads a polytope from a JSON or OFF file and builds its hull.
pub fn read_polytope(path: &Path, tol: f64) -> Result<(Polytope, Option<String>)> {
    let text = std::fs::read_to_string(path)?;
    let (points, name) = if text.trim_start().starts_with('{') {
        let f = parse_polytope_json(&text)?;
        (f.points()?, f.name)
    } else {
        (parse_off(&text)?, None)
    };
    Ok((build_hull(&points, tol)?, name))
}

/// Versioned wrapper around every report payload.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportEnvelope<T> {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub config: serde_json::Value,
    pub timing_ms: f64,
    pub payload: T,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn new(config: serde_json::Value, timing_ms: f64, payload: T) -> Self {
        ReportEnvelope {
            schema: REPORT_SCHEMA.into(),
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            timing_ms,
            payload,
        }
    }
}
