//! Writes an SVG of the ellipse axes and a mesh of a sphere ladder hull with
//! its chord sidecar into a temporary directory.

use binormal::constructions::sphere_ladder_d2;
use binormal::io::{annotations, write_mesh, write_svg};
use binormal::polytope::{enumerate_double_normals, shapes};
use binormal::smooth::{default_starts, find_double_normals, SupportBody};
use binormal::{Chord, Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("binormal-figures");
    std::fs::create_dir_all(&dir)?;

    let e = SupportBody::parse("ellipse:2,1")?;
    let inv = find_double_normals(&e, default_starts(2), DEFAULT_TOL)?;
    let chords: Vec<Chord> = inv.chords().cloned().collect();
    std::fs::write(dir.join("ellipse.svg"), write_svg(&e.boundary_samples(720), &chords)?)?;

    let tri = shapes::equilateral_triangle();
    let inv = enumerate_double_normals(&tri, DEFAULT_TOL)?;
    let chords: Vec<Chord> = inv.isolated.iter().filter(|n| n.interior).map(|n| n.chord.clone()).collect();
    std::fs::write(dir.join("triangle.svg"), write_svg(tri.vertices(), &chords)?)?;

    let ladder = sphere_ladder_d2(1.0, 0.1, 0.4, 3)?;
    let hull = ladder.hull(DEFAULT_TOL)?;
    std::fs::write(dir.join("ladder2.off"), write_mesh(&hull)?)?;
    let ann = annotations(&ladder.chords());
    std::fs::write(dir.join("ladder2.chords.json"), serde_json::to_string_pretty(&ann)?)?;

    println!("wrote ellipse.svg, triangle.svg, ladder2.off and {} annotations to {}", ann.len(), dir.display());
    Ok(())
}
