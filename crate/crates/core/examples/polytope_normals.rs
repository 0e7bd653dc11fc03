//! Exact double normals of a few classic polytopes.

use binormal::polytope::{enumerate_double_normals, shapes};
use binormal::{Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let bodies = [
        ("triangle", shapes::equilateral_triangle()),
        ("square", shapes::unit_square()),
        ("tetrahedron", shapes::regular_tetrahedron()),
        ("cube", shapes::hypercube(3)),
    ];
    for (name, p) in &bodies {
        let inv = enumerate_double_normals(p, DEFAULT_TOL)?;
        let interior = inv.isolated.iter().filter(|n| n.interior).count();
        println!(
            "{name:12} isolated {:2} (through the interior {interior}), families {}, kuiper {}/{}",
            inv.isolated.len(),
            inv.families.len(),
            inv.kuiper.count,
            inv.kuiper.required
        );
        for n in inv.isolated.iter().filter(|n| n.interior) {
            println!("    length {:.12}", n.length);
        }
        for f in &inv.families {
            println!("    family of dim {} with length {:.12}", f.dim, f.length);
        }
    }
    Ok(())
}
