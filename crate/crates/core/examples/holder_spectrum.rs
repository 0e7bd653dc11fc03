use binormal::analysis::{holder_verify, spectrum};
use binormal::constructions::arc_ladder_d1;
use binormal::polytope::{enumerate_double_normals, shapes};
use binormal::smooth::{default_starts, find_double_normals, SupportBody};
use binormal::{Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let e = SupportBody::parse("ellipsoid:2,1.5,1")?;
    let inv = find_double_normals(&e, default_starts(3), DEFAULT_TOL)?;
    let s = spectrum(&inv, DEFAULT_TOL)?;
    println!("ellipsoid spectrum {:?}, injective {}", s.lengths, s.injective);

    let tet = enumerate_double_normals(&shapes::regular_tetrahedron(), DEFAULT_TOL)?;
    let s = spectrum(&tet, DEFAULT_TOL)?;
    println!("tetrahedron: {} lengths, {} collisions", s.lengths.len(), s.collisions.len());
    let h = holder_verify(&tet, DEFAULT_TOL)?;
    println!("  holder ratio {:.4} <= {:.4}: {}", h.max_ratio, h.bound, h.pass);

    let ladder = arc_ladder_d1(1.0, 0.5, 50)?;
    let h = holder_verify(&ladder.inventory(), DEFAULT_TOL)?;
    println!(
        "ladder: holder ratio {:.5} vs bound {:.5} ({:.1}% of the bound)",
        h.max_ratio,
        h.bound,
        100.0 * h.max_ratio / h.bound
    );
    Ok(())
}
