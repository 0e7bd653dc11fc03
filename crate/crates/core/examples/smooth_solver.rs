//! Multistart search for double normals of smooth bodies.

use binormal::smooth::{default_starts, find_double_normals, SupportBody};
use binormal::{Result, DEFAULT_TOL};

fn main() -> Result<()> {
    for spec in ["ellipse:2,1", "ellipsoid:2,1.5,1", "perturbed:1,0.05,4", "perturbed:1,0.05,3", "ellipsoid:2,1,1", "ball:1"] {
        let body = SupportBody::parse(spec)?;
        let inv = find_double_normals(&body, default_starts(body.dim()), DEFAULT_TOL)?;
        println!("{spec}");
        for n in &inv.isolated {
            println!(
                "  isolated length {:.10}  residual {:.1e}",
                n.length,
                n.certificate.tangential_residual.unwrap_or(0.0)
            );
        }
        for f in &inv.families {
            println!("  family dim {} length {:.10} ({} merged zeros)", f.dim, f.length, f.samples.unwrap_or(0));
        }
    }
    Ok(())
}
