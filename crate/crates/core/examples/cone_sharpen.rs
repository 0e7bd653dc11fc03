use binormal::analysis::{classify_maximizing, DEFAULT_ALPHA};
use binormal::constructions::{cone_sharpen, DEFAULT_SAMPLES_PER_RADIAN};
use binormal::polytope::shapes;
use binormal::{Chord, Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let tet = shapes::regular_tetrahedron();
    let pts = tet.vertices().to_vec();
    for p in [3, 10, 50] {
        let s = cone_sharpen(&pts, &[(0, 1)], p, DEFAULT_SAMPLES_PER_RADIAN, DEFAULT_TOL)?;
        let (u, v) = &s.apexes[0];
        let c = Chord::new(u.clone(), v.clone());
        let r = classify_maximizing(&s.hull, &c, 0.1, DEFAULT_ALPHA, DEFAULT_TOL)?;
        println!(
            "p={p:3} half-angle {:.4} rad, {} hull vertices, {:?} (margin {:.3e})",
            s.half_angle,
            s.hull.vertices().len(),
            r.class,
            r.margin
        );
    }
    Ok(())
}
