//! Local surgery near a double normal: a rectangle graft doubling it into two
//! strict maxima, and spherical caps producing a family of length 2R.

use binormal::constructions::{rectangle_graft, spherical_cap_graft, DEFAULT_SAMPLES_PER_RADIAN};
use binormal::polytope::build_hull;
use binormal::{Chord, Error, Point, Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let square = build_hull(
        &[[-1.0, -1.0].into(), [1.0, -1.0].into(), [1.0, 1.0].into(), [-1.0, 1.0].into()],
        DEFAULT_TOL,
    )?;
    let diagonal = Chord::new(Point::from([-1.0, -1.0]), Point::from([1.0, 1.0]));

    let g = rectangle_graft(&square, &diagonal, 0.1, 0.05, None, DEFAULT_TOL)?;
    println!("rectangle graft: {} vertices, hausdorff {:.4}", g.polytope.vertices().len(), g.hausdorff);
    for d in &g.diagonals {
        println!("  diagonal of length {:.6}", d.length());
    }
    println!("  separations {:?}", g.separations);

    let g = spherical_cap_graft(&square, &diagonal, 1.43, 0.2, DEFAULT_SAMPLES_PER_RADIAN, DEFAULT_TOL)?;
    println!(
        "cap graft R=1.43: hausdorff {:.4}, {} cap chords of length {:.4}",
        g.hausdorff,
        g.cap_chords.len(),
        2.0 * g.radius
    );
    match spherical_cap_graft(&square, &diagonal, 1.45, 0.2, DEFAULT_SAMPLES_PER_RADIAN, DEFAULT_TOL) {
        Err(Error::CapGraftExceeds { distance, epsilon }) => {
            println!("cap graft R=1.45 rejected: {distance:.4} > {epsilon}")
        }
        other => println!("unexpected: {:?}", other.map(|g| g.hausdorff)),
    }
    Ok(())
}
