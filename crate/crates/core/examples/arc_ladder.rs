//! Planar ladder of double normals with a spectrum of packing dimension
//! approaching 1/2.

use binormal::analysis::{classify_maximizing, DEFAULT_ALPHA};
use binormal::constructions::arc_ladder_d1;
use binormal::{Result, DEFAULT_TOL};

fn main() -> Result<()> {
    for n in [10, 100, 1000] {
        let ladder = arc_ladder_d1(1.0, 0.5, n)?;
        let acute = ladder.acute_check();
        let hull = ladder.hull(DEFAULT_TOL)?;
        let strict = ladder
            .rung_chords()
            .iter()
            .filter(|c| {
                classify_maximizing(&hull, c, 0.1, DEFAULT_ALPHA, DEFAULT_TOL).is_ok_and(|r| r.is_strict())
            })
            .count();
        println!(
            "n={n:5} delta={:.4e} acute={} (margin {:.2e}) strict {strict}/{n} ratio {:.5}",
            ladder.delta,
            acute.pass,
            acute.min_margin,
            ladder.dimension_ratio()
        );
    }
    Ok(())
}
