use binormal::constructions::{acute_check_d2, scan_acute_threshold, sphere_ladder_d2};
use binormal::Result;

fn main() -> Result<()> {
    let (r, a, t) = (1.0, 0.1, 0.4);
    let scan = scan_acute_threshold(r, a, t, 5)?;
    println!("acute from m0 = {:?}", scan.m0);
    for (m, pass, margin) in &scan.results {
        println!("  m={m} pass={pass} margin={margin:.3e}");
    }
    let ladder = sphere_ladder_d2(r, a, t, 4)?;
    let acute = acute_check_d2(&ladder);
    println!(
        "m=4: {} points, {} chords, delta {:.4e}, acute {}, ratio {:.4} (limit 0.75)",
        ladder.points.len(),
        ladder.chords().len(),
        ladder.delta,
        acute.pass,
        ladder.dimension_ratio()
    );
    Ok(())
}
