//! Box-dimension slopes from greedy packing counts.

use binormal::analysis::{box_dimension_estimate, brute_force_packing, packing_count};
use binormal::{Point, Result};

fn cantor(depth: u32) -> Vec<Point> {
    let mut xs = vec![0.0f64];
    let mut len = 1.0;
    for _ in 0..depth {
        len /= 3.0;
        xs = xs.iter().flat_map(|&x| [x, x + 2.0 * len]).collect();
    }
    xs.into_iter().map(|x| Point::from([x])).collect()
}

fn main() -> Result<()> {
    let ladder: Vec<f64> = (1..=8).map(|k| 3f64.powi(-k)).collect();
    let c = box_dimension_estimate(&cantor(10), &ladder)?;
    println!("cantor slope {:.4} (log 2 / log 3 = {:.4})", c.slope_fit, 2f64.ln() / 3f64.ln());

    let segment: Vec<Point> = (0..=4096).map(|i| Point::from([i as f64 / 4096.0])).collect();
    let ladder: Vec<f64> = (2..10).map(|k| 0.5f64.powi(k)).collect();
    let s = box_dimension_estimate(&segment, &ladder)?;
    println!("segment slope {:.4}, windows [{:.4}, {:.4}]", s.slope_fit, s.slope_min_window, s.slope_max_window);

    let small = cantor(3);
    for delta in [0.05, 0.2, 0.5] {
        println!(
            "delta {delta}: greedy {} exact {}",
            packing_count(&small, delta),
            brute_force_packing(&small, delta)
        );
    }
    Ok(())
}
