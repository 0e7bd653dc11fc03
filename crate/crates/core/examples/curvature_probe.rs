use binormal::polytope::shapes;
use binormal::smooth::{curvature_probe, default_scales, SupportBody};
use binormal::{Point, Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let circle = SupportBody::parse("circle:2")?;
    let x = Point::from([2.0, 0.0]);
    let tau = Point::from([0.0, 1.0]);
    let est = curvature_probe(&circle, &x, &tau, &default_scales(4.0), DEFAULT_TOL)?;
    println!("circle R=2: radii in [{}, {}]", est.lower_radius, est.upper_radius);

    let ellipse = SupportBody::parse("ellipse:2,1")?;
    let est = curvature_probe(&ellipse, &x, &tau, &default_scales(4.0), DEFAULT_TOL)?;
    println!("ellipse vertex: radii in [{}, {}], expected 0.5", est.lower_radius, est.upper_radius);
    for (s, r) in est.radii.iter().take(4) {
        println!("  scale {s:.3e} -> {r}");
    }

    let square = shapes::unit_square();
    let corner = Point::from([1.0, 1.0]);
    let t = Point::from([-1.0, 1.0]);
    let est = curvature_probe(&square, &corner, &t, &default_scales(2f64.sqrt()), DEFAULT_TOL)?;
    println!("square corner: lower curvature {:.3e}", est.lower_curvature());
    let edge = Point::from([1.0, 0.5]);
    let est = curvature_probe(&square, &edge, &Point::from([0.0, 1.0]), &default_scales(2f64.sqrt()), DEFAULT_TOL)?;
    println!("square edge: radius {}", est.lower_radius);
    Ok(())
}
