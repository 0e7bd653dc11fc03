//! Second-order behaviour of the chord length at planar double normals.

use binormal::smooth::{hessian_check_d1, SupportBody};
use binormal::{Chord, Point, Result, DEFAULT_TOL};

fn main() -> Result<()> {
    let (a, b) = (2.0, 1.0);
    let e = SupportBody::ellipsoid(&[a, b])?;
    let major = Chord::new(Point::from([-a, 0.0]), Point::from([a, 0.0]));
    let minor = Chord::new(Point::from([0.0, -b]), Point::from([0.0, b]));
    // curvature at the ends of the axes: a/b² and b/a²
    for (name, c, g) in [("major", major, a / (b * b)), ("minor", minor, b / (a * a))] {
        let h = hessian_check_d1(&e, &c, g, g, DEFAULT_TOL)?;
        println!("{name} axis: {:?}", h.definiteness);
        println!("  analytic {:?}", h.analytic);
        println!("  numeric  {:?}", h.numeric);
        println!("  relative difference {:.2e}", h.relative_diff);
    }

    let circle = SupportBody::parse("circle:1")?;
    let d = Chord::new(Point::from([0.0, -1.0]), Point::from([0.0, 1.0]));
    let h = hessian_check_d1(&circle, &d, 1.0, 1.0, DEFAULT_TOL)?;
    println!("circle diameter: {:?}, degeneracy {:.1e}", h.definiteness, h.degeneracy);
    Ok(())
}
