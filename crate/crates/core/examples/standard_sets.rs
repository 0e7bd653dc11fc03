//! Standardness of point sets: general position strong enough to force
//! finitely many double normals.

use binormal::polytope::{is_standard_points, is_standard_polytope, shapes};
use binormal::Point;

fn main() {
    let square = shapes::unit_square();
    let r = is_standard_polytope(&square, 1e-9);
    println!("unit square standard: {} ({} witnesses)", r.standard, r.witnesses.len());
    if let Some(w) = r.witnesses.first() {
        println!("  e.g. {:?} vs {:?}: intersection dim {} > {}", w.first, w.second, w.intersection_dim, w.required);
    }

    let skew: Vec<Point> = vec![
        [0.0, 0.0].into(),
        [1.0, 0.1].into(),
        [1.3, 1.0].into(),
        [-0.2, 0.8].into(),
    ];
    println!("skew quadrilateral standard: {}", is_standard_points(&skew, 1e-9).standard);

    for seed in 0..3 {
        let p = shapes::random_standard_polytope(3, 9, seed);
        let r = is_standard_polytope(&p, 1e-6);
        println!("random polytope {seed}: {} vertices, standard {}, {} pairs checked", p.vertices().len(), r.standard, r.checked);
    }
}
