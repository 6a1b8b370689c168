//! Triangulations of a hexagon, the secondary fan, flips, and a
//! non-regular triangulation of two nested triangles.

use fiberfan::secondary::{classified_triangulations, fan_of_triangulation, flip_graph, secondary_fan, PointConfiguration};
use fiberfan::toric::is_projective_fan;

fn main() -> fiberfan::Result<()> {
    let hexagon = PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[3, 1], &[2, 2], &[0, 2], &[-1, 1]])?;
    let ts = classified_triangulations(&hexagon, 1_000_000)?;
    let report = secondary_fan(&hexagon, &ts)?;
    let flips = flip_graph(&hexagon, &ts);
    println!(
        "hexagon: {} triangulations, {} secondary cones, bijective={}, {} flips",
        ts.len(),
        report.maximal_cones,
        report.bijective,
        flips.edges.len()
    );

    let nested = PointConfiguration::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1], &[1, 2]])?;
    for t in classified_triangulations(&nested, 1_000_000)? {
        if t.is_regular() == Some(false) {
            let (projective, _) = is_projective_fan(&fan_of_triangulation(&nested, &t)?)?;
            println!("non-regular {}: fan projective={projective}", t.label());
        }
    }
    Ok(())
}
