//! Strings against virtual cones and costrings against virtual cells.

use fiberfan::secondary::{simplex_projection, PointConfiguration};
use fiberfan::strings::Duality;

fn main() -> fiberfan::Result<()> {
    let a = PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[3, 2], &[1, 4], &[-1, 2]])?;
    let pp = simplex_projection(&a)?;
    let d = Duality::new(&pp);
    let (strings, costrings) = d.coherent_anti_isomorphisms();
    println!("coherent strings reverse the fiber fan: {}", strings.passed());
    println!("coherent costrings reverse the chamber complex: {}", costrings.passed());
    let r = d.virtual_duality(1_000_000)?;
    println!(
        "{} strings <-> {} virtual cones, {} costrings <-> {} virtual cells: {}",
        r.strings,
        r.virtual_cones,
        r.costrings,
        r.virtual_cells,
        if r.passed() { "anti-isomorphic" } else { "MISMATCH" }
    );
    Ok(())
}
