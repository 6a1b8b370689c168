//! Chamber complex of the pentagon seen as a projection of the 4-simplex.

use fiberfan::secondary::{simplex_projection, PointConfiguration};

fn main() -> fiberfan::Result<()> {
    let a = PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[3, 2], &[1, 4], &[-1, 2]])?;
    let pp = simplex_projection(&a)?;
    let gamma = pp.chamber_complex();
    println!("{} cells, {} chambers", gamma.len(), gamma.chambers().len());
    for (i, c) in gamma.cells().iter().enumerate() {
        println!("cell {i}: dim {} over {} faces, witness {:?}", c.dim, c.defining_faces.len(), c.witness);
    }
    print!("{}", pp.chamber_adjacency().to_dot("pentagon_chambers"));
    Ok(())
}
