//! Fiber fan of the unit square projected to a segment, and its strings.

use fiberfan::chamber::PolytopeProjection;
use fiberfan::linalg::Matrix;
use fiberfan::polytope::Polytope;
use fiberfan::projection::make_projection;
use fiberfan::rational::{format_vec, ivec};

fn main() -> fiberfan::Result<()> {
    let square = Polytope::from_i64(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])?;
    let pp = PolytopeProjection::new(square, make_projection(Matrix::from_i64(&[&[1, 0]]))?)?;
    for c in pp.fiber_fan().cones() {
        println!("cone of dim {} with witness {:?}", c.cone.dim(), format_vec(&c.witness));
    }
    for psi in [ivec(&[1]), ivec(&[-1])] {
        let s = pp.coherent_string(&psi)?;
        println!("F({:?}) = {:?}", format_vec(&psi), s.faces);
    }
    let all = pp.enumerate_locally_coherent_strings(10_000).complete(10_000)?;
    for s in &all {
        println!("locally coherent: {:?} tight={}", s.faces, pp.is_tight_string(&s.faces));
    }
    Ok(())
}
