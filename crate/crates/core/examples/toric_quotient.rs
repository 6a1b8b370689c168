//! Quotient fans of the plane's positive quadrant and the Cox presentation of P².

use fiberfan::polyhedron::Cone;
use fiberfan::rational::ivec;
use fiberfan::toric::{cox_construction, quotient_fan, LatticeFan, SublatticeData};

fn main() -> fiberfan::Result<()> {
    let c2 = LatticeFan::new(2, &[ivec(&[1, 0]), ivec(&[0, 1])], &[vec![0, 1]])?;
    let sub = SublatticeData::from_sublattice(2, &[ivec(&[0, 1])])?;
    let quadrant = Cone::from_i64_rays(&[&[1, 0], &[0, 1]]);
    let axis = Cone::from_i64_rays(&[&[0, 1]]);
    let x_axis = Cone::from_i64_rays(&[&[1, 0]]);
    for (name, delta) in [("{σ12, σ2}", vec![quadrant, axis]), ("{σ1, 0}", vec![x_axis, Cone::zero(2)])] {
        let r = quotient_fan(&c2, &delta, &sub)?;
        println!("{name}: categorical={} geometric={} tight={}", r.categorical, r.geometric, r.tight);
    }

    let p2 = LatticeFan::new(2, &[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])], &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    let cox = cox_construction(&p2)?;
    println!(
        "P2 = C^{} // (C*)^{} with torsion {:?}; geometric={}; recovers the fan: {}",
        cox.rays.len(),
        cox.free_rank,
        cox.torsion,
        cox.geometric,
        cox.quotient.quotient_fan.as_ref() == Some(&p2)
    );
    Ok(())
}
