//! Generalized sign vectors of the fan of P² and their covector closure.

use fiberfan::rational::ivec;
use fiberfan::toric::{sign_vector_report, LatticeFan};

fn main() -> fiberfan::Result<()> {
    let p2 = LatticeFan::new(2, &[ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, -1])], &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    let r = sign_vector_report(&p2)?;
    println!("hyperplanes: {:?}", r.hyperplanes);
    println!("cone sign vectors: {}", r.vectors.join(" "));
    println!("canonical extension ({}): {}", r.extension.len(), r.extension.join(" "));
    println!("equals the covectors of the arrangement: {}", r.matches_covectors);
    Ok(())
}
