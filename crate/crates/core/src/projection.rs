//! A surjective linear map together with its kernel and dual restriction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::rational::{primitive_oriented, Rational, Vector};

/// `π: V → W` with a basis of `ker π` and the restriction map
/// `π∨: V* → (ker π)*`, `ψ ↦ (ψ·k_1, ..., ψ·k_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionPair {
    forward: Matrix,
    kernel_basis: Vec<Vector>,
    dual: Matrix,
}

pub fn make_projection(forward: Matrix) -> Result<ProjectionPair> {
    if forward.rank() != forward.rows() {
        return Err(Error::NotSurjective);
    }
    let kernel_basis: Vec<Vector> = forward.kernel().iter().map(|k| primitive_oriented(k)).collect();
    let dual = Matrix::from_rows(&kernel_basis, forward.cols())?;
    Ok(ProjectionPair { forward, kernel_basis, dual })
}

impl ProjectionPair {
    pub fn forward(&self) -> &Matrix {
        &self.forward
    }

    pub fn kernel_basis(&self) -> &[Vector] {
        &self.kernel_basis
    }

    pub fn dual(&self) -> &Matrix {
        &self.dual
    }

    pub fn source_dim(&self) -> usize {
        self.forward.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.forward.rows()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.forward.mul_vec(v)
    }

    pub fn apply_dual(&self, psi: &[Rational]) -> Vector {
        self.dual.mul_vec(psi)
    }

    /// Some covector on V restricting to `psi_hat` on the kernel.
    pub fn lift_covector(&self, psi_hat: &[Rational]) -> Result<Vector> {
        if psi_hat.len() != self.kernel_dim() {
            return Err(Error::DimMismatch { expected: self.kernel_dim(), got: psi_hat.len() });
        }
        Ok(solve(&self.dual, psi_hat).expect("kernel basis is independent"))
    }

    /// `π∨ ∘ π^T = 0`: covectors pulled back from W vanish on the kernel.
    pub fn is_exact(&self) -> bool {
        self.dual.mul(&self.forward.transpose()).row_vecs().iter().flatten().all(|x| *x == Rational::from_integer(0.into()))
    }
}

#[derive(Serialize)]
struct ProjectionJson {
    forward: Vec<Vec<String>>,
    kernel_basis: Vec<Vec<String>>,
    dual: Vec<Vec<String>>,
}

impl Serialize for ProjectionPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = |m: &Matrix| m.row_vecs().iter().map(|r| crate::rational::format_vec(r)).collect();
        ProjectionJson {
            forward: f(&self.forward),
            kernel_basis: self.kernel_basis.iter().map(|k| crate::rational::format_vec(k)).collect(),
            dual: f(&self.dual),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ivec;

    #[test]
    fn axis_projection() {
        let pp = make_projection(Matrix::from_i64(&[&[1, 0]])).unwrap();
        assert_eq!(pp.kernel_basis(), &[ivec(&[0, 1])]);
        assert_eq!(pp.dual(), &Matrix::from_i64(&[&[0, 1]]));
        assert!(pp.is_exact());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let pp = make_projection(Matrix::identity(2)).unwrap();
        assert_eq!(pp.kernel_dim(), 0);
        assert_eq!(pp.apply_dual(&ivec(&[3, 4])), Vec::<Rational>::new());
    }

    #[test]
    fn diagonal_sum() {
        let pp = make_projection(Matrix::from_i64(&[&[1, 1]])).unwrap();
        assert_eq!(pp.kernel_basis(), &[ivec(&[1, -1])]);
        assert_eq!(pp.apply_dual(&ivec(&[5, 2])), ivec(&[3]));
        assert!(pp.is_exact());
        let lift = pp.lift_covector(&ivec(&[3])).unwrap();
        assert_eq!(pp.apply_dual(&lift), ivec(&[3]));
    }

    #[test]
    fn rank_deficient_rejected() {
        assert_eq!(make_projection(Matrix::from_i64(&[&[1, 1], &[2, 2]])), Err(Error::NotSurjective));
    }
}
