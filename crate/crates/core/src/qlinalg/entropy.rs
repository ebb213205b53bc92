use crate::error::Result;

use super::density::DensityMatrix;
use super::eig::hermitian_eig;

/// Eigenvalues at or below this are treated as exact zeros (0·log 0 = 0).
pub const EIGENVALUE_CLIP: f64 = 1e-12;

/// `x log2 x`, zero for `x <= 0`.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector, with the same clipping as
/// [`von_neumann_entropy`].
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .filter(|&&p| p > EIGENVALUE_CLIP)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// `S(ρ) = -Tr ρ log2 ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = hermitian_eig(rho.matrix())?;
    Ok(shannon_entropy(&spectrum.eigenvalues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{ComplexMatrix, C64};

    #[test]
    fn maximally_mixed_qubit_is_one_bit() {
        let s = von_neumann_entropy(&DensityMatrix::maximally_mixed(2)).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ghz_projector_is_pure() {
        let r = 0.5_f64.sqrt();
        let mut v = vec![C64::new(0.0, 0.0); 8];
        v[0] = C64::new(r, 0.0);
        v[7] = C64::new(r, 0.0);
        let rho = DensityMatrix::new(ComplexMatrix::projector(&v)).unwrap();
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ghz_x_long_time_limit_is_two_bits() {
        // α+ = α- = 1: four 2x2 blocks [[1,1],[1,1]]/8, eigenvalues 1/4 (x4) and 0 (x4)
        let m = ComplexMatrix::from_fn(8, |i, j| {
            if i == j || i + j == 7 {
                C64::new(0.125, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let s = von_neumann_entropy(&DensityMatrix::new(m).unwrap()).unwrap();
        assert!((s - 2.0).abs() < 1e-12, "{s}");
    }

    #[test]
    fn clipping_ignores_tiny_and_negative_eigenvalues() {
        assert_eq!(shannon_entropy(&[1.0, 1e-13, -1e-13]), 0.0);
        assert_eq!(xlog2x(0.0), 0.0);
        assert_eq!(xlog2x(-1e-18), 0.0);
    }
}
