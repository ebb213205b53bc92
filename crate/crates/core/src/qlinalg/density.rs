use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};

use super::eig::hermitian_eig;
use super::matrix::{ComplexMatrix, C64};

pub const HERMITIAN_SLACK: f64 = 1e-12;
pub const TRACE_SLACK: f64 = 1e-12;
pub const PSD_SLACK: f64 = 1e-10;

/// One side of the fixed 4 ⊗ 2 bipartition: party `a` holds qubits 1 and 2,
/// party `b` holds qubit 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
}

impl Party {
    pub fn dim(self) -> usize {
        match self {
            Party::A => 4,
            Party::B => 2,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on 1 to 3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates the density-matrix axioms within the crate-wide slacks.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !matches!(m.dim(), 2 | 4 | 8) {
            return Err(QcorrError::InvalidDensity(format!(
                "dimension {} is not 2, 4 or 8",
                m.dim()
            )));
        }
        if !m.is_finite() {
            return Err(QcorrError::InvalidDensity("non-finite entries".into()));
        }
        let herm = m.hermiticity_error();
        if herm > HERMITIAN_SLACK {
            return Err(QcorrError::InvalidDensity(format!(
                "not Hermitian (max |ρ - ρ†| = {herm:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_SLACK || tr.im.abs() > TRACE_SLACK {
            return Err(QcorrError::InvalidDensity(format!("trace = {tr}")));
        }
        let spectrum = hermitian_eig(&m)?;
        let min = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_SLACK {
            return Err(QcorrError::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self(m))
    }

    /// Skips validation. Callers must already guarantee the axioms, e.g. for
    /// matrices built by trace- and positivity-preserving maps from a valid
    /// input.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Matrix entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Reduced state of one party of a three-qubit density matrix.
///
/// With `|q1 q2 q3>` ordering the joint index is `2 * i_a + i_b`.
pub fn partial_trace(rho: &DensityMatrix, keep: Party) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(QcorrError::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let m = rho.matrix();
    let out = match keep {
        Party::A => ComplexMatrix::from_fn(4, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]),
        Party::B => ComplexMatrix::from_fn(2, |k, l| (0..4).map(|i| m[(2 * i + k, 2 * i + l)]).sum()),
    };
    Ok(DensityMatrix::from_trusted(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_density(dim: usize, k: usize) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        m[(k, k)] = C64::new(1.0, 0.0);
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn product_state_marginal() {
        let rho = basis_density(8, 0);
        let b = partial_trace(&rho, Party::B).unwrap();
        assert_eq!(b.matrix(), basis_density(2, 0).matrix());
        let a = partial_trace(&rho, Party::A).unwrap();
        assert_eq!(a.matrix(), basis_density(4, 0).matrix());
    }

    #[test]
    fn marginal_bit_ordering() {
        // |011>: party a sees |01>, party b sees |1>
        let rho = basis_density(8, 3);
        assert_eq!(partial_trace(&rho, Party::A).unwrap().matrix(), basis_density(4, 1).matrix());
        assert_eq!(partial_trace(&rho, Party::B).unwrap().matrix(), basis_density(2, 1).matrix());
    }

    #[test]
    fn rejects_wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            partial_trace(&rho, Party::A),
            Err(QcorrError::DimensionMismatch { expected: 8, got: 4 })
        ));
    }

    #[test]
    fn validation_catches_each_axiom() {
        let mut m = ComplexMatrix::identity(2).scale(0.5);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_err(), "non-Hermitian");
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err(), "trace 2");
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[1.5, -0.5])).is_err(), "not PSD");
        assert!(DensityMatrix::new(ComplexMatrix::identity(3).scale(1.0 / 3.0)).is_err(), "dim 3");
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[0.25, 0.75])).is_ok());
    }
}
