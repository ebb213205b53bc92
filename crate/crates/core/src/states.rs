//! Initial three-qubit pure states.

use crate::error::{QcorrError, Result};
use crate::qlinalg::{ComplexMatrix, DensityMatrix, C64};

pub const NORM_TOLERANCE: f64 = 1e-12;

/// Index of a computational basis state `|q1 q2 q3>`.
pub const fn basis_index(q1: usize, q2: usize, q3: usize) -> usize {
    (q1 << 2) | (q2 << 1) | q3
}

/// Three-qubit state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Accepts any eight amplitudes; normalization is checked by
    /// [`density_of`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 8 {
            return Err(QcorrError::DimensionMismatch {
                expected: 8,
                got: amplitudes.len(),
            });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `(|000> + |111>) / √2`
pub fn ghz() -> PureState {
    let mut amps = vec![C64::new(0.0, 0.0); 8];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    amps[basis_index(0, 0, 0)] = C64::new(r, 0.0);
    amps[basis_index(1, 1, 1)] = C64::new(r, 0.0);
    PureState { amplitudes: amps }
}

/// `(|100> + √n e^{iγ}|010> + √(n+1) e^{iδ}|001>) / √(2 + 2n)`
pub fn w_n(n: f64, gamma: f64, delta: f64) -> Result<PureState> {
    if !n.is_finite() || n < 0.0 {
        return Err(QcorrError::InvalidParameter(format!(
            "W_n weight must be a finite non-negative number, got {n}"
        )));
    }
    let norm = (2.0 + 2.0 * n).sqrt();
    let mut amps = vec![C64::new(0.0, 0.0); 8];
    amps[basis_index(1, 0, 0)] = C64::new(1.0 / norm, 0.0);
    amps[basis_index(0, 1, 0)] = C64::from_polar(n.sqrt() / norm, gamma);
    amps[basis_index(0, 0, 1)] = C64::from_polar((n + 1.0).sqrt() / norm, delta);
    Ok(PureState { amplitudes: amps })
}

/// `(|100> + |010> + √2|001>) / 2`, i.e. `w_n(1, 0, 0)`.
pub fn w() -> PureState {
    w_n(1.0, 0.0, 0.0).expect("n = 1 is valid")
}

/// `|ψ><ψ|`
pub fn density_of(psi: &PureState) -> Result<DensityMatrix> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(QcorrError::Unnormalized(norm));
    }
    DensityMatrix::new(ComplexMatrix::projector(psi.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{hermitian_eig, von_neumann_entropy};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn ghz_amplitudes() {
        let g = ghz();
        assert!((g.norm() - 1.0).abs() < 1e-15);
        assert_eq!(g.amplitude(0), C64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(g.amplitude(7), C64::new(FRAC_1_SQRT_2, 0.0));
        let rho = density_of(&g).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ghz_density_is_rank_one_and_pure() {
        let rho = density_of(&ghz()).unwrap();
        let s = hermitian_eig(rho.matrix()).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(s.eigenvalues[1..].iter().all(|l| l.abs() < 1e-14));
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn w_state_amplitudes() {
        let s = w();
        assert!((s.amplitude(basis_index(1, 0, 0)).re - 0.5).abs() < 1e-15);
        assert!((s.amplitude(basis_index(0, 1, 0)).re - 0.5).abs() < 1e-15);
        assert!((s.amplitude(basis_index(0, 0, 1)).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn w_n_zero_drops_middle_term() {
        let s = w_n(0.0, 0.0, 0.0).unwrap();
        assert_eq!(s.amplitude(basis_index(0, 1, 0)), C64::new(0.0, 0.0));
        assert!((s.amplitude(basis_index(1, 0, 0)).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(basis_index(0, 0, 1)).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn w_n_with_phase_is_normalized() {
        assert!((w_n(1.0, PI, 0.0).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn w_n_rejects_negative_weight() {
        assert!(w_n(-0.5, 0.0, 0.0).is_err());
        assert!(w_n(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn density_of_rejects_unnormalized() {
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[0] = C64::new(1.1, 0.0);
        let psi = PureState::new(amps).unwrap();
        assert!(matches!(density_of(&psi), Err(QcorrError::Unnormalized(_))));
        assert!(PureState::new(vec![C64::new(1.0, 0.0); 4]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn w_n_always_unit_norm(n in 0.0f64..50.0, g in -10.0f64..10.0, d in -10.0f64..10.0) {
                let psi = w_n(n, g, d).unwrap();
                prop_assert!((psi.norm() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn density_of_is_idempotent(n in 0.0f64..20.0, g in -4.0f64..4.0, d in -4.0f64..4.0) {
                let rho = density_of(&w_n(n, g, d).unwrap()).unwrap();
                let sq = rho.matrix() * rho.matrix();
                prop_assert!(sq.max_abs_diff(rho.matrix()) < 1e-12);
            }
        }
    }
}
