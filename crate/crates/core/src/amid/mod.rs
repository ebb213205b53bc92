//! Ameliorated MID: the measurement-induced disturbance minimized over
//! product measurements `U_1 ⊗ U_2` on party `a` and `U_3` on party `b`,
//! each `U_j` a general single-qubit unitary parameterized by three angles.

pub mod simplex;

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::mid::{dephase, dephase_marginal, ProjectorSet};
use crate::qlinalg::{
    kron_vec, partial_trace, shannon_entropy, von_neumann_entropy, ComplexMatrix, DensityMatrix,
    Party, C64,
};

pub use simplex::{Minimum, NelderMead};

/// Nine angles, stored qubit by qubit as `(ψ, θ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalUnitaryAngles([f64; 9]);

impl LocalUnitaryAngles {
    pub const IDENTITY: LocalUnitaryAngles = LocalUnitaryAngles([0.0; 9]);

    /// `[ψ1, θ1, φ1, ψ2, θ2, φ2, ψ3, θ3, φ3]`
    pub fn from_array(values: [f64; 9]) -> Self {
        Self(values)
    }

    /// `[θ1, φ1, ψ1, θ2, φ2, ψ2, θ3, φ3, ψ3]`
    pub fn from_theta_phi_psi(values: [f64; 9]) -> Self {
        let mut out = [0.0; 9];
        for j in 0..3 {
            out[3 * j] = values[3 * j + 2];
            out[3 * j + 1] = values[3 * j];
            out[3 * j + 2] = values[3 * j + 1];
        }
        Self(out)
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let arr: [f64; 9] = values.try_into().map_err(|_| QcorrError::DimensionMismatch {
            expected: 9,
            got: values.len(),
        })?;
        Ok(Self(arr))
    }

    pub fn as_array(&self) -> &[f64; 9] {
        &self.0
    }

    /// `(ψ, θ, φ)` of qubit `j` (0-based).
    pub fn qubit(&self, j: usize) -> (f64, f64, f64) {
        (self.0[3 * j], self.0[3 * j + 1], self.0[3 * j + 2])
    }

    /// `(y0, y1, y2, y3)` of qubit `j`.
    pub fn coefficients(&self, j: usize) -> [f64; 4] {
        let (psi, theta, phi) = self.qubit(j);
        unitary_coefficients(psi, theta, phi)
    }
}

fn unitary_coefficients(psi: f64, theta: f64, phi: f64) -> [f64; 4] {
    let (sp, cp) = psi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (sf, cf) = phi.sin_cos();
    [cp, sp * ct, sp * st * sf, sp * st * cf]
}

/// `U = y0 I + i (y1 σx + y2 σy + y3 σz)`
pub fn local_unitary(psi: f64, theta: f64, phi: f64) -> ComplexMatrix {
    let [y0, y1, y2, y3] = unitary_coefficients(psi, theta, phi);
    let mut u = ComplexMatrix::zeros(2);
    u[(0, 0)] = C64::new(y0, y3);
    u[(0, 1)] = C64::new(y2, y1);
    u[(1, 0)] = C64::new(-y2, y1);
    u[(1, 1)] = C64::new(y0, -y3);
    u
}

/// Rotated bases `U_j |k>` for the three qubits.
fn rotated_bases(angles: &LocalUnitaryAngles) -> [[[C64; 2]; 2]; 3] {
    let mut out = [[[C64::new(0.0, 0.0); 2]; 2]; 3];
    for (j, basis) in out.iter_mut().enumerate() {
        let (psi, theta, phi) = angles.qubit(j);
        let u = local_unitary(psi, theta, phi);
        for (k, v) in basis.iter_mut().enumerate() {
            *v = [u[(0, k)], u[(1, k)]];
        }
    }
    out
}

/// Measurement sets `{U1|i> ⊗ U2|j>}` on party a and `{U3|k>}` on party b.
pub fn rotated_projectors(angles: &LocalUnitaryAngles) -> (ProjectorSet, ProjectorSet) {
    let [b1, b2, b3] = rotated_bases(angles);
    let a: Vec<Vec<C64>> = b1
        .iter()
        .flat_map(|u| b2.iter().map(move |v| kron_vec(u, v)))
        .collect();
    let b: Vec<Vec<C64>> = b3.iter().map(|v| v.to_vec()).collect();
    (
        ProjectorSet::from_vectors(Party::A, a).expect("unitary columns are orthonormal"),
        ProjectorSet::from_vectors(Party::B, b).expect("unitary columns are orthonormal"),
    )
}

/// `S(Ω(ρ)) - S(ρ) + Σ_x [S(ρ^x) - S(Ω(ρ^x))]` evaluated with explicit
/// dephasing maps.
pub fn amid_objective(rho: &DensityMatrix, angles: &LocalUnitaryAngles) -> Result<f64> {
    let (set_a, set_b) = rotated_projectors(angles);
    let omega = dephase(rho, &set_a, &set_b)?;
    let rho_a = partial_trace(rho, Party::A)?;
    let rho_b = partial_trace(rho, Party::B)?;
    let s_rho = von_neumann_entropy(rho)?;
    let s_omega = von_neumann_entropy(&omega)?;
    let s_a = von_neumann_entropy(&rho_a)?;
    let s_b = von_neumann_entropy(&rho_b)?;
    let s_omega_a = von_neumann_entropy(&dephase_marginal(&rho_a, &set_a)?)?;
    let s_omega_b = von_neumann_entropy(&dephase_marginal(&rho_b, &set_b)?)?;
    Ok(s_omega - s_rho + (s_a - s_omega_a) + (s_b - s_omega_b))
}

/// The same objective specialised to rank-1 product measurements: every
/// dephased state is diagonal in the measured basis, so its entropy is the
/// Shannon entropy of the outcome distribution.
#[derive(Debug, Clone)]
pub struct AmidObjective {
    rho: ComplexMatrix,
    /// `S(ρ^a) + S(ρ^b) - S(ρ)`
    constant: f64,
}

impl AmidObjective {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 8 {
            return Err(QcorrError::DimensionMismatch {
                expected: 8,
                got: rho.dim(),
            });
        }
        let s_rho = von_neumann_entropy(rho)?;
        let s_a = von_neumann_entropy(&partial_trace(rho, Party::A)?)?;
        let s_b = von_neumann_entropy(&partial_trace(rho, Party::B)?)?;
        Ok(Self {
            rho: rho.matrix().clone(),
            constant: s_a + s_b - s_rho,
        })
    }

    pub fn evaluate(&self, angles: &LocalUnitaryAngles) -> f64 {
        let [b1, b2, b3] = rotated_bases(angles);
        let mut p = [0.0; 8];
        for i in 0..2 {
            for j in 0..2 {
                let ij = kron_vec(&b1[i], &b2[j]);
                for k in 0..2 {
                    let n = kron_vec(&ij, &b3[k]);
                    p[4 * i + 2 * j + k] = self.rho.expectation(&n).re;
                }
            }
        }
        let pa: Vec<f64> = (0..4).map(|x| p[2 * x] + p[2 * x + 1]).collect();
        let pb: Vec<f64> = (0..2).map(|k| (0..4).map(|x| p[2 * x + k]).sum()).collect();
        shannon_entropy(&p) - shannon_entropy(&pa) - shannon_entropy(&pb) + self.constant
    }
}

/// Angles reported as optima for these channels, written `(θ, φ, ψ)` per
/// qubit. Each is tried in both component orders.
const WARM_STARTS: [[f64; 9]; 5] = [
    [1.3, 4.43, 2.31, 1.3, 4.43, 2.31, 1.3, 4.43, 2.31],
    [2.23, 0.0, 1.1, 1.1, 0.0, 1.1, 1.1, 0.0, 1.1],
    [2.2, 2.3, 2.2, 2.2, 2.3, 2.2, 2.2, 2.3, 2.2],
    [1.57; 9],
    [1.57, 2.22, 1.57, 1.57, 2.22, 1.57, 1.57, 2.22, 1.57],
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmidConfig {
    /// Number of random starts, in addition to the identity and warm starts.
    pub restarts: usize,
    pub seed: u64,
    /// Simplex diameter at which a local search stops.
    pub tolerance: f64,
    pub max_evals: usize,
}

impl Default for AmidConfig {
    fn default() -> Self {
        Self {
            restarts: 24,
            seed: 42,
            tolerance: 1e-6,
            max_evals: 2000,
        }
    }
}

impl AmidConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(QcorrError::InvalidParameter("restarts must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(QcorrError::InvalidParameter("tolerance must be positive".into()));
        }
        if self.max_evals == 0 {
            return Err(QcorrError::InvalidParameter("max_evals must be positive".into()));
        }
        Ok(())
    }

    /// Identity, then warm starts, then `restarts` uniform draws in [0, 2π)⁹.
    pub fn starts(&self) -> Vec<LocalUnitaryAngles> {
        let mut starts = vec![LocalUnitaryAngles::IDENTITY];
        for w in WARM_STARTS {
            starts.push(LocalUnitaryAngles::from_theta_phi_psi(w));
            starts.push(LocalUnitaryAngles::from_array(w));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.restarts {
            let mut a = [0.0; 9];
            for x in &mut a {
                *x = rng.gen_range(0.0..TAU);
            }
            starts.push(LocalUnitaryAngles::from_array(a));
        }
        starts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmidResult {
    pub amid: f64,
    pub argmin: LocalUnitaryAngles,
    /// Local searches run, including the identity and warm starts.
    pub restarts_used: usize,
    pub objective_evals: usize,
}

pub fn amid(rho: &DensityMatrix, config: &AmidConfig) -> Result<AmidResult> {
    config.validate()?;
    let objective = AmidObjective::new(rho)?;
    let optimizer = NelderMead {
        tolerance: config.tolerance,
        max_evals: config.max_evals,
        initial_step: 0.5,
    };
    let starts = config.starts();
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|s| {
            optimizer.minimize(
                |x| objective.evaluate(&LocalUnitaryAngles::from_slice(x).expect("nine angles")),
                s.as_array(),
            )
        })
        .collect();

    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.value < runs[best].value {
            best = i;
        }
    }
    let argmin = LocalUnitaryAngles::from_slice(&runs[best].point)?;
    Ok(AmidResult {
        amid: amid_objective(rho, &argmin)?,
        argmin,
        restarts_used: runs.len(),
        objective_evals: runs.iter().map(|r| r.evals).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{evolve_analytic, ChannelPoint, NoiseKind, StateKind};
    use crate::mid::mid;
    use crate::qlinalg::pauli;
    use crate::states::density_of;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn evolved(state: StateKind, noise: NoiseKind, kt: f64) -> DensityMatrix {
        evolve_analytic(ChannelPoint::new(state, noise, kt).unwrap())
    }

    #[test]
    fn zero_psi_is_identity() {
        for (t, f) in [(0.0, 0.0), (1.2, -3.0), (5.0, 0.7)] {
            assert!(local_unitary(0.0, t, f).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        }
    }

    #[test]
    fn quarter_turn_about_x() {
        let u = local_unitary(FRAC_PI_2, 0.0, 0.3);
        let ix = pauli::x().scale_complex(C64::new(0.0, 1.0));
        assert!(u.max_abs_diff(&ix) < 1e-15);
    }

    #[test]
    fn angle_orders_agree() {
        let a = LocalUnitaryAngles::from_theta_phi_psi([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        assert_eq!(a.qubit(0), (3.0, 1.0, 2.0));
        assert_eq!(a.qubit(2), (9.0, 7.0, 8.0));
        assert!(LocalUnitaryAngles::from_slice(&[0.0; 8]).is_err());
    }

    #[test]
    fn identity_angles_give_computational_sets() {
        let (a, b) = rotated_projectors(&LocalUnitaryAngles::IDENTITY);
        assert!(a.same_up_to_order(&ProjectorSet::computational(Party::A), 1e-15));
        assert!(b.same_up_to_order(&ProjectorSet::computational(Party::B), 1e-15));
    }

    #[test]
    fn ghz_z_identity_objective_equals_mid() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliZ, 0.4);
        let o = amid_objective(&rho, &LocalUnitaryAngles::IDENTITY).unwrap();
        assert!((o - mid(&rho).unwrap().mid).abs() < 1e-12);
    }

    #[test]
    fn reported_ghz_x_angles_lie_below_one() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliX, 0.5);
        let a = LocalUnitaryAngles::from_theta_phi_psi(WARM_STARTS[0]);
        let o = amid_objective(&rho, &a).unwrap();
        assert!(o < 1.0, "{o}");
    }

    #[test]
    fn product_state_objective_nonnegative() {
        let mut d = vec![0.0; 8];
        d[0] = 1.0;
        let rho = DensityMatrix::new(ComplexMatrix::diag(&d)).unwrap();
        for s in AmidConfig::default().starts() {
            assert!(amid_objective(&rho, &s).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn ghz_x_amid_below_mid() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliX, 0.5);
        let r = amid(&rho, &AmidConfig::default()).unwrap();
        assert!(r.amid <= 1.0 + 1e-6);
        assert!((r.amid - amid_objective(&rho, &r.argmin).unwrap()).abs() < 1e-12);
        assert_eq!(r.restarts_used, 1 + 2 * WARM_STARTS.len() + 24);
    }

    #[test]
    fn ghz_z_amid_matches_mid() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliZ, 0.2);
        let r = amid(&rho, &AmidConfig::default()).unwrap();
        assert!((r.amid - mid(&rho).unwrap().mid).abs() < 2e-3);
    }

    #[test]
    fn w_z_optimum_is_a_computational_measurement() {
        let rho = evolved(StateKind::W, NoiseKind::PauliZ, 0.3);
        let r = amid(&rho, &AmidConfig::default()).unwrap();
        assert!((r.amid - mid(&rho).unwrap().mid).abs() < 2e-3);
        let (a, b) = rotated_projectors(&r.argmin);
        assert!(a.same_up_to_order(&ProjectorSet::computational(Party::A), 1e-3));
        assert!(b.same_up_to_order(&ProjectorSet::computational(Party::B), 1e-3));
    }

    #[test]
    fn pure_ghz_amid_is_one() {
        let rho = density_of(&crate::states::ghz()).unwrap();
        let r = amid(&rho, &AmidConfig::default()).unwrap();
        assert!((r.amid - 1.0).abs() < 1e-6);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let rho = evolved(StateKind::W, NoiseKind::PauliX, 0.2);
        let cfg = AmidConfig {
            restarts: 6,
            ..AmidConfig::default()
        };
        assert_eq!(amid(&rho, &cfg).unwrap(), amid(&rho, &cfg).unwrap());
    }

    #[test]
    fn rejects_zero_restarts() {
        let rho = evolved(StateKind::W, NoiseKind::PauliX, 0.2);
        let cfg = AmidConfig {
            restarts: 0,
            ..AmidConfig::default()
        };
        assert!(amid(&rho, &cfg).is_err());
    }

    mod props {
        use super::*;
        use crate::channels::all_channels;
        use proptest::prelude::*;

        fn angles() -> impl Strategy<Value = LocalUnitaryAngles> {
            prop::array::uniform9(-10.0f64..10.0).prop_map(LocalUnitaryAngles::from_array)
        }

        proptest! {
            #[test]
            fn unitary_for_any_angles(psi in -10.0f64..10.0, t in -10.0f64..10.0, f in -10.0f64..10.0) {
                let u = local_unitary(psi, t, f);
                prop_assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
                let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
                prop_assert!((det.norm() - 1.0).abs() < 1e-12);
                let y = unitary_coefficients(psi, t, f);
                prop_assert!((y.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn rotated_sets_are_complete_and_commuting(a in angles()) {
                let (sa, sb) = rotated_projectors(&a);
                for (set, dim) in [(&sa, 4), (&sb, 2)] {
                    let mut sum = ComplexMatrix::zeros(dim);
                    for p in set.projectors() {
                        sum = &sum + p;
                    }
                    prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(dim)) < 1e-12);
                }
                for p in sa.projectors() {
                    for q in sa.projectors() {
                        prop_assert!((p * q).max_abs_diff(&(q * p)) < 1e-12);
                    }
                }
            }

            #[test]
            fn fast_objective_matches_full(a in angles(), kt in 0.0f64..3.0) {
                for (s, n) in all_channels() {
                    let rho = evolved(s, n, kt);
                    let fast = AmidObjective::new(&rho).unwrap().evaluate(&a);
                    let full = amid_objective(&rho, &a).unwrap();
                    prop_assert!((fast - full).abs() < 1e-12, "{s}-{n}: {fast} vs {full}");
                }
            }

            #[test]
            fn periodic_and_phase_invariant(a in angles(), shift in prop::array::uniform9(-2i32..3), kt in 0.0f64..2.0) {
                let rho = evolved(StateKind::W, NoiseKind::Isotropic, kt);
                let base = amid_objective(&rho, &a).unwrap();
                let mut shifted = *a.as_array();
                for (x, k) in shifted.iter_mut().zip(shift) {
                    *x += TAU * k as f64;
                }
                let o = amid_objective(&rho, &LocalUnitaryAngles::from_array(shifted)).unwrap();
                prop_assert!((o - base).abs() < 1e-12);
                // ψ → ψ + π negates every y_p, i.e. U → -U.
                let mut flipped = *a.as_array();
                for j in 0..3 {
                    flipped[3 * j] += PI;
                }
                let o = amid_objective(&rho, &LocalUnitaryAngles::from_array(flipped)).unwrap();
                prop_assert!((o - base).abs() < 1e-12);
            }
        }
    }
}
