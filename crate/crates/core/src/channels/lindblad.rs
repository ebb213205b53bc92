//! Fixed-step RK4 integration of the Lindblad master equation with
//! `L = √κ σ` jump operators and no Hamiltonian.

use crate::error::{QcorrError, Result};
use crate::qlinalg::{kron, pauli, ComplexMatrix, DensityMatrix};
use crate::states::density_of;

use super::{NoiseKind, StateKind};

/// Largest accepted step is `MAX_STEP_KT / κ`.
pub const MAX_STEP_KT: f64 = 1e-3;
pub const TRACE_DRIFT_LIMIT: f64 = 1e-9;

fn on_qubit(sigma: &ComplexMatrix, qubit: usize) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2);
    let factors: [&ComplexMatrix; 3] = match qubit {
        0 => [sigma, &i2, &i2],
        1 => [&i2, sigma, &i2],
        _ => [&i2, &i2, sigma],
    };
    let ab = kron(factors[0], factors[1]).expect("2x2 factors");
    kron(&ab, factors[2]).expect("4x2 factors")
}

/// Right-hand side of `dρ/dt = Σ (L ρ L† - ½{L†L, ρ})`.
#[derive(Debug, Clone)]
pub struct LindbladIntegrator {
    jumps: Vec<ComplexMatrix>,
    damping: ComplexMatrix,
    kappa: f64,
}

impl LindbladIntegrator {
    pub fn new(noise: NoiseKind, kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(QcorrError::InvalidParameter(format!(
                "rate κ must be positive and finite, got {kappa}"
            )));
        }
        let sigmas = match noise {
            NoiseKind::PauliX => vec![pauli::x()],
            NoiseKind::PauliY => vec![pauli::y()],
            NoiseKind::PauliZ => vec![pauli::z()],
            NoiseKind::Isotropic => vec![pauli::x(), pauli::y(), pauli::z()],
        };
        let root = kappa.sqrt();
        let mut jumps = Vec::new();
        for qubit in 0..3 {
            for s in &sigmas {
                jumps.push(on_qubit(s, qubit).scale(root));
            }
        }
        let mut damping = ComplexMatrix::zeros(8);
        for l in &jumps {
            damping = &damping + &l.adjoint().matmul(l);
        }
        Ok(Self {
            jumps,
            damping: damping.scale(0.5),
            kappa,
        })
    }

    pub fn jump_count(&self) -> usize {
        self.jumps.len()
    }

    pub fn derivative(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = &self.damping.matmul(rho) + &rho.matmul(&self.damping);
        out = out.scale(-1.0);
        for l in &self.jumps {
            // (L (L ρ)†)† = L ρ L†, keeping the sparse jump on the left.
            let sandwich = l.matmul(&l.matmul(rho).adjoint()).adjoint();
            out = &out + &sandwich;
        }
        out
    }

    fn step(&self, rho: &ComplexMatrix, h: f64) -> ComplexMatrix {
        let k1 = self.derivative(rho);
        let k2 = self.derivative(&(rho + &k1.scale(h / 2.0)));
        let k3 = self.derivative(&(rho + &k2.scale(h / 2.0)));
        let k4 = self.derivative(&(rho + &k3.scale(h)));
        let incr = &(&k1 + &k2.scale(2.0)) + &(&k3.scale(2.0) + &k4);
        (rho + &incr.scale(h / 6.0)).hermitian_part()
    }

    /// Integrates from `rho` over `duration` in equal steps no longer than `dt`.
    pub fn propagate(&self, rho: &ComplexMatrix, duration: f64, dt: f64) -> Result<ComplexMatrix> {
        self.check_step(dt)?;
        if !duration.is_finite() || duration < 0.0 {
            return Err(QcorrError::InvalidParameter(format!(
                "duration must be finite and non-negative, got {duration}"
            )));
        }
        let mut m = rho.clone();
        if duration == 0.0 {
            return Ok(m);
        }
        let steps = (duration / dt).ceil().max(1.0) as usize;
        let h = duration / steps as f64;
        for _ in 0..steps {
            m = self.step(&m, h);
        }
        let drift = (m.trace().re - rho.trace().re).abs();
        if drift > TRACE_DRIFT_LIMIT {
            return Err(QcorrError::TraceDrift(drift));
        }
        Ok(m)
    }

    fn check_step(&self, dt: f64) -> Result<()> {
        if dt.is_nan() || dt <= 0.0 || dt > MAX_STEP_KT / self.kappa {
            return Err(QcorrError::StepTooLarge {
                dt,
                kappa: self.kappa,
            });
        }
        Ok(())
    }
}

/// Numerically evolved state at time `t`.
pub fn evolve_lindblad_numeric(
    state: StateKind,
    noise: NoiseKind,
    kappa: f64,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    Ok(evolve_lindblad_checkpoints(state, noise, kappa, &[t], dt)?.remove(0))
}

/// One integration sampled at every time in `times` (sorted ascending).
pub fn evolve_lindblad_checkpoints(
    state: StateKind,
    noise: NoiseKind,
    kappa: f64,
    times: &[f64],
    dt: f64,
) -> Result<Vec<DensityMatrix>> {
    if times.iter().any(|t| t.is_nan()) || times.windows(2).any(|w| w[0] > w[1]) {
        return Err(QcorrError::InvalidParameter(
            "checkpoint times must be sorted ascending".into(),
        ));
    }
    let integrator = LindbladIntegrator::new(noise, kappa)?;
    integrator.check_step(dt)?;
    let mut rho = density_of(&state.initial_state())?.into_matrix();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        rho = integrator.propagate(&rho, t - now, dt)?;
        now = t;
        out.push(DensityMatrix::new(rho.clone())?);
    }
    Ok(out)
}
