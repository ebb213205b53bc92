//! Quantum correlation of three-qubit GHZ and W states under Pauli and
//! isotropic Lindblad noise, measured by measurement-induced disturbance
//! (MID) and its optimized variant (AMID).
//!
//! The bipartition is fixed throughout: qubits 1 and 2 form party `a`
//! (dimension 4), qubit 3 forms party `b` (dimension 2). Basis states are
//! ordered `|q1 q2 q3>` with qubit 1 most significant.
//!
//! ```
//! use qcorr_core::{channels::{evolve_analytic, ChannelPoint, NoiseKind, StateKind}, mid::mid};
//!
//! let rho = evolve_analytic(ChannelPoint::new(StateKind::Ghz, NoiseKind::PauliX, 0.7).unwrap());
//! let m = mid(&rho).unwrap();
//! assert!((m.mid - 1.0).abs() < 1e-9);
//! ```

pub mod amid;
pub mod channels;
pub mod error;
pub mod mid;
pub mod qlinalg;
pub mod reference;
pub mod states;
pub mod sweep;

pub use amid::{amid, amid_objective, AmidConfig, AmidResult, LocalUnitaryAngles};
pub use channels::{evolve_analytic, ChannelPoint, CoefficientSet, NoiseKind, StateKind};
pub use error::{QcorrError, Result};
pub use mid::{mid, MidResult, ProjectorSet};
pub use qlinalg::{C64, ComplexMatrix, DensityMatrix, HermitianSpectrum, Party};
pub use sweep::{CorrelationPoint, Measure, SweepConfig};
