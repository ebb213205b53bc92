//! Closed-form density matrices of GHZ and W states under same-axis Pauli
//! noise and isotropic noise, with `L = √κ σ` jump operators on every qubit
//! and no system Hamiltonian.
//!
//! The analytic solutions depend on κ and t only through the product κt,
//! which is the single parameter used here. [`lindblad`] integrates the
//! master equation numerically with κ and t kept separate and serves as an
//! independent check of every matrix below.

pub mod lindblad;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::qlinalg::{ComplexMatrix, DensityMatrix, C64};
use crate::states::{self, PureState};

pub use lindblad::{evolve_lindblad_checkpoints, evolve_lindblad_numeric, LindbladIntegrator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Ghz,
    W,
}

impl StateKind {
    pub const ALL: [StateKind; 2] = [StateKind::Ghz, StateKind::W];

    pub fn initial_state(self) -> PureState {
        match self {
            StateKind::Ghz => states::ghz(),
            StateKind::W => states::w(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StateKind::Ghz => "ghz",
            StateKind::W => "w",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoiseKind {
    #[serde(rename = "x")]
    PauliX,
    #[serde(rename = "y")]
    PauliY,
    #[serde(rename = "z")]
    PauliZ,
    #[serde(rename = "iso")]
    Isotropic,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 4] = [
        NoiseKind::PauliX,
        NoiseKind::PauliY,
        NoiseKind::PauliZ,
        NoiseKind::Isotropic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::PauliX => "x",
            NoiseKind::PauliY => "y",
            NoiseKind::PauliZ => "z",
            NoiseKind::Isotropic => "iso",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StateKind {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(StateKind::Ghz),
            "w" => Ok(StateKind::W),
            other => Err(QcorrError::InvalidParameter(format!("unknown state '{other}'"))),
        }
    }
}

impl FromStr for NoiseKind {
    type Err = QcorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(NoiseKind::PauliX),
            "y" => Ok(NoiseKind::PauliY),
            "z" => Ok(NoiseKind::PauliZ),
            "iso" | "isotropic" => Ok(NoiseKind::Isotropic),
            other => Err(QcorrError::InvalidParameter(format!("unknown noise '{other}'"))),
        }
    }
}

/// A (state, noise, κt) triple. κt may be `+∞` for long-time limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelPoint {
    pub state: StateKind,
    pub noise: NoiseKind,
    pub kt: f64,
}

impl ChannelPoint {
    pub fn new(state: StateKind, noise: NoiseKind, kt: f64) -> Result<Self> {
        check_kt(kt)?;
        Ok(Self { state, noise, kt })
    }
}

pub(crate) fn check_kt(kt: f64) -> Result<()> {
    if kt >= 0.0 {
        Ok(())
    } else {
        Err(QcorrError::InvalidParameter(format!(
            "κt must be non-negative, got {kt}"
        )))
    }
}

/// Exponential coefficients of the closed-form solutions at one κt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientSet {
    /// α± = 1 + 3e^{-4κt}, 1 - e^{-4κt}
    GhzX { alpha_plus: f64, alpha_minus: f64 },
    /// GHZ-X coefficients plus β1 = 3e^{-2κt} + e^{-6κt}, β2 = e^{-2κt} - e^{-6κt}
    GhzY {
        alpha_plus: f64,
        alpha_minus: f64,
        beta_1: f64,
        beta_2: f64,
    },
    /// z = e^{-6κt}
    GhzZ { z: f64 },
    /// α̃± = 1 + 3e^{-8κt}, 1 - e^{-8κt}; γ = 4e^{-12κt}
    GhzIsotropic {
        alpha_plus: f64,
        alpha_minus: f64,
        gamma: f64,
    },
    /// α1..α4 = 1 ± e^{-2κt} ± e^{-4κt} ± e^{-6κt}, β± = 1 ± e^{-6κt}.
    /// Shared by the W state under Pauli-X and Pauli-Y noise.
    WPauli {
        alpha: [f64; 4],
        beta_plus: f64,
        beta_minus: f64,
    },
    /// w = e^{-4κt}
    WZ { w: f64 },
    /// α̃1..α̃4 = 1 ± e^{-4κt} ± e^{-8κt} ± e^{-12κt}, β̃± = 1 ± e^{-12κt},
    /// γ̃± = e^{-8κt} ± e^{-12κt}.
    WIsotropic {
        alpha: [f64; 4],
        beta_plus: f64,
        beta_minus: f64,
        gamma_plus: f64,
        gamma_minus: f64,
    },
}

impl CoefficientSet {
    /// Named values, for reporting and invariant checks.
    pub fn values(&self) -> Vec<(&'static str, f64)> {
        match *self {
            CoefficientSet::GhzX {
                alpha_plus,
                alpha_minus,
            } => vec![("alpha_plus", alpha_plus), ("alpha_minus", alpha_minus)],
            CoefficientSet::GhzY {
                alpha_plus,
                alpha_minus,
                beta_1,
                beta_2,
            } => vec![
                ("alpha_plus", alpha_plus),
                ("alpha_minus", alpha_minus),
                ("beta_1", beta_1),
                ("beta_2", beta_2),
            ],
            CoefficientSet::GhzZ { z } => vec![("z", z)],
            CoefficientSet::GhzIsotropic {
                alpha_plus,
                alpha_minus,
                gamma,
            } => vec![
                ("alpha_plus", alpha_plus),
                ("alpha_minus", alpha_minus),
                ("gamma", gamma),
            ],
            CoefficientSet::WPauli {
                alpha,
                beta_plus,
                beta_minus,
            } => vec![
                ("alpha_1", alpha[0]),
                ("alpha_2", alpha[1]),
                ("alpha_3", alpha[2]),
                ("alpha_4", alpha[3]),
                ("beta_plus", beta_plus),
                ("beta_minus", beta_minus),
            ],
            CoefficientSet::WZ { w } => vec![("w", w)],
            CoefficientSet::WIsotropic {
                alpha,
                beta_plus,
                beta_minus,
                gamma_plus,
                gamma_minus,
            } => vec![
                ("alpha_1", alpha[0]),
                ("alpha_2", alpha[1]),
                ("alpha_3", alpha[2]),
                ("alpha_4", alpha[3]),
                ("beta_plus", beta_plus),
                ("beta_minus", beta_minus),
                ("gamma_plus", gamma_plus),
                ("gamma_minus", gamma_minus),
            ],
        }
    }
}

fn decay(rate: f64, kt: f64) -> f64 {
    if kt == 0.0 {
        1.0
    } else {
        (-rate * kt).exp()
    }
}

/// Four signed combinations `1 ± a ± b ± c` in the order
/// `(+,+,+)`, `(+,-,-)`, `(-,-,+)`, `(-,+,-)`.
fn signed_quad(a: f64, b: f64, c: f64) -> [f64; 4] {
    [
        1.0 + a + b + c,
        1.0 + a - b - c,
        1.0 - a - b + c,
        1.0 - a + b - c,
    ]
}

pub fn coefficients(point: ChannelPoint) -> Result<CoefficientSet> {
    check_kt(point.kt)?;
    let kt = point.kt;
    let e = |rate: f64| decay(rate, kt);
    Ok(match (point.state, point.noise) {
        (StateKind::Ghz, NoiseKind::PauliX) => CoefficientSet::GhzX {
            alpha_plus: 1.0 + 3.0 * e(4.0),
            alpha_minus: 1.0 - e(4.0),
        },
        (StateKind::Ghz, NoiseKind::PauliY) => CoefficientSet::GhzY {
            alpha_plus: 1.0 + 3.0 * e(4.0),
            alpha_minus: 1.0 - e(4.0),
            beta_1: 3.0 * e(2.0) + e(6.0),
            beta_2: e(2.0) - e(6.0),
        },
        (StateKind::Ghz, NoiseKind::PauliZ) => CoefficientSet::GhzZ { z: e(6.0) },
        (StateKind::Ghz, NoiseKind::Isotropic) => CoefficientSet::GhzIsotropic {
            alpha_plus: 1.0 + 3.0 * e(8.0),
            alpha_minus: 1.0 - e(8.0),
            gamma: 4.0 * e(12.0),
        },
        (StateKind::W, NoiseKind::PauliX | NoiseKind::PauliY) => CoefficientSet::WPauli {
            alpha: signed_quad(e(2.0), e(4.0), e(6.0)),
            beta_plus: 1.0 + e(6.0),
            beta_minus: 1.0 - e(6.0),
        },
        (StateKind::W, NoiseKind::PauliZ) => CoefficientSet::WZ { w: e(4.0) },
        (StateKind::W, NoiseKind::Isotropic) => CoefficientSet::WIsotropic {
            alpha: signed_quad(e(4.0), e(8.0), e(12.0)),
            beta_plus: 1.0 + e(12.0),
            beta_minus: 1.0 - e(12.0),
            gamma_plus: e(8.0) + e(12.0),
            gamma_minus: e(8.0) - e(12.0),
        },
    })
}

/// Sparse real symmetric builder: every entry is mirrored.
struct SymmetricBuilder {
    m: ComplexMatrix,
    scale: f64,
}

impl SymmetricBuilder {
    fn new(scale: f64) -> Self {
        Self {
            m: ComplexMatrix::zeros(8),
            scale,
        }
    }

    fn set(&mut self, i: usize, j: usize, value: f64) -> &mut Self {
        let v = C64::new(value * self.scale, 0.0);
        self.m[(i, j)] = v;
        self.m[(j, i)] = v;
        self
    }

    fn finish(self) -> DensityMatrix {
        DensityMatrix::from_trusted(self.m)
    }
}

/// Closed-form density matrix at `point`.
pub fn evolve_analytic(point: ChannelPoint) -> DensityMatrix {
    let coeffs = coefficients(point).expect("ChannelPoint guarantees κt >= 0");
    let s2 = std::f64::consts::SQRT_2;
    match (coeffs, point.noise) {
        (CoefficientSet::GhzX {
            alpha_plus,
            alpha_minus,
        }, _) => {
            let mut b = SymmetricBuilder::new(1.0 / 8.0);
            b.set(0, 0, alpha_plus).set(7, 7, alpha_plus).set(0, 7, alpha_plus);
            for i in 1..7 {
                b.set(i, i, alpha_minus).set(i, 7 - i, alpha_minus);
            }
            b.finish()
        }
        (CoefficientSet::GhzY {
            alpha_plus,
            alpha_minus,
            beta_1,
            beta_2,
        }, _) => {
            let mut b = SymmetricBuilder::new(1.0 / 8.0);
            b.set(0, 0, alpha_plus).set(7, 7, alpha_plus).set(0, 7, beta_1);
            for i in 1..7 {
                b.set(i, i, alpha_minus).set(i, 7 - i, -beta_2);
            }
            b.finish()
        }
        (CoefficientSet::GhzZ { z }, _) => {
            let mut b = SymmetricBuilder::new(0.5);
            b.set(0, 0, 1.0).set(7, 7, 1.0).set(0, 7, z);
            b.finish()
        }
        (CoefficientSet::GhzIsotropic {
            alpha_plus,
            alpha_minus,
            gamma,
        }, _) => {
            let mut b = SymmetricBuilder::new(1.0 / 8.0);
            b.set(0, 0, alpha_plus).set(7, 7, alpha_plus).set(0, 7, gamma);
            for i in 1..7 {
                b.set(i, i, alpha_minus);
            }
            b.finish()
        }
        (CoefficientSet::WPauli {
            alpha: [a1, a2, a3, a4],
            beta_plus: bp,
            beta_minus: bm,
        }, noise) => {
            // Pauli-Y flips the sign of every off-diagonal α2 and α3 entry.
            let s = if noise == NoiseKind::PauliY { -1.0 } else { 1.0 };
            let mut b = SymmetricBuilder::new(1.0 / 16.0);
            b.set(0, 0, 2.0 * a2)
                .set(0, 3, s * s2 * a2)
                .set(0, 5, s * s2 * a2)
                .set(0, 6, s * a2);
            b.set(1, 1, 2.0 * a1)
                .set(1, 2, s2 * a1)
                .set(1, 4, s2 * a1)
                .set(1, 7, s * a3);
            b.set(2, 2, 2.0 * bp).set(2, 4, a1).set(2, 7, s * s2 * a3);
            b.set(3, 3, 2.0 * bm).set(3, 5, a4).set(3, 6, s2 * a4);
            b.set(4, 4, 2.0 * bp).set(4, 7, s * s2 * a3);
            b.set(5, 5, 2.0 * bm).set(5, 6, s2 * a4);
            b.set(6, 6, 2.0 * a4);
            b.set(7, 7, 2.0 * a3);
            b.finish()
        }
        (CoefficientSet::WZ { w }, _) => {
            let mut b = SymmetricBuilder::new(0.25);
            b.set(1, 1, 2.0).set(1, 2, s2 * w).set(1, 4, s2 * w);
            b.set(2, 2, 1.0).set(2, 4, w);
            b.set(4, 4, 1.0);
            b.finish()
        }
        (CoefficientSet::WIsotropic {
            alpha: [a1, a2, a3, a4],
            beta_plus: bp,
            beta_minus: bm,
            gamma_plus: gp,
            gamma_minus: gm,
        }, _) => {
            let mut b = SymmetricBuilder::new(1.0 / 8.0);
            b.set(0, 0, a2);
            b.set(1, 1, a1).set(1, 2, s2 * gp).set(1, 4, s2 * gp);
            b.set(2, 2, bp).set(2, 4, gp);
            b.set(3, 3, bm).set(3, 5, gm).set(3, 6, s2 * gm);
            b.set(4, 4, bp);
            b.set(5, 5, bm).set(5, 6, s2 * gm);
            b.set(6, 6, a4);
            b.set(7, 7, a3);
            b.finish()
        }
    }
}

/// All eight (state, noise) combinations in a fixed order.
pub fn all_channels() -> impl Iterator<Item = (StateKind, NoiseKind)> {
    StateKind::ALL
        .into_iter()
        .flat_map(|s| NoiseKind::ALL.into_iter().map(move |n| (s, n)))
}
