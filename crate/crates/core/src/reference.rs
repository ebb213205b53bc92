//! Closed-form entropies and correlations for the channels that admit them.
//! Used as independent oracles for the generic pipeline in [`crate::mid`].

use serde::{Deserialize, Serialize};

use crate::channels::{check_kt, coefficients, ChannelPoint, CoefficientSet, NoiseKind, StateKind};
use crate::error::{QcorrError, Result};
use crate::qlinalg::{xlog2x, ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyKind {
    /// `S(ρ)`
    Rho,
    /// `S(Π(ρ))`
    PiRho,
}

/// Source of closed-form MID values.
pub trait MidOracle: Send + Sync {
    fn mid(&self, state: StateKind, noise: NoiseKind, kt: f64) -> Result<f64>;
}

/// The formulas in this module.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForm;

impl MidOracle for ClosedForm {
    fn mid(&self, state: StateKind, noise: NoiseKind, kt: f64) -> Result<f64> {
        reference_mid(state, noise, kt)
    }
}

fn unsupported(state: StateKind, noise: NoiseKind) -> QcorrError {
    QcorrError::Unsupported(format!("no closed form for {state}-{noise}"))
}

fn coeffs(state: StateKind, noise: NoiseKind, kt: f64) -> Result<CoefficientSet> {
    coefficients(ChannelPoint::new(state, noise, kt)?)
}

/// `(a + b ± √(a² + 2ab + 17b² - 2ac - 2bc + c²)) log2(...)` summed over ±,
/// the eigenvalue pair of the 3×3 coupled block.
fn coupled_pair(beta: f64, gamma: f64, alpha: f64) -> f64 {
    let disc = beta * beta + 2.0 * beta * gamma + 17.0 * gamma * gamma
        - 2.0 * beta * alpha
        - 2.0 * gamma * alpha
        + alpha * alpha;
    let root = disc.max(0.0).sqrt();
    let s = beta + gamma + alpha;
    xlog2x(s + root) + xlog2x(s - root)
}

/// Same pair written in terms of `e = e^{-4κt}` for the Pauli-Z W state.
fn wz_pair(e: f64) -> f64 {
    let root = (1.0 - 2.0 * e + 17.0 * e * e).sqrt();
    xlog2x(3.0 + e - root) + xlog2x(3.0 + e + root)
}

/// Closed-form MID in bits. (W, X) and (W, Y) have none.
pub fn reference_mid(state: StateKind, noise: NoiseKind, kt: f64) -> Result<f64> {
    check_kt(kt)?;
    match (state, noise, coeffs(state, noise, kt)?) {
        (StateKind::Ghz, NoiseKind::PauliX, _) => Ok(1.0),
        (
            _,
            _,
            CoefficientSet::GhzY {
                alpha_plus: ap,
                alpha_minus: am,
                beta_1: b1,
                beta_2: b2,
            },
        ) => Ok((xlog2x(ap - b1) + xlog2x(ap + b1)) / 8.0
            + 3.0 * (xlog2x(am - b2) + xlog2x(am + b2)) / 8.0
            - xlog2x(ap) / 4.0
            - 3.0 * xlog2x(am) / 4.0),
        (_, _, CoefficientSet::GhzZ { z }) => Ok(xlog2x(1.0 - z) / 2.0 + xlog2x(1.0 + z) / 2.0),
        (
            _,
            _,
            CoefficientSet::GhzIsotropic {
                alpha_plus: ap,
                gamma,
                ..
            },
        ) => Ok((xlog2x(ap + gamma) + xlog2x(ap - gamma)) / 8.0 - xlog2x(ap) / 4.0),
        (_, _, CoefficientSet::WZ { w: e }) => {
            Ok(-(5.0 + e) / 4.0 - xlog2x(1.0 + e) / 4.0 + wz_pair(e) / 8.0)
        }
        (
            _,
            _,
            CoefficientSet::WIsotropic {
                alpha: [a1, _, _, a4],
                beta_plus: bp,
                beta_minus: bm,
                gamma_plus: gp,
                gamma_minus: gm,
            },
        ) => {
            let e8 = if kt == 0.0 { 1.0 } else { (-8.0 * kt).exp() };
            Ok(-(1.0 + e8) / 2.0
                - (xlog2x(a1) + xlog2x(a4) + xlog2x(bp + gp) + xlog2x(bm + gm)) / 8.0
                + (coupled_pair(bp, gp, a1) + coupled_pair(bm, gm, a4)) / 16.0)
        }
        _ => Err(unsupported(state, noise)),
    }
}

/// Closed-form `S(ρ)` or `S(Π(ρ))` in bits.
pub fn reference_entropy(state: StateKind, noise: NoiseKind, kt: f64, which: EntropyKind) -> Result<f64> {
    check_kt(kt)?;
    use EntropyKind::{PiRho, Rho};
    let c = coeffs(state, noise, kt)?;
    let ghz_pi = |ap: f64, am: f64| 3.0 - xlog2x(ap) / 4.0 - 3.0 * xlog2x(am) / 4.0;
    match (c, which) {
        (CoefficientSet::GhzX { alpha_plus: ap, alpha_minus: am }, Rho) => {
            Ok(2.0 - xlog2x(ap) / 4.0 - 3.0 * xlog2x(am) / 4.0)
        }
        (CoefficientSet::GhzX { alpha_plus: ap, alpha_minus: am }, PiRho)
        | (CoefficientSet::GhzY { alpha_plus: ap, alpha_minus: am, .. }, PiRho) => Ok(ghz_pi(ap, am)),
        (
            CoefficientSet::GhzY {
                alpha_plus: ap,
                alpha_minus: am,
                beta_1: b1,
                beta_2: b2,
            },
            Rho,
        ) => Ok(3.0
            - (xlog2x(ap - b1) + xlog2x(ap + b1)) / 8.0
            - 3.0 * (xlog2x(am - b2) + xlog2x(am + b2)) / 8.0),
        (CoefficientSet::GhzZ { z }, Rho) => {
            Ok(1.0 - xlog2x(1.0 - z) / 2.0 - xlog2x(1.0 + z) / 2.0)
        }
        (CoefficientSet::GhzZ { .. }, PiRho) => Ok(1.0),
        (
            CoefficientSet::GhzIsotropic {
                alpha_plus: ap,
                alpha_minus: am,
                gamma,
            },
            Rho,
        ) => Ok(3.0
            - 3.0 * xlog2x(am) / 4.0
            - (xlog2x(ap - gamma) + xlog2x(ap + gamma)) / 8.0),
        (CoefficientSet::GhzIsotropic { alpha_plus: ap, alpha_minus: am, .. }, PiRho) => {
            Ok(ghz_pi(ap, am))
        }
        (CoefficientSet::WZ { w: e }, Rho) => {
            Ok((11.0 + e) / 4.0 - xlog2x(1.0 - e) / 4.0 - wz_pair(e) / 8.0)
        }
        (CoefficientSet::WZ { w: e }, PiRho) => {
            Ok(1.5 - xlog2x(1.0 - e) / 4.0 - xlog2x(1.0 + e) / 4.0)
        }
        (
            CoefficientSet::WIsotropic {
                alpha: [a1, a2, a3, a4],
                beta_plus: bp,
                beta_minus: bm,
                gamma_plus: gp,
                gamma_minus: gm,
            },
            which,
        ) => match which {
            Rho => {
                let e8 = if kt == 0.0 { 1.0 } else { (-8.0 * kt).exp() };
                Ok((7.0 + e8) / 2.0
                    - (xlog2x(a2) + xlog2x(a3) + xlog2x(bp - gp) + xlog2x(bm - gm)) / 8.0
                    - (coupled_pair(bp, gp, a1) + coupled_pair(bm, gm, a4)) / 16.0)
            }
            PiRho => Ok(3.0
                - (xlog2x(a1)
                    + xlog2x(a2)
                    + xlog2x(a3)
                    + xlog2x(a4)
                    + xlog2x(bp + gp)
                    + xlog2x(bp - gp)
                    + xlog2x(bm + gm)
                    + xlog2x(bm - gm))
                    / 8.0),
        },
        _ => Err(unsupported(state, noise)),
    }
}

/// Closed-form `Π(ρ)` for the W state under Pauli-X noise, `κt > 0`.
pub fn reference_pi_w_x(kt: f64) -> Result<ComplexMatrix> {
    if !kt.is_finite() || kt <= 0.0 {
        return Err(QcorrError::InvalidParameter(format!(
            "closed-form Π(ρ) needs finite κt > 0, got {kt}"
        )));
    }
    let CoefficientSet::WPauli {
        alpha: [a1, _, _, a4],
        beta_plus: bp,
        beta_minus: bm,
    } = coeffs(StateKind::W, NoiseKind::PauliX, kt)?
    else {
        unreachable!("W-X coefficients")
    };
    let (ch, sh, e) = (kt.cosh(), kt.sinh(), kt.exp());
    let (c2, s2, c4, s4) = ((2.0 * kt).cosh(), (2.0 * kt).sinh(), (4.0 * kt).cosh(), (4.0 * kt).sinh());
    let d = (1.0 + (4.0 * kt).exp()).powi(2);
    let g1 = 2.0 * e * ch * ch * sh * (2.0 - c2 + c4 + s2) / d;
    let g2 = (1.0 + (-6.0 * kt).exp() + 8.0 / d + 2.0 * (-3.0 * kt).exp() * sh) / 8.0;
    let g3 = (1.0 - (-6.0 * kt).exp() + 8.0 / d - 2.0 * (-3.0 * kt).exp() * ch) / 8.0;
    let g4 = 2.0 * e * ch * sh * sh * (2.0 + c2 + c4 - s2) / d;
    let h1 = e * sh * s2 * (2.0 + 2.0 * s2 + s4) / (2.0 * d);
    let h2 = e * ch * ch * sh * (2.0 - 2.0 * s2 + s4) / d;

    let mut m = ComplexMatrix::zeros(8);
    let mut set = |i: usize, j: usize, v: f64| {
        m[(i, j)] = C64::new(v, 0.0);
        m[(j, i)] = C64::new(v, 0.0);
    };
    set(0, 0, g1);
    set(1, 1, g2);
    set(6, 6, g3);
    set(7, 7, g4);
    set(0, 6, h1);
    set(1, 7, h2);
    let s = 1.0 / 16.0;
    set(2, 2, 2.0 * bp * s);
    set(4, 4, 2.0 * bp * s);
    set(2, 4, a1 * s);
    set(3, 3, 2.0 * bm * s);
    set(5, 5, 2.0 * bm * s);
    set(3, 5, a4 * s);
    Ok(m)
}

/// Combinations with a closed-form MID.
pub fn supported_channels() -> impl Iterator<Item = (StateKind, NoiseKind)> {
    crate::channels::all_channels()
        .filter(|&(s, n)| !(s == StateKind::W && matches!(n, NoiseKind::PauliX | NoiseKind::PauliY)))
}
