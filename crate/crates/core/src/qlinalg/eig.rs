//! Cyclic Jacobi eigendecomposition for small Hermitian matrices.
//!
//! Each rotation first strips the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the real symmetric Jacobi rotation of Numerical
//! Recipes (the `t = sgn(θ)/(|θ| + sqrt(θ² + 1))` branch). Sweeps visit
//! pairs `(p, q)` with `p < q` in row order, so the result is a pure function
//! of the input bits.

use crate::error::{QcorrError, Result};

use super::matrix::{ComplexMatrix, C64};

/// Off-diagonal Frobenius norm at which sweeping stops, relative to
/// `max(1, ||A||_F)`.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Hermiticity slack accepted on input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Components at or below this modulus are skipped when fixing the phase.
const PHASE_THRESHOLD: f64 = 1e-12;

/// Eigenvalues sorted descending, with orthonormal eigenvectors aligned to
/// them.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σ λ_k |v_k><v_k|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        out
    }

    /// Largest `|<v_i|v_j> - δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, u) in self.eigenvectors.iter().enumerate() {
            for (j, v) in self.eigenvectors.iter().enumerate() {
                let dot: C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let herm_err = a.hermiticity_error();
    if herm_err > HERMITIAN_TOLERANCE || !a.is_finite() {
        return Err(QcorrError::NonHermitian(herm_err));
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let stop = JACOBI_TOLERANCE * m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the sweep order for exact ties.
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));

    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut col = v.column(k);
            fix_phase(&mut col);
            col
        })
        .collect();
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let n = m.dim();
    let phase = apq / b; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) R on the (p, q) plane:
    // G_pp = c, G_pq = s, G_qp = -s e^{-iφ}, G_qq = c e^{-iφ}.
    let e_minus = phase.conj();
    let g_qp = -e_minus * s;
    let g_qq = e_minus * c;

    // M <- M G
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c + mkq * g_qp;
        m[(k, q)] = mkp * s + mkq * g_qq;
    }
    // M <- G^dagger M
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c + mqk * g_qp.conj();
        m[(q, k)] = mpk * s + mqk * g_qq.conj();
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(app - t * b, 0.0);
    m[(q, q)] = C64::new(aqq + t * b, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * s + vkq * g_qq;
    }
}

/// Rotates `v` so that its first component above the threshold is real and
/// positive.
pub fn fix_phase(v: &mut [C64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_THRESHOLD).copied() {
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}
