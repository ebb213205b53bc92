//! Measurement-induced disturbance.
//!
//! Each party is measured in the eigenbasis of its reduced state. The
//! resulting product measurement dephases ρ, and MID is the mutual
//! information lost in the process.

use serde::{Deserialize, Serialize};

use crate::error::{QcorrError, Result};
use crate::qlinalg::{
    hermitian_eig, kron, partial_trace, von_neumann_entropy, ComplexMatrix, DensityMatrix, Party,
    C64,
};

/// Eigenvalues closer than this are treated as one degenerate eigenspace.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;
/// Projected basis vectors shorter than this are skipped.
pub const DROP_THRESHOLD: f64 = 1e-8;
pub const PROJECTOR_TOLERANCE: f64 = 1e-10;

/// A complete set of orthogonal rank-1 projectors on one party.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet {
    party: Party,
    vectors: Vec<Vec<C64>>,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorSet {
    /// Validates orthogonality, completeness, Hermiticity and rank 1 of
    /// each projector (via `Tr P = 1`).
    pub fn new(party: Party, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = party.dim();
        if projectors.len() != dim {
            return Err(QcorrError::IncompleteProjectors(format!(
                "party {party:?} needs {dim} rank-1 projectors, got {}",
                projectors.len()
            )));
        }
        let mut sum = ComplexMatrix::zeros(dim);
        for (n, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(QcorrError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if p.hermiticity_error() > PROJECTOR_TOLERANCE {
                return Err(QcorrError::IncompleteProjectors(format!(
                    "projector {n} is not Hermitian"
                )));
            }
            if (p.trace().re - 1.0).abs() > PROJECTOR_TOLERANCE {
                return Err(QcorrError::IncompleteProjectors(format!(
                    "projector {n} does not have rank 1"
                )));
            }
            for (m, q) in projectors.iter().enumerate() {
                let expected = if n == m { p.clone() } else { ComplexMatrix::zeros(dim) };
                if p.matmul(q).max_abs_diff(&expected) > PROJECTOR_TOLERANCE {
                    return Err(QcorrError::IncompleteProjectors(format!(
                        "projectors {n} and {m} violate P_n P_m = δ_nm P_n"
                    )));
                }
            }
            sum = &sum + p;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim)) > PROJECTOR_TOLERANCE {
            return Err(QcorrError::IncompleteProjectors(
                "projectors do not sum to the identity".into(),
            ));
        }
        let vectors = projectors.iter().map(unit_vector_of).collect();
        Ok(Self {
            party,
            vectors,
            projectors,
        })
    }

    /// Projectors onto an orthonormal basis given as vectors.
    pub fn from_vectors(party: Party, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let projectors = vectors.iter().map(|v| ComplexMatrix::projector(v)).collect();
        let mut set = Self::new(party, projectors)?;
        set.vectors = vectors;
        Ok(set)
    }

    pub fn computational(party: Party) -> Self {
        let dim = party.dim();
        let vectors: Vec<Vec<C64>> = (0..dim).map(|k| basis_vector(dim, k)).collect();
        let projectors = vectors.iter().map(|v| ComplexMatrix::projector(v)).collect();
        Self {
            party,
            vectors,
            projectors,
        }
    }

    pub fn party(&self) -> Party {
        self.party
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Unit vectors spanning each projector, up to phase.
    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// True if some ordering of `self` matches `other` within `tol`.
    pub fn same_up_to_order(&self, other: &ProjectorSet, tol: f64) -> bool {
        self.party == other.party
            && self.projectors.iter().all(|p| {
                other
                    .projectors
                    .iter()
                    .any(|q| p.max_abs_diff(q) <= tol)
            })
    }
}

fn basis_vector(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// Column of the largest diagonal entry, normalized. Exact for rank-1
/// projectors.
fn unit_vector_of(p: &ComplexMatrix) -> Vec<C64> {
    let k = (0..p.dim())
        .max_by(|&i, &j| p[(i, i)].re.total_cmp(&p[(j, j)].re))
        .unwrap_or(0);
    let col = p.column(k);
    let norm = p[(k, k)].re.sqrt();
    col.into_iter().map(|z| z / norm).collect()
}

fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenbasis of a marginal, with degenerate eigenspaces aligned to the
/// computational basis.
pub fn marginal_projectors(marginal: &DensityMatrix, party: Party) -> Result<ProjectorSet> {
    let dim = party.dim();
    if marginal.dim() != dim {
        return Err(QcorrError::DimensionMismatch {
            expected: dim,
            got: marginal.dim(),
        });
    }
    let spectrum = hermitian_eig(marginal.matrix())?;
    let values = &spectrum.eigenvalues;
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (values[start] - values[end]).abs() <= DEGENERACY_TOLERANCE {
            end += 1;
        }
        let group = &spectrum.eigenvectors[start..end];
        if group.len() == 1 {
            basis.push(group[0].clone());
        } else {
            basis.extend(align_to_computational(group, &basis));
        }
        start = end;
    }
    ProjectorSet::from_vectors(party, basis)
}

/// Projects computational basis vectors into span(`group`) and
/// orthonormalizes, falling back to the eigenvectors themselves if the
/// projections do not fill the space.
fn align_to_computational(group: &[Vec<C64>], earlier: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let dim = group[0].len();
    let mut chosen: Vec<Vec<C64>> = Vec::with_capacity(group.len());
    let candidates = (0..dim).map(|k| basis_vector(dim, k)).chain(group.iter().cloned());
    for e in candidates {
        if chosen.len() == group.len() {
            break;
        }
        let mut w = vec![C64::new(0.0, 0.0); dim];
        for g in group {
            let c = dot(g, &e);
            for (wi, gi) in w.iter_mut().zip(g) {
                *wi += c * gi;
            }
        }
        for u in chosen.iter().chain(earlier) {
            let c = dot(u, &w);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= c * ui;
            }
        }
        let n = norm(&w);
        if n > DROP_THRESHOLD {
            chosen.push(w.into_iter().map(|z| z / n).collect());
        }
    }
    chosen
}

fn full_projectors(set_a: &ProjectorSet, set_b: &ProjectorSet) -> Result<Vec<ComplexMatrix>> {
    if set_a.party != Party::A || set_b.party != Party::B {
        return Err(QcorrError::IncompleteProjectors(
            "expected one set for party a and one for party b".into(),
        ));
    }
    let mut out = Vec::with_capacity(set_a.len() * set_b.len());
    for pa in &set_a.projectors {
        for pb in &set_b.projectors {
            out.push(kron(pa, pb)?);
        }
    }
    Ok(out)
}

/// `Π(ρ) = Σ (Π_a ⊗ Π_b) ρ (Π_a ⊗ Π_b)`
pub fn dephase(rho: &DensityMatrix, set_a: &ProjectorSet, set_b: &ProjectorSet) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(QcorrError::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(8);
    for p in full_projectors(set_a, set_b)? {
        out = &out + &p.matmul(rho.matrix()).matmul(&p);
    }
    Ok(DensityMatrix::from_trusted(out.hermitian_part()))
}

/// `Σ Π_k ρ^x Π_k` on a single party.
pub fn dephase_marginal(marginal: &DensityMatrix, set: &ProjectorSet) -> Result<DensityMatrix> {
    if marginal.dim() != set.party.dim() {
        return Err(QcorrError::DimensionMismatch {
            expected: set.party.dim(),
            got: marginal.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(marginal.dim());
    for p in &set.projectors {
        out = &out + &p.matmul(marginal.matrix()).matmul(p);
    }
    Ok(DensityMatrix::from_trusted(out.hermitian_part()))
}

/// `I = S(ρ^a) + S(ρ^b) - S(ρ)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let s = von_neumann_entropy(rho)?;
    let sa = von_neumann_entropy(&partial_trace(rho, Party::A)?)?;
    let sb = von_neumann_entropy(&partial_trace(rho, Party::B)?)?;
    Ok(sa + sb - s)
}

/// Entropies and correlations in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MidResult {
    pub mutual_information: f64,
    /// Mutual information of the dephased state.
    pub classical_mutual_information: f64,
    pub mid: f64,
    pub s_rho: f64,
    pub s_pi_rho: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub s_pi_a: f64,
    pub s_pi_b: f64,
}

/// Eigen-projector sets of both marginals of `rho`.
pub fn eigen_projectors(rho: &DensityMatrix) -> Result<(ProjectorSet, ProjectorSet)> {
    let a = marginal_projectors(&partial_trace(rho, Party::A)?, Party::A)?;
    let b = marginal_projectors(&partial_trace(rho, Party::B)?, Party::B)?;
    Ok((a, b))
}

/// Correlation bookkeeping for a given pair of local measurements.
pub fn disturbance(rho: &DensityMatrix, set_a: &ProjectorSet, set_b: &ProjectorSet) -> Result<MidResult> {
    let pi_rho = dephase(rho, set_a, set_b)?;
    let s_rho = von_neumann_entropy(rho)?;
    let s_a = von_neumann_entropy(&partial_trace(rho, Party::A)?)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Party::B)?)?;
    let s_pi_rho = von_neumann_entropy(&pi_rho)?;
    let s_pi_a = von_neumann_entropy(&partial_trace(&pi_rho, Party::A)?)?;
    let s_pi_b = von_neumann_entropy(&partial_trace(&pi_rho, Party::B)?)?;
    let mutual_information = s_a + s_b - s_rho;
    let classical_mutual_information = s_pi_a + s_pi_b - s_pi_rho;
    Ok(MidResult {
        mutual_information,
        classical_mutual_information,
        mid: (s_pi_rho - s_rho) + (s_a - s_pi_a) + (s_b - s_pi_b),
        s_rho,
        s_pi_rho,
        s_a,
        s_b,
        s_pi_a,
        s_pi_b,
    })
}

pub fn mid(rho: &DensityMatrix) -> Result<MidResult> {
    if rho.dim() != 8 {
        return Err(QcorrError::DimensionMismatch {
            expected: 8,
            got: rho.dim(),
        });
    }
    let (a, b) = eigen_projectors(rho)?;
    disturbance(rho, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{evolve_analytic, ChannelPoint, NoiseKind, StateKind};
    use crate::states::{basis_index, density_of, ghz, w};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn evolved(state: StateKind, noise: NoiseKind, kt: f64) -> DensityMatrix {
        evolve_analytic(ChannelPoint::new(state, noise, kt).unwrap())
    }

    fn product_000() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])).unwrap()
    }

    #[test]
    fn maximally_mixed_qubit_gives_computational_set() {
        let set = marginal_projectors(&DensityMatrix::maximally_mixed(2), Party::B).unwrap();
        assert!(set.same_up_to_order(&ProjectorSet::computational(Party::B), 1e-12));
        assert_eq!(set.projectors()[0], ProjectorSet::computational(Party::B).projectors()[0]);
    }

    #[test]
    fn ghz_x_marginal_a_gives_computational_set() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliX, 0.4);
        let set = marginal_projectors(&partial_trace(&rho, Party::A).unwrap(), Party::A).unwrap();
        assert!(set.same_up_to_order(&ProjectorSet::computational(Party::A), 1e-12));
    }

    #[test]
    fn w_z_marginal_contains_bell_like_projectors() {
        let rho = evolved(StateKind::W, NoiseKind::PauliZ, 0.3);
        let set = marginal_projectors(&partial_trace(&rho, Party::A).unwrap(), Party::A).unwrap();
        let r = FRAC_1_SQRT_2;
        for sign in [1.0, -1.0] {
            let v = [0.0, r, sign * r, 0.0].map(|x| C64::new(x, 0.0));
            let target = ComplexMatrix::projector(&v);
            assert!(
                set.projectors().iter().any(|p| p.max_abs_diff(&target) < 1e-10),
                "missing (|01> {sign:+} |10>)/√2"
            );
        }
    }

    #[test]
    fn projector_set_rejects_incomplete() {
        let mut ps = ProjectorSet::computational(Party::A).projectors().to_vec();
        ps.pop();
        assert!(ProjectorSet::new(Party::A, ps.clone()).is_err());
        ps.push(ps[0].clone());
        assert!(ProjectorSet::new(Party::A, ps).is_err());
    }

    #[test]
    fn dephase_ghz_z() {
        let rho = evolved(StateKind::Ghz, NoiseKind::PauliZ, 0.2);
        let (a, b) = eigen_projectors(&rho).unwrap();
        let pi = dephase(&rho, &a, &b).unwrap();
        let mut expected = vec![0.0; 8];
        expected[0] = 0.5;
        expected[7] = 0.5;
        assert!(pi.matrix().max_abs_diff(&ComplexMatrix::diag(&expected)) < 1e-12);
    }

    #[test]
    fn dephase_leaves_diagonal_state_unchanged() {
        let d = ComplexMatrix::diag(&[0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1]);
        let rho = DensityMatrix::new(d.clone()).unwrap();
        let pi = dephase(
            &rho,
            &ProjectorSet::computational(Party::A),
            &ProjectorSet::computational(Party::B),
        )
        .unwrap();
        assert!(pi.matrix().max_abs_diff(&d) < 1e-15);
    }

    #[test]
    fn dephase_w_z_keeps_symmetric_coupling() {
        let kt = 0.25;
        let rho = evolved(StateKind::W, NoiseKind::PauliZ, kt);
        let (a, b) = eigen_projectors(&rho).unwrap();
        let pi = dephase(&rho, &a, &b).unwrap();
        // The |01>±|10> projectors keep the |010>-|100> coherence intact and
        // remove every coherence with |001>.
        let e = (-4.0 * kt).exp();
        let c = pi.entry(basis_index(0, 1, 0), basis_index(1, 0, 0)).re;
        assert!((c - e / 4.0).abs() < 1e-12);
        assert!(pi.entry(basis_index(0, 0, 1), basis_index(0, 1, 0)).norm() < 1e-12);
        assert!((pi.entry(1, 1).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        let g = density_of(&ghz()).unwrap();
        assert!((mutual_information(&g).unwrap() - 2.0).abs() < 1e-12);
        assert!(mutual_information(&product_000()).unwrap().abs() < 1e-12);
        // (I + XXX)/8: S_a = 2, S_b = 1, S = 2.
        let inf = evolved(StateKind::Ghz, NoiseKind::PauliX, f64::INFINITY);
        assert!((mutual_information(&inf).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mid_examples() {
        for kt in [0.0, 0.05, 0.7, 3.0] {
            let m = mid(&evolved(StateKind::Ghz, NoiseKind::PauliX, kt)).unwrap();
            assert!((m.mid - 1.0).abs() < 1e-9, "GHZ-X at {kt}: {}", m.mid);
        }
        let m = mid(&evolved(StateKind::Ghz, NoiseKind::PauliZ, 2f64.ln() / 6.0)).unwrap();
        let expected = 0.25 * 0.5f64.log2() + 0.75 * 1.5f64.log2();
        assert!((m.mid - expected).abs() < 1e-9);
        assert!((m.mid - 0.188722).abs() < 1e-6);
        assert!(mid(&product_000()).unwrap().mid.abs() < 1e-12);
        assert!((mid(&density_of(&w()).unwrap()).unwrap().mid - 1.0).abs() < 1e-9);
    }

    #[test]
    fn w_x_and_w_y_agree() {
        for kt in [0.0, 0.01, 0.1, 0.3, 0.5, 1.0, 3.0] {
            let x = mid(&evolved(StateKind::W, NoiseKind::PauliX, kt)).unwrap().mid;
            let y = mid(&evolved(StateKind::W, NoiseKind::PauliY, kt)).unwrap().mid;
            assert!((x - y).abs() < 1e-9, "κt={kt}: {x} vs {y}");
        }
    }

    #[test]
    fn w_x_known_values() {
        // Independent numpy evaluation with the same degeneracy rule.
        for (kt, expected) in [(0.1, 0.95849), (0.5, 0.69973), (1.0, 0.62015)] {
            let m = mid(&evolved(StateKind::W, NoiseKind::PauliX, kt)).unwrap().mid;
            assert!((m - expected).abs() < 1e-5, "κt={kt}: {m}");
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(mid(&DensityMatrix::maximally_mixed(4)).is_err());
    }

    mod props {
        use super::*;
        use crate::channels::all_channels;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn marginals_commute_with_dephasing(kt in 0.0f64..3.0) {
                for (s, n) in all_channels() {
                    let rho = evolved(s, n, kt);
                    let (a, b) = eigen_projectors(&rho).unwrap();
                    let pi = dephase(&rho, &a, &b).unwrap();
                    for set in [&a, &b] {
                        let lhs = partial_trace(&pi, set.party()).unwrap();
                        let rhs = dephase_marginal(&partial_trace(&rho, set.party()).unwrap(), set).unwrap();
                        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-10);
                    }
                    let r = mid(&rho).unwrap();
                    prop_assert!((r.s_a - r.s_pi_a).abs() < 1e-9);
                    prop_assert!((r.s_b - r.s_pi_b).abs() < 1e-9);
                }
            }

            #[test]
            fn dephasing_is_idempotent_and_raises_entropy(kt in 0.0f64..3.0) {
                for (s, n) in all_channels() {
                    let rho = evolved(s, n, kt);
                    let (a, b) = eigen_projectors(&rho).unwrap();
                    let once = dephase(&rho, &a, &b).unwrap();
                    let twice = dephase(&once, &a, &b).unwrap();
                    prop_assert!(once.matrix().max_abs_diff(twice.matrix()) < 1e-12);
                    let r = mid(&rho).unwrap();
                    prop_assert!(r.s_pi_rho >= r.s_rho - 1e-9);
                    prop_assert!(r.mid >= -1e-9);
                    prop_assert!(r.mutual_information >= r.mid - 1e-9);
                    prop_assert!((r.mid - (r.mutual_information - r.classical_mutual_information)).abs() < 1e-12);
                }
            }
        }
    }
}
