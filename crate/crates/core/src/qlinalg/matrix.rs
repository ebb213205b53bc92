use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{QcorrError, Result};

pub type C64 = Complex64;

/// Largest matrix dimension handled anywhere in the crate (three qubits).
pub const MAX_DIM: usize = 8;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries. Rejects non-square counts and
    /// non-finite values.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(QcorrError::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QcorrError::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(QcorrError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::from_vec(dim, data)
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal vectors");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    /// `|v><v|`
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparing matrices of different size");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(A + A^dagger) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul of matrices of different size");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// `<u| A |u>`
    pub fn expectation(&self, u: &[C64]) -> C64 {
        self.apply(u).iter().zip(u).map(|(r, x)| x.conj() * r).sum()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Kronecker product with qubit-1-most-significant ordering: the row index of
/// `a ⊗ b` is `i_a * dim(b) + i_b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if !m.dim.is_power_of_two() {
            return Err(QcorrError::InvalidParameter(format!(
                "kron operand dimension {} is not a power of two",
                m.dim
            )));
        }
    }
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(QcorrError::DimensionOverflow(dim));
    }
    let nb = b.dim;
    Ok(ComplexMatrix::from_fn(dim, |i, j| {
        a[(i / nb, j / nb)] * b[(i % nb, j % nb)]
    }))
}

/// Kronecker product of vectors, same ordering as [`kron`].
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|&x| v.iter().map(move |&y| x * y))
        .collect()
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub mod pauli {
    //! Single-qubit Pauli matrices.
    use super::{ComplexMatrix, C64};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, |i, j| C64::new(if i != j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn y() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_projector(dim: usize, k: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        m[(k, k)] = C64::new(1.0, 0.0);
        m
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_z_identity() {
        let m = kron(&pauli::z(), &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(m, ComplexMatrix::diag(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_basis_projectors() {
        let m = kron(&basis_projector(2, 0), &basis_projector(2, 1)).unwrap();
        assert_eq!(m, basis_projector(4, 1));
    }

    #[test]
    fn kron_rejects_sixteen() {
        let a = ComplexMatrix::identity(4);
        let b = ComplexMatrix::identity(4);
        assert_eq!(kron(&a, &b), Err(QcorrError::DimensionOverflow(16)));
        assert!(kron(&ComplexMatrix::identity(3), &ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn kron_vec_matches_matrix_kron() {
        let u = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let v = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let p = kron(&ComplexMatrix::projector(&u), &ComplexMatrix::projector(&v)).unwrap();
        let q = ComplexMatrix::projector(&kron_vec(&u, &v));
        assert!(p.max_abs_diff(&q) < 1e-15);
    }

    #[test]
    fn from_vec_rejects_nan_and_bad_length() {
        assert!(ComplexMatrix::from_vec(2, vec![C64::new(0.0, 0.0); 3]).is_err());
        let mut d = vec![C64::new(0.0, 0.0); 4];
        d[1] = C64::new(f64::NAN, 0.0);
        assert!(ComplexMatrix::from_vec(2, d).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (pauli::x(), pauli::y(), pauli::z());
        // XY = iZ
        assert!((&x * &y).max_abs_diff(&z.scale_complex(C64::new(0.0, 1.0))) < 1e-15);
        for p in [&x, &y, &z] {
            assert!((p * p).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
            assert_eq!(p.hermiticity_error(), 0.0);
        }
    }
}
