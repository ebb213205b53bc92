//! Dense complex linear algebra for one to three qubits.

mod density;
mod eig;
mod entropy;
mod matrix;

pub use density::{partial_trace, DensityMatrix, Party};
pub use eig::{fix_phase, hermitian_eig, HermitianSpectrum, HERMITIAN_TOLERANCE, JACOBI_TOLERANCE};
pub use entropy::{shannon_entropy, von_neumann_entropy, xlog2x, EIGENVALUE_CLIP};
pub use matrix::{kron, kron_vec, pauli, ComplexMatrix, C64, MAX_DIM};
