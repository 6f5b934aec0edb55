//! Dense complex linear algebra for registers of up to eight qubits.

mod eigen;
mod matrix;
mod register;
mod state;

pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, psd_eigen, psd_sqrt, rank_estimate, singular_values, HermitianEigen,
};
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use register::{QubitRegister, MAX_QUBITS};
pub use state::{partial_trace, reduce_amplitudes, PureState};
