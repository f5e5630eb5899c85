//! Dense complex linear algebra over small labelled qubit registers.
//!
//! Amplitude vectors and operators use a big-endian index convention: for a
//! register `[A, B]` the basis index of `|a b>` is `2a + b`, so the first
//! label is the most significant bit. Every matrix in the crate is written in
//! that convention.

mod linalg;
mod op;
mod pauli;
mod random;
mod state;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use linalg::{dist_up_to_global_phase, expm, frobenius_norm, hermitian_eigenvalues};
pub use op::{kron, tensor_product, unitarity_defect, UnitaryOp};
pub use pauli::{sigma, Pauli};
pub use random::{haar_random_unitary, haar_unitary_from, random_state, random_state_from, seeded_rng};
pub use state::{apply_on_targets, embed_operator, schmidt_probs, Cut, PureState, Register};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Constructor-level tolerance for unitarity and normalisation.
pub const CONSTRUCT_TOL: f64 = 1e-10;

/// Default tolerance for equality assertions.
pub const EQ_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Number of qubits spanned by a dimension, if it is a power of two.
pub fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        None
    } else {
        Some(dim.trailing_zeros() as usize)
    }
}

pub(crate) fn all_finite<'a>(values: impl IntoIterator<Item = &'a C64>) -> bool {
    values.into_iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
