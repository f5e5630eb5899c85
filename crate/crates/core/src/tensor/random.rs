//! Seeded sampling of Haar-random unitaries and random pure states.
//!
//! All randomness comes from ChaCha20, a counter-based generator; a
//! `(seed, stream)` pair names an independent, reproducible sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::{c, qubits_for_dim, CMatrix, CVector, PureState, Register, UnitaryOp, C64};
use crate::error::{Error, Result};

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<UnitaryOp> {
    qubits_for_dim(dim).ok_or(Error::NotPowerOfTwo(dim))?;
    let z = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    UnitaryOp::new(q)
}

pub fn haar_random_unitary(seed: u64, dim: usize) -> Result<UnitaryOp> {
    haar_unitary_from(&mut seeded_rng(seed, 0), dim)
}

/// Uniformly random pure state over `labels`.
pub fn random_state_from<R: Rng + ?Sized, S: AsRef<str>>(rng: &mut R, labels: &[S]) -> Result<PureState> {
    let register = Register::new(labels)?;
    let d = 1usize << register.len();
    let v = CVector::from_fn(d, |_, _| gaussian(rng));
    let norm = v.norm();
    PureState::with_register(register, v / c(norm, 0.0))
}

pub fn random_state<S: AsRef<str>>(seed: u64, labels: &[S]) -> Result<PureState> {
    random_state_from(&mut seeded_rng(seed, 1), labels)
}
