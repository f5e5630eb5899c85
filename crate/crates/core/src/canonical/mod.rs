//! The canonical two-qubit interaction `U_s(c1, c2, c3) = exp(-i Σ c_k σ_k⊗σ_k)`,
//! the Bell basis that diagonalises it, and the decomposition of an arbitrary
//! two-qubit unitary into local factors around a canonical core.
//!
//! Bell states are labelled by two bits `(α, β)`:
//!
//! ```text
//! |B_{α,β}> = (|0, 1⊕α> + (-1)^β |1, α>) / √2
//! B00 = (|01> + |10>)/√2    B10 = (|00> + |11>)/√2
//! B01 = (|01> - |10>)/√2    B11 = (|00> - |11>)/√2
//! ```
//!
//! This is the only labelling under which the eigenphases of `U_s` are
//! `-(c1+c2-c3)`, `-(c1-c2+c3)`, `+(c1+c2+c3)`, `-(-c1+c2+c3)` for
//! `B00, B10, B01, B11` respectively.

mod kak;
mod weyl;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{c, CMatrix, CVector, PureState, UnitaryOp, C64};

pub use kak::{factor_local_product, kak_decompose, lu_equivalent, KakResult, KAK_RESIDUAL_TOL, LU_EQUIV_TOL};
pub use weyl::{reduction_residual, weyl_reduce, WeylReduction};

/// Tolerance on the region `π/4 ≥ c1 ≥ c2 ≥ |c3|`.
pub const REGION_TOL: f64 = 1e-10;

/// Coefficients `(c1, c2, c3)` of `U_s`, in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CanonicalParams {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        CanonicalParams { c1, c2, c3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        CanonicalParams::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }

    /// `π/4 ≥ c1 ≥ c2 ≥ |c3|` within `tol`.
    pub fn in_region(&self, tol: f64) -> bool {
        FRAC_PI_4 + tol >= self.c1 && self.c1 + tol >= self.c2 && self.c2 + tol >= self.c3.abs()
    }

    pub fn max_abs_diff(&self, other: &CanonicalParams) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Add for CanonicalParams {
    type Output = CanonicalParams;
    fn add(self, o: CanonicalParams) -> CanonicalParams {
        CanonicalParams::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl fmt::Display for CanonicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

/// Bell label `(α, β)`, both bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BellLabel {
    alpha: u8,
    beta: u8,
}

impl BellLabel {
    /// In the order `B00, B10, B01, B11`.
    pub const ALL: [BellLabel; 4] = [
        BellLabel { alpha: 0, beta: 0 },
        BellLabel { alpha: 1, beta: 0 },
        BellLabel { alpha: 0, beta: 1 },
        BellLabel { alpha: 1, beta: 1 },
    ];

    pub fn new(alpha: u8, beta: u8) -> Result<Self> {
        if alpha > 1 || beta > 1 {
            return Err(Error::Precondition(format!(
                "Bell label bits must be 0 or 1, got ({alpha}, {beta})"
            )));
        }
        Ok(BellLabel { alpha, beta })
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    pub fn beta(&self) -> u8 {
        self.beta
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{}", self.alpha, self.beta)
    }
}

/// Amplitudes of `|B_{α,β}>` over two qubits.
pub fn bell_vector(label: BellLabel) -> CVector {
    let a = label.alpha as usize;
    let sign = if label.beta == 0 { 1.0 } else { -1.0 };
    let mut v = CVector::zeros(4);
    v[1 ^ a] += c(FRAC_1_SQRT_2, 0.0); // |0, 1⊕α>
    v[2 | a] += c(sign * FRAC_1_SQRT_2, 0.0); // |1, α>
    v
}

/// `|B_{α,β}>` over the register `[A, B]`.
pub fn bell_state(label: BellLabel) -> PureState {
    bell_state_on(label, "A", "B")
}

pub fn bell_state_on(label: BellLabel, first: &str, second: &str) -> PureState {
    PureState::new(&[first, second], bell_vector(label)).expect("Bell vectors are normalised")
}

/// Phase `θ` with `U_s(params)|B_label> = e^{iθ}|B_label>`.
pub fn bell_eigenphase(params: &CanonicalParams, label: BellLabel) -> f64 {
    let CanonicalParams { c1, c2, c3 } = *params;
    match (label.alpha, label.beta) {
        (0, 0) => -(c1 + c2 - c3),
        (1, 0) => -(c1 - c2 + c3),
        (0, 1) => c1 + c2 + c3,
        _ => -(-c1 + c2 + c3),
    }
}

/// `U_s(params)`, assembled from its Bell spectrum. Accepts any real triple.
pub fn u_s(params: &CanonicalParams) -> UnitaryOp {
    let mut m = CMatrix::zeros(4, 4);
    for label in BellLabel::ALL {
        let b = bell_vector(label);
        let phase = C64::from_polar(1.0, bell_eigenphase(params, label));
        m += &b * b.adjoint() * phase;
    }
    UnitaryOp::from_matrix_unchecked(m)
}

/// `Σ c_k σ_k⊗σ_k` as a dense matrix.
pub fn interaction_hamiltonian(params: &CanonicalParams) -> CMatrix {
    use crate::tensor::{kron, sigma};
    params
        .as_array()
        .iter()
        .enumerate()
        .fold(CMatrix::zeros(4, 4), |acc, (k, ck)| {
            acc + kron(&sigma(k + 1), &sigma(k + 1)) * c(*ck, 0.0)
        })
}
