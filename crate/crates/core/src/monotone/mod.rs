//! LOCC no-go machinery for catalysis-free simulation of `U_s(c1+c2, 0, 0)`.
//!
//! `P(Ψ)` is the largest squared Schmidt coefficient of `Ψ`. It cannot
//! decrease under an LOCC conversion, so a target with smaller `P` than its
//! source is unreachable. For the circuit `U_s(c1, c2, 0) (x ⊗ y)` with
//! local unitaries `x` on `Aa` and `y` on `Bb`, the overlap of the output
//! with the product `|ψ_i>|φ_j>` reduces to a phase sum over the Bell weights
//! `n_{α,β}` of that product, and is bounded below by `cos²(c1+c2)`.

mod nelder_mead;
mod search;

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::canonical::{bell_vector, u_s, BellLabel, CanonicalParams};
use crate::error::{Error, Result};
use crate::tensor::{schmidt_probs, CVector, Cut, PureState, UnitaryOp, C64};

pub use nelder_mead::{nelder_mead, NelderMeadResult};
pub use search::{max_overlap, nogo_search, NogoReport};

/// Slack used when enforcing the strict inequalities `c2 > 0` and `c1+c2 > 0`.
pub const STRICT_SLACK: f64 = 1e-12;

const REGISTER: [&str; 4] = ["A", "B", "a", "b"];

/// `P(Ψ)`: the largest squared Schmidt coefficient across `cut`.
pub fn max_schmidt_prob(state: &PureState, cut: &Cut) -> Result<f64> {
    Ok(schmidt_probs(state, cut)?[0])
}

/// True when the necessary condition `P(target) ≥ P(source)` fails, i.e. no
/// LOCC protocol can turn `source` into `target`.
pub fn nielsen_forbidden(source: &PureState, target: &PureState, cut: &Cut) -> Result<bool> {
    let ps = max_schmidt_prob(source, cut)?;
    let pt = max_schmidt_prob(target, cut)?;
    Ok(pt < ps - 1e-12)
}

/// Squared norms `n_{α,β}` of the ancilla components along `|B_{α,β}>_{AB}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellWeights {
    pub n00: f64,
    pub n10: f64,
    pub n01: f64,
    pub n11: f64,
}

impl BellWeights {
    pub fn new(n00: f64, n10: f64, n01: f64, n11: f64) -> Result<Self> {
        let w = BellWeights { n00, n10, n01, n11 };
        let a = w.as_array();
        if a.iter().any(|x| !x.is_finite() || *x < -1e-12) {
            return Err(Error::Precondition(format!("negative Bell weight in {a:?}")));
        }
        let sum: f64 = a.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Precondition(format!("Bell weights sum to {sum}")));
        }
        Ok(w)
    }

    /// `[n00, n10, n01, n11]`.
    pub fn as_array(&self) -> [f64; 4] {
        [self.n00, self.n10, self.n01, self.n11]
    }

    pub fn get(&self, label: BellLabel) -> f64 {
        match (label.alpha(), label.beta()) {
            (0, 0) => self.n00,
            (1, 0) => self.n10,
            (0, 1) => self.n01,
            _ => self.n11,
        }
    }

    pub fn max_abs_diff(&self, other: &BellWeights) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Bell weights of a state over `{A, B, a, b}`.
pub fn bell_weights(state: &PureState) -> Result<BellWeights> {
    let s = state.reordered(&REGISTER)?;
    let amps = s.amplitudes();
    let mut n = [0.0; 4];
    for (slot, label) in n.iter_mut().zip(BellLabel::ALL) {
        let b = bell_vector(label);
        let mut comp = CVector::zeros(4);
        for anc in 0..4 {
            comp[anc] = (0..4).map(|ab| b[ab].conj() * amps[ab * 4 + anc]).sum::<C64>();
        }
        *slot = comp.norm_squared();
    }
    BellWeights::new(n[0], n[1], n[2], n[3])
}

/// `|e^{-i(c1+c2)} n00 + e^{i(c1+c2)} n01 + e^{-i(c1-c2)} n10 + e^{i(c1-c2)} n11|²`.
pub fn phase_sum(c1: f64, c2: f64, n: &BellWeights) -> f64 {
    let s = c1 + c2;
    let d = c1 - c2;
    let z =
        C64::from_polar(n.n00, -s) + C64::from_polar(n.n01, s) + C64::from_polar(n.n10, -d) + C64::from_polar(n.n11, d);
    z.norm_sqr()
}

/// `Φ₂ = U_s (x ⊗ y)|i, j>|0, 0>` and the product `|ψ_i>_{Aa}|φ_j>_{Bb}`,
/// both over `[A, B, a, b]`.
pub fn phi_states(
    params: &CanonicalParams,
    x: &UnitaryOp,
    y: &UnitaryOp,
    i: usize,
    j: usize,
) -> Result<(PureState, PureState)> {
    for (name, op) in [("x", x), ("y", y)] {
        if op.dim() != 4 {
            return Err(Error::Precondition(format!(
                "{name} must act on a qubit and a one-qubit ancilla (dim 4), got dim {}",
                op.dim()
            )));
        }
    }
    if i > 1 || j > 1 {
        return Err(Error::Precondition(format!(
            "input bits must be 0 or 1, got ({i}, {j})"
        )));
    }
    let psi = PureState::basis(&["A", "a"], 2 * i)?.apply(x, &["A", "a"])?;
    let phi = PureState::basis(&["B", "b"], 2 * j)?.apply(y, &["B", "b"])?;
    let product = psi.tensor(&phi)?.reordered(&REGISTER)?;
    let phi2 = product.apply(&u_s(params), &["A", "B"])?;
    Ok((phi2, product))
}

fn check_overlap_params(c1: f64, c2: f64, c3: f64) -> Result<()> {
    if c3.abs() > STRICT_SLACK {
        return Err(Error::Precondition(format!("the overlap bound needs c3 = 0, got {c3}")));
    }
    if c2 <= STRICT_SLACK {
        return Err(Error::Precondition(format!("the overlap bound needs c2 > 0, got {c2}")));
    }
    if c1 + STRICT_SLACK < c2 {
        return Err(Error::Precondition(format!(
            "the overlap bound needs c1 >= c2, got ({c1}, {c2})"
        )));
    }
    if c1 + c2 > FRAC_PI_4 + STRICT_SLACK {
        return Err(Error::Precondition(format!(
            "the overlap bound needs c1 + c2 <= pi/4, got {}",
            c1 + c2
        )));
    }
    Ok(())
}

/// `|<ψ_i|<φ_j| Φ₂(Ψ_{ij})>|²`, cross-checked against the Bell-weight phase sum.
pub fn overlap(params: &CanonicalParams, x: &UnitaryOp, y: &UnitaryOp, i: usize, j: usize) -> Result<f64> {
    check_overlap_params(params.c1, params.c2, params.c3)?;
    let (phi2, product) = phi_states(params, x, y, i, j)?;
    let direct = product.inner(&phi2)?.norm_sqr();
    let via_weights = phase_sum(params.c1, params.c2, &bell_weights(&product)?);
    if (direct - via_weights).abs() > 1e-12 {
        return Err(Error::Numerical(format!(
            "overlap {direct} disagrees with Bell-weight phase sum {via_weights}"
        )));
    }
    Ok(direct)
}

/// The lower bound `cos²(c1+c2)`.
pub fn overlap_bound(c1: f64, c2: f64) -> f64 {
    (c1 + c2).cos().powi(2)
}

/// Minimum of [`phase_sum`] over the probability simplex: a grid of step
/// 0.01 followed by compass search along mass-transfer directions down to a
/// step of 1e-9.
pub fn simplex_min(c1: f64, c2: f64) -> Result<(f64, BellWeights)> {
    check_overlap_params(c1, c2, 0.0)?;
    let f = |n: &[f64; 4]| {
        phase_sum(
            c1,
            c2,
            &BellWeights {
                n00: n[0],
                n10: n[1],
                n01: n[2],
                n11: n[3],
            },
        )
    };
    const STEPS: usize = 100;
    let mut best = ([1.0, 0.0, 0.0, 0.0], f64::INFINITY);
    for a in 0..=STEPS {
        for b in 0..=STEPS - a {
            for cc in 0..=STEPS - a - b {
                let d = STEPS - a - b - cc;
                let n = [a, b, cc, d].map(|k| k as f64 / STEPS as f64);
                let v = f(&n);
                if v < best.1 {
                    best = (n, v);
                }
            }
        }
    }

    let (mut n, mut v) = best;
    let mut step = 1.0 / STEPS as f64;
    while step > 1e-9 {
        let mut improved = false;
        for from in 0..4 {
            for to in 0..4 {
                if from == to {
                    continue;
                }
                let moved = step.min(n[from]);
                if moved <= 0.0 {
                    continue;
                }
                let mut trial = n;
                trial[from] -= moved;
                trial[to] += moved;
                let tv = f(&trial);
                if tv < v {
                    n = trial;
                    v = tv;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((v, BellWeights::new(n[0], n[1], n[2], n[3])?))
}

/// Which product form attains the overlap bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EqualityForm {
    AbIs01,
    AbIs10,
    NotEqualityForm,
}

/// Classifies a state over `{A, B, a, b}` as `|0,1>_{AB}|ξ>_{ab}`,
/// `|1,0>_{AB}|ξ>_{ab}`, or neither (tolerance 1e-8 on the `AB` population).
pub fn equality_classifier(state: &PureState) -> Result<EqualityForm> {
    let s = state.reordered(&REGISTER)?;
    let pop = |ab: usize| -> f64 { (0..4).map(|anc| s.amplitudes()[ab * 4 + anc].norm_sqr()).sum() };
    Ok(if pop(0b01) >= 1.0 - 1e-8 {
        EqualityForm::AbIs01
    } else if pop(0b10) >= 1.0 - 1e-8 {
        EqualityForm::AbIs10
    } else {
        EqualityForm::NotEqualityForm
    })
}
