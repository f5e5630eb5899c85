//! Catalysis of `U_s(c1+c2, 0, 0)` from `U_s(c1, c2, c3)` using a Bell pair.
//!
//! With ancillas `a, b` prepared in `B00`, the circuit
//! `(w_{Aa} w_{Bb})^dag · U_s^{AB}(c1, c2, c3) · (w_{Aa} w_{Bb})` acts on `AB`
//! as `e^{i c3} U_s(c1+c2, 0, 0)` and returns the ancillas to `B00`.
//! `w|i, j> = |j, i⊕j>` (a swap followed by a CNOT), with the system qubit
//! first and the ancilla second.

use serde::Serialize;

use crate::canonical::{bell_state_on, bell_vector, u_s, BellLabel, CanonicalParams};
use crate::error::{Error, Result};
use crate::tensor::{
    apply_on_targets, embed_operator, random_state_from, seeded_rng, CMatrix, PureState, Register, UnitaryOp, C64,
};

const REGISTER: [&str; 4] = ["A", "B", "a", "b"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalysisReport {
    pub params: CanonicalParams,
    pub trials: usize,
    pub max_state_residual: f64,
    pub min_catalyst_fidelity: f64,
    pub seed: u64,
}

/// `w|i, j> = |j, i⊕j>` on an ordered (system, ancilla) pair.
pub fn w_gate() -> UnitaryOp {
    UnitaryOp::permutation(2, |idx| {
        let (i, j) = (idx >> 1, idx & 1);
        (j << 1) | (i ^ j)
    })
    .expect("w is a permutation")
}

fn register() -> Register {
    Register::new(&REGISTER).expect("distinct labels")
}

/// `(w_{Aa} w_{Bb})^dag (U_s ⊗ 1_{ab}) (w_{Aa} w_{Bb})` on `[A, B, a, b]`.
pub fn catalysis_map(params: &CanonicalParams) -> UnitaryOp {
    let reg = register();
    let w = w_gate();
    let w_aa = embed_operator(w.matrix(), &["A", "a"], &reg).expect("labels exist");
    let w_bb = embed_operator(w.matrix(), &["B", "b"], &reg).expect("labels exist");
    let ww = w_aa * w_bb;
    let core = embed_operator(u_s(params).matrix(), &["A", "B"], &reg).expect("labels exist");
    UnitaryOp::from_matrix_unchecked(ww.adjoint() * core * ww)
}

/// The operator the construction should realise on `AB`: `e^{i c3} U_s(c1+c2, 0, 0)`.
pub fn catalysis_target(params: &CanonicalParams) -> UnitaryOp {
    let m = u_s(&CanonicalParams::new(params.c1 + params.c2, 0.0, 0.0)).into_matrix() * C64::from_polar(1.0, params.c3);
    UnitaryOp::from_matrix_unchecked(m)
}

/// Runs the circuit gate by gate on `state`, which must contain `A, B, a, b`.
pub fn run_circuit(params: &CanonicalParams, state: &PureState) -> Result<PureState> {
    let w = w_gate();
    let wd = w.adjoint();
    let s = apply_on_targets(&w, &["A", "a"], state)?;
    let s = apply_on_targets(&w, &["B", "b"], &s)?;
    let s = apply_on_targets(&u_s(params), &["A", "B"], &s)?;
    let s = apply_on_targets(&wd, &["B", "b"], &s)?;
    apply_on_targets(&wd, &["A", "a"], &s)
}

/// 4×4 block of the catalysis map between `|k>_{AB}|B00>_{ab}` and
/// `<l|_{AB}<B00|_{ab}`, i.e. the effective action on `AB` in the B00
/// ancilla sector.
pub fn effective_ab_operator(params: &CanonicalParams) -> CMatrix {
    let map = catalysis_map(params);
    let b00 = bell_vector(BellLabel::ALL[0]);
    let mut eff = CMatrix::zeros(4, 4);
    for k in 0..4 {
        let mut ab = crate::tensor::CVector::zeros(4);
        ab[k] = C64::new(1.0, 0.0);
        let out = map.apply(&ab.kronecker(&b00));
        for l in 0..4 {
            let mut bra = crate::tensor::CVector::zeros(4);
            bra[l] = C64::new(1.0, 0.0);
            eff[(l, k)] = bra.kronecker(&b00).dotc(&out);
        }
    }
    eff
}

/// Random input states for verification. Odd trials are entangled with two
/// reference qubits `C, D`; the first of those is `B00_{AC} B00_{BD}`.
fn trial_input(trial: usize, rng: &mut impl rand::Rng) -> Result<PureState> {
    let catalyst = bell_state_on(BellLabel::ALL[0], "a", "b");
    if trial.is_multiple_of(2) {
        let psi = random_state_from(rng, &["A", "B"])?;
        psi.tensor(&catalyst)
    } else {
        let system = if trial == 1 {
            let ac = bell_state_on(BellLabel::ALL[0], "A", "C");
            let bd = bell_state_on(BellLabel::ALL[0], "B", "D");
            ac.tensor(&bd)?.reordered(&["A", "B", "C", "D"])?
        } else {
            random_state_from(rng, &["A", "B", "C", "D"])?
        };
        system.tensor(&catalyst)?.reordered(&["A", "B", "a", "b", "C", "D"])
    }
}

/// Compares the circuit against `target` (acting on `AB`) over `trials`
/// random inputs with the ancillas in `B00`.
pub fn verify_catalysis_with(
    params: &CanonicalParams,
    target: &UnitaryOp,
    trials: usize,
    seed: u64,
) -> Result<CatalysisReport> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    if target.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: target.dim(),
        });
    }
    let mut rng = seeded_rng(seed, 0xCA7A);
    let b00 = bell_vector(BellLabel::ALL[0]);
    let mut max_res = 0.0f64;
    let mut min_fid = 1.0f64;
    for t in 0..trials {
        let input = trial_input(t, &mut rng)?;
        let lhs = run_circuit(params, &input)?;
        let rhs = apply_on_targets(target, &["A", "B"], &input)?;
        let res = (lhs.amplitudes() - rhs.amplitudes()).norm();
        let rho = lhs.reduced_density(&["a", "b"])?;
        let fid = b00.dotc(&(&rho * &b00)).re;
        max_res = max_res.max(res);
        min_fid = min_fid.min(fid);
    }
    Ok(CatalysisReport {
        params: *params,
        trials,
        max_state_residual: max_res,
        min_catalyst_fidelity: min_fid.clamp(0.0, 1.0),
        seed,
    })
}

/// Checks the catalysis identity, including its explicit `e^{i c3}` phase.
pub fn verify_catalysis(params: &CanonicalParams, trials: usize, seed: u64) -> Result<CatalysisReport> {
    verify_catalysis_with(params, &catalysis_target(params), trials, seed)
}

/// Labels produced by `w_{Aa} w_{Bb}` acting on `|B_{α,β}>_{AB} |B00>_{ab}`:
/// `(AB label, ab label) = ((0, β), (ᾱ, β))`.
pub fn bell_relabel(alpha: u8, beta: u8) -> Result<(BellLabel, BellLabel)> {
    BellLabel::new(alpha, beta)?;
    Ok((BellLabel::new(0, beta)?, BellLabel::new(1 - alpha, beta)?))
}

/// Phase-insensitive distance between `(w⊗w)|B_label>|B00>` and the
/// relabelled product predicted by [`bell_relabel`].
pub fn bell_relabel_residual(label: BellLabel) -> Result<f64> {
    let input = bell_state_on(label, "A", "B").tensor(&bell_state_on(BellLabel::ALL[0], "a", "b"))?;
    let w = w_gate();
    let out = apply_on_targets(&w, &["A", "a"], &input)?;
    let out = apply_on_targets(&w, &["B", "b"], &out)?;
    let (ab, anc) = bell_relabel(label.alpha(), label.beta())?;
    let want = bell_state_on(ab, "A", "B").tensor(&bell_state_on(anc, "a", "b"))?;
    out.dist_up_to_phase(&want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_state, CVector};

    fn ket(bits: usize) -> CVector {
        let mut v = CVector::zeros(4);
        v[bits] = C64::new(1.0, 0.0);
        v
    }

    #[test]
    fn w_truth_table() {
        let w = w_gate();
        assert_eq!(w.apply(&ket(0b10)), ket(0b01));
        assert_eq!(w.apply(&ket(0b11)), ket(0b10));
        assert_eq!(w.apply(&ket(0b00)), ket(0b00));
        assert_eq!(w.apply(&ket(0b01)), ket(0b11));
        assert!(w.defect() == 0.0);
    }

    #[test]
    fn w_on_system_ancilla_pair() {
        // |0>_A |1>_a -> |1>_A |1>_a
        let s = PureState::basis(&["A", "a"], 0b01).unwrap();
        let out = apply_on_targets(&w_gate(), &["A", "a"], &s).unwrap();
        assert_eq!(out, PureState::basis(&["A", "a"], 0b11).unwrap());
    }

    #[test]
    fn trivial_params_give_identity() {
        let m = catalysis_map(&CanonicalParams::new(0.0, 0.0, 0.0));
        assert!((m.matrix() - CMatrix::identity(16, 16)).norm() < 1e-15);
        let r = verify_catalysis(&CanonicalParams::new(0.0, 0.0, 0.0), 10, 3).unwrap();
        assert_eq!(r.max_state_residual, 0.0);
    }

    #[test]
    fn identity_on_b00_sector() {
        let p = CanonicalParams::new(0.3, 0.2, 0.1);
        let map = catalysis_map(&p);
        let target = catalysis_target(&p);
        let psi = random_state(11, &["A", "B"]).unwrap();
        let input = psi.tensor(&bell_state_on(BellLabel::ALL[0], "a", "b")).unwrap();
        let lhs = map.apply(input.amplitudes());
        let rhs = apply_on_targets(&target, &["A", "B"], &input).unwrap();
        assert!((lhs - rhs.amplitudes()).norm() <= 1e-12);
    }

    #[test]
    fn fails_off_the_b00_sector() {
        let p = CanonicalParams::new(0.3, 0.2, 0.1);
        let map = catalysis_map(&p);
        let target = catalysis_target(&p);
        let psi = random_state(11, &["A", "B"]).unwrap();
        let input = psi.tensor(&bell_state_on(BellLabel::ALL[1], "a", "b")).unwrap();
        let lhs = map.apply(input.amplitudes());
        let rhs = apply_on_targets(&target, &["A", "B"], &input).unwrap();
        assert!((lhs - rhs.amplitudes()).norm() > 0.1);
    }

    #[test]
    fn verification_report() {
        let p = CanonicalParams::new(0.3, 0.2, 0.1);
        let r = verify_catalysis(&p, 100, 7).unwrap();
        assert!(r.max_state_residual <= 1e-12, "{r:?}");
        assert!(r.min_catalyst_fidelity >= 1.0 - 1e-12, "{r:?}");
        assert_eq!(r, verify_catalysis(&p, 100, 7).unwrap());
        assert!(verify_catalysis(&p, 0, 7).is_err());
    }

    #[test]
    fn wrong_target_is_detected() {
        let p = CanonicalParams::new(0.3, 0.2, 0.1);
        let mutated = u_s(&CanonicalParams::new(0.6, 0.0, 0.0));
        let r = verify_catalysis_with(&p, &mutated, 20, 7).unwrap();
        assert!(r.max_state_residual > 1e-3, "{r:?}");
    }

    #[test]
    fn relabel_map() {
        let l = |a, b| BellLabel::new(a, b).unwrap();
        assert_eq!(bell_relabel(1, 0).unwrap(), (l(0, 0), l(0, 0)));
        assert_eq!(bell_relabel(0, 1).unwrap(), (l(0, 1), l(1, 1)));
        assert_eq!(bell_relabel(0, 0).unwrap(), (l(0, 0), l(1, 0)));
        assert!(bell_relabel(2, 0).is_err());
        for label in BellLabel::ALL {
            let r = bell_relabel_residual(label).unwrap();
            assert!(r <= 1e-12, "{label}: {r}");
        }
    }

    #[test]
    fn effective_operator_is_state_independent() {
        let p = CanonicalParams::new(0.41, 0.17, -0.09);
        let eff = effective_ab_operator(&p);
        assert!((eff - catalysis_target(&p).matrix()).norm() <= 1e-12);
    }

    #[test]
    fn composes_twice() {
        let p = CanonicalParams::new(0.3, 0.2, 0.1);
        let input = random_state(4, &["A", "B"])
            .unwrap()
            .tensor(&bell_state_on(BellLabel::ALL[0], "a", "b"))
            .unwrap();
        let once = run_circuit(&p, &input).unwrap();
        let twice = run_circuit(&p, &once).unwrap();
        let doubled = u_s(&CanonicalParams::new(1.0, 0.0, 0.0)).into_matrix() * C64::from_polar(1.0, 0.2);
        let want = apply_on_targets(&UnitaryOp::new(doubled).unwrap(), &["A", "B"], &input).unwrap();
        assert!((twice.amplitudes() - want.amplitudes()).norm() <= 1e-12);
    }
}
