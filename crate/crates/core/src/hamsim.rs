//! Partial order of two-qubit interaction Hamiltonians `H(c) = Σ c_k σ_k⊗σ_k`
//! under LOCC simulation, one-step catalytic simulation and catalysed local
//! unitaries (cat-LU).
//!
//! All inputs are in normal form `c1 ≥ c2 ≥ |c3|`. Arbitrary triples must be
//! reduced with the sign-pair flips and permutations of the canonical module
//! first.

use rand::Rng;
use serde::Serialize;

use crate::canonical::{interaction_hamiltonian, CanonicalParams};
use crate::error::{Error, Result};
use crate::tensor::{
    c, embed_operator, haar_unitary_from, hermitian_eigenvalues, kron, seeded_rng, sigma, CMatrix, PureState, Register,
    UnitaryOp, C64,
};

/// Slack on the ordering `c1 ≥ c2 ≥ |c3|`.
pub const NORMAL_FORM_TOL: f64 = 1e-10;
/// Slack on every inequality compared by the classifier.
pub const COMPARE_TOL: f64 = 1e-12;
/// Slack on the spectral interval of a mixture.
pub const SPECTRUM_TOL: f64 = 1e-10;

const LOCC_READING_NOTE: &str =
    "third LOCC condition read as c1+c2+c3 >= t1+t2+t3 (the literal form compares a quantity with itself)";
const GAUGE_NOTE: &str =
    "the global constant c4 of the target is a free gauge; FORBIDDEN means no c4 satisfies the cat-LU conditions";
const SINGLE_STEP_NOTE: &str =
    "catalytic route searched: one catalysis step on the source followed by LOCC simulation only";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HamParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl HamParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite() && c3.is_finite()) {
            return Err(Error::NonFinite("Hamiltonian coefficients"));
        }
        if c1 < c2 - NORMAL_FORM_TOL || c2 < c3.abs() - NORMAL_FORM_TOL {
            return Err(Error::NotNormalForm(c1, c2, c3));
        }
        Ok(HamParams { c1, c2, c3 })
    }

    pub fn as_canonical(&self) -> CanonicalParams {
        CanonicalParams::new(self.c1, self.c2, self.c3)
    }

    pub fn abs_sum(&self) -> f64 {
        self.c1.abs() + self.c2.abs() + self.c3.abs()
    }

    /// `Σ c_k σ_k⊗σ_k`.
    pub fn matrix(&self) -> CMatrix {
        interaction_hamiltonian(&self.as_canonical())
    }
}

/// A normal-form Hamiltonian plus a global constant `c4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtHamParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl ExtHamParams {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        HamParams::new(c1, c2, c3)?;
        if !c4.is_finite() {
            return Err(Error::NonFinite("global constant"));
        }
        Ok(ExtHamParams { c1, c2, c3, c4 })
    }

    pub fn from_ham(h: HamParams, c4: f64) -> Self {
        ExtHamParams {
            c1: h.c1,
            c2: h.c2,
            c3: h.c3,
            c4,
        }
    }
}

/// Bell-basis eigenvalues of `H(c) + c4`, in decreasing order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaSpectrum {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

impl LambdaSpectrum {
    pub fn as_array(&self) -> [f64; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }
}

pub fn lambda_spectrum(h: &ExtHamParams) -> LambdaSpectrum {
    let ExtHamParams { c1, c2, c3, c4 } = *h;
    LambdaSpectrum {
        l1: c1 + c2 - c3 + c4,
        l2: c1 - c2 + c3 + c4,
        l3: -c1 + c2 + c3 + c4,
        l4: -c1 - c2 - c3 + c4,
    }
}

/// One inequality `lhs ≥ rhs` of the LOCC simulation criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// The three LOCC conditions for `h` simulating `t`.
pub fn locc_conditions(h: &HamParams, t: &HamParams) -> [Condition; 3] {
    let cond = |name, lhs: f64, rhs: f64| Condition {
        name,
        lhs,
        rhs,
        holds: lhs >= rhs - COMPARE_TOL,
    };
    [
        cond("c1+c2-c3 >= t1+t2-t3", h.c1 + h.c2 - h.c3, t.c1 + t.c2 - t.c3),
        cond("c1 >= t1", h.c1, t.c1),
        cond("c1+c2+c3 >= t1+t2+t3", h.c1 + h.c2 + h.c3, t.c1 + t.c2 + t.c3),
    ]
}

/// Whether `h` simulates `t` efficiently under LOCC for infinitesimal times.
pub fn locc_simulable(h: &HamParams, t: &HamParams) -> bool {
    locc_conditions(h, t).iter().all(|c| c.holds)
}

/// `(c1+c2, 0, 0)`, reachable from `h` with one entangled catalyst pair.
pub fn catalytic_target(h: &HamParams) -> HamParams {
    HamParams {
        c1: h.c1 + h.c2,
        c2: 0.0,
        c3: 0.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// The cat-LU constraints on the target's global constant `c4`:
/// `c4 ≤ upper`, `c4 ≥ lower` and `|c4| ≤ radius`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C4Feasibility {
    pub upper: f64,
    pub lower: f64,
    pub radius: f64,
    /// `[max(lower, -radius), min(upper, radius)]` when non-empty.
    pub interval: Option<Interval>,
    /// The feasible value of least magnitude.
    pub witness_c4: Option<f64>,
}

impl C4Feasibility {
    pub fn is_empty(&self) -> bool {
        self.interval.is_none()
    }

    /// Name of the constraint that empties the interval, if any.
    pub fn violated(&self) -> Option<&'static str> {
        if self.interval.is_some() {
            None
        } else if self.lower > self.upper + COMPARE_TOL {
            Some("c1+c2-c3 - (t1+t2-t3) >= c4 >= t1+t2+t3 - (c1+c2+c3)")
        } else {
            Some("sum|c_k| >= sum|t_k| + |c4|")
        }
    }
}

pub fn catlu_feasible_c4(h: &HamParams, t: &HamParams) -> C4Feasibility {
    let upper = (h.c1 + h.c2 - h.c3) - (t.c1 + t.c2 - t.c3);
    let lower = (t.c1 + t.c2 + t.c3) - (h.c1 + h.c2 + h.c3);
    let radius = h.abs_sum() - t.abs_sum();
    let lo = lower.max(-radius);
    let hi = upper.min(radius);
    let (interval, witness_c4) = if lo <= hi + COMPARE_TOL {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        (Some(Interval { lo, hi }), Some(0.0f64.clamp(lo, hi)))
    } else {
        (None, None)
    };
    C4Feasibility {
        upper,
        lower,
        radius,
        interval,
        witness_c4,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    LoccSimulable,
    CatalyticSimulable,
    Forbidden,
    Undecided,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 4] = [
        VerdictKind::LoccSimulable,
        VerdictKind::CatalyticSimulable,
        VerdictKind::Forbidden,
        VerdictKind::Undecided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::LoccSimulable => "LOCC_SIMULABLE",
            VerdictKind::CatalyticSimulable => "CATALYTIC_SIMULABLE",
            VerdictKind::Forbidden => "FORBIDDEN",
            VerdictKind::Undecided => "UNDECIDED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub source: HamParams,
    pub target: HamParams,
    /// LOCC conditions checked for the deciding source (the catalysed one on
    /// the catalytic route).
    pub locc_conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalysed_source: Option<HamParams>,
    pub c4_feasibility: C4Feasibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationVerdict {
    pub kind: VerdictKind,
    pub witness: Witness,
    pub notes: Vec<&'static str>,
}

pub fn classify_simulation(h: &HamParams, t: &HamParams) -> SimulationVerdict {
    let feas = catlu_feasible_c4(h, t);
    let direct = locc_conditions(h, t);
    let mut notes = vec![LOCC_READING_NOTE, GAUGE_NOTE];
    let witness = |conds: [Condition; 3], via: Option<HamParams>, violated| Witness {
        source: *h,
        target: *t,
        locc_conditions: conds.to_vec(),
        catalysed_source: via,
        c4_feasibility: feas.clone(),
        violated,
    };
    if direct.iter().all(|c| c.holds) {
        return SimulationVerdict {
            kind: VerdictKind::LoccSimulable,
            witness: witness(direct, None, None),
            notes,
        };
    }
    let cat = catalytic_target(h);
    let via = locc_conditions(&cat, t);
    if via.iter().all(|c| c.holds) {
        return SimulationVerdict {
            kind: VerdictKind::CatalyticSimulable,
            witness: witness(via, Some(cat), None),
            notes,
        };
    }
    if feas.is_empty() {
        let violated = feas.violated();
        return SimulationVerdict {
            kind: VerdictKind::Forbidden,
            witness: witness(direct, None, violated),
            notes,
        };
    }
    notes.push(SINGLE_STEP_NOTE);
    let violated = direct.iter().find(|c| !c.holds).map(|c| c.name);
    SimulationVerdict {
        kind: VerdictKind::Undecided,
        witness: witness(direct, Some(cat), violated),
        notes,
    }
}

/// A uniformly drawn normal-form triple with `c1 ≤ max`.
pub fn random_normal_form<R: Rng + ?Sized>(rng: &mut R, max: f64) -> HamParams {
    let a = rng.random::<f64>() * max;
    let b = rng.random::<f64>() * max;
    let (c1, c2) = if a >= b { (a, b) } else { (b, a) };
    let c3 = (2.0 * rng.random::<f64>() - 1.0) * c2;
    HamParams { c1, c2, c3 }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictCounts {
    pub locc_simulable: usize,
    pub catalytic_simulable: usize,
    pub forbidden: usize,
    pub undecided: usize,
}

impl VerdictCounts {
    pub fn get(&self, kind: VerdictKind) -> usize {
        match kind {
            VerdictKind::LoccSimulable => self.locc_simulable,
            VerdictKind::CatalyticSimulable => self.catalytic_simulable,
            VerdictKind::Forbidden => self.forbidden,
            VerdictKind::Undecided => self.undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub pairs: usize,
    pub seed: u64,
    pub counts: VerdictCounts,
}

/// Classifies `pairs` random normal-form pairs with coefficients in `[0, π/4]`.
pub fn scan_verdicts(pairs: usize, seed: u64) -> ScanReport {
    let mut rng = seeded_rng(seed, 0x5CA4);
    let mut counts = VerdictCounts {
        locc_simulable: 0,
        catalytic_simulable: 0,
        forbidden: 0,
        undecided: 0,
    };
    for _ in 0..pairs {
        let h = random_normal_form(&mut rng, std::f64::consts::FRAC_PI_4);
        let t = random_normal_form(&mut rng, std::f64::consts::FRAC_PI_4);
        match classify_simulation(&h, &t).kind {
            VerdictKind::LoccSimulable => counts.locc_simulable += 1,
            VerdictKind::CatalyticSimulable => counts.catalytic_simulable += 1,
            VerdictKind::Forbidden => counts.forbidden += 1,
            VerdictKind::Undecided => counts.undecided += 1,
        }
    }
    ScanReport { pairs, seed, counts }
}

/// `p · (u ⊗ v)† (H ⊗ 1) (u ⊗ v)` with `u` on `A` plus Alice's ancillas and
/// `v` on `B` plus Bob's.
#[derive(Clone, Debug)]
pub struct MixtureTerm {
    pub p: f64,
    pub u: UnitaryOp,
    pub v: UnitaryOp,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixtureCheck {
    pub within: bool,
    pub spectrum: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

fn mixture_register(ancilla_qubits: (usize, usize)) -> Register {
    let mut labels = vec!["A".to_string()];
    labels.extend((0..ancilla_qubits.0).map(|k| format!("a{k}")));
    labels.push("B".to_string());
    labels.extend((0..ancilla_qubits.1).map(|k| format!("b{k}")));
    Register::new(&labels).expect("distinct labels")
}

/// Spectrum of the averaged conjugated Hamiltonian and whether it stays in
/// `[λ4, λ1]` of `h`. `ancilla_qubits` counts the ancilla qubits on each side.
pub fn mixture_spectrum_bounds(
    h: &HamParams,
    mixture: &[MixtureTerm],
    ancilla_qubits: (usize, usize),
) -> Result<MixtureCheck> {
    if mixture.is_empty() {
        return Err(Error::InvalidMixture("no terms".into()));
    }
    let du = 2usize << ancilla_qubits.0;
    let dv = 2usize << ancilla_qubits.1;
    let mut total = 0.0;
    for (m, term) in mixture.iter().enumerate() {
        if !(term.p > 0.0 && term.p.is_finite()) {
            return Err(Error::InvalidMixture(format!("weight {m} is {}", term.p)));
        }
        if term.u.dim() != du || term.v.dim() != dv {
            return Err(Error::InvalidMixture(format!(
                "term {m} has local dims ({}, {}), expected ({du}, {dv})",
                term.u.dim(),
                term.v.dim()
            )));
        }
        total += term.p;
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidMixture(format!("weights sum to {total}")));
    }

    let register = mixture_register(ancilla_qubits);
    let big_h = embed_operator(&h.matrix(), &["A", "B"], &register)?;
    let d = du * dv;
    let mut avg = CMatrix::zeros(d, d);
    for term in mixture {
        let w = kron(term.u.matrix(), term.v.matrix());
        avg += (w.adjoint() * &big_h * w) * c(term.p, 0.0);
    }
    avg = (&avg + avg.adjoint()) * c(0.5, 0.0);
    let spectrum = hermitian_eigenvalues(&avg)?;
    let lambda = lambda_spectrum(&ExtHamParams::from_ham(*h, 0.0));
    let (lower, upper) = (lambda.l4, lambda.l1);
    let within = spectrum
        .iter()
        .all(|&e| e >= lower - SPECTRUM_TOL && e <= upper + SPECTRUM_TOL);
    Ok(MixtureCheck {
        within,
        spectrum,
        lower,
        upper,
    })
}

/// `terms` Haar-random local pairs with Dirichlet-like random weights.
pub fn random_mixture<R: Rng + ?Sized>(
    rng: &mut R,
    terms: usize,
    ancilla_qubits: (usize, usize),
) -> Result<Vec<MixtureTerm>> {
    let raw: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter()
        .map(|w| {
            Ok(MixtureTerm {
                p: w / sum,
                u: haar_unitary_from(rng, 2 << ancilla_qubits.0)?,
                v: haar_unitary_from(rng, 2 << ancilla_qubits.1)?,
            })
        })
        .collect()
}

/// The 16 equally weighted conjugations by `σ_j ⊗ σ_k`, without ancillas.
pub fn pauli_twirl() -> Vec<MixtureTerm> {
    let mut terms = Vec::with_capacity(16);
    for j in 1..=4 {
        for k in 1..=4 {
            terms.push(MixtureTerm {
                p: 1.0 / 16.0,
                u: UnitaryOp::from_matrix_unchecked(sigma(j)),
                v: UnitaryOp::from_matrix_unchecked(sigma(k)),
            });
        }
    }
    terms
}

/// `tr_X[(σ_k ⊗ 1) w]` where `X` is the leading qubit of `w`.
fn coefficient_operator(w: &CMatrix, k: usize) -> CMatrix {
    let m = kron(&sigma(k), &CMatrix::identity(w.nrows() / 2, w.nrows() / 2)) * w;
    let d = m.nrows() / 2;
    m.view((0, 0), (d, d)) + m.view((d, d), (d, d))
}

/// `¼ Σ_k |<φ0| X_k ⊗ Y_k |φ0>|` with `X_k = tr_A[σ_k u† σ_n u]` and `Y_k`
/// the same on Bob's side. `phi0` holds Alice's ancillas first, then Bob's.
pub fn h_coefficient(phi0: &PureState, u: &UnitaryOp, v: &UnitaryOp, n: usize) -> Result<f64> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("Pauli index must be 1, 2 or 3, got {n}")));
    }
    if u.n_qubits() == 0 || v.n_qubits() == 0 {
        return Err(Error::Precondition("u and v must each include the system qubit".into()));
    }
    let anc = u.n_qubits() - 1 + v.n_qubits() - 1;
    if phi0.n_qubits() != anc {
        return Err(Error::DimensionMismatch {
            expected: 1 << anc,
            got: phi0.amplitudes().len(),
        });
    }
    let conj = |op: &UnitaryOp| {
        let s = kron(&sigma(n), &CMatrix::identity(op.dim() / 2, op.dim() / 2));
        op.matrix().adjoint() * s * op.matrix()
    };
    let wu = conj(u);
    let wv = conj(v);
    let psi = phi0.amplitudes();
    let mut total = 0.0;
    for k in 1..=4 {
        let xy = kron(&coefficient_operator(&wu, k), &coefficient_operator(&wv, k));
        let e: C64 = psi.dotc(&(xy * psi));
        total += e.norm();
    }
    Ok(total / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::random_state_from;
    use proptest::prelude::*;

    fn hp(c1: f64, c2: f64, c3: f64) -> HamParams {
        HamParams::new(c1, c2, c3).unwrap()
    }

    fn close(a: [f64; 4], b: [f64; 4]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15)
    }

    #[test]
    fn normal_form_enforced() {
        assert!(matches!(HamParams::new(0.2, 0.3, 0.0), Err(Error::NotNormalForm(..))));
        assert!(matches!(HamParams::new(0.3, 0.1, -0.2), Err(Error::NotNormalForm(..))));
        assert!(HamParams::new(0.3, 0.3, -0.3).is_ok());
        assert!(HamParams::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(ExtHamParams::new(0.1, 0.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_spectrum(&ExtHamParams::new(1.0, 0.0, 0.0, 0.0).unwrap());
        assert!(close(l.as_array(), [1.0, 1.0, -1.0, -1.0]));
        let l = lambda_spectrum(&ExtHamParams::new(0.3, 0.2, 0.1, 0.0).unwrap());
        assert!(close(l.as_array(), [0.4, 0.2, 0.0, -0.6]));
        let s = lambda_spectrum(&ExtHamParams::new(0.3, 0.2, 0.1, 0.25).unwrap());
        assert!(close(s.as_array(), l.as_array().map(|x| x + 0.25)));
    }

    #[test]
    fn lambdas_are_the_matrix_spectrum() {
        let h = hp(0.41, 0.23, -0.07);
        let mut ev = hermitian_eigenvalues(&h.matrix()).unwrap();
        ev.sort_by(|a, b| b.total_cmp(a));
        let l = lambda_spectrum(&ExtHamParams::from_ham(h, 0.0)).as_array();
        for (e, l) in ev.iter().zip(l) {
            assert!((e - l).abs() < 1e-12);
        }
    }

    #[test]
    fn locc_examples() {
        assert!(locc_simulable(&hp(0.5, 0.0, 0.0), &hp(0.3, 0.2, 0.0)));
        assert!(!locc_simulable(&hp(0.3, 0.2, 0.0), &hp(0.5, 0.0, 0.0)));
        let h = hp(0.3, 0.2, 0.1);
        assert!(locc_simulable(&h, &h));
        assert!(!locc_conditions(&hp(0.3, 0.2, 0.0), &hp(0.5, 0.0, 0.0))[1].holds);
    }

    #[test]
    fn catalytic_target_examples() {
        assert_eq!(catalytic_target(&hp(0.3, 0.2, 0.0)), hp(0.5, 0.0, 0.0));
        assert_eq!(catalytic_target(&hp(0.7, 0.0, 0.0)), hp(0.7, 0.0, 0.0));
        assert_eq!(catalytic_target(&hp(0.3, 0.2, 0.1)), hp(0.5, 0.0, 0.0));
    }

    #[test]
    fn feasibility_examples() {
        let f = catlu_feasible_c4(&hp(0.3, 0.2, 0.1), &hp(0.6, 0.0, 0.0));
        assert!(f.is_empty());
        assert!((f.upper + 0.2).abs() < 1e-15 && f.lower.abs() < 1e-15);
        let h = hp(0.3, 0.2, 0.1);
        let f = catlu_feasible_c4(&h, &h);
        let i = f.interval.unwrap();
        assert!(i.lo <= 0.0 && i.hi >= 0.0);
        assert_eq!(f.witness_c4, Some(0.0));
        let f = catlu_feasible_c4(&hp(0.3, 0.2, 0.1), &hp(0.3, 0.2, -0.1));
        assert!(f.is_empty());
        assert_eq!(f.violated(), Some("sum|c_k| >= sum|t_k| + |c4|"));
    }

    #[test]
    fn verdict_examples() {
        let v = classify_simulation(&hp(0.5, 0.0, 0.0), &hp(0.3, 0.2, 0.0));
        assert_eq!(v.kind, VerdictKind::LoccSimulable);
        let v = classify_simulation(&hp(0.3, 0.2, 0.0), &hp(0.5, 0.0, 0.0));
        assert_eq!(v.kind, VerdictKind::CatalyticSimulable);
        assert_eq!(v.witness.catalysed_source, Some(hp(0.5, 0.0, 0.0)));
        let v = classify_simulation(&hp(0.3, 0.2, 0.1), &hp(0.6, 0.0, 0.0));
        assert_eq!(v.kind, VerdictKind::Forbidden);
        assert!(v.witness.c4_feasibility.interval.is_none());
        let v = classify_simulation(&hp(0.3, 0.2, 0.1), &hp(0.3, 0.2, -0.1));
        assert_eq!(v.kind, VerdictKind::Forbidden);
        assert!(v.notes.contains(&LOCC_READING_NOTE));
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify_simulation(&hp(0.3, 0.2, 0.1), &hp(0.6, 0.0, 0.0));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["kind"], "FORBIDDEN");
        assert!(j["witness"].is_object());
        assert!(j["witness"]["c4_feasibility"]["interval"].is_null());
        assert!(j["notes"].as_array().unwrap().len() >= 2);
    }

    #[test]
    fn scan_reaches_several_verdicts() {
        let r = scan_verdicts(10_000, 0);
        let c = &r.counts;
        assert_eq!(
            c.locc_simulable + c.catalytic_simulable + c.forbidden + c.undecided,
            10_000
        );
        assert!(c.locc_simulable > 0 && c.catalytic_simulable > 0 && c.forbidden > 0);
        assert_eq!(r, scan_verdicts(10_000, 0));
    }

    #[test]
    fn mixture_examples() {
        let h = hp(0.3, 0.2, 0.1);
        let single = [MixtureTerm {
            p: 1.0,
            u: UnitaryOp::identity(2),
            v: UnitaryOp::identity(2),
        }];
        let r = mixture_spectrum_bounds(&h, &single, (1, 1)).unwrap();
        assert!(r.within);
        let want = [
            0.4, 0.4, 0.4, 0.4, 0.2, 0.2, 0.2, 0.2, 0.0, 0.0, 0.0, 0.0, -0.6, -0.6, -0.6, -0.6,
        ];
        for (e, w) in r.spectrum.iter().zip(want) {
            assert!((e - w).abs() < 1e-12, "{:?}", r.spectrum);
        }
        let r = mixture_spectrum_bounds(&h, &pauli_twirl(), (0, 0)).unwrap();
        assert!(r.within);
        assert!(r.spectrum.iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn mixture_rejects_bad_input() {
        let h = hp(0.3, 0.2, 0.1);
        let term = |p| MixtureTerm {
            p,
            u: UnitaryOp::identity(1),
            v: UnitaryOp::identity(1),
        };
        assert!(mixture_spectrum_bounds(&h, &[], (0, 0)).is_err());
        assert!(mixture_spectrum_bounds(&h, &[term(0.5)], (0, 0)).is_err());
        assert!(mixture_spectrum_bounds(&h, &[term(1.5), term(-0.5)], (0, 0)).is_err());
        assert!(mixture_spectrum_bounds(&h, &[term(1.0)], (1, 0)).is_err());
    }

    #[test]
    fn h_coefficient_identity() {
        let mut rng = seeded_rng(4, 0);
        for n in 1..=3 {
            let phi0 = random_state_from(&mut rng, &["a", "b"]).unwrap();
            let v = h_coefficient(&phi0, &UnitaryOp::identity(2), &UnitaryOp::identity(2), n).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!(h_coefficient(
            &PureState::basis(&["a", "b"], 0).unwrap(),
            &UnitaryOp::identity(2),
            &UnitaryOp::identity(2),
            4
        )
        .is_err());
    }

    #[test]
    fn h_coefficient_local_rotation() {
        // Hadamard on A maps σ_z to σ_x, so only the k = 1 term survives.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let had = UnitaryOp::from_rows(2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]).unwrap();
        let u = had.tensor(&UnitaryOp::identity(1));
        let phi0 = PureState::basis(&["a", "b"], 0).unwrap();
        let v = h_coefficient(&phi0, &u, &UnitaryOp::identity(2), 3).unwrap();
        assert!(v.abs() < 1e-12);
        let v = h_coefficient(&phi0, &u, &u, 3).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn lambda_is_decreasing(seed in any::<u64>(), c4 in -1.0f64..1.0) {
            let h = random_normal_form(&mut seeded_rng(seed, 0), 2.0);
            let l = lambda_spectrum(&ExtHamParams::from_ham(h, c4));
            prop_assert!(l.l1 >= l.l2 && l.l2 >= l.l3 && l.l3 >= l.l4);
        }

        #[test]
        fn locc_is_a_preorder(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed, 0);
            let a = random_normal_form(&mut rng, 1.0);
            let b = random_normal_form(&mut rng, 1.0);
            let c = random_normal_form(&mut rng, 1.0);
            prop_assert!(locc_simulable(&a, &a));
            if locc_simulable(&a, &b) && locc_simulable(&b, &c) {
                prop_assert!(locc_simulable(&a, &c));
            }
        }

        #[test]
        fn locc_implies_catlu_conditions(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed, 0);
            let h = random_normal_form(&mut rng, 1.0);
            let t = random_normal_form(&mut rng, 1.0);
            let v = classify_simulation(&h, &t);
            if locc_simulable(&h, &t) {
                let f = catlu_feasible_c4(&h, &t);
                let i = f.interval.expect("c4 = 0 is feasible");
                prop_assert!(i.lo <= COMPARE_TOL && i.hi >= -COMPARE_TOL);
            }
            if matches!(v.kind, VerdictKind::LoccSimulable | VerdictKind::CatalyticSimulable) {
                prop_assert!(!catlu_feasible_c4(&h, &t).is_empty());
            }
        }

        #[test]
        fn h_coefficient_at_most_one(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = seeded_rng(seed, 0);
            let u = haar_unitary_from(&mut rng, 4).unwrap();
            let v = haar_unitary_from(&mut rng, 4).unwrap();
            let phi0 = random_state_from(&mut rng, &["a", "b"]).unwrap();
            prop_assert!(h_coefficient(&phi0, &u, &v, n).unwrap() <= 1.0 + 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1_000))]
        #[test]
        fn mixtures_stay_in_interval(seed in any::<u64>(), na in 1usize..=2, nb in 1usize..=2, terms in 1usize..6) {
            let mut rng = seeded_rng(seed, 0);
            let h = random_normal_form(&mut rng, 1.0);
            let mix = random_mixture(&mut rng, terms, (na, nb)).unwrap();
            prop_assert!(mixture_spectrum_bounds(&h, &mix, (na, nb)).unwrap().within);
        }
    }
}
