use std::fmt;

use super::{all_finite, c, qubits_for_dim, CMatrix, CVector, UnitaryOp, CONSTRUCT_TOL};
use crate::error::{Error, Result};

/// Schmidt probabilities at or below this value are dropped as numerical zeros.
const SCHMIDT_ZERO: f64 = 1e-14;

/// Ordered list of distinct qubit labels. The first label is the most
/// significant bit of the basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Register(Vec<String>);

impl Register {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut out: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if out.iter().any(|x| x == l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            out.push(l.to_string());
        }
        Ok(Register(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Positions of `labels`, rejecting unknown and repeated entries.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l.as_ref())?;
            if out.contains(&p) {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
            out.push(p);
        }
        Ok(out)
    }

    fn concat(&self, other: &Register) -> Result<Register> {
        let mut labels = self.0.clone();
        labels.extend(other.0.iter().cloned());
        Register::new(&labels)
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

/// A bipartition of a register into two labelled blocks, written `"A,a|B,b"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Cut {
    pub fn new<S: AsRef<str>>(left: &[S], right: &[S]) -> Self {
        Cut {
            left: left.iter().map(|s| s.as_ref().to_string()).collect(),
            right: right.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let blocks: Vec<&str> = spec.split('|').collect();
        if blocks.len() != 2 {
            return Err(Error::InvalidCut(format!(
                "expected two blocks separated by `|`, got `{spec}`"
            )));
        }
        let split = |b: &str| -> Vec<String> {
            b.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        };
        Ok(Cut {
            left: split(blocks[0]),
            right: split(blocks[1]),
        })
    }

    /// Validates the cut against `register`, returning bit positions of each block.
    fn resolve(&self, register: &Register) -> Result<(Vec<usize>, Vec<usize>)> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::InvalidCut("both blocks must be non-empty".into()));
        }
        let left = register
            .positions(&self.left)
            .map_err(|e| Error::InvalidCut(e.to_string()))?;
        let right = register
            .positions(&self.right)
            .map_err(|e| Error::InvalidCut(e.to_string()))?;
        if left.iter().any(|p| right.contains(p)) {
            return Err(Error::InvalidCut("blocks overlap".into()));
        }
        if left.len() + right.len() != register.len() {
            return Err(Error::InvalidCut(format!("blocks do not cover register {register}")));
        }
        Ok((left, right))
    }

    pub fn swapped(&self) -> Cut {
        Cut {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left.join(","), self.right.join(","))
    }
}

/// Normalised amplitude vector over a labelled register.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    register: Register,
    amplitudes: CVector,
}

impl PureState {
    pub fn new<S: AsRef<str>>(labels: &[S], amplitudes: CVector) -> Result<Self> {
        let register = Register::new(labels)?;
        Self::with_register(register, amplitudes)
    }

    pub fn with_register(register: Register, amplitudes: CVector) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len()).ok_or(Error::NotPowerOfTwo(amplitudes.len()))?;
        if n != register.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << register.len(),
                got: amplitudes.len(),
            });
        }
        if !all_finite(amplitudes.iter()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm2 = amplitudes.norm_squared();
        if (norm2 - 1.0).abs() > CONSTRUCT_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(PureState { register, amplitudes })
    }

    /// Normalises `amplitudes` before validation.
    pub fn normalized<S: AsRef<str>>(labels: &[S], amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(labels, amplitudes / c(norm, 0.0))
    }

    /// Computational basis state `|index>` in big-endian order.
    pub fn basis<S: AsRef<str>>(labels: &[S], index: usize) -> Result<Self> {
        let d = 1usize << labels.len();
        if index >= d {
            return Err(Error::Precondition(format!("basis index {index} >= {d}")));
        }
        let mut v = CVector::zeros(d);
        v[index] = c(1.0, 0.0);
        Self::new(labels, v)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn labels(&self) -> &[String] {
        self.register.labels()
    }

    pub fn n_qubits(&self) -> usize {
        self.register.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `self ⊗ other` over the concatenated register.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let register = self.register.concat(&other.register)?;
        Ok(PureState {
            register,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }

    /// The same state expressed over a reordering of its register.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<PureState> {
        if order.len() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                got: order.len(),
            });
        }
        let positions = self.register.positions(order)?;
        let n = self.n_qubits();
        let mut out = CVector::zeros(self.amplitudes.len());
        for (old, amp) in self.amplitudes.iter().enumerate() {
            let mut new = 0usize;
            for (new_pos, &old_pos) in positions.iter().enumerate() {
                let bit = (old >> (n - 1 - old_pos)) & 1;
                new |= bit << (n - 1 - new_pos);
            }
            out[new] = *amp;
        }
        Ok(PureState {
            register: Register::new(order)?,
            amplitudes: out,
        })
    }

    /// `<self|other>`; both states must share the same register order.
    pub fn inner(&self, other: &PureState) -> Result<super::C64> {
        if self.register != other.register {
            return Err(Error::Precondition(format!(
                "register mismatch: {} vs {}",
                self.register, other.register
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `min_phi || self - e^{i phi} other ||`.
    pub fn dist_up_to_phase(&self, other: &PureState) -> Result<f64> {
        let ov = self.inner(other)?.norm();
        Ok((2.0 - 2.0 * ov).max(0.0).sqrt())
    }

    /// Reduced density matrix on `keep` (ordered as given).
    pub fn reduced_density<S: AsRef<str>>(&self, keep: &[S]) -> Result<CMatrix> {
        let keep_pos = self.register.positions(keep)?;
        let rest: Vec<usize> = (0..self.n_qubits()).filter(|p| !keep_pos.contains(p)).collect();
        let m = self.bipartite_matrix(&keep_pos, &rest);
        Ok(&m * m.adjoint())
    }

    pub fn apply(&self, op: &UnitaryOp, targets: &[&str]) -> Result<PureState> {
        apply_on_targets(op, targets, self)
    }

    /// Amplitudes reshaped to a `2^|rows| x 2^|cols|` matrix.
    fn bipartite_matrix(&self, rows: &[usize], cols: &[usize]) -> CMatrix {
        let n = self.n_qubits();
        let mut m = CMatrix::zeros(1 << rows.len(), 1 << cols.len());
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let pick = |ps: &[usize]| {
                ps.iter()
                    .fold(0usize, |acc, &p| (acc << 1) | ((idx >> (n - 1 - p)) & 1))
            };
            m[(pick(rows), pick(cols))] = *amp;
        }
        m
    }
}

/// Applies `m` (acting on `positions.len()` qubits, ordered as `positions`)
/// to an amplitude vector over `n` qubits.
pub(crate) fn apply_matrix_on_positions(m: &CMatrix, positions: &[usize], n: usize, amps: &CVector) -> CVector {
    let k = positions.len();
    let local_dim = 1usize << k;
    debug_assert_eq!(m.nrows(), local_dim);
    let masks: Vec<usize> = positions.iter().map(|&p| 1usize << (n - 1 - p)).collect();
    let target_mask: usize = masks.iter().sum();
    let offsets: Vec<usize> = (0..local_dim)
        .map(|l| {
            masks
                .iter()
                .enumerate()
                .filter(|(t, _)| (l >> (k - 1 - t)) & 1 == 1)
                .map(|(_, m)| m)
                .sum()
        })
        .collect();
    let mut out = CVector::zeros(amps.len());
    let mut local = CVector::zeros(local_dim);
    for base in (0..amps.len()).filter(|i| i & target_mask == 0) {
        for (l, off) in offsets.iter().enumerate() {
            local[l] = amps[base | off];
        }
        let res = m * &local;
        for (l, off) in offsets.iter().enumerate() {
            out[base | off] = res[l];
        }
    }
    out
}

/// Applies `op` to the qubits `targets` of `state`. The i-th target is the
/// i-th most significant qubit of `op`.
pub fn apply_on_targets(op: &UnitaryOp, targets: &[&str], state: &PureState) -> Result<PureState> {
    if targets.len() != op.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: op.n_qubits(),
            got: targets.len(),
        });
    }
    let positions = state.register.positions(targets)?;
    let amps = apply_matrix_on_positions(op.matrix(), &positions, state.n_qubits(), &state.amplitudes);
    Ok(PureState {
        register: state.register.clone(),
        amplitudes: amps,
    })
}

/// Full-register matrix of `m` acting on `targets`. `m` need not be unitary.
pub fn embed_operator<S: AsRef<str>>(m: &CMatrix, targets: &[S], register: &Register) -> Result<CMatrix> {
    if m.nrows() != m.ncols() || m.nrows() != 1 << targets.len() {
        return Err(Error::DimensionMismatch {
            expected: 1 << targets.len(),
            got: m.nrows(),
        });
    }
    let positions = register.positions(targets)?;
    let n = register.len();
    let d = 1usize << n;
    let mut out = CMatrix::zeros(d, d);
    let mut e = CVector::zeros(d);
    for j in 0..d {
        e.fill(c(0.0, 0.0));
        e[j] = c(1.0, 0.0);
        out.set_column(j, &apply_matrix_on_positions(m, &positions, n, &e));
    }
    Ok(out)
}

/// Squared Schmidt coefficients across `cut`, in decreasing order, with
/// numerical zeros removed.
pub fn schmidt_probs(state: &PureState, cut: &Cut) -> Result<Vec<f64>> {
    let (left, right) = cut.resolve(&state.register)?;
    let m = state.bipartite_matrix(&left, &right);
    let mut probs: Vec<f64> = m
        .singular_values()
        .iter()
        .map(|s| s * s)
        .filter(|&p| p > SCHMIDT_ZERO)
        .collect();
    probs.sort_by(|a, b| b.total_cmp(a));
    Ok(probs)
}
