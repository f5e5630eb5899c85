//! JSON file formats for matrices, states and simulation verdicts.
//!
//! Complex numbers are `[re, im]` pairs. Matrices are row-major:
//!
//! ```json
//! {"dim": 2, "entries": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}
//! ```
//!
//! States list amplitudes in big-endian basis order:
//!
//! ```json
//! {"register": ["A", "B"], "amplitudes": [[0, 0], [0.7071067811865476, 0], [0.7071067811865476, 0], [0, 0]]}
//! ```
//!
//! Floats are written with the shortest representation that round-trips
//! exactly, so re-reading an emitted file reproduces the same bits.

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tensor::{c, CMatrix, CVector, PureState, UnitaryOp};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        MatrixFile {
            dim: m.nrows(),
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.dim {
            return Err(Error::Parse(format!(
                "expected {} rows, found {}",
                self.dim,
                self.entries.len()
            )));
        }
        if let Some((i, row)) = self.entries.iter().enumerate().find(|(_, r)| r.len() != self.dim) {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                self.dim
            )));
        }
        Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.entries[i][j];
            c(re, im)
        }))
    }

    pub fn to_unitary(&self) -> Result<UnitaryOp> {
        UnitaryOp::new(self.to_matrix()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub register: Vec<String>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(s: &PureState) -> Self {
        StateFile {
            register: s.labels().to_vec(),
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_state(&self) -> Result<PureState> {
        let v = CVector::from_iterator(
            self.amplitudes.len(),
            self.amplitudes.iter().map(|[re, im]| c(*re, *im)),
        );
        PureState::new(&self.register, v)
    }
}

pub(crate) fn ser_unitary<S: Serializer>(u: &UnitaryOp, s: S) -> std::result::Result<S::Ok, S::Error> {
    MatrixFile::from_matrix(u.matrix()).serialize(s)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<MatrixFile> {
    read_json(path.as_ref())
}

pub fn read_state_file(path: impl AsRef<Path>) -> Result<StateFile> {
    read_json(path.as_ref())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable value");
    s.push('\n');
    s
}
