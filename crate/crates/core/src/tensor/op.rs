use super::{all_finite, c, qubits_for_dim, CMatrix, CVector, CONSTRUCT_TOL};
use crate::error::{Error, Result};

/// Kronecker product with `a` on the more significant factor.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Same as [`kron`]; named after the operation it performs on operators.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(a, b)
}

/// `||U^dag U - 1||_F`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

/// A validated unitary acting on `n` qubits (dimension `2^n`).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOp {
    matrix: CMatrix,
    n_qubits: usize,
}

impl UnitaryOp {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        let n_qubits = qubits_for_dim(matrix.nrows()).ok_or(Error::NotPowerOfTwo(matrix.nrows()))?;
        if !all_finite(matrix.iter()) {
            return Err(Error::NonFinite("operator entries"));
        }
        let defect = unitarity_defect(&matrix);
        if defect > CONSTRUCT_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(UnitaryOp { matrix, n_qubits })
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, entries: &[super::C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Self::new(CMatrix::from_row_slice(dim, dim, entries))
    }

    /// Wraps a matrix that is unitary by construction. Debug builds still check.
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        debug_assert!(unitarity_defect(&matrix) < 1e-8, "not unitary");
        let n_qubits = qubits_for_dim(matrix.nrows()).expect("power-of-two dimension");
        UnitaryOp { matrix, n_qubits }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        UnitaryOp {
            matrix: CMatrix::identity(d, d),
            n_qubits,
        }
    }

    /// Permutation unitary sending basis state `j` to `perm(j)`.
    pub fn permutation(n_qubits: usize, perm: impl Fn(usize) -> usize) -> Result<Self> {
        let d = 1 << n_qubits;
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let i = perm(j);
            if i >= d {
                return Err(Error::Precondition(format!("permutation image {i} out of range")));
            }
            m[(i, j)] = c(1.0, 0.0);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> UnitaryOp {
        UnitaryOp {
            matrix: self.matrix.adjoint(),
            n_qubits: self.n_qubits,
        }
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryOp) -> Result<UnitaryOp> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(UnitaryOp {
            matrix: &self.matrix * &other.matrix,
            n_qubits: self.n_qubits,
        })
    }

    pub fn tensor(&self, other: &UnitaryOp) -> UnitaryOp {
        UnitaryOp {
            matrix: kron(&self.matrix, &other.matrix),
            n_qubits: self.n_qubits + other.n_qubits,
        }
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.matrix * v
    }

    pub fn defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::sigma;

    fn ket(bits: usize, dim: usize) -> CVector {
        let mut v = CVector::zeros(dim);
        v[bits] = c(1.0, 0.0);
        v
    }

    #[test]
    fn xx_flips_both_bits() {
        let xx = kron(&sigma(1), &sigma(1));
        assert_eq!(xx * ket(0b00, 4), ket(0b11, 4));
    }

    #[test]
    fn identity_kron() {
        assert_eq!(kron(&sigma(4), &sigma(4)), CMatrix::identity(4, 4));
    }

    #[test]
    fn zz_eigenstate() {
        let zz = kron(&sigma(3), &sigma(3));
        assert_eq!(zz * ket(0b01, 4), -ket(0b01, 4));
    }

    #[test]
    fn rejects_non_unitary() {
        let m = CMatrix::from_element(2, 2, c(1.0, 0.0));
        assert!(matches!(UnitaryOp::new(m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(
            UnitaryOp::new(CMatrix::identity(3, 3)),
            Err(Error::NotPowerOfTwo(3))
        ));
        let mut m = CMatrix::identity(2, 2);
        m[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(UnitaryOp::new(m), Err(Error::NonFinite(_))));
    }

    #[test]
    fn kron_puts_first_factor_high() {
        // X on the high qubit maps |01> (index 1) to |11> (index 3).
        let x1 = kron(&sigma(1), &sigma(4));
        assert_eq!(x1 * ket(1, 4), ket(3, 4));
    }
}
