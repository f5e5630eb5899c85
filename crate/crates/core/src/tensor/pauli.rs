use super::{c, CMatrix};

/// The four single-qubit basis operators. `I` is the fourth member so that
/// sums over `k = 1..=4` run over an orthonormal operator basis under
/// `<A, B> = tr(A^dag B) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
    I,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::X, Pauli::Y, Pauli::Z, Pauli::I];

    /// One-based index: 1 = X, 2 = Y, 3 = Z, 4 = identity.
    pub fn from_index(k: usize) -> Option<Pauli> {
        match k {
            1 => Some(Pauli::X),
            2 => Some(Pauli::Y),
            3 => Some(Pauli::Z),
            4 => Some(Pauli::I),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
            Pauli::I => 4,
        }
    }

    pub fn matrix(self) -> CMatrix {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let entries = match self {
            Pauli::X => [z, one, one, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [one, z, z, -one],
            Pauli::I => [one, z, z, one],
        };
        CMatrix::from_row_slice(2, 2, &entries)
    }
}

/// `sigma(k)` for `k` in `1..=4`.
///
/// Panics on an index outside that range.
pub fn sigma(k: usize) -> CMatrix {
    Pauli::from_index(k)
        .unwrap_or_else(|| panic!("Pauli index {k} out of range 1..=4"))
        .matrix()
}
