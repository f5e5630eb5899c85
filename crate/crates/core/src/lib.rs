//! Two-qubit canonical forms, entanglement catalysis of non-local gates, the
//! Schmidt-probability monotone and the Hamiltonian simulation partial order.
//!
//! - [`tensor`]: dense linear algebra on labelled qubit registers.
//! - [`canonical`]: `U_s(c1, c2, c3)`, the Bell basis and KAK decomposition.
//! - [`catalysis`]: the `w`-conjugation circuit that uses a Bell pair as catalyst.
//! - [`monotone`]: Schmidt-probability monotone and the LOCC overlap bound.
//! - [`hamsim`]: LOCC and catalytic simulation conditions for two-qubit Hamiltonians.
//! - [`io`] and [`suite`]: JSON file formats and the acceptance battery used by the CLI.

pub mod error;
pub mod tensor;

pub use error::{Error, Result};
pub mod canonical;
pub mod catalysis;
pub mod hamsim;
pub mod io;
pub mod monotone;
pub mod suite;
