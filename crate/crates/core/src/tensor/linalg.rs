use super::{c, CMatrix};
use crate::error::{Error, Result};

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.norm()
}

/// `min_phi ||U - e^{i phi} V||_F`, which for unitaries equals
/// `sqrt(2d - 2|tr(U^dag V)|)`.
///
/// Evaluated as the norm of `U - e^{i phi*} V` at the optimal phase rather
/// than through the closed form, whose cancellation leaves a floor of about
/// `sqrt(d * eps) ~ 1e-8`.
pub fn dist_up_to_global_phase(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            got: v.nrows(),
        });
    }
    let t = (u.adjoint() * v).trace();
    let phase = if t.norm() > 0.0 {
        t.conj() / t.norm()
    } else {
        c(1.0, 0.0)
    };
    Ok((u - v * phase).norm())
}

/// Dense matrix exponential by scaling and squaring of a truncated Taylor
/// series. Independent of any spectral construction.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    // 1-norm bound
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm1 * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = a * c(scale, 0.0);
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled * c(1.0 / k as f64, 0.0);
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Eigenvalues of a Hermitian matrix, sorted in decreasing order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let herm_defect = (m - m.adjoint()).norm();
    if herm_defect > 1e-9 * (1.0 + m.norm()) {
        return Err(Error::Numerical(format!(
            "matrix is not Hermitian (defect {herm_defect:.3e})"
        )));
    }
    let sym: CMatrix = (m + m.adjoint()) * c(0.5, 0.0);
    let mut vals: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}
