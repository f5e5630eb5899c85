//! Decomposition `U = e^{iγ} (u ⊗ v) · U_s(c1, c2, c3) · (ũ ⊗ ṽ)`.
//!
//! The unitary is rescaled into SU(4) and moved into the magic basis, where
//! local unitaries become real orthogonal matrices and `U_s` is diagonal.
//! With `M = Q^dag U Q`, the symmetric unitary `M^T M` is diagonalised by a
//! real orthogonal `P`; its eigenphases give the raw coefficients, and
//! `M P D^{-1/2}` and `P^T` are the two local factors.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use serde::Serialize;

use super::weyl::weyl_reduce;
use super::{u_s, CanonicalParams};
use crate::error::{Error, Result};
use crate::tensor::{c, dist_up_to_global_phase, CMatrix, UnitaryOp, C64};

/// Reassembly residual above which a decomposition is reported as failed.
pub const KAK_RESIDUAL_TOL: f64 = 1e-9;

/// Relative tolerance for grouping degenerate eigenvalues.
const DEGENERACY_TOL: f64 = 1e-8;

/// Canonical parameters of two unitaries must agree this closely to be LU-equivalent.
pub const LU_EQUIV_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct KakResult {
    #[serde(serialize_with = "crate::io::ser_unitary")]
    pub u: UnitaryOp,
    #[serde(serialize_with = "crate::io::ser_unitary")]
    pub v: UnitaryOp,
    #[serde(serialize_with = "crate::io::ser_unitary")]
    pub u_tilde: UnitaryOp,
    #[serde(serialize_with = "crate::io::ser_unitary")]
    pub v_tilde: UnitaryOp,
    #[serde(flatten)]
    pub params: CanonicalParams,
    pub global_phase: f64,
    pub residual: f64,
}

impl KakResult {
    /// `e^{iγ} (u⊗v) U_s (ũ⊗ṽ)`.
    pub fn reassemble(&self) -> CMatrix {
        let left = self.u.tensor(&self.v);
        let right = self.u_tilde.tensor(&self.v_tilde);
        left.matrix() * u_s(&self.params).matrix() * right.matrix() * C64::from_polar(1.0, self.global_phase)
    }
}

/// Columns: (|00>+|11>)/√2, i(|00>-|11>)/√2, i(|01>+|10>)/√2, (|01>-|10>)/√2,
/// i.e. B10, i·B11, i·B00, B01.
fn magic_basis() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let r = c(s, 0.0);
    let i = c(0.0, s);
    CMatrix::from_row_slice(
        4,
        4,
        &[
            r, i, z, z, //
            z, z, i, r, //
            z, z, i, -r, //
            r, -i, z, z,
        ],
    )
}

fn det4(m: &CMatrix) -> C64 {
    Matrix4::from_fn(|i, j| m[(i, j)]).determinant()
}

/// Splits a 4×4 product `L = a ⊗ b` into `a, b ∈ SU(2)` and a phase `χ`
/// with `L = e^{iχ} a ⊗ b`.
pub fn factor_local_product(l: &CMatrix) -> Result<(UnitaryOp, UnitaryOp, f64)> {
    if l.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: l.nrows(),
        });
    }
    // Entry of largest magnitude fixes which 2×2 slice carries `a`.
    let (mut best, mut at) = (0.0, (0, 0));
    for i in 0..4 {
        for j in 0..4 {
            if l[(i, j)].norm() > best {
                best = l[(i, j)].norm();
                at = (i, j);
            }
        }
    }
    let (i2, j2) = (at.0 & 1, at.1 & 1);
    let mut a = Matrix2::from_fn(|i1, j1| l[(2 * i1 + i2, 2 * j1 + j2)]);
    let det_a = a.determinant();
    if det_a.norm() < 1e-12 {
        return Err(Error::Numerical(
            "local factor is singular; input is not a product".into(),
        ));
    }
    a /= det_a.sqrt();
    // Least-squares projection: b_{kl} = Σ conj(a_{ij}) L_{(ik),(jl)} / Σ|a_{ij}|^2.
    let mut b = Matrix2::from_fn(|k, m| {
        let mut acc = c(0.0, 0.0);
        for i1 in 0..2 {
            for j1 in 0..2 {
                acc += a[(i1, j1)].conj() * l[(2 * i1 + k, 2 * j1 + m)];
            }
        }
        acc / c(2.0, 0.0)
    });
    let det_b = b.determinant();
    let chi = det_b.arg() / 2.0;
    b *= C64::from_polar(1.0, -chi);
    let to_dyn = |m: Matrix2<C64>| CMatrix::from_fn(2, 2, |i, j| m[(i, j)]);
    let a = to_dyn(a);
    let b = to_dyn(b);
    let recon = a.kronecker(&b) * C64::from_polar(1.0, chi);
    let err = (recon - l).norm();
    if err > 1e-9 {
        return Err(Error::Numerical(format!("not a local product (error {err:.3e})")));
    }
    Ok((UnitaryOp::new(a)?, UnitaryOp::new(b)?, chi))
}

/// Real symmetric eigenvectors, columns sorted by ascending eigenvalue.
fn sym_eigvecs(m: &Matrix4<f64>) -> (Matrix4<f64>, [f64; 4]) {
    let eig = SymmetricEigen::new(*m);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vecs = Matrix4::from_fn(|i, j| eig.eigenvectors[(i, order[j])]);
    let vals = [0, 1, 2, 3].map(|j| eig.eigenvalues[order[j]]);
    (vecs, vals)
}

/// Orthogonal `P` diagonalising the commuting pair `(first, second)`:
/// eigenvectors of `first`, refined inside each near-degenerate cluster by
/// diagonalising the projection of `second`.
fn simultaneous_diag(first: &Matrix4<f64>, second: &Matrix4<f64>) -> Matrix4<f64> {
    let (mut p, vals) = sym_eigvecs(first);
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && (vals[end] - vals[end - 1]).abs() <= DEGENERACY_TOL * scale {
            end += 1;
        }
        let k = end - start;
        if k > 1 {
            let block = p.columns(start, k).into_owned();
            let proj = block.transpose() * second * &block;
            let eig = SymmetricEigen::new(proj);
            let rotated = &block * eig.eigenvectors;
            p.columns_mut(start, k).copy_from(&rotated);
        }
        start = end;
    }
    p
}

fn offdiag_defect(m2: &CMatrix, p: &Matrix4<f64>) -> f64 {
    let pc = CMatrix::from_fn(4, 4, |i, j| c(p[(i, j)], 0.0));
    let d = pc.transpose() * m2 * &pc;
    let mut off = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                off += d[(i, j)].norm_sqr();
            }
        }
    }
    off.sqrt()
}

/// Real orthogonal `P` (det +1) with `P^T M2 P` diagonal.
fn diagonalize_symmetric_unitary(m2: &CMatrix) -> Result<Matrix4<f64>> {
    let re = Matrix4::from_fn(|i, j| m2[(i, j)].re);
    let im = Matrix4::from_fn(|i, j| m2[(i, j)].im);
    let mut candidates = vec![simultaneous_diag(&re, &im), simultaneous_diag(&im, &re)];
    // Generic combinations split any remaining accidental degeneracy.
    for (a, b) in [
        (1.260_206_611_224_938_8, 0.223_178_490_467_220_27),
        (0.3, 1.7),
        (-0.8, 0.65),
    ] {
        let mix = re * a + im * b;
        candidates.push(simultaneous_diag(&mix, &re));
    }
    let mut best: Option<(f64, Matrix4<f64>)> = None;
    for p in candidates {
        let defect = offdiag_defect(m2, &p);
        if best.as_ref().is_none_or(|(d, _)| defect < *d) {
            best = Some((defect, p));
        }
        if defect < 1e-13 {
            break;
        }
    }
    let (defect, mut p) = best.expect("at least one candidate");
    if defect > 1e-9 {
        return Err(Error::Numerical(format!(
            "failed to diagonalise M^T M (off-diagonal {defect:.3e})"
        )));
    }
    if p.determinant() < 0.0 {
        let mut col = p.column_mut(3);
        col *= -1.0;
    }
    Ok(p)
}

fn wrap_angle(x: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let y = x.rem_euclid(two_pi);
    if y > std::f64::consts::PI {
        y - two_pi
    } else {
        y
    }
}

/// KAK decomposition of a 4×4 unitary with canonical parameters in the
/// region `π/4 ≥ c1 ≥ c2 ≥ |c3|`.
pub fn kak_decompose(unitary: &UnitaryOp) -> Result<KakResult> {
    if unitary.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: unitary.dim(),
        });
    }
    let u = unitary.matrix();
    let phase0 = det4(u).arg() / 4.0;
    let su = u * C64::from_polar(1.0, -phase0);

    let q = magic_basis();
    let m = q.adjoint() * &su * &q;
    let m2 = m.transpose() * &m;
    let p = diagonalize_symmetric_unitary(&m2)?;
    let pc = CMatrix::from_fn(4, 4, |i, j| c(p[(i, j)], 0.0));
    let d = pc.transpose() * &m2 * &pc;

    let mut half: [f64; 4] = [0, 1, 2, 3].map(|k| d[(k, k)].arg() / 2.0);
    if wrap_angle(half.iter().sum::<f64>()).abs() > std::f64::consts::FRAC_PI_2 {
        half[3] += std::f64::consts::PI;
    }
    let inv_sqrt_d = CMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            C64::from_polar(1.0, -half[i])
        } else {
            c(0.0, 0.0)
        }
    });
    let k1 = &m * &pc * inv_sqrt_d;

    // Magic-basis phases (B10, B11, B00, B01) back to coefficients.
    let raw = CanonicalParams::new(
        -(half[0] + half[2]) / 2.0,
        -(half[1] + half[2]) / 2.0,
        -(half[0] + half[1]) / 2.0,
    );

    let l1 = &q * k1 * q.adjoint();
    let l2 = &q * pc.transpose() * q.adjoint();
    let (l1a, l1b, _) = factor_local_product(&l1)?;
    let (l2a, l2b, _) = factor_local_product(&l2)?;

    let red = weyl_reduce(&raw);
    let compose = |x: &UnitaryOp, y: &UnitaryOp| x.compose(y).expect("2x2 factors");
    let u_a = compose(&l1a, &red.left_a.adjoint());
    let v_b = compose(&l1b, &red.left_b.adjoint());
    let u_t = compose(&red.right_a.adjoint(), &l2a);
    let v_t = compose(&red.right_b.adjoint(), &l2b);

    let mut result = KakResult {
        u: u_a,
        v: v_b,
        u_tilde: u_t,
        v_tilde: v_t,
        params: red.params,
        global_phase: 0.0,
        residual: f64::INFINITY,
    };
    let recon = result.reassemble();
    result.global_phase = (recon.adjoint() * u).trace().arg();
    result.residual = dist_up_to_global_phase(u, &recon)?;
    if result.residual.is_nan() || result.residual > KAK_RESIDUAL_TOL {
        return Err(Error::Numerical(format!(
            "KAK reassembly residual {:.3e} exceeds {KAK_RESIDUAL_TOL:e}",
            result.residual
        )));
    }
    Ok(result)
}

/// True iff both unitaries share canonical parameters within 1e-8.
pub fn lu_equivalent(a: &UnitaryOp, b: &UnitaryOp) -> Result<bool> {
    let pa = kak_decompose(a)?.params;
    let pb = kak_decompose(b)?.params;
    Ok(pa.max_abs_diff(&pb) <= LU_EQUIV_TOL)
}
