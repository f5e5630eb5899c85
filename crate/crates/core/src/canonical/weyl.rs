//! Reduction of an arbitrary coefficient triple into the region
//! `π/4 ≥ c1 ≥ c2 ≥ |c3|` by local moves that preserve `U_s` up to phase.
//!
//! Three moves are used, all realised by single-qubit Cliffords:
//!
//! - shift `c_k` by a multiple of `π/2`, absorbing `(σ_k⊗σ_k)^m` on the right;
//! - flip the sign of the two coefficients other than `c_l` by conjugating
//!   with `σ_l ⊗ 1`;
//! - swap two coefficients by conjugating with `S⊗S`, `S = (σ_j + σ_k)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use super::CanonicalParams;
use crate::tensor::{c, sigma, CMatrix, UnitaryOp};

/// Boundary tolerance used for the `c3 ≥ 0` tie-break.
const TIE_TOL: f64 = 1e-9;

/// Result of [`weyl_reduce`]:
/// `(left_a ⊗ left_b) · U_s(raw) · (right_a ⊗ right_b) = e^{i phase} · U_s(params)`.
#[derive(Clone, Debug)]
pub struct WeylReduction {
    pub params: CanonicalParams,
    pub left_a: UnitaryOp,
    pub left_b: UnitaryOp,
    pub right_a: UnitaryOp,
    pub right_b: UnitaryOp,
    pub phase: f64,
}

impl WeylReduction {
    pub fn left(&self) -> UnitaryOp {
        self.left_a.tensor(&self.left_b)
    }

    pub fn right(&self) -> UnitaryOp {
        self.right_a.tensor(&self.right_b)
    }
}

struct Tracker {
    c: [f64; 3],
    la: CMatrix,
    lb: CMatrix,
    ra: CMatrix,
    rb: CMatrix,
    phase: f64,
}

impl Tracker {
    /// `c[k] -= m π/2`.
    fn shift(&mut self, k: usize, m: i64) {
        if m == 0 {
            return;
        }
        self.c[k] -= m as f64 * FRAC_PI_2;
        if m.rem_euclid(2) == 1 {
            let s = sigma(k + 1);
            self.ra = &self.ra * &s;
            self.rb = &self.rb * &s;
        }
        self.phase -= m as f64 * FRAC_PI_2;
    }

    /// Negates every coefficient except `c[keep]`.
    fn flip_pair(&mut self, keep: usize) {
        let s = sigma(keep + 1);
        self.la = &s * &self.la;
        self.ra = &self.ra * &s;
        for k in 0..3 {
            if k != keep {
                self.c[k] = -self.c[k];
            }
        }
    }

    fn swap(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        let s = (sigma(j + 1) + sigma(k + 1)) * c(FRAC_1_SQRT_2, 0.0);
        // S is Hermitian and unitary, so S^dag = S.
        self.la = &s * &self.la;
        self.lb = &s * &self.lb;
        self.ra = &self.ra * &s;
        self.rb = &self.rb * &s;
        self.c.swap(j, k);
    }
}

/// Moves `raw` into the canonical region, returning the local corrections.
///
/// When both signs of `c3` are admissible (on the `c1 = π/4` face, or with
/// `c2 = 0`) the result has `c3 ≥ 0`.
pub fn weyl_reduce(raw: &CanonicalParams) -> WeylReduction {
    let id = CMatrix::identity(2, 2);
    let mut t = Tracker {
        c: raw.as_array(),
        la: id.clone(),
        lb: id.clone(),
        ra: id.clone(),
        rb: id,
        phase: 0.0,
    };

    // Each coefficient into [-π/4, π/4].
    for k in 0..3 {
        let m = (t.c[k] / FRAC_PI_2).round() as i64;
        t.shift(k, m);
    }

    // Order by magnitude, largest first.
    for _ in 0..2 {
        for k in 0..2 {
            if t.c[k].abs() < t.c[k + 1].abs() {
                t.swap(k, k + 1);
            }
        }
    }

    // Make c1, c2 non-negative; the sign defect lands on c3.
    match (t.c[0] < 0.0, t.c[1] < 0.0) {
        (true, true) => t.flip_pair(2),
        (true, false) => t.flip_pair(1),
        (false, true) => t.flip_pair(0),
        (false, false) => {}
    }

    if t.c[2] < 0.0 {
        if (t.c[0] - FRAC_PI_4).abs() <= TIE_TOL {
            // (π/4, c2, c3) ~ (-π/4, c2, c3) ~ (π/4, c2, -c3)
            t.shift(0, 1);
            t.flip_pair(1);
        } else if t.c[1].abs() <= TIE_TOL {
            t.flip_pair(0);
        }
    }

    WeylReduction {
        params: CanonicalParams::from_array(t.c),
        left_a: UnitaryOp::from_matrix_unchecked(t.la),
        left_b: UnitaryOp::from_matrix_unchecked(t.lb),
        right_a: UnitaryOp::from_matrix_unchecked(t.ra),
        right_b: UnitaryOp::from_matrix_unchecked(t.rb),
        phase: t.phase,
    }
}

/// `||L U_s(raw) R - e^{i phase} U_s(params)||_F`.
pub fn reduction_residual(raw: &CanonicalParams, red: &WeylReduction) -> f64 {
    let lhs = red.left().matrix() * super::u_s(raw).matrix() * red.right().matrix();
    let rhs = super::u_s(&red.params).matrix() * crate::tensor::C64::from_polar(1.0, red.phase);
    (lhs - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(raw: CanonicalParams) -> WeylReduction {
        let red = weyl_reduce(&raw);
        let r = reduction_residual(&raw, &red);
        assert!(r <= 1e-10, "{raw} -> {}: residual {r}", red.params);
        assert!(red.params.in_region(1e-10), "{raw} -> {} not in region", red.params);
        red
    }

    #[test]
    fn canonical_input_untouched() {
        let red = check(CanonicalParams::new(0.3, 0.2, 0.1));
        assert_eq!(red.params, CanonicalParams::new(0.3, 0.2, 0.1));
        assert_eq!(red.left(), UnitaryOp::identity(2));
        assert_eq!(red.right(), UnitaryOp::identity(2));
        assert_eq!(red.phase, 0.0);
    }

    #[test]
    fn permuted_input() {
        let red = check(CanonicalParams::new(0.1, 0.3, 0.2));
        assert!(red.params.max_abs_diff(&CanonicalParams::new(0.3, 0.2, 0.1)) < 1e-15);
    }

    #[test]
    fn negative_middle() {
        let red = check(CanonicalParams::new(0.3, -0.2, 0.1));
        assert!(red.params.max_abs_diff(&CanonicalParams::new(0.3, 0.2, -0.1)) < 1e-15);
    }

    #[test]
    fn boundary_face_prefers_positive_c3() {
        let red = check(CanonicalParams::new(FRAC_PI_4, 0.2, -0.1));
        assert!(red.params.max_abs_diff(&CanonicalParams::new(FRAC_PI_4, 0.2, 0.1)) < 1e-14);
        let red = check(CanonicalParams::new(-FRAC_PI_4, -FRAC_PI_4, -FRAC_PI_4));
        assert!(
            red.params
                .max_abs_diff(&CanonicalParams::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4))
                < 1e-14
        );
    }

    #[test]
    fn large_shifts() {
        check(CanonicalParams::new(7.0, -3.3, 12.1));
        let red = check(CanonicalParams::new(FRAC_PI_2 + 0.3, 0.0, 0.0));
        assert!(red.params.max_abs_diff(&CanonicalParams::new(0.3, 0.0, 0.0)) < 1e-14);
    }

    proptest! {
        #[test]
        fn any_triple_reduces(c1 in -10.0f64..10.0, c2 in -10.0f64..10.0, c3 in -10.0f64..10.0) {
            check(CanonicalParams::new(c1, c2, c3));
        }
    }
}
