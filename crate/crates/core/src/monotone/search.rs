//! Numerical search for local unitaries that push every overlap down.

use serde::Serialize;

use super::{check_overlap_params, nelder_mead, overlap, overlap_bound};
use crate::canonical::CanonicalParams;
use crate::error::{Error, Result};
use crate::io::MatrixFile;
use crate::tensor::{c, expm, haar_unitary_from, kron, seeded_rng, sigma, CMatrix, UnitaryOp};

const SEARCH_STREAM: u64 = 0x6060;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NogoParams {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NogoReport {
    pub params: NogoParams,
    pub samples: usize,
    pub min_over_xy_of_max_overlap: f64,
    pub bound: f64,
    pub bound_holds: bool,
    pub witness_unitaries: [MatrixFile; 2],
    pub seed: u64,
}

/// `max_{i,j} overlap(params, x, y, i, j)`.
pub fn max_overlap(params: &CanonicalParams, x: &UnitaryOp, y: &UnitaryOp) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for i in 0..2 {
        for j in 0..2 {
            best = best.max(overlap(params, x, y, i, j)?);
        }
    }
    Ok(best)
}

fn pauli_generators() -> Vec<CMatrix> {
    let mut g = Vec::with_capacity(16);
    for j in 1..=4 {
        for k in 1..=4 {
            g.push(kron(&sigma(j), &sigma(k)));
        }
    }
    g
}

fn local_move(base: &UnitaryOp, theta: &[f64], gens: &[CMatrix]) -> UnitaryOp {
    let mut h = CMatrix::zeros(4, 4);
    for (t, g) in theta.iter().zip(gens) {
        h += g * c(0.0, *t);
    }
    UnitaryOp::from_matrix_unchecked(base.matrix() * expm(&h))
}

/// Minimises `max_{i,j} overlap` over `(x, y)` using `budget` objective
/// evaluations: the identity pair, then Haar samples (a quarter of the
/// budget in total), then Nelder-Mead around the best sample.
pub fn nogo_search(c1: f64, c2: f64, budget: usize, seed: u64) -> Result<NogoReport> {
    check_overlap_params(c1, c2, 0.0)?;
    if budget == 0 {
        return Err(Error::Precondition("nogo search needs a budget of at least 1".into()));
    }
    let params = CanonicalParams::new(c1, c2, 0.0);
    let mut rng = seeded_rng(seed, SEARCH_STREAM);

    let n_samples = (budget / 4).max(1);
    let mut best_x = UnitaryOp::identity(2);
    let mut best_y = UnitaryOp::identity(2);
    let mut best = max_overlap(&params, &best_x, &best_y)?;
    for _ in 1..n_samples {
        let x = haar_unitary_from(&mut rng, 4)?;
        let y = haar_unitary_from(&mut rng, 4)?;
        let v = max_overlap(&params, &x, &y)?;
        if v < best {
            best = v;
            best_x = x;
            best_y = y;
        }
    }

    let remaining = budget - n_samples;
    if remaining > 0 {
        let gens = pauli_generators();
        let mut failure = None;
        let objective = |theta: &[f64]| -> f64 {
            let x = local_move(&best_x, &theta[..16], &gens);
            let y = local_move(&best_y, &theta[16..], &gens);
            match max_overlap(&params, &x, &y) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            }
        };
        let r = nelder_mead(objective, &[0.0; 32], 0.2, remaining, 1e-14);
        if let Some(e) = failure {
            return Err(e);
        }
        if r.f < best {
            let gens = pauli_generators();
            let x = local_move(&best_x, &r.x[..16], &gens);
            let y = local_move(&best_y, &r.x[16..], &gens);
            best = r.f;
            best_x = x;
            best_y = y;
        }
    }

    let bound = overlap_bound(c1, c2);
    Ok(NogoReport {
        params: NogoParams { c1, c2 },
        samples: budget,
        min_over_xy_of_max_overlap: best,
        bound,
        bound_holds: best >= bound - 1e-9,
        witness_unitaries: [
            MatrixFile::from_matrix(best_x.matrix()),
            MatrixFile::from_matrix(best_y.matrix()),
        ],
        seed,
    })
}
