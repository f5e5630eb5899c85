//! The acceptance battery behind `qcat suite`.
//!
//! Every criterion is a pure function of the seed, so the rendered report is
//! byte-identical across runs. Wall-clock times are kept out of the report.

use std::f64::consts::FRAC_PI_4;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::canonical::{
    bell_eigenphase, bell_vector, interaction_hamiltonian, kak_decompose, u_s, BellLabel, CanonicalParams, REGION_TOL,
};
use crate::catalysis::verify_catalysis;
use crate::error::Result;
use crate::hamsim::{
    classify_simulation, h_coefficient, mixture_spectrum_bounds, pauli_twirl, random_mixture, random_normal_form,
    HamParams, VerdictKind,
};
use crate::monotone::{max_schmidt_prob, overlap, overlap_bound, simplex_min, BellWeights};
use crate::tensor::{
    c, expm, frobenius_norm, haar_unitary_from, random_state_from, seeded_rng, Cut, PureState, UnitaryOp, C64,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// One line per criterion plus a summary line.
    pub fn render(&self) -> String {
        let mut out = format!("qcat acceptance suite, seed {}\n", self.seed);
        for c in &self.criteria {
            out.push_str(&c.line());
            out.push('\n');
        }
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{passed}/{} criteria passed\n", self.criteria.len()));
        out
    }
}

/// A criterion body returns `(passed, detail)`.
fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; exceeded the {} s time limit", limit.as_secs()));
        }
    }
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

pub const CATALYSIS_TRIPLES: usize = 200;
pub const CATALYSIS_STATES: usize = 20;

/// Region triples for the catalysis check: boundary cases, a coarse grid,
/// then uniform samples.
pub fn catalysis_triples(seed: u64) -> Vec<CanonicalParams> {
    let q = FRAC_PI_4;
    let mut out = vec![
        CanonicalParams::new(0.0, 0.0, 0.0),
        CanonicalParams::new(q, 0.0, 0.0),
        CanonicalParams::new(q, q, 0.0),
        CanonicalParams::new(q, q, q),
        CanonicalParams::new(q, 0.3, 0.1),
        CanonicalParams::new(0.3, 0.3, 0.3),
        CanonicalParams::new(0.3, 0.3, -0.3),
        CanonicalParams::new(0.3, 0.3, 0.0),
        CanonicalParams::new(0.3, 0.2, 0.1),
        CanonicalParams::new(0.3, 0.2, -0.1),
        CanonicalParams::new(0.3, 0.2, 0.0),
        CanonicalParams::new(0.5, 0.0, 0.0),
    ];
    for a in 1..=5 {
        for b in 0..=a {
            for s in [-1.0, 0.0, 1.0] {
                let c1 = q * a as f64 / 5.0;
                let c2 = q * b as f64 / 5.0;
                out.push(CanonicalParams::new(c1, c2, s * c2 / 2.0));
            }
        }
    }
    let mut rng = seeded_rng(seed, 0xC1);
    while out.len() < CATALYSIS_TRIPLES {
        let c1 = rng.random::<f64>() * q;
        let c2 = rng.random::<f64>() * c1;
        let c3 = (2.0 * rng.random::<f64>() - 1.0) * c2;
        out.push(CanonicalParams::new(c1, c2, c3));
    }
    out.truncate(CATALYSIS_TRIPLES);
    out
}

pub fn criterion_catalysis(seed: u64) -> CriterionOutcome {
    timed(1, "catalysis identity", Some(Duration::from_secs(30)), || {
        let triples = catalysis_triples(seed);
        let mut worst_res = 0.0f64;
        let mut worst_fid = 1.0f64;
        for (k, p) in triples.iter().enumerate() {
            let r = verify_catalysis(p, CATALYSIS_STATES, seed.wrapping_add(k as u64))?;
            worst_res = worst_res.max(r.max_state_residual);
            worst_fid = worst_fid.min(r.min_catalyst_fidelity);
        }
        let in_region = triples.iter().all(|p| p.in_region(REGION_TOL));
        Ok((
            in_region && worst_res <= 1e-12 && worst_fid >= 1.0 - 1e-12,
            format!(
                "{} triples x {} states, max residual {:.3e}, min catalyst fidelity 1 - {:.3e}",
                triples.len(),
                CATALYSIS_STATES,
                worst_res,
                1.0 - worst_fid
            ),
        ))
    })
}

pub fn criterion_bell_spectrum(seed: u64) -> CriterionOutcome {
    timed(2, "Bell spectrum of U_s", None, || {
        let mut rng = seeded_rng(seed, 0xC2);
        let mut worst_matrix = 0.0f64;
        let mut worst_phase = 0.0f64;
        for _ in 0..100 {
            let p = CanonicalParams::new(
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
            );
            let dense = expm(&(interaction_hamiltonian(&p) * c(0.0, -1.0)));
            worst_matrix = worst_matrix.max(frobenius_norm(&(u_s(&p).matrix() - &dense)));
            for label in BellLabel::ALL {
                let b = bell_vector(label);
                let got: C64 = b.dotc(&(&dense * &b));
                let want = C64::from_polar(1.0, bell_eigenphase(&p, label));
                worst_phase = worst_phase.max((got - want).norm());
            }
        }
        Ok((
            worst_matrix <= 1e-12 && worst_phase <= 1e-12,
            format!(
                "100 triples, max |U_s - expm| {:.3e}, max eigenphase deviation {:.3e}",
                worst_matrix, worst_phase
            ),
        ))
    })
}

pub fn criterion_kak(seed: u64) -> CriterionOutcome {
    timed(3, "canonical decomposition", Some(Duration::from_secs(60)), || {
        let mut rng = seeded_rng(seed, 0xC3);
        let mut worst = 0.0f64;
        let mut outside = 0usize;
        for _ in 0..1000 {
            let u = haar_unitary_from(&mut rng, 4)?;
            let k = kak_decompose(&u)?;
            worst = worst.max(k.residual);
            if !k.params.in_region(REGION_TOL) {
                outside += 1;
            }
        }
        let cnot = UnitaryOp::permutation(2, |j| if j >= 2 { j ^ 1 } else { j })?;
        let swap = UnitaryOp::permutation(2, |j| ((j & 1) << 1) | (j >> 1))?;
        let known = [
            (cnot, CanonicalParams::new(FRAC_PI_4, 0.0, 0.0)),
            (swap, CanonicalParams::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4)),
            (
                u_s(&CanonicalParams::new(0.3, 0.2, 0.1)),
                CanonicalParams::new(0.3, 0.2, 0.1),
            ),
        ];
        let mut worst_known = 0.0f64;
        for (u, want) in &known {
            let k = kak_decompose(u)?;
            worst = worst.max(k.residual);
            worst_known = worst_known.max(k.params.max_abs_diff(want));
        }
        Ok((
            worst <= 1e-9 && outside == 0 && worst_known <= 1e-9,
            format!(
                "1000 Haar unitaries, max residual {:.3e}, {} outside region; CNOT/SWAP/U_s max deviation {:.3e}",
                worst, outside, worst_known
            ),
        ))
    })
}

pub fn criterion_monotone(_seed: u64) -> CriterionOutcome {
    timed(4, "monotone values", None, || {
        let (c1, c2) = (0.3, 0.2);
        let cut = Cut::parse("A,a|B,b")?;
        let target = u_s(&CanonicalParams::new(c1 + c2, 0.0, 0.0));
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let s = PureState::basis(&["A", "B", "a", "b"], (2 * i + j) << 2)?.apply(&target, &["A", "B"])?;
                worst = worst.max((max_schmidt_prob(&s, &cut)? - overlap_bound(c1, c2)).abs());
            }
        }
        Ok((
            worst <= 1e-12,
            format!(
                "P = cos^2(c1+c2) at (0.3, 0.2) for all (i, j), max deviation {:.3e}",
                worst
            ),
        ))
    })
}

/// Parameter points `(c1, c2)` for the overlap inequality.
pub const OVERLAP_POINTS: [(f64, f64); 10] = [
    (0.3, 0.2),
    (0.1, 0.1),
    (0.2, 0.05),
    (0.39, 0.39),
    (0.5, 0.2),
    (0.7, 0.08),
    (0.45, 0.3),
    (0.25, 0.25),
    (0.6, 0.1),
    (0.05, 0.01),
];

pub fn criterion_overlap(seed: u64) -> CriterionOutcome {
    timed(5, "overlap inequality", None, || {
        let mut rng = seeded_rng(seed, 0xC5);
        let mut worst_gap = f64::INFINITY;
        let mut worst_min = 0.0f64;
        let mut worst_arg = 0.0f64;
        let equality = BellWeights::new(0.5, 0.0, 0.5, 0.0)?;
        for &(c1, c2) in &OVERLAP_POINTS {
            let params = CanonicalParams::new(c1, c2, 0.0);
            let bound = overlap_bound(c1, c2);
            for _ in 0..1000 {
                let x = haar_unitary_from(&mut rng, 4)?;
                let y = haar_unitary_from(&mut rng, 4)?;
                let i = rng.random_range(0..2);
                let j = rng.random_range(0..2);
                worst_gap = worst_gap.min(overlap(&params, &x, &y, i, j)? - bound);
            }
            let (v, w) = simplex_min(c1, c2)?;
            worst_min = worst_min.max((v - bound).abs());
            worst_arg = worst_arg.max(w.max_abs_diff(&equality));
        }
        Ok((
            worst_gap >= -1e-12 && worst_min <= 1e-9 && worst_arg <= 1e-4,
            format!(
                "10^4 samples at 10 points, min(overlap - bound) {:.3e}; simplex minimum deviation {:.3e}, argmin deviation {:.3e}",
                worst_gap, worst_min, worst_arg
            ),
        ))
    })
}

pub fn criterion_verdicts(_seed: u64) -> CriterionOutcome {
    timed(6, "partial-order verdicts", None, || {
        let hp = HamParams::new;
        let cases = [
            (hp(0.5, 0.0, 0.0)?, hp(0.3, 0.2, 0.0)?, VerdictKind::LoccSimulable),
            (hp(0.3, 0.2, 0.0)?, hp(0.5, 0.0, 0.0)?, VerdictKind::CatalyticSimulable),
            (hp(0.3, 0.2, 0.1)?, hp(0.6, 0.0, 0.0)?, VerdictKind::Forbidden),
            (hp(0.3, 0.2, 0.1)?, hp(0.3, 0.2, -0.1)?, VerdictKind::Forbidden),
        ];
        let mut ok = true;
        let mut got = Vec::new();
        for (h, t, want) in &cases {
            let v = classify_simulation(h, t);
            let interval_ok = *want != VerdictKind::Forbidden || v.witness.c4_feasibility.interval.is_none();
            ok &= v.kind == *want && interval_ok;
            got.push(v.kind.name());
        }
        Ok((ok, got.join(", ")))
    })
}

pub fn criterion_mixture(seed: u64) -> CriterionOutcome {
    timed(7, "mixture spectrum bound", None, || {
        let mut rng = seeded_rng(seed, 0xC7);
        let mut outside = 0usize;
        for m in 0..1000 {
            let h = random_normal_form(&mut rng, 1.0);
            let anc = (1 + m % 2, 1 + (m / 2) % 2);
            let terms = rng.random_range(1..=5);
            let mix = random_mixture(&mut rng, terms, anc)?;
            if !mixture_spectrum_bounds(&h, &mix, anc)?.within {
                outside += 1;
            }
        }
        let h = HamParams::new(0.3, 0.2, 0.1)?;
        let twirl = mixture_spectrum_bounds(&h, &pauli_twirl(), (0, 0))?;
        let twirl_max = twirl.spectrum.iter().fold(0.0f64, |a, e| a.max(e.abs()));
        Ok((
            outside == 0 && twirl.within && twirl_max <= 1e-12,
            format!(
                "1000 mixtures, {} outside [l4, l1]; Pauli twirl max |eigenvalue| {:.3e}",
                outside, twirl_max
            ),
        ))
    })
}

pub fn criterion_h_coefficient(seed: u64) -> CriterionOutcome {
    timed(8, "h-coefficient bound", None, || {
        let mut rng = seeded_rng(seed, 0xC8);
        let mut worst = f64::NEG_INFINITY;
        for k in 0..10_000 {
            let u = haar_unitary_from(&mut rng, 4)?;
            let v = haar_unitary_from(&mut rng, 4)?;
            let phi0 = random_state_from(&mut rng, &["a", "b"])?;
            worst = worst.max(h_coefficient(&phi0, &u, &v, 1 + k % 3)?);
        }
        let id = UnitaryOp::identity(2);
        let mut id_dev = 0.0f64;
        for n in 1..=3 {
            let phi0 = random_state_from(&mut rng, &["a", "b"])?;
            id_dev = id_dev.max((h_coefficient(&phi0, &id, &id, n)? - 1.0).abs());
        }
        Ok((
            worst <= 1.0 + 1e-10 && id_dev <= 1e-12,
            format!("10^4 samples, max h {:.12}; identity deviation {:.3e}", worst, id_dev),
        ))
    })
}

pub fn run_suite(seed: u64) -> SuiteReport {
    let criteria = vec![
        criterion_catalysis(seed),
        criterion_bell_spectrum(seed),
        criterion_kak(seed),
        criterion_monotone(seed),
        criterion_overlap(seed),
        criterion_verdicts(seed),
        criterion_mixture(seed),
        criterion_h_coefficient(seed),
    ];
    SuiteReport { seed, criteria }
}
