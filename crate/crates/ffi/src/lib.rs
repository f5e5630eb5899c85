//! C ABI for `qcat`.
//!
//! Objects are exposed as opaque handles created by `*_new`/`*_decompose`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`QcatStatus`]; on failure [`qcat_last_error`] describes what
//! went wrong on the calling thread.
//!
//! Complex arrays are interleaved `re, im` pairs in row-major order.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qcat::canonical::{kak_decompose, lu_equivalent, u_s, CanonicalParams, KakResult};
use qcat::catalysis::verify_catalysis;
use qcat::hamsim::{classify_simulation, HamParams, VerdictKind};
use qcat::monotone::nogo_search;
use qcat::tensor::{schmidt_probs, CMatrix, CVector, Cut, PureState, UnitaryOp, C64};
use qcat::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotUnitary = 3,
    NotNormalForm = 4,
    Precondition = 5,
    Numerical = 6,
    Panic = 7,
}

/// A unitary matrix whose dimension is a power of two.
pub struct QcatUnitary(UnitaryOp);

/// The result of a two-qubit canonical decomposition.
pub struct QcatKak(KakResult);

/// A normalised pure state on labelled qubits.
pub struct QcatState(PureState);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcatParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Which local factor of a decomposition `e^{iγ} (u⊗v) U_s (ũ⊗ṽ)` to fetch.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcatLocal {
    U = 0,
    V = 1,
    UTilde = 2,
    VTilde = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcatCatalysisReport {
    pub max_state_residual: f64,
    pub min_catalyst_fidelity: f64,
    pub trials: usize,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcatVerdictKind {
    LoccSimulable = 0,
    CatalyticSimulable = 1,
    Forbidden = 2,
    Undecided = 3,
}

/// Classification result. `c4_lo`/`c4_hi` are meaningful only when
/// `has_c4_interval` is true.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcatVerdict {
    pub kind: QcatVerdictKind,
    pub has_c4_interval: bool,
    pub c4_lo: f64,
    pub c4_hi: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcatNogoReport {
    pub min_over_xy_of_max_overlap: f64,
    pub bound: f64,
    pub samples: usize,
    pub bound_holds: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QcatStatus {
    match e {
        Error::NotUnitary(_) => QcatStatus::NotUnitary,
        Error::NotNormalForm(..) => QcatStatus::NotNormalForm,
        Error::Precondition(_) | Error::InvalidMixture(_) => QcatStatus::Precondition,
        Error::Numerical(_) => QcatStatus::Numerical,
        _ => QcatStatus::InvalidArgument,
    }
}

struct Fail(QcatStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QcatStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> QcatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            QcatStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            QcatStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn complex_slice<'a>(data: *const f64, n: usize) -> Result<&'a [f64], Fail> {
    if data.is_null() {
        return Err(null("data"));
    }
    Ok(std::slice::from_raw_parts(data, 2 * n))
}

fn params(p: QcatParams) -> CanonicalParams {
    CanonicalParams::new(p.c1, p.c2, p.c3)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qcat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next `qcat_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a unitary from `2 * dim * dim` interleaved doubles.
#[no_mangle]
pub unsafe extern "C" fn qcat_unitary_new(dim: usize, data: *const f64, out: *mut *mut QcatUnitary) -> QcatStatus {
    guard(|| {
        let n = dim
            .checked_mul(dim)
            .ok_or_else(|| Fail(QcatStatus::InvalidArgument, "dimension overflow".into()))?;
        let raw = complex_slice(data, n)?;
        let m = CMatrix::from_fn(dim, dim, |i, j| {
            let k = 2 * (i * dim + j);
            C64::new(raw[k], raw[k + 1])
        });
        let u = UnitaryOp::new(m)?;
        write_handle(out, QcatUnitary(u))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_unitary_free(u: *mut QcatUnitary) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Dimension of `u`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn qcat_unitary_dim(u: *const QcatUnitary) -> usize {
    u.as_ref().map_or(0, |u| u.0.dim())
}

/// Copies the interleaved entries of `u` into `out`, which must hold `len`
/// doubles with `len >= 2 * dim * dim`.
#[no_mangle]
pub unsafe extern "C" fn qcat_unitary_entries(u: *const QcatUnitary, out: *mut f64, len: usize) -> QcatStatus {
    guard(|| {
        let u = deref(u, "unitary")?;
        let d = u.0.dim();
        if out.is_null() {
            return Err(null("output buffer"));
        }
        if len < 2 * d * d {
            return Err(Fail(
                QcatStatus::InvalidArgument,
                format!("buffer holds {len} doubles, need {}", 2 * d * d),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(out, 2 * d * d);
        let m = u.0.matrix();
        for i in 0..d {
            for j in 0..d {
                dst[2 * (i * d + j)] = m[(i, j)].re;
                dst[2 * (i * d + j) + 1] = m[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// `U_s(c1, c2, c3) = exp(-i Σ c_k σ_k⊗σ_k)`.
#[no_mangle]
pub unsafe extern "C" fn qcat_u_s(p: QcatParams, out: *mut *mut QcatUnitary) -> QcatStatus {
    guard(|| {
        let cp = params(p);
        if !cp.is_finite() {
            return Err(Error::NonFinite("coefficients").into());
        }
        write_handle(out, QcatUnitary(u_s(&cp)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_kak_decompose(u: *const QcatUnitary, out: *mut *mut QcatKak) -> QcatStatus {
    guard(|| {
        let k = kak_decompose(&deref(u, "unitary")?.0)?;
        write_handle(out, QcatKak(k))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_kak_free(k: *mut QcatKak) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

#[no_mangle]
pub unsafe extern "C" fn qcat_kak_params(k: *const QcatKak, out: *mut QcatParams) -> QcatStatus {
    guard(|| {
        let p = deref(k, "decomposition")?.0.params;
        write_out(
            out,
            QcatParams {
                c1: p.c1,
                c2: p.c2,
                c3: p.c3,
            },
        )
    })
}

/// Reassembly residual, or NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn qcat_kak_residual(k: *const QcatKak) -> f64 {
    k.as_ref().map_or(f64::NAN, |k| k.0.residual)
}

/// Global phase `γ`, or NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn qcat_kak_global_phase(k: *const QcatKak) -> f64 {
    k.as_ref().map_or(f64::NAN, |k| k.0.global_phase)
}

/// Copies one 2×2 local factor into a new unitary handle.
#[no_mangle]
pub unsafe extern "C" fn qcat_kak_local(k: *const QcatKak, which: QcatLocal, out: *mut *mut QcatUnitary) -> QcatStatus {
    guard(|| {
        let k = &deref(k, "decomposition")?.0;
        let op = match which {
            QcatLocal::U => &k.u,
            QcatLocal::V => &k.v,
            QcatLocal::UTilde => &k.u_tilde,
            QcatLocal::VTilde => &k.v_tilde,
        };
        write_handle(out, QcatUnitary(op.clone()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_lu_equivalent(
    a: *const QcatUnitary,
    b: *const QcatUnitary,
    out: *mut bool,
) -> QcatStatus {
    guard(|| {
        let r = lu_equivalent(&deref(a, "first unitary")?.0, &deref(b, "second unitary")?.0)?;
        write_out(out, r)
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_verify_catalysis(
    p: QcatParams,
    trials: usize,
    seed: u64,
    out: *mut QcatCatalysisReport,
) -> QcatStatus {
    guard(|| {
        let r = verify_catalysis(&params(p), trials, seed)?;
        write_out(
            out,
            QcatCatalysisReport {
                max_state_residual: r.max_state_residual,
                min_catalyst_fidelity: r.min_catalyst_fidelity,
                trials: r.trials,
                seed: r.seed,
            },
        )
    })
}

/// Classifies whether `source` can simulate `target`. Both must satisfy
/// `c1 >= c2 >= |c3|`.
#[no_mangle]
pub unsafe extern "C" fn qcat_classify_simulation(
    source: QcatParams,
    target: QcatParams,
    out: *mut QcatVerdict,
) -> QcatStatus {
    guard(|| {
        let h = HamParams::new(source.c1, source.c2, source.c3)?;
        let t = HamParams::new(target.c1, target.c2, target.c3)?;
        let v = classify_simulation(&h, &t);
        let kind = match v.kind {
            VerdictKind::LoccSimulable => QcatVerdictKind::LoccSimulable,
            VerdictKind::CatalyticSimulable => QcatVerdictKind::CatalyticSimulable,
            VerdictKind::Forbidden => QcatVerdictKind::Forbidden,
            VerdictKind::Undecided => QcatVerdictKind::Undecided,
        };
        let interval = v.witness.c4_feasibility.interval;
        write_out(
            out,
            QcatVerdict {
                kind,
                has_c4_interval: interval.is_some(),
                c4_lo: interval.map_or(f64::NAN, |i| i.lo),
                c4_hi: interval.map_or(f64::NAN, |i| i.hi),
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_nogo_search(
    c1: f64,
    c2: f64,
    budget: usize,
    seed: u64,
    out: *mut QcatNogoReport,
) -> QcatStatus {
    guard(|| {
        let r = nogo_search(c1, c2, budget, seed)?;
        write_out(
            out,
            QcatNogoReport {
                min_over_xy_of_max_overlap: r.min_over_xy_of_max_overlap,
                bound: r.bound,
                samples: r.samples,
                bound_holds: r.bound_holds,
            },
        )
    })
}

/// Builds a state on `n_qubits` labelled qubits from `2 << n_qubits`
/// interleaved doubles in big-endian basis order.
#[no_mangle]
pub unsafe extern "C" fn qcat_state_new(
    n_qubits: usize,
    labels: *const *const c_char,
    amplitudes: *const f64,
    out: *mut *mut QcatState,
) -> QcatStatus {
    guard(|| {
        if n_qubits >= usize::BITS as usize / 2 {
            return Err(Fail(
                QcatStatus::InvalidArgument,
                format!("{n_qubits} qubits is too many"),
            ));
        }
        if labels.is_null() {
            return Err(null("labels"));
        }
        let mut names = Vec::with_capacity(n_qubits);
        for k in 0..n_qubits {
            let p = *labels.add(k);
            if p.is_null() {
                return Err(null("label"));
            }
            let s = CStr::from_ptr(p)
                .to_str()
                .map_err(|_| Fail(QcatStatus::InvalidArgument, "labels must be UTF-8".into()))?;
            names.push(s.to_string());
        }
        let d = 1usize << n_qubits;
        let raw = complex_slice(amplitudes, d)?;
        let v = CVector::from_fn(d, |i, _| C64::new(raw[2 * i], raw[2 * i + 1]));
        let s = PureState::new(&names, v)?;
        write_handle(out, QcatState(s))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qcat_state_free(s: *mut QcatState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Largest squared Schmidt coefficient across the cut that puts qubit `k`
/// (in register order) on the left when bit `k` of `left_mask` is set.
#[no_mangle]
pub unsafe extern "C" fn qcat_max_schmidt_prob(s: *const QcatState, left_mask: u64, out: *mut f64) -> QcatStatus {
    guard(|| {
        let s = &deref(s, "state")?.0;
        let labels = s.labels();
        if labels.len() < 64 && left_mask >> labels.len() != 0 {
            return Err(Fail(
                QcatStatus::InvalidArgument,
                format!(
                    "mask {left_mask:#x} names qubits beyond the {} in the register",
                    labels.len()
                ),
            ));
        }
        let (left, right): (Vec<_>, Vec<_>) = labels.iter().enumerate().partition(|(k, _)| left_mask >> k & 1 == 1);
        let names = |v: Vec<(usize, &String)>| v.into_iter().map(|(_, l)| l.clone()).collect::<Vec<_>>();
        let cut = Cut::new(&names(left), &names(right));
        write_out(out, schmidt_probs(s, &cut)?[0])
    })
}
