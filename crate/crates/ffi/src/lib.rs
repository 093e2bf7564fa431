//! C ABI for `ptsym`.
//!
//! Every fallible function returns a [`PtsymStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`ptsym_last_error_message`]. Hamiltonians are opaque handles
//! created by [`ptsym_hamiltonian_new`] and released by
//! [`ptsym_hamiltonian_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ptsym::composite::{AliceChoice, BipartiteSystem};
use ptsym::experiments::chsh::{chsh_optimize, chsh_win_probability};
use ptsym::experiments::entanglement::{entanglement_report, Entropy};
use ptsym::experiments::nosignal::{marginal_cpt, marginal_hilbert, Marginal};
use ptsym::experiments::projectors::YOutcome;
use ptsym::linalg::{CMatrix, CVector, C64};
use ptsym::pt::{build_c_spectral, transition_probability, Prescription, PtHamiltonian};
use ptsym::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BrokenPtSymmetry = 3,
    Numerical = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymChoice {
    /// Identity.
    Plus = 0,
    /// σ_x.
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymYOutcome {
    PlusY = 0,
    MinusY = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymPrescription {
    Cpt = 0,
    Hilbert = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtsymComplex {
    pub re: f64,
    pub im: f64,
}

/// Opaque handle to a two-level PT-symmetric Hamiltonian.
pub struct PtsymHamiltonian {
    inner: PtHamiltonian,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PtsymStatus {
    match e {
        Error::BrokenPtSymmetry { .. } => PtsymStatus::BrokenPtSymmetry,
        Error::InvalidParameter(_)
        | Error::InvalidConfig(_)
        | Error::InvalidWeights(_)
        | Error::InvalidDimension { .. }
        | Error::DimensionMismatch { .. }
        | Error::NonFinite(_) => PtsymStatus::InvalidArgument,
        _ => PtsymStatus::Numerical,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (PtsymStatus, String)>) -> PtsymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PtsymStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PtsymStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PtsymStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (PtsymStatus, String) {
    (PtsymStatus::NullPointer, format!("null pointer: {what}"))
}

fn choice(c: PtsymChoice) -> AliceChoice {
    match c {
        PtsymChoice::Plus => AliceChoice::Plus,
        PtsymChoice::Minus => AliceChoice::Minus,
    }
}

fn outcome(o: PtsymYOutcome) -> YOutcome {
    match o {
        PtsymYOutcome::PlusY => YOutcome::PlusY,
        PtsymYOutcome::MinusY => YOutcome::MinusY,
    }
}

fn write_matrix(m: &CMatrix, out: *mut PtsymComplex) {
    for (k, z) in m.entries().iter().enumerate() {
        // SAFETY: callers pass a buffer of rows·cols entries
        unsafe { *out.add(k) = PtsymComplex { re: z.re, im: z.im } };
    }
}

/// # Safety
/// `p` must point to two readable `PtsymComplex`.
unsafe fn read_qubit(p: *const PtsymComplex) -> Result<CVector, (PtsymStatus, String)> {
    let xs = std::slice::from_raw_parts(p, 2);
    CVector::new(xs.iter().map(|z| C64::new(z.re, z.im)).collect()).map_err(lib_err)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ptsym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ptsym_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates `H = s·[[i sin α, 1], [1, −i sin α]]`; requires `s > 0` and `|α| < π/2`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ptsym_hamiltonian_new(s: f64, alpha: f64, out: *mut *mut PtsymHamiltonian) -> PtsymStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let inner = PtHamiltonian::new(s, alpha).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(PtsymHamiltonian { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from [`ptsym_hamiltonian_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ptsym_hamiltonian_free(h: *mut PtsymHamiltonian) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Writes the 2×2 matrix in row-major order.
///
/// # Safety
/// `h` must be a live handle and `out` must hold 4 entries.
#[no_mangle]
pub unsafe extern "C" fn ptsym_hamiltonian_matrix(h: *const PtsymHamiltonian, out: *mut PtsymComplex) -> PtsymStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null_err("h"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        write_matrix(&h.inner.matrix(), out);
        Ok(())
    })
}

/// Writes the C operator, built from the eigenvectors, in row-major order.
///
/// # Safety
/// `h` must be a live handle and `out` must hold 4 entries.
#[no_mangle]
pub unsafe extern "C" fn ptsym_hamiltonian_c_operator(h: *const PtsymHamiltonian, out: *mut PtsymComplex) -> PtsymStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null_err("h"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let c = build_c_spectral(&h.inner.spectrum()).map_err(lib_err)?;
        write_matrix(&c, out);
        Ok(())
    })
}

/// Positive eigenvalue `s cos α` and the period `τ = π / (2 s cos α)`.
///
/// # Safety
/// `h` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_hamiltonian_energy(
    h: *const PtsymHamiltonian,
    out_energy: *mut f64,
    out_tau: *mut f64,
) -> PtsymStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null_err("h"))?;
        if out_energy.is_null() || out_tau.is_null() {
            return Err(null_err("out"));
        }
        *out_energy = h.inner.energy();
        *out_tau = h.inner.tau();
        Ok(())
    })
}

/// CPT transition probability between two qubit states.
///
/// # Safety
/// `h` must be a live handle, `a` and `b` must hold 2 entries each and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_transition_probability(
    h: *const PtsymHamiltonian,
    a: *const PtsymComplex,
    b: *const PtsymComplex,
    out: *mut f64,
) -> PtsymStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null_err("h"))?;
        if a.is_null() || b.is_null() || out.is_null() {
            return Err(null_err("state or out"));
        }
        let (a, b) = (read_qubit(a)?, read_qubit(b)?);
        *out = transition_probability(&a, &b, &h.inner.frame()).map_err(lib_err)?;
        Ok(())
    })
}

/// Bob's σ_y marginal under the Hilbert prescription, one-sided system.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_marginal_hilbert(
    alpha: f64,
    alice: PtsymChoice,
    b: PtsymYOutcome,
    out: *mut f64,
) -> PtsymStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = marginal_hilbert(alpha, choice(alice), outcome(b)).map_err(lib_err)?;
        Ok(())
    })
}

/// CPT marginal for the entangled pair. `alpha_b` NULL means a Hermitian Bob,
/// in which case `bob` is ignored. `over_bob` non-zero sums over Bob's
/// outcomes (Alice's marginal) instead of Alice's.
///
/// # Safety
/// `alpha_b` must be NULL or readable; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_marginal_cpt(
    alpha_a: f64,
    alpha_b: *const f64,
    alice: PtsymChoice,
    bob: PtsymChoice,
    which: PtsymYOutcome,
    over_bob: i32,
    out: *mut f64,
) -> PtsymStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let alpha_b = alpha_b.as_ref().copied();
        let sys = BipartiteSystem::from_alphas(alpha_a, alpha_b).map_err(lib_err)?;
        let bob = alpha_b.map(|_| choice(bob));
        let dir = if over_bob != 0 { Marginal::OverBob } else { Marginal::OverAlice };
        *out = marginal_cpt(&sys, choice(alice), bob, outcome(which), dir).map_err(lib_err)?;
        Ok(())
    })
}

/// Entanglement entropy in bits of the evolved Bell pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_entanglement_entropy(alpha: f64, p: PtsymPrescription, out: *mut f64) -> PtsymStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let p = match p {
            PtsymPrescription::Cpt => Prescription::Cpt,
            PtsymPrescription::Hilbert => Prescription::Hilbert,
        };
        match entanglement_report(alpha, p).map_err(lib_err)?.entropy {
            Entropy::Bits { value } => {
                *out = value;
                Ok(())
            }
            Entropy::Diagnostic { reason } => Err((PtsymStatus::Numerical, reason)),
        }
    })
}

/// `¼[3cos²ζ + sin²(3ζ)]`.
#[no_mangle]
pub extern "C" fn ptsym_chsh_win_probability(zeta: f64) -> f64 {
    chsh_win_probability(zeta)
}

/// Optimal ζ on `[0, π/4]` and the corresponding win probability.
///
/// # Safety
/// Both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym_chsh_optimize(out_zeta: *mut f64, out_p: *mut f64) -> PtsymStatus {
    guard(|| {
        if out_zeta.is_null() || out_p.is_null() {
            return Err(null_err("out"));
        }
        let (z, p) = chsh_optimize();
        *out_zeta = z;
        *out_p = p;
        Ok(())
    })
}
