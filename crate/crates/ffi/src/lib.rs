//! C ABI over `koszul-sdepth`.
//!
//! Subsets of `[n]` cross the boundary as `uint32_t` masks with bit `i - 1`
//! set for element `i`. Every fallible function returns a `KS_*` status code
//! and writes results through out-pointers; out-pointers are left untouched
//! on failure. Decompositions are opaque handles owned by the caller and
//! released with `ks_decomposition_free`.
//!
//! The generated header lives at `include/koszul_sdepth.h`.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use koszul_sdepth::decomposition::verify::{verify_stanley, StanleyOptions};
use koszul_sdepth::decomposition::{build_decomposition, Decomposition};
use koszul_sdepth::matching::{index, phi, psi, psi_tilde, Match};
use koszul_sdepth::{Error, GroundSet, Subset};

pub const KS_OK: i32 = 0;
/// A required pointer argument was null.
pub const KS_ERR_NULL: i32 = 1;
/// `n` is outside `1..=31`.
pub const KS_ERR_GROUND_SIZE: i32 = 2;
/// A mask has bits set above position `n`.
pub const KS_ERR_ELEMENT: i32 = 3;
/// The first set is not contained in the second.
pub const KS_ERR_NOT_SUBSET: i32 = 4;
/// The operation needs a non-empty set.
pub const KS_ERR_EMPTY: i32 = 5;
/// `(n, k)` is outside `max(1, floor(n/2)) <= k < n`.
pub const KS_ERR_OUT_OF_RANGE: i32 = 6;
/// The partial map is not defined at this set.
pub const KS_ERR_UNDEFINED: i32 = 7;
/// A summand index is past the end.
pub const KS_ERR_INDEX: i32 = 8;
/// An internal invariant failed; please report it.
pub const KS_ERR_INTERNAL: i32 = 9;
/// A Rust panic was caught at the boundary.
pub const KS_ERR_PANIC: i32 = 10;

/// Opaque handle to a computed decomposition.
pub struct KsDecomposition(Decomposition);

/// One summand `m_S K[Z_S]`, as masks.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KsSummand {
    /// The squarefree multidegree `S`.
    pub degree: u32,
    /// The free variables `Z_S`.
    pub free_vars: u32,
    /// The generator index set `G(S)`.
    pub generator: u32,
    /// The variable missing from `Z_S`, or 0 when `Z_S = [n]`.
    pub removed: u32,
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::GroundSize(_) => KS_ERR_GROUND_SIZE,
        Error::ElementOutOfRange { .. } | Error::PositionOutOfRange { .. } => KS_ERR_ELEMENT,
        Error::NotSubset { .. } => KS_ERR_NOT_SUBSET,
        Error::EmptySubset => KS_ERR_EMPTY,
        Error::OutOfRange { .. } => KS_ERR_OUT_OF_RANGE,
        Error::GroundMismatch { .. }
        | Error::SizeMismatch { .. }
        | Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::Invariant(_) => KS_ERR_INTERNAL,
    }
}

fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KS_OK,
        Ok(Err(code)) => code,
        Err(_) => KS_ERR_PANIC,
    }
}

fn subset(n: u32, mask: u32) -> Result<Subset, i32> {
    let ground = GroundSet::new(n as usize).map_err(|e| status_of(&e))?;
    Subset::from_bits(ground, mask).map_err(|e| status_of(&e))
}

unsafe fn write<T>(out: *mut T, value: T) {
    // SAFETY: callers check `out` for null first.
    unsafe { out.write(value) }
}

fn write_match(m: Option<Match>, out_mask: *mut u32, out_pivot: *mut u32) -> Result<(), i32> {
    let m = m.ok_or(KS_ERR_UNDEFINED)?;
    unsafe {
        write(out_mask, m.value.bits());
        if !out_pivot.is_null() {
            write(out_pivot, m.pivot as u32);
        }
    }
    Ok(())
}

/// `ψ(G) = G ∖ {ν(G)}`; `out_pivot` (optional) receives `ν(G)`.
/// Returns `KS_ERR_UNDEFINED` when `ν(G) = 0`.
///
/// # Safety
/// `out_mask` must be valid for writes; `out_pivot` may be null.
#[no_mangle]
pub unsafe extern "C" fn ks_psi(n: u32, mask: u32, out_mask: *mut u32, out_pivot: *mut u32) -> i32 {
    guard(|| {
        if out_mask.is_null() {
            return Err(KS_ERR_NULL);
        }
        write_match(psi(&subset(n, mask)?), out_mask, out_pivot)
    })
}

/// `φ(G) = G ∪ {μ(G) + 1}`; `out_pivot` (optional) receives the added
/// element. Returns `KS_ERR_UNDEFINED` when `μ(G) = n`.
///
/// # Safety
/// `out_mask` must be valid for writes; `out_pivot` may be null.
#[no_mangle]
pub unsafe extern "C" fn ks_phi(n: u32, mask: u32, out_mask: *mut u32, out_pivot: *mut u32) -> i32 {
    guard(|| {
        if out_mask.is_null() {
            return Err(KS_ERR_NULL);
        }
        write_match(phi(&subset(n, mask)?), out_mask, out_pivot)
    })
}

/// `ψ̃(G)`, defined for every non-empty `G`; returns `KS_ERR_EMPTY` otherwise.
///
/// # Safety
/// `out_mask` must be valid for writes; `out_pivot` may be null.
#[no_mangle]
pub unsafe extern "C" fn ks_psi_tilde(n: u32, mask: u32, out_mask: *mut u32, out_pivot: *mut u32) -> i32 {
    guard(|| {
        if out_mask.is_null() {
            return Err(KS_ERR_NULL);
        }
        let m = psi_tilde(&subset(n, mask)?).map_err(|e| status_of(&e))?;
        write_match(Some(m), out_mask, out_pivot)
    })
}

/// `ind_M(G)` for `G ⊆ M ⊆ [n]`.
///
/// # Safety
/// `out_index` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_index(n: u32, g: u32, m: u32, out_index: *mut u32) -> i32 {
    guard(|| {
        if out_index.is_null() {
            return Err(KS_ERR_NULL);
        }
        let value = index(&subset(n, g)?, &subset(n, m)?).map_err(|e| status_of(&e))?;
        unsafe { write(out_index, value) };
        Ok(())
    })
}

/// Builds the decomposition of `M(n, k)`. Returns null on failure and, if
/// `status` is non-null, stores the reason there.
///
/// # Safety
/// `status` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_new(n: u32, k: u32, status: *mut i32) -> *mut KsDecomposition {
    let mut handle = ptr::null_mut();
    let code = guard(|| {
        let d = build_decomposition(n as usize, k as usize).map_err(|e| status_of(&e))?;
        handle = Box::into_raw(Box::new(KsDecomposition(d)));
        Ok(())
    });
    if !status.is_null() {
        unsafe { write(status, code) };
    }
    handle
}

/// Releases a handle from `ks_decomposition_new`; null is a no-op.
///
/// # Safety
/// `d` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_free(d: *mut KsDecomposition) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Number of summands; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_len(d: *const KsDecomposition) -> usize {
    unsafe { d.as_ref() }.map_or(0, |d| d.0.summands.len())
}

/// `min |Z_S|` over the summands; 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_depth(d: *const KsDecomposition) -> u32 {
    unsafe { d.as_ref() }.map_or(0, |d| d.0.depth() as u32)
}

/// Copies summand `idx` (ordered by `|S|`, then squashed order) into `out`.
///
/// # Safety
/// `d` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_summand(d: *const KsDecomposition, idx: usize, out: *mut KsSummand) -> i32 {
    guard(|| {
        let d = unsafe { d.as_ref() }.ok_or(KS_ERR_NULL)?;
        if out.is_null() {
            return Err(KS_ERR_NULL);
        }
        let s = d.0.summands.get(idx).ok_or(KS_ERR_INDEX)?;
        let summand = KsSummand {
            degree: s.degree.bits(),
            free_vars: s.free_vars.bits(),
            generator: s.generator.bits(),
            removed: s.removed.map_or(0, |r| r as u32),
        };
        unsafe { write(out, summand) };
        Ok(())
    })
}

/// The decomposition as a JSON document; free with `ks_string_free`.
/// Returns null for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ks_decomposition_to_json(d: *const KsDecomposition) -> *mut c_char {
    let Some(d) = (unsafe { d.as_ref() }) else { return ptr::null_mut() };
    catch_unwind(AssertUnwindSafe(|| d.0.to_json()))
        .ok()
        .and_then(|json| CString::new(json).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// Releases a string returned by this library; null is a no-op.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Runs the full verification (Hilbert identity, triangle condition, exact
/// rank) for `M(n, k)`. `out_passed` receives whether every check held and
/// `out_depth` (optional) the verified lower bound on Stanley depth.
///
/// # Safety
/// `out_passed` must be valid for writes; `out_depth` may be null.
#[no_mangle]
pub unsafe extern "C" fn ks_verify_stanley(n: u32, k: u32, out_passed: *mut bool, out_depth: *mut u32) -> i32 {
    guard(|| {
        if out_passed.is_null() {
            return Err(KS_ERR_NULL);
        }
        let report = verify_stanley(n as usize, k as usize, StanleyOptions::default()).map_err(|e| status_of(&e))?;
        unsafe {
            write(out_passed, report.passed());
            if !out_depth.is_null() {
                write(out_depth, report.depth as u32);
            }
        }
        Ok(())
    })
}

/// Static description of a status code; never null, never freed.
#[no_mangle]
pub extern "C" fn ks_status_message(status: i32) -> *const c_char {
    let msg: &'static [u8] = match status {
        KS_OK => b"ok\0",
        KS_ERR_NULL => b"null pointer argument\0",
        KS_ERR_GROUND_SIZE => b"ground set size outside 1..=31\0",
        KS_ERR_ELEMENT => b"mask has elements outside [n]\0",
        KS_ERR_NOT_SUBSET => b"first set is not a subset of the second\0",
        KS_ERR_EMPTY => b"set must be non-empty\0",
        KS_ERR_OUT_OF_RANGE => b"(n, k) outside max(1, floor(n/2)) <= k < n\0",
        KS_ERR_UNDEFINED => b"map undefined at this set\0",
        KS_ERR_INDEX => b"summand index out of range\0",
        KS_ERR_INTERNAL => b"internal invariant failed\0",
        KS_ERR_PANIC => b"panic caught at the FFI boundary\0",
        _ => b"unknown status\0",
    };
    msg.as_ptr().cast()
}
