//! C ABI for the `etrees` library.
//!
//! Trees are passed as opaque `EtreesTree` handles. Every fallible function
//! returns an `EtreesStatus`; on failure the message is available from
//! `etrees_last_error` until the next call on the same thread. Strings
//! returned by the library must be released with `etrees_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use etrees::coulson::{energy_coulson, QuadratureConfig};
use etrees::matching::{hosoya, tau};
use etrees::spectral::energy_spectral;
use etrees::{canonical_code, extremal_tree, Error, FreeTree, RootedTree, TreeClassParams};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtreesStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidTree = 4,
    Numerical = 5,
    Panic = 6,
}

/// Opaque tree handle.
pub struct EtreesTree {
    tree: FreeTree,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> EtreesStatus {
    match e {
        Error::Parse { .. } => EtreesStatus::Parse,
        Error::Cycle(..) | Error::Disconnected { .. } | Error::InvalidTree(_) | Error::DegreeBound { .. } => {
            EtreesStatus::InvalidTree
        }
        Error::Convergence { .. } | Error::Precision(_) => EtreesStatus::Numerical,
        Error::InvalidParams(_) | Error::Expansion { .. } | Error::SizeLimit(_) => EtreesStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard<F: FnOnce() -> Result<(), (EtreesStatus, String)>>(f: F) -> EtreesStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EtreesStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EtreesStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (EtreesStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (EtreesStatus, String) {
    (EtreesStatus::NullPointer, format!("{what} is null"))
}

unsafe fn tree_ref<'a>(t: *const EtreesTree) -> Result<&'a FreeTree, (EtreesStatus, String)> {
    t.as_ref().map(|h| &h.tree).ok_or_else(|| null("tree"))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), (EtreesStatus, String)> {
    let c = CString::new(s).map_err(|_| (EtreesStatus::Panic, "string contains a nul byte".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn give_tree(tree: FreeTree, out: *mut *mut EtreesTree) {
    unsafe { *out = Box::into_raw(Box::new(EtreesTree { tree })) };
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn etrees_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a NUL-terminated edge list.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_tree_parse(text: *const c_char, out: *mut *mut EtreesTree) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| (EtreesStatus::Parse, e.to_string()))?;
        give_tree(FreeTree::parse(s).map_err(lib_err)?, out);
        Ok(())
    })
}

/// Builds the extremal tree on `n` vertices with maximum degree `d + 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_extremal_tree(n: usize, d: usize, out: *mut *mut EtreesTree) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = TreeClassParams::new(n, d).map_err(lib_err)?;
        give_tree(extremal_tree(params).map_err(lib_err)?, out);
        Ok(())
    })
}

/// Releases a tree. Null is accepted.
///
/// # Safety
/// `tree` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn etrees_tree_free(tree: *mut EtreesTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn etrees_tree_vertex_count(tree: *const EtreesTree) -> usize {
    tree.as_ref().map_or(0, |h| h.tree.len())
}

/// Edge-list serialization.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_tree_to_edge_list(tree: *const EtreesTree, out: *mut *mut c_char) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(tree_ref(tree)?.to_edge_list(), out)
    })
}

/// Canonical code as a parenthesized string.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_canonical_code(tree: *const EtreesTree, out: *mut *mut c_char) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(canonical_code(tree_ref(tree)?).0, out)
    })
}

/// Hosoya index as a decimal string, since it overflows any fixed width.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_hosoya(tree: *const EtreesTree, out: *mut *mut c_char) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(hosoya(tree_ref(tree)?).to_string(), out)
    })
}

/// Energy from the eigenvalues of the adjacency matrix.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_energy_spectral(tree: *const EtreesTree, out: *mut f64) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = energy_spectral(tree_ref(tree)?).value;
        Ok(())
    })
}

/// Energy through the Coulson integral with absolute tolerance `tolerance`.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_energy_coulson(tree: *const EtreesTree, tolerance: f64, out: *mut f64) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = QuadratureConfig { abs_tolerance: tolerance, ..Default::default() };
        *out = energy_coulson(tree_ref(tree)?, &cfg).map_err(lib_err)?.value;
        Ok(())
    })
}

/// `tau(T, x)` with the tree rooted at `root`.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etrees_tau(tree: *const EtreesTree, root: usize, x: f64, out: *mut f64) -> EtreesStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = tree_ref(tree)?;
        if root >= t.len() {
            return Err((EtreesStatus::InvalidArgument, format!("root {root} out of range")));
        }
        if !(x.is_finite() && x >= 0.0) {
            return Err((EtreesStatus::InvalidArgument, format!("x must be finite and nonnegative, got {x}")));
        }
        *out = tau(&RootedTree::from_free(t, root), x);
        Ok(())
    })
}

/// The growth constant `alpha_d` and the bound on its truncation error.
///
/// # Safety
/// `value` must be valid; `error_bound` may be null.
#[no_mangle]
pub unsafe extern "C" fn etrees_alpha(d: usize, precision: f64, value: *mut f64, error_bound: *mut f64) -> EtreesStatus {
    guard(|| {
        if value.is_null() {
            return Err(null("value"));
        }
        let a = etrees::alpha::alpha(d, precision).map_err(lib_err)?;
        *value = a.value;
        if !error_bound.is_null() {
            *error_bound = a.error_bound;
        }
        Ok(())
    })
}

/// Releases a string returned by the library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn etrees_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
