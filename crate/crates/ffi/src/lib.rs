//! C ABI over the transframe library.
//!
//! Conventions:
//! - Frames travel as opaque `TfFrame*` handles; free them with
//!   [`tf_frame_free`]. Strings returned through `char**` out-parameters are
//!   owned by the caller and freed with [`tf_string_free`].
//! - Every fallible call returns a [`TfStatus`]; on anything but
//!   `TF_STATUS_OK` the out-parameters are untouched and
//!   [`tf_last_error`] holds a message (thread-local, valid until the next
//!   call into the library on the same thread).
//! - Structured results (reduction maps) travel as JSON strings in the same
//!   format the command-line tool prints.
//! - A `budget` argument of 0 means the library default; any other value caps
//!   both valuation enumeration and reduction-search node expansions.
//! - No call unwinds across the boundary: internal panics are caught and
//!   reported as `TF_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use transframe::budget::Budget;
use transframe::dot::frame_to_dot;
use transframe::families::make_h;
use transframe::formula::{
    frame_valid, mk_b, mk_wid, mk_wid_bullet, mk_wid_plus, parse as parse_formula, FormulaError,
    FrameFormulaSpec,
};
use transframe::frame::{Frame, FrameError};
use transframe::json::{FrameDoc, ReductionDoc};
use transframe::reduction::{find_reduction, ReductionError};
use transframe::tree::{rt, srt, tree_embed, OmegaTree, TreeError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    /// The call succeeded and the out-parameters are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input: bad UTF-8, unparsable JSON or formula text, an
    /// unknown point name, a relation that is not transitive as claimed.
    InvalidInput = 2,
    /// The operation needs a rooted frame and the argument has no root.
    NotRooted = 3,
    /// The work estimate exceeds the enumeration or search budget.
    BudgetExceeded = 4,
    /// An internal invariant failed; please report the last-error message.
    Internal = 5,
}

/// Formula family selector for [`tf_check_family`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfFamily {
    /// Depth bound: valid iff every point has rank at most n.
    B = 0,
    /// Width bound: valid in rooted frames iff the width is at most n.
    Wid = 1,
    /// Weak-width bound: valid in rooted frames iff the weak width at every
    /// root is at most n.
    WidPlus = 2,
    /// Irreflexive-antichain bound: valid in rooted frames iff every
    /// irreflexive antichain has at most n points.
    WidBullet = 3,
}

/// Opaque frame handle.
pub struct TfFrame {
    inner: Frame,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: TfStatus, message: impl Display) -> TfStatus {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).expect("nul bytes replaced above");
    });
    status
}

fn frame_status(e: &FrameError) -> TfStatus {
    if *e == FrameError::NotRooted {
        TfStatus::NotRooted
    } else {
        TfStatus::InvalidInput
    }
}

fn formula_status(e: &FormulaError) -> TfStatus {
    match e {
        FormulaError::BudgetExceeded { .. } => TfStatus::BudgetExceeded,
        FormulaError::NotRooted => TfStatus::NotRooted,
        _ => TfStatus::InvalidInput,
    }
}

fn tree_status(e: &TreeError) -> TfStatus {
    if *e == TreeError::NotRooted {
        TfStatus::NotRooted
    } else {
        TfStatus::InvalidInput
    }
}

fn reduction_status(e: &ReductionError) -> TfStatus {
    match e {
        ReductionError::BudgetExceeded { .. } => TfStatus::BudgetExceeded,
        ReductionError::Frame(inner) => frame_status(inner),
        ReductionError::Formula(inner) => formula_status(inner),
        _ => TfStatus::InvalidInput,
    }
}

/// Run a body without letting panics cross the ABI.
fn guarded(body: impl FnOnce() -> TfStatus) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(TfStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `p` must be null or a valid C string pointer.
unsafe fn text_arg<'a>(p: *const c_char) -> Result<&'a str, TfStatus> {
    if p.is_null() {
        return Err(fail(TfStatus::NullArgument, "string argument is null"));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| fail(TfStatus::InvalidInput, format!("argument is not UTF-8: {e}")))
}

/// # Safety
/// `p` must be null or a pointer from a `tf_` constructor.
unsafe fn frame_arg<'a>(p: *const TfFrame) -> Result<&'a Frame, TfStatus> {
    if p.is_null() {
        Err(fail(TfStatus::NullArgument, "frame argument is null"))
    } else {
        Ok(unsafe { &(*p).inner })
    }
}

fn check_out<T>(out: *mut T) -> Result<(), TfStatus> {
    if out.is_null() {
        Err(fail(TfStatus::NullArgument, "out-parameter is null"))
    } else {
        Ok(())
    }
}

fn budget_of(budget: u64) -> Budget {
    if budget == 0 {
        Budget::default()
    } else {
        Budget::uniform(budget)
    }
}

fn give_string(out: *mut *mut c_char, text: String) -> TfStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(e) => return fail(TfStatus::Internal, format!("output contained NUL: {e}")),
    };
    unsafe { *out = c.into_raw() };
    TfStatus::Ok
}

fn give_frame(out: *mut *mut TfFrame, frame: Frame) -> TfStatus {
    unsafe { *out = Box::into_raw(Box::new(TfFrame { inner: frame })) };
    TfStatus::Ok
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next call into the library from the same thread; it is
/// never null (initially the empty string).
#[no_mangle]
pub extern "C" fn tf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Free a string returned through a `char**` out-parameter. Null is ignored.
///
/// # Safety
/// `s` must be null or an unfreed string produced by this library.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Free a frame handle. Null is ignored.
///
/// # Safety
/// `frame` must be null or an unfreed handle produced by this library.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_free(frame: *mut TfFrame) {
    if !frame.is_null() {
        drop(unsafe { Box::from_raw(frame) });
    }
}

/// Parse frame JSON (`{"points": [...], "edges": [[w,u], ...], "closed":
/// bool}`) into a handle. With `close` true the relation is closed
/// transitively; otherwise a relation claimed closed is validated and a
/// missing composite edge is an error.
///
/// # Safety
/// `json` must be a valid C string; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_from_json(
    json: *const c_char,
    close: bool,
    out: *mut *mut TfFrame,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        let text = match unsafe { text_arg(json) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc: FrameDoc = match serde_json::from_str(text) {
            Ok(doc) => doc,
            Err(e) => return fail(TfStatus::InvalidInput, format!("not frame JSON: {e}")),
        };
        match doc.to_frame(close) {
            Ok(frame) => give_frame(out, frame),
            Err(e) => fail(frame_status(&e), e),
        }
    })
}

/// Serialize a frame back to JSON (always with `"closed": true`).
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_to_json(
    frame: *const TfFrame,
    out: *mut *mut c_char,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        let frame = match unsafe { frame_arg(frame) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let doc = FrameDoc::from_frame(frame);
        match serde_json::to_string_pretty(&doc) {
            Ok(text) => give_string(out, text),
            Err(e) => fail(TfStatus::Internal, e),
        }
    })
}

/// Build the n-th member of the H family.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_make_h(n: u32, out: *mut *mut TfFrame) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match make_h(n) {
            Ok(frame) => give_frame(out, frame),
            Err(e) => fail(frame_status(&e), e),
        }
    })
}

/// Number of points.
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_point_count(
    frame: *const TfFrame,
    out: *mut u32,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => {
                unsafe { *out = f.len() as u32 };
                TfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Rank: the longest strict-successor chain length over all points.
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_rank(frame: *const TfFrame, out: *mut u32) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => {
                unsafe { *out = f.rank() };
                TfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Width: the maximum antichain size (rooted or not).
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_width(frame: *const TfFrame, out: *mut u32) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => {
                unsafe { *out = f.width() };
                TfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Size of the largest antichain of irreflexive points.
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_irr_antichain_max(
    frame: *const TfFrame,
    out: *mut u32,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => {
                unsafe { *out = f.irr_antichain_max() };
                TfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Weak width at the named point: the largest width among subframes
/// generated by its strict successors.
///
/// # Safety
/// `frame` must be a valid handle; `point` a valid C string; `out` a valid
/// destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_weak_width_at(
    frame: *const TfFrame,
    point: *const c_char,
    out: *mut u32,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        let f = match unsafe { frame_arg(frame) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let name = match unsafe { text_arg(point) } {
            Ok(n) => n,
            Err(s) => return s,
        };
        match f.point(name) {
            Ok(w) => {
                unsafe { *out = f.weak_width_at(w) };
                TfStatus::Ok
            }
            Err(e) => fail(frame_status(&e), e),
        }
    })
}

/// Check validity of a formula given as text (grammar: variables, `bot`,
/// `~`/`not`, `&`, `|`, `->`, `[]`, `<>`, parentheses).
///
/// # Safety
/// `frame` must be a valid handle; `formula` a valid C string; `out_valid` a
/// valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_check_formula(
    frame: *const TfFrame,
    formula: *const c_char,
    budget: u64,
    out_valid: *mut bool,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out_valid) {
            return s;
        }
        let f = match unsafe { frame_arg(frame) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let text = match unsafe { text_arg(formula) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = match parse_formula(text) {
            Ok(p) => p,
            Err(e) => return fail(formula_status(&e), e),
        };
        match frame_valid(f, &parsed, &budget_of(budget)) {
            Ok(verdict) => {
                unsafe { *out_valid = verdict.is_valid() };
                TfStatus::Ok
            }
            Err(e) => fail(formula_status(&e), e),
        }
    })
}

/// Check validity of the n-th member of a built-in formula family.
///
/// # Safety
/// `frame` must be a valid handle; `out_valid` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_check_family(
    frame: *const TfFrame,
    family: TfFamily,
    n: u32,
    budget: u64,
    out_valid: *mut bool,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out_valid) {
            return s;
        }
        let f = match unsafe { frame_arg(frame) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let made = match family {
            TfFamily::B => mk_b(n),
            TfFamily::Wid => mk_wid(n),
            TfFamily::WidPlus => mk_wid_plus(n),
            TfFamily::WidBullet => mk_wid_bullet(n),
        };
        let formula = match made {
            Ok(m) => m,
            Err(e) => return fail(formula_status(&e), e),
        };
        match frame_valid(f, &formula, &budget_of(budget)) {
            Ok(verdict) => {
                unsafe { *out_valid = verdict.is_valid() };
                TfStatus::Ok
            }
            Err(e) => fail(formula_status(&e), e),
        }
    })
}

/// Frame formula of a rooted frame under its canonical point ordering,
/// rendered as formula text.
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_formula(
    frame: *const TfFrame,
    out: *mut *mut c_char,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        let f = match unsafe { frame_arg(frame) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        match FrameFormulaSpec::canonical(f.clone()) {
            Ok(spec) => give_string(out, spec.formula().to_string()),
            Err(e) => fail(formula_status(&e), e),
        }
    })
}

/// Search for a reduction of `source` onto `target`. On success with a
/// reduction found, `*out_json` holds `{"map": {...}}` JSON; with none,
/// `*out_json` is null and the status is still `TF_STATUS_OK`.
///
/// # Safety
/// `source` and `target` must be valid handles; `out_json` a valid
/// destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_find_reduction(
    source: *const TfFrame,
    target: *const TfFrame,
    budget: u64,
    out_json: *mut *mut c_char,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out_json) {
            return s;
        }
        let src = match unsafe { frame_arg(source) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        let tgt = match unsafe { frame_arg(target) } {
            Ok(f) => f,
            Err(s) => return s,
        };
        match find_reduction(src, tgt, &budget_of(budget)) {
            Ok(Some(map)) => {
                let doc = ReductionDoc::from_map(&map);
                match serde_json::to_string_pretty(&doc) {
                    Ok(text) => give_string(out_json, text),
                    Err(e) => fail(TfStatus::Internal, e),
                }
            }
            Ok(None) => {
                unsafe { *out_json = ptr::null_mut() };
                TfStatus::Ok
            }
            Err(e) => fail(reduction_status(&e), e),
        }
    })
}

/// Representing tree of a frame whose inverted cluster order is a tree,
/// as bracket text (e.g. `1(2, 0)`).
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_rt_text(frame: *const TfFrame, out: *mut *mut c_char) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => match rt(f) {
                Ok(tree) => give_string(out, tree.to_string()),
                Err(e) => fail(tree_status(&e), e),
            },
            Err(s) => s,
        }
    })
}

/// Rooted representing tree of a rooted frame, as bracket text.
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_srt_text(frame: *const TfFrame, out: *mut *mut c_char) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => match srt(f) {
                Ok(tree) => give_string(out, tree.to_string()),
                Err(e) => fail(tree_status(&e), e),
            },
            Err(s) => s,
        }
    })
}

/// Decide the embedding order between two trees given as bracket text:
/// does `a` embed into `b`?
///
/// # Safety
/// `a` and `b` must be valid C strings; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_tree_embed(
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        let ta = match unsafe { text_arg(a) }.and_then(|t| {
            OmegaTree::parse(t).map_err(|e| fail(tree_status(&e), e))
        }) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let tb = match unsafe { text_arg(b) }.and_then(|t| {
            OmegaTree::parse(t).map_err(|e| fail(tree_status(&e), e))
        }) {
            Ok(t) => t,
            Err(s) => return s,
        };
        unsafe { *out = tree_embed(&ta, &tb) };
        TfStatus::Ok
    })
}

/// Graphviz DOT rendering of a frame (clusters as boxes, covering edges).
///
/// # Safety
/// `frame` must be a valid handle; `out` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_frame_dot(frame: *const TfFrame, out: *mut *mut c_char) -> TfStatus {
    guarded(|| {
        if let Err(s) = check_out(out) {
            return s;
        }
        match unsafe { frame_arg(frame) } {
            Ok(f) => give_string(out, frame_to_dot(f)),
            Err(s) => s,
        }
    })
}
