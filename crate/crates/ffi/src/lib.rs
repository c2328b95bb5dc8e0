//! C ABI over `predmodal`.
//!
//! Formulas and frames cross the boundary as opaque handles owned by the
//! caller and released with their `_free` function. Every fallible call
//! returns a [`PmStatus`]; on anything but `PM_OK` a message is available
//! from [`pm_last_error`] on the same thread. Strings returned by the
//! library are released with [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use predmodal::document::ModelDocument;
use predmodal::efgames::{duplicator_wins, frame_structure, EfError};
use predmodal::frames::{generate, ring_union, FrameFamilyTag};
use predmodal::translate::{embed, standard_translation, Logic};
use predmodal::validity::{frame_validity, in_logic, SearchBounds, ValidityError, Verdict};
use predmodal::{parse_modal, Frame, ModalFormula};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

/// Which logic a membership query or embedding refers to.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmLogic {
    L0 = 0,
    L1 = 1,
}

impl From<PmLogic> for Logic {
    fn from(l: PmLogic) -> Self {
        match l {
            PmLogic::L0 => Logic::L0,
            PmLogic::L1 => Logic::L1,
        }
    }
}

/// Output of [`pm_translate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmTranslation {
    /// The embedding into first-order logic for `L0`.
    EmbedL0 = 0,
    /// The embedding for `L1`.
    EmbedL1 = 1,
    /// The bare standard translation at the free variable `x`.
    StandardX = 2,
}

/// A parsed modal formula.
pub struct PmFormula(ModalFormula);

/// A finite Kripke frame.
pub struct PmFrame(Frame);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("interior NULs removed"));
}

struct Fail(PmStatus, String);

impl From<ValidityError> for Fail {
    fn from(e: ValidityError) -> Self {
        let code = match e {
            ValidityError::BudgetExceeded { .. } => PmStatus::BudgetExceeded,
            _ => PmStatus::InvalidArgument,
        };
        Fail(code, e.to_string())
    }
}

impl From<EfError> for Fail {
    fn from(e: EfError) -> Self {
        let code = match e {
            EfError::BudgetExceeded { .. } => PmStatus::BudgetExceeded,
            _ => PmStatus::InvalidArgument,
        };
        Fail(code, e.to_string())
    }
}

fn invalid(e: impl ToString) -> Fail {
    Fail(PmStatus::InvalidArgument, e.to_string())
}

/// Runs `body`, converting errors and panics into a status and the
/// thread's last error message.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PmStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            PmStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PmStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(PmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PmStatus::NullPointer, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(PmStatus::NullPointer, "null output pointer".into()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` is null or a pointer obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a modal formula.
///
/// # Safety
/// `source` is a NUL-terminated string; `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_formula_parse(
    source: *const c_char,
    result: *mut *mut PmFormula,
) -> PmStatus {
    guard(|| {
        let slot = out(result)?;
        let phi =
            parse_modal(text(source)?).map_err(|e| Fail(PmStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(PmFormula(phi)));
        Ok(())
    })
}

/// # Safety
/// `f` is null or a live handle from [`pm_formula_parse`].
#[no_mangle]
pub unsafe extern "C" fn pm_formula_free(f: *mut PmFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` is a live formula handle; `depth` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_formula_modal_depth(
    f: *const PmFormula,
    depth: *mut usize,
) -> PmStatus {
    guard(|| {
        *out(depth)? = handle(f)?.0.modal_depth();
        Ok(())
    })
}

/// Canonical text of the formula, or null on a null handle.
///
/// # Safety
/// `f` is null or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn pm_formula_to_string(f: *const PmFormula) -> *mut c_char {
    match f.as_ref() {
        Some(f) => owned_string(f.0.to_string()),
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// Generates a family frame: `chain`, `ring`, `marked`, `union` or
/// `ring-union`.
///
/// # Safety
/// `family` is a NUL-terminated string; `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_generate(
    family: *const c_char,
    n: usize,
    result: *mut *mut PmFrame,
) -> PmStatus {
    guard(|| {
        let slot = out(result)?;
        let name = text(family)?;
        let frame = if name == "ring-union" {
            ring_union(n)
        } else {
            name.parse::<FrameFamilyTag>()
                .and_then(|tag| generate(tag, n))
        }
        .map_err(invalid)?;
        *slot = Box::into_raw(Box::new(PmFrame(frame)));
        Ok(())
    })
}

/// Reads a frame from the JSON document format.
///
/// # Safety
/// `json` is a NUL-terminated string; `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_from_json(
    json: *const c_char,
    result: *mut *mut PmFrame,
) -> PmStatus {
    guard(|| {
        let slot = out(result)?;
        let frame = ModelDocument::parse(text(json)?)
            .and_then(|d| d.to_frame())
            .map_err(|e| Fail(PmStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(PmFrame(frame)));
        Ok(())
    })
}

/// The frame as a JSON document, or null on a null handle.
///
/// # Safety
/// `f` is null or a live frame handle.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_to_json(f: *const PmFrame) -> *mut c_char {
    match f.as_ref() {
        Some(f) => owned_string(ModelDocument::from_frame(&f.0).to_json()),
        None => {
            set_error("null handle");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `f` is a live frame handle; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_world_count(f: *const PmFrame, count: *mut usize) -> PmStatus {
    guard(|| {
        *out(count)? = handle(f)?.0.len();
        Ok(())
    })
}

/// # Safety
/// `f` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_free(f: *mut PmFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Validity of the formula at every world of the frame, over domains from
/// a pool of `domain_bound` elements.
///
/// # Safety
/// Handles are live; `valid` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_frame_validity(
    frame: *const PmFrame,
    formula: *const PmFormula,
    domain_bound: usize,
    valid: *mut bool,
) -> PmStatus {
    guard(|| {
        let slot = out(valid)?;
        *slot = frame_validity(&handle(frame)?.0, &handle(formula)?.0, domain_bound)?;
        Ok(())
    })
}

/// Bounded membership. `frame_bound == 0` means `md + 3`. On refutation
/// `*member` is false and, if `countermodel` is non-null, it receives the
/// countermodel as a JSON document (free with [`pm_string_free`]).
///
/// # Safety
/// `formula` is live; `member` is writable; `countermodel` is null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pm_check(
    logic: PmLogic,
    formula: *const PmFormula,
    domain_bound: usize,
    frame_bound: usize,
    member: *mut bool,
    countermodel: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let slot = out(member)?;
        let phi = &handle(formula)?.0;
        let mut bounds = SearchBounds::for_formula(phi)?.with_domain_size(domain_bound);
        if frame_bound > 0 {
            bounds = bounds.with_frame_index(frame_bound);
        }
        match in_logic(logic.into(), phi, &bounds)? {
            Verdict::Refuted(r) => {
                *slot = false;
                if let Some(cm) = countermodel.as_mut() {
                    *cm = owned_string(ModelDocument::from_model(&r.model).to_json());
                }
            }
            Verdict::NoCountermodelUpTo(_) => *slot = true,
        }
        Ok(())
    })
}

/// First-order text of the chosen translation.
///
/// # Safety
/// `formula` is live; `result` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_translate(
    kind: PmTranslation,
    formula: *const PmFormula,
    result: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let slot = out(result)?;
        let phi = &handle(formula)?.0;
        let fol = match kind {
            PmTranslation::EmbedL0 => embed(Logic::L0, phi),
            PmTranslation::EmbedL1 => embed(Logic::L1, phi),
            PmTranslation::StandardX => standard_translation(phi, "x"),
        }
        .map_err(invalid)?;
        *slot = owned_string(fol.to_string());
        Ok(())
    })
}

/// Whether Duplicator survives `rounds` rounds on the two frames.
///
/// # Safety
/// Handles are live; `wins` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_ef_duplicator_wins(
    left: *const PmFrame,
    right: *const PmFrame,
    rounds: usize,
    wins: *mut bool,
) -> PmStatus {
    guard(|| {
        let slot = out(wins)?;
        let a = frame_structure(&handle(left)?.0);
        let b = frame_structure(&handle(right)?.0);
        *slot = duplicator_wins(&a, &b, rounds)?;
        Ok(())
    })
}
