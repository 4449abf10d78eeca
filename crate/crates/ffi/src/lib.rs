//! C ABI over `elp-core`.
//!
//! Programs live behind an opaque `ElpProgram` handle. Every entry point
//! returns an [`ElpStatus`]; on failure a message is available from
//! [`elp_last_error`] on the same thread. Reports come back as
//! NUL-terminated JSON strings (the same shapes as `elp --format json`)
//! that the caller releases with [`elp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use elp_core::epistemic::{self, ViewKind};
use elp_core::report::{self, AnswerSetsReport, AspVerdictReport, VerdictReport, WorldViewsReport};
use elp_core::syntax::{self, Mode, Program, RenderOptions};
use elp_core::{asp, equivalence, qbf, Error, Limits};

/// Result codes. `NotEquivalent` and `NoSolution` are verdicts, not errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElpStatus {
    Ok = 0,
    NotEquivalent = 1,
    NoSolution = 3,
    NullArgument = 10,
    InvalidUtf8 = 11,
    ParseError = 12,
    GuardExceeded = 13,
    WrongProgramKind = 14,
    QbfError = 15,
    AssumptionViolated = 16,
    Internal = 17,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElpMode {
    Elp = 0,
    Asp = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElpKind {
    Cwv = 0,
    Wv = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElpNotion {
    OrdinaryCwv = 0,
    OrdinaryWv = 1,
    UniformCwv = 2,
    UniformWv = 3,
    AspUniform = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElpLimits {
    pub max_atoms: u32,
    pub max_eliterals: u32,
    pub force: bool,
}

/// Opaque program handle.
pub struct ElpProgram {
    program: Program,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ElpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => ElpStatus::ParseError,
            Error::GuardExceeded { .. } => ElpStatus::GuardExceeded,
            Error::Qbf(_) => ElpStatus::QbfError,
            Error::AssumptionViolated => ElpStatus::AssumptionViolated,
            _ => ElpStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, translating errors and panics into a status code.
fn guarded(f: impl FnOnce() -> Result<ElpStatus, Failure>) -> ElpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error: panic inside elp-core");
            ElpStatus::Internal
        }
    }
}

fn null() -> Failure {
    Failure(ElpStatus::NullArgument, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(ElpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn program<'a>(p: *const ElpProgram) -> Result<&'a Program, Failure> {
    p.as_ref().map(|h| &h.program).ok_or_else(null)
}

unsafe fn limits(l: *const ElpLimits) -> Limits {
    match l.as_ref() {
        Some(l) => Limits {
            max_atoms: l.max_atoms as usize,
            max_eliterals: l.max_eliterals as usize,
            force: l.force,
        },
        None => Limits::default(),
    }
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|e| Failure(ElpStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Reports without the trailing newline the CLI prints.
fn json(s: String) -> String {
    s.trim_end().to_owned()
}

fn elp_of(p: &Program) -> Result<syntax::Elp, Failure> {
    match p {
        Program::Elp(p) => Ok(p.clone()),
        Program::Asp(p) => p.to_elp().ok_or_else(|| {
            Failure(
                ElpStatus::WrongProgramKind,
                "program uses `not not` and has no epistemic reading".into(),
            )
        }),
    }
}

fn asp_of(p: &Program) -> Result<syntax::AspProgram, Failure> {
    match p {
        Program::Asp(p) => Ok(p.clone()),
        Program::Elp(p) => p.to_asp().ok_or_else(|| {
            Failure(
                ElpStatus::WrongProgramKind,
                "asp-uniform needs programs without epistemic negation".into(),
            )
        }),
    }
}

fn kind(k: ElpKind) -> ViewKind {
    match k {
        ElpKind::Cwv => ViewKind::Cwv,
        ElpKind::Wv => ViewKind::Wv,
    }
}

/// The guard defaults used by the command line tool.
#[no_mangle]
pub extern "C" fn elp_limits_default() -> ElpLimits {
    let l = Limits::default();
    ElpLimits {
        max_atoms: l.max_atoms as u32,
        max_eliterals: l.max_eliterals as u32,
        force: l.force,
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `elp_*` call on the same thread.
#[no_mangle]
pub extern "C" fn elp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `source`; on success `*out` owns a new handle.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_program_parse(
    source: *const c_char,
    mode: ElpMode,
    out: *mut *mut ElpProgram,
) -> ElpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null());
        }
        let mode = match mode {
            ElpMode::Elp => Mode::Elp,
            ElpMode::Asp => Mode::Asp,
        };
        let program = syntax::parse_program(text(source)?, mode)?;
        *out = Box::into_raw(Box::new(ElpProgram { program }));
        Ok(ElpStatus::Ok)
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn elp_program_free(p: *mut ElpProgram) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn elp_program_atom_count(p: *const ElpProgram) -> usize {
    match p.as_ref().map(|h| &h.program) {
        Some(Program::Elp(p)) => p.atoms.len(),
        Some(Program::Asp(p)) => p.atoms.len(),
        None => 0,
    }
}

/// Size of the epistemic literal domain (0 for plain programs).
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn elp_program_eliteral_count(p: *const ElpProgram) -> usize {
    match p.as_ref().map(|h| &h.program) {
        Some(Program::Elp(p)) => p.eliterals.len(),
        _ => 0,
    }
}

/// Program text with `#atoms` / `#eliterals` declarations.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_program_render(
    p: *const ElpProgram,
    out: *mut *mut c_char,
) -> ElpStatus {
    guarded(|| {
        let p = program(p)?;
        put_string(out, syntax::render_program(p, &RenderOptions::always()))?;
        Ok(ElpStatus::Ok)
    })
}

/// Answer sets of a plain program or the views of an ELP, as JSON.
/// Returns `NoSolution` (with the report still written) when there are none.
///
/// # Safety
/// `p` must be a live handle, `limits` valid or null, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_solve_json(
    p: *const ElpProgram,
    limits_ptr: *const ElpLimits,
    out: *mut *mut c_char,
) -> ElpStatus {
    guarded(|| {
        let l = limits(limits_ptr);
        let (json, found) = match program(p)? {
            Program::Asp(p) => {
                let sets = asp::answer_sets(p, &l)?;
                let r = AnswerSetsReport {
                    mode: "asp",
                    answer_sets: report::atom_sets(&sets, &p.atoms),
                };
                (json(report::to_json(&r)), !sets.is_empty())
            }
            Program::Elp(p) => {
                let c = epistemic::candidate_world_views(p, &l)?;
                let w = epistemic::world_views(p, &l)?;
                let r = WorldViewsReport {
                    mode: "elp",
                    candidate_world_views: report::view_reports(&c, p),
                    world_views: report::view_reports(&w, p),
                };
                (json(report::to_json(&r)), !c.is_empty())
            }
        };
        put_string(out, json)?;
        Ok(if found {
            ElpStatus::Ok
        } else {
            ElpStatus::NoSolution
        })
    })
}

/// Equivalence verdict with minimal witness, as JSON. The two programs are
/// aligned first. Returns `Ok` or `NotEquivalent`.
///
/// # Safety
/// `p1`, `p2` must be live handles, `limits` valid or null, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_equiv_json(
    p1: *const ElpProgram,
    p2: *const ElpProgram,
    notion: ElpNotion,
    limits_ptr: *const ElpLimits,
    out: *mut *mut c_char,
) -> ElpStatus {
    guarded(|| {
        let l = limits(limits_ptr);
        let (p1, p2) = (program(p1)?, program(p2)?);
        let (json, equivalent) = if notion == ElpNotion::AspUniform {
            let (a1, a2) = syntax::align_asp(&asp_of(p1)?, &asp_of(p2)?);
            let v = asp::asp_uniform_equivalent(&a1, &a2, &l)?;
            (
                json(report::to_json(&AspVerdictReport::new(&v, &a1.atoms))),
                v.equivalent,
            )
        } else {
            let (e1, e2) = syntax::align(&elp_of(p1)?, &elp_of(p2)?);
            let (name, v) = match notion {
                ElpNotion::OrdinaryCwv => (
                    "ordinary-cwv",
                    equivalence::ordinary_equivalent(&e1, &e2, ViewKind::Cwv, &l)?,
                ),
                ElpNotion::OrdinaryWv => (
                    "ordinary-wv",
                    equivalence::ordinary_equivalent(&e1, &e2, ViewKind::Wv, &l)?,
                ),
                ElpNotion::UniformCwv => (
                    "uniform-cwv",
                    equivalence::uniformly_equivalent(&e1, &e2, ViewKind::Cwv, &l)?,
                ),
                ElpNotion::UniformWv => (
                    "uniform-wv",
                    equivalence::uniformly_equivalent(&e1, &e2, ViewKind::Wv, &l)?,
                ),
                ElpNotion::AspUniform => unreachable!(),
            };
            (
                json(report::to_json(&VerdictReport::new(name, &v, &e1))),
                v.equivalent,
            )
        };
        put_string(out, json)?;
        Ok(if equivalent {
            ElpStatus::Ok
        } else {
            ElpStatus::NotEquivalent
        })
    })
}

/// The sparse UE-function table, as a JSON array in `(guess, facts)` order.
///
/// # Safety
/// `p` must be a live handle, `limits` valid or null, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_uef_json(
    p: *const ElpProgram,
    view_kind: ElpKind,
    limits_ptr: *const ElpLimits,
    out: *mut *mut c_char,
) -> ElpStatus {
    guarded(|| {
        let l = limits(limits_ptr);
        let p = elp_of(program(p)?)?;
        let t = equivalence::ue_function(&p, kind(view_kind), &l)?;
        put_string(out, json(report::to_json(&report::ue_table_report(&t, &p))))?;
        Ok(ElpStatus::Ok)
    })
}

/// Truth value of a QDIMACS-style `∃∀∃` formula.
///
/// # Safety
/// `source` must be a NUL-terminated string and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn elp_qbf_eval(
    source: *const c_char,
    limits_ptr: *const ElpLimits,
    value: *mut bool,
) -> ElpStatus {
    guarded(|| {
        if value.is_null() {
            return Err(null());
        }
        let q = qbf::parse_qbf3(text(source)?)?;
        *value = qbf::eval_qbf3(&q, &limits(limits_ptr))?;
        Ok(ElpStatus::Ok)
    })
}

/// Reduces a formula to the program pair; both handles are owned by the caller.
///
/// # Safety
/// `source` must be a NUL-terminated string, `pi1` and `pi2` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn elp_qbf_reduce(
    source: *const c_char,
    allow_unchecked: bool,
    limits_ptr: *const ElpLimits,
    pi1: *mut *mut ElpProgram,
    pi2: *mut *mut ElpProgram,
) -> ElpStatus {
    guarded(|| {
        if pi1.is_null() || pi2.is_null() {
            return Err(null());
        }
        let q = qbf::parse_qbf3(text(source)?)?;
        let (a, b) = qbf::reduce_qbf(&q, allow_unchecked, &limits(limits_ptr))?;
        *pi1 = Box::into_raw(Box::new(ElpProgram {
            program: Program::Elp(a),
        }));
        *pi2 = Box::into_raw(Box::new(ElpProgram {
            program: Program::Elp(b),
        }));
        Ok(ElpStatus::Ok)
    })
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn elp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
