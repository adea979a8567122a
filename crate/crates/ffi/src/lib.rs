//! C ABI over `symkb`.
//!
//! Every fallible function returns a [`SymkbStatus`] and writes results
//! through out-pointers. On failure, [`symkb_last_error`] describes the most
//! recent error on the calling thread. Handles are opaque and must be released
//! with their matching `_free` function; strings returned by the library are
//! released with [`symkb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symkb::constructions::{bridge_model, nullary_formula, Family};
use symkb::formula::{parse, Formula};
use symkb::harness::{run_suite, SuiteConfig};
use symkb::kripke::{ModelJson, PointedModel, UnravelMode};
use symkb::prover::{decide_with, Logic, ProverConfig, Verdict};
use symkb::substitution::{equivalent_with, is_unifier_with, Judgement, Substitution};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymkbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ConstructionError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymkbLogic {
    Kb = 0,
    Kdb = 1,
    Ktb = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymkbFamily {
    Sigma = 0,
    Tau = 1,
    Lambda = 2,
    Mu = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymkbVerdict {
    Valid = 0,
    Invalid = 1,
    Unknown = 2,
}

/// Three-valued answer of the substitution predicates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymkbAnswer {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// Opaque formula handle.
pub struct SymkbFormula(Formula);

/// Opaque substitution handle.
pub struct SymkbSubstitution(Substitution);

/// Opaque pointed Kripke model handle.
pub struct SymkbModel(PointedModel);

impl From<SymkbLogic> for Logic {
    fn from(l: SymkbLogic) -> Logic {
        match l {
            SymkbLogic::Kb => Logic::Kb,
            SymkbLogic::Kdb => Logic::Kdb,
            SymkbLogic::Ktb => Logic::Ktb,
        }
    }
}

impl From<SymkbFamily> for Family {
    fn from(f: SymkbFamily) -> Family {
        match f {
            SymkbFamily::Sigma => Family::Sigma,
            SymkbFamily::Tau => Family::Tau,
            SymkbFamily::Lambda => Family::Lambda,
            SymkbFamily::Mu => Family::Mu,
        }
    }
}

fn answer(j: Judgement) -> SymkbAnswer {
    match j {
        Ok(true) => SymkbAnswer::Yes,
        Ok(false) => SymkbAnswer::No,
        Err(_) => SymkbAnswer::Unknown,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SymkbStatus, String);

type FfiResult = Result<(), Failure>;

fn fail<T>(status: SymkbStatus, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, message.into()))
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> FfiResult) -> SymkbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SymkbStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            SymkbStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return fail(SymkbStatus::NullPointer, format!("{what} is NULL"));
    }
    CStr::from_ptr(s)
        .to_str()
        .or_else(|_| fail(SymkbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(
        || fail(SymkbStatus::NullPointer, format!("{what} is NULL")),
        Ok,
    )
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().map_or_else(
        || fail(SymkbStatus::NullPointer, format!("{what} is NULL")),
        Ok,
    )
}

fn string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .or_else(|_| fail(SymkbStatus::InvalidArgument, "string contains NUL"))
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn symkb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn symkb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` into a new formula handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_formula` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_formula_parse(
    text: *const c_char,
    out_formula: *mut *mut SymkbFormula,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_formula, "out_formula")?;
        let f =
            parse(utf8(text, "text")?).or_else(|e| fail(SymkbStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(SymkbFormula(f)));
        Ok(())
    })
}

/// The formula `(x → ⊞x) ∧ (¬x → ⊟¬x)`.
///
/// # Safety
/// `out_formula` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_formula_nullary(out_formula: *mut *mut SymkbFormula) -> SymkbStatus {
    guard(|| {
        *out(out_formula, "out_formula")? =
            Box::into_raw(Box::new(SymkbFormula(nullary_formula())));
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn symkb_formula_free(f: *mut SymkbFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Writes the concrete syntax of `f` as a new string.
///
/// # Safety
/// `f` must be a live formula handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_formula_to_string(
    f: *const SymkbFormula,
    out_text: *mut *mut c_char,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = string(handle(f, "formula")?.0.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `f` must be a live formula handle; `out_degree` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_formula_degree(
    f: *const SymkbFormula,
    out_degree: *mut usize,
) -> SymkbStatus {
    guard(|| {
        *out(out_degree, "out_degree")? = handle(f, "formula")?.0.degree();
        Ok(())
    })
}

/// Decides validity of `f`. A `max_nodes` of 0 selects the default budget.
/// When the verdict is invalid and `out_countermodel` is not NULL, a new model
/// handle holding the countermodel is written there; otherwise it is set to NULL.
///
/// # Safety
/// `f` must be a live formula handle; `out_verdict` must be writable;
/// `out_countermodel` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_decide(
    logic: SymkbLogic,
    f: *const SymkbFormula,
    max_nodes: usize,
    out_verdict: *mut SymkbVerdict,
    out_countermodel: *mut *mut SymkbModel,
) -> SymkbStatus {
    guard(|| {
        let verdict_slot = out(out_verdict, "out_verdict")?;
        let v = decide_with(
            logic.into(),
            &handle(f, "formula")?.0,
            &prover_config(max_nodes),
        );
        *verdict_slot = match v {
            Verdict::Valid => SymkbVerdict::Valid,
            Verdict::Invalid(_) => SymkbVerdict::Invalid,
            Verdict::Unknown(_) => SymkbVerdict::Unknown,
        };
        if let Some(slot) = out_countermodel.as_mut() {
            *slot = match v {
                Verdict::Invalid(m) => Box::into_raw(Box::new(SymkbModel(m))),
                _ => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Reads a pointed model from JSON `{"states","rel","val","point"}`; the point
/// defaults to the first state.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_model` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_model_from_json(
    json: *const c_char,
    out_model: *mut *mut SymkbModel,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_model, "out_model")?;
        let m = PointedModel::from_json_str(utf8(json, "json")?)
            .or_else(|e| fail(SymkbStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(SymkbModel(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be a live model handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_model_to_json(
    m: *const SymkbModel,
    out_json: *mut *mut c_char,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let json = serde_json::to_string(&handle(m, "model")?.0.to_json())
            .or_else(|e| fail(SymkbStatus::InvalidArgument, e.to_string()))?;
        *slot = string(json)?;
        Ok(())
    })
}

/// Whether the model satisfies `f` at its point.
///
/// # Safety
/// `m` and `f` must be live handles; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_model_satisfies(
    m: *const SymkbModel,
    f: *const SymkbFormula,
    out_holds: *mut bool,
) -> SymkbStatus {
    guard(|| {
        *out(out_holds, "out_holds")? = handle(m, "model")?.0.satisfies(&handle(f, "formula")?.0);
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a live model handle.
#[no_mangle]
pub unsafe extern "C" fn symkb_model_free(m: *mut SymkbModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Joins `left` and `right` around their witness paths of length `k` and
/// writes `{"model","root","root_prime"}` as JSON. With `reflexive`, both
/// inputs must be reflexive and the result stays reflexive.
///
/// # Safety
/// `left` and `right` must be live model handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_bridge(
    left: *const SymkbModel,
    right: *const SymkbModel,
    k: usize,
    reflexive: bool,
    out_json: *mut *mut c_char,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let mode = if reflexive {
            UnravelMode::Reflexive
        } else {
            UnravelMode::Plain
        };
        let b = bridge_model(
            &handle(left, "left")?.0,
            &handle(right, "right")?.0,
            k,
            mode,
        )
        .or_else(|e| fail(SymkbStatus::ConstructionError, e.to_string()))?;
        let json = serde_json::json!({
            "model": ModelJson::from_model(&b.model, None),
            "root": b.root,
            "root_prime": b.root_prime,
        });
        *slot = string(json.to_string())?;
        Ok(())
    })
}

/// Reads a substitution from JSON `{"map":{"x":"<formula>"}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_subst` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_from_json(
    json: *const c_char,
    out_subst: *mut *mut SymkbSubstitution,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_subst, "out_subst")?;
        let s = Substitution::from_json_str(utf8(json, "json")?)
            .or_else(|e| fail(SymkbStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(SymkbSubstitution(s)));
        Ok(())
    })
}

/// The `k`-th member of one of the indexed families.
///
/// # Safety
/// `out_subst` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_family(
    family: SymkbFamily,
    k: usize,
    out_subst: *mut *mut SymkbSubstitution,
) -> SymkbStatus {
    guard(|| {
        let s = Family::from(family).substitution(k);
        *out(out_subst, "out_subst")? = Box::into_raw(Box::new(SymkbSubstitution(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live substitution handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_to_json(
    s: *const SymkbSubstitution,
    out_json: *mut *mut c_char,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let json = serde_json::to_string(&handle(s, "substitution")?.0.to_json())
            .or_else(|e| fail(SymkbStatus::InvalidArgument, e.to_string()))?;
        *slot = string(json)?;
        Ok(())
    })
}

/// `s(f)` as a new formula handle.
///
/// # Safety
/// `s` and `f` must be live handles; `out_formula` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_apply(
    s: *const SymkbSubstitution,
    f: *const SymkbFormula,
    out_formula: *mut *mut SymkbFormula,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_formula, "out_formula")?;
        let g = handle(s, "substitution")?.0.apply(&handle(f, "formula")?.0);
        *slot = Box::into_raw(Box::new(SymkbFormula(g)));
        Ok(())
    })
}

/// The substitution applying `first` and then `then`.
///
/// # Safety
/// `first` and `then` must be live handles; `out_subst` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_compose(
    first: *const SymkbSubstitution,
    then: *const SymkbSubstitution,
    out_subst: *mut *mut SymkbSubstitution,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_subst, "out_subst")?;
        let c = handle(first, "first")?.0.compose(&handle(then, "then")?.0);
        *slot = Box::into_raw(Box::new(SymkbSubstitution(c)));
        Ok(())
    })
}

/// Whether `s ≃ t` in `logic`. A `max_nodes` of 0 selects the default budget.
///
/// # Safety
/// `s` and `t` must be live handles; `out_answer` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_equivalent(
    logic: SymkbLogic,
    s: *const SymkbSubstitution,
    t: *const SymkbSubstitution,
    max_nodes: usize,
    out_answer: *mut SymkbAnswer,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_answer, "out_answer")?;
        let config = prover_config(max_nodes);
        *slot = answer(equivalent_with(
            logic.into(),
            &handle(s, "s")?.0,
            &handle(t, "t")?.0,
            &config,
        ));
        Ok(())
    })
}

/// Whether `s(f)` is valid in `logic`. A `max_nodes` of 0 selects the default budget.
///
/// # Safety
/// `s` and `f` must be live handles; `out_answer` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_is_unifier(
    logic: SymkbLogic,
    s: *const SymkbSubstitution,
    f: *const SymkbFormula,
    max_nodes: usize,
    out_answer: *mut SymkbAnswer,
) -> SymkbStatus {
    guard(|| {
        let slot = out(out_answer, "out_answer")?;
        let config = prover_config(max_nodes);
        *slot = answer(is_unifier_with(
            logic.into(),
            &handle(s, "substitution")?.0,
            &handle(f, "formula")?.0,
            &config,
        ));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a live substitution handle.
#[no_mangle]
pub unsafe extern "C" fn symkb_subst_free(s: *mut SymkbSubstitution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs the lemma suite and writes its JSON report. `out_all_pass` is set
/// when every check passed.
///
/// # Safety
/// `out_report` and `out_all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symkb_run_suite(
    logic: SymkbLogic,
    k_max: usize,
    l_max: usize,
    seed: u64,
    out_report: *mut *mut c_char,
    out_all_pass: *mut bool,
) -> SymkbStatus {
    guard(|| {
        let report_slot = out(out_report, "out_report")?;
        let pass_slot = out(out_all_pass, "out_all_pass")?;
        let report = run_suite(&SuiteConfig::new(logic.into(), k_max, l_max, seed));
        *report_slot = string(report.to_json().to_string())?;
        *pass_slot = report.all_pass();
        Ok(())
    })
}

fn prover_config(max_nodes: usize) -> ProverConfig {
    if max_nodes == 0 {
        ProverConfig::default()
    } else {
        ProverConfig { max_nodes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_maps_failures_and_panics() {
        assert_eq!(guard(|| Ok(())), SymkbStatus::Ok);
        assert_eq!(
            guard(|| fail(SymkbStatus::InvalidArgument, "bad k")),
            SymkbStatus::InvalidArgument
        );
        let message = unsafe { CStr::from_ptr(symkb_last_error()) };
        assert_eq!(message.to_str().unwrap(), "bad k");

        let hook = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(hook);
        assert_eq!(status, SymkbStatus::Panic);
        let message = unsafe { CStr::from_ptr(symkb_last_error()) };
        assert_eq!(message.to_str().unwrap(), "internal panic: boom");
    }

    #[test]
    fn error_messages_survive_interior_nul() {
        set_error("a\0b".into());
        let message = unsafe { CStr::from_ptr(symkb_last_error()) };
        assert_eq!(message.to_str().unwrap(), "a b");
    }
}
