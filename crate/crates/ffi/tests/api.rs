use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use symkb_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
    symkb_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    CStr::from_ptr(symkb_last_error())
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn formula(text: &str) -> *mut SymkbFormula {
    let mut f = ptr::null_mut();
    assert_eq!(
        symkb_formula_parse(c(text).as_ptr(), &mut f),
        SymkbStatus::Ok
    );
    f
}

#[test]
fn parse_print_and_degree() {
    unsafe {
        let f = formula("[+] x & ~#p");
        let mut degree = 0;
        assert_eq!(symkb_formula_degree(f, &mut degree), SymkbStatus::Ok);
        assert_eq!(degree, 3);
        let mut text = ptr::null_mut();
        assert_eq!(symkb_formula_to_string(f, &mut text), SymkbStatus::Ok);
        assert_eq!(take(text), "[+] x & ~#p");
        symkb_formula_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            symkb_formula_parse(c("x &").as_ptr(), &mut f),
            SymkbStatus::ParseError
        );
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            symkb_formula_parse(ptr::null(), &mut f),
            SymkbStatus::NullPointer
        );
        assert_eq!(last_error(), "text is NULL");
        assert_eq!(
            symkb_formula_parse(c("x").as_ptr(), ptr::null_mut()),
            SymkbStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            symkb_formula_parse(bad.as_ptr().cast(), &mut f),
            SymkbStatus::InvalidUtf8
        );
        let mut degree = 0;
        assert_eq!(
            symkb_formula_degree(ptr::null(), &mut degree),
            SymkbStatus::NullPointer
        );
        symkb_formula_free(ptr::null_mut());
        symkb_string_free(ptr::null_mut());
    }
}

#[test]
fn decide_returns_certified_countermodels() {
    unsafe {
        let t_axiom = formula("[] #p -> #p");
        let mut verdict = SymkbVerdict::Unknown;
        let mut model = ptr::null_mut();
        assert_eq!(
            symkb_decide(SymkbLogic::Ktb, t_axiom, 0, &mut verdict, &mut model),
            SymkbStatus::Ok
        );
        assert_eq!(verdict, SymkbVerdict::Valid);
        assert!(model.is_null());

        assert_eq!(
            symkb_decide(SymkbLogic::Kb, t_axiom, 0, &mut verdict, &mut model),
            SymkbStatus::Ok
        );
        assert_eq!(verdict, SymkbVerdict::Invalid);
        assert!(!model.is_null());
        let mut holds = true;
        assert_eq!(
            symkb_model_satisfies(model, t_axiom, &mut holds),
            SymkbStatus::Ok
        );
        assert!(!holds);
        let mut json = ptr::null_mut();
        assert_eq!(symkb_model_to_json(model, &mut json), SymkbStatus::Ok);
        assert!(take(json).contains("\"rel\""));
        symkb_model_free(model);

        let deep = formula("[+^2] false");
        assert_eq!(
            symkb_decide(SymkbLogic::Kb, deep, 1, &mut verdict, ptr::null_mut()),
            SymkbStatus::Ok
        );
        assert_eq!(verdict, SymkbVerdict::Unknown);
        symkb_formula_free(deep);
        symkb_formula_free(t_axiom);
    }
}

#[test]
fn substitutions() {
    unsafe {
        let mut sigma = ptr::null_mut();
        assert_eq!(
            symkb_subst_family(SymkbFamily::Sigma, 1, &mut sigma),
            SymkbStatus::Ok
        );
        let mut json = ptr::null_mut();
        assert_eq!(symkb_subst_to_json(sigma, &mut json), SymkbStatus::Ok);
        let text = take(json);
        assert_eq!(text, r#"{"map":{"x":"x & [+] false"}}"#);

        let mut parsed = ptr::null_mut();
        assert_eq!(
            symkb_subst_from_json(c(&text).as_ptr(), &mut parsed),
            SymkbStatus::Ok
        );
        let mut answer = SymkbAnswer::Unknown;
        assert_eq!(
            symkb_subst_equivalent(SymkbLogic::Kb, sigma, parsed, 0, &mut answer),
            SymkbStatus::Ok
        );
        assert_eq!(answer, SymkbAnswer::Yes);

        let mut phi = ptr::null_mut();
        assert_eq!(symkb_formula_nullary(&mut phi), SymkbStatus::Ok);
        for logic in [SymkbLogic::Kb, SymkbLogic::Kdb, SymkbLogic::Ktb] {
            assert_eq!(
                symkb_subst_is_unifier(logic, sigma, phi, 0, &mut answer),
                SymkbStatus::Ok
            );
            assert_eq!(answer, SymkbAnswer::Yes);
        }

        let mut lambda = ptr::null_mut();
        let mut composed = ptr::null_mut();
        assert_eq!(
            symkb_subst_family(SymkbFamily::Lambda, 0, &mut lambda),
            SymkbStatus::Ok
        );
        assert_eq!(
            symkb_subst_compose(sigma, lambda, &mut composed),
            SymkbStatus::Ok
        );
        let mut sigma0 = ptr::null_mut();
        assert_eq!(
            symkb_subst_family(SymkbFamily::Sigma, 0, &mut sigma0),
            SymkbStatus::Ok
        );
        assert_eq!(
            symkb_subst_equivalent(SymkbLogic::Kb, composed, sigma0, 0, &mut answer),
            SymkbStatus::Ok
        );
        assert_eq!(answer, SymkbAnswer::Yes);

        let x = formula("x");
        let mut image = ptr::null_mut();
        assert_eq!(symkb_subst_apply(sigma0, x, &mut image), SymkbStatus::Ok);
        let mut printed = ptr::null_mut();
        assert_eq!(
            symkb_formula_to_string(image, &mut printed),
            SymkbStatus::Ok
        );
        assert_eq!(take(printed), "false");

        assert_eq!(
            symkb_subst_from_json(c(r##"{"map":{"#p":"x"}}"##).as_ptr(), &mut parsed),
            SymkbStatus::ParseError
        );
        for f in [phi, x, image] {
            symkb_formula_free(f);
        }
        for s in [sigma, parsed, lambda, composed, sigma0] {
            symkb_subst_free(s);
        }
    }
}

#[test]
fn bridge_and_suite() {
    unsafe {
        let chain = symkb::kripke::ModelJson::from_model(&symkb::kripke::chain_model(1), Some(0));
        let left_json = serde_json::to_string(&chain).unwrap();
        let mut right_value = serde_json::to_value(&chain).unwrap();
        right_value["point"] = serde_json::json!(3);
        let (mut left, mut right) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            symkb_model_from_json(c(&left_json).as_ptr(), &mut left),
            SymkbStatus::Ok
        );
        assert_eq!(
            symkb_model_from_json(c(&right_value.to_string()).as_ptr(), &mut right),
            SymkbStatus::Ok
        );
        let mut json = ptr::null_mut();
        assert_eq!(
            symkb_bridge(left, right, 1, true, &mut json),
            SymkbStatus::Ok
        );
        let bridge: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_ne!(bridge["root"], bridge["root_prime"]);
        assert_eq!(
            symkb_bridge(right, left, 1, false, &mut json),
            SymkbStatus::ConstructionError
        );
        symkb_model_free(left);
        symkb_model_free(right);

        let mut report = ptr::null_mut();
        let mut all_pass = false;
        assert_eq!(
            symkb_run_suite(SymkbLogic::Kdb, 1, 1, 3, &mut report, &mut all_pass),
            SymkbStatus::Ok
        );
        assert!(all_pass);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["config"]["logic"], "kdb");
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/symkb.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "symkb_decide",
        "symkb_subst_compose",
        "symkb_bridge",
        "symkb_last_error",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("use.c");
    std::fs::write(
        &source,
        "#include \"symkb.h\"\nint main(void) { SymkbFormula *f = 0; \
         return symkb_formula_parse(\"x\", &f) == SYMKB_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&source)
        .status()
    else {
        eprintln!("no C compiler available, header checked textually only");
        return;
    };
    assert!(status.success());
}
