use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn sp4(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sp4")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exited normally");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let report = serde_json::from_str(&text).unwrap_or(Value::Null);
    (report, code)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const FORM: &str = r#"{"ell":3,"m":1,"level":2,"modes":[{"Q":["1/2","1","1"],"terms":[{"abc":[0,0,0],"w":[{"re":"1","im":"0"},{"re":"-2/3","im":"1"}]},{"abc":[1,0,0],"w":[{"re":"2","im":"0"},{"re":"0","im":"0"}]}]}]}"#;

#[test]
fn verma_info_region_c() {
    let (r, code) = sp4(&["verma-info", "--lambda", "3,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["region"], "C");
    assert_eq!(r["outputs"]["irreducible"], false);
    assert_eq!(r["outputs"]["composition_series"], serde_json::json!(["L(3,3)", "L(3,1)"]));
}

#[test]
fn verma_info_negative_weight() {
    let (r, code) = sp4(&["verma-info", "--lambda", "-1,-2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["region"], "A");
}

#[test]
fn index_set_u() {
    let (r, code) = sp4(&["index-set", "--target", "4,0", "--source", "2,2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["words"], serde_json::json!(["U"]));
}

#[test]
fn ktype_mult_with_oracle() {
    for module in ["N", "L"] {
        let (r, code) = sp4(&["ktype-mult", "--lambda", "3,1", "--mu", "5,3", "--module", module, "--oracle"]);
        assert_eq!(code, 0, "{r}");
        assert_eq!(r["outputs"]["oracle"]["agrees"], true);
    }
    let (r, _) = sp4(&["ktype-mult", "--lambda", "3,1", "--mu", "5,3"]);
    assert_eq!(r["outputs"]["multiplicity"], 2);
}

#[test]
fn malformed_inputs_exit_2() {
    assert_eq!(sp4(&["ktype-mult", "--lambda", "3", "--mu", "5,3"]).1, 2);
    assert_eq!(sp4(&["navigate", "--lambda", "3,1", "--word", "Xp,Q"]).1, 2);
    assert_eq!(sp4(&["verma-info", "--lambda", "1,3"]).1, 2);
    assert_eq!(sp4(&["no-such-command"]).1, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"ell":3,"m":1,"level":0,"modes":[]}"#);
    assert_eq!(sp4(&["holo-test", "--form", &bad]).1, 2);
    assert_eq!(sp4(&["holo-test", "--form", "/nonexistent/form.json"]).1, 2);
}

#[test]
fn navigate_u_is_highest_weight() {
    let (r, code) = sp4(&["navigate", "--lambda", "4,2", "--word", "U"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["weight"], "(4,4)");
    assert_eq!(r["outputs"]["highest_weight"], true);
}

#[test]
fn apply_to_zero_form() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "zero.json", r#"{"ell":4,"m":0,"level":1,"modes":[]}"#);
    let (r, code) = sp4(&["apply", "--word", "Xp", "--form", &zero]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["is_zero"], true);
    assert_eq!(r["outputs"]["form"]["m"], 2);
}

#[test]
fn apply_writes_round_trippable_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", FORM);
    let out = dir.path().join("out.json");
    let (r, code) = sp4(&["apply", "--word", "Ep,Xp", "--form", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!((r["outputs"]["form"]["ell"].clone(), r["outputs"]["form"]["m"].clone()), (4.into(), 3.into()));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, r["outputs"]["form"]);
    // Re-applying the identity word reproduces the file exactly.
    let (again, _) = sp4(&["apply", "--word", "", "--form", out.to_str().unwrap()]);
    assert_eq!(again["outputs"]["form"], written);
}

#[test]
fn holomorphy_and_mstar() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", FORM);
    let (r, code) = sp4(&["holo-test", "--form", &f]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["holomorphic"], false);
    assert_eq!(r["outputs"]["consistent"], true);
    let (r, code) = sp4(&["mstar-test", "--form", &f]);
    assert_eq!(code, 0);
    assert!(r["outputs"]["member"].is_boolean());
    let g = write(dir.path(), "g.json", &FORM.replace(r#""ell":3"#, r#""ell":4"#));
    assert_eq!(sp4(&["mstar-test", "--form", &g]).1, 2);
}

#[test]
fn numcheck_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", FORM);
    for x in ["Xp", "Xm", "P1p", "P1m", "P0p", "P0m", "Np", "Nm"] {
        let (r, code) = sp4(&["numcheck", "--form", &f, "--x", x, "--point", "0.1+1.1i,0.2+0.3i,-0.3+0.9i"]);
        assert_eq!(code, 0, "{x}: {r}");
        assert!(r["outputs"]["residual"].as_f64().unwrap() < 1e-5);
    }
    assert_eq!(sp4(&["numcheck", "--form", &f, "--x", "Z", "--point", "1i,0,1i"]).1, 2);
    assert_eq!(sp4(&["numcheck", "--form", &f, "--x", "Xp", "--point", "1i,2i,1i"]).1, 2);
}

#[test]
fn dims_with_unresolved_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(
        dir.path(),
        "dims.json",
        r#"{"dims":[{"ell":2,"m":2,"dim":3,"kind":"S"},{"ell":2,"m":0,"dim":0,"kind":"S"},{"ell":4,"m":0,"dim":0,"kind":"S"}]}"#,
    );
    let (r, code) = sp4(&["dims", "--target", "4,0", "--dimtable", &t]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["total"], 3);
    let (r, _) = sp4(&["dims", "--target", "4,0", "--dimtable", &t, "--cap", "0"]);
    assert_eq!(r["outputs"]["total"], 0);
    let (r, _) = sp4(&["dims", "--target", "4,0", "--dimtable", &t, "--noncusp"]);
    assert!(r["outputs"]["total"].is_null());
    assert!(!r["outputs"]["unresolved"].as_array().unwrap().is_empty());
}

#[test]
fn selftest_small_passes() {
    let (r, code) = sp4(&["selftest", "--seed", "3", "--size", "small"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["outputs"]["passed"], true);
}
