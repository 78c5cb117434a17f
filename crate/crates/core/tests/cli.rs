use quadgerm::cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("quadgerm").chain(args.iter().copied()).map(String::from);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, _) = call(&a);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn cone_on_z2() {
    let (code, v) = json(&["cone", &fixture("z2.pres"), &fixture("trivial_sl2_2gen.rep")]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "cone");
    assert_eq!(v["relations"].as_array().unwrap().len(), 3);
}

#[test]
fn free_group_is_smooth() {
    let (code, out, _) = call(&["cone", &fixture("free2.pres"), &fixture("trivial_sl2_2gen.rep")]);
    assert_eq!(code, 0);
    assert!(out.contains("smooth"), "{out}");
}

#[test]
fn bad_representation_is_a_validation_error() {
    let (code, _, err) = call(&["cone", &fixture("z2_cyclic.pres"), &fixture("z2_bad_gl2.rep")]);
    assert_eq!(code, 2);
    assert!(err.contains("r1"), "{err}");
}

#[test]
fn heisenberg_disagrees() {
    let (code, v) = json(&["oracle", &fixture("heisenberg.pres"), &fixture("trivial_sl2_3gen.rep"), "--samples", "30"]);
    assert_eq!(code, 3);
    assert!(v["disagreements"].as_u64().unwrap() > 0);
}

#[test]
fn braid_arrangement_report() {
    let (code, v) = json(&["arrangement", &fixture("braid.arr"), "--N", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["b1_zero"]["2"], true);
    assert_eq!(v["b1_zero"]["3"], false);
    assert_eq!(v["bounds"]["3"], 10);
    assert_eq!(v["beta"], 1);
}

#[test]
fn repeated_line_rejected() {
    assert_eq!(call(&["arrangement", &fixture("repeated.arr")]).0, 2);
}

#[test]
fn dgla_commands() {
    let (code, v) = json(&["dgla", "truncate", &fixture("toy_truncation.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ideal_dim"], 4);
    assert_eq!(call(&["dgla", "reduce", &fixture("impure_q.json")]).0, 2);
    assert_eq!(call(&["dgla", "check", &fixture("jacobi_corrupt.json")]).0, 2);
    assert_eq!(call(&["dgla", "reduce", &fixture("toy_truncation.json"), "--order", "3"]).0, 0);
}

#[test]
fn cones_commands() {
    assert_eq!(call(&["cones", "realify", &fixture("square.cone.json")]).0, 0);
    assert_eq!(call(&["cones", "halve", &fixture("weight2.cone.json")]).0, 0);
    assert_eq!(call(&["cones", "check", &fixture("inhomogeneous.cone.json")]).0, 2);
}

#[test]
fn mhs_commands() {
    let (code, v) = json(&["mhs", "split", &fixture("elliptic.mhs.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(call(&["mhs", "split", &fixture("not_mhs.mhs.json")]).0, 2);
    assert_eq!(call(&["mhs", "dec", &fixture("one_arrow.complex.json")]).0, 0);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["oracle", &fixture("z2.pres"), &fixture("trivial_sl2_2gen.rep"), "--order", "2"]).0, 1);
    assert_eq!(call(&["cone", "/nonexistent.pres", "/nonexistent.rep"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
}

#[test]
fn json_is_deterministic() {
    let args = ["oracle", &fixture("z2.pres"), &fixture("trivial_sl2_2gen.rep"), "--samples", "40", "--seed", "7", "--json"];
    assert_eq!(call(&args).1, call(&args).1);
    let args = ["arrangement", &fixture("braid.arr"), "--json"];
    assert_eq!(call(&args).1, call(&args).1);
}
