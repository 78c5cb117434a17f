use std::path::PathBuf;

use quadgerm::germ::{deformation_oracle, quadratic_cone, OracleConfig};
use quadgerm::grouprep::{check_representation, parse_presentation, parse_representation, Representation};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn load(pres: &str, rep: &str) -> Representation {
    let p = parse_presentation(&fixture(pres)).unwrap();
    parse_representation(&fixture(rep), &p).unwrap()
}

fn assert_agreement(rep: &Representation, order: usize, samples: usize) {
    let report = deformation_oracle(rep, &OracleConfig { order, samples, seed: 0 }).unwrap();
    let bad: Vec<_> = report.entries.iter().filter(|e| !e.agrees).take(3).collect();
    assert!(bad.is_empty(), "disagreements at order {order}: {bad:?}");
}

#[test]
fn torus_agrees_through_order_four() {
    let rep = load("z2.pres", "trivial_sl2_2gen.rep");
    assert_agreement(&rep, 4, 300);
}

#[test]
fn genus_two_agrees_at_order_three() {
    let rep = load("genus2.pres", "trivial_sl2_4gen.rep");
    let cone = quadratic_cone(&rep).unwrap();
    assert_eq!(cone.variables.len(), 12);
    assert_eq!(cone.relations.len(), 3);
    assert_agreement(&rep, 3, 150);
}

#[test]
fn finite_groups_agree_through_order_four() {
    let z2 = load("z2_cyclic.pres", "z2_diag_gl2.rep");
    assert_eq!(check_representation(&z2, Some(100)).image_order, Some(2));
    assert_agreement(&z2, 4, 50);
    let s3 = load("s3.pres", "s3_perm_gl3.rep");
    assert_eq!(check_representation(&s3, Some(100)).image_order, Some(6));
    assert_agreement(&s3, 4, 60);
}

#[test]
fn free_group_agrees() {
    let rep = load("free2.pres", "trivial_sl2_2gen.rep");
    assert_agreement(&rep, 4, 100);
}

#[test]
fn heisenberg_disagrees() {
    let rep = load("heisenberg.pres", "trivial_sl2_3gen.rep");
    let report = deformation_oracle(&rep, &OracleConfig { order: 3, samples: 100, seed: 0 }).unwrap();
    assert!(report.disagreements > 0);
}
