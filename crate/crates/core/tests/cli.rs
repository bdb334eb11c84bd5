use std::process::Command;

mod common;

use common::{fixtures, scratch};

fn lensrack(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lensrack")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fx(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

#[test]
fn rack_info_on_ex5() {
    let (code, out, _) = lensrack(&["rack-info", "-r", &fx("racks/ex5.rack")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("order 4, rank 1, quandle: yes\n"), "{out}");
}

#[test]
fn trivial_rack_gives_one() {
    for d in ["diagrams/trefoil_p3.diag", "diagrams/hopf_p2.diag", "paper/ex2_k0.diag"] {
        let (code, out, _) = lensrack(&["invariant", "-r", &fx("racks/trivial1.rack"), "-d", &fx(d), "--kind", "z"]);
        assert_eq!((code, out.as_str()), (0, "phi_Z = 1\n"));
    }
}

#[test]
fn oracle_listing_matches_search() {
    let args = ["homs", "-r", &fx("racks/dihedral3.rack"), "-d", &fx("diagrams/unknot_p3.diag"), "--list"];
    let (_, search, _) = lensrack(&args);
    let mut with_oracle = args.to_vec();
    with_oracle.push("--oracle");
    let (code, oracle, _) = lensrack(&with_oracle);
    assert_eq!(code, 0);
    assert_eq!(search, oracle);
    assert!(search.starts_with("count 9\n"));
    assert_eq!(search.lines().count(), 10);
}

#[test]
fn invariant_kinds_and_machine_output() {
    let r = fx("racks/ex5.rack");
    let d = fx("paper/ex5_k1.diag");
    let run = |kind: &str| lensrack(&["invariant", "-r", &r, "-d", &d, "--kind", kind]).1;
    assert_eq!(run("z"), "phi_Z = 16\n");
    assert_eq!(run("w"), "phi_W = 16\n");
    assert_eq!(run("sym"), "phi_Sym = 4 + 12*x^2\n");
    assert_eq!(run("wsym"), "phi_WSym = 4 + 12*x^2\n");
    let (_, machine, _) = lensrack(&["invariant", "-r", &r, "-d", &d, "--kind", "sym", "--machine"]);
    assert_eq!(machine, "# phi_Sym vars=x\n0\t4\n2\t12\n");
}

#[test]
fn output_is_repeatable() {
    let args = ["invariant", "-r", &fx("racks/ex2.rack"), "-d", &fx("paper/ex2_k0.diag"), "--kind", "w"];
    let first = lensrack(&args);
    assert_eq!(first.1, "phi_W = 12 + 10*q1\n");
    for _ in 0..3 {
        assert_eq!(lensrack(&args), first);
    }
    let (_, racks, _) = lensrack(&["enum-racks", "-n", "3", "--up-to-iso"]);
    assert!(racks.starts_with("count 6\n"));
    assert_eq!(lensrack(&["enum-racks", "-n", "3", "--up-to-iso"]).1, racks);
}

#[test]
fn exit_codes() {
    assert_eq!(lensrack(&[]).0, 2);
    assert_eq!(lensrack(&["invariant", "--kind", "q"]).0, 2);
    let bad = scratch("not_a_rack.rack", "rack 2\n1 2\n1 2\n");
    let (code, out, err) = lensrack(&["validate-rack", "-r", bad.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.contains("error:"));
    let missing = lensrack(&["homs", "-r", "/nonexistent.rack", "-d", &fx("diagrams/unknot_p1.diag")]);
    assert_eq!(missing.0, 1);
    let budget = lensrack(&["homs", "--oracle", "-r", &fx("racks/ex2.rack"), "-d", &fx("diagrams/trefoil_p3.diag")]);
    assert_eq!(budget.0, 1);
    assert_eq!(lensrack(&["enum-racks", "-n", "7"]).0, 1);
}

#[test]
fn transposed_toggle() {
    // the Example 3 matrix read column-wise is not right-distributive
    let (code, _, _) = lensrack(&["--transposed", "validate-rack", "-r", &fx("racks/ex3.rack")]);
    assert_eq!(code, 1);
    let (code, out, _) = lensrack(&["validate-rack", "--transposed", "-r", &fx("racks/ex5.rack")]);
    assert_eq!((code, out.as_str()), (0, "valid rack of order 4\n"));
}
