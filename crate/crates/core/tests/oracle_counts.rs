//! Homomorphism counts first obtained from the brute-force oracle, frozen.

mod common;

use lensrack::{count_homomorphisms, oracle_enumerate_homomorphisms};

use common::{diagram, rack};

const FROZEN: &[(&str, &str, usize)] = &[
    ("unknot_p1", "dihedral3", 3),
    ("unknot_p2", "ex3", 9),
    ("unknot_p3", "ex3", 9),
    ("unknot_p3", "ex5", 28),
    ("fiber_unknot_p2", "ex3", 1),
    ("fiber2_unknot_p2", "ex3", 5),
    ("trefoil_p1", "ex2", 10),
    ("trefoil_p2", "dihedral3", 33),
    ("trefoil_p3", "dihedral3", 27),
    ("trefoil_p3", "ex5", 136),
    ("fiber_trefoil_p2", "ex5", 16),
    ("fiber_trefoil_p3", "dihedral3", 9),
    ("hopf_p2", "ex3", 13),
    ("hopf_p3", "ex5", 28),
    ("fiber_hopf_p2", "ex2", 16),
    ("fiber_hopf_p2", "swap2", 0),
];

#[test]
fn search_matches_frozen_oracle_counts() {
    for &(d, r, n) in FROZEN {
        let dg = diagram(&format!("diagrams/{d}.diag"));
        let rk = rack(r);
        assert_eq!(count_homomorphisms(&dg, &rk), n, "{d} x {r}");
    }
}

#[test]
fn oracle_still_agrees_with_frozen_counts() {
    for &(d, r, n) in FROZEN {
        let dg = diagram(&format!("diagrams/{d}.diag"));
        let rk = rack(r);
        if let Ok(homs) = oracle_enumerate_homomorphisms(&dg, &rk) {
            assert_eq!(homs.len(), n, "{d} x {r}");
        }
    }
}

#[test]
fn trefoil_fox_colorings_in_classical_case() {
    let t = diagram("diagrams/trefoil_p1.diag");
    let homs = oracle_enumerate_homomorphisms(&t, &rack("dihedral3")).unwrap();
    let constant = homs.iter().filter(|h| h.flattened().windows(2).all(|w| w[0] == w[1])).count();
    assert_eq!((homs.len(), constant), (9, 3));
}
