//! Values computed once and frozen; a change here means the engine changed.

use wsa::homology::{simple_module, syzygy_orbit, verify_bimodule_period4};
use wsa::isocheck::{iso_search, IsoVerdict, DEFAULT_BUDGET};
use wsa::rewrite::radical_socle;
use wsa::suites::load;

#[test]
fn disc_structure() {
    let a = load("disc_2_2").unwrap().algebra;
    assert_eq!(a.cartan_matrix(), vec![vec![4, 4, 6, 6], vec![4, 4, 6, 6], vec![6, 6, 12, 12], vec![6, 6, 12, 12]]);
    let r = radical_socle(&a);
    assert_eq!(r.layer_dims(), vec![4, 6, 8, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 4]);
    assert_eq!(r.socle_dims(), vec![1, 1, 1, 1]);
}

#[test]
fn disc_simple_orbits() {
    let a = load("disc_2_2").unwrap().algebra;
    let want = [[19, 17, 19, 1], [19, 17, 19, 1], [35, 21, 35, 1], [35, 21, 35, 1]];
    for (v, w) in want.iter().enumerate() {
        let dims: Vec<usize> = syzygy_orbit(&a, &simple_module(&a, v), 4).iter().map(|s| s.dimension).collect();
        assert_eq!(dims, w.to_vec(), "S{}", v + 1);
    }
}

#[test]
fn disc_bimodule_ranks() {
    let b = load("disc_2_2").unwrap();
    let r = verify_bimodule_period4(b.surface.as_ref().unwrap(), &b.algebra).unwrap();
    assert!(r.confirmed());
    assert_eq!(r.dims["P0"], 3392);
    assert_eq!(r.dims["P1"], 5472);
    assert_eq!(r.dims["P2"], 5472);
    assert_eq!(r.dims["P3"], 3392);
    assert_eq!(r.dims["Omega4"], 112);
}

#[test]
fn q2a_basis_words() {
    let a = load("Q2A_2_1").unwrap().algebra;
    assert_eq!(a.cartan_matrix(), vec![vec![8, 4], vec![4, 4]]);
    assert_eq!(radical_socle(&a).layer_dims(), vec![2, 3, 4, 3, 3, 3, 2]);
    assert_eq!(a.labels[19], "gamma*beta*gamma*beta");
}

#[test]
fn not_iso_certificates_are_stable() {
    let x = load("A_2_1_0").unwrap().algebra;
    let y = load("A_2_1_1").unwrap().algebra;
    let IsoVerdict::NotIso { certificate, .. } = iso_search(&x, &y, DEFAULT_BUDGET).unwrap() else {
        panic!("expected NOT-ISO");
    };
    assert_eq!(certificate.prune_log_sha256, "60b862bf6abdf2e9e32daaf5010954d8290949b1cc3c441886b0696254a057c9");
}
