//! Invariants on random parameters and random elements.

use proptest::prelude::*;
use wsa::field::{Field, FiniteField};
use wsa::isocheck::{iso_search, iso_witness_check, IsoVerdict, DEFAULT_BUDGET};
use wsa::presentation::{family_a, family_b, family_q2b3};
use wsa::rewrite::{quotient_algebra, radical_socle, symmetrizing_form, FiniteDimAlgebra};

fn build(p: wsa::Result<wsa::presentation::Presentation<FiniteField>>) -> FiniteDimAlgebra<FiniteField> {
    quotient_algebra(&p.unwrap(), 40).unwrap()
}

fn vector(f: &FiniteField, n: usize, seed: &[u32]) -> Vec<u32> {
    let q = f.order().unwrap() as u32;
    (0..n).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % q).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn family_dimensions_do_not_depend_on_parameters(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]), c in 1u32..7, b in 0u32..7, m in 2usize..5, r in 1usize..4) {
        let f = FiniteField::gf(q);
        let (c, b) = (c % f.order().unwrap() as u32, b % f.order().unwrap() as u32);
        prop_assume!(c != 0);
        prop_assert_eq!(build(family_a(&f, m, &c, &b)).dim(), 4 * m);
        prop_assert_eq!(build(family_b(&f, r, &c, &b)).dim(), r + 9);
    }

    #[test]
    fn trace_form_is_symmetric(seed in prop::collection::vec(0u32..1000, 1..8), b in 0u32..4) {
        let f = FiniteField::gf(4);
        let a = build(family_q2b3(&f, 4, &1, &b));
        let form = symmetrizing_form(&a, &radical_socle(&a)).unwrap();
        let x = vector(&f, a.dim(), &seed);
        let y = vector(&f, a.dim(), &seed.iter().map(|s| s + 3).collect::<Vec<_>>());
        let phi = |v: &[u32]| v.iter().zip(&form.phi).fold(0, |acc, (s, t)| f.add_mul(&acc, s, t));
        prop_assert_eq!(phi(&a.mul(&x, &y)), phi(&a.mul(&y, &x)));
    }

    #[test]
    fn multiplication_is_associative_on_random_elements(seed in prop::collection::vec(0u32..1000, 1..8)) {
        let f = FiniteField::gf(3);
        let a = build(family_b(&f, 2, &2, &1));
        let x = vector(&f, a.dim(), &seed);
        let y = vector(&f, a.dim(), &seed.iter().map(|s| s * 5 + 1).collect::<Vec<_>>());
        let z = vector(&f, a.dim(), &seed.iter().map(|s| s * 11 + 2).collect::<Vec<_>>());
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn self_search_finds_a_checked_witness(q in prop::sample::select(vec![2u64, 3, 4]), m in 2usize..4, b in 0u32..4) {
        let f = FiniteField::gf(q);
        let b = b % q as u32;
        let a = build(family_a(&f, m, &1, &b));
        match iso_search(&a, &a, DEFAULT_BUDGET).unwrap() {
            IsoVerdict::Iso { witness, .. } => prop_assert!(iso_witness_check(&a, &a, &witness).unwrap()),
            other => prop_assert!(false, "{other:?}"),
        }
    }
}
