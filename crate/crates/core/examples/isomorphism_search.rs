// cargo run --release --example isomorphism_search

use wsa::field::FiniteField;
use wsa::isocheck::{brute_force_iso, iso_search, iso_witness_check, q2b_shift, IsoVerdict, DEFAULT_BUDGET};
use wsa::presentation::{family_a, family_q2b3};
use wsa::rewrite::quotient_algebra;

fn main() -> wsa::Result<()> {
    let f = FiniteField::gf(2);
    let a0 = quotient_algebra(&family_a(&f, 2, &1, &0)?, 40)?;
    let a1 = quotient_algebra(&family_a(&f, 2, &1, &1)?, 40)?;
    let v = iso_search(&a0, &a1, DEFAULT_BUDGET)?;
    println!("A(2,1,0) vs A(2,1,1):\n{}", serde_json::to_string_pretty(&v).unwrap());
    // independent confirmation on a space small enough to enumerate
    println!("brute force: {:?}", brute_force_iso(&a0, &a1, 1 << 20)?);

    let b1 = quotient_algebra(&family_q2b3(&f, 4, &1, &1)?, 40)?;
    let b0 = quotient_algebra(&family_q2b3(&f, 4, &1, &0)?, 40)?;
    if let IsoVerdict::Iso { witness, stats } = iso_search(&b1, &b0, DEFAULT_BUDGET)? {
        println!("Q(2B)_3^4: b = 1 and b = 0 are isomorphic ({} nodes)", stats.nodes);
        println!("witness sigma {:?}, checked: {}", witness.sigma, iso_witness_check(&b1, &b0, &witness)?);
    }
    // the explicit map gamma -> gamma + gamma alpha, eta -> eta + eta^2
    let h = q2b_shift(&b1, &b0, &1)?;
    println!("explicit shift is an isomorphism: {}", iso_witness_check(&b1, &b0, &h)?);
    Ok(())
}
