// cargo run --release --example socle_equivalence

use wsa::field::{Field, FiniteField};
use wsa::isocheck::{iso_search, socle_equivalent, DEFAULT_BUDGET};
use wsa::presentation::family_a;
use wsa::rewrite::quotient_algebra;

fn main() -> wsa::Result<()> {
    for q in [2u64, 3] {
        let f = FiniteField::gf(q);
        let base = quotient_algebra(&family_a(&f, 2, &1, &0)?, 40)?;
        for b in f.elements().unwrap() {
            let a = quotient_algebra(&family_a(&f, 2, &1, &b)?, 40)?;
            let iso = serde_json::to_value(iso_search(&a, &base, DEFAULT_BUDGET)?).unwrap();
            let soc = serde_json::to_value(socle_equivalent(&a, &base, DEFAULT_BUDGET)?).unwrap();
            println!("GF({q}) A(2,1,{}): iso {}, mod socle {}", f.format(&b), iso["result"], soc["result"]);
        }
    }
    Ok(())
}
