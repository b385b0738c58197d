// cargo run --release --example idempotent_reduction

use wsa::field::FiniteField;
use wsa::isocheck::{iso_search, DEFAULT_BUDGET};
use wsa::presentation::{corner_b_config, corner_d_config, disc_2_2, family_a, family_b, family_d_split, SurfaceData};
use wsa::rewrite::{idempotent_algebra, presentation_of, quotient_algebra, FiniteDimAlgebra};

type Alg = FiniteDimAlgebra<FiniteField>;

fn surface(f: &FiniteField, sd: &SurfaceData<FiniteField>) -> wsa::Result<Alg> {
    quotient_algebra(&sd.gabriel_presentation(f, &sd.weighted_surface_relations(f))?, 40)
}

fn compare(label: &str, a: &Alg, b: &Alg) -> wsa::Result<()> {
    let v = serde_json::to_value(iso_search(a, b, DEFAULT_BUDGET)?).unwrap();
    println!("{label}: {}", v["result"]);
    Ok(())
}

fn main() -> wsa::Result<()> {
    let f = FiniteField::gf(2);
    for b in [0, 1] {
        let disc = surface(&f, &disc_2_2(&f, &1, &b, &0)?)?;
        let corner = idempotent_algebra(&disc, &[2])?;
        compare(&format!("e3 A e3 for the disc with b3 = {b}, vs A(3,1,{b})"), &corner, &quotient_algebra(&family_a(&f, 3, &1, &b)?, 40)?)?;

        let big = surface(&f, &corner_b_config(&f, 2, &1, &1, &b, &1)?)?;
        let corner = idempotent_algebra(&big, &[0, 1])?;
        compare(&format!("corner B(bi={b}) vs B(2,1,{b})"), &corner, &quotient_algebra(&family_b(&f, 2, &1, &b)?, 40)?)?;

        let big = surface(&f, &corner_d_config(&f, 2, &1, &1, &b, &1)?)?;
        let corner = idempotent_algebra(&big, &[0, 1, 2])?;
        if b == 0 {
            println!("corner D relations:");
            for r in presentation_of(&corner)?.0.display().iter().take(16) {
                println!("  {r}");
            }
        }
        // the middle loop is the composite delta*epsilon, whose square lands in the socle
        let d = quotient_algebra(&family_d_split(&f, &[b, 1, 1], &[1, 1, 1], &[1, 0, 1])?, 40)?;
        compare(&format!("corner D(b1={b}) vs D"), &corner, &d)?;
    }
    Ok(())
}
