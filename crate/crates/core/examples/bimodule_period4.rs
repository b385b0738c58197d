// cargo run --release --example bimodule_period4 [q]

use wsa::field::FiniteField;
use wsa::homology::verify_bimodule_period4;
use wsa::presentation::{disc_2_2, two_vertex, SurfaceData};
use wsa::rewrite::quotient_algebra;

fn check(name: &str, f: &FiniteField, sd: &SurfaceData<FiniteField>) -> wsa::Result<()> {
    let a = quotient_algebra(&sd.gabriel_presentation(f, &sd.weighted_surface_relations(f))?, 40)?;
    let t = std::time::Instant::now();
    let r = verify_bimodule_period4(sd, &a)?;
    println!("{name}: dim {}, {:?}", r.dimension, r.dims);
    for c in &r.checks {
        println!("  [{}] {} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("  {} in {:.2?}", r.verdict, t.elapsed());
    Ok(())
}

fn main() -> wsa::Result<()> {
    let q: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let f = FiniteField::gf(q);
    let one = 1;
    check("two_vertex(2,2)", &f, &two_vertex(&f, 2, 2, &one, &one, &one)?)?;
    check("disc_2_2", &f, &disc_2_2(&f, &one, &one, &0)?)?;
    Ok(())
}
