// cargo run --release --example build_disc_algebra
//
// The disc with two triangles: quiver, relations, and the 112-dimensional algebra.

use wsa::field::FiniteField;
use wsa::presentation::disc_2_2;
use wsa::quiver::expected_dimension;
use wsa::rewrite::{quotient_algebra, quotient_by_socle, radical_socle, symmetrizing_form};

fn main() -> wsa::Result<()> {
    let f = FiniteField::gf(2);
    let sd = disc_2_2(&f, &1, &1, &0)?;
    println!("g-orbits: {:?}", sd.tq.g_orbit_strings());
    let rels = sd.weighted_surface_relations(&f);
    println!("{} relations on the full quiver", rels.generators.len());

    let p = sd.gabriel_presentation(&f, &rels)?;
    for r in p.display() {
        println!("  {r}");
    }
    let a = quotient_algebra(&p, 40)?;
    println!("dim {} (predicted {})", a.dim(), expected_dimension(&sd.tq, &sd.w));
    println!("cartan {:?}", a.cartan_matrix());

    let r = radical_socle(&a);
    println!("loewy layers {:?}", r.layer_dims());
    match symmetrizing_form(&a, &r) {
        Some(_) => println!("symmetric"),
        None => println!("no symmetrizing form"),
    }
    println!("A/soc A has dim {}", quotient_by_socle(&a, &r).dim());
    Ok(())
}
