// cargo run --example field_arithmetic

use wsa::field::{nth_roots, Field, FieldSpec, FiniteField};

fn main() {
    let f = FiniteField::new(&FieldSpec::parse_short("GF(8)").unwrap()).unwrap();
    println!("GF(8) modulus (constant term first): {:?}", f.modulus());
    let elems = f.elements().unwrap();
    for x in &elems[1..] {
        let inv = f.inv(x).unwrap();
        println!("{:>9} * {:<9} = {}", f.format(x), f.format(&inv), f.format(&f.mul(x, &inv)));
    }

    // every element of a field of characteristic 2 has exactly one square root
    for x in &elems {
        let r = nth_roots(&f, x, 2);
        assert_eq!(r.len(), 1);
    }

    let g = FiniteField::gf(4);
    let w = g.parse("w").unwrap();
    println!("in GF(4): w^2 = {}, w^3 = {}", g.format(&g.pow(&w, 2)), g.format(&g.pow(&w, 3)));
    // cubes of nonzero elements are 1, so b^9 = c^9 for all b, c != 0
    assert!(g.elements().unwrap()[1..].iter().all(|b| g.is_one(&g.pow(b, 9))));
}
