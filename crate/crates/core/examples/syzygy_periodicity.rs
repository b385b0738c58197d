// cargo run --release --example syzygy_periodicity

use wsa::field::FiniteField;
use wsa::homology::{period, simple_module, syzygy_orbit};
use wsa::presentation::{family_b, family_q2a, two_vertex};
use wsa::rewrite::{quotient_algebra, FiniteDimAlgebra};

fn show(name: &str, a: &FiniteDimAlgebra<FiniteField>, steps: usize) {
    for v in 0..a.num_vertices() {
        let o = syzygy_orbit(a, &simple_module(a, v), steps);
        let dims: Vec<usize> = o.iter().map(|s| s.dimension).collect();
        let p = period(&o).map_or("none".to_string(), |p| p.to_string());
        println!("{name:>12} S{}: dims {dims:?} period {p}", a.quiver.vertices[v]);
    }
}

fn main() -> wsa::Result<()> {
    let f = FiniteField::gf(2);
    show("Q(2A)^2(1)", &quotient_algebra(&family_q2a(&f, 2, &1)?, 40)?, 8);

    // the two-vertex surface: dim Omega^2(S_1) = 3 m_alpha + m_eta + 1
    for (ma, me) in [(2, 3), (3, 4)] {
        let sd = two_vertex(&f, ma, me, &1, &1, &1)?;
        let a = quotient_algebra(&sd.gabriel_presentation(&f, &sd.weighted_surface_relations(&f))?, 40)?;
        let o = syzygy_orbit(&a, &simple_module(&a, 0), 2);
        println!("two_vertex({ma},{me}): dim Omega^2(S1) = {}", o[1].dimension);
    }

    // corner algebras need not be periodic of period 4
    show("B(1,1,0)", &quotient_algebra(&family_b(&f, 1, &1, &0)?, 40)?, 6);
    show("B(2,1,0)", &quotient_algebra(&family_b(&f, 2, &1, &0)?, 40)?, 6);
    Ok(())
}
