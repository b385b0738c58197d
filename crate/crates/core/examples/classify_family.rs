// cargo run --release --example classify_family

use wsa::field::{Field, FiniteField};
use wsa::isocheck::{classify, DEFAULT_BUDGET};
use wsa::presentation::{family_q2a, family_q2b3};
use wsa::rewrite::{quotient_algebra, FiniteDimAlgebra};

fn run(label: &str, items: Vec<(String, FiniteDimAlgebra<FiniteField>)>) -> wsa::Result<()> {
    let c = classify(&items, DEFAULT_BUDGET)?;
    println!("{label}: {} classes {:?} ({} searches)", c.classes.len(), c.classes, c.pairs_searched);
    Ok(())
}

fn main() -> wsa::Result<()> {
    let f = FiniteField::gf(4);
    let all = f.elements().unwrap();
    for k in [2, 3] {
        let items =
            all.iter().map(|b| Ok((f.format(b), quotient_algebra(&family_q2a(&f, k, b)?, 40)?))).collect::<wsa::Result<Vec<_>>>()?;
        run(&format!("Q(2A)^{k}(b) over GF(4)"), items)?;
    }
    for t in [4, 5] {
        let items =
            all.iter().map(|b| Ok((f.format(b), quotient_algebra(&family_q2b3(&f, t, &1, b)?, 40)?))).collect::<wsa::Result<Vec<_>>>()?;
        run(&format!("Q(2B)_3^{t}(b) over GF(4)"), items)?;
    }
    let w = f.parse("w")?;
    let items =
        all[1..].iter().map(|b| Ok((f.format(b), quotient_algebra(&family_q2b3(&f, 3, &w, b)?, 40)?))).collect::<wsa::Result<Vec<_>>>()?;
    run("Q(2B)_3^3(w,b), b != 0", items)?;
    Ok(())
}
