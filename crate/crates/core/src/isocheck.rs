//! Isomorphism search between basic algebras over a finite field.
//!
//! A candidate isomorphism sends `e_i` to `f_{sigma(i)}` and each arrow to
//! an element of `f_{sigma(s)} rad(B) f_{sigma(t)}`. Images are fixed one
//! radical layer at a time: layer one is enumerated over invertible leading
//! blocks, later layers are the solutions of a linear system (relations of
//! `A` must vanish modulo the next radical power), taken modulo the directions
//! reachable by conjugating with `1 + r`, `r` diagonal.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, solve_affine, to_dense, Echelon, Row};
use crate::presentation::{AlgebraElement, Path};
use crate::rewrite::{idempotent_algebra, presentation_of, quotient_by_socle, radical_socle, solve_in_span, FiniteDimAlgebra};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A vertex bijection with arrow images in basis coordinates of the target.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismCandidate {
    pub sigma: Vec<usize>,
    /// arrow names of the source, in order
    pub arrows: Vec<String>,
    /// `images[a]` = coordinates of the image of arrow `a`
    pub images: Vec<Vec<String>>,
}

/// Counters collected during a search.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub permutations_total: u64,
    pub permutations_compatible: u64,
    pub leading_assignments: u64,
    pub nodes: u64,
    /// pruned nodes by radical level
    pub pruned: BTreeMap<usize, u64>,
    /// dimensions removed by conjugation, summed over nodes
    pub conjugation_reduced: u64,
}

/// Exhaustion certificate for a negative answer.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub reason: String,
    pub search_space: String,
    pub prune_log_sha256: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum IsoVerdict {
    Iso { witness: MorphismCandidate, stats: SearchStats },
    NotIso { certificate: Certificate, stats: SearchStats },
    Inconclusive { reason: String, stats: SearchStats },
}

impl IsoVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso { .. } => "ISO",
            IsoVerdict::NotIso { .. } => "NOT-ISO",
            IsoVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso { .. })
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIso { .. })
    }

    /// 0 ISO, 1 NOT-ISO, 4 INCONCLUSIVE.
    pub fn exit_code(&self) -> i32 {
        match self {
            IsoVerdict::Iso { .. } => 0,
            IsoVerdict::NotIso { .. } => 1,
            IsoVerdict::Inconclusive { .. } => 4,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            IsoVerdict::Iso { stats, .. } | IsoVerdict::NotIso { stats, .. } | IsoVerdict::Inconclusive { stats, .. } => stats,
        }
    }
}

/// `A` on a minimal generating set, with its relations and normal words.
pub struct Presented<F: Field> {
    pub alg: FiniteDimAlgebra<F>,
    pub relations: Vec<AlgebraElement<F::Elem>>,
    pub words: Vec<Path>,
}

/// Re-chooses arrows independent modulo `rad^2` and computes a presentation.
pub fn present<F: Field>(a: &FiniteDimAlgebra<F>) -> Result<Presented<F>> {
    let all: Vec<usize> = (0..a.num_vertices()).collect();
    let alg = if all.is_empty() { a.clone() } else { idempotent_algebra(a, &all)? };
    let (p, words) = presentation_of(&alg)?;
    Ok(Presented { alg, relations: p.generators, words })
}

/// Radical layers of `B` split by vertex pairs.
struct Layers<F: Field> {
    /// echelon of `rad^k`, `k = 0..=loewy`
    rad: Vec<Echelon<F>>,
    loewy: usize,
    /// `basis[(u, v)][k]`: vectors of `e_u rad^k e_v` independent modulo `rad^(k+1)`
    basis: BTreeMap<(usize, usize), Vec<Vec<Row<F>>>>,
}

fn layers<F: Field>(b: &FiniteDimAlgebra<F>) -> Layers<F> {
    let f = &b.field;
    let n = b.dim();
    let rd = radical_socle(b);
    let loewy = rd.loewy_length();
    let mut rad = Vec::new();
    for k in 0..=loewy {
        let mut e = Echelon::new(f, n);
        if k == 0 {
            for i in 0..n {
                e.insert(&b.basis_vec(i));
            }
        } else if let Some(rows) = rd.rad_powers.get(k) {
            for r in rows {
                e.insert(r);
            }
        }
        rad.push(e);
    }
    let nv = b.num_vertices();
    let mut basis = BTreeMap::new();
    for u in 0..nv {
        for v in 0..nv {
            let idx: Vec<usize> = (0..n).filter(|&i| b.src[i] == u && b.tgt[i] == v).collect();
            let project = |r: &Row<F>| -> Row<F> {
                let mut out = vec![f.zero(); n];
                for &i in &idx {
                    out[i] = r[i].clone();
                }
                out
            };
            let mut per_k = vec![Vec::new(); loewy + 1];
            for k in 1..loewy {
                let mut e = Echelon::new(f, n);
                if k + 1 <= loewy {
                    for r in rad[k + 1].rows() {
                        e.insert(&project(r));
                    }
                }
                for r in rad[k].rows() {
                    let p = project(r);
                    if e.insert(&p).is_some() {
                        per_k[k].push(p);
                    }
                }
            }
            basis.insert((u, v), per_k);
        }
    }
    Layers { rad, loewy, basis }
}

/// `dim e_i rad^k e_j` for all `k`, per vertex pair.
fn layer_profile<F: Field>(a: &FiniteDimAlgebra<F>) -> Vec<Vec<Vec<usize>>> {
    let l = layers(a);
    let nv = a.num_vertices();
    (0..nv).map(|u| (0..nv).map(|v| l.basis[&(u, v)].iter().map(|x| x.len()).collect()).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Product of arrow images along a path.
fn path_image<F: Field>(b: &FiniteDimAlgebra<F>, sigma: &[usize], x: &[Row<F>], p: &Path) -> Row<F> {
    let mut acc = b.basis_vec(b.idempotents[sigma[p.source]]);
    for &a in &p.arrows {
        acc = b.mul(&acc, &x[a]);
    }
    acc
}

fn rel_image<F: Field>(b: &FiniteDimAlgebra<F>, sigma: &[usize], x: &[Row<F>], r: &AlgebraElement<F::Elem>) -> Row<F> {
    let f = &b.field;
    let mut out = b.zero_vec();
    for (p, c) in &r.terms {
        let v = path_image(b, sigma, x, p);
        for (o, y) in out.iter_mut().zip(&v) {
            *o = f.add_mul(o, c, y);
        }
    }
    out
}

struct Search<'a, F: Field> {
    a: &'a Presented<F>,
    b: &'a FiniteDimAlgebra<F>,
    lay: Layers<F>,
    elems: Vec<F::Elem>,
    budget: u64,
    stats: SearchStats,
    log: Sha256,
    exhausted: bool,
}

/// Enumerates `q^k` coefficient vectors.
fn for_each_vector<E: Clone>(elems: &[E], k: usize, mut visit: impl FnMut(&[E]) -> bool) {
    let q = elems.len();
    let mut idx = vec![0usize; k];
    loop {
        let v: Vec<E> = idx.iter().map(|&i| elems[i].clone()).collect();
        if !visit(&v) {
            return;
        }
        let mut p = 0;
        loop {
            if p == k {
                return;
            }
            idx[p] += 1;
            if idx[p] < q {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

impl<'a, F: Field> Search<'a, F> {
    fn log(&mut self, line: String) {
        self.log.update(line.as_bytes());
        self.log.update(b"\n");
    }

    fn prune(&mut self, level: usize) {
        *self.stats.pruned.entry(level).or_insert(0) += 1;
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn arrow_st(&self, a: usize) -> (usize, usize) {
        let ar = &self.a.alg.quiver.arrows[a];
        (ar.source, ar.target)
    }

    /// All relations vanish modulo `rad^(level + m_r)`.
    fn check_level(&self, sigma: &[usize], x: &[Row<F>], level: usize) -> bool {
        let f = &self.b.field;
        self.a.relations.iter().all(|r| {
            let j = (level + r.min_len()).min(self.lay.loewy);
            let v = rel_image(self.b, sigma, x, r);
            self.lay.rad[j].reduce(&v).iter().all(|c| f.is_zero(c))
        })
    }

    fn run_sigma(&mut self, sigma: &[usize]) -> Option<Vec<Row<F>>> {
        let f = self.b.field.clone();
        let na = self.a.alg.quiver.num_arrows();
        // group arrows by vertex pair; each group needs an invertible leading block
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for a in 0..na {
            groups.entry(self.arrow_st(a)).or_default().push(a);
        }
        let mut blocks: Vec<(Vec<usize>, Vec<Row<F>>)> = Vec::new();
        for ((s, t), arrows) in &groups {
            let l1 = self.lay.basis[&(sigma[*s], sigma[*t])].get(1).cloned().unwrap_or_default();
            if l1.len() != arrows.len() {
                return None;
            }
            blocks.push((arrows.clone(), l1));
        }
        // enumerate invertible blocks, pair by pair
        let block_choices: Vec<Vec<Vec<Row<F>>>> = blocks
            .iter()
            .map(|(arrows, l1)| {
                let p = arrows.len();
                let mut out = Vec::new();
                for_each_vector(&self.elems, p * p, |v| {
                    let m: Vec<Row<F>> = v.chunks(p).map(|c| c.to_vec()).collect();
                    if rank(&f, &m, p) == p {
                        // arrow i gets sum_j m[i][j] l1[j]
                        out.push(
                            m.iter()
                                .map(|row| {
                                    let mut img = self.b.zero_vec();
                                    for (c, l) in row.iter().zip(l1) {
                                        for (o, y) in img.iter_mut().zip(l) {
                                            *o = f.add_mul(o, c, y);
                                        }
                                    }
                                    img
                                })
                                .collect(),
                        );
                    }
                    true
                });
                out
            })
            .collect();
        let total: usize = block_choices.iter().map(|c| c.len()).product();
        for code in 0..total {
            let mut x = vec![self.b.zero_vec(); na];
            let mut c = code;
            for ((arrows, _), choices) in blocks.iter().zip(&block_choices) {
                let pick = &choices[c % choices.len()];
                c /= choices.len();
                for (a, img) in arrows.iter().zip(pick) {
                    x[*a] = img.clone();
                }
            }
            self.stats.leading_assignments += 1;
            if !self.tick() {
                return None;
            }
            if !self.check_level(sigma, &x, 1) {
                self.prune(1);
                self.log(format!("sigma={sigma:?} leading={code} level=1"));
                continue;
            }
            if let Some(found) = self.descend(sigma, x, 1) {
                return Some(found);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }

    /// `x` is fixed modulo `rad^(k+1)`; fix layer `k+1`.
    fn descend(&mut self, sigma: &[usize], x: Vec<Row<F>>, k: usize) -> Option<Vec<Row<F>>> {
        if k + 1 >= self.lay.loewy {
            return Some(x);
        }
        let f = self.b.field.clone();
        let b = self.b;
        let na = x.len();
        let lvl = k + 1;
        // unknowns: (arrow, layer-(k+1) basis vector)
        let mut vars: Vec<(usize, Row<F>)> = Vec::new();
        for a in 0..na {
            let (s, t) = self.arrow_st(a);
            for l in self.lay.basis[&(sigma[s], sigma[t])].get(lvl).cloned().unwrap_or_default() {
                vars.push((a, l));
            }
        }
        let nvars = vars.len();
        // linear system: residues modulo rad^(lvl + m_r)
        let mut eqs: Vec<Row<F>> = Vec::new();
        let mut rhs: Vec<F::Elem> = Vec::new();
        for r in &self.a.relations {
            let j = (lvl + r.min_len()).min(self.lay.loewy);
            let red = &self.lay.rad[j];
            let base = red.reduce(&rel_image(b, sigma, &x, r));
            let mut cols: Vec<Row<F>> = vec![b.zero_vec(); nvars];
            for (p, c) in &r.terms {
                for pos in 0..p.len() {
                    let arrow = p.arrows[pos];
                    let pre = Path { source: p.source, arrows: p.arrows[..pos].to_vec() };
                    let suf_src = self.a.alg.quiver.arrows[arrow].target;
                    let suf = Path { source: suf_src, arrows: p.arrows[pos + 1..].to_vec() };
                    let pv = path_image(b, sigma, &x, &pre);
                    let sv = path_image(b, sigma, &x, &suf);
                    for (vi, (va, l)) in vars.iter().enumerate() {
                        if *va != arrow {
                            continue;
                        }
                        let term = b.mul(&b.mul(&pv, l), &sv);
                        for (o, y) in cols[vi].iter_mut().zip(&term) {
                            *o = f.add_mul(o, c, y);
                        }
                    }
                }
            }
            let cols: Vec<Row<F>> = cols.iter().map(|c| red.reduce(c)).collect();
            for coord in 0..b.dim() {
                let row: Row<F> = cols.iter().map(|c| c[coord].clone()).collect();
                if row.iter().all(|c| f.is_zero(c)) && f.is_zero(&base[coord]) {
                    continue;
                }
                eqs.push(row);
                rhs.push(f.neg(&base[coord]));
            }
        }
        let Some((part, homog)) = solve_affine(&f, &eqs, &rhs, nvars) else {
            self.prune(lvl);
            self.log(format!("sigma={sigma:?} level={lvl} inconsistent"));
            return None;
        };
        // conjugation directions: x_a r_t - r_s x_a for diagonal r of layer k
        let mut conj = Echelon::new(&f, nvars);
        for u in 0..b.num_vertices() {
            let rk = self.lay.basis[&(u, u)].get(k).cloned().unwrap_or_default();
            for r in rk {
                let mut w = Vec::with_capacity(nvars);
                let mut ok = true;
                for a in 0..na {
                    let (s, t) = self.arrow_st(a);
                    let mut v = b.zero_vec();
                    if sigma[t] == u {
                        v = b.mul(&x[a], &r);
                    }
                    if sigma[s] == u {
                        let y = b.mul(&r, &x[a]);
                        for (o, z) in v.iter_mut().zip(&y) {
                            *o = f.sub(o, z);
                        }
                    }
                    // coordinates in the layer basis of the pair, modulo rad^(lvl+1)
                    let lb = self.lay.basis[&(sigma[s], sigma[t])].get(lvl).cloned().unwrap_or_default();
                    let mut span: Vec<Row<F>> = lb.clone();
                    if lvl + 1 <= self.lay.loewy {
                        span.extend(self.lay.rad[lvl + 1].rows().iter().cloned());
                    }
                    match solve_in_span(&f, &span, &v) {
                        Some(z) => w.extend(z[..lb.len()].iter().cloned()),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    conj.insert(&w);
                }
            }
        }
        let before = conj.rank();
        let mut free: Vec<Row<F>> = Vec::new();
        for h in &homog {
            if conj.insert(h).is_some() {
                free.push(h.clone());
            }
        }
        self.stats.conjugation_reduced += (homog.len() - free.len()) as u64;
        let _ = before;
        let mut result = None;
        let elems = self.elems.clone();
        for_each_vector(&elems, free.len(), |t| {
            if !self.tick() {
                return false;
            }
            let mut z = part.clone();
            for (c, h) in t.iter().zip(&free) {
                for (o, y) in z.iter_mut().zip(h) {
                    *o = f.add_mul(o, c, y);
                }
            }
            let mut nx = x.clone();
            for ((a, l), c) in vars.iter().zip(&z) {
                for (o, y) in nx[*a].iter_mut().zip(l) {
                    *o = f.add_mul(o, c, y);
                }
            }
            if let Some(found) = self.descend(sigma, nx, lvl) {
                result = Some(found);
                return false;
            }
            !self.exhausted
        });
        result
    }
}

fn candidate<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, sigma: Vec<usize>, x: &[Row<F>]) -> MorphismCandidate {
    let f = &b.field;
    MorphismCandidate {
        sigma,
        arrows: a.quiver.arrows.iter().map(|x| x.name.clone()).collect(),
        images: x.iter().map(|v| v.iter().map(|c| f.format(c)).collect()).collect(),
    }
}

impl MorphismCandidate {
    /// A candidate from explicit images.
    pub fn new<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, sigma: Vec<usize>, images: &[Row<F>]) -> Self {
        candidate(a, b, sigma, images)
    }

    /// Arrow images parsed back into field elements.
    pub fn image_rows<F: Field>(&self, f: &F) -> Result<Vec<Row<F>>> {
        self.images.iter().map(|v| v.iter().map(|s| f.parse(s)).collect()).collect()
    }
}

/// Invariants that must agree for isomorphic algebras; `Some(reason)` on mismatch.
fn invariant_mismatch<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>) -> Option<String> {
    if a.dim() != b.dim() {
        return Some(format!("dimensions {} and {}", a.dim(), b.dim()));
    }
    if a.num_vertices() != b.num_vertices() {
        return Some(format!("{} and {} vertices", a.num_vertices(), b.num_vertices()));
    }
    let ra = radical_socle(a);
    let rb = radical_socle(b);
    if ra.layer_dims() != rb.layer_dims() {
        return Some(format!("radical layers {:?} and {:?}", ra.layer_dims(), rb.layer_dims()));
    }
    let (mut sa, mut sb) = (ra.socle_dims(), rb.socle_dims());
    sa.sort();
    sb.sort();
    if sa != sb {
        return Some(format!("socle dimensions {sa:?} and {sb:?}"));
    }
    None
}

/// Searches for an isomorphism `A -> B` over a finite field.
pub fn iso_search<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, budget: u64) -> Result<IsoVerdict> {
    let f = &a.field;
    let elems = f.elements().ok_or_else(|| Error::input("isomorphism search needs a finite field"))?;
    if f.spec() != b.field.spec() {
        return Err(Error::input("algebras are over different fields"));
    }
    let mut stats = SearchStats { permutations_total: factorial(a.num_vertices()), ..Default::default() };
    if let Some(reason) = invariant_mismatch(a, b) {
        let mut h = Sha256::new();
        h.update(reason.as_bytes());
        return Ok(IsoVerdict::NotIso {
            certificate: Certificate {
                reason: format!("invariant mismatch: {reason}"),
                search_space: "empty".into(),
                prune_log_sha256: hex::encode(h.finalize()),
            },
            stats,
        });
    }
    let pa = present(a)?;
    let nv = a.num_vertices();
    let prof_a = layer_profile(&pa.alg);
    let prof_b = layer_profile(b);
    let sigmas: Vec<Vec<usize>> =
        permutations(nv).into_iter().filter(|s| (0..nv).all(|i| (0..nv).all(|j| prof_a[i][j] == prof_b[s[i]][s[j]]))).collect();
    stats.permutations_compatible = sigmas.len() as u64;
    let mut search = Search { a: &pa, b, lay: layers(b), elems, budget, stats, log: Sha256::new(), exhausted: false };
    let space = format!(
        "{} of {} vertex permutations (layered Cartan profile); arrows {}; target layers up to rad^{}",
        sigmas.len(),
        factorial(nv),
        pa.alg.quiver.num_arrows(),
        search.lay.loewy
    );
    for s in &sigmas {
        search.log(format!("sigma={s:?}"));
        if let Some(x) = search.run_sigma(s) {
            let witness = candidate(&pa.alg, b, s.clone(), &x);
            if !iso_witness_check(&pa.alg, b, &witness)? {
                return Err(Error::internal("search produced a witness that fails verification"));
            }
            return Ok(IsoVerdict::Iso { witness, stats: search.stats });
        }
        if search.exhausted {
            return Ok(IsoVerdict::Inconclusive { reason: format!("node budget {budget} exhausted"), stats: search.stats });
        }
    }
    let hash = hex::encode(search.log.finalize());
    Ok(IsoVerdict::NotIso {
        certificate: Certificate { reason: "graded search space exhausted".into(), search_space: space, prune_log_sha256: hash },
        stats: search.stats,
    })
}

/// Checks a candidate independently: idempotents and arrows map into the right
/// components, the induced map on the word basis is multiplicative on every
/// pair of basis elements, and bijective.
pub fn iso_witness_check<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, cand: &MorphismCandidate) -> Result<bool> {
    let f = &a.field;
    let n = a.dim();
    if n != b.dim() || cand.sigma.len() != a.num_vertices() || cand.images.len() != a.quiver.num_arrows() {
        return Ok(false);
    }
    let mut seen = cand.sigma.clone();
    seen.sort();
    if seen != (0..b.num_vertices()).collect::<Vec<_>>() {
        return Ok(false);
    }
    let x = cand.image_rows(f)?;
    if x.iter().any(|v| v.len() != b.dim()) {
        return Ok(false);
    }
    // graded components
    for (k, ar) in a.quiver.arrows.iter().enumerate() {
        let (s, t) = (cand.sigma[ar.source], cand.sigma[ar.target]);
        if x[k].iter().enumerate().any(|(i, c)| !f.is_zero(c) && (b.src[i] != s || b.tgt[i] != t)) {
            return Ok(false);
        }
    }
    // express every basis element of A as a combination of words in the arrows
    let words = presentation_of(a)?.1;
    let word_a: Vec<Row<F>> = words.iter().map(|w| path_in(a, w)).collect();
    let word_b: Vec<Row<F>> = words.iter().map(|w| path_image(b, &cand.sigma, &x, w)).collect();
    // phi(basis_i) = sum_w C[i][w] phi(w), where basis_i = sum_w C[i][w] w
    let inv = crate::linalg::inverse(f, &word_a).ok_or_else(|| Error::internal("word images are not a basis"))?;
    // word_a rows are word coordinates; basis_i = sum_w inv[i][w] word_w
    let phi: Vec<Row<F>> = (0..n)
        .map(|i| {
            let mut out = b.zero_vec();
            for (c, wb) in inv[i].iter().zip(&word_b) {
                for (o, y) in out.iter_mut().zip(wb) {
                    *o = f.add_mul(o, c, y);
                }
            }
            out
        })
        .collect();
    if rank(f, &phi, n) != n {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = b.mul(&phi[i], &phi[j]);
            let mut rhs = b.zero_vec();
            for (k, c) in &a.mult[i][j] {
                for (o, y) in rhs.iter_mut().zip(&phi[*k]) {
                    *o = f.add_mul(o, c, y);
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A candidate from arrow images written as elements of `b`, e.g.
/// `("gamma", "gamma + [w]*gamma*alpha")`. Every arrow of `a` must appear.
pub fn candidate_from_strings<F: Field>(
    a: &FiniteDimAlgebra<F>,
    b: &FiniteDimAlgebra<F>,
    sigma: Vec<usize>,
    images: &[(&str, &str)],
) -> Result<MorphismCandidate> {
    let rows = a
        .quiver
        .arrows
        .iter()
        .map(|ar| {
            let (_, s) =
                images.iter().find(|(n, _)| *n == ar.name).ok_or_else(|| Error::input(format!("no image for arrow {}", ar.name)))?;
            b.normal_form_str(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(candidate(a, b, sigma, &rows))
}

/// The rescaling `alpha -> d^2 alpha`, `beta -> beta`, `gamma -> d^3 gamma` between
/// `Q(2A)^k(b)` and `Q(2A)^k(c)` in characteristic 2, with `d^2 = c/b`.
/// `None` unless `b, c` are nonzero and `b^(5k-6) = c^(5k-6)`.
pub fn q2a_rescaling<F: Field>(
    a: &FiniteDimAlgebra<F>,
    b: &FiniteDimAlgebra<F>,
    k: usize,
    bb: &F::Elem,
    cc: &F::Elem,
) -> Result<Option<MorphismCandidate>> {
    let f = &a.field;
    if f.is_zero(bb) || f.is_zero(cc) || f.pow(bb, 5 * k as u64 - 6) != f.pow(cc, 5 * k as u64 - 6) {
        return Ok(None);
    }
    let Some(r) = f.div(cc, bb) else {
        return Ok(None);
    };
    let elems = f.elements().ok_or_else(|| Error::input("rescaling needs a finite field"))?;
    let Some(d) = elems.into_iter().find(|d| f.mul(d, d) == r) else {
        return Ok(None);
    };
    let d2 = f.format(&f.pow(&d, 2));
    let d3 = f.format(&f.pow(&d, 3));
    let images = [("alpha", format!("[{d2}]*alpha")), ("beta", "beta".to_string()), ("gamma", format!("[{d3}]*gamma"))];
    let images: Vec<(&str, &str)> = images.iter().map(|(n, s)| (*n, s.as_str())).collect();
    candidate_from_strings(a, b, vec![0, 1], &images).map(Some)
}

/// The shift `gamma -> gamma + b gamma alpha`, `eta -> eta + b eta^2` from
/// `Q(2B)_3^t(1, b)` to `Q(2B)_3^t(1, 0)`; an isomorphism for even `t` in characteristic 2.
pub fn q2b_shift<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, bb: &F::Elem) -> Result<MorphismCandidate> {
    let p = a.field.format(bb);
    let g = format!("gamma + [{p}]*gamma*alpha");
    let e = format!("eta + [{p}]*eta^2");
    candidate_from_strings(a, b, vec![0, 1], &[("alpha", "alpha"), ("beta", "beta"), ("gamma", &g), ("eta", &e)])
}

fn path_in<F: Field>(a: &FiniteDimAlgebra<F>, p: &Path) -> Row<F> {
    let mut acc = a.basis_vec(a.idempotents[p.source]);
    for &x in &p.arrows {
        acc = a.mul(&acc, &to_dense(&a.field, &a.arrow_elems[x], a.dim()));
    }
    acc
}

/// `iso_search` on the socle quotients.
pub fn socle_equivalent<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, budget: u64) -> Result<IsoVerdict> {
    let qa = quotient_by_socle(a, &radical_socle(a));
    let qb = quotient_by_socle(b, &radical_socle(b));
    iso_search(&qa, &qb, budget)
}

/// Exhaustive search without pruning, for small instances; `None` when the
/// candidate space exceeds `limit`.
pub fn brute_force_iso<F: Field>(a: &FiniteDimAlgebra<F>, b: &FiniteDimAlgebra<F>, limit: u64) -> Result<Option<bool>> {
    let f = &a.field;
    let elems = f.elements().ok_or_else(|| Error::input("brute force needs a finite field"))?;
    if a.dim() != b.dim() || a.num_vertices() != b.num_vertices() {
        return Ok(Some(false));
    }
    let pa = present(a)?;
    let lay = layers(b);
    let nv = a.num_vertices();
    let na = pa.alg.quiver.num_arrows();
    let q = elems.len() as u64;
    for sigma in permutations(nv) {
        // full basis of f_s rad f_t per arrow
        let spaces: Vec<Vec<Row<F>>> = pa
            .alg
            .quiver
            .arrows
            .iter()
            .map(|ar| lay.basis[&(sigma[ar.source], sigma[ar.target])].iter().flatten().cloned().collect())
            .collect();
        let total_vars: usize = spaces.iter().map(|s| s.len()).sum();
        let Some(count) = q.checked_pow(total_vars as u32).filter(|&c| c <= limit) else {
            return Ok(None);
        };
        let _ = count;
        let mut found = false;
        for_each_vector(&elems, total_vars, |coef| {
            let mut x = vec![b.zero_vec(); na];
            let mut off = 0;
            for (a_idx, sp) in spaces.iter().enumerate() {
                for (c, v) in coef[off..off + sp.len()].iter().zip(sp) {
                    for (o, y) in x[a_idx].iter_mut().zip(v) {
                        *o = f.add_mul(o, c, y);
                    }
                }
                off += sp.len();
            }
            let hom = pa.relations.iter().all(|r| rel_image(b, &sigma, &x, r).iter().all(|c| f.is_zero(c)));
            if hom {
                let imgs: Vec<Row<F>> = pa.words.iter().map(|w| path_image(b, &sigma, &x, w)).collect();
                if rank(f, &imgs, b.dim()) == b.dim() {
                    found = true;
                    return false;
                }
            }
            true
        });
        if found {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// Result of `classify_family`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// parameter labels per class
    pub classes: Vec<Vec<String>>,
    /// pairs left undecided by the budget
    pub inconclusive: Vec<(String, String)>,
    pub pairs_searched: usize,
}

/// Partitions labelled algebras into isomorphism classes with pairwise search.
pub fn classify<F: Field>(items: &[(String, FiniteDimAlgebra<F>)], budget: u64) -> Result<Classification> {
    let n = items.len();
    let mut class: Vec<usize> = (0..n).collect();
    let mut inconclusive = Vec::new();
    let mut searched = 0;
    for i in 0..n {
        for j in 0..i {
            if class[j] == j && class[i] == i {
                searched += 1;
                match iso_search(&items[i].1, &items[j].1, budget)? {
                    IsoVerdict::Iso { .. } => class[i] = j,
                    IsoVerdict::NotIso { .. } => {}
                    IsoVerdict::Inconclusive { .. } => inconclusive.push((items[i].0.clone(), items[j].0.clone())),
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for i in 0..n {
        let mut r = i;
        while class[r] != r {
            r = class[r];
        }
        groups.entry(r).or_default().push(items[i].0.clone());
    }
    Ok(Classification { classes: groups.into_values().collect(), inconclusive, pairs_searched: searched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::presentation::{family_a, family_b, family_q2a, family_q2b3};
    use crate::rewrite::quotient_algebra;

    fn alg(p: crate::Result<crate::presentation::Presentation<FiniteField>>) -> FiniteDimAlgebra<FiniteField> {
        quotient_algebra(&p.unwrap(), 40).unwrap()
    }

    #[test]
    fn a2_not_isomorphic_over_gf2() {
        let f = FiniteField::gf(2);
        let a0 = alg(family_a(&f, 2, &1, &0));
        let a1 = alg(family_a(&f, 2, &1, &1));
        let v = iso_search(&a0, &a1, DEFAULT_BUDGET).unwrap();
        assert!(v.is_not_iso(), "{v:?}");
        assert!(iso_search(&a0, &a0, DEFAULT_BUDGET).unwrap().is_iso());
        assert_eq!(brute_force_iso(&a0, &a1, 1 << 16).unwrap(), Some(false));
        assert_eq!(brute_force_iso(&a1, &a1, 1 << 16).unwrap(), Some(true));
    }

    #[test]
    fn a2_collapses_over_gf3() {
        let f = FiniteField::gf(3);
        let a0 = alg(family_a(&f, 2, &1, &0));
        let a1 = alg(family_a(&f, 2, &1, &1));
        let v = iso_search(&a1, &a0, DEFAULT_BUDGET).unwrap();
        assert!(v.is_iso(), "{v:?}");
    }

    #[test]
    fn b1_cartan_forces_identity() {
        let f = FiniteField::gf(2);
        let b0 = alg(family_b(&f, 1, &1, &0));
        let b1 = alg(family_b(&f, 1, &1, &1));
        let v = iso_search(&b0, &b1, DEFAULT_BUDGET).unwrap();
        assert!(v.is_not_iso());
        assert_eq!(v.stats().permutations_compatible, 1);
        assert_eq!(brute_force_iso(&b0, &b1, 1 << 20).unwrap(), Some(false));
    }

    #[test]
    fn invariant_mismatch_is_immediate() {
        let f = FiniteField::gf(2);
        let a = alg(family_a(&f, 2, &1, &0));
        let b = alg(family_a(&f, 3, &1, &0));
        let v = iso_search(&a, &b, DEFAULT_BUDGET).unwrap();
        assert!(v.is_not_iso());
        assert_eq!(v.stats().nodes, 0);
    }

    #[test]
    fn budget_gives_inconclusive() {
        let f = FiniteField::gf(2);
        let a0 = alg(family_a(&f, 3, &1, &0));
        let a1 = alg(family_a(&f, 3, &1, &1));
        let v = iso_search(&a0, &a1, 2).unwrap();
        assert_eq!(v.label(), "INCONCLUSIVE");
        assert_eq!(v.exit_code(), 4);
    }

    #[test]
    fn q2b4_is_independent_of_b() {
        let f = FiniteField::gf(2);
        let x = alg(family_q2b3(&f, 4, &1, &0));
        let y = alg(family_q2b3(&f, 4, &1, &1));
        assert!(iso_search(&x, &y, DEFAULT_BUDGET).unwrap().is_iso());
    }

    #[test]
    fn identity_witness_and_broken_witness() {
        let f = FiniteField::gf(4);
        let a = alg(family_q2a(&f, 2, &2));
        let ids: Vec<Row<FiniteField>> = a.arrow_elems.iter().map(|e| to_dense(&f, e, a.dim())).collect();
        let c = MorphismCandidate::new(&a, &a, vec![0, 1], &ids);
        assert!(iso_witness_check(&a, &a, &c).unwrap());
        let mut bad = ids.clone();
        bad[0] = f_scale(&f, &bad[0], 2);
        let c = MorphismCandidate::new(&a, &a, vec![0, 1], &bad);
        assert!(!iso_witness_check(&a, &a, &c).unwrap());
        let c = MorphismCandidate::new(&a, &a, vec![1, 0], &ids);
        assert!(!iso_witness_check(&a, &a, &c).unwrap());
    }

    fn f_scale(f: &FiniteField, v: &Row<FiniteField>, c: u32) -> Row<FiniteField> {
        v.iter().map(|x| f.mul(x, &c)).collect()
    }

    #[test]
    fn q2a_rescaling_is_a_witness() {
        let f = FiniteField::gf(4);
        let a = alg(family_q2a(&f, 3, &1));
        let b = alg(family_q2a(&f, 3, &2));
        let h = q2a_rescaling(&a, &b, 3, &1, &2).unwrap().unwrap();
        assert!(iso_witness_check(&a, &b, &h).unwrap());
        // k = 2: b^4 = c^4 forces b = c over GF(4)
        let a2 = alg(family_q2a(&f, 2, &1));
        let b2 = alg(family_q2a(&f, 2, &2));
        assert!(q2a_rescaling(&a2, &b2, 2, &1, &2).unwrap().is_none());
    }

    #[test]
    fn q2b_shift_needs_even_t() {
        let f = FiniteField::gf(4);
        for (t, ok) in [(4, true), (6, true), (5, false)] {
            let a = alg(family_q2b3(&f, t, &1, &3));
            let b = alg(family_q2b3(&f, t, &1, &0));
            let h = q2b_shift(&a, &b, &3).unwrap();
            assert_eq!(iso_witness_check(&a, &b, &h).unwrap(), ok, "t = {t}");
        }
    }
}
