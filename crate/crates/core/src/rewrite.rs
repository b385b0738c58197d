//! Quotients `KQ/I` as concrete finite dimensional algebras, and the structure
//! computed from them (radical layers, socle, symmetrizing forms, corners).
//!
//! The quotient engine builds the right regular module of `KQ/I` on a set of
//! normal words. Each arrow acts by appending and rewriting a leading word that
//! appears as a suffix. The module is correct exactly when every generator of
//! `I` acts as zero on every normal word; a nonzero result is an ideal element
//! in normal form and becomes a new rewriting rule.

use std::collections::{BTreeMap, HashMap};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{to_dense, Echelon, Row, Sparse};
use crate::presentation::{AlgebraElement, Path, Presentation};
use crate::quiver::Quiver;

/// Upper bound on the number of normal words tracked at one truncation level.
pub const MAX_WORDS: usize = 400_000;

fn sparse_add<F: Field>(f: &F, acc: &mut BTreeMap<usize, F::Elem>, c: &F::Elem, v: &Sparse<F::Elem>) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(|| f.zero());
        *e = f.add_mul(e, c, x);
    }
}

fn sparse_finish<F: Field>(f: &F, acc: BTreeMap<usize, F::Elem>) -> Sparse<F::Elem> {
    acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
}

/// Leading word -> tail (`L = sum c_t t` modulo the ideal).
#[derive(Clone, Debug)]
struct Rules<E> {
    lead: HashMap<Vec<usize>, Vec<(Path, E)>>,
    max_len: usize,
}

impl<E: Clone> Rules<E> {
    /// Length of the shortest suffix of `w` that is a leading word.
    fn suffix_match(&self, w: &[usize]) -> Option<usize> {
        (1..=self.max_len.min(w.len())).find(|&len| self.lead.contains_key(&w[w.len() - len..]))
    }

    /// Echelonises `elems` with the largest word as pivot and records the rules.
    fn add_elements<F: Field<Elem = E>>(&mut self, f: &F, elems: &[AlgebraElement<E>]) -> Result<usize> {
        let mut words: Vec<Path> = elems.iter().flat_map(|e| e.terms.keys().cloned()).collect();
        words.sort();
        words.dedup();
        words.reverse();
        let col: HashMap<&Path, usize> = words.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ech = Echelon::new(f, words.len());
        for e in elems {
            let mut row = vec![f.zero(); words.len()];
            for (p, c) in &e.terms {
                row[col[p]] = c.clone();
            }
            ech.insert(&row);
        }
        let mut added = 0;
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            let lead = &words[p];
            if lead.is_empty() {
                return Err(Error::input("an ideal generator has a stationary leading path; the ideal is not admissible"));
            }
            let tail: Vec<(Path, E)> =
                row.iter().enumerate().filter(|(j, x)| *j != p && !f.is_zero(x)).map(|(j, x)| (words[j].clone(), f.neg(x))).collect();
            if !self.lead.contains_key(&lead.arrows) {
                self.max_len = self.max_len.max(lead.len());
                self.lead.insert(lead.arrows.clone(), tail);
                added += 1;
            }
        }
        Ok(added)
    }
}

/// Right action of paths on the span of a prefix closed set of normal words.
struct Engine<'a, F: Field> {
    f: &'a F,
    q: &'a Quiver,
    rules: &'a Rules<F::Elem>,
    words: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `None`: the computation left the truncation
    memo: HashMap<(usize, usize), Option<Sparse<F::Elem>>>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(f: &'a F, q: &'a Quiver, rules: &'a Rules<F::Elem>, words: Vec<Path>) -> Self {
        let index = words.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Engine { f, q, rules, words, index, memo: HashMap::new() }
    }

    fn act_arrow(&mut self, v: usize, a: usize) -> Option<Sparse<F::Elem>> {
        if let Some(r) = self.memo.get(&(v, a)) {
            return r.clone();
        }
        let f = self.f;
        let w = &self.words[v];
        if w.target(self.q) != self.q.arrows[a].source {
            return Some(Vec::new());
        }
        let mut arrows = w.arrows.clone();
        arrows.push(a);
        let source = w.source;
        let res = if let Some(&i) = self.index.get(&Path { source, arrows: arrows.clone() }) {
            Some(vec![(i, f.one())])
        } else if let Some(len) = self.rules.suffix_match(&arrows) {
            let cut = arrows.len() - len;
            let prefix = self.index[&Path { source, arrows: arrows[..cut].to_vec() }];
            let tail = self.rules.lead[&arrows[cut..]].clone();
            let mut acc = BTreeMap::new();
            let mut ok = true;
            for (t, c) in &tail {
                match self.act_path(&vec![(prefix, f.one())], t) {
                    Some(x) => sparse_add(f, &mut acc, c, &x),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            ok.then(|| sparse_finish(f, acc))
        } else {
            None
        };
        self.memo.insert((v, a), res.clone());
        res
    }

    fn act_path(&mut self, x: &Sparse<F::Elem>, p: &Path) -> Option<Sparse<F::Elem>> {
        let f = self.f;
        if p.is_empty() {
            return Some(x.iter().filter(|(i, _)| self.words[*i].target(self.q) == p.source).cloned().collect());
        }
        let mut cur = x.clone();
        for &a in &p.arrows {
            let mut acc = BTreeMap::new();
            for (i, c) in &cur {
                let y = self.act_arrow(*i, a)?;
                sparse_add(f, &mut acc, c, &y);
            }
            cur = sparse_finish(f, acc);
            if cur.is_empty() {
                break;
            }
        }
        Some(cur)
    }

    fn act_elem(&mut self, v: usize, r: &AlgebraElement<F::Elem>) -> Option<Sparse<F::Elem>> {
        let f = self.f;
        let mut acc = BTreeMap::new();
        let start = vec![(v, f.one())];
        for (p, c) in &r.terms {
            let y = self.act_path(&start, p)?;
            sparse_add(f, &mut acc, c, &y);
        }
        Some(sparse_finish(f, acc))
    }
}

/// Normal words of length at most `ell`, and whether one of length `ell` exists.
fn enumerate_words<E: Clone>(q: &Quiver, rules: &Rules<E>, ell: usize) -> Result<(Vec<Path>, bool)> {
    let mut words: Vec<Path> = (0..q.num_vertices()).map(Path::stationary).collect();
    let mut layer: Vec<Path> = words.clone();
    for _ in 0..ell {
        let mut next = Vec::new();
        for w in &layer {
            for a in q.out_arrows(w.target(q)) {
                let mut arrows = w.arrows.clone();
                arrows.push(a);
                if rules.suffix_match(&arrows).is_none() {
                    next.push(Path { source: w.source, arrows });
                }
            }
        }
        if words.len() + next.len() > MAX_WORDS {
            return Err(Error::Resource(format!("more than {MAX_WORDS} normal words below length {ell}")));
        }
        words.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    let frontier = !layer.is_empty() && layer[0].len() == ell;
    Ok((words, frontier))
}

/// Default truncation: twice the longest cycle weight plus a margin of four.
pub fn default_cap(max_mn: usize) -> usize {
    2 * max_mn + 4
}

/// Computes `KQ/I` for the ideal generated by `p.generators`.
///
/// Succeeds when the normal word set closes off at a length `L` with
/// `L + 1 < cap` and every generator annihilates every normal word.
pub fn quotient_algebra<F: Field>(p: &Presentation<F>, cap: usize) -> Result<FiniteDimAlgebra<F>> {
    if cap < 2 {
        return Err(Error::input("degree cap must be at least 2"));
    }
    p.validate()?;
    // rewriting recursion can get deep on long cycles
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 29)
            .spawn_scoped(s, || quotient_inner(p, cap))
            .map_err(|e| Error::Resource(format!("cannot spawn worker: {e}")))?
            .join()
            .map_err(|_| Error::internal("quotient worker panicked"))?
    })
}

fn quotient_inner<F: Field>(p: &Presentation<F>, cap: usize) -> Result<FiniteDimAlgebra<F>> {
    let f = &p.field;
    let q = &p.quiver;
    let mut rules = Rules { lead: HashMap::new(), max_len: 0 };
    rules.add_elements(f, &p.generators)?;
    let mut ell = 1;
    loop {
        let (words, frontier) = enumerate_words(q, &rules, ell)?;
        let mut eng = Engine::new(f, q, &rules, words);
        let mut found = Vec::new();
        for r in &p.generators {
            let (s, _) = r.terms.keys().next().map(|x| (x.source, ())).unwrap();
            for v in 0..eng.words.len() {
                if eng.words[v].target(q) != s {
                    continue;
                }
                if let Some(z) = eng.act_elem(v, r) {
                    if !z.is_empty() {
                        let mut e = AlgebraElement::zero();
                        for (i, c) in &z {
                            e.add_term(f, c, &eng.words[*i]);
                        }
                        found.push(e);
                    }
                }
            }
        }
        if !found.is_empty() {
            rules.add_elements(f, &found)?;
            continue;
        }
        if !frontier {
            let top = eng.words.iter().map(|w| w.len()).max().unwrap_or(0);
            if top + 1 >= cap {
                return Err(Error::Cap {
                    cap,
                    detail: format!("stabilized at cap boundary: normal words reach length {top}; raise the cap"),
                });
            }
            let mut words = eng.words;
            words.sort();
            return Ok(build_algebra(p, &rules, words));
        }
        if ell >= cap {
            return Err(Error::Cap {
                cap,
                detail: format!("not stabilized: normal words of length {ell} remain (the quotient may be infinite dimensional)"),
            });
        }
        ell += 1;
    }
}

fn build_algebra<F: Field>(p: &Presentation<F>, rules: &Rules<F::Elem>, words: Vec<Path>) -> FiniteDimAlgebra<F> {
    let f = &p.field;
    let q = &p.quiver;
    let mut eng = Engine::new(f, q, rules, words);
    let n = eng.words.len();
    let words = eng.words.clone();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if words[i].target(q) == words[j].source {
                mult[i][j] = eng.act_path(&vec![(i, f.one())], &words[j]).expect("closed word set");
            }
        }
    }
    let idempotents: Vec<usize> = (0..q.num_vertices()).map(|v| eng.index[&Path::stationary(v)]).collect();
    let arrow_elems = (0..q.num_arrows())
        .map(|a| {
            let e = idempotents[q.arrows[a].source];
            eng.act_arrow(e, a).expect("closed word set")
        })
        .collect();
    FiniteDimAlgebra {
        field: f.clone(),
        quiver: q.clone(),
        labels: words.iter().map(|w| w.display(q)).collect(),
        src: words.iter().map(|w| w.source).collect(),
        tgt: words.iter().map(|w| w.target(q)).collect(),
        idempotents,
        arrow_elems,
        mult,
        words: Some(words),
        origin: p.meta.clone(),
    }
}

/// A basic algebra given by a basis of primitive idempotents and radical
/// elements, each tagged with source and target vertex, and a structure table.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra<F: Field> {
    pub field: F,
    /// generating quiver; arrows are the elements `arrow_elems`
    pub quiver: Quiver,
    pub labels: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    /// basis index of `e_v` for each vertex
    pub idempotents: Vec<usize>,
    pub arrow_elems: Vec<Sparse<F::Elem>>,
    /// `mult[i][j]` = `b_i * b_j`
    pub mult: Vec<Vec<Sparse<F::Elem>>>,
    /// normal words, when the algebra came from a presentation
    pub words: Option<Vec<Path>>,
    pub origin: String,
}

impl<F: Field> FiniteDimAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }

    pub fn zero_vec(&self) -> Row<F> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Row<F> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn unit(&self) -> Row<F> {
        let mut v = self.zero_vec();
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    pub fn is_radical(&self, i: usize) -> bool {
        !self.idempotents.contains(&i)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Row<F> {
        let f = &self.field;
        let mut out = self.zero_vec();
        let ys: Vec<(usize, &F::Elem)> = y.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for &(j, b) in &ys {
                let ab = f.mul(a, b);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = f.add_mul(&out[*k], &ab, c);
                }
            }
        }
        out
    }

    /// `x * b_j`
    pub fn mul_basis_right(&self, x: &[F::Elem], j: usize) -> Row<F> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if !f.is_zero(a) {
                for (k, c) in &self.mult[i][j] {
                    out[*k] = f.add_mul(&out[*k], a, c);
                }
            }
        }
        out
    }

    /// `b_i * x`
    pub fn mul_basis_left(&self, i: usize, x: &[F::Elem]) -> Row<F> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (j, a) in x.iter().enumerate() {
            if !f.is_zero(a) {
                for (k, c) in &self.mult[i][j] {
                    out[*k] = f.add_mul(&out[*k], a, c);
                }
            }
        }
        out
    }

    pub fn arrow_vec(&self, a: usize) -> Row<F> {
        to_dense(&self.field, &self.arrow_elems[a], self.dim())
    }

    /// Image of a path algebra element over `self.quiver`.
    pub fn normal_form(&self, x: &AlgebraElement<F::Elem>) -> Row<F> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (p, c) in &x.terms {
            let mut v = self.basis_vec(self.idempotents[p.source]);
            for &a in &p.arrows {
                v = self.mul(&v, &self.arrow_vec(a));
            }
            for (o, y) in out.iter_mut().zip(&v) {
                *o = f.add_mul(o, c, y);
            }
        }
        out
    }

    /// Parses and reduces an expression such as `alpha*alpha*beta`.
    pub fn normal_form_str(&self, s: &str) -> Result<Row<F>> {
        let e = crate::presentation::parse_element(&self.field, &self.quiver, s)?;
        Ok(self.normal_form(&e))
    }

    pub fn format_vec(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| if f.is_one(c) { self.labels[i].clone() } else { format!("[{}]*{}", f.format(c), self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// First violated triple `(i, j, k)` of associativity.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.tgt[i] != self.src[j] {
                    continue;
                }
                let ij = to_dense(&self.field, &self.mult[i][j], n);
                for k in 0..n {
                    if self.tgt[j] != self.src[k] {
                        continue;
                    }
                    let left = self.mul_basis_right(&ij, k);
                    let jk = to_dense(&self.field, &self.mult[j][k], n);
                    let right = self.mul_basis_left(i, &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_unit(&self) -> bool {
        let one = self.unit();
        (0..self.dim()).all(|i| {
            let b = self.basis_vec(i);
            self.mul(&one, &b) == b && self.mul(&b, &one) == b
        })
    }

    /// Products vanish off composable pairs and land in `e_s A e_t`.
    pub fn check_grading(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let p = &self.mult[i][j];
                if self.tgt[i] != self.src[j] {
                    p.is_empty()
                } else {
                    p.iter().all(|(k, _)| self.src[*k] == self.src[i] && self.tgt[*k] == self.tgt[j])
                }
            })
        })
    }

    /// `C[i][j] = dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let v = self.num_vertices();
        let mut c = vec![vec![0; v]; v];
        for i in 0..self.dim() {
            c[self.src[i]][self.tgt[i]] += 1;
        }
        c
    }

    pub fn radical_socle(&self) -> RadicalData<F> {
        radical_socle(self)
    }
}

/// Radical powers and socle.
#[derive(Clone, Debug)]
pub struct RadicalData<F: Field> {
    /// RREF bases of `rad^k`, `k = 0, 1, ...`, ending with the zero space
    pub rad_powers: Vec<Vec<Row<F>>>,
    /// basis of `{x : x rad = 0}`
    pub socle: Vec<Row<F>>,
    /// basis of `soc(e_i A)` per vertex
    pub socle_by_vertex: Vec<Vec<Row<F>>>,
    /// spanning element of `soc(e_i A)` when it is one dimensional
    pub omega: Vec<Option<Row<F>>>,
}

impl<F: Field> RadicalData<F> {
    pub fn loewy_length(&self) -> usize {
        self.rad_powers.len() - 1
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.rad_powers.windows(2).map(|w| w[0].len() - w[1].len()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_by_vertex.iter().map(|s| s.len()).collect()
    }
}

pub fn radical_socle<F: Field>(a: &FiniteDimAlgebra<F>) -> RadicalData<F> {
    let f = &a.field;
    let n = a.dim();
    let rad_idx: Vec<usize> = (0..n).filter(|&i| a.is_radical(i)).collect();
    let mut rad_powers: Vec<Vec<Row<F>>> = vec![(0..n).map(|i| a.basis_vec(i)).collect()];
    let mut cur: Vec<Row<F>> = rad_idx.iter().map(|&i| a.basis_vec(i)).collect();
    while !cur.is_empty() {
        rad_powers.push(cur.clone());
        let mut ech = Echelon::new(f, n);
        for x in &cur {
            for &j in &rad_idx {
                let y = a.mul_basis_right(x, j);
                ech.insert(&y);
            }
        }
        cur = ech.rows().to_vec();
    }
    rad_powers.push(Vec::new());
    // right socle, split by source vertex
    let mut socle_by_vertex = Vec::new();
    for v in 0..a.num_vertices() {
        let idx: Vec<usize> = (0..n).filter(|&i| a.src[i] == v).collect();
        // rows: for each basis element of e_v A, its products with all radical basis elements
        let rows: Vec<Row<F>> = idx
            .iter()
            .map(|&i| {
                let mut r = Vec::with_capacity(rad_idx.len() * n);
                let bi = a.basis_vec(i);
                for &j in &rad_idx {
                    r.extend(a.mul_basis_right(&bi, j));
                }
                r
            })
            .collect();
        let ncols = rad_idx.len() * n;
        let ker = crate::linalg::left_kernel(f, &rows, ncols);
        let mut ech = Echelon::new(f, n);
        for k in ker {
            let mut x = a.zero_vec();
            for (c, &i) in k.iter().zip(&idx) {
                x[i] = c.clone();
            }
            ech.insert(&x);
        }
        socle_by_vertex.push(ech.rows().to_vec());
    }
    let mut ech = Echelon::new(f, n);
    for s in socle_by_vertex.iter().flatten() {
        ech.insert(s);
    }
    let socle = ech.rows().to_vec();
    let omega = socle_by_vertex.iter().map(|s| if s.len() == 1 { Some(s[0].clone()) } else { None }).collect();
    RadicalData { rad_powers, socle, socle_by_vertex, omega }
}

/// A symmetrizing form with its Gram matrix.
#[derive(Clone, Debug)]
pub struct SymmetrizingForm<F: Field> {
    /// values on the basis
    pub phi: Row<F>,
    pub gram: Vec<Row<F>>,
}

/// Looks for a trace form `phi` (vanishing on commutators) with nondegenerate
/// Gram matrix; `None` when there is none. Small trace spaces are searched
/// exhaustively, larger ones by seeded random combinations.
pub fn symmetrizing_form<F: Field>(a: &FiniteDimAlgebra<F>, r: &RadicalData<F>) -> Option<SymmetrizingForm<F>> {
    let f = &a.field;
    let n = a.dim();
    if r.omega.iter().any(|o| o.is_none()) {
        return None;
    }
    let mut comm = Echelon::new(f, n);
    for i in 0..n {
        for j in i..n {
            let ij = to_dense(f, &a.mult[i][j], n);
            let ji = to_dense(f, &a.mult[j][i], n);
            let d: Row<F> = ij.iter().zip(&ji).map(|(x, y)| f.sub(x, y)).collect();
            comm.insert(&d);
        }
    }
    let traces = comm.orthogonal_complement();
    if traces.is_empty() {
        return None;
    }
    let combine = |y: &[F::Elem]| -> Row<F> {
        let mut phi = vec![f.zero(); n];
        for (c, t) in y.iter().zip(&traces) {
            for (p, x) in phi.iter_mut().zip(t) {
                *p = f.add_mul(p, c, x);
            }
        }
        phi
    };
    let try_form = |y: &[F::Elem]| -> Option<SymmetrizingForm<F>> {
        let phi = combine(y);
        // phi must not vanish on any omega_i
        if r.omega.iter().flatten().any(|o| f.is_zero(&o.iter().zip(&phi).fold(f.zero(), |acc, (x, p)| f.add_mul(&acc, x, p)))) {
            return None;
        }
        let gram: Vec<Row<F>> = (0..n)
            .map(|i| (0..n).map(|j| a.mult[i][j].iter().fold(f.zero(), |acc, (k, c)| f.add_mul(&acc, c, &phi[*k]))).collect())
            .collect();
        (crate::linalg::rank(f, &gram, n) == n).then_some(SymmetrizingForm { phi, gram })
    };
    let k = traces.len();
    let elems: Vec<F::Elem> = f.elements().unwrap_or_else(|| (-3..=3).map(|i| f.from_i64(i)).collect());
    let q = elems.len() as u64;
    if let Some(total) = q.checked_pow(k as u32).filter(|&t| t <= 256) {
        return (1..total).find_map(|mut code| {
            let y: Row<F> = (0..k)
                .map(|_| {
                    let e = elems[(code % q) as usize].clone();
                    code /= q;
                    e
                })
                .collect();
            try_form(&y)
        });
    }
    let mut rng = StdRng::seed_from_u64(0x7ace);
    (0..64).find_map(|_| {
        let y: Row<F> = (0..k).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        try_form(&y)
    })
}

/// Echelon basis of an ideal with the largest basis index as pivot.
fn descending_echelon<F: Field>(f: &F, n: usize, vecs: &[Row<F>]) -> (Vec<Row<F>>, Vec<usize>) {
    let rev = |v: &[F::Elem]| -> Row<F> { v.iter().rev().cloned().collect() };
    let mut ech = Echelon::new(f, n);
    for v in vecs {
        ech.insert(&rev(v));
    }
    let rows = ech.rows().iter().map(|r| rev(r)).collect();
    let pivots = ech.pivots().iter().map(|&p| n - 1 - p).collect();
    (rows, pivots)
}

/// `A / J` for a two sided ideal `J` inside the radical, spanned by `ideal`
/// (homogeneous for the vertex grading). Basis: the old basis minus pivots.
pub fn quotient_by_ideal<F: Field>(a: &FiniteDimAlgebra<F>, ideal: &[Row<F>], tag: &str) -> FiniteDimAlgebra<F> {
    let f = &a.field;
    let n = a.dim();
    let (rows, pivots) = descending_echelon(f, n, ideal);
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    // reduce a vector modulo J and express it on the kept basis
    let project = |v: &[F::Elem]| -> Sparse<F::Elem> {
        let mut r = v.to_vec();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !f.is_zero(&r[p]) {
                let c = f.neg(&r[p]);
                for (x, y) in r.iter_mut().zip(row) {
                    *x = f.add_mul(x, &c, y);
                }
            }
        }
        keep.iter().enumerate().filter(|(_, &i)| !f.is_zero(&r[i])).map(|(k, &i)| (k, r[i].clone())).collect()
    };
    let mult = keep.iter().map(|&i| keep.iter().map(|&j| project(&to_dense(f, &a.mult[i][j], n))).collect()).collect();
    FiniteDimAlgebra {
        field: f.clone(),
        quiver: a.quiver.clone(),
        labels: keep.iter().map(|&i| a.labels[i].clone()).collect(),
        src: keep.iter().map(|&i| a.src[i]).collect(),
        tgt: keep.iter().map(|&i| a.tgt[i]).collect(),
        idempotents: a.idempotents.iter().map(|i| new_index[i]).collect(),
        arrow_elems: a.arrow_elems.iter().map(|e| project(&to_dense(f, e, n))).collect(),
        mult,
        words: a.words.as_ref().map(|w| keep.iter().map(|&i| w[i].clone()).collect()),
        origin: format!("{}/{tag}", a.origin),
    }
}

/// `A / soc(A)`.
pub fn quotient_by_socle<F: Field>(a: &FiniteDimAlgebra<F>, r: &RadicalData<F>) -> FiniteDimAlgebra<F> {
    // a semisimple algebra is its own socle; the quotient is then zero
    if r.socle.len() == a.dim() {
        return FiniteDimAlgebra {
            field: a.field.clone(),
            quiver: Quiver { vertices: Vec::new(), arrows: Vec::new() },
            labels: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            idempotents: Vec::new(),
            arrow_elems: Vec::new(),
            mult: Vec::new(),
            words: None,
            origin: format!("{}/soc", a.origin),
        };
    }
    quotient_by_ideal(a, &r.socle, "soc")
}

/// Least basis elements (in basis order) of `rad(e_s A e_t)` independent modulo `rad^2`.
pub fn arrow_generators<F: Field>(a: &FiniteDimAlgebra<F>, r: &RadicalData<F>) -> Vec<usize> {
    let n = a.dim();
    let mut ech = Echelon::new(&a.field, n);
    let rad2 = r.rad_powers.get(2).cloned().unwrap_or_default();
    for v in &rad2 {
        ech.insert(v);
    }
    let mut out = Vec::new();
    for i in 0..n {
        if a.is_radical(i) && ech.insert(&a.basis_vec(i)).is_some() {
            out.push(i);
        }
    }
    out
}

fn arrow_name(label: &str, used: &mut Vec<String>) -> String {
    let mut base: String = label.chars().map(|c| if c.is_alphanumeric() || c == '_' { c } else { '_' }).collect();
    if base.starts_with('e') && base[1..].parse::<u64>().is_ok() {
        base = format!("x{base}");
    }
    let mut name = base.clone();
    let mut k = 2;
    while used.contains(&name) {
        name = format!("{base}_{k}");
        k += 1;
    }
    used.push(name.clone());
    name
}

/// The corner algebra `eAe` for `e` the sum of the idempotents at `vertices`,
/// with arrows the least radical basis elements independent modulo `rad^2`.
pub fn idempotent_algebra<F: Field>(a: &FiniteDimAlgebra<F>, vertices: &[usize]) -> Result<FiniteDimAlgebra<F>> {
    if vertices.is_empty() {
        return Err(Error::input("idempotent_algebra needs a nonempty vertex subset"));
    }
    let mut vs = vertices.to_vec();
    vs.sort();
    vs.dedup();
    if vs.iter().any(|&v| v >= a.num_vertices()) {
        return Err(Error::input("vertex out of range"));
    }
    let f = &a.field;
    let n = a.dim();
    let vmap: HashMap<usize, usize> = vs.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let keep: Vec<usize> = (0..n).filter(|&i| vmap.contains_key(&a.src[i]) && vmap.contains_key(&a.tgt[i])).collect();
    let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let restrict = |v: &Sparse<F::Elem>| -> Sparse<F::Elem> { v.iter().map(|(i, c)| (new_index[i], c.clone())).collect() };
    let mult: Vec<Vec<Sparse<F::Elem>>> = keep.iter().map(|&i| keep.iter().map(|&j| restrict(&a.mult[i][j])).collect()).collect();
    let mut b = FiniteDimAlgebra {
        field: f.clone(),
        quiver: Quiver { vertices: vs.iter().map(|&v| a.quiver.vertices[v].clone()).collect(), arrows: Vec::new() },
        labels: keep.iter().map(|&i| a.labels[i].clone()).collect(),
        src: keep.iter().map(|&i| vmap[&a.src[i]]).collect(),
        tgt: keep.iter().map(|&i| vmap[&a.tgt[i]]).collect(),
        idempotents: vs.iter().map(|&v| new_index[&a.idempotents[v]]).collect(),
        arrow_elems: Vec::new(),
        mult,
        // the arrows are re-chosen below, so words of the parent do not apply
        words: None,
        origin: format!("{}|e{{{}}}", a.origin, vs.iter().map(|&v| a.quiver.vertices[v].clone()).collect::<Vec<_>>().join(",")),
    };
    let r = radical_socle(&b);
    let gens = arrow_generators(&b, &r);
    let mut used = Vec::new();
    b.quiver.arrows = gens
        .iter()
        .map(|&i| crate::quiver::Arrow { name: arrow_name(&b.labels[i], &mut used), source: b.src[i], target: b.tgt[i] })
        .collect();
    b.arrow_elems = gens.iter().map(|&i| vec![(i, f.one())]).collect();
    Ok(b)
}

/// A presentation of `A` on its generating quiver: relations `w - NF(w)` for
/// every word `w = v a` with `v` normal and `w` not independent of the
/// smaller normal words. The normal words are taken in deglex order.
pub fn presentation_of<F: Field>(a: &FiniteDimAlgebra<F>) -> Result<(Presentation<F>, Vec<Path>)> {
    let f = &a.field;
    let q = &a.quiver;
    let n = a.dim();
    // normal words with their images
    let mut normal: Vec<(Path, Row<F>)> = Vec::new();
    let mut rels = Vec::new();
    // stationary paths first
    let mut layer: Vec<(Path, Row<F>)> = Vec::new();
    for v in 0..a.num_vertices() {
        let img = a.basis_vec(a.idempotents[v]);
        normal.push((Path::stationary(v), img.clone()));
        layer.push((Path::stationary(v), img));
    }
    // coordinates of an image in terms of the normal word images
    let mut coords_basis: Vec<Row<F>> = normal.iter().map(|(_, i)| i.clone()).collect();
    while !layer.is_empty() {
        let mut cands: Vec<(Path, Row<F>)> = Vec::new();
        for (w, img) in &layer {
            for arr in q.out_arrows(w.target(q)) {
                let mut arrows = w.arrows.clone();
                arrows.push(arr);
                let p = Path { source: w.source, arrows };
                let im = a.mul(img, &a.arrow_vec(arr));
                cands.push((p, im));
            }
        }
        cands.sort_by(|x, y| x.0.cmp(&y.0));
        let mut next = Vec::new();
        for (p, im) in cands {
            match solve_in_span(f, &coords_basis, &im) {
                Some(coef) => {
                    let mut rel = AlgebraElement::path(f, p.clone());
                    for (k, c) in coef.iter().enumerate() {
                        rel.add_term(f, &f.neg(c), &normal[k].0);
                    }
                    rels.push(rel);
                }
                None => {
                    coords_basis.push(im.clone());
                    normal.push((p.clone(), im.clone()));
                    next.push((p, im));
                }
            }
        }
        if normal.len() > n {
            return Err(Error::internal("more normal words than the dimension"));
        }
        layer = next;
    }
    if normal.len() != n {
        return Err(Error::input("the arrow elements do not generate the algebra"));
    }
    let words = normal.into_iter().map(|(p, _)| p).collect();
    let pres = Presentation { field: f.clone(), quiver: q.clone(), generators: rels, meta: format!("{}|presented", a.origin) };
    Ok((pres, words))
}

/// Coordinates of `v` in the span of `basis` (independent vectors), if any.
pub fn solve_in_span<F: Field>(f: &F, basis: &[Row<F>], v: &[F::Elem]) -> Option<Row<F>> {
    let n = v.len();
    let k = basis.len();
    // columns are basis vectors: solve sum_k x_k basis_k = v
    let a: Vec<Row<F>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let (x, _) = crate::linalg::solve_affine(f, &a, v, k)?;
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::presentation::*;

    fn gf(q: u64) -> FiniteField {
        FiniteField::gf(q)
    }

    #[test]
    fn family_a_dimension_and_basis() {
        let f = gf(2);
        let p = family_a(&f, 2, &1, &1).unwrap();
        let a = quotient_algebra(&p, 8).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(a.labels, ["e1", "X", "Y", "X*X", "X*Y", "Y*X", "X*X*X", "X*Y*X"]);
        // the alternating monomials are still a basis
        let mut ech = Echelon::new(&f, 8);
        for w in ["e1", "X", "Y", "X*Y", "Y*X", "X*Y*X", "Y*X*Y", "X*Y*X*Y"] {
            assert!(ech.insert(&a.normal_form_str(w).unwrap()).is_some(), "{w}");
        }
        assert!(a.check_associative().is_none());
        assert!(a.check_unit());
        assert!(a.check_grading());
    }

    #[test]
    fn family_a_dims_over_several_fields() {
        for m in 2..=5 {
            let f = gf(3);
            let a = quotient_algebra(&family_a(&f, m, &2, &1).unwrap(), default_cap(2 * m)).unwrap();
            assert_eq!(a.dim(), 4 * m);
            assert_eq!(a.cartan_matrix(), vec![vec![4 * m]]);
        }
        let q = Rationals;
        let one = q.one();
        let a = quotient_algebra(&family_a(&q, 3, &q.from_i64(-2), &one).unwrap(), 16).unwrap();
        assert_eq!(a.dim(), 12);
    }

    #[test]
    fn cap_errors_are_distinguished() {
        let f = gf(2);
        let p = family_a(&f, 2, &1, &1).unwrap();
        assert!(quotient_algebra(&p, 5).is_ok());
        match quotient_algebra(&p, 4) {
            Err(Error::Cap { detail, .. }) => assert!(detail.contains("boundary"), "{detail}"),
            other => panic!("unexpected {other:?}"),
        }
        // free algebra on one loop: never stabilizes
        let q = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        let p = Presentation::from_strings(&f, q, &["x*y - y*x"], "free").unwrap();
        match quotient_algebra(&p, 6) {
            Err(Error::Cap { detail, .. }) => assert!(detail.contains("not stabilized"), "{detail}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn family_b_basis_and_derived_relations() {
        let f = gf(3);
        let p = family_b(&f, 1, &1, &2).unwrap();
        let a = quotient_algebra(&p, 12).unwrap();
        assert_eq!(a.dim(), 10);
        assert_eq!(a.cartan_matrix(), vec![vec![4, 2], vec![2, 2]]);
        for w in ["beta*omega*alpha*beta", "alpha*alpha*beta", "omega*alpha*alpha", "alpha*beta*omega*alpha"] {
            assert!(a.normal_form_str(w).unwrap().iter().all(|x| *x == 0), "{w}");
        }
        let x = a.normal_form_str("beta*omega*alpha").unwrap();
        let y = a.normal_form_str("alpha^3").unwrap();
        let z = a.normal_form_str("alpha*beta*omega").unwrap();
        assert_eq!(x, y);
        assert_eq!(y, z);
        for r in 1..=4 {
            let a = quotient_algebra(&family_b(&f, r, &2, &0).unwrap(), 16).unwrap();
            assert_eq!(a.dim(), r + 9);
        }
    }

    #[test]
    fn family_d_dimension() {
        let f = gf(4);
        let p = family_d(&f, &[1, 0, 2], &[3, 3, 3]).unwrap();
        let a = quotient_algebra(&p, 10).unwrap();
        assert_eq!(a.dim(), 36);
        assert!(a.check_associative().is_none());
        // unequal parameters force c_i omega = c_j omega, killing socle elements
        let p = family_d(&f, &[1, 0, 2], &[1, 3, 2]).unwrap();
        assert_eq!(quotient_algebra(&p, 10).unwrap().dim(), 33);
        let p = family_d(&f, &[0, 0, 0], &[1, 1, 2]).unwrap();
        assert_eq!(quotient_algebra(&p, 10).unwrap().dim(), 34);
    }

    #[test]
    fn q2a_identities() {
        let f = gf(2);
        for k in 2..=4 {
            let a = quotient_algebra(&family_q2a(&f, k, &1).unwrap(), 6 * k + 4).unwrap();
            assert_eq!(a.dim(), 9 * k + 2);
            assert!(a.normal_form_str("alpha*alpha*beta").unwrap().iter().all(|x| *x == 0));
            assert!(a.normal_form_str("gamma*alpha*alpha").unwrap().iter().all(|x| *x == 0));
            let x = a.normal_form_str("alpha^3").unwrap();
            assert_eq!(x, a.normal_form_str(&format!("(beta*gamma*alpha)^{k}")).unwrap());
            assert_eq!(x, a.normal_form_str(&format!("(alpha*beta*gamma)^{k}")).unwrap());
        }
    }

    #[test]
    fn q2b_dimension_and_socle() {
        let f = gf(4);
        for t in 3..=6 {
            let a = quotient_algebra(&family_q2b3(&f, t, &2, &1).unwrap(), 2 * t + 8).unwrap();
            assert_eq!(a.dim(), 9 + t);
            let r = radical_socle(&a);
            let soc2 = &r.socle_by_vertex[1];
            assert_eq!(soc2.len(), 1);
            let eta_t = a.normal_form_str(&format!("eta^{t}")).unwrap();
            assert!(Echelon::new(&f, a.dim()).contains(&vec![0; a.dim()]));
            let mut e = Echelon::new(&f, a.dim());
            e.insert(&soc2[0]);
            assert!(e.contains(&eta_t) && eta_t.iter().any(|x| *x != 0));
        }
    }

    #[test]
    fn disc_dimension_and_symmetry() {
        let f = gf(2);
        let sd = disc_2_2(&f, &1, &1, &0).unwrap();
        let p = sd.weighted_surface_relations(&f);
        let a = quotient_algebra(&p, 20).unwrap();
        assert_eq!(a.dim(), 112);
        let r = radical_socle(&a);
        assert_eq!(r.socle_dims(), vec![1, 1, 1, 1]);
        assert!(symmetrizing_form(&a, &r).is_some());
        let g = sd.gabriel_presentation(&f, &p).unwrap();
        assert_eq!(quotient_algebra(&g, 20).unwrap().dim(), 112);
    }

    #[test]
    fn symmetric_and_non_symmetric() {
        let f = gf(3);
        let a = quotient_algebra(&family_a(&f, 3, &1, &2).unwrap(), 16).unwrap();
        let r = radical_socle(&a);
        assert_eq!(r.socle.len(), 1);
        assert!(symmetrizing_form(&a, &r).is_some());
        // A2 modulo rad^2 is not self-injective
        let q = Quiver::new(&["1", "2"], &[("x", "1", "2")]).unwrap();
        let p = Presentation::new(&f, q, Vec::new(), "A2").unwrap();
        let a = quotient_algebra(&p, 6).unwrap();
        assert_eq!(a.dim(), 3);
        let r = radical_socle(&a);
        assert!(symmetrizing_form(&a, &r).is_none());
    }

    #[test]
    fn semisimple_and_socle_quotients() {
        let f = gf(2);
        let q = Quiver::new(&["1", "2"], &[]).unwrap();
        let a = quotient_algebra(&Presentation::new(&f, q, Vec::new(), "KxK").unwrap(), 4).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.cartan_matrix(), vec![vec![1, 0], vec![0, 1]]);
        let r = radical_socle(&a);
        assert_eq!(r.socle.len(), 2);
        assert_eq!(quotient_by_socle(&a, &r).dim(), 0);

        let f = gf(3);
        let x = quotient_algebra(&family_a(&f, 2, &1, &1).unwrap(), 8).unwrap();
        let y = quotient_algebra(&family_a(&f, 2, &1, &0).unwrap(), 8).unwrap();
        let (rx, ry) = (radical_socle(&x), radical_socle(&y));
        let (qx, qy) = (quotient_by_socle(&x, &rx), quotient_by_socle(&y, &ry));
        assert_eq!(qx.dim(), 7);
        assert_eq!(qx.labels, qy.labels);
        assert_eq!(qx.mult, qy.mult);
    }

    #[test]
    fn corners_and_presentations() {
        let f = gf(2);
        let a = quotient_algebra(&family_b(&f, 2, &1, &1).unwrap(), 12).unwrap();
        let whole = idempotent_algebra(&a, &[0, 1]).unwrap();
        assert_eq!(whole.dim(), a.dim());
        assert_eq!(whole.mult, a.mult);
        let corner = idempotent_algebra(&a, &[0]).unwrap();
        assert_eq!(corner.dim(), a.cartan_matrix()[0][0]);
        let (p, words) = presentation_of(&corner).unwrap();
        assert_eq!(words.len(), corner.dim());
        let again = quotient_algebra(&p, 16).unwrap();
        assert_eq!(again.dim(), corner.dim());
    }
}
