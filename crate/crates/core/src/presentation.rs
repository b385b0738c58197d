//! Paths, path-algebra elements, relation generation and the named families.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Quiver, TriangulationQuiver, WeightData};

/// A path: a source vertex and a composable arrow list (empty = `e_source`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Path {
        Path { source: v, arrows: Vec::new() }
    }

    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::input("use Path::stationary for empty paths"));
        };
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::input(format!("{} and {} do not compose", q.arrows[w[0]].name, q.arrows[w[1]].name)));
            }
        }
        Ok(Path { source: q.arrows[first].source, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.source, |&a| q.arrows[a].target)
    }

    /// Concatenation, `None` when the paths do not compose.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, arrows })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

/// Length first, then arrow ids lexicographically, then source vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows.len().cmp(&other.arrows.len()).then_with(|| self.arrows.cmp(&other.arrows)).then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    pub terms: BTreeMap<Path, E>,
}

impl<E: fmt::Debug> fmt::Debug for AlgebraElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest path in the support.
    pub fn leading(&self) -> Option<(&Path, &E)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).min().unwrap_or(0)
    }
}

impl<E: Clone> AlgebraElement<E> {
    pub fn path<F: Field<Elem = E>>(field: &F, p: Path) -> Self {
        Self::term(field, field.one(), p)
    }

    pub fn term<F: Field<Elem = E>>(field: &F, c: E, p: Path) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(p, c);
        }
        AlgebraElement { terms }
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, c: &E, p: &Path) {
        if field.is_zero(c) {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(|| field.zero());
        *entry = field.add(entry, c);
        if field.is_zero(entry) {
            self.terms.remove(p);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(field, c, p);
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(p, x)| (p.clone(), field.mul(x, c))).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self, q: &Quiver) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.concat(r, q) {
                    out.add_term(field, &field.mul(a, b), &pr);
                }
            }
        }
        out
    }

    /// Substitutes each arrow by an element (for example a virtual arrow by its
    /// defining path); `image[a]` lives in the target quiver `q2`.
    pub fn substitute<F: Field<Elem = E>>(&self, field: &F, image: &[AlgebraElement<E>], stationary: &[usize], q2: &Quiver) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            let mut acc = Self::path(field, Path::stationary(stationary[p.source]));
            for &a in &p.arrows {
                acc = acc.mul(field, &image[a], q2);
            }
            out = out.add(field, &acc.scale(field, c));
        }
        out
    }

    pub fn display<F: Field<Elem = E>>(&self, field: &F, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = field.neg(c);
            let (sign, mag) =
                if field.characteristic() != 2 && field.format(&neg).len() < field.format(c).len() { ("-", neg) } else { ("+", c.clone()) };
            if i > 0 || sign == "-" {
                s.push_str(if i > 0 { &" " } else { "" });
                s.push_str(sign);
                s.push(' ');
            }
            if !field.is_one(&mag) {
                s.push_str(&format!("[{}]*", field.format(&mag)));
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

// ---------------------------------------------------------------------------
// element parser: sums of products of arrows, `(..)^k`, integers and `[elem]`

struct Parser<'a, F: Field> {
    field: &'a F,
    q: &'a Quiver,
    toks: Vec<String>,
    pos: usize,
}

fn tokenize(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if "+-*()^".contains(c) {
            out.push(c.to_string());
            i += 1;
        } else if c == '[' {
            let j = cs[i..].iter().position(|&x| x == ']').ok_or_else(|| Error::input("unclosed ["))? + i;
            out.push(cs[i..=j].iter().collect());
            i = j + 1;
        } else if c.is_alphanumeric() || c == '_' || c == '\'' {
            let mut j = i;
            while j < cs.len() && (cs[j].is_alphanumeric() || cs[j] == '_' || cs[j] == '\'') {
                j += 1;
            }
            out.push(cs[i..j].iter().collect());
            i = j;
        } else {
            return Err(Error::input(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|s| s.as_str())
    }

    fn next(&mut self) -> Option<String> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<AlgebraElement<F::Elem>> {
        let mut acc = AlgebraElement::zero();
        let mut sign = self.field.one();
        if self.peek() == Some("-") {
            self.next();
            sign = self.field.neg(&sign);
        } else if self.peek() == Some("+") {
            self.next();
        }
        loop {
            let t = self.product()?;
            acc = acc.add(self.field, &t.scale(self.field, &sign));
            match self.peek() {
                Some("+") => {
                    self.next();
                    sign = self.field.one();
                }
                Some("-") => {
                    self.next();
                    sign = self.field.neg(&self.field.one());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<AlgebraElement<F::Elem>> {
        // scalars commute with everything, so collect them separately
        let mut scalar = self.field.one();
        let mut acc: Option<AlgebraElement<F::Elem>> = None;
        loop {
            match self.factor()? {
                Factor::Scalar(c) => scalar = self.field.mul(&scalar, &c),
                Factor::Elem(e) => {
                    acc = Some(match acc {
                        None => e,
                        Some(a) => a.mul(self.field, &e, self.q),
                    })
                }
            }
            if self.peek() == Some("*") {
                self.next();
            } else {
                break;
            }
        }
        let e = acc.unwrap_or_else(|| {
            // a bare scalar means scalar times the identity
            let mut one = AlgebraElement::zero();
            for v in 0..self.q.num_vertices() {
                one.add_term(self.field, &self.field.one(), &Path::stationary(v));
            }
            one
        });
        Ok(e.scale(self.field, &scalar))
    }

    fn factor(&mut self) -> Result<Factor<F::Elem>> {
        let tok = self.next().ok_or_else(|| Error::input("unexpected end of expression"))?;
        let base = if tok == "(" {
            let inner = self.sum()?;
            if self.next().as_deref() != Some(")") {
                return Err(Error::input("missing )"));
            }
            Factor::Elem(inner)
        } else if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            Factor::Scalar(self.field.parse(inner)?)
        } else if tok.chars().all(|c| c.is_ascii_digit()) {
            Factor::Scalar(self.field.from_i64(tok.parse::<i64>().map_err(|_| Error::input("integer too large"))?))
        } else if let Some(a) = self.q.arrow(&tok) {
            Factor::Elem(AlgebraElement::path(self.field, Path { source: self.q.arrows[a].source, arrows: vec![a] }))
        } else if let Some(v) = tok.strip_prefix('e').and_then(|v| self.q.vertex(v)) {
            Factor::Elem(AlgebraElement::path(self.field, Path::stationary(v)))
        } else {
            return Err(Error::input(format!("unknown symbol {tok:?}")));
        };
        if self.peek() == Some("^") {
            self.next();
            let k: u32 = self.next().and_then(|t| t.parse().ok()).ok_or_else(|| Error::input("exponent must be a nonnegative integer"))?;
            return Ok(match base {
                Factor::Scalar(c) => Factor::Scalar(self.field.pow(&c, k as u64)),
                Factor::Elem(e) => {
                    if k == 0 {
                        return Err(Error::input("zero exponent on a path"));
                    }
                    let mut acc = e.clone();
                    for _ in 1..k {
                        acc = acc.mul(self.field, &e, self.q);
                    }
                    Factor::Elem(acc)
                }
            });
        }
        Ok(base)
    }
}

enum Factor<E> {
    Scalar(E),
    Elem(AlgebraElement<E>),
}

/// Parses expressions such as `X*X - [w]*(Y*X)^2*Y` or `a*b - 2*c`.
pub fn parse_element<F: Field>(field: &F, q: &Quiver, s: &str) -> Result<AlgebraElement<F::Elem>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::input("empty expression"));
    }
    let mut p = Parser { field, q, toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::input(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Parses `lhs = rhs` as `lhs - rhs`, or a bare expression.
pub fn parse_relation<F: Field>(field: &F, q: &Quiver, s: &str) -> Result<AlgebraElement<F::Elem>> {
    match s.split_once('=') {
        Some((l, r)) => Ok(parse_element(field, q, l)?.sub(field, &parse_element(field, q, r)?)),
        None => parse_element(field, q, s),
    }
}

// ---------------------------------------------------------------------------

/// A quiver with relations over a field.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub field: F,
    pub quiver: Quiver,
    pub generators: Vec<AlgebraElement<F::Elem>>,
    /// which family or construction produced the relations
    pub meta: String,
}

impl<F: Field> Presentation<F> {
    pub fn new(field: &F, quiver: Quiver, generators: Vec<AlgebraElement<F::Elem>>, meta: impl Into<String>) -> Result<Self> {
        let p = Presentation { field: field.clone(), quiver, generators, meta: meta.into() };
        p.validate()?;
        Ok(p)
    }

    /// Generators from relation strings.
    pub fn from_strings(field: &F, quiver: Quiver, rels: &[&str], meta: impl Into<String>) -> Result<Self> {
        let gens = rels.iter().map(|r| parse_relation(field, &quiver, r)).collect::<Result<Vec<_>>>()?;
        Presentation::new(field, quiver, gens, meta)
    }

    /// Every generator is nonzero with terms sharing source and target.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            let mut st = None;
            for p in g.terms.keys() {
                let here = (p.source, p.target(&self.quiver));
                if *st.get_or_insert(here) != here {
                    return Err(Error::input(format!("relation {} is not vertex homogeneous", g.display(&self.field, &self.quiver))));
                }
            }
            if g.is_zero() {
                return Err(Error::input("zero relation in presentation"));
            }
        }
        Ok(())
    }

    pub fn display(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.display(&self.field, &self.quiver)).collect()
    }

    pub fn max_relation_len(&self) -> usize {
        self.generators.iter().map(|g| g.max_len()).max().unwrap_or(0)
    }
}

/// Triangulation quiver together with its weight data.
#[derive(Clone, Debug)]
pub struct SurfaceData<F: Field> {
    pub tq: TriangulationQuiver,
    pub w: WeightData<F>,
}

fn g_path(tq: &TriangulationQuiver, a: usize, len: usize) -> Path {
    let mut arrows = Vec::with_capacity(len);
    let mut x = a;
    for _ in 0..len {
        arrows.push(x);
        x = tq.g[x];
    }
    Path { source: tq.s(a), arrows }
}

/// `A_a`: the g-path from `a` of length `m_a n_a - 1`.
pub fn a_path<F: Field>(a: usize, tq: &TriangulationQuiver, w: &WeightData<F>) -> Path {
    g_path(tq, a, w.mn(tq, a) - 1)
}

/// `B_a`: the g-path from `a` of length `m_a n_a`.
pub fn b_path<F: Field>(a: usize, tq: &TriangulationQuiver, w: &WeightData<F>) -> Path {
    g_path(tq, a, w.mn(tq, a))
}

impl<F: Field> SurfaceData<F> {
    /// Parameter of the orbit of `a`, normalised to 1 on virtual arrows.
    pub fn c_norm(&self, field: &F, a: usize) -> F::Elem {
        if self.w.is_virtual(&self.tq, a) {
            field.one()
        } else {
            self.w.c_of(&self.tq, a).clone()
        }
    }

    fn is_virtual(&self, a: usize) -> bool {
        self.w.is_virtual(&self.tq, a)
    }

    /// The ideal generators of the socle deformed weighted surface algebra.
    pub fn weighted_surface_relations(&self, field: &F) -> Presentation<F> {
        let tq = &self.tq;
        let w = &self.w;
        let q = &tq.quiver;
        let mut gens = Vec::new();
        let n = q.num_arrows();
        let one = field.one();
        for a in 0..n {
            let ab = tq.bar[a];
            let c = self.c_norm(field, ab);
            let mut r;
            if tq.is_border_loop(a) {
                r = AlgebraElement::path(field, Path { source: tq.s(a), arrows: vec![a, a] });
                r.add_term(field, &field.neg(&c), &a_path(ab, tq, w));
                let b = &w.b[&tq.s(a)];
                r.add_term(field, &field.neg(b), &b_path(ab, tq, w));
            } else {
                r = AlgebraElement::path(field, Path { source: tq.s(a), arrows: vec![a, tq.f[a]] });
                r.add_term(field, &field.neg(&c), &a_path(ab, tq, w));
            }
            gens.push(r);
        }
        for a in 0..n {
            let f1 = tq.f[a];
            let f2 = tq.f[f1];
            let ab = tq.bar[a];
            let skip = self.is_virtual(f2) || (self.is_virtual(tq.f[ab]) && w.m_of(tq, ab) == 1 && tq.n_of(ab) == 3);
            if !skip {
                gens.push(AlgebraElement::term(field, one.clone(), Path { source: tq.s(a), arrows: vec![a, f1, tq.g[f1]] }));
            }
        }
        for a in 0..n {
            let ga = tq.g[a];
            let f1 = tq.f[a];
            let skip = self.is_virtual(f1) || (self.is_virtual(tq.f[f1]) && w.m_of(tq, f1) == 1 && tq.n_of(f1) == 3);
            if !skip {
                gens.push(AlgebraElement::term(field, one.clone(), Path { source: tq.s(a), arrows: vec![a, ga, tq.f[ga]] }));
            }
        }
        // drop exact duplicates (a border loop can produce the same zero relation twice)
        let mut uniq: Vec<AlgebraElement<F::Elem>> = Vec::new();
        for g in gens {
            if !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        Presentation { field: field.clone(), quiver: q.clone(), generators: uniq, meta: "weighted-surface".into() }
    }

    /// The Gabriel quiver: arrows that are not virtual.
    pub fn gabriel_arrows(&self) -> Vec<usize> {
        (0..self.tq.quiver.num_arrows()).filter(|&a| !self.is_virtual(a)).collect()
    }

    /// Expansion of an arrow as an element of the Gabriel path algebra: virtual
    /// arrows `x` become `bar(x) f(bar(x))`, recursively.
    pub fn gabriel_image(&self, field: &F, a: usize, gq: &Quiver, index: &[Option<usize>]) -> Result<AlgebraElement<F::Elem>> {
        self.gabriel_image_depth(field, a, gq, index, 0)
    }

    fn gabriel_image_depth(
        &self,
        field: &F,
        a: usize,
        gq: &Quiver,
        index: &[Option<usize>],
        depth: usize,
    ) -> Result<AlgebraElement<F::Elem>> {
        if depth > 4 {
            return Err(Error::internal("virtual substitution does not terminate"));
        }
        if let Some(i) = index[a] {
            return Ok(AlgebraElement::path(field, Path { source: gq.arrows[i].source, arrows: vec![i] }));
        }
        let tq = &self.tq;
        let x = tq.bar[a];
        let y = tq.f[x];
        if self.is_virtual(x) || (self.is_virtual(y) && self.is_virtual(tq.f[y])) {
            return Err(Error::internal(format!("arrows around {} are both virtual", tq.name(a))));
        }
        let left = self.gabriel_image_depth(field, x, gq, index, depth + 1)?;
        let right = self.gabriel_image_depth(field, y, gq, index, depth + 1)?;
        Ok(left.mul(field, &right, gq))
    }

    /// The Gabriel quiver together with the old-arrow -> new-arrow index map.
    pub fn gabriel_quiver(&self) -> (Quiver, Vec<Option<usize>>) {
        let q = &self.tq.quiver;
        let keep = self.gabriel_arrows();
        let mut index = vec![None; q.num_arrows()];
        for (i, &a) in keep.iter().enumerate() {
            index[a] = Some(i);
        }
        let gq = Quiver { vertices: q.vertices.clone(), arrows: keep.iter().map(|&a| q.arrows[a].clone()).collect() };
        (gq, index)
    }

    /// Presentation on the Gabriel quiver with virtual arrows substituted.
    pub fn gabriel_presentation(&self, field: &F, p: &Presentation<F>) -> Result<Presentation<F>> {
        let (gq, index) = self.gabriel_quiver();
        let images = (0..self.tq.quiver.num_arrows()).map(|a| self.gabriel_image(field, a, &gq, &index)).collect::<Result<Vec<_>>>()?;
        let stationary: Vec<usize> = (0..gq.num_vertices()).collect();
        let mut gens: Vec<AlgebraElement<F::Elem>> = Vec::new();
        for g in &p.generators {
            let s = g.substitute(field, &images, &stationary, &gq);
            if !s.is_zero() && !gens.contains(&s) {
                gens.push(s);
            }
        }
        Presentation::new(field, gq, gens, format!("{}+gabriel", p.meta))
    }
}

// ---------------------------------------------------------------------------
// named families

fn param<F: Field>(field: &F, x: &F::Elem) -> String {
    format!("[{}]", field.format(x))
}

fn alt(a: &str, b: &str, len: usize) -> String {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect::<Vec<_>>().join("*")
}

fn cyc(names: &[&str], len: usize) -> String {
    (0..len).map(|i| names[i % names.len()]).collect::<Vec<_>>().join("*")
}

/// Local algebra `A(m, c, b)` on loops `X`, `Y`.
pub fn family_a<F: Field>(field: &F, m: usize, c: &F::Elem, b: &F::Elem) -> Result<Presentation<F>> {
    if m < 2 {
        return Err(Error::input("A(m,c,b) needs m >= 2"));
    }
    if field.is_zero(c) {
        return Err(Error::input("A(m,c,b) needs c != 0"));
    }
    let q = Quiver::new(&["1"], &[("X", "1", "1"), ("Y", "1", "1")])?;
    let (pc, pb) = (param(field, c), param(field, b));
    let rels = vec![
        format!("X*X - {pc}*{} - {pb}*{}", alt("Y", "X", 2 * m - 1), alt("Y", "X", 2 * m)),
        "Y*Y".to_string(),
        format!("{} - {}", alt("X", "Y", 2 * m), alt("Y", "X", 2 * m)),
        alt("X", "Y", 2 * m + 1),
        alt("Y", "X", 2 * m + 1),
    ];
    let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    Presentation::from_strings(field, q, &rels, format!("A({m},{},{})", field.format(c), field.format(b)))
}

/// `B(r, c, b)` on loops `alpha`, `rho` and arrows `beta`, `omega`.
pub fn family_b<F: Field>(field: &F, r: usize, c: &F::Elem, b: &F::Elem) -> Result<Presentation<F>> {
    if r < 1 {
        return Err(Error::input("B(r,c,b) needs r >= 1"));
    }
    if field.is_zero(c) {
        return Err(Error::input("B(r,c,b) needs c != 0"));
    }
    let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("omega", "2", "1"), ("rho", "2", "2")])?;
    let (pc, pb) = (param(field, c), param(field, b));
    let rels = vec![
        format!("alpha*alpha = {pc}*beta*omega + {pb}*beta*omega*alpha"),
        "alpha*beta*omega = beta*omega*alpha".to_string(),
        format!("omega*alpha*beta = rho^{r}"),
        "omega*beta".to_string(),
        "beta*rho".to_string(),
        "rho*omega".to_string(),
    ];
    let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    Presentation::from_strings(field, q, &rels, format!("B({r},{},{})", field.format(c), field.format(b)))
}

/// `D(b, c)` on the triangle with loops `alpha`, `eta`, `mu`.
pub fn family_d<F: Field>(field: &F, b: &[F::Elem; 3], c: &[F::Elem; 3]) -> Result<Presentation<F>> {
    family_d_split(field, b, c, c)
}

/// `D` with the loop squares decoupled: `c` enters the commutativity relations,
/// `l` the loop relations. An idempotent corner whose middle loop is a composite
/// path lands here with `l[1] = 0`.
pub fn family_d_split<F: Field>(field: &F, b: &[F::Elem; 3], c: &[F::Elem; 3], l: &[F::Elem; 3]) -> Result<Presentation<F>> {
    if c.iter().any(|x| field.is_zero(x)) {
        return Err(Error::input("D(b,c) needs nonzero c"));
    }
    let q = Quiver::new(
        &["1", "2", "3"],
        &[("alpha", "1", "1"), ("beta", "1", "2"), ("eta", "2", "2"), ("gamma", "2", "3"), ("mu", "3", "3"), ("sigma", "3", "1")],
    )?;
    let [c1, c2, c3] = [param(field, &c[0]), param(field, &c[1]), param(field, &c[2])];
    let [b1, b2, b3] = [param(field, &b[0]), param(field, &b[1]), param(field, &b[2])];
    let [l1, l2, l3] = [param(field, &l[0]), param(field, &l[1]), param(field, &l[2])];
    let rels = vec![
        format!("beta*gamma = {c1}*alpha*beta*eta*gamma*mu"),
        format!("gamma*sigma = {c2}*eta*gamma*mu*sigma*alpha"),
        format!("sigma*beta = {c3}*mu*sigma*alpha*beta*eta"),
        "alpha*beta*eta*gamma*mu*sigma = beta*eta*gamma*mu*sigma*alpha".into(),
        "eta*gamma*mu*sigma*alpha*beta = gamma*mu*sigma*alpha*beta*eta".into(),
        "mu*sigma*alpha*beta*eta*gamma = sigma*alpha*beta*eta*gamma*mu".into(),
        format!("alpha*alpha = {l1}*beta*eta*gamma*mu*sigma + {b1}*beta*eta*gamma*mu*sigma*alpha"),
        format!("eta*eta = {l2}*gamma*mu*sigma*alpha*beta + {b2}*gamma*mu*sigma*alpha*beta*eta"),
        format!("mu*mu = {l3}*sigma*alpha*beta*eta*gamma + {b3}*sigma*alpha*beta*eta*gamma*mu"),
        "beta*gamma*mu".into(),
        "mu*sigma*beta".into(),
        "gamma*sigma*alpha".into(),
        "alpha*beta*gamma".into(),
        "sigma*beta*eta".into(),
        "eta*gamma*sigma".into(),
        "alpha*alpha*beta".into(),
        "sigma*alpha*alpha".into(),
    ];
    let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    let fmt = |v: &[F::Elem; 3]| v.iter().map(|x| field.format(x)).collect::<Vec<_>>().join(",");
    let mut tag = format!("D(b=({}),c=({})", fmt(b), fmt(c));
    if l != c {
        tag += &format!(",l=({})", fmt(l));
    }
    tag.push(')');
    Presentation::from_strings(field, q, &rels, tag)
}

/// `Q(2A)^k(b)` on the Gabriel quiver `alpha`, `beta`, `gamma`.
pub fn family_q2a<F: Field>(field: &F, k: usize, b: &F::Elem) -> Result<Presentation<F>> {
    if k < 2 {
        return Err(Error::input("Q(2A)^k(b) needs k >= 2"));
    }
    let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1")])?;
    let pb = param(field, b);
    let rels = vec![
        format!("alpha*alpha = {} + {pb}*{}", cyc(&["beta", "gamma", "alpha"], 3 * k - 1), cyc(&["beta", "gamma", "alpha"], 3 * k)),
        format!("beta*gamma*beta = {}", cyc(&["alpha", "beta", "gamma"], 3 * k - 1)),
        format!("gamma*beta*gamma = {}", cyc(&["gamma", "alpha", "beta"], 3 * k - 1)),
        "alpha*alpha*beta".into(),
    ];
    let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    Presentation::from_strings(field, q, &rels, format!("Q(2A)^{k}({})", field.format(b)))
}

/// `Q(2B)_3^t(a, b)` on loops `alpha`, `eta` and arrows `beta`, `gamma`.
pub fn family_q2b3<F: Field>(field: &F, t: usize, a: &F::Elem, b: &F::Elem) -> Result<Presentation<F>> {
    if t < 3 {
        return Err(Error::input("Q(2B)_3^t(a,b) needs t >= 3"));
    }
    if field.is_zero(a) {
        return Err(Error::input("Q(2B)_3^t(a,b) needs a != 0"));
    }
    if t == 3 && field.is_one(a) {
        return Err(Error::input("Q(2B)_3^3(1,b) is the singular disc algebra"));
    }
    let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1"), ("eta", "2", "2")])?;
    let (pa, pb) = (param(field, a), param(field, b));
    let rels = vec![
        "alpha*beta = beta*eta".to_string(),
        "eta*gamma = gamma*alpha".to_string(),
        format!("alpha*alpha = beta*gamma + {pb}*alpha^3"),
        format!("gamma*beta = {pa}*eta^{}", t - 1),
        "alpha^4".into(),
        format!("eta^{}", t + 1),
        "gamma*alpha*alpha".into(),
        "alpha*alpha*beta".into(),
    ];
    let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
    Presentation::from_strings(field, q, &rels, format!("Q(2B)_3^{t}({},{})", field.format(a), field.format(b)))
}

// ---------------------------------------------------------------------------
// named triangulation quivers

fn map_b<F: Field>(tq: &TriangulationQuiver, vals: &[(&str, F::Elem)]) -> Result<BTreeMap<usize, F::Elem>> {
    vals.iter()
        .map(|(v, x)| tq.quiver.vertex(v).map(|i| (i, x.clone())).ok_or_else(|| Error::input(format!("unknown vertex {v}"))))
        .collect()
}

/// The disc with two triangles: four vertices, border {3, 4}.
pub fn disc_2_2<F: Field>(field: &F, c: &F::Elem, b3: &F::Elem, b4: &F::Elem) -> Result<SurfaceData<F>> {
    let q = Quiver::new(
        &["1", "2", "3", "4"],
        &[
            ("alpha", "3", "1"),
            ("beta", "1", "4"),
            ("gamma", "4", "4"),
            ("nu", "4", "2"),
            ("delta", "2", "3"),
            ("rho", "3", "3"),
            ("xi", "1", "2"),
            ("eta", "2", "1"),
        ],
    )?;
    let tq = TriangulationQuiver::from_cycles(q, "(alpha xi delta)(beta nu eta)(rho)(gamma)")?;
    let b = map_b::<F>(&tq, &[("3", b3.clone()), ("4", b4.clone())])?;
    let w = WeightData::new(field, &tq, vec![3, 1], vec![c.clone(), field.one()], b)?;
    Ok(SurfaceData { tq, w })
}

/// The two-vertex triangulation quiver with `f = (alpha)(beta eta gamma)`:
/// weights `m_alpha` on `(alpha beta gamma)` and `m_eta` on `(eta)`.
pub fn two_vertex<F: Field>(
    field: &F,
    m_alpha: u32,
    m_eta: u32,
    c_alpha: &F::Elem,
    c_eta: &F::Elem,
    b: &F::Elem,
) -> Result<SurfaceData<F>> {
    let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1"), ("eta", "2", "2")])?;
    let tq = TriangulationQuiver::from_cycles(q, "(alpha)(beta eta gamma)")?;
    let bm = map_b::<F>(&tq, &[("1", b.clone())])?;
    let w = WeightData::new(field, &tq, vec![m_alpha, m_eta], vec![c_alpha.clone(), c_eta.clone()], bm)?;
    Ok(SurfaceData { tq, w })
}

/// A four-vertex quiver with border loops at `i` and `r` whose corner algebra
/// at `e_i + e_j` is of type B: the g-orbit of `alpha` has weight 1 and the
/// orbit `(gamma xi)` has weight `r`.
pub fn corner_b_config<F: Field>(field: &F, r: u32, c: &F::Elem, c2: &F::Elem, bi: &F::Elem, br: &F::Elem) -> Result<SurfaceData<F>> {
    let q = Quiver::new(
        &["i", "j", "k", "r"],
        &[
            ("alpha", "i", "i"),
            ("beta", "i", "j"),
            ("gamma", "j", "k"),
            ("sigma", "k", "i"),
            ("delta", "j", "r"),
            ("epsilon", "r", "k"),
            ("xi", "k", "j"),
            ("lambda", "r", "r"),
        ],
    )?;
    let tq = TriangulationQuiver::from_cycles(q, "(alpha)(beta gamma sigma)(delta epsilon xi)(lambda)")?;
    let bm = map_b::<F>(&tq, &[("i", bi.clone()), ("r", br.clone())])?;
    let oa = tq.orbit_by_arrow("alpha").unwrap();
    let og = tq.orbit_by_arrow("gamma").unwrap();
    let mut m = vec![0; 2];
    let mut cs = vec![field.one(); 2];
    m[oa] = 1;
    m[og] = r;
    cs[oa] = c.clone();
    cs[og] = c2.clone();
    let w = WeightData::new(field, &tq, m, cs, bm)?;
    Ok(SurfaceData { tq, w })
}

/// Four vertices: the triangle `(beta gamma sigma)` with border loops at 1 and 3
/// and a second triangle `(delta lambda epsilon)` hanging off vertex 2.
pub fn corner_d_config<F: Field>(
    field: &F,
    m_lambda: u32,
    c: &F::Elem,
    c_lambda: &F::Elem,
    b1: &F::Elem,
    b3: &F::Elem,
) -> Result<SurfaceData<F>> {
    let q = Quiver::new(
        &["1", "2", "3", "4"],
        &[
            ("alpha", "1", "1"),
            ("beta", "1", "2"),
            ("gamma", "2", "3"),
            ("sigma", "3", "1"),
            ("mu", "3", "3"),
            ("delta", "2", "4"),
            ("lambda", "4", "4"),
            ("epsilon", "4", "2"),
        ],
    )?;
    let tq = TriangulationQuiver::from_cycles(q, "(alpha)(mu)(beta gamma sigma)(delta lambda epsilon)")?;
    let bm = map_b::<F>(&tq, &[("1", b1.clone()), ("3", b3.clone())])?;
    let oa = tq.orbit_by_arrow("alpha").unwrap();
    let ol = tq.orbit_by_arrow("lambda").unwrap();
    let mut m = vec![0; 2];
    let mut cs = vec![field.one(); 2];
    m[oa] = 1;
    m[ol] = m_lambda;
    cs[oa] = c.clone();
    cs[ol] = c_lambda.clone();
    let w = WeightData::new(field, &tq, m, cs, bm)?;
    Ok(SurfaceData { tq, w })
}

/// The triangle with three border loops `alpha`, `eta`, `mu`; one g-orbit.
pub fn triangle_config<F: Field>(field: &F, m: u32, c: &F::Elem, b: &[F::Elem; 3]) -> Result<SurfaceData<F>> {
    let q = Quiver::new(
        &["1", "2", "3"],
        &[("alpha", "1", "1"), ("beta", "1", "2"), ("eta", "2", "2"), ("gamma", "2", "3"), ("mu", "3", "3"), ("sigma", "3", "1")],
    )?;
    let tq = TriangulationQuiver::from_cycles(q, "(alpha)(eta)(mu)(beta gamma sigma)")?;
    let bm = map_b::<F>(&tq, &[("1", b[0].clone()), ("2", b[1].clone()), ("3", b[2].clone())])?;
    let w = WeightData::new(field, &tq, vec![m], vec![c.clone()], bm)?;
    Ok(SurfaceData { tq, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use std::collections::BTreeSet;

    fn set(p: &Presentation<FiniteField>) -> BTreeSet<String> {
        p.display().into_iter().collect()
    }

    #[test]
    fn disc_relations_match_display() {
        let f = FiniteField::gf(2);
        let sd = disc_2_2(&f, &1, &1, &0).unwrap();
        let p = sd.weighted_surface_relations(&f);
        assert_eq!(p.generators.len(), 20);
        let q = &p.quiver;
        let expected = [
            "alpha*xi = rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma*nu",
            "nu*eta = gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho*alpha",
            "xi*delta = beta*gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho",
            "eta*beta = delta*rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma*nu*delta*rho*alpha*beta*gamma",
            "delta*alpha = eta",
            "beta*nu = xi",
            "rho*rho = (alpha*beta*gamma*nu*delta*rho)^2*alpha*beta*gamma*nu*delta + (alpha*beta*gamma*nu*delta*rho)^3",
            "gamma*gamma = (nu*delta*rho*alpha*beta*gamma)^2*nu*delta*rho*alpha*beta",
            "alpha*xi*eta",
            "xi*delta*rho",
            "nu*eta*xi",
            "eta*beta*gamma",
            "rho*rho*alpha",
            "gamma*gamma*nu",
            "xi*eta*beta",
            "rho*alpha*xi",
            "eta*xi*delta",
            "gamma*nu*eta",
            "delta*rho*rho",
            "beta*gamma*gamma",
        ];
        let want: BTreeSet<String> = expected.iter().map(|s| parse_relation(&f, q, s).unwrap().display(&f, q)).collect();
        assert_eq!(set(&p), want);
    }

    #[test]
    fn two_vertex_q2b_form_has_twelve_relations() {
        let f = FiniteField::gf(4);
        let sd = two_vertex(&f, 1, 4, &1, &1, &0).unwrap();
        let p = sd.weighted_surface_relations(&f);
        assert_eq!(p.generators.len(), 12);
        let q = &p.quiver;
        let expected = [
            "beta*eta = alpha*beta",
            "eta*gamma = gamma*alpha",
            "gamma*beta = eta^3",
            "alpha*alpha = beta*gamma",
            "alpha*alpha*beta",
            "beta*eta*eta",
            "eta*gamma*alpha",
            "gamma*beta*gamma",
            "alpha*beta*eta",
            "beta*gamma*beta",
            "eta*eta*gamma",
            "gamma*alpha*alpha",
        ];
        let want: BTreeSet<String> = expected.iter().map(|s| parse_relation(&f, q, s).unwrap().display(&f, q)).collect();
        assert_eq!(set(&p), want);
    }

    #[test]
    fn a_and_b_paths() {
        let f = FiniteField::gf(2);
        let sd = two_vertex(&f, 3, 2, &1, &1, &1).unwrap();
        let tq = &sd.tq;
        let q = &tq.quiver;
        let alpha = q.arrow("alpha").unwrap();
        assert_eq!(a_path(alpha, tq, &sd.w).display(q), cyc(&["alpha", "beta", "gamma"], 8));
        assert_eq!(b_path(alpha, tq, &sd.w).display(q), cyc(&["alpha", "beta", "gamma"], 9));
        let d = disc_2_2(&f, &1, &1, &0).unwrap();
        let xi = d.tq.quiver.arrow("xi").unwrap();
        assert_eq!(a_path(xi, &d.tq, &d.w).display(&d.tq.quiver), "xi");
        assert_eq!(b_path(xi, &d.tq, &d.w).display(&d.tq.quiver), "xi*eta");
    }

    #[test]
    fn gabriel_substitution_on_disc() {
        let f = FiniteField::gf(2);
        let sd = disc_2_2(&f, &1, &1, &0).unwrap();
        let p = sd.weighted_surface_relations(&f);
        let g = sd.gabriel_presentation(&f, &p).unwrap();
        assert_eq!(g.quiver.num_arrows(), 6);
        let shown = set(&g);
        let q = &g.quiver;
        let want = parse_relation(&f, q, "alpha*beta*nu*delta*alpha").unwrap().display(&f, q);
        assert!(shown.contains(&want));
        // the defining relations of the virtual arrows disappear
        assert!(g.generators.len() < p.generators.len());
    }

    #[test]
    fn family_a_display() {
        let f = FiniteField::gf(2);
        let p = family_a(&f, 2, &1, &1).unwrap();
        let q = &p.quiver;
        let want: BTreeSet<String> = ["X*X - Y*X*Y - Y*X*Y*X", "Y*Y", "X*Y*X*Y - Y*X*Y*X", "X*Y*X*Y*X", "Y*X*Y*X*Y"]
            .iter()
            .map(|s| parse_relation(&f, q, s).unwrap().display(&f, q))
            .collect();
        assert_eq!(set(&p), want);
    }

    #[test]
    fn family_q2b_rejects_singular_parameters() {
        let f = FiniteField::gf(4);
        assert!(family_q2b3(&f, 3, &1, &0).is_err());
        assert!(family_q2b3(&f, 3, &0, &0).is_err());
        assert!(family_q2b3(&f, 3, &2, &0).is_ok());
        assert!(family_q2b3(&f, 2, &2, &0).is_err());
    }

    #[test]
    fn parser_handles_powers_and_scalars() {
        let f = FiniteField::gf(4);
        let p = family_q2b3(&f, 4, &1, &0).unwrap();
        let q = &p.quiver;
        let e = parse_element(&f, q, "[w]*eta^2 + 3*eta*eta").unwrap();
        // 3 = 1 in characteristic 2
        assert_eq!(e.display(&f, q), "[w+1]*eta*eta");
        assert!(parse_element(&f, q, "alpha*gamma").unwrap().is_zero());
        assert!(parse_element(&f, q, "alpha*").is_err());
        assert!(parse_element(&f, q, "zeta").is_err());
    }

    #[test]
    fn deglex_order() {
        let a = Path { source: 0, arrows: vec![1] };
        let b = Path { source: 0, arrows: vec![0, 0] };
        let c = Path { source: 0, arrows: vec![0, 1] };
        assert!(a < b && b < c);
        assert!(Path::stationary(1) < a);
    }
}
