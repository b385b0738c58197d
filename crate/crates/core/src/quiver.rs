//! Quivers, triangulation quivers `(Q, f)` and weight data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Vertices and arrows are numbered by input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from `(name, source, target)` triples naming vertices by string.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let find = |v: &str| vertices.iter().position(|x| x == v).ok_or_else(|| Error::input(format!("unknown vertex {v:?}")));
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            out.push(Arrow { name: name.to_string(), source: find(s)?, target: find(t)? });
        }
        let q = Quiver { vertices, arrows: out };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::input("quiver has no vertices"));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::input(format!("arrow {} has an out-of-range endpoint", a.name)));
            }
            if a.name.is_empty()
                || a.name.contains('*')
                || a.name.contains(' ')
                || (a.name.starts_with('e') && a.name[1..].parse::<u64>().is_ok())
            {
                return Err(Error::input(format!("invalid arrow name {:?}", a.name)));
            }
            if !seen.insert(a.name.clone()) {
                return Err(Error::input(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn is_loop(&self, a: usize) -> bool {
        self.arrows[a].source == self.arrows[a].target
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_two_regular(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.out_arrows(v).len() == 2 && self.in_arrows(v).len() == 2)
    }
}

/// Parses cycle notation such as `"(a b c)(d)"` into a permutation of arrow ids.
pub fn parse_cycles(q: &Quiver, s: &str) -> Result<Vec<usize>> {
    let n = q.num_arrows();
    let mut perm: Vec<Option<usize>> = vec![None; n];
    let cleaned = s.replace(')', " ) ").replace('(', " ( ");
    let mut cycle: Vec<usize> = Vec::new();
    let mut open = false;
    let close = |cycle: &mut Vec<usize>, perm: &mut Vec<Option<usize>>| -> Result<()> {
        for (i, &a) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            if perm[a].replace(next).is_some() {
                return Err(Error::input(format!("arrow {} appears twice in {s:?}", q.arrows[a].name)));
            }
        }
        cycle.clear();
        Ok(())
    };
    for tok in cleaned.split_whitespace() {
        match tok {
            "(" => {
                if open {
                    return Err(Error::input(format!("nested cycle in {s:?}")));
                }
                open = true;
            }
            ")" => {
                if !open {
                    return Err(Error::input(format!("unbalanced cycle in {s:?}")));
                }
                open = false;
                close(&mut cycle, &mut perm)?;
            }
            name => {
                let a = q.arrow(name).ok_or_else(|| Error::input(format!("unknown arrow {name:?}")))?;
                cycle.push(a);
            }
        }
    }
    if open {
        return Err(Error::input(format!("unbalanced cycle in {s:?}")));
    }
    // arrows not mentioned are fixed points
    Ok(perm.iter().enumerate().map(|(i, p)| p.unwrap_or(i)).collect())
}

/// Cycle decomposition of a permutation, each cycle starting at its least element.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = perm[x];
        }
        out.push(c);
    }
    out
}

#[derive(Clone, Debug)]
pub struct TriangulationQuiver {
    pub quiver: Quiver,
    pub f: Vec<usize>,
    pub bar: Vec<usize>,
    pub g: Vec<usize>,
    /// g-cycles, each listed from its least arrow id
    pub g_orbits: Vec<Vec<usize>>,
    /// arrow -> index into `g_orbits`
    pub orbit_of: Vec<usize>,
    /// border vertices in increasing order
    pub border: Vec<usize>,
}

impl TriangulationQuiver {
    pub fn new(quiver: Quiver, f: Vec<usize>) -> Result<TriangulationQuiver> {
        quiver.validate()?;
        let n = quiver.num_arrows();
        if quiver.num_vertices() < 2 {
            return Err(Error::input("a triangulation quiver needs at least two vertices"));
        }
        if !quiver.is_two_regular() {
            return Err(Error::input("quiver is not 2-regular"));
        }
        if !quiver.is_connected() {
            return Err(Error::input("quiver is not connected"));
        }
        if f.len() != n {
            return Err(Error::input("f must be defined on every arrow"));
        }
        let mut hit = vec![false; n];
        for &x in &f {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(Error::input("f is not a permutation"));
            }
        }
        for a in 0..n {
            if f[f[f[a]]] != a {
                return Err(Error::input(format!("f^3 is not the identity at {}", quiver.arrows[a].name)));
            }
            if quiver.arrows[a].target != quiver.arrows[f[a]].source {
                return Err(Error::input(format!("t({}) != s(f({}))", quiver.arrows[a].name, quiver.arrows[a].name)));
            }
        }
        let bar: Vec<usize> = (0..n)
            .map(|a| {
                let outs = quiver.out_arrows(quiver.arrows[a].source);
                if outs[0] == a {
                    outs[1]
                } else {
                    outs[0]
                }
            })
            .collect();
        let g: Vec<usize> = (0..n).map(|a| bar[f[a]]).collect();
        let g_orbits = cycles(&g);
        let mut orbit_of = vec![0; n];
        for (i, o) in g_orbits.iter().enumerate() {
            for &a in o {
                orbit_of[a] = i;
            }
        }
        let mut border: Vec<usize> = (0..n).filter(|&a| f[a] == a && quiver.is_loop(a)).map(|a| quiver.arrows[a].source).collect();
        border.sort();
        border.dedup();
        Ok(TriangulationQuiver { quiver, f, bar, g, g_orbits, orbit_of, border })
    }

    pub fn from_cycles(quiver: Quiver, f_cycles: &str) -> Result<TriangulationQuiver> {
        let f = parse_cycles(&quiver, f_cycles)?;
        TriangulationQuiver::new(quiver, f)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.quiver.arrows[a].name
    }

    pub fn s(&self, a: usize) -> usize {
        self.quiver.arrows[a].source
    }

    pub fn t(&self, a: usize) -> usize {
        self.quiver.arrows[a].target
    }

    pub fn n_of(&self, a: usize) -> usize {
        self.g_orbits[self.orbit_of[a]].len()
    }

    pub fn is_border_loop(&self, a: usize) -> bool {
        self.f[a] == a && self.quiver.is_loop(a)
    }

    /// The border loop at a border vertex.
    pub fn border_loop(&self, v: usize) -> Option<usize> {
        (0..self.quiver.num_arrows()).find(|&a| self.is_border_loop(a) && self.s(a) == v)
    }

    /// Orbit rendered with arrow names, e.g. `(a b c)`.
    pub fn orbit_string(&self, o: usize) -> String {
        let names: Vec<&str> = self.g_orbits[o].iter().map(|&a| self.name(a)).collect();
        format!("({})", names.join(" "))
    }

    /// g-orbits rendered in cycle notation.
    pub fn g_orbit_strings(&self) -> Vec<String> {
        (0..self.g_orbits.len()).map(|o| self.orbit_string(o)).collect()
    }

    /// The orbit containing the arrow with the given name.
    pub fn orbit_by_arrow(&self, name: &str) -> Option<usize> {
        self.quiver.arrow(name).map(|a| self.orbit_of[a])
    }
}

/// Weight, parameter and border functions.
#[derive(Clone, Debug)]
pub struct WeightData<F: Field> {
    /// per g-orbit
    pub m: Vec<u32>,
    /// per g-orbit, nonzero
    pub c: Vec<F::Elem>,
    /// per border vertex
    pub b: BTreeMap<usize, F::Elem>,
}

impl<F: Field> WeightData<F> {
    /// Validates weight conditions (1)-(3), nonzero parameters, the border
    /// domain, and the singular disc exclusion.
    pub fn new(field: &F, tq: &TriangulationQuiver, m: Vec<u32>, c: Vec<F::Elem>, b: BTreeMap<usize, F::Elem>) -> Result<WeightData<F>> {
        let no = tq.g_orbits.len();
        if m.len() != no || c.len() != no {
            return Err(Error::input(format!("weights and parameters must be given for all {no} g-orbits")));
        }
        if m.iter().any(|&x| x == 0) {
            return Err(Error::input("weights must be positive"));
        }
        if c.iter().any(|x| field.is_zero(x)) {
            return Err(Error::input("parameters must be nonzero"));
        }
        let keys: Vec<usize> = b.keys().copied().collect();
        if keys != tq.border {
            return Err(Error::input("border function must be defined exactly on the border"));
        }
        let w = WeightData { m, c, b };
        for a in 0..tq.quiver.num_arrows() {
            let mn = w.mn(tq, a);
            if mn < 2 {
                return Err(Error::input(format!("weight condition m*n >= 2 fails at {}", tq.name(a))));
            }
            let ab = tq.bar[a];
            if w.is_virtual(tq, ab) {
                let need = if tq.quiver.is_loop(ab) { 4 } else { 3 };
                if mn < need {
                    return Err(Error::input(format!(
                        "weight condition m*n >= {need} fails at {} (its partner {} is virtual)",
                        tq.name(a),
                        tq.name(ab)
                    )));
                }
            }
        }
        if w.is_singular_disc(field, tq) {
            return Err(Error::input("configuration is the singular disc algebra D(1)"));
        }
        Ok(w)
    }

    pub fn m_of(&self, tq: &TriangulationQuiver, a: usize) -> u32 {
        self.m[tq.orbit_of[a]]
    }

    pub fn c_of(&self, tq: &TriangulationQuiver, a: usize) -> &F::Elem {
        &self.c[tq.orbit_of[a]]
    }

    pub fn mn(&self, tq: &TriangulationQuiver, a: usize) -> usize {
        self.m_of(tq, a) as usize * tq.n_of(a)
    }

    pub fn is_virtual(&self, tq: &TriangulationQuiver, a: usize) -> bool {
        self.mn(tq, a) == 2
    }

    /// The two-vertex quiver with orbit sizes 3 and 1, weights 1 and 3, and
    /// normalised parameter `c_loop * c_big^3 = 1`.
    fn is_singular_disc(&self, field: &F, tq: &TriangulationQuiver) -> bool {
        if tq.quiver.num_vertices() != 2 || tq.g_orbits.len() != 2 || tq.border.len() != 1 {
            return false;
        }
        let (big, small) = if tq.g_orbits[0].len() == 3 { (0, 1) } else { (1, 0) };
        if tq.g_orbits[big].len() != 3 || tq.g_orbits[small].len() != 1 {
            return false;
        }
        if self.m[big] != 1 || self.m[small] != 3 {
            return false;
        }
        let a = field.mul(&self.c[small], &field.pow(&self.c[big], 3));
        field.is_one(&a)
    }
}

/// `virtual_arrows`: arrows with `m * n = 2`.
pub fn virtual_arrows<F: Field>(tq: &TriangulationQuiver, w: &WeightData<F>) -> Vec<usize> {
    (0..tq.quiver.num_arrows()).filter(|&a| w.is_virtual(tq, a)).collect()
}

/// Sum over g-orbits of `m * n^2`.
pub fn expected_dimension<F: Field>(tq: &TriangulationQuiver, w: &WeightData<F>) -> usize {
    tq.g_orbits.iter().enumerate().map(|(i, o)| w.m[i] as usize * o.len() * o.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use proptest::prelude::*;

    pub(crate) fn disc_quiver() -> TriangulationQuiver {
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
        )
        .unwrap();
        TriangulationQuiver::from_cycles(q, "(alpha xi delta)(beta nu eta)(rho)(gamma)").unwrap()
    }

    #[test]
    fn disc_orbits_and_border() {
        let tq = disc_quiver();
        assert_eq!(tq.g_orbit_strings(), vec!["(alpha beta gamma nu delta rho)", "(xi eta)"]);
        let border: Vec<&str> = tq.border.iter().map(|&v| tq.quiver.vertices[v].as_str()).collect();
        assert_eq!(border, vec!["3", "4"]);
        let f = FiniteField::gf(2);
        let b = BTreeMap::from([(2, 1), (3, 0)]);
        let w = WeightData::new(&f, &tq, vec![3, 1], vec![1, 1], b).unwrap();
        assert_eq!(expected_dimension(&tq, &w), 112);
        let v: Vec<&str> = virtual_arrows(&tq, &w).iter().map(|&a| tq.name(a)).collect();
        assert_eq!(v, vec!["xi", "eta"]);
    }

    fn two_vertex() -> TriangulationQuiver {
        let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1"), ("eta", "2", "2")]).unwrap();
        TriangulationQuiver::from_cycles(q, "(alpha)(beta eta gamma)").unwrap()
    }

    #[test]
    fn two_vertex_orbits() {
        let tq = two_vertex();
        assert_eq!(tq.g_orbit_strings(), vec!["(alpha beta gamma)", "(eta)"]);
        assert_eq!(tq.border, vec![0]);
        let f = FiniteField::gf(2);
        for k in 2..5u32 {
            let w = WeightData::new(&f, &tq, vec![k, 2], vec![1, 1], BTreeMap::from([(0, 1)])).unwrap();
            assert_eq!(expected_dimension(&tq, &w), 9 * k as usize + 2);
            assert_eq!(virtual_arrows(&tq, &w), vec![3]);
        }
        for t in 3..6u32 {
            let c = if t == 3 { vec![1, 2] } else { vec![1, 1] };
            let f4 = FiniteField::gf(4);
            let w = WeightData::new(&f4, &tq, vec![1, t], c, BTreeMap::from([(0, 0)])).unwrap();
            assert_eq!(expected_dimension(&tq, &w), 9 + t as usize);
        }
    }

    #[test]
    fn singular_disc_rejected() {
        let tq = two_vertex();
        let f = FiniteField::gf(2);
        assert!(WeightData::new(&f, &tq, vec![1, 3], vec![1, 1], BTreeMap::from([(0, 0)])).is_err());
    }

    #[test]
    fn weight_conditions() {
        let tq = two_vertex();
        let f = FiniteField::gf(2);
        // eta virtual loop forces m*n >= 4 on gamma's orbit
        assert!(WeightData::new(&f, &tq, vec![1, 2], vec![1, 1], BTreeMap::from([(0, 0)])).is_err());
        // m*n >= 2 on the loop orbit
        assert!(WeightData::new(&f, &tq, vec![2, 1], vec![1, 1], BTreeMap::from([(0, 0)])).is_err());
        // border function must live on the border
        assert!(WeightData::new(&f, &tq, vec![2, 2], vec![1, 1], BTreeMap::new()).is_err());
        assert!(WeightData::new(&f, &tq, vec![2, 2], vec![1, 0], BTreeMap::from([(0, 0)])).is_err());
    }

    #[test]
    fn out_degree_one_rejected() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(TriangulationQuiver::from_cycles(q, "(a b)").is_err());
    }

    #[test]
    fn f_cube_and_composability_checked() {
        let q = Quiver::new(&["1", "2"], &[("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1"), ("eta", "2", "2")]).unwrap();
        assert!(TriangulationQuiver::from_cycles(q.clone(), "(alpha beta)(gamma eta)").is_err());
        assert!(TriangulationQuiver::from_cycles(q, "(alpha)(beta gamma eta)").is_err());
    }

    /// Random 2-regular quivers built from f-cycles of "triangles" glued by a
    /// random pairing; every output of the generator is a valid (Q, f).
    fn random_tq(seed: Vec<u8>) -> Option<TriangulationQuiver> {
        // build from a random permutation of half-edges: vertex v has out-slots
        // 2v, 2v+1; arrows are in bijection with out-slots; f is built as 3-cycles
        // or fixed loops, then the quiver is read off from f
        let nv = 2 + (seed[0] as usize % 4);
        let n = 2 * nv;
        // random target assignment: a permutation of in-slots
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, s) in seed.iter().enumerate().skip(1) {
            let j = i % n;
            let k = *s as usize % n;
            perm.swap(j, k);
        }
        let arrows: Vec<(String, usize, usize)> = (0..n).map(|a| (format!("a{a}"), a / 2, perm[a] / 2)).collect();
        let vnames: Vec<String> = (0..nv).map(|v| format!("v{v}")).collect();
        let q = Quiver {
            vertices: vnames,
            arrows: arrows.iter().map(|(nm, s, t)| Arrow { name: nm.clone(), source: *s, target: *t }).collect(),
        };
        if q.validate().is_err() {
            return None;
        }
        // search for some f by brute force over permutations is expensive; use a greedy DFS
        let mut f = vec![usize::MAX; n];
        fn dfs(q: &Quiver, f: &mut Vec<usize>) -> bool {
            let Some(a) = f.iter().position(|&x| x == usize::MAX) else { return true };
            let used = |f: &Vec<usize>, b: usize| f.contains(&b);
            // fixed loop
            if q.arrows[a].source == q.arrows[a].target && !used(f, a) {
                f[a] = a;
                if dfs(q, f) {
                    return true;
                }
                f[a] = usize::MAX;
            }
            for b in q.out_arrows(q.arrows[a].target) {
                if b == a || used(f, b) || f[b] != usize::MAX {
                    continue;
                }
                for c in q.out_arrows(q.arrows[b].target) {
                    if c == a || c == b || used(f, c) || f[c] != usize::MAX || q.arrows[c].target != q.arrows[a].source {
                        continue;
                    }
                    f[a] = b;
                    f[b] = c;
                    f[c] = a;
                    if dfs(q, f) {
                        return true;
                    }
                    f[a] = usize::MAX;
                    f[b] = usize::MAX;
                    f[c] = usize::MAX;
                }
            }
            false
        }
        if !dfs(&q, &mut f) {
            return None;
        }
        TriangulationQuiver::new(q, f).ok()
    }

    proptest! {
        #[test]
        fn g_is_permutation_and_orbits_partition(seed in proptest::collection::vec(any::<u8>(), 12)) {
            if let Some(tq) = random_tq(seed) {
                let n = tq.quiver.num_arrows();
                let mut img = tq.g.clone();
                img.sort();
                prop_assert_eq!(img, (0..n).collect::<Vec<_>>());
                prop_assert_eq!(tq.g_orbits.iter().map(|o| o.len()).sum::<usize>(), n);
                for a in 0..n {
                    prop_assert_eq!(tq.g[a], tq.bar[tq.f[a]]);
                    prop_assert!(tq.bar[a] != a);
                    prop_assert_eq!(tq.s(tq.bar[a]), tq.s(a));
                    if tq.is_border_loop(a) {
                        prop_assert_eq!(tq.bar[a], tq.g[a]);
                    }
                }
            }
        }
    }
}
