//! Dense exact linear algebra. Rows are vectors; a matrix with `n` rows
//! and `m` columns describes the map `K^n -> K^m`, `x -> x * M`.

use crate::field::Field;

pub type Row<F> = Vec<<F as Field>::Elem>;

/// Sparse vector: sorted `(index, nonzero coefficient)` pairs.
pub type Sparse<E> = Vec<(usize, E)>;

pub fn to_dense<F: Field>(f: &F, v: &Sparse<F::Elem>, n: usize) -> Row<F> {
    let mut d = vec![f.zero(); n];
    for (i, c) in v {
        d[*i] = c.clone();
    }
    d
}

pub fn to_sparse<F: Field>(f: &F, v: &[F::Elem]) -> Sparse<F::Elem> {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i, c.clone())).collect()
}

/// `acc += c * v` on dense vectors.
pub fn axpy<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !f.is_zero(x) {
            *a = f.add_mul(a, c, x);
        }
    }
}

/// `acc += c * v` with a sparse `v`.
pub fn axpy_sparse<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, v: &Sparse<F::Elem>) {
    if f.is_zero(c) {
        return;
    }
    for (i, x) in v {
        acc[*i] = f.add_mul(&acc[*i], c, x);
    }
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// Reduced row echelon form grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    /// rows normalised to 1 at their pivot, fully reduced against each other
    rows: Vec<Row<F>>,
    pivots: Vec<usize>,
    /// pivot column -> row index
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        Echelon { field: field.clone(), ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Row<F>] {
        &self.rows
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Row<F> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&r[p]) {
                let c = f.neg(&r[p]);
                axpy(f, &mut r, &c, row);
            }
        }
        r
    }

    /// Coordinates of `v` in the row basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Row<F>> {
        let f = &self.field;
        let r = self.reduce(v);
        if !is_zero_vec(f, &r) {
            return None;
        }
        // rows are in reduced form, so the coefficient on row k is v[pivot_k]
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Adds `v`; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<usize> {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let p = r.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = f.neg(&row[p]);
                axpy(&f, row, &c, &r);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r);
        self.pivots.push(p);
        Some(p)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Basis of `{x : x . row = 0 for all rows}` (the annihilator under the dot product).
    pub fn orthogonal_complement(&self) -> Vec<Row<F>> {
        let f = &self.field;
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut x = vec![f.zero(); self.ncols];
            x[free] = f.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = f.neg(&row[free]);
            }
            out.push(x);
        }
        out
    }
}

/// Rank of the row space.
pub fn rank<F: Field>(f: &F, rows: &[Row<F>], ncols: usize) -> usize {
    if f.is_gf2() {
        let bits = BitMatrix::from_rows(f, rows, ncols);
        return bits.rank();
    }
    let mut e = Echelon::new(f, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a sparse row set.
pub fn rank_sparse<F: Field>(f: &F, rows: &[Sparse<F::Elem>], ncols: usize) -> usize {
    if f.is_gf2() {
        let mut m = BitMatrix::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r {
                if f.to_bit(c) {
                    m.flip(i, *j);
                }
            }
        }
        return m.rank();
    }
    let mut e = Echelon::new(f, ncols);
    for r in rows {
        e.insert(&to_dense(f, r, ncols));
    }
    e.rank()
}

/// Basis of `{c : sum_i c_i rows_i = 0}`.
pub fn left_kernel<F: Field>(f: &F, rows: &[Row<F>], ncols: usize) -> Vec<Row<F>> {
    let n = rows.len();
    let mut e = Echelon::new(f, ncols + n);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.extend((0..n).map(|j| if j == i { f.one() } else { f.zero() }));
        let red = e.reduce(&aug);
        if is_zero_vec(f, &red[..ncols]) {
            kernel.push(red[ncols..].to_vec());
        } else {
            e.insert(&aug);
        }
    }
    // the kernel vectors above are independent (distinct leading identity slots),
    // but may be expressed against earlier rows; that is still a basis
    kernel
}

/// Solves `sum_j A[i][j] x_j = b_i`; returns a particular solution and a basis
/// of the homogeneous solutions.
pub fn solve_affine<F: Field>(f: &F, a: &[Row<F>], b: &[F::Elem], nvars: usize) -> Option<(Row<F>, Vec<Row<F>>)> {
    let mut e = Echelon::new(f, nvars + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut aug = row.clone();
        aug.push(f.neg(rhs));
        e.insert(&aug);
    }
    if e.is_pivot(nvars) {
        return None;
    }
    let mut particular = vec![f.zero(); nvars];
    for (row, &p) in e.rows().iter().zip(e.pivots()) {
        particular[p] = f.neg(&row[nvars]);
    }
    let mut homog = Vec::new();
    for free in 0..nvars {
        if e.is_pivot(free) {
            continue;
        }
        let mut x = vec![f.zero(); nvars];
        x[free] = f.one();
        for (row, &p) in e.rows().iter().zip(e.pivots()) {
            x[p] = f.neg(&row[free]);
        }
        homog.push(x);
    }
    Some((particular, homog))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &[Row<F>]) -> Option<Vec<Row<F>>> {
    let n = m.len();
    let mut e = Echelon::new(f, 2 * n);
    for (i, r) in m.iter().enumerate() {
        let mut aug = r.clone();
        aug.extend((0..n).map(|j| if j == i { f.one() } else { f.zero() }));
        e.insert(&aug);
    }
    if e.rank() < n || e.pivots().iter().any(|&p| p >= n) {
        return None;
    }
    let mut inv = vec![vec![f.zero(); n]; n];
    for (row, &p) in e.rows().iter().zip(e.pivots()) {
        inv[p] = row[n..].to_vec();
    }
    Some(inv)
}

/// `A * B` for row-major dense matrices.
pub fn mat_mul<F: Field>(f: &F, a: &[Row<F>], b: &[Row<F>], bcols: usize) -> Vec<Row<F>> {
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero(); bcols];
            for (k, c) in row.iter().enumerate() {
                axpy(f, &mut out, c, &b[k]);
            }
            out
        })
        .collect()
}

/// `x * M` for a row vector.
pub fn vec_mat<F: Field>(f: &F, x: &[F::Elem], m: &[Row<F>], ncols: usize) -> Row<F> {
    let mut out = vec![f.zero(); ncols];
    for (k, c) in x.iter().enumerate() {
        axpy(f, &mut out, c, &m[k]);
    }
    out
}

// ---------------------------------------------------------------------------
// GF(2) packed rows

#[derive(Clone, Debug)]
pub struct BitMatrix {
    pub nrows: usize,
    pub ncols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> BitMatrix {
        let words = ncols.div_ceil(64);
        BitMatrix { nrows, ncols, words, data: vec![0; nrows * words] }
    }

    pub fn from_rows<F: Field>(f: &F, rows: &[Row<F>], ncols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if f.to_bit(c) {
                    m.flip(i, j);
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if self.get(i, j) != v {
            self.flip(i, j);
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize, from_word: usize) {
        let w = self.words;
        let (d0, s0) = (dst * w, src * w);
        if dst < src {
            let (lo, hi) = self.data.split_at_mut(s0);
            for k in from_word..w {
                lo[d0 + k] ^= hi[k];
            }
        } else {
            let (lo, hi) = self.data.split_at_mut(d0);
            for k in from_word..w {
                hi[k] ^= lo[s0 + k];
            }
        }
    }

    /// Rank by forward elimination (consumes a copy).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for col in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let wi = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(piv) = (r..m.nrows).find(|&i| m.data[i * m.words + wi] & bit != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..m.words {
                    m.data.swap(piv * m.words + k, r * m.words + k);
                }
            }
            for i in r + 1..m.nrows {
                if m.data[i * m.words + wi] & bit != 0 {
                    m.xor_rows(i, r, wi);
                }
            }
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn solve_and_inverse_over_q() {
        let q = Rationals;
        let m: Vec<Row<Rationals>> = vec![vec![q.from_i64(2), q.from_i64(1)], vec![q.from_i64(1), q.from_i64(1)]];
        let inv = inverse(&q, &m).unwrap();
        let prod = mat_mul(&q, &m, &inv, 2);
        assert_eq!(prod, vec![vec![q.one(), q.zero()], vec![q.zero(), q.one()]]);
        let (x, h) = solve_affine(&q, &m, &[q.from_i64(3), q.from_i64(2)], 2).unwrap();
        assert!(h.is_empty());
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(1)]);
    }

    #[test]
    fn inconsistent_system() {
        let f = FiniteField::gf(2);
        let a = vec![vec![1, 1], vec![1, 1]];
        assert!(solve_affine(&f, &a, &[0, 1], 2).is_none());
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = FiniteField::gf(4);
        let rows = vec![vec![1, 2, 0, 3], vec![0, 1, 1, 1], vec![2, 0, 3, 1]];
        let mut e = Echelon::new(&f, 4);
        for r in &rows {
            e.insert(r);
        }
        let v = {
            let mut v = vec![0; 4];
            axpy(&f, &mut v, &2, &rows[0]);
            axpy(&f, &mut v, &3, &rows[2]);
            v
        };
        let c = e.coordinates(&v).unwrap();
        let back = vec_mat(&f, &c, e.rows(), 4);
        assert_eq!(back, v);
    }

    fn gf2_matrix() -> impl Strategy<Value = (usize, usize, Vec<Vec<u32>>)> {
        (1usize..20, 1usize..150)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(proptest::collection::vec(0u32..2, c), r)))
    }

    proptest! {
        #[test]
        fn bit_rank_matches_generic((_r, c, rows) in gf2_matrix()) {
            let f = FiniteField::gf(2);
            let mut e = Echelon::new(&f, c);
            for row in &rows { e.insert(row); }
            prop_assert_eq!(BitMatrix::from_rows(&f, &rows, c).rank(), e.rank());
        }

        #[test]
        fn left_kernel_is_kernel((_r, c, rows) in gf2_matrix()) {
            let f = FiniteField::gf(3);
            let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| (x * 2) % 3).collect()).collect();
            let k = left_kernel(&f, &rows, c);
            prop_assert_eq!(k.len() + rank(&f, &rows, c), rows.len());
            for v in k {
                prop_assert!(is_zero_vec(&f, &vec_mat(&f, &v, &rows, c)));
            }
        }
    }
}
