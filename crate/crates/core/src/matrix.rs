//! Dense exact matrices over the integers and the rationals.
//!
//! Everything here is arbitrary precision. The integer side carries the
//! Smith normal form (with unimodular transforms), which backs kernels,
//! saturation and integral solving; the rational side carries symmetric
//! congruence diagonalization and Gauss-Jordan inversion.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
            .expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[&[Int]]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `selfᵀ · v`, i.e. `v` paired against every column.
    pub fn transpose_mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.rows, v.len(), "dimension mismatch in product");
        let mut out = vec![Int::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * vi;
                }
            }
        }
        out
    }

    /// Entrywise sum; panics on a shape mismatch.
    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in add");
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scaled(&self, s: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    pub fn block_diagonal(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    /// Smith normal form `P·A·Q = D`, with unimodular transforms when requested.
    pub fn smith_normal_form(&self, with_transforms: bool) -> Snf {
        smith(self, with_transforms)
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form(false).rank
    }

    /// Indices of the pivot columns of a row echelon form: the first column
    /// set, left to right, whose columns are linearly independent and span
    /// the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = Int::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &a[(i, j)] * &a[(r, c)] - &a[(i, c)] * &a[(r, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, c)] = Int::zero();
            }
            prev = a[(r, c)].clone();
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Saturated integral basis of `{x : A·x = 0}`, as columns.
    pub fn integer_kernel(&self) -> IntMatrix {
        let snf = self.smith_normal_form(true);
        let q = snf.q.expect("transforms requested");
        let basis: Vec<Vec<Int>> = (snf.rank..self.cols).map(|j| q.column(j)).collect();
        let refs: Vec<&[Int]> = basis.iter().map(Vec::as_slice).collect();
        IntMatrix::from_columns(self.cols, &refs)
    }

    /// Some integral solution of `A·x = b`, if one exists.
    pub fn solve_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let snf = self.smith_normal_form(true);
        let p = snf.p.as_ref().expect("transforms requested");
        let q = snf.q.as_ref().expect("transforms requested");
        let pb = p.mul_vec(b);
        let mut y = vec![Int::zero(); self.cols];
        for (i, c) in pb.iter().enumerate() {
            if i < snf.rank {
                let (quot, rem) = c.div_rem(&snf.diagonal[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = quot;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(q.mul_vec(&y))
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        inv.to_integer()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug)]
pub struct Snf {
    /// The `min(rows, cols)` diagonal entries, non-negative, each dividing the next
    /// (zeros last).
    pub diagonal: Vec<Int>,
    pub rank: usize,
    pub p: Option<IntMatrix>,
    pub q: Option<IntMatrix>,
}

impl Snf {
    /// Non-unit invariant factors (zeros included for rank deficiency).
    pub fn nontrivial_factors(&self) -> Vec<Int> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn smith(input: &IntMatrix, track: bool) -> Snf {
    let (m, n) = (input.rows, input.cols);
    let mut a = input.clone();
    let mut p = if track { Some(IntMatrix::identity(m)) } else { None };
    let mut q = if track { Some(IntMatrix::identity(n)) } else { None };
    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(q) = q.as_mut() {
            q.swap_cols(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let c = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &c);
                if let Some(p) = p.as_mut() {
                    p.add_row_multiple(i, t, &c);
                }
                if !a[(i, t)].is_zero() {
                    a.swap_rows(i, t);
                    if let Some(p) = p.as_mut() {
                        p.swap_rows(i, t);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let c = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &c);
                if let Some(q) = q.as_mut() {
                    q.add_col_multiple(j, t, &c);
                }
                if !a[(t, j)].is_zero() {
                    a.swap_cols(j, t);
                    if let Some(q) = q.as_mut() {
                        q.swap_cols(j, t);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some(p) = p.as_mut() {
                        p.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(p) = p.as_mut() {
                p.negate_row(t);
            }
        }
        t += 1;
    }
    let diagonal: Vec<Int> = (0..steps).map(|i| a[(i, i)].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    Snf { diagonal, rank, p, q }
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_int(&self, other: &IntMatrix) -> RatMatrix {
        self.mul(&other.to_rational())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] / &pivot;
                inv[(c, j)] = &inv[(c, j)] / &pivot;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let x = &f * &a[(c, j)];
                    a[(r, j)] -= x;
                    let y = &f * &inv[(c, j)];
                    inv[(r, j)] -= y;
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data = self.data.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { rows: self.rows, cols: self.cols, data })
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Congruence diagonalization `Pᵀ·G·P = diag(d)` of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Columns are a rational orthogonal basis.
    pub basis: RatMatrix,
    pub basis_inverse: RatMatrix,
    pub diagonal: Vec<Rat>,
}

/// Symmetric Gaussian elimination over the rationals.
///
/// Pivot rule at step `i`: use `a[i][i]` if nonzero; otherwise swap in the
/// first later index with a nonzero diagonal; otherwise add the first later
/// index `j` with `a[i][j] != 0` to `i` (making the diagonal `2·a[i][j]`);
/// otherwise row `i` is already zero.
pub fn congruence_diagonalize(gram: &IntMatrix) -> Diagonalization {
    assert!(gram.is_symmetric(), "congruence diagonalization needs a symmetric matrix");
    let n = gram.rows();
    let mut a = gram.to_rational();
    // `p` accumulates the column operations, so that pᵀ·G·p = a throughout.
    let mut p = RatMatrix::identity(n);
    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                sym_swap(&mut a, &mut p, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
                sym_add(&mut a, &mut p, i, j, &Rat::one());
            } else {
                continue;
            }
        }
        let pivot = a[(i, i)].clone();
        for j in i + 1..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            let c = -(&a[(i, j)] / &pivot);
            sym_add(&mut a, &mut p, j, i, &c);
        }
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    let basis_inverse = p.inverse().expect("elimination transform is invertible");
    Diagonalization { basis: p, basis_inverse, diagonal }
}

fn sym_swap(a: &mut RatMatrix, p: &mut RatMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
    for r in 0..p.rows {
        p.data.swap(r * p.cols + i, r * p.cols + j);
    }
}

/// Basis change `b_dst += c·b_src` applied congruently.
fn sym_add(a: &mut RatMatrix, p: &mut RatMatrix, dst: usize, src: usize, c: &Rat) {
    let n = a.rows;
    for k in 0..n {
        let v = c * &a[(src, k)];
        a[(dst, k)] += v;
    }
    for k in 0..n {
        let v = c * &a[(k, src)];
        a[(k, dst)] += v;
    }
    for r in 0..p.rows {
        let v = c * &p[(r, src)];
        p[(r, dst)] += v;
    }
}

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn pivot_columns_match_rank() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 0, 3], &[2, 4, 1, 7], &[3, 6, 1, 10]]);
        assert_eq!(m.pivot_columns(), vec![0, 2]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::zeros(2, 3).pivot_columns(), Vec::<usize>::new());
        let m = IntMatrix::from_i64_rows(&[&[0, 2, 1], &[0, 4, 5], &[1, 0, 0]]);
        assert_eq!(m.pivot_columns(), vec![0, 1, 2]);
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[-2, 1], &[1, -2]]).determinant(), int(3));
        assert_eq!(m(&[&[0, 0], &[0, 5]]).determinant(), int(0));
        assert_eq!(m(&[&[2, 3, 1], &[4, 1, 0], &[0, 5, 7]]).determinant(), int(-50));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), int(1));
    }

    #[test]
    fn smith_of_a2() {
        let snf = m(&[&[-2, 1], &[1, -2]]).smith_normal_form(true);
        assert_eq!(snf.diagonal, ints(&[1, 3]));
        let a = m(&[&[-2, 1], &[1, -2]]);
        let d = snf.p.as_ref().unwrap().mul(&a).mul(snf.q.as_ref().unwrap());
        assert_eq!(d, m(&[&[1, 0], &[0, 3]]));
    }

    #[test]
    fn smith_divisibility_fixup() {
        // diag(2,3) is not in Smith form; the answer is diag(1,6)
        let snf = m(&[&[2, 0], &[0, 3]]).smith_normal_form(false);
        assert_eq!(snf.diagonal, ints(&[1, 6]));
        let snf = m(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]).smith_normal_form(false);
        assert_eq!(snf.diagonal, ints(&[2, 2, 60]));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(&[&[2, 4, 6]]);
        let k = a.integer_kernel();
        assert_eq!(k.cols(), 2);
        for j in 0..k.cols() {
            assert!(a.mul_vec(&k.column(j)).iter().all(Zero::is_zero));
        }
        // saturated: the kernel basis extends to a unimodular matrix, i.e. its
        // Smith form is all ones
        assert!(k.smith_normal_form(false).diagonal.iter().all(One::is_one));
    }

    #[test]
    fn integer_solve() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.solve_integer(&ints(&[4, 9])), Some(ints(&[2, 3])));
        assert_eq!(a.solve_integer(&ints(&[1, 0])), None);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(b.solve_integer(&ints(&[1, 3])), None);
        let x = b.solve_integer(&ints(&[3, 6])).unwrap();
        assert_eq!(b.mul_vec(&x), ints(&[3, 6]));
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let g = m(&[&[0, 1], &[1, 0]]);
        let d = congruence_diagonalize(&g);
        let check = d.basis.transpose().mul_int(&g).mul(&d.basis);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(check[(i, j)], d.diagonal[i]);
                } else {
                    assert!(check[(i, j)].is_zero());
                }
            }
        }
        assert!(d.diagonal.iter().any(Signed::is_positive));
        assert!(d.diagonal.iter().any(Signed::is_negative));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_none());
    }
}
