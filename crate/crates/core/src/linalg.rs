//! Dense linear algebra over a generic finite field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::gf::{Element, FieldTower};

/// Minimal field interface for Gaussian elimination.
pub trait Field {
    type Elem: Copy + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn sub(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn inv(&self, x: Self::Elem) -> Option<Self::Elem>;

    fn neg(&self, x: Self::Elem) -> Self::Elem {
        self.sub(self.zero(), x)
    }

    fn is_zero(&self, x: Self::Elem) -> bool {
        x == self.zero()
    }
}

/// GF(p) with residues stored as `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u32,
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }
    fn sub(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + self.p as u64 - y as u64) % self.p as u64) as u32
    }
    fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }
    fn inv(&self, x: u32) -> Option<u32> {
        if x.is_multiple_of(self.p) {
            return None;
        }
        // Fermat: x^(p-2)
        let p = self.p as u64;
        let (mut b, mut e, mut acc) = (x as u64 % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        Some(acc as u32)
    }
}

impl Field for FieldTower {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::ZERO
    }
    fn one(&self) -> Element {
        Element::ONE
    }
    fn add(&self, x: Element, y: Element) -> Element {
        FieldTower::add(self, x, y)
    }
    fn sub(&self, x: Element, y: Element) -> Element {
        FieldTower::sub(self, x, y)
    }
    fn mul(&self, x: Element, y: Element) -> Element {
        FieldTower::mul(self, x, y)
    }
    fn inv(&self, x: Element) -> Option<Element> {
        FieldTower::inv(self, x)
    }
    fn neg(&self, x: Element) -> Element {
        FieldTower::neg(self, x)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy + Eq + Debug> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is used when there
    /// are no rows.
    pub fn from_rows(rows: &[Vec<E>], cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)]);
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    /// `u · self` for a row vector `u`.
    pub fn vec_mul<F: Field<Elem = E>>(&self, f: &F, u: &[E]) -> Vec<E> {
        assert_eq!(self.rows, u.len(), "dimension mismatch");
        let mut out = vec![f.zero(); self.cols];
        for (i, &ui) in u.iter().enumerate() {
            if f.is_zero(ui) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(ui, self[(i, j)]));
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(src) = (r..m.rows).find(|&i| !f.is_zero(m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, src);
            let inv = f.inv(m[(r, c)]).expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![f.zero(); self.cols];
                x[free] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(r[(i, free)]);
                }
                x
            })
            .collect()
    }

    /// Basis of `{u : u · self = 0}`.
    pub fn left_kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        self.transpose().nullspace(f)
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Some(x)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = f.one();
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Number of columns with at least one nonzero entry.
    pub fn nonzero_columns<F: Field<Elem = E>>(&self, f: &F) -> usize {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !f.is_zero(self[(i, j)])))
            .count()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> core::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<E> core::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Rank of a list of vectors.
pub fn rank_of<F: Field>(f: &F, vectors: &[Vec<F::Elem>], dim: usize) -> usize {
    Matrix::from_rows(vectors, dim).rank(f)
}
