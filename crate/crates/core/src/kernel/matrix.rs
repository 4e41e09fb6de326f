//! Dense matrices over F_p and the exact linear algebra built on them.
//!
//! Vectors are plain `Vec<u32>` residues; matrices act on column vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        let p = field.p();
        Ok(Matrix { field, rows, cols, data: data.into_iter().map(|v| v % p).collect() })
    }

    /// Build from signed integer rows. All rows must have equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        m
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        Matrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let p = self.field.p() as u64;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut out = vec![0u64; n * m];
        // Accumulate in u64 and reduce every few steps to avoid overflow.
        let flush = (u64::MAX / ((p - 1) * (p - 1)).max(1)).min(1 << 20) as usize;
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for (t, &a) in self.data[i * k..(i + 1) * k].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let brow = &other.data[t * m..(t + 1) * m];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b as u64;
                }
                if (t + 1) % flush == 0 {
                    for o in orow.iter_mut() {
                        *o %= p;
                    }
                }
            }
        }
        Matrix {
            field: self.field,
            rows: n,
            cols: m,
            data: out.into_iter().map(|v| (v % p) as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, &b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * b as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn hstack(field: PrimeField, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            m.set_block(0, off, b);
            off += b.cols;
        }
        m
    }

    pub fn vstack(field: PrimeField, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            m.set_block(off, 0, b);
            off += b.rows;
        }
        m
    }

    pub fn block_diag(field: PrimeField, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            m.data[ii * self.cols..(ii + 1) * self.cols].copy_from_slice(self.row(i));
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form, returning the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]) as u64;
            for j in c..cols {
                let v = &mut self.data[r * cols + j];
                *v = ((*v as u64 * inv) % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    if prow[j] != 0 {
                        row[j] = ((row[j] as u64 + neg * prow[j] as u64) % p) as u32;
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}` as column vectors.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = Matrix::hstack(self.field, self.rows, &[self, &Matrix::column_vector(self.field, b)]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }

    /// Solve `A X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, self.cols + j);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_matrix(&Matrix::identity(self.field, n))?;
        // solve_matrix only guarantees consistency; a singular matrix can still
        // be consistent with the identity only if it is invertible.
        if self.rank() == n {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Human-readable signed rendering, mostly for reports.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| self.field.signed(v)).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Solve `A x = b` (when `b` is given) and return a basis of `ker A`.
///
/// `b`, when present, must be a single column with `A.rows()` entries.
pub fn solve_and_kernel(a: &Matrix, b: Option<&Matrix>) -> Result<(Option<Vec<u32>>, Vec<Vec<u32>>)> {
    let particular = match b {
        None => None,
        Some(b) => {
            if b.cols() != 1 || b.rows() != a.rows() {
                return Err(Error::input(format!(
                    "right-hand side is {}x{}, expected {}x1",
                    b.rows(),
                    b.cols(),
                    a.rows()
                )));
            }
            a.solve(&b.column(0))
        }
    };
    Ok((particular, a.kernel()))
}

/// An incrementally built subspace kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace { field, dim: ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a>(
        field: PrimeField,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = &'a Vec<u32>>,
    ) -> Self {
        let mut s = Self::new(field, ambient_dim);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the echelon basis; returns the remainder and the
    /// coefficients used (one per basis row).
    pub fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut r = v.to_vec();
        let mut coeffs = vec![0u32; self.rows.len()];
        for (k, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            coeffs[k] = c;
            let neg = f.neg(c);
            for (x, &y) in r.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.dim, "subspace vector length mismatch");
        let f = self.field;
        let (mut r, _) = self.reduce(&v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[pc]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, r);
        true
    }
}

/// A quotient space `Z / W` with chosen representatives.
///
/// `W` is kept in echelon form; representatives are reduced against `W` and
/// against each other so that coordinates can be read off at pivot positions.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    sub: Subspace,
    reps: Subspace,
}

impl QuotientSpace {
    /// `spanning` must span a space containing `sub`'s span (it may include it).
    pub fn new(field: PrimeField, ambient_dim: usize, sub: &[Vec<u32>], spanning: &[Vec<u32>]) -> Self {
        let sub = Subspace::spanned_by(field, ambient_dim, sub);
        let mut reps = Subspace::new(field, ambient_dim);
        for v in spanning {
            let (r, _) = sub.reduce(v);
            reps.insert(r);
        }
        QuotientSpace { sub, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim()
    }

    /// Representatives of a basis of the quotient.
    pub fn basis(&self) -> &[Vec<u32>] {
        self.reps.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of `v` in the quotient basis; `None` if `v` lies outside `Z`.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, _) = self.sub.reduce(v);
        let (rem, coeffs) = self.reps.reduce(&r);
        if rem.iter().any(|&x| x != 0) {
            return None;
        }
        Some(coeffs)
    }

    pub fn is_zero_class(&self, v: &[u32]) -> bool {
        self.sub.contains(v)
    }
}

pub fn vec_add(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(f: PrimeField, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `acc += c * v`
pub fn vec_axpy(f: PrimeField, acc: &mut [u32], c: u32, v: &[u32]) {
    if c == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        if b != 0 {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn identity_solve_has_trivial_kernel() {
        let a = Matrix::identity(f5(), 2);
        let b = Matrix::column_vector(f5(), &[1, 0]);
        let (x, k) = solve_and_kernel(&a, Some(&b)).unwrap();
        assert_eq!(x, Some(vec![1, 0]));
        assert!(k.is_empty());
    }

    #[test]
    fn zero_row_has_full_kernel() {
        let a = Matrix::zeros(f5(), 1, 2);
        let b = Matrix::column_vector(f5(), &[0]);
        let (x, k) = solve_and_kernel(&a, Some(&b)).unwrap();
        assert!(x.is_some());
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn rank_one_kernel_matches_enumeration() {
        // Oracle: enumerate all 25 vectors of F_5^2.
        let f = f5();
        let a = Matrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        let brute: Vec<Vec<u32>> = (0..5)
            .flat_map(|x| (0..5).map(move |y| vec![x, y]))
            .filter(|v| a.mul_vec(v).iter().all(|&c| c == 0))
            .collect();
        assert_eq!(brute.len(), 5);
        let (_, k) = solve_and_kernel(&a, Some(&Matrix::column_vector(f, &[0, 0]))).unwrap();
        assert_eq!(k, vec![vec![3, 1]]);
        assert!(brute.contains(&k[0]));
    }

    #[test]
    fn dimension_mismatch_is_input_error() {
        let a = Matrix::identity(f5(), 2);
        let b = Matrix::column_vector(f5(), &[1, 0, 0]);
        assert!(matches!(solve_and_kernel(&a, Some(&b)), Err(Error::Input(_))));
    }

    #[test]
    fn inverse_of_singular_is_none() {
        let a = Matrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(a.inverse().is_none());
        let b = Matrix::from_rows(f5(), &[vec![1, 2], vec![0, 1]]).unwrap();
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), Matrix::identity(f5(), 2));
    }

    #[test]
    fn quotient_coordinates() {
        let f = f5();
        let sub = vec![vec![1, 1, 0]];
        let span = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let q = QuotientSpace::new(f, 3, &sub, &span);
        assert_eq!(q.dim(), 1);
        let c1 = q.coords(&[1, 0, 0]).unwrap();
        let c2 = q.coords(&[0, 1, 0]).unwrap();
        assert_eq!(f.add(c1[0], c2[0]), 0);
        assert!(q.coords(&[0, 0, 1]).is_none());
    }

    fn arb_system() -> impl Strategy<Value = (usize, usize, Vec<u32>, Vec<u32>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (
                Just(r),
                Just(c),
                proptest::collection::vec(0u32..5, r * c),
                proptest::collection::vec(0u32..5, c),
            )
        })
    }

    proptest! {
        #[test]
        fn planted_solution_is_recovered((r, c, data, x0) in arb_system()) {
            let f = f5();
            let a = Matrix::from_vec(f, r, c, data).unwrap();
            let b = a.mul_vec(&x0);
            let (x, kernel) = solve_and_kernel(&a, Some(&Matrix::column_vector(f, &b))).unwrap();
            let x = x.expect("planted system must be consistent");
            prop_assert_eq!(a.mul_vec(&x), b);
            for k in &kernel {
                prop_assert!(a.mul_vec(k).iter().all(|&v| v == 0));
            }
            prop_assert_eq!(kernel.len() + a.rank(), c);
            prop_assert_eq!(Matrix::from_columns(f, c, &kernel).rank(), kernel.len());
        }
    }
}
