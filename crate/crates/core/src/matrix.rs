//! Dense matrices over a single finite field.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{same_field, Elem, Field};

// Work (entries touched per step) above which row operations fan out over threads.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("Galois parameter {k} out of range for extension degree {e}")]
    ParameterOutOfRange { k: u32, e: u32 },
}

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `dst[j] -= c * src[j]` for `j >= from`.
#[inline]
fn sub_scaled(field: &Field, dst: &mut [Elem], src: &[Elem], c: Elem, from: usize) {
    let s = field.scalar(c);
    for (d, &x) in dst[from..].iter_mut().zip(&src[from..]) {
        *d = field.sub_scaled(&s, *d, x);
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Elem::ONE;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Matrix from explicit rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Self, MatrixError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(MatrixError::ShapeMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Elem) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem + Sync) -> Matrix {
        let data = if self.data.len() > PARALLEL_THRESHOLD {
            self.data.par_iter().map(|&x| f(x)).collect()
        } else {
            self.data.iter().map(|&x| f(x)).collect()
        };
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise `x -> x^(p^j)`.
    pub fn frobenius(&self, j: u32) -> Matrix {
        let field = self.field.clone();
        self.map(move |x| field.frobenius(x, j))
    }

    /// Transpose of the entrywise `p^(e-k)` power.
    pub fn galois_conj_transpose(&self, k: u32) -> Result<Matrix, MatrixError> {
        let e = self.field.degree();
        if k >= e {
            return Err(MatrixError::ParameterOutOfRange { k, e });
        }
        Ok(self.frobenius(e - k).transpose())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = &self.field;
        let (n, m) = (self.cols, other.cols);
        if field.planar_ok() && m > 0 {
            return Ok(self.mul_planar(other));
        }
        let e = field.degree() as usize;
        let capacity = field.accumulation_capacity().max(1);
        let mut data = vec![Elem::ZERO; self.rows * m];
        // each output row is accumulated unreduced and reduced once at the end
        let row_product = |(i, out): (usize, &mut [Elem])| {
            let mut acc = vec![0u64; m * e];
            let mut pending = 0;
            for t in 0..n {
                let a = self.data[i * n + t];
                if a.is_zero() {
                    continue;
                }
                if pending == capacity {
                    field.normalize(&mut acc);
                    pending = 0;
                }
                pending += 1;
                let s = field.scalar(a);
                for (chunk, &b) in acc.chunks_mut(e).zip(other.row(t)) {
                    field.accumulate(&s, b, chunk);
                }
            }
            for (o, chunk) in out.iter_mut().zip(acc.chunks(e)) {
                *o = field.reduce(chunk);
            }
        };
        if m > 0 {
            if self.rows * n * m > PARALLEL_THRESHOLD {
                data.par_chunks_mut(m).enumerate().for_each(row_product);
            } else {
                data.chunks_mut(m).enumerate().for_each(row_product);
            }
        }
        Ok(Matrix { field: field.clone(), rows: self.rows, cols: m, data })
    }

    fn mul_planar(&self, other: &Matrix) -> Matrix {
        let field = &self.field;
        let (n, m) = (self.cols, other.cols);
        let b = Planar::<u32>::new(field, other.rows, m, &other.data);
        let e = b.e;
        let p = field.characteristic();
        let capacity = (((1u64 << 32) - p) / (e as u64 * (p - 1) * (p - 1))) as usize;
        let reduce = |acc: &mut [u32]| {
            for x in acc {
                *x %= p as u32;
            }
        };
        let mut data = vec![Elem::ZERO; self.rows * m];
        let row_product = |(i, out): (usize, &mut [Elem])| {
            let mut acc = vec![0u32; e * m];
            let mut pending = 0;
            for t in 0..n {
                let a = self.data[i * n + t];
                if a.is_zero() {
                    continue;
                }
                if pending == capacity {
                    reduce(&mut acc);
                    pending = 0;
                }
                pending += 1;
                let table = field.coefficient_table(a);
                let row = &b.data[t * e * m..(t + 1) * e * m];
                for d in 0..e {
                    let dst = &mut acc[d * m..(d + 1) * m];
                    for s in 0..e {
                        let coef = table[s * e + d];
                        if coef != 0 {
                            for (x, &y) in dst.iter_mut().zip(&row[s * m..(s + 1) * m]) {
                                *x += coef * y;
                            }
                        }
                    }
                }
            }
            reduce(&mut acc);
            for (c, o) in out.iter_mut().enumerate() {
                *o = field.from_digits(|d| acc[d * m + c]);
            }
        };
        if self.rows * n * m > PARALLEL_THRESHOLD {
            data.par_chunks_mut(m).enumerate().for_each(row_product);
        } else {
            data.chunks_mut(m).enumerate().for_each(row_product);
        }
        Matrix { field: field.clone(), rows: self.rows, cols: m, data }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "stacking widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "joining heights {} and {}",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        Ok(Matrix::from_fn(&self.field, self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// Gauss-Jordan elimination with the first nonzero entry of each column as pivot.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let (data, pivots) = if f.planar_ok() && lanes_fit(f, 16) {
            let mut rows = Planar::<u16>::new(f, self.rows, self.cols, &self.data);
            let pivots = gauss_jordan(&mut rows);
            (rows.into_data(), pivots)
        } else if f.planar_ok() {
            let mut rows = Planar::<u32>::new(f, self.rows, self.cols, &self.data);
            let pivots = gauss_jordan(&mut rows);
            (rows.into_data(), pivots)
        } else {
            let mut rows = Packed { field: &self.field, cols: self.cols, data: self.data.clone() };
            let pivots = gauss_jordan(&mut rows);
            (rows.data, pivots)
        };
        let rank = pivots.len();
        let matrix = Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data };
        Rref { matrix, pivots, rank }
    }

    /// Forward elimination; returns the number of pivots and the product of pivots with
    /// the permutation sign folded in.
    fn forward_eliminate(&self) -> (usize, Elem) {
        let f = &self.field;
        if f.planar_ok() && lanes_fit(f, 16) {
            forward(&mut Planar::<u16>::new(f, self.rows, self.cols, &self.data))
        } else if f.planar_ok() {
            forward(&mut Planar::<u32>::new(f, self.rows, self.cols, &self.data))
        } else {
            forward(&mut Packed { field: &self.field, cols: self.cols, data: self.data.clone() })
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.forward_eliminate().0
    }

    pub fn det(&self) -> Result<Elem, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(Elem::ONE);
        }
        let (rank, det) = self.forward_eliminate();
        Ok(if rank < self.rows { Elem::ZERO } else { det })
    }

    /// Basis of `{x : A x^T = 0}`: one vector per free column of the RREF, in ascending
    /// free-column order, with a 1 at that column.
    pub fn right_kernel(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let field = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(field, free.len(), self.cols);
        for (t, &f) in free.iter().enumerate() {
            out.set(t, f, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(t, pc, field.neg(r.get(i, f)));
            }
        }
        out
    }

    /// Matrix made of the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }
}

/// Row storage that elimination runs on.
trait Rows {
    fn field(&self) -> &Field;
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn get(&self, r: usize, c: usize) -> Elem;
    fn swap(&mut self, a: usize, b: usize);
    /// Row `r` times `s`, from column `from` on.
    fn scale(&mut self, r: usize, from: usize, s: Elem);
    /// For every row `i != pivot` (only `i > pivot` when `below`), subtract
    /// `row_i[col] * mult` times the pivot row, from column `col` on.
    fn eliminate(&mut self, pivot: usize, col: usize, mult: Elem, below: bool);
}

fn gauss_jordan(m: &mut impl Rows) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(pr) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            m.swap(r, pr);
        }
        let inv = m.field().inv(m.get(r, c)).expect("pivot is nonzero");
        m.scale(r, c, inv);
        m.eliminate(r, c, Elem::ONE, false);
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn forward(m: &mut impl Rows) -> (usize, Elem) {
    let mut r = 0;
    let mut det = Elem::ONE;
    let mut negate = false;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(pr) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            det = Elem::ZERO;
            continue;
        };
        if pr != r {
            m.swap(r, pr);
            negate = !negate;
        }
        let pivot = m.get(r, c);
        det = m.field().mul(det, pivot);
        let inv = m.field().inv(pivot).expect("pivot is nonzero");
        m.eliminate(r, c, inv, true);
        r += 1;
    }
    if negate {
        det = m.field().neg(det);
    }
    (r, det)
}

struct Packed<'a> {
    field: &'a Field,
    cols: usize,
    data: Vec<Elem>,
}

impl Rows for Packed<'_> {
    fn field(&self) -> &Field {
        self.field
    }

    fn rows(&self) -> usize {
        if self.cols == 0 {
            0
        } else {
            self.data.len() / self.cols
        }
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    fn swap(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale(&mut self, r: usize, from: usize, s: Elem) {
        let cols = self.cols;
        for x in &mut self.data[r * cols + from..(r + 1) * cols] {
            *x = self.field.mul(*x, s);
        }
    }

    fn eliminate(&mut self, pivot: usize, col: usize, mult: Elem, below: bool) {
        let (field, cols) = (self.field, self.cols);
        let pivot_row = self.data[pivot * cols..(pivot + 1) * cols].to_vec();
        let run = |(i, row): (usize, &mut [Elem])| {
            let factor = row[col];
            if i != pivot && (!below || i > pivot) && !factor.is_zero() {
                sub_scaled(field, row, &pivot_row, field.mul(factor, mult), col);
            }
        };
        if self.data.len() > PARALLEL_THRESHOLD {
            self.data.par_chunks_mut(cols).enumerate().for_each(run);
        } else {
            self.data.chunks_mut(cols).enumerate().for_each(run);
        }
    }
}

/// Unsigned lane type for coefficient planes.
trait Lane: Copy + Default + Send + Sync + PartialEq {
    fn from_u32(x: u32) -> Self;
    fn to_u32(self) -> u32;
    fn mul_add(self, t: Self, y: Self) -> Self;
}

impl Lane for u16 {
    fn from_u32(x: u32) -> Self {
        x as u16
    }
    fn to_u32(self) -> u32 {
        self as u32
    }
    #[inline]
    fn mul_add(self, t: Self, y: Self) -> Self {
        self.wrapping_add(t.wrapping_mul(y))
    }
}

impl Lane for u32 {
    fn from_u32(x: u32) -> Self {
        x
    }
    fn to_u32(self) -> u32 {
        self
    }
    #[inline]
    fn mul_add(self, t: Self, y: Self) -> Self {
        self.wrapping_add(t.wrapping_mul(y))
    }
}

/// Whether one elimination step fits lanes of `bits` bits: `p - 1 + e (p-1)^2`.
fn lanes_fit(field: &Field, bits: u32) -> bool {
    let (p, e) = (field.characteristic() as u128, field.degree() as u128);
    p - 1 + e * (p - 1) * (p - 1) < (1u128 << bits)
}

/// Coefficient-plane layout for extension fields: plane `i` of a row holds coefficient
/// `i` of every entry, so row operations become long axpy loops over small integers.
struct Planar<'a, T> {
    field: &'a Field,
    rows: usize,
    cols: usize,
    e: usize,
    p: u32,
    // floor(2^32 / p)
    reciprocal: u64,
    data: Vec<T>,
}

impl<'a, T: Lane> Planar<'a, T> {
    fn new(field: &'a Field, rows: usize, cols: usize, entries: &[Elem]) -> Self {
        let e = field.degree() as usize;
        let mut data = vec![T::default(); rows * cols * e];
        for r in 0..rows {
            for i in 0..e {
                let plane = &mut data[(r * e + i) * cols..(r * e + i + 1) * cols];
                for (d, &x) in plane.iter_mut().zip(&entries[r * cols..(r + 1) * cols]) {
                    *d = T::from_u32(field.coefficient(x, i));
                }
            }
        }
        let p = field.characteristic();
        Planar { field, rows, cols, e, p: p as u32, reciprocal: (1u64 << 32) / p, data }
    }

    fn chunk_get(&self, chunk: &[T], c: usize) -> Elem {
        self.field.from_digits(|i| chunk[i * self.cols + c].to_u32())
    }

    fn into_data(self) -> Vec<Elem> {
        let stride = self.e * self.cols;
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            let chunk = &self.data[r * stride..(r + 1) * stride];
            out.extend((0..self.cols).map(|c| self.chunk_get(chunk, c)));
        }
        out
    }
}

impl<T: Lane> Rows for Planar<'_, T> {
    fn field(&self) -> &Field {
        self.field
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, r: usize, c: usize) -> Elem {
        let stride = self.e * self.cols;
        self.chunk_get(&self.data[r * stride..(r + 1) * stride], c)
    }

    fn swap(&mut self, a: usize, b: usize) {
        let stride = self.e * self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * stride);
        head[lo * stride..(lo + 1) * stride].swap_with_slice(&mut tail[..stride]);
    }

    fn scale(&mut self, r: usize, from: usize, s: Elem) {
        let (e, cols) = (self.e, self.cols);
        for c in from..cols {
            let x = self.field.mul(self.get(r, c), s);
            for i in 0..e {
                self.data[(r * e + i) * cols + c] = T::from_u32(self.field.coefficient(x, i));
            }
        }
    }

    fn eliminate(&mut self, pivot: usize, col: usize, mult: Elem, below: bool) {
        let (e, cols, field) = (self.e, self.cols, self.field);
        let stride = e * cols;
        let pivot_row = self.data[pivot * stride..(pivot + 1) * stride].to_vec();
        let this = &*self;
        let factors: Vec<Elem> = (0..self.rows).map(|i| this.get(i, col)).collect();
        let (p, reciprocal) = (self.p, self.reciprocal);
        let rem = |a: u32| {
            let q = ((a as u64 * reciprocal) >> 32) as u32;
            let r = a - q * p;
            if r >= p {
                r - p
            } else {
                r
            }
        };
        let run = |(i, chunk): (usize, &mut [T])| {
            if i == pivot || (below && i < pivot) || factors[i].is_zero() {
                return;
            }
            let table = field.coefficient_table(field.neg(field.mul(factors[i], mult)));
            for d in 0..e {
                let dst = &mut chunk[d * cols + col..(d + 1) * cols];
                for s in 0..e {
                    let t = T::from_u32(table[s * e + d]);
                    if t != T::default() {
                        let src = &pivot_row[s * cols + col..(s + 1) * cols];
                        for (x, &y) in dst.iter_mut().zip(src) {
                            *x = x.mul_add(t, y);
                        }
                    }
                }
                for x in dst.iter_mut() {
                    *x = T::from_u32(rem(x.to_u32()));
                }
            }
        };
        if self.data.len() > PARALLEL_THRESHOLD {
            self.data.par_chunks_mut(stride).enumerate().for_each(run);
        } else {
            self.data.chunks_mut(stride).enumerate().for_each(run);
        }
    }
}
