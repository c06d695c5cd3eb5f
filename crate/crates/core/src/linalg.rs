//! Dense matrices over a semiring, and exact Gaussian elimination over ℚ.
//!
//! Vectors are rows acting on the left: a state vector `v` is mapped by a
//! matrix `M` to `v · M`.

use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{Rational, Semiring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<S: Semiring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::shape(format!("row {i}"), cols, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Semiring>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape("matrix product", self.cols, other.rows));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(other.get(k, c)));
                }
            }
            acc
        }))
    }

    /// `v · self` for a row vector `v`.
    pub fn left_mul(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.rows {
            return Err(Error::shape("row vector", self.rows, v.len()));
        }
        let mut out = vec![S::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *slot = slot.add(&x.mul(m));
                }
            }
        }
        Ok(out)
    }

    /// `self · u` for a column vector `u`.
    pub fn right_mul(&self, u: &[S]) -> Result<Vec<S>> {
        if u.len() != self.cols {
            return Err(Error::shape("column vector", self.cols, u.len()));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), u)).collect())
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |r, c| {
            if r < a.rows && c < a.cols {
                a.get(r, c).clone()
            } else if r >= a.rows && c >= a.cols {
                b.get(r - a.rows, c - a.cols).clone()
            } else {
                S::zero()
            }
        })
    }

    /// Horizontal concatenation `[a | b]`.
    pub fn hcat(a: &Self, b: &Self) -> Result<Self> {
        if a.rows != b.rows {
            return Err(Error::shape("horizontal concatenation", a.rows, b.rows));
        }
        Ok(Self::from_fn(a.rows, a.cols + b.cols, |r, c| {
            if c < a.cols {
                a.get(r, c).clone()
            } else {
                b.get(r, c - a.cols).clone()
            }
        }))
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_slice(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |r, c| self.get(r, start + c).clone())
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut S> {
        self.data.iter_mut()
    }
}

/// Inner product Σ aᵢ·bᵢ.
pub fn dot<S: Semiring>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(S::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Entrywise sum of two equally long vectors.
pub fn vec_add<S: Semiring>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_scale<S: Semiring>(s: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| s.mul(x)).collect()
}

pub fn is_zero_vec<S: Semiring>(a: &[S]) -> bool {
    a.iter().all(S::is_zero)
}

// ---------------------------------------------------------------------------
// Exact elimination over ℚ

fn axpy(target: &mut [Rational], factor: &Rational, source: &[Rational]) {
    // target -= factor * source
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.sub(&factor.mul(s));
        }
    }
}

/// An incrementally built basis of a subspace of ℚⁿ.
///
/// Inserted vectors that are independent of the current span are kept as
/// *generators* in insertion order. Internally the span is also held in
/// reduced row-echelon form (pivot = first nonzero entry, normalized to 1),
/// with each echelon row expressed as a combination of generators, so that
/// membership tests return coordinates with respect to the generators.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    generators: Vec<Vec<Rational>>,
    echelon: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    // echelon[k] = Σ_j transform[k][j] · generators[j]
    transform: Vec<Vec<Rational>>,
}

/// Outcome of reducing a vector against an [`EchelonBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was in the span; coordinates with respect to the generators.
    InSpan(Vec<Rational>),
    /// The vector was independent and became generator number `index`.
    Added(usize),
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            generators: Vec::new(),
            echelon: Vec::new(),
            pivots: Vec::new(),
            transform: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Returns `(residual, λ)` with `v = residual + Σ λ_k echelon_k`.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut residual = v.to_vec();
        let mut lambdas = Vec::with_capacity(self.echelon.len());
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            let factor = residual[p].clone();
            if !factor.is_zero() {
                axpy(&mut residual, &factor, row);
            }
            lambdas.push(factor);
        }
        (residual, lambdas)
    }

    fn to_generator_coords(&self, lambdas: &[Rational]) -> Vec<Rational> {
        let mut coords = vec![Rational::zero(); self.generators.len()];
        for (lambda, t) in lambdas.iter().zip(&self.transform) {
            if lambda.is_zero() {
                continue;
            }
            for (c, tj) in coords.iter_mut().zip(t) {
                if !tj.is_zero() {
                    *c = c.add(&lambda.mul(tj));
                }
            }
        }
        coords
    }

    /// Coordinates of `v` with respect to the generators, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.dim {
            return Err(Error::shape("vector", self.dim, v.len()));
        }
        let (residual, lambdas) = self.reduce(v);
        if is_zero_vec(&residual) {
            Ok(Some(self.to_generator_coords(&lambdas)))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Adds `v` as a generator when it is independent of the current span.
    pub fn insert(&mut self, v: Vec<Rational>) -> Result<Insertion> {
        if v.len() != self.dim {
            return Err(Error::shape("vector", self.dim, v.len()));
        }
        let (mut residual, lambdas) = self.reduce(&v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return Ok(Insertion::InSpan(self.to_generator_coords(&lambdas)));
        };
        let index = self.generators.len();
        // residual = g_index - Σ λ_k echelon_k
        let mut t = vec![Rational::zero(); index + 1];
        for (lambda, tk) in lambdas.iter().zip(&self.transform) {
            if !lambda.is_zero() {
                for (slot, x) in t.iter_mut().zip(tk) {
                    *slot = slot.sub(&lambda.mul(x));
                }
            }
        }
        t[index] = Rational::one();
        for tk in &mut self.transform {
            tk.push(Rational::zero());
        }
        self.generators.push(v);

        let scale = residual[pivot].inv().expect("pivot is nonzero");
        for x in residual.iter_mut() {
            *x = x.mul(&scale);
        }
        for x in t.iter_mut() {
            *x = x.mul(&scale);
        }
        // clear the new pivot column from the existing rows
        for k in 0..self.echelon.len() {
            let factor = self.echelon[k][pivot].clone();
            if !factor.is_zero() {
                axpy(&mut self.echelon[k], &factor, &residual);
                let tk = &mut self.transform[k];
                for (slot, x) in tk.iter_mut().zip(&t) {
                    if !x.is_zero() {
                        *slot = slot.sub(&factor.mul(x));
                    }
                }
            }
        }
        self.echelon.push(residual);
        self.pivots.push(pivot);
        self.transform.push(t);
        Ok(Insertion::Added(index))
    }
}

/// Reduced row-echelon form; returns the reduced matrix and its pivot columns.
pub fn rref(m: &Matrix<Rational>) -> (Matrix<Rational>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let ncols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let scale = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = x.mul(&scale);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let nrows = rows.len();
    let reduced = Matrix::from_rows(rows, ncols).unwrap_or_else(|_| Matrix::zeros(nrows, ncols));
    (reduced, pivots)
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m · x = 0}` (column null space), one vector per free column
/// of the reduced row-echelon form, in increasing free-column order.
pub fn null_space(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(i, free).neg();
        }
        basis.push(x);
    }
    basis
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = Matrix::hcat(m, &Matrix::identity(n)).ok()?;
    let (reduced, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(reduced.column_slice(n, 2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn short_row_rejected() {
        let err = Matrix::<Rational>::from_rows(vec![vec![q(1), q(2)], vec![q(1)]], 2).unwrap_err();
        assert_eq!(err, Error::shape("row 1", 2, 1));
    }

    #[test]
    fn products_follow_row_convention() {
        let m = qm(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.left_mul(&[q(1), q(0)]).unwrap(), vec![q(1), q(1)]);
        assert_eq!(m.right_mul(&[q(0), q(1)]).unwrap(), vec![q(1), q(1)]);
        assert_eq!(m.mul(&m).unwrap(), qm(&[&[1, 2], &[0, 1]]));
    }

    #[test]
    fn echelon_coordinates_refer_to_generators() {
        let mut b = EchelonBasis::new(3);
        assert_eq!(b.insert(vec![q(0), q(2), q(1)]).unwrap(), Insertion::Added(0));
        assert_eq!(b.insert(vec![q(1), q(1), q(0)]).unwrap(), Insertion::Added(1));
        // 3·g0 - 2·g1
        let v = vec![q(-2), q(4), q(3)];
        assert_eq!(b.insert(v).unwrap(), Insertion::InSpan(vec![q(3), q(-2)]));
        assert_eq!(b.rank(), 2);
        assert!(!b.contains(&[q(0), q(0), q(1)]).unwrap());
    }

    #[test]
    fn null_space_of_sum_map() {
        // x1 + x2 - x3 - x4 = 0 has a 3-dimensional solution space
        let m = qm(&[&[1, 1, -1, -1]]);
        let ns = null_space(&m);
        assert_eq!(ns.len(), 3);
        for x in &ns {
            assert!(is_zero_vec(&m.right_mul(x).unwrap()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(inverse(&qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn rank_of_zero_width() {
        let m: Matrix<Rational> = Matrix::zeros(0, 2);
        assert_eq!(rank(&m), 0);
        assert_eq!(null_space(&m).len(), 2);
    }
}
