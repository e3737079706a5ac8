//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream (root space decompositions, subalgebra spans,
//! tangent/normal splittings) reduces to row-reduced echelon forms, kernels
//! and coordinate solves of small dense rational matrices, so determinism of
//! the RREF conventions here is what makes every report reproducible.

use crate::scalar::Rat;
use num_traits::{One, Zero};

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // first nonzero entry in column c at or below row r
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let a = self.get(r, j).clone();
                    let b = self.get(p, j).clone();
                    self.set(r, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = {
                let piv = self.get(r, c).clone();
                Rat::one() / piv
            };
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Canonical kernel basis, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                vec[pc] = -m.get(row, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }
}

/// A subspace presented by a canonical (RREF) basis, with a fast membership
/// and reduction interface.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    pub dim_ambient: usize,
    /// RREF-canonical basis rows (deterministic for a fixed span).
    pub basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(dim_ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        if vectors.is_empty() {
            return SpanBasis {
                dim_ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let mut m = Mat::from_rows(vectors.to_vec());
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        SpanBasis {
            dim_ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Residual of `v` after reduction against the basis; zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for j in 0..self.dim_ambient {
                if !row[j].is_zero() {
                    w[j] = &w[j] - &(&f * &row[j]);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Solves coordinates with respect to a fixed ordered basis (full column
/// rank), exactly and repeatedly.
///
/// Construction row-reduces `[A | I]` where the columns of `A` are the basis
/// vectors. Independence forces the reduced form to be `[I_k; 0]`, so a solve
/// is a single matrix-vector product plus a consistency check.
#[derive(Clone, Debug)]
pub struct CoordSolver {
    k: usize,
    elim: Mat, // row operations E with E*A = [I_k; 0]
}

impl CoordSolver {
    /// `vectors` are the basis vectors (length-N each); they must be linearly
    /// independent.
    pub fn new(dim_ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let k = vectors.len();
        let mut aug = Mat::zero(dim_ambient, k + dim_ambient);
        for (j, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), dim_ambient);
            for i in 0..dim_ambient {
                aug.set(i, j, v[i].clone());
            }
        }
        for i in 0..dim_ambient {
            aug.set(i, k + i, Rat::one());
        }
        let pivots_all = aug.rref_in_place();
        let pivots_in_a = pivots_all.iter().filter(|&&c| c < k).count();
        assert_eq!(pivots_in_a, k, "CoordSolver basis must be independent");
        let mut elim = Mat::zero(dim_ambient, dim_ambient);
        for i in 0..dim_ambient {
            for j in 0..dim_ambient {
                elim.set(i, j, aug.get(i, k + j).clone());
            }
        }
        CoordSolver { k, elim }
    }

    /// Coordinates of `v` over the basis, or `None` if `v` is outside the
    /// span.
    pub fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let w = self.elim.mul_vec(v);
        if w.iter().skip(self.k).any(|x| !x.is_zero()) {
            return None;
        }
        Some(w[..self.k].to_vec())
    }
}

/// Particular solution of `A c = rhs` with free variables set to zero, or
/// `None` if the system is inconsistent.
pub fn solve_linear(a: &Mat, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows, rhs.len());
    let mut aug = Mat::zero(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, rhs[i].clone());
    }
    let pivots = aug.rref_in_place();
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut sol = vec![Rat::zero(); a.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = aug.get(row, a.cols).clone();
    }
    Some(sol)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add_scaled(target: &mut [Rat], src: &[Rat], c: &Rat) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += c * s;
        }
    }
}

pub fn scale_vec(v: &[Rat], c: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Gram-Schmidt without normalization; returns orthogonal vectors with their
/// squared norms under the given inner product. Zero vectors are dropped.
pub fn gram_schmidt<F>(vectors: &[Vec<Rat>], ip: F) -> Vec<(Vec<Rat>, Rat)>
where
    F: Fn(&[Rat], &[Rat]) -> Rat,
{
    let mut out: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, n2) in &out {
            let c = ip(&w, u) / n2;
            if !c.is_zero() {
                add_scaled(&mut w, u, &(-c));
            }
        }
        if !is_zero_vec(&w) {
            let n2 = ip(&w, &w);
            out.push((w, n2));
        }
    }
    out
}
