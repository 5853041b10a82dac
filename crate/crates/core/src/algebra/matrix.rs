//! Dense exact matrices and a sparse echelon basis.
//!
//! Elimination is fraction-free in the Bareiss sense: every update of the
//! forward pass is `(pivot * a_ij - a_ik * a_kj) / previous_pivot`, so
//! integer input stays integral until the final normalisation.

use std::collections::BTreeMap;
use std::fmt;

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut t = self.transpose();
        for v in &mut t.data {
            *v = v.conj();
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Columns `range` of `self`.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Fraction-free forward elimination in place. Returns the pivot columns
    /// and the sign of the row permutation.
    fn bareiss(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut r = 0;
        let mut odd = false;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                odd = !odd;
            }
            let piv = self.get(r, col).clone();
            let prev_inv = prev.inv().expect("previous pivot is nonzero");
            for i in (r + 1)..self.rows {
                let lead = self.get(i, col).clone();
                for j in (col + 1)..self.cols {
                    let v = &(&piv * self.get(i, j)) - &(&lead * self.get(r, j));
                    self.set(i, j, &v * &prev_inv);
                }
                self.set(i, col, Scalar::zero());
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0.len()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let mut m = self.clone();
        let (pivots, odd) = m.bareiss();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        // The last Bareiss pivot is the determinant up to the row permutation.
        let d = m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if odd { -d } else { d })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.bareiss();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..r {
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
        }
        (m, pivots)
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing
    /// column order, each with a 1 in its free slot.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.columns(n..2 * n))
    }

    /// Solves `M x = b`, choosing zero for every free variable. `None` when
    /// the system is inconsistent.
    pub fn solve_particular(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.is_square() || self.rank() < self.rows {
            return Err(Error::Singular);
        }
        self.solve_particular(b)?.ok_or(Error::Singular)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Incrementally echelonised set of sparse vectors, used to expand a vector
/// in a (possibly large, sparse) basis without materialising a dense matrix.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    size: usize,
    rows: Vec<EchelonRow<K>>,
}

#[derive(Clone, Debug)]
struct EchelonRow<K> {
    pivot: K,
    vector: BTreeMap<K, Scalar>,
    /// Expresses `vector` in the original inputs.
    combination: Vec<Scalar>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon {
            size: 0,
            rows: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = BTreeMap<K, Scalar>>>(vectors: I) -> Self {
        let mut e = Self::new();
        for v in vectors {
            e.push(v);
        }
        e
    }

    /// Number of vectors pushed so far.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut BTreeMap<K, Scalar>, comb: &mut [Scalar]) {
        for row in &self.rows {
            let Some(f) = v.get(&row.pivot).cloned() else {
                continue;
            };
            for (k, c) in &row.vector {
                let entry = v.entry(k.clone()).or_default();
                *entry -= &(&f * c);
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            for (slot, c) in comb.iter_mut().zip(&row.combination) {
                *slot -= &(&f * c);
            }
        }
    }

    /// Adds a vector; returns whether it was independent of the earlier ones.
    pub fn push(&mut self, vector: BTreeMap<K, Scalar>) -> bool {
        let idx = self.size;
        self.size += 1;
        for row in &mut self.rows {
            row.combination.push(Scalar::zero());
        }
        let mut v: BTreeMap<K, Scalar> = vector.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut comb = vec![Scalar::zero(); self.size];
        comb[idx] = Scalar::one();
        self.reduce(&mut v, &mut comb);
        let Some((pivot, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        for c in &mut comb {
            *c = &*c * &inv;
        }
        self.rows.push(EchelonRow {
            pivot,
            vector: v,
            combination: comb,
        });
        true
    }

    /// Coordinates of `target` in the pushed vectors (free directions set to
    /// zero), or `None` if `target` is outside their span.
    pub fn coordinates(&self, target: &BTreeMap<K, Scalar>) -> Option<Vec<Scalar>> {
        let mut v: BTreeMap<K, Scalar> = target
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let mut comb = vec![Scalar::zero(); self.size];
        self.reduce(&mut v, &mut comb);
        if !v.is_empty() {
            return None;
        }
        // reduce() subtracted the expansion; flip the sign.
        Some(comb.into_iter().map(|c| -c).collect())
    }

    pub fn contains(&self, target: &BTreeMap<K, Scalar>) -> bool {
        self.coordinates(target).is_some()
    }
}
