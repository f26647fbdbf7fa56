//! Dense exact linear algebra over any [`Ring`].
//!
//! Pivots must be units. Over a field that is every nonzero entry, so the
//! scan degenerates to "first nonzero in column-major order"; over a Laurent
//! ring a column whose nonzero entries are all non-units raises
//! [`LinError::NonUnitPivot`] and the caller must specialize to decide.

use std::fmt;


use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinError {
    DimensionMismatch { expected: usize, got: usize },
    NonUnitPivot { col: usize },
}

impl fmt::Display for LinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LinError::NonUnitPivot { col } => {
                write!(
                    f,
                    "no invertible pivot in column {col}; specialize to decide"
                )
            }
        }
    }
}

impl std::error::Error for LinError {}

#[derive(Clone, PartialEq)]
pub struct ExactMatrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
}

impl<K: Ring> ExactMatrix<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form with unit pivots. Returns pivot columns.
    /// The pivot in each column is the first row whose entry is a unit.
    pub fn rref(&mut self) -> Result<Vec<usize>, LinError> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            let mut pivot_row = None;
            let mut saw_nonzero = false;
            for r in next_row..self.rows {
                if !self[(r, col)].is_zero() {
                    saw_nonzero = true;
                    if self[(r, col)].inv().is_some() {
                        pivot_row = Some(r);
                        break;
                    }
                }
            }
            let Some(pr) = pivot_row else {
                if saw_nonzero {
                    return Err(LinError::NonUnitPivot { col });
                }
                continue;
            };
            self.swap_rows(next_row, pr);
            let inv = self[(next_row, col)].inv().expect("unit pivot");
            for j in col..self.cols {
                self[(next_row, j)] = self[(next_row, j)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == next_row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let delta = factor.clone() * self[(next_row, j)].clone();
                    self[(r, j)] = self[(r, j)].clone() - delta;
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        Ok(pivots)
    }

    /// Solve `self * x = b`; `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &[K]) -> Result<Option<Vec<K>>, LinError> {
        if b.len() != self.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = ExactMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref()?;
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![K::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel {x : self * x = 0}, one vector per free
    /// column, in column order.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<K>>, LinError> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(row, free)].clone();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn inverse(&self) -> Result<Option<ExactMatrix<K>>, LinError> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = ExactMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = K::one();
        }
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Ok(None);
        }
        let mut inv = ExactMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Some(inv))
    }

    /// Rank over the fraction field, by Bareiss fraction-free elimination.
    /// Needs no inverses, only exact division, so it is valid over Laurent
    /// rings as well.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant by the Bareiss algorithm (square matrices).
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (rank, det, _) = self.bareiss_full();
        if rank < self.rows {
            K::zero()
        } else {
            det
        }
    }

    fn bareiss(&self) -> (usize, K) {
        let (r, d, _) = self.bareiss_full();
        (r, d)
    }

    fn bareiss_full(&self) -> (usize, K, ExactMatrix<K>) {
        let mut m = self.clone();
        let mut prev = K::one();
        let mut rank = 0;
        let mut sign_flip = false;
        for col in 0..m.cols {
            if rank >= m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if pr != rank {
                m.swap_rows(rank, pr);
                sign_flip = !sign_flip;
            }
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                for j in col + 1..m.cols {
                    let num =
                        pivot.clone() * m[(r, j)].clone() - m[(r, col)].clone() * m[(rank, j)].clone();
                    m[(r, j)] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                m[(r, col)] = K::zero();
            }
            prev = pivot;
            rank += 1;
        }
        let det = if sign_flip { -prev } else { prev };
        (rank, det, m)
    }
}

impl<K> std::ops::Index<(usize, usize)> for ExactMatrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.entries[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for ExactMatrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.entries[i * self.cols + j]
    }
}

impl<K: Ring> fmt::Debug for ExactMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::scalar::{Laurent, Rat};

    fn rm(rows: Vec<Vec<i64>>) -> ExactMatrix<Rat> {
        ExactMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rat::from_i64).collect())
                .collect(),
        )
    }

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(Rat::from_i64).collect()
    }

    #[test]
    fn identity_solve() {
        let m = rm(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(m.solve(&rv(vec![3, 5])).unwrap().unwrap(), rv(vec![3, 5]));
    }

    #[test]
    fn inconsistent_system() {
        let m = rm(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(m.solve(&rv(vec![1, 0])).unwrap(), None);
    }

    #[test]
    fn laurent_monomial_pivot() {
        let syms = Laurent::ring(&["q"]);
        let q = Laurent::sym(&syms, 0);
        let zero = Laurent::constant(&syms, Rat::zero());
        let one = Laurent::constant(&syms, Rat::one());
        let m = ExactMatrix::from_rows(vec![
            vec![q.clone(), zero.clone()],
            vec![zero.clone(), one.clone()],
        ]);
        let b = vec![q.clone() * q.clone(), zero.clone()];
        assert_eq!(m.solve(&b).unwrap().unwrap(), vec![q, zero]);
    }

    #[test]
    fn non_unit_pivot_is_reported() {
        let syms = Laurent::ring(&["q"]);
        let q = Laurent::sym(&syms, 0);
        let one = Laurent::constant(&syms, Rat::one());
        let m = ExactMatrix::from_rows(vec![vec![q + one.clone()]]);
        assert_eq!(m.solve(&[one]), Err(LinError::NonUnitPivot { col: 0 }));
    }

    #[test]
    fn kernel_and_rank() {
        let m = rm(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let basis = m.kernel_basis().unwrap();
        assert_eq!(basis.len(), 2);
        for v in basis {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_bareiss() {
        let m = rm(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        assert_eq!(m.det(), Rat::from_i64(4));
        let singular = rm(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), Rat::zero());
    }

    #[test]
    fn det_over_laurent() {
        let syms = Laurent::ring(&["q"]);
        let q = Laurent::sym(&syms, 0);
        let one = Laurent::constant(&syms, Rat::one());
        let m = ExactMatrix::from_rows(vec![
            vec![q.clone(), one.clone()],
            vec![one.clone(), q.clone()],
        ]);
        assert_eq!(m.det(), q.clone() * q - one);
    }

    #[test]
    fn inverse_round_trip() {
        let m = rm(vec![vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
    }
}
