//! Finite-dimensional algebras by structure constants, semisimplicity via the
//! trace form, center computation, and Wedderburn-shape certification. Also
//! the F2 nullity formula that predicts the shape in the sum-of-squares case.

use std::fmt;

use num_traits::One;

use crate::matrix::{ExactMatrix, LinError};
use crate::scalar::{Rat, Ring};

/// Sorted, zero-free coordinate vector.
pub type SparseVec<K> = Vec<(usize, K)>;

pub fn sparse_from_dense<K: Ring>(v: &[K]) -> SparseVec<K> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse<K: Ring>(v: &SparseVec<K>, dim: usize) -> Vec<K> {
    let mut out = vec![K::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

fn sparse_add_scaled<K: Ring>(acc: &mut Vec<K>, v: &SparseVec<K>, factor: &K) {
    for (i, c) in v {
        acc[*i] = acc[*i].clone() + c.clone() * factor.clone();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructError {
    /// The trace-form criterion needs an exact characteristic-0 field.
    WrongCharacteristic,
    NotPlusMinusOne { i: usize, j: usize },
    /// A central idempotent quadratic with no root in the working field.
    NonSplitCenter,
    NotAssociative(String),
    NotUnital(String),
    Linear(LinError),
}

impl fmt::Display for StructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructError::WrongCharacteristic => {
                write!(f, "semisimplicity test needs a characteristic-0 field; specialize first")
            }
            StructError::NotPlusMinusOne { i, j } => {
                write!(f, "alpha[{i}][{j}] is not +1 or -1")
            }
            StructError::NonSplitCenter => {
                write!(f, "central idempotent does not split in the working field; extend the field")
            }
            StructError::NotAssociative(s) => write!(f, "associativity fails: {s}"),
            StructError::NotUnital(s) => write!(f, "unit axiom fails: {s}"),
            StructError::Linear(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for StructError {}

impl From<LinError> for StructError {
    fn from(e: LinError) -> Self {
        StructError::Linear(e)
    }
}

/// An algebra given by a labeled basis and the products of basis pairs.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra<K> {
    labels: Vec<String>,
    dim: usize,
    /// Row-major: entry `i*dim + j` is the expansion of `e_i * e_j`.
    products: Vec<SparseVec<K>>,
    unit: SparseVec<K>,
}

impl<K: Ring> FinDimAlgebra<K> {
    pub fn from_table(labels: Vec<String>, products: Vec<SparseVec<K>>, unit: SparseVec<K>) -> Self {
        let dim = labels.len();
        assert_eq!(products.len(), dim * dim, "product table has wrong size");
        FinDimAlgebra {
            labels,
            dim,
            products,
            unit,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<K> {
        &self.unit
    }

    pub fn table(&self, i: usize, j: usize) -> &SparseVec<K> {
        &self.products[i * self.dim + j]
    }

    pub fn mul(&self, a: &SparseVec<K>, b: &SparseVec<K>) -> SparseVec<K> {
        let mut acc = vec![K::zero(); self.dim];
        for (i, ca) in a {
            for (j, cb) in b {
                let factor = ca.clone() * cb.clone();
                sparse_add_scaled(&mut acc, self.table(*i, *j), &factor);
            }
        }
        sparse_from_dense(&acc)
    }

    pub fn pow(&self, a: &SparseVec<K>, e: usize) -> SparseVec<K> {
        let mut out = self.unit.clone();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Matrix of left multiplication by `v` on the basis.
    pub fn left_mult_matrix(&self, v: &SparseVec<K>) -> ExactMatrix<K> {
        let mut m = ExactMatrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(v, &vec![(j, K::one())]);
            for (i, c) in col {
                m[(i, j)] = c;
            }
        }
        m
    }

    fn basis_vec(&self, i: usize) -> SparseVec<K> {
        vec![(i, K::one())]
    }

    pub fn render_vec(&self, v: &SparseVec<K>) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| format!("{}*[{}]", crate::scalar::coeff_string(c), self.labels[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn verify_unit(&self) -> Result<(), StructError> {
        for i in 0..self.dim {
            let b = self.basis_vec(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(StructError::NotUnital(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    /// Associativity on every basis triple.
    pub fn verify_associativity_exhaustive(&self) -> Result<(), StructError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.table(i, j).clone();
                for k in 0..self.dim {
                    let left = self.mul(&ij, &self.basis_vec(k));
                    let right = self.mul(&self.basis_vec(i), self.table(j, k));
                    if left != right {
                        return Err(StructError::NotAssociative(format!(
                            "({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Trace of left multiplication by each basis element.
    fn basis_traces(&self) -> Vec<K> {
        (0..self.dim)
            .map(|i| {
                let mut t = K::zero();
                for k in 0..self.dim {
                    for (l, c) in self.table(i, k) {
                        if *l == k {
                            t = t + c.clone();
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Gram matrix of the trace form T(a, b) = trace(L_{ab}).
    pub fn trace_form(&self) -> ExactMatrix<K> {
        let traces = self.basis_traces();
        let mut g = ExactMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = K::zero();
                for (l, c) in self.table(i, j) {
                    acc = acc + c.clone() * traces[*l].clone();
                }
                g[(i, j)] = acc;
            }
        }
        g
    }

    /// Dimension of the radical: the kernel of the trace form, which equals
    /// the Jacobson radical in characteristic 0.
    pub fn radical_dim(&self) -> Result<usize, StructError> {
        if !K::FIELD {
            return Err(StructError::WrongCharacteristic);
        }
        let g = self.trace_form();
        Ok(self.dim - g.rank())
    }

    /// Basis of the center, from the linear system [z, e_i] = 0 for all i.
    /// The constraints are intersected incrementally: the candidate space
    /// shrinks to the center within a few basis elements, so the cost stays
    /// far below one giant kernel computation.
    pub fn center(&self) -> Result<Vec<Vec<K>>, StructError> {
        let mut basis: Vec<Vec<K>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![K::zero(); self.dim];
                v[i] = K::one();
                v
            })
            .collect();
        for i in 0..self.dim {
            if basis.is_empty() {
                break;
            }
            // Rows: coordinates of [v_j, e_i] as functions of the current basis.
            let mut rows = vec![vec![K::zero(); basis.len()]; self.dim];
            for (j, v) in basis.iter().enumerate() {
                let sv = sparse_from_dense(v);
                let ei = vec![(i, K::one())];
                let left = self.mul(&sv, &ei);
                let right = self.mul(&ei, &sv);
                for (k, c) in left {
                    rows[k][j] = rows[k][j].clone() + c;
                }
                for (k, c) in right {
                    rows[k][j] = rows[k][j].clone() - c;
                }
            }
            let kernel = ExactMatrix::from_rows(rows).kernel_basis()?;
            basis = kernel
                .into_iter()
                .map(|combo| {
                    let mut v = vec![K::zero(); self.dim];
                    for (j, c) in combo.into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (idx, b) in basis[j].iter().enumerate() {
                            v[idx] = v[idx].clone() + c.clone() * b.clone();
                        }
                    }
                    v
                })
                .collect();
        }
        Ok(basis)
    }
}

/// Shape report for a finite-dimensional algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnCertificate {
    pub dim: usize,
    pub semisimple: bool,
    pub radical_dim: usize,
    pub center_dim: usize,
    /// q: number of simple blocks (over the algebraic closure).
    pub block_count: usize,
    /// Dimensions of the blocks, descending.
    pub block_dims: Vec<usize>,
    /// s_i with s_i^2 = block dim, when the dims are perfect squares.
    pub block_sizes: Option<Vec<u64>>,
    /// Whether a rank-1 idempotent was exhibited in every block, i.e. the
    /// matrix shape is realized over the working field rather than only over
    /// the algebraic closure.
    pub split_exhibited: bool,
}

impl WedderburnCertificate {
    pub fn summary(&self) -> String {
        if !self.semisimple {
            return format!("not semisimple (radical dim {})", self.radical_dim);
        }
        let shape = match &self.block_sizes {
            Some(sizes) => sizes
                .iter()
                .map(|s| format!("M{s}"))
                .collect::<Vec<_>>()
                .join(" x "),
            None => format!("{:?}", self.block_dims),
        };
        let split = if self.split_exhibited {
            "split exhibited"
        } else {
            "split assumed over closure"
        };
        format!(
            "semisimple, q={}, blocks {:?}, shape {} ({})",
            self.block_count, self.block_dims, shape, split
        )
    }
}

fn is_perfect_square(d: usize) -> Option<u64> {
    let s = (d as f64).sqrt().round() as u64;
    for c in s.saturating_sub(1)..=s + 1 {
        if c * c == d as u64 {
            return Some(c);
        }
    }
    None
}

/// Monic minimal polynomial (coefficients low to high) of `a` inside the
/// corner algebra with unit `e`, or None if its degree exceeds `maxdeg`.
fn min_poly_bounded<K: Ring>(
    alg: &FinDimAlgebra<K>,
    e: &SparseVec<K>,
    a: &SparseVec<K>,
    maxdeg: usize,
) -> Option<Vec<K>> {
    let dim = alg.dim();
    let mut powers: Vec<SparseVec<K>> = vec![e.clone()];
    loop {
        let next = alg.mul(powers.last().unwrap(), a);
        let cols: Vec<Vec<K>> = powers.iter().map(|p| dense_from_sparse(p, dim)).collect();
        let rhs = dense_from_sparse(&next, dim);
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            rows.push(cols.iter().map(|c| c[i].clone()).collect::<Vec<K>>());
        }
        let m = ExactMatrix::from_rows(rows);
        if let Ok(Some(sol)) = m.solve(&rhs) {
            // a^k = sum sol_i a^i; min poly = x^k - sum sol_i x^i.
            let mut coeffs: Vec<K> = sol.into_iter().map(|c| -c).collect();
            coeffs.push(K::one());
            return Some(coeffs);
        }
        if powers.len() > maxdeg {
            return None;
        }
        powers.push(next);
    }
}

/// Distinct roots of a monic polynomial of degree <= 2 in the working field.
fn small_roots<K: Ring>(coeffs: &[K]) -> Option<Vec<K>> {
    match coeffs.len() {
        2 => Some(vec![-coeffs[0].clone()]),
        3 => {
            let b = coeffs[1].clone();
            let c = coeffs[0].clone();
            let four = K::from_i64(4);
            let disc = b.clone() * b.clone() - four * c;
            let d = disc.sqrt()?;
            if d.is_zero() {
                return None; // repeated root: no refinement available
            }
            let half = K::from_i64(2).inv()?;
            let r1 = (-b.clone() + d.clone()) * half.clone();
            let r2 = (-b - d) * half;
            Some(vec![r1, r2])
        }
        _ => None,
    }
}

/// Lagrange idempotents of `a` (eigenvalues `roots`) in the corner with unit
/// `e`.
fn lagrange_idempotents<K: Ring>(
    alg: &FinDimAlgebra<K>,
    e: &SparseVec<K>,
    a: &SparseVec<K>,
    roots: &[K],
) -> Option<Vec<SparseVec<K>>> {
    let mut out = Vec::new();
    for (j, rj) in roots.iter().enumerate() {
        let mut v = e.clone();
        for (l, rl) in roots.iter().enumerate() {
            if l == j {
                continue;
            }
            let denom = (rj.clone() - rl.clone()).inv()?;
            // v *= (a - rl * e) / (rj - rl)
            let shifted: SparseVec<K> = {
                let mut acc = dense_from_sparse(a, alg.dim());
                for (i, c) in e {
                    acc[*i] = acc[*i].clone() - rl.clone() * c.clone();
                }
                sparse_from_dense(&acc)
            };
            v = alg.mul(&v, &shifted);
            v = v.into_iter().map(|(i, c)| (i, c * denom.clone())).collect();
        }
        out.push(v);
    }
    Some(out)
}

/// Splits the identity into primitive central idempotents by refining along
/// the center basis. Every refinement step is a minimal polynomial of degree
/// at most 2; a quadratic that does not split in the working field is a
/// [`StructError::NonSplitCenter`].
fn central_idempotents<K: Ring>(
    alg: &FinDimAlgebra<K>,
    center: &[Vec<K>],
) -> Result<Vec<SparseVec<K>>, StructError> {
    let q = center.len();
    let mut idems: Vec<SparseVec<K>> = vec![alg.unit().clone()];
    for u_dense in center {
        let u = sparse_from_dense(u_dense);
        let mut next = Vec::new();
        for e in idems {
            let a = alg.mul(&e, &u);
            let Some(mp) = min_poly_bounded(alg, &e, &a, q.max(2)) else {
                return Err(StructError::NonSplitCenter);
            };
            if mp.len() <= 2 {
                next.push(e);
                continue;
            }
            // Degree > 2 would need a proper factorization; the center
            // elements reached here never do.
            let Some(roots) = small_roots(&mp) else {
                return Err(StructError::NonSplitCenter);
            };
            match lagrange_idempotents(alg, &e, &a, &roots) {
                Some(parts) => next.extend(parts),
                None => return Err(StructError::NonSplitCenter),
            }
        }
        idems = next;
    }
    if idems.len() != q {
        return Err(StructError::NonSplitCenter);
    }
    Ok(idems)
}

/// Tries to exhibit a rank-`s` idempotent inside the block cut out by the
/// central idempotent `e` (a rank-1 idempotent of the M_s block).
fn exhibit_split<K: Ring>(alg: &FinDimAlgebra<K>, e: &SparseVec<K>, s: u64) -> bool {
    if s == 1 {
        return true; // the block unit itself
    }
    let mut candidates: Vec<SparseVec<K>> = Vec::new();
    for i in 0..alg.dim() {
        candidates.push(alg.mul(e, &vec![(i, K::one())]));
    }
    for c in candidates {
        if c.is_empty() {
            continue;
        }
        let Some(mp) = min_poly_bounded(alg, e, &c, 2) else {
            continue;
        };
        let Some(roots) = small_roots(&mp) else {
            continue;
        };
        let Some(idems) = lagrange_idempotents(alg, e, &c, &roots) else {
            continue;
        };
        for idem in idems {
            if idem.is_empty() {
                continue;
            }
            if alg.mul(&idem, &idem) != idem {
                continue;
            }
            let rank = alg.left_mult_matrix(&idem).rank();
            if rank as u64 == s {
                return true;
            }
        }
    }
    false
}

pub fn wedderburn_certificate<K: Ring>(
    alg: &FinDimAlgebra<K>,
) -> Result<WedderburnCertificate, StructError> {
    let radical = alg.radical_dim()?;
    let center = alg.center()?;
    let center_dim = center.len();
    if radical > 0 {
        return Ok(WedderburnCertificate {
            dim: alg.dim(),
            semisimple: false,
            radical_dim: radical,
            center_dim,
            block_count: 0,
            block_dims: vec![],
            block_sizes: None,
            split_exhibited: false,
        });
    }
    let idems = central_idempotents(alg, &center)?;
    let mut block_dims: Vec<usize> = idems
        .iter()
        .map(|e| alg.left_mult_matrix(e).rank())
        .collect();
    let mut pairs: Vec<(usize, SparseVec<K>)> =
        block_dims.iter().cloned().zip(idems.iter().cloned()).collect();
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    block_dims = pairs.iter().map(|(d, _)| *d).collect();
    debug_assert_eq!(block_dims.iter().sum::<usize>(), alg.dim());
    let sizes: Option<Vec<u64>> = block_dims.iter().map(|&d| is_perfect_square(d)).collect();
    let split_exhibited = match &sizes {
        Some(list) => pairs
            .iter()
            .zip(list)
            .all(|((_, e), &s)| exhibit_split(alg, e, s)),
        None => false,
    };
    Ok(WedderburnCertificate {
        dim: alg.dim(),
        semisimple: true,
        radical_dim: 0,
        center_dim,
        block_count: idems.len(),
        block_dims,
        block_sizes: sizes,
        split_exhibited,
    })
}

/// Bit matrix over F2, up to 64 columns.
#[derive(Clone, Debug)]
pub struct F2Matrix {
    pub n: usize,
    pub rows: Vec<u64>,
}

impl F2Matrix {
    pub fn nullity(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r] & bit != 0 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        self.n - rank
    }
}

/// The sign matrix of an n x n grid of +-1 entries: zero on the diagonal and
/// where the entry is -1, one elsewhere, with an all-ones border row and
/// column appended.
pub fn sign_matrix<K: Ring>(alpha: &[Vec<K>]) -> Result<F2Matrix, StructError> {
    let n = alpha.len();
    assert!(n + 1 <= 64, "sign matrix limited to 63 variables");
    let one = K::one();
    let minus_one = -K::one();
    let mut rows = vec![0u64; n + 1];
    for (i, row) in alpha.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != one && *v != minus_one {
                return Err(StructError::NotPlusMinusOne { i: i + 1, j: j + 1 });
            }
            let bit = if i == j || *v == minus_one { 0 } else { 1 };
            rows[i] |= bit << j;
        }
        rows[i] |= 1 << n; // border column
    }
    // Border row: ones off the diagonal.
    for j in 0..n {
        rows[n] |= 1 << j;
    }
    Ok(F2Matrix { n: n + 1, rows })
}

/// The F2-nullity shape formula: returns (l, q, s) with q = 2^l and
/// s = 2^((n - l - 1)/2).
pub fn hu_formula<K: Ring>(alpha: &[Vec<K>]) -> Result<(usize, u64, u64), StructError> {
    let n = alpha.len();
    let x = sign_matrix(alpha)?;
    let l = x.nullity();
    assert!(
        (n as i64 - l as i64 - 1) % 2 == 0 && l < n + 1,
        "nullity parity violated: n={n}, l={l}"
    );
    let q = 1u64 << l;
    let s = 1u64 << ((n - l - 1) / 2);
    Ok((l, q, s))
}

/// Structure constants of the full matrix algebra M_s, basis E_{ij} row-major.
/// Test fixture and reference object.
pub fn matrix_algebra(s: usize) -> FinDimAlgebra<Rat> {
    let dim = s * s;
    let mut products = Vec::with_capacity(dim * dim);
    let mut labels = Vec::with_capacity(dim);
    for i in 0..s {
        for j in 0..s {
            labels.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    for a in 0..dim {
        for b in 0..dim {
            let (i, j) = (a / s, a % s);
            let (k, l) = (b / s, b % s);
            if j == k {
                products.push(vec![(i * s + l, Rat::one())]);
            } else {
                products.push(vec![]);
            }
        }
    }
    let unit = (0..s).map(|i| (i * s + i, Rat::one())).collect();
    FinDimAlgebra::from_table(labels, products, unit)
}
