//! The five-variable matrix factorization example: the indexed family of 4x4
//! matrices Phi^i over the three-parameter skew algebra, the factorization
//! identity Phi^i Phi^{i+1} = f I_4, and the diagonal conjugation relating
//! consecutive members.

use std::fmt;


use crate::freealg::NCPoly;
use crate::scalar::{Laurent, Ring, SymbolList};
use crate::skew::{odd_alpha_grid, SkewAlgebra, SkewError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatFactError {
    WrongParametrization(String),
    EntryMismatch {
        index: i64,
        row: usize,
        col: usize,
        residue: String,
    },
}

impl fmt::Display for MatFactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatFactError::WrongParametrization(s) => write!(f, "wrong parametrization: {s}"),
            MatFactError::EntryMismatch {
                index,
                row,
                col,
                residue,
            } => write!(
                f,
                "entry ({row}, {col}) of the product at i = {index} is {residue}"
            ),
        }
    }
}

impl std::error::Error for MatFactError {}

/// The three free parameters alpha, beta, gamma of the five-variable family.
#[derive(Clone, Debug)]
pub struct FiveVarParams<K> {
    pub alpha: K,
    pub beta: K,
    pub gamma: K,
}

impl<K: Ring> FiveVarParams<K> {
    pub fn new(alpha: K, beta: K, gamma: K) -> Result<Self, MatFactError> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            if v.inv().is_none() {
                return Err(MatFactError::WrongParametrization(format!(
                    "{name} must be a unit, got {v}"
                )));
            }
        }
        Ok(FiveVarParams { alpha, beta, gamma })
    }

    /// The full 5x5 grid: mus = (alpha, beta), odd-odd entry gamma.
    pub fn grid(&self) -> Vec<Vec<K>> {
        odd_alpha_grid(
            &[self.alpha.clone(), self.beta.clone()],
            &[vec![self.gamma.clone()]],
        )
    }

    pub fn skew_algebra(&self) -> Result<SkewAlgebra<K>, SkewError> {
        SkewAlgebra::new(self.grid())
    }

    fn pow(&self, base: &K, e: i64) -> K {
        base.pow_i(e).expect("parameters are units")
    }

    /// The standard conjugator diag(1, beta, alpha, alpha*beta).
    pub fn conjugator(&self) -> [K; 4] {
        [
            K::one(),
            self.beta.clone(),
            self.alpha.clone(),
            self.alpha.clone() * self.beta.clone(),
        ]
    }
}

/// The parametric Laurent instance on symbols a, b, g.
pub fn laurent_params() -> (SymbolList, FiveVarParams<Laurent>) {
    let syms = Laurent::ring(&["a", "b", "g"]);
    let p = FiveVarParams::new(
        Laurent::sym(&syms, 0),
        Laurent::sym(&syms, 1),
        Laurent::sym(&syms, 2),
    )
    .expect("symbols are units");
    (syms, p)
}

/// A square matrix of degree-1 polynomials over the skew algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix<K> {
    pub entries: Vec<Vec<NCPoly<K>>>,
}

impl<K: Ring> AlgMatrix<K> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entrywise product followed by PBW normal forms.
    pub fn mul(&self, other: &AlgMatrix<K>, s: &SkewAlgebra<K>) -> Result<AlgMatrix<K>, SkewError> {
        let n = self.size();
        let mut out = vec![vec![NCPoly::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = NCPoly::zero();
                for k in 0..n {
                    acc.add_assign(&self.entries[r][k].mul(&other.entries[k][c]));
                }
                out[r][c] = s.normal_form(&acc)?;
            }
        }
        Ok(AlgMatrix { entries: out })
    }

    /// Row-major list of polynomial strings.
    pub fn render_rows(&self, s: &SkewAlgebra<K>) -> Vec<String> {
        self.entries
            .iter()
            .flat_map(|row| row.iter().map(|p| p.render(s.gens())))
            .collect()
    }
}

/// The displayed 4x4 matrix with exponents in the integer index i.
pub fn phi_matrix<K: Ring>(i: i64, p: &FiveVarParams<K>) -> AlgMatrix<K> {
    let x = |k: usize| NCPoly::<K>::gen(k - 1);
    let al = |e: i64| p.pow(&p.alpha, e);
    let be = |e: i64| p.pow(&p.beta, e);
    let zero = NCPoly::zero();
    let entries = vec![
        vec![
            x(5),
            x(4).scale(&be(-i)),
            x(2).scale(&al(-i)),
            zero.clone(),
        ],
        vec![
            x(3).scale(&be(i + 1)),
            x(5).neg(),
            zero.clone(),
            x(2).scale(&(al(-i - 1) * p.gamma.clone())),
        ],
        vec![
            x(1).scale(&al(i + 1)),
            zero.clone(),
            x(5).neg(),
            x(4).scale(&-be(-i - 1)),
        ],
        vec![
            zero,
            x(1).scale(&(al(i + 2) * p.gamma.inv().expect("gamma is a unit"))),
            x(3).scale(&-be(i + 2)),
            x(5),
        ],
    ];
    AlgMatrix { entries }
}

/// Checks Phi^i Phi^{i+1} = f I_4 for every i in the range, as exact
/// coefficient identities in PBW normal form.
pub fn verify_factorization<K: Ring>(
    s: &SkewAlgebra<K>,
    p: &FiveVarParams<K>,
    f: &NCPoly<K>,
    irange: std::ops::RangeInclusive<i64>,
) -> Result<(), MatFactError> {
    let f_nf = s.normal_form(f).expect("degree-2 input");
    for i in irange {
        let prod = phi_matrix(i, p)
            .mul(&phi_matrix(i + 1, p), s)
            .expect("degree-2 products");
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r == c { f_nf.clone() } else { NCPoly::zero() };
                if prod.entries[r][c] != expected {
                    let residue = prod.entries[r][c].sub(&expected);
                    return Err(MatFactError::EntryMismatch {
                        index: i,
                        row: r + 1,
                        col: c + 1,
                        residue: residue.render(s.gens()),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Checks P Phi^i P^{-1} = Phi^{i+1} entrywise for a diagonal scalar P.
pub fn verify_conjugation<K: Ring>(
    s: &SkewAlgebra<K>,
    p: &FiveVarParams<K>,
    diag: &[K; 4],
    irange: std::ops::RangeInclusive<i64>,
) -> Result<(), MatFactError> {
    let inv: Vec<K> = diag
        .iter()
        .map(|d| {
            d.inv().ok_or_else(|| {
                MatFactError::WrongParametrization(format!("conjugator entry {d} not a unit"))
            })
        })
        .collect::<Result<_, _>>()?;
    for i in irange.clone() {
        let phi = phi_matrix(i, p);
        let next = phi_matrix(i + 1, p);
        for r in 0..4 {
            for c in 0..4 {
                let lhs = phi.entries[r][c]
                    .scale(&(diag[r].clone() * inv[c].clone()));
                let diff = lhs.sub(&next.entries[r][c]);
                if !s.normal_form(&diff).expect("degree-1 entries").is_zero() {
                    return Err(MatFactError::EntryMismatch {
                        index: i,
                        row: r + 1,
                        col: c + 1,
                        residue: diff.render(s.gens()),
                    });
                }
            }
        }
    }
    Ok(())
}
