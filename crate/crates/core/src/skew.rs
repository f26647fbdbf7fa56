//! Standard graded skew polynomial algebras S_alpha, the two quadric familes
//! f, and normality of f: a general linear solver over the PBW basis and the
//! closed-form conditions, kept separate so each can check the other.

use std::fmt;


use crate::freealg::{Gens, NCPoly, Presentation, PresentationMode, Word};
use crate::matrix::{ExactMatrix, LinError};
use crate::rewrite::{complete, RewriteError, RewriteSystem};
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewError {
    InvalidAlpha(String),
    NotDegreeTwo,
    /// The general normality system has a solution with nonzero off-diagonal
    /// coefficients; the diagonal certificate does not apply.
    NotDiagonal(String),
    Rewrite(RewriteError),
    Linear(LinError),
}

impl fmt::Display for SkewError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewError::InvalidAlpha(s) => write!(f, "invalid alpha grid: {s}"),
            SkewError::NotDegreeTwo => write!(f, "f must be homogeneous of degree 2 and nonzero"),
            SkewError::NotDiagonal(s) => write!(f, "normality is not diagonal: {s}"),
            SkewError::Rewrite(e) => write!(f, "{e}"),
            SkewError::Linear(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SkewError {}

impl From<RewriteError> for SkewError {
    fn from(e: RewriteError) -> Self {
        SkewError::Rewrite(e)
    }
}

impl From<LinError> for SkewError {
    fn from(e: LinError) -> Self {
        SkewError::Linear(e)
    }
}

/// Which quadric to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FKind {
    /// x1 x2 + x3 x4 + ... (+ xn^2 when n is odd).
    Hyperbolic,
    /// x1^2 + ... + xn^2.
    SumOfSquares,
}

impl FKind {
    pub fn parse(s: &str) -> Option<FKind> {
        match s {
            "hyperbolic" => Some(FKind::Hyperbolic),
            "sum_of_squares" => Some(FKind::SumOfSquares),
            _ => None,
        }
    }
}

impl fmt::Display for FKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FKind::Hyperbolic => write!(f, "hyperbolic"),
            FKind::SumOfSquares => write!(f, "sum_of_squares"),
        }
    }
}

/// The quadric of the requested family, as a noncommutative polynomial.
pub fn build_f<K: Ring>(n: usize, kind: FKind) -> NCPoly<K> {
    assert!(n >= 1);
    let mut f = NCPoly::zero();
    match kind {
        FKind::Hyperbolic => {
            for s in 0..n / 2 {
                f.add_term(Word(vec![(2 * s) as u8, (2 * s + 1) as u8]), K::one());
            }
            if n % 2 == 1 {
                f.add_term(Word(vec![(n - 1) as u8, (n - 1) as u8]), K::one());
            }
        }
        FKind::SumOfSquares => {
            for i in 0..n {
                f.add_term(Word(vec![i as u8, i as u8]), K::one());
            }
        }
    }
    f
}

/// S_alpha with its PBW rewrite system.
#[derive(Clone, Debug)]
pub struct SkewAlgebra<K> {
    n: usize,
    alpha: Vec<Vec<K>>,
    presentation: Presentation<K>,
    rs: RewriteSystem<K>,
}

impl<K: Ring> SkewAlgebra<K> {
    /// Validates the grid and completes the PBW system.
    pub fn new(alpha: Vec<Vec<K>>) -> Result<Self, SkewError> {
        let n = alpha.len();
        if n == 0 {
            return Err(SkewError::InvalidAlpha("empty grid".into()));
        }
        for (i, row) in alpha.iter().enumerate() {
            if row.len() != n {
                return Err(SkewError::InvalidAlpha(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        for i in 0..n {
            if !alpha[i][i].is_one() {
                return Err(SkewError::InvalidAlpha(format!("alpha[{0}][{0}] != 1", i + 1)));
            }
            for j in 0..n {
                if alpha[i][j].inv().is_none() {
                    return Err(SkewError::InvalidAlpha(format!(
                        "alpha[{}][{}] is not a unit",
                        i + 1,
                        j + 1
                    )));
                }
                if !(alpha[i][j].clone() * alpha[j][i].clone()).is_one() {
                    return Err(SkewError::InvalidAlpha(format!(
                        "alpha[{i1}][{j1}] * alpha[{j1}][{i1}] != 1",
                        i1 = i + 1,
                        j1 = j + 1
                    )));
                }
            }
        }
        let gens = Gens::xs(n);
        let mut relations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // x_i x_j - alpha_ij x_j x_i
                let mut r = NCPoly::from_word(Word(vec![i as u8, j as u8]));
                r.add_term(Word(vec![j as u8, i as u8]), -alpha[i][j].clone());
                relations.push(r);
            }
        }
        let presentation = Presentation::new(gens, relations, PresentationMode::Quadratic)
            .expect("skew relations are quadratic");
        let rs = complete(&presentation, n + 4)?;
        Ok(SkewAlgebra {
            n,
            alpha,
            presentation,
            rs,
        })
    }

    pub fn commutative(n: usize) -> Self {
        SkewAlgebra::new(vec![vec![K::one(); n]; n]).expect("all-ones grid is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry alpha_{ij}.
    pub fn alpha(&self, i: usize, j: usize) -> &K {
        &self.alpha[i - 1][j - 1]
    }

    pub fn alpha_grid(&self) -> &[Vec<K>] {
        &self.alpha
    }

    pub fn gens(&self) -> &Gens {
        &self.presentation.gens
    }

    pub fn presentation(&self) -> &Presentation<K> {
        &self.presentation
    }

    pub fn rewrite_system(&self) -> &RewriteSystem<K> {
        &self.rs
    }

    pub fn normal_form(&self, p: &NCPoly<K>) -> Result<NCPoly<K>, SkewError> {
        Ok(self.rs.normal_form(p)?)
    }

    pub fn map_scalars<L: Ring>(&self, f: &impl Fn(&K) -> L) -> Result<SkewAlgebra<L>, SkewError> {
        let grid = self
            .alpha
            .iter()
            .map(|row| row.iter().map(f).collect())
            .collect();
        SkewAlgebra::new(grid)
    }
}

/// Witness scalars for x_i f = lambda_i f x_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCertificate<K> {
    pub lambda: Vec<K>,
}

/// Solves the general system x_i f = f (sum_j lambda_ij x_j) in PBW normal
/// form. Returns the diagonal certificate; a solvable system with nonzero
/// off-diagonal entries is reported as [`SkewError::NotDiagonal`] rather than
/// silently accepted.
pub fn normality<K: Ring>(
    s: &SkewAlgebra<K>,
    f: &NCPoly<K>,
) -> Result<Option<NormalityCertificate<K>>, SkewError> {
    if f.is_zero() || f.homogeneous_degree() != Some(2) {
        return Err(SkewError::NotDegreeTwo);
    }
    let n = s.n();
    // Columns: normal forms of f * x_j.
    let cols: Vec<NCPoly<K>> = (0..n)
        .map(|j| s.normal_form(&f.mul(&NCPoly::gen(j))))
        .collect::<Result<_, _>>()?;
    let mut support: Vec<Word> = Vec::new();
    for c in &cols {
        for w in c.terms.keys() {
            if !support.contains(w) {
                support.push(w.clone());
            }
        }
    }
    for i in 0..n {
        let rhs_poly = s.normal_form(&NCPoly::gen(i).mul(f))?;
        for w in rhs_poly.terms.keys() {
            if !support.contains(w) {
                support.push(w.clone());
            }
        }
    }
    support.sort();
    let mut m = ExactMatrix::zero(support.len(), n);
    for (j, c) in cols.iter().enumerate() {
        for (r, w) in support.iter().enumerate() {
            m[(r, j)] = c.coeff(w);
        }
    }
    let mut lambda = Vec::with_capacity(n);
    for i in 0..n {
        let rhs_poly = s.normal_form(&NCPoly::gen(i).mul(f))?;
        let rhs: Vec<K> = support.iter().map(|w| rhs_poly.coeff(w)).collect();
        let Some(sol) = m.solve(&rhs)? else {
            return Ok(None);
        };
        for (j, v) in sol.iter().enumerate() {
            if j != i && !v.is_zero() {
                return Err(SkewError::NotDiagonal(format!(
                    "lambda[{}][{}] = {v}",
                    i + 1,
                    j + 1
                )));
            }
        }
        lambda.push(sol[i].clone());
    }
    // Re-verification: x_i f - lambda_i f x_i reduces to zero.
    for (i, l) in lambda.iter().enumerate() {
        if l.inv().is_none() {
            return Ok(None);
        }
        let lhs = NCPoly::gen(i).mul(f);
        let rhs = f.mul(&NCPoly::gen(i)).scale(l);
        if !s.normal_form(&lhs.sub(&rhs))?.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(NormalityCertificate { lambda }))
}

/// The displayed normality conditions for each f family, evaluated literally.
/// Returns the list of failing equations (empty iff normal).
pub fn closed_form_normality<K: Ring>(alpha: &[Vec<K>], kind: FKind) -> (bool, Vec<String>) {
    let n = alpha.len();
    let a = |i: usize, j: usize| alpha[i - 1][j - 1].clone();
    let mut failures = Vec::new();
    let mut check = |label: String, lhs: K, rhs: K| {
        if lhs != rhs {
            failures.push(format!("{label}: {lhs} != {rhs}"));
        }
    };
    match kind {
        FKind::SumOfSquares => {
            for i in 1..=n {
                for j in 1..=n {
                    let v = a(i, j);
                    if v != K::one() && v != -K::one() {
                        failures.push(format!("alpha[{i}][{j}] = {v} not in {{1,-1}}"));
                    }
                }
            }
        }
        FKind::Hyperbolic if n % 2 == 1 => {
            let m = n / 2;
            for s in 1..=m {
                check(
                    format!("alpha[{a}][{b}] = alpha[{a}][{n}]^2", a = 2 * s - 1, b = 2 * s),
                    a(2 * s - 1, 2 * s),
                    a(2 * s - 1, n).clone() * a(2 * s - 1, n),
                );
                check(
                    format!("alpha[{n}][{a}]*alpha[{n}][{b}] = 1", a = 2 * s - 1, b = 2 * s),
                    a(n, 2 * s - 1) * a(n, 2 * s),
                    K::one(),
                );
                for t in 1..=m {
                    if t == s {
                        continue;
                    }
                    check(
                        format!(
                            "alpha[{p}][{c}]*alpha[{q}][{c}] = alpha[{a}][{c}]",
                            p = 2 * t - 1,
                            q = 2 * t,
                            c = 2 * s,
                            a = 2 * s - 1
                        ),
                        a(2 * t - 1, 2 * s) * a(2 * t, 2 * s),
                        a(2 * s - 1, 2 * s),
                    );
                    check(
                        format!(
                            "alpha[{a}][{p}]*alpha[{a}][{q}] = alpha[{a}][{b}]",
                            a = 2 * s - 1,
                            p = 2 * t - 1,
                            q = 2 * t,
                            b = 2 * s
                        ),
                        a(2 * s - 1, 2 * t - 1) * a(2 * s - 1, 2 * t),
                        a(2 * s - 1, 2 * s),
                    );
                }
            }
        }
        FKind::Hyperbolic => {
            let pairs = n / 2;
            for s in 1..=pairs {
                for t in 1..=pairs {
                    if t == s {
                        continue;
                    }
                    check(
                        format!(
                            "alpha[{p}][{c}]*alpha[{q}][{c}] = alpha[{a}][{c}]",
                            p = 2 * t - 1,
                            q = 2 * t,
                            c = 2 * s,
                            a = 2 * s - 1
                        ),
                        a(2 * t - 1, 2 * s) * a(2 * t, 2 * s),
                        a(2 * s - 1, 2 * s),
                    );
                    check(
                        format!(
                            "alpha[{a}][{p}]*alpha[{a}][{q}] = alpha[{a}][{b}]",
                            a = 2 * s - 1,
                            p = 2 * t - 1,
                            q = 2 * t,
                            b = 2 * s
                        ),
                        a(2 * s - 1, 2 * t - 1) * a(2 * s - 1, 2 * t),
                        a(2 * s - 1, 2 * s),
                    );
                }
            }
        }
    }
    (failures.is_empty(), failures)
}

/// The closed-form lambda values accompanying the conditions.
pub fn closed_form_lambda<K: Ring>(alpha: &[Vec<K>], kind: FKind) -> Vec<K> {
    let n = alpha.len();
    let a = |i: usize, j: usize| alpha[i - 1][j - 1].clone();
    match kind {
        FKind::SumOfSquares => vec![K::one(); n],
        FKind::Hyperbolic => {
            let mut lambda = Vec::with_capacity(n);
            for i in 1..=n {
                if n % 2 == 1 && i == n {
                    lambda.push(K::one());
                } else if i % 2 == 1 {
                    lambda.push(a(i, i + 1));
                } else {
                    lambda.push(a(i, i - 1));
                }
            }
            lambda
        }
    }
}

/// Builds the full odd-case grid (n = 2m+1) from the free data: the scalars
/// mu_s = alpha_{2s-1, n} and the odd-odd entries o_{st} = alpha_{2s-1, 2t-1}
/// for s < t. Everything else is forced by the normality conditions.
pub fn odd_alpha_grid<K: Ring>(mus: &[K], oddodd: &[Vec<K>]) -> Vec<Vec<K>> {
    let m = mus.len();
    let n = 2 * m + 1;
    let o = |s: usize, t: usize| -> K {
        use std::cmp::Ordering;
        match s.cmp(&t) {
            Ordering::Equal => K::one(),
            Ordering::Less => oddodd[s - 1][t - s - 1].clone(),
            Ordering::Greater => oddodd[t - 1][s - t - 1].inv().expect("unit entry"),
        }
    };
    let mu = |s: usize| mus[s - 1].clone();
    let mut grid = vec![vec![K::one(); n]; n];
    let mut set = |i: usize, j: usize, v: K| {
        grid[i - 1][j - 1] = v;
    };
    for s in 1..=m {
        for t in 1..=m {
            let mu_s2 = mu(s) * mu(s);
            let mu_t2 = mu(t) * mu(t);
            set(2 * s - 1, 2 * t - 1, o(s, t));
            set(2 * s - 1, 2 * t, mu_s2.clone() * o(s, t).inv().unwrap());
            set(
                2 * s,
                2 * t - 1,
                (o(s, t) * mu_t2.clone()).inv().expect("unit entry"),
            );
            set(2 * s, 2 * t, mu_t2 * o(s, t) * mu_s2.inv().unwrap());
        }
        set(2 * s - 1, n, mu(s));
        set(n, 2 * s - 1, mu(s).inv().unwrap());
        set(2 * s, n, mu(s).inv().unwrap());
        set(n, 2 * s, mu(s));
    }
    for i in 1..=n {
        set(i, i, K::one());
    }
    grid
}

/// Builds the full even-case grid (n = 2m+2) from the pair scalars
/// lambda_s = alpha_{2s-1, 2s} (s = 1..m+1) and the odd-odd entries.
pub fn even_alpha_grid<K: Ring>(lams: &[K], oddodd: &[Vec<K>]) -> Vec<Vec<K>> {
    let pairs = lams.len();
    let n = 2 * pairs;
    let o = |s: usize, t: usize| -> K {
        use std::cmp::Ordering;
        match s.cmp(&t) {
            Ordering::Equal => K::one(),
            Ordering::Less => oddodd[s - 1][t - s - 1].clone(),
            Ordering::Greater => oddodd[t - 1][s - t - 1].inv().expect("unit entry"),
        }
    };
    let lam = |s: usize| lams[s - 1].clone();
    let mut grid = vec![vec![K::one(); n]; n];
    let mut set = |i: usize, j: usize, v: K| {
        grid[i - 1][j - 1] = v;
    };
    for s in 1..=pairs {
        for t in 1..=pairs {
            set(2 * s - 1, 2 * t - 1, o(s, t));
            set(2 * s - 1, 2 * t, lam(s) * o(s, t).inv().unwrap());
            set(
                2 * s,
                2 * t - 1,
                (o(s, t) * lam(t)).inv().expect("unit entry"),
            );
            set(2 * s, 2 * t, lam(t) * o(s, t) * lam(s).inv().unwrap());
        }
    }
    for i in 1..=n {
        set(i, i, K::one());
    }
    grid
}

/// Square-root choices beta_{2s-1,2s} for the even case, one per pair s <= m.
#[derive(Clone, Debug)]
pub struct SqrtChoice<K> {
    pub betas: Vec<K>,
}

impl<K: Ring> SqrtChoice<K> {
    /// Takes the ring's deterministic square root of each pair entry.
    pub fn choose(alpha: &[Vec<K>], m: usize) -> Option<SqrtChoice<K>> {
        let mut betas = Vec::with_capacity(m);
        for s in 1..=m {
            betas.push(alpha[2 * s - 2][2 * s - 1].sqrt()?);
        }
        Some(SqrtChoice { betas })
    }

    pub fn from_betas(betas: Vec<K>) -> SqrtChoice<K> {
        SqrtChoice { betas }
    }

    /// beta_{2s-1,2s}, 1-based pair index.
    pub fn beta(&self, s: usize) -> K {
        self.betas[s - 1].clone()
    }

    /// beta_{2s,2s-1} = beta_{2s-1,2s}^{-1}.
    pub fn beta_rev(&self, s: usize) -> K {
        self.betas[s - 1].inv().expect("beta is a unit")
    }
}

/// Seeded generators of normality-satisfying grids, for tests and sampling.
pub mod sample {
    use super::*;
    use rand::Rng;

    fn nonzero_rat<K: Ring>(rng: &mut impl Rng) -> K {
        // Small nonzero rationals p/q, p in [-5, 5] \ {0}, q in [1, 4].
        let p = loop {
            let v = rng.gen_range(-5i64..=5);
            if v != 0 {
                break v;
            }
        };
        let q = rng.gen_range(1i64..=4);
        K::from_rat(crate::scalar::Rat::new(p.into(), q.into()))
    }

    fn oddodd_grid<K: Ring>(m: usize, rng: &mut impl Rng) -> Vec<Vec<K>> {
        (1..=m)
            .map(|s| (s + 1..=m).map(|_| nonzero_rat(rng)).collect())
            .collect()
    }

    /// A random odd-case normal grid, n = 2m+1.
    pub fn odd_normal_alpha<K: Ring>(m: usize, rng: &mut impl Rng) -> Vec<Vec<K>> {
        let mus: Vec<K> = (0..m).map(|_| nonzero_rat(rng)).collect();
        odd_alpha_grid(&mus, &oddodd_grid(m, rng))
    }

    /// A random even-case normal grid, n = 2m+2, with every pair entry a
    /// perfect square so that beta choices exist in the field.
    pub fn even_normal_alpha<K: Ring>(m: usize, rng: &mut impl Rng) -> Vec<Vec<K>> {
        let lams: Vec<K> = (0..m + 1)
            .map(|_| {
                let b: K = nonzero_rat(rng);
                b.clone() * b
            })
            .collect();
        even_alpha_grid(&lams, &oddodd_grid(m + 1, rng))
    }

    /// A random +-1 symmetric grid (every such grid makes the sum of squares
    /// normal).
    pub fn pm1_alpha<K: Ring>(n: usize, rng: &mut impl Rng) -> Vec<Vec<K>> {
        let mut grid = vec![vec![K::one(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = if rng.gen_bool(0.5) { K::one() } else { -K::one() };
                grid[i][j] = v.clone();
                grid[j][i] = v;
            }
        }
        grid
    }
}
