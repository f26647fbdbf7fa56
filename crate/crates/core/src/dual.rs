//! Quadratic duals T(V*)/(R-perp), the degree-2 element w spanning the
//! kernel of the dual projection, and normalizing automorphisms.

use std::fmt;


use crate::freealg::{Gens, NCPoly, Presentation, PresentationMode, Word};
use crate::matrix::{ExactMatrix, LinError};
use crate::rewrite::{Reducer, RewriteError, RewriteSystem};
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualError {
    NotQuadratic,
    KernelNotOneDimensional(usize),
    NotNormal(String),
    NotAutomorphism(String),
    Rewrite(RewriteError),
    Linear(LinError),
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::NotQuadratic => write!(f, "presentation is not quadratic"),
            DualError::KernelNotOneDimensional(d) => {
                write!(f, "kernel of the dual projection has dimension {d}, expected 1")
            }
            DualError::NotNormal(s) => write!(f, "element is not normal: {s}"),
            DualError::NotAutomorphism(s) => write!(f, "not an automorphism: {s}"),
            DualError::Rewrite(e) => write!(f, "{e}"),
            DualError::Linear(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DualError {}

impl From<RewriteError> for DualError {
    fn from(e: RewriteError) -> Self {
        DualError::Rewrite(e)
    }
}

impl From<LinError> for DualError {
    fn from(e: LinError) -> Self {
        DualError::Linear(e)
    }
}

/// The degree-2 relation space of a quadratic presentation, as a row basis in
/// the x_i (x) x_j coordinate grid (row-reduced, so rows are independent).
#[derive(Clone, Debug)]
pub struct QuadraticData<K> {
    n: usize,
    gens: Gens,
    rows: Vec<Vec<K>>,
}

fn word_to_col(n: usize, w: &Word) -> usize {
    debug_assert_eq!(w.len(), 2);
    (w.0[0] as usize) * n + (w.0[1] as usize)
}

fn col_to_word(n: usize, col: usize) -> Word {
    Word(vec![(col / n) as u8, (col % n) as u8])
}

impl<K: Ring> QuadraticData<K> {
    pub fn from_presentation(p: &Presentation<K>) -> Result<Self, DualError> {
        if p.mode != PresentationMode::Quadratic {
            return Err(DualError::NotQuadratic);
        }
        let n = p.gens.len();
        let mut rows = Vec::new();
        for r in &p.relations {
            let mut row = vec![K::zero(); n * n];
            for (w, c) in &r.terms {
                row[word_to_col(n, w)] = c.clone();
            }
            rows.push(row);
        }
        let mut m = ExactMatrix::from_rows(rows);
        let pivots = m.rref()?;
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Ok(QuadraticData {
            n,
            gens: p.gens.clone(),
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_relations(&self) -> usize {
        self.rows.len()
    }

    /// Relation vectors as polynomials (for reports and tests).
    pub fn relation_polys(&self) -> Vec<NCPoly<K>> {
        self.rows
            .iter()
            .map(|row| {
                let mut p = NCPoly::zero();
                for (col, c) in row.iter().enumerate() {
                    p.add_term(col_to_word(self.n, col), c.clone());
                }
                p
            })
            .collect()
    }
}

/// The quadratic dual presentation: relations spanning the annihilator of R
/// under (psi1 (x) psi2)(v1 (x) v2) = psi1(v1) psi2(v2), i.e. the kernel of
/// the coefficient pairing. dim R-perp = n^2 - dim R.
pub fn quadratic_dual<K: Ring>(q: &QuadraticData<K>) -> Result<Presentation<K>, DualError> {
    let m = ExactMatrix::from_rows(q.rows.clone());
    let kernel = m.kernel_basis()?;
    debug_assert_eq!(kernel.len(), q.n * q.n - q.rows.len());
    let relations = kernel
        .into_iter()
        .map(|row| {
            let mut p = NCPoly::zero();
            for (col, c) in row.into_iter().enumerate() {
                p.add_term(col_to_word(q.n, col), c);
            }
            p
        })
        .collect();
    Ok(Presentation::new(q.gens.clone(), relations, PresentationMode::Quadratic)
        .expect("kernel vectors are quadratic"))
}

/// Row space reducer: RREF rows plus pivot map.
struct RowSpace<K> {
    mat: ExactMatrix<K>,
    pivots: Vec<usize>,
}

impl<K: Ring> RowSpace<K> {
    fn new(rows: Vec<Vec<K>>) -> Result<Self, LinError> {
        let mut mat = ExactMatrix::from_rows(rows);
        let pivots = mat.rref()?;
        Ok(RowSpace { mat, pivots })
    }

    /// Residue of `v` modulo the row space.
    fn reduce(&self, mut v: Vec<K>) -> Vec<K> {
        for (row, &col) in self.pivots.iter().enumerate() {
            if v[col].is_zero() {
                continue;
            }
            let factor = v[col].clone();
            for j in 0..v.len() {
                let delta = factor.clone() * self.mat[(row, j)].clone();
                v[j] = v[j].clone() - delta;
            }
        }
        v
    }
}

/// A spanning vector of the kernel of the degree-2 projection from the dual
/// of the quotient onto the dual of the ambient algebra, normalized so that
/// the order-least word of its support has coefficient 1.
pub fn find_w<K: Ring>(
    sdual: &Presentation<K>,
    adual: &Presentation<K>,
) -> Result<NCPoly<K>, DualError> {
    let n = sdual.gens.len();
    let to_row = |p: &NCPoly<K>| {
        let mut row = vec![K::zero(); n * n];
        for (w, c) in &p.terms {
            row[word_to_col(n, w)] = c.clone();
        }
        row
    };
    let a_space = RowSpace::new(adual.relations.iter().map(to_row).collect()).map_err(DualError::from)?;
    // Containment R_A-perp inside R_S-perp, then the one-dimensional quotient.
    let s_space = RowSpace::new(sdual.relations.iter().map(to_row).collect()).map_err(DualError::from)?;
    for r in adual.relations.iter().map(to_row) {
        if s_space.reduce(r).iter().any(|c| !c.is_zero()) {
            return Err(DualError::KernelNotOneDimensional(0));
        }
    }
    let mut residues = Vec::new();
    for r in sdual.relations.iter().map(to_row) {
        let red = a_space.reduce(r);
        if red.iter().any(|c| !c.is_zero()) {
            residues.push(red);
        }
    }
    if residues.is_empty() {
        return Err(DualError::KernelNotOneDimensional(0));
    }
    let reduced = RowSpace::new(residues).map_err(DualError::from)?;
    if reduced.pivots.len() != 1 {
        return Err(DualError::KernelNotOneDimensional(reduced.pivots.len()));
    }
    let mut w = NCPoly::zero();
    for col in 0..n * n {
        w.add_term(col_to_word(n, col), reduced.mat[(0, col)].clone());
    }
    // Monic on the least word of the support.
    let least = w.terms.keys().next().expect("nonzero kernel vector").clone();
    let scale = w.coeff(&least).inv().expect("kernel over a field");
    Ok(w.scale(&scale))
}

/// A graded algebra automorphism, recorded by its action on the degree-1
/// generators: x_i -> sum_j mat[i][j] x_j.
#[derive(Clone)]
pub struct GradedAutomorphism<K> {
    pub mat: ExactMatrix<K>,
}

impl<K: Ring> fmt::Debug for GradedAutomorphism<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAutomorphism({:?})", self.mat)
    }
}

impl<K: Ring> GradedAutomorphism<K> {
    pub fn identity(n: usize) -> Self {
        GradedAutomorphism {
            mat: ExactMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == ExactMatrix::identity(self.n())
    }

    /// Image of one generator as a linear form.
    pub fn image_of_gen(&self, i: usize) -> NCPoly<K> {
        let mut p = NCPoly::zero();
        for j in 0..self.n() {
            p.add_term(Word::gen(j), self.mat[(i, j)].clone());
        }
        p
    }

    /// Multiplicative extension to a polynomial (free-algebra result; reduce
    /// afterwards as needed).
    pub fn apply(&self, p: &NCPoly<K>) -> NCPoly<K> {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let mut img = NCPoly::scalar(c.clone());
            for &letter in &w.0 {
                img = img.mul(&self.image_of_gen(letter as usize));
            }
            out.add_assign(&img);
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = ExactMatrix::identity(self.n());
        for _ in 0..e {
            out = out.mul(&self.mat);
        }
        GradedAutomorphism { mat: out }
    }
}

/// Solves g w = w nu(g) in degree-3 normal form for every generator g,
/// assembles the matrix of nu, and verifies it is invertible and maps the
/// degree-2 relations of the system into themselves.
pub fn normalizing_automorphism<K: Ring>(
    rs: &RewriteSystem<K>,
    w: &NCPoly<K>,
) -> Result<GradedAutomorphism<K>, DualError> {
    let n = rs.gens().len();
    let cols: Vec<NCPoly<K>> = (0..n)
        .map(|j| rs.normal_form(&w.mul(&NCPoly::gen(j))))
        .collect::<Result<_, _>>()?;
    let mut support: Vec<Word> = Vec::new();
    let mut rhss = Vec::with_capacity(n);
    for i in 0..n {
        let r = rs.normal_form(&NCPoly::gen(i).mul(w))?;
        rhss.push(r);
    }
    for p in cols.iter().chain(rhss.iter()) {
        for word in p.terms.keys() {
            if !support.contains(word) {
                support.push(word.clone());
            }
        }
    }
    support.sort();
    let mut m = ExactMatrix::zero(support.len(), n);
    for (j, c) in cols.iter().enumerate() {
        for (r, word) in support.iter().enumerate() {
            m[(r, j)] = c.coeff(word);
        }
    }
    let mut mat = ExactMatrix::zero(n, n);
    for i in 0..n {
        let rhs: Vec<K> = support.iter().map(|word| rhss[i].coeff(word)).collect();
        let Some(sol) = m.solve(&rhs)? else {
            return Err(DualError::NotNormal(format!(
                "generator {} does not normalize",
                rs.gens().name(i)
            )));
        };
        for (j, v) in sol.into_iter().enumerate() {
            mat[(i, j)] = v;
        }
    }
    let nu = GradedAutomorphism { mat };
    if nu.mat.det().inv().is_none() {
        return Err(DualError::NotAutomorphism("matrix not invertible".into()));
    }
    // Relation preservation: the degree-2 rules span the relation space.
    for rule in rs.rules() {
        if rule.lead.len() != 2 {
            continue;
        }
        let mut rel = rule.tail.neg();
        rel.add_term(rule.lead.clone(), K::one());
        let image = nu.apply(&rel);
        if !rs.normal_form(&image)?.is_zero() {
            return Err(DualError::NotAutomorphism(format!(
                "relation `{}` not preserved",
                rel.render(rs.gens())
            )));
        }
    }
    Ok(nu)
}

/// a w = w nu(a) as normal forms; used by tests and certification.
pub fn check_normalizes<K: Ring>(
    rs: &RewriteSystem<K>,
    w: &NCPoly<K>,
    nu: &GradedAutomorphism<K>,
    a: &NCPoly<K>,
) -> Result<bool, DualError> {
    let lhs = a.mul(w);
    let rhs = w.mul(&nu.apply(a));
    Ok(rs.normal_form(&lhs.sub(&rhs))?.is_zero())
}

/// Matrix of right multiplication by `p` from degree `d` to degree
/// `d + deg p`, in the normal-monomial bases.
pub fn right_mult_matrix<K: Ring>(
    rs: &RewriteSystem<K>,
    reducer: &mut Reducer<'_, K>,
    p: &NCPoly<K>,
    d: usize,
) -> Result<ExactMatrix<K>, DualError> {
    let deg = p
        .homogeneous_degree()
        .expect("right multiplication by a homogeneous element");
    let source = rs.normal_monomials(d)?;
    let target = rs.normal_monomials(d + deg)?;
    let index: std::collections::HashMap<&Word, usize> =
        target.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = ExactMatrix::zero(target.len(), source.len());
    for (j, wsrc) in source.iter().enumerate() {
        let prod = reducer.nf_poly(&NCPoly::from_word(wsrc.clone()).mul(p));
        for (word, c) in &prod.terms {
            let i = *index.get(word).expect("normal form stays in degree");
            m[(i, j)] = c.clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::rewrite::complete;
    use crate::skew::{build_f, FKind, SkewAlgebra};
    use crate::scalar::Rat;

    /// Span equality of two relation lists, as row spaces.
    fn same_span(gens: &Gens, a: &[NCPoly<Rat>], b: &[NCPoly<Rat>]) -> bool {
        let n = gens.len();
        let to_row = |p: &NCPoly<Rat>| {
            let mut row = vec![Rat::zero(); n * n];
            for (w, c) in &p.terms {
                row[word_to_col(n, w)] = c.clone();
            }
            row
        };
        let sa = RowSpace::new(a.iter().map(to_row).collect()).unwrap();
        let sb = RowSpace::new(b.iter().map(to_row).collect()).unwrap();
        if sa.pivots.len() != sb.pivots.len() {
            return false;
        }
        a.iter()
            .map(to_row)
            .all(|r| sb.reduce(r).iter().all(|c| c.is_zero()))
            && b.iter()
                .map(to_row)
                .all(|r| sa.reduce(r).iter().all(|c| c.is_zero()))
    }

    fn quadric_presentation(s: &SkewAlgebra<Rat>, f: &NCPoly<Rat>) -> Presentation<Rat> {
        let mut relations = s.presentation().relations.clone();
        relations.push(f.clone());
        Presentation::new(s.gens().clone(), relations, PresentationMode::Quadratic).unwrap()
    }

    #[test]
    fn commutative_dual_is_exterior() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(2);
        let q = QuadraticData::from_presentation(s.presentation()).unwrap();
        let dual = quadratic_dual(&q).unwrap();
        assert_eq!(dual.relations.len(), 3);
        let gens = s.gens();
        let expect = |t: &str| {
            crate::freealg::parse::parse_poly::<Rat>(
                gens,
                &crate::scalar::parse::rational_atoms,
                t,
            )
            .unwrap()
        };
        let expected = vec![expect("x1*x1"), expect("x2*x2"), expect("x1*x2 + x2*x1")];
        assert!(same_span(gens, &dual.relations, &expected));
    }

    #[test]
    fn dual_dimension_count() {
        for n in 2..=4 {
            let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(n);
            let q = QuadraticData::from_presentation(s.presentation()).unwrap();
            let dual = quadratic_dual(&q).unwrap();
            assert_eq!(q.dim_relations() + dual.relations.len(), n * n);
        }
    }

    #[test]
    fn double_dual_is_identity() {
        for n in 2..=3 {
            let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(n);
            let f = build_f(n, FKind::Hyperbolic);
            let p = quadric_presentation(&s, &f);
            let q = QuadraticData::from_presentation(&p).unwrap();
            let dual = quadratic_dual(&q).unwrap();
            let qd = QuadraticData::from_presentation(&dual).unwrap();
            let dd = quadratic_dual(&qd).unwrap();
            assert!(same_span(s.gens(), &dd.relations, &p.relations));
        }
    }

    #[test]
    fn w_for_odd_quadric_is_xn_squared() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(3);
        let f = build_f(3, FKind::Hyperbolic);
        let sq = QuadraticData::from_presentation(s.presentation()).unwrap();
        let sdual = quadratic_dual(&sq).unwrap();
        let aq = QuadraticData::from_presentation(&quadric_presentation(&s, &f)).unwrap();
        let adual = quadratic_dual(&aq).unwrap();
        let w = find_w(&sdual, &adual).unwrap();
        assert_eq!(w, NCPoly::from_word(Word(vec![2, 2])));
    }

    #[test]
    fn w_for_even_quadric_is_the_symmetrized_pair() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(4);
        let f = build_f(4, FKind::Hyperbolic);
        let sq = QuadraticData::from_presentation(s.presentation()).unwrap();
        let sdual = quadratic_dual(&sq).unwrap();
        let aq = QuadraticData::from_presentation(&quadric_presentation(&s, &f)).unwrap();
        let adual = quadratic_dual(&aq).unwrap();
        let w = find_w(&sdual, &adual).unwrap();
        // x3 x4 + x4 x3 (commutative case: alpha_43 = 1).
        let mut expected = NCPoly::from_word(Word(vec![2, 3]));
        expected.add_term(Word(vec![3, 2]), Rat::one());
        assert_eq!(w, expected);
    }

    #[test]
    fn w_for_sum_of_squares_n2() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(2);
        let f = build_f(2, FKind::SumOfSquares);
        let sq = QuadraticData::from_presentation(s.presentation()).unwrap();
        let sdual = quadratic_dual(&sq).unwrap();
        let aq = QuadraticData::from_presentation(&quadric_presentation(&s, &f)).unwrap();
        let adual = quadratic_dual(&aq).unwrap();
        let w = find_w(&sdual, &adual).unwrap();
        // The class is one-dimensional; the representative must be nonzero
        // and reduce to zero in the ambient dual.
        assert!(!w.is_zero());
        let rs = complete(&sdual, 6).unwrap();
        assert!(rs.normal_form(&w).unwrap().is_zero());
    }

    #[test]
    fn commutative_nu_is_identity() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(3);
        let f = build_f(3, FKind::Hyperbolic);
        let aq = QuadraticData::from_presentation(&quadric_presentation(&s, &f)).unwrap();
        let adual = quadratic_dual(&aq).unwrap();
        let rs = complete(&adual, 8).unwrap();
        let sq = QuadraticData::from_presentation(s.presentation()).unwrap();
        let sdual = quadratic_dual(&sq).unwrap();
        let w = find_w(&sdual, &adual).unwrap();
        let nu = normalizing_automorphism(&rs, &w).unwrap();
        assert!(nu.is_identity());
    }

    #[test]
    fn hilbert_dims_of_quadric_duals() {
        // (1+t)^(n-1)/(1-t) expansion: partial sums of binomials.
        let oracle = |n: usize, dmax: usize| -> Vec<usize> {
            (0..=dmax)
                .map(|d| {
                    (0..=d.min(n - 1))
                        .map(|j| {
                            // C(n-1, j)
                            let mut c = 1usize;
                            for i in 0..j {
                                c = c * (n - 1 - i) / (i + 1);
                            }
                            c
                        })
                        .sum()
                })
                .collect()
        };
        for n in 2..=4 {
            let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(n);
            let f = build_f(n, FKind::Hyperbolic);
            let aq = QuadraticData::from_presentation(&quadric_presentation(&s, &f)).unwrap();
            let adual = quadratic_dual(&aq).unwrap();
            let rs = complete(&adual, 8).unwrap();
            assert_eq!(rs.hilbert_dims(6).unwrap(), oracle(n, 6));
        }
        // And the skew exterior algebra for n = 3: (1, 3, 3, 1, 0, ...).
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(3);
        let sq = QuadraticData::from_presentation(s.presentation()).unwrap();
        let sdual = quadratic_dual(&sq).unwrap();
        let rs = complete(&sdual, 8).unwrap();
        assert_eq!(rs.hilbert_dims(4).unwrap(), vec![1, 3, 3, 1, 0]);
    }
}
