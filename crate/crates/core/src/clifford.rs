//! The even Clifford algebra of a skew quadric, built two independent ways:
//! from the explicit generator/relation presentation, and as the degree-0
//! part of the localization of the quotient dual at the normal element w.
//! `cross_certify` verifies the two agree through the expected generator map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;



use crate::dual::{DualError, GradedAutomorphism};
use crate::freealg::{Gens, NCPoly, Presentation, PresentationMode, Word};
use crate::matrix::{ExactMatrix, LinError};
use crate::rewrite::{complete, complete_auto, Reducer, RewriteError, RewriteSystem};
use crate::scalar::Ring;
use crate::skew::{NormalityCertificate, SkewAlgebra, SqrtChoice};
use crate::structure::{dense_from_sparse, sparse_from_dense, FinDimAlgebra, SparseVec, StructError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliffordError {
    NotNormal(String),
    /// Even case with m = 0: the presentation has no generators; build n = 2
    /// through the localization instead.
    DegenerateEvenCase,
    DimensionMismatch { expected: usize, got: usize },
    StabilizationFailed,
    WDivisionFailed(String),
    RelationFails { relation: String, residue: String },
    NotGenerating { got: usize, expected: usize },
    HatIdentityFails(String),
    Rewrite(RewriteError),
    Dual(DualError),
    Linear(LinError),
    Struct(StructError),
}

impl fmt::Display for CliffordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordError::NotNormal(s) => write!(f, "f is not normal: {s}"),
            CliffordError::DegenerateEvenCase => {
                write!(f, "even case with m = 0 has no presentation; use the localization")
            }
            CliffordError::DimensionMismatch { expected, got } => {
                write!(f, "Clifford dimension {got}, expected {expected}")
            }
            CliffordError::StabilizationFailed => {
                write!(f, "localization dimensions never stabilize within the bound")
            }
            CliffordError::WDivisionFailed(s) => write!(f, "w-division failed: {s}"),
            CliffordError::RelationFails { relation, residue } => {
                write!(f, "relation `{relation}` maps to nonzero residue {residue}")
            }
            CliffordError::NotGenerating { got, expected } => {
                write!(f, "images generate a subalgebra of dim {got} < {expected}")
            }
            CliffordError::HatIdentityFails(s) => write!(f, "hat-alpha identity fails: {s}"),
            CliffordError::Rewrite(e) => write!(f, "{e}"),
            CliffordError::Dual(e) => write!(f, "{e}"),
            CliffordError::Linear(e) => write!(f, "{e}"),
            CliffordError::Struct(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliffordError {}

impl From<RewriteError> for CliffordError {
    fn from(e: RewriteError) -> Self {
        CliffordError::Rewrite(e)
    }
}

impl From<DualError> for CliffordError {
    fn from(e: DualError) -> Self {
        CliffordError::Dual(e)
    }
}

impl From<LinError> for CliffordError {
    fn from(e: LinError) -> Self {
        CliffordError::Linear(e)
    }
}

impl From<StructError> for CliffordError {
    fn from(e: StructError) -> Self {
        CliffordError::Struct(e)
    }
}

/// n = 2m+1 (odd) or n = 2m+2 (even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd { m: usize },
    Even { m: usize },
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 1 {
            Parity::Odd { m: n / 2 }
        } else {
            Parity::Even { m: (n - 2) / 2 }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Parity::Odd { m } => 2 * m + 1,
            Parity::Even { m } => 2 * m + 2,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Parity::Odd { m } | Parity::Even { m } => *m,
        }
    }
}

/// The twisted grid hat-alpha on indices 1..2m. The defining identities
/// hat_{2r-1,i} hat_{2r,i} = hat_{i,2r-1} hat_{i,2r} = 1 are verified on
/// construction; they encode normality of f.
#[derive(Clone, Debug)]
pub struct HatAlpha<K> {
    grid: Vec<Vec<K>>,
}

impl<K: Ring> HatAlpha<K> {
    /// Odd case: hat_{ij} = alpha_{ni} alpha_{ij} alpha_{jn}.
    pub fn odd(s: &SkewAlgebra<K>) -> Result<Self, CliffordError> {
        let n = s.n();
        let m2 = n - 1;
        let mut grid = vec![vec![K::one(); m2]; m2];
        for i in 1..=m2 {
            for j in 1..=m2 {
                grid[i - 1][j - 1] =
                    s.alpha(n, i).clone() * s.alpha(i, j).clone() * s.alpha(j, n).clone();
            }
        }
        let hat = HatAlpha { grid };
        hat.verify()?;
        Ok(hat)
    }

    /// Even case: the beta-twisted four-case formula on indices 1..2m.
    pub fn even(s: &SkewAlgebra<K>, sqrt: &SqrtChoice<K>) -> Result<Self, CliffordError> {
        let m2 = s.n() - 2;
        let beta_before = |i: usize| -> K {
            if i % 2 == 1 {
                sqrt.beta_rev((i + 1) / 2) // beta_{i+1, i}
            } else {
                sqrt.beta(i / 2) // beta_{i-1, i}
            }
        };
        let beta_after = |j: usize| -> K {
            if j % 2 == 1 {
                sqrt.beta((j + 1) / 2) // beta_{j, j+1}
            } else {
                sqrt.beta_rev(j / 2) // beta_{j, j-1}
            }
        };
        let mut grid = vec![vec![K::one(); m2]; m2];
        for i in 1..=m2 {
            for j in 1..=m2 {
                grid[i - 1][j - 1] = beta_before(i) * s.alpha(i, j).clone() * beta_after(j);
            }
        }
        let hat = HatAlpha { grid };
        hat.verify()?;
        Ok(hat)
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    /// 1-based entry.
    pub fn at(&self, i: usize, j: usize) -> &K {
        &self.grid[i - 1][j - 1]
    }

    /// Entry replaced, for negative controls in tests.
    pub fn with_entry(mut self, i: usize, j: usize, v: K) -> Self {
        self.grid[i - 1][j - 1] = v;
        self
    }

    fn verify(&self) -> Result<(), CliffordError> {
        let m2 = self.grid.len();
        for r in 1..=m2 / 2 {
            for i in 1..=m2 {
                let a = self.at(2 * r - 1, i).clone() * self.at(2 * r, i).clone();
                let b = self.at(i, 2 * r - 1).clone() * self.at(i, 2 * r).clone();
                if !a.is_one() {
                    return Err(CliffordError::HatIdentityFails(format!(
                        "hat[{p}][{i}]*hat[{q}][{i}] = {a}",
                        p = 2 * r - 1,
                        q = 2 * r
                    )));
                }
                if !b.is_one() {
                    return Err(CliffordError::HatIdentityFails(format!(
                        "hat[{i}][{p}]*hat[{i}][{q}] = {b}",
                        p = 2 * r - 1,
                        q = 2 * r
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Presentation,
    Localization,
}

/// A constructed even Clifford algebra with its generator dictionary.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra<K> {
    pub n: usize,
    pub parity: Parity,
    pub route: Route,
    pub algebra: FinDimAlgebra<K>,
    /// Distinguished generators (z_i, plus y_i in the even case) as
    /// basis-coordinate vectors.
    pub generators: BTreeMap<String, SparseVec<K>>,
}

/// Presentation-route output: the algebra plus its rewriting system, which
/// the downstream element calculus (F/G/E, psi) reduces against.
#[derive(Clone, Debug)]
pub struct PresentedClifford<K> {
    pub cliff: CliffordAlgebra<K>,
    pub presentation: Presentation<K>,
    pub rs: RewriteSystem<K>,
    pub basis: Vec<Word>,
}

impl<K: Ring> PresentedClifford<K> {
    pub fn m(&self) -> usize {
        self.cliff.parity.m()
    }

    /// Coordinates of a polynomial in the generators, via normal form.
    pub fn coords(&self, p: &NCPoly<K>) -> Result<SparseVec<K>, CliffordError> {
        let nf = self.rs.normal_form(p)?;
        let index: HashMap<&Word, usize> =
            self.basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out: SparseVec<K> = Vec::new();
        for (w, c) in &nf.terms {
            let i = *index.get(w).expect("normal form lies in the finite basis");
            out.push((i, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// Generator polynomial by name ("z3", "y1").
    pub fn gen_poly(&self, name: &str) -> Option<NCPoly<K>> {
        let i = self.rs.gens().index_of(name)?;
        Some(NCPoly::gen(i))
    }
}

/// The defining relations of the even Clifford algebra, by parity.
pub fn clifford_relations<K: Ring>(s: &SkewAlgebra<K>) -> Result<Presentation<K>, CliffordError> {
    match Parity::of(s.n()) {
        Parity::Odd { m } => odd_presentation(s, m),
        Parity::Even { m } => {
            if m == 0 {
                return Err(CliffordError::DegenerateEvenCase);
            }
            Ok(even_presentation(s, m))
        }
    }
}

/// Builds the explicit presentation of the even Clifford algebra with its
/// structure constants, and checks dim = 2^(n-1).
pub fn clifford_presentation<K: Ring>(
    s: &SkewAlgebra<K>,
    cert: &NormalityCertificate<K>,
) -> Result<PresentedClifford<K>, CliffordError> {
    debug_assert_eq!(cert.lambda.len(), s.n());
    let parity = Parity::of(s.n());
    let presentation = clifford_relations(s)?;
    let rs = complete_auto(&presentation)?;
    let algebra = rs.structure_constants()?;
    let expected = 1usize << (s.n() - 1);
    if algebra.dim() != expected {
        return Err(CliffordError::DimensionMismatch {
            expected,
            got: algebra.dim(),
        });
    }
    let mut basis = Vec::new();
    for d in 0..=rs.degree_bound() {
        basis.extend(rs.normal_monomials(d)?);
    }
    let mut generators = BTreeMap::new();
    {
        let index: HashMap<&Word, usize> =
            basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        for g in 0..rs.gens().len() {
            let w = Word::gen(g);
            let i = *index.get(&w).expect("generators are basis elements");
            generators.insert(rs.gens().name(g).to_string(), vec![(i, K::one())]);
        }
    }
    Ok(PresentedClifford {
        cliff: CliffordAlgebra {
            n: s.n(),
            parity,
            route: Route::Presentation,
            algebra,
            generators,
        },
        presentation,
        rs,
        basis,
    })
}

fn odd_presentation<K: Ring>(
    s: &SkewAlgebra<K>,
    m: usize,
) -> Result<Presentation<K>, CliffordError> {
    let gens = Gens::zs(2 * m);
    if m == 0 {
        return Ok(Presentation::new(gens, vec![], PresentationMode::Filtered)
            .expect("empty presentation"));
    }
    let hat = HatAlpha::odd(s)?;
    let z = |i: usize| NCPoly::<K>::gen(i - 1);
    let mut relations = Vec::new();
    for i in 1..=2 * m {
        for j in i + 1..=2 * m {
            if i % 2 == 1 && j == i + 1 {
                // z_i z_j + z_j z_i - 1 on the hyperbolic pairs
                let mut r = z(i).mul(&z(j));
                r.add_assign(&z(j).mul(&z(i)));
                r.add_term(Word::empty(), -K::one());
                relations.push(r);
            } else {
                let r = z(i).mul(&z(j)).add(&z(j).mul(&z(i)).scale(hat.at(j, i)));
                relations.push(r);
            }
        }
        relations.push(z(i).mul(&z(i)));
    }
    Ok(Presentation::new(gens, relations, PresentationMode::Filtered)
        .expect("Clifford relations are filtered quadratic"))
}

fn even_presentation<K: Ring>(s: &SkewAlgebra<K>, m: usize) -> Presentation<K> {
    let gens = Gens::ys_zs(2 * m);
    let y = |i: usize| NCPoly::<K>::gen(i - 1);
    let z = |i: usize| NCPoly::<K>::gen(2 * m + i - 1);
    let a = |i: usize, j: usize| s.alpha(i, j).clone();
    let mut relations: Vec<NCPoly<K>> = Vec::new();
    for i in 1..=2 * m {
        relations.push(y(i).mul(&z(i)));
        relations.push(z(i).mul(&y(i)));
        for j in 1..=2 * m {
            relations.push(y(i).mul(&y(j)));
            relations.push(z(i).mul(&z(j)));
        }
    }
    for sx in 1..=m {
        for t in sx + 1..=m {
            relations.push(
                y(2 * sx - 1)
                    .mul(&z(2 * t - 1))
                    .add(&y(2 * t - 1).mul(&z(2 * sx - 1)).scale(&a(2 * t - 1, 2 * sx - 1))),
            );
            relations.push(
                z(2 * sx - 1)
                    .mul(&y(2 * t - 1))
                    .add(&z(2 * t - 1).mul(&y(2 * sx - 1)).scale(&a(2 * t, 2 * sx))),
            );
            relations.push(
                y(2 * sx)
                    .mul(&z(2 * t))
                    .add(&y(2 * t).mul(&z(2 * sx)).scale(&a(2 * t - 1, 2 * sx - 1))),
            );
            relations.push(
                z(2 * sx)
                    .mul(&y(2 * t))
                    .add(&z(2 * t).mul(&y(2 * sx)).scale(&a(2 * t, 2 * sx))),
            );
        }
        for t in 1..=m {
            if t == sx {
                continue;
            }
            relations.push(
                y(2 * sx - 1)
                    .mul(&z(2 * t))
                    .add(&y(2 * t).mul(&z(2 * sx - 1)).scale(&a(2 * sx, 2 * t))),
            );
            relations.push(
                z(2 * sx - 1)
                    .mul(&y(2 * t))
                    .add(&z(2 * t).mul(&y(2 * sx - 1)).scale(&a(2 * sx - 1, 2 * t - 1))),
            );
        }
    }
    // E and E' do not depend on the pair used to write them.
    let e_prime_1 = y(1).mul(&z(2)).add(&y(2).mul(&z(1)));
    let e_1 = z(1).mul(&y(2)).add(&z(2).mul(&y(1)));
    for sx in 2..=m {
        let e_prime_s = y(2 * sx - 1)
            .mul(&z(2 * sx))
            .add(&y(2 * sx).mul(&z(2 * sx - 1)));
        relations.push(e_prime_s.sub(&e_prime_1));
        let e_s = z(2 * sx - 1)
            .mul(&y(2 * sx))
            .add(&z(2 * sx).mul(&y(2 * sx - 1)));
        relations.push(e_s.sub(&e_1));
    }
    let mut last = e_prime_1.add(&e_1);
    last.add_term(Word::empty(), -K::one());
    relations.push(last);
    let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
    Presentation::new(gens, relations, PresentationMode::Filtered)
        .expect("Clifford relations are filtered quadratic")
}

/// Localization-route output, with enough of the dual machinery retained to
/// embed degree-2 numerators.
pub struct LocalizedClifford<K: Ring> {
    pub cliff: CliffordAlgebra<K>,
    pub i0: usize,
    pub basis: Vec<Word>,
    pub rs: RewriteSystem<K>,
    pub w: NCPoly<K>,
    pub nu: GradedAutomorphism<K>,
    w_pow_i0: NCPoly<K>,
    w_pow_i0_minus_1: NCPoly<K>,
}

impl<K: Ring> LocalizedClifford<K> {
    /// The reduced power w^{i0} (the unit's numerator).
    pub fn w_power(&self) -> &NCPoly<K> {
        &self.w_pow_i0
    }

    /// Level-i0 coordinates of `a w^{-1}` for degree-2 `a`: the class of
    /// `(a w^{i0-1}) w^{-i0}`.
    pub fn embed_deg2(&self, a: &NCPoly<K>) -> Result<SparseVec<K>, CliffordError> {
        let num = self.rs.normal_form(&a.mul(&self.w_pow_i0_minus_1))?;
        let index: HashMap<&Word, usize> =
            self.basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out: SparseVec<K> = Vec::new();
        for (word, c) in &num.terms {
            let i = *index.get(word).expect("numerator lies in the level basis");
            out.push((i, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }
}

/// The degree-0 localization model: basis the normal monomials of the stable
/// even degree 2*i0, product by w-division of the nu^{i0}-twisted product.
pub fn clifford_localization<K: Ring>(
    adual: &Presentation<K>,
    w: &NCPoly<K>,
    nu: &GradedAutomorphism<K>,
) -> Result<LocalizedClifford<K>, CliffordError> {
    let n = adual.gens.len();
    let target = 1usize << (n - 1);
    let mut rs = complete(adual, (n + 4).max(8))?;
    let mut i0 = None;
    {
        let mut reducer = Reducer::new(&rs);
        let mut cand = 1usize;
        while 2 * cand + 2 <= rs.degree_bound() {
            let d1 = rs.normal_monomials(2 * cand)?.len();
            let d2 = rs.normal_monomials(2 * cand + 2)?.len();
            if d1 == target && d2 == target {
                let m = crate::dual::right_mult_matrix(&rs, &mut reducer, w, 2 * cand)?;
                if m.rank() == target {
                    i0 = Some(cand);
                    break;
                }
            }
            cand += 1;
        }
    }
    let Some(i0) = i0 else {
        return Err(CliffordError::StabilizationFailed);
    };
    if rs.degree_bound() < 4 * i0 + 2 {
        rs = complete(adual, 4 * i0 + 2)?;
    }
    let mut reducer = Reducer::new(&rs);
    let basis = rs.normal_monomials(2 * i0)?;
    let labels: Vec<String> = basis
        .iter()
        .map(|wd| format!("{}*w^-{}", rs.gens().render_word(wd), i0))
        .collect();
    let mut w_pow_i0_minus_1 = NCPoly::one();
    for _ in 0..i0 - 1 {
        w_pow_i0_minus_1 = reducer.nf_poly(&w_pow_i0_minus_1.mul(w));
    }
    let w_pow_i0 = reducer.nf_poly(&w_pow_i0_minus_1.mul(w));
    let m_w = crate::dual::right_mult_matrix(&rs, &mut reducer, &w_pow_i0, 2 * i0)?;
    let minv = match m_w.inverse() {
        Ok(Some(inv)) => inv,
        Ok(None) => {
            return Err(CliffordError::WDivisionFailed(
                "right multiplication by w^i0 is singular".into(),
            ))
        }
        Err(e) => return Err(CliffordError::WDivisionFailed(e.to_string())),
    };
    let nu_matrix = automorphism_matrix(&rs, &mut reducer, nu, &basis)?;
    let mut nu_pow = ExactMatrix::identity(basis.len());
    for _ in 0..i0 {
        nu_pow = nu_matrix.mul(&nu_pow);
    }
    let target4 = rs.normal_monomials(4 * i0)?;
    let index4: HashMap<&Word, usize> = target4.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = basis.len();
    let twisted: Vec<NCPoly<K>> = (0..dim)
        .map(|j| {
            let mut p = NCPoly::zero();
            for (k, wd) in basis.iter().enumerate() {
                p.add_term(wd.clone(), nu_pow[(k, j)].clone());
            }
            p
        })
        .collect();
    let mut table: Vec<SparseVec<K>> = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for twisted_j in twisted.iter() {
            let prod = reducer.nf_poly(&NCPoly::from_word(basis[i].clone()).mul(twisted_j));
            let mut rhs = vec![K::zero(); target4.len()];
            for (word, c) in &prod.terms {
                rhs[*index4.get(word).expect("product lies in level 4 i0")] = c.clone();
            }
            let coords = minv.mul_vec(&rhs);
            table.push(sparse_from_dense(&coords));
        }
    }
    // Identity: w-division of w^{2 i0}, then verified as a two-sided unit.
    let w2 = reducer.nf_poly(&w_pow_i0.mul(&w_pow_i0));
    let mut rhs = vec![K::zero(); target4.len()];
    for (word, c) in &w2.terms {
        rhs[*index4.get(word).expect("w^{2 i0} lies in level 4 i0")] = c.clone();
    }
    let unit = sparse_from_dense(&minv.mul_vec(&rhs));
    let algebra = FinDimAlgebra::from_table(labels, table, unit);
    algebra
        .verify_unit()
        .map_err(|e| CliffordError::WDivisionFailed(e.to_string()))?;
    if dim <= 16 {
        algebra.verify_associativity_exhaustive()?;
    } else {
        verify_associativity_sampled(&algebra, 512)?;
    }
    if dim != target {
        return Err(CliffordError::DimensionMismatch {
            expected: target,
            got: dim,
        });
    }
    Ok(LocalizedClifford {
        cliff: CliffordAlgebra {
            n,
            parity: Parity::of(n),
            route: Route::Localization,
            algebra,
            generators: BTreeMap::new(),
        },
        i0,
        basis,
        rs,
        w: w.clone(),
        nu: nu.clone(),
        w_pow_i0,
        w_pow_i0_minus_1,
    })
}

/// Matrix of a graded automorphism on the span of the given normal words,
/// built degree by degree so prefixes are reused.
fn automorphism_matrix<K: Ring>(
    rs: &RewriteSystem<K>,
    reducer: &mut Reducer<'_, K>,
    nu: &GradedAutomorphism<K>,
    basis: &[Word],
) -> Result<ExactMatrix<K>, CliffordError> {
    let mut images: HashMap<Word, NCPoly<K>> = HashMap::new();
    images.insert(Word::empty(), NCPoly::one());
    let degree = basis.first().map_or(0, Word::len);
    for d in 1..=degree {
        for word in rs.normal_monomials(d)? {
            let prefix = Word(word.0[..d - 1].to_vec());
            let last = word.0[d - 1] as usize;
            let prev = images
                .get(&prefix)
                .expect("prefixes of normal words are normal")
                .clone();
            let img = reducer.nf_poly(&prev.mul(&nu.image_of_gen(last)));
            images.insert(word, img);
        }
    }
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = ExactMatrix::zero(basis.len(), basis.len());
    for (j, word) in basis.iter().enumerate() {
        for (wd, c) in &images[word].terms {
            let k = *index.get(wd).expect("automorphism preserves the degree");
            m[(k, j)] = c.clone();
        }
    }
    Ok(m)
}

fn verify_associativity_sampled<K: Ring>(
    alg: &FinDimAlgebra<K>,
    samples: usize,
) -> Result<(), CliffordError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x51ab);
    let dim = alg.dim();
    for _ in 0..samples {
        let i = rng.gen_range(0..dim);
        let j = rng.gen_range(0..dim);
        let k = rng.gen_range(0..dim);
        let left = alg.mul(alg.table(i, j), &vec![(k, K::one())]);
        let right = alg.mul(&vec![(i, K::one())], alg.table(j, k));
        if left != right {
            return Err(CliffordError::Struct(StructError::NotAssociative(format!(
                "({i}, {j}, {k})"
            ))));
        }
    }
    Ok(())
}

/// The generator map from the presentation model into the localization model:
/// images of the z (and y) generators as level-i0 classes.
pub fn phi_images<K: Ring>(
    s: &SkewAlgebra<K>,
    parity: Parity,
    loc: &LocalizedClifford<K>,
) -> Result<BTreeMap<String, SparseVec<K>>, CliffordError> {
    let n = s.n();
    let x = |i: usize| NCPoly::<K>::gen(i - 1);
    let mut images = BTreeMap::new();
    match parity {
        Parity::Odd { m } => {
            for t in 1..=m {
                images.insert(
                    format!("z{}", 2 * t - 1),
                    loc.embed_deg2(&x(2 * t - 1).mul(&x(n)))?,
                );
                images.insert(
                    format!("z{}", 2 * t),
                    loc.embed_deg2(&x(2 * t).mul(&x(n)).scale(&-s.alpha(2 * t, n).clone()))?,
                );
            }
        }
        Parity::Even { m } => {
            for t in 1..=m {
                images.insert(
                    format!("y{}", 2 * t - 1),
                    loc.embed_deg2(
                        &x(2 * t - 1)
                            .mul(&x(n - 1))
                            .scale(&-s.alpha(n, 2 * t - 1).clone()),
                    )?,
                );
                images.insert(
                    format!("y{}", 2 * t),
                    loc.embed_deg2(
                        &x(2 * t)
                            .mul(&x(n - 1))
                            .scale(&-s.alpha(2 * t, n - 1).clone()),
                    )?,
                );
                images.insert(
                    format!("z{}", 2 * t - 1),
                    loc.embed_deg2(&x(2 * t - 1).mul(&x(n)))?,
                );
                images.insert(format!("z{}", 2 * t), loc.embed_deg2(&x(2 * t).mul(&x(n)))?);
            }
        }
    }
    Ok(images)
}

/// Cross-certification report.
#[derive(Debug, Clone)]
pub struct CrossReport {
    pub relations_checked: usize,
    pub generates: bool,
    pub linear_rank: usize,
    pub dim: usize,
    pub isomorphic: bool,
}

/// Verifies that the presentation model and the localization model of the
/// same quadric are isomorphic through the generator map: every defining
/// relation maps to zero and the images generate the full algebra.
pub fn cross_certify<K: Ring>(
    pres: &PresentedClifford<K>,
    loc: &LocalizedClifford<K>,
    s: &SkewAlgebra<K>,
) -> Result<CrossReport, CliffordError> {
    let images = phi_images(s, pres.cliff.parity, loc)?;
    cross_certify_with_images(pres, loc, &images)
}

/// Same as [`cross_certify`] with caller-supplied generator images (negative
/// controls perturb them).
pub fn cross_certify_with_images<K: Ring>(
    pres: &PresentedClifford<K>,
    loc: &LocalizedClifford<K>,
    images: &BTreeMap<String, SparseVec<K>>,
) -> Result<CrossReport, CliffordError> {
    let alg = &loc.cliff.algebra;
    let dim = alg.dim();
    let gens = pres.rs.gens();
    let image_of = |g: usize| -> &SparseVec<K> { &images[gens.name(g)] };
    for rel in &pres.presentation.relations {
        let mut acc = vec![K::zero(); dim];
        for (word, c) in &rel.terms {
            let mut v = alg.unit().clone();
            for &letter in &word.0 {
                v = alg.mul(&v, image_of(letter as usize));
            }
            for (i, cv) in v {
                acc[i] = acc[i].clone() + c.clone() * cv;
            }
        }
        if acc.iter().any(|c| !c.is_zero()) {
            return Err(CliffordError::RelationFails {
                relation: rel.render(gens),
                residue: alg.render_vec(&sparse_from_dense(&acc)),
            });
        }
    }
    // Images of the presentation basis must span the localization model.
    let mut rows: Vec<Vec<K>> = Vec::with_capacity(dim);
    for word in &pres.basis {
        let mut v = alg.unit().clone();
        for &letter in &word.0 {
            v = alg.mul(&v, image_of(letter as usize));
        }
        rows.push(dense_from_sparse(&v, dim));
    }
    let rank = ExactMatrix::from_rows(rows).rank();
    if rank != dim {
        return Err(CliffordError::NotGenerating {
            got: rank,
            expected: dim,
        });
    }
    Ok(CrossReport {
        relations_checked: pres.presentation.relations.len(),
        generates: true,
        linear_rank: rank,
        dim,
        isomorphic: pres.cliff.algebra.dim() == dim,
    })
}
