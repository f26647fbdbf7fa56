//! The F/G/E element calculus and the explicit isomorphism psi from the
//! commutative-coefficient Clifford algebra onto the skew one, verified as a
//! homomorphism symbolically and certified bijective by an exact determinant
//! (or by exact specializations for larger instances).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::clifford::{CliffordError, HatAlpha, Parity, PresentedClifford};
use crate::freealg::NCPoly;
use crate::matrix::ExactMatrix;
use crate::rewrite::RewriteError;
use crate::scalar::{Laurent, Rat, Ring, ScalarError};
use crate::skew::SqrtChoice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoError {
    IdentityFails(String),
    RelationImageNonzero { relation: String, residue: String },
    SingularAfterSpecialization,
    NotProportional(String),
    Rewrite(RewriteError),
    Clifford(String),
    Scalar(ScalarError),
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::IdentityFails(s) => write!(f, "element identity fails: {s}"),
            IsoError::RelationImageNonzero { relation, residue } => {
                write!(f, "relation `{relation}` has nonzero image {residue}")
            }
            IsoError::SingularAfterSpecialization => {
                write!(f, "determinant vanished after specialization; retry with a new assignment")
            }
            IsoError::NotProportional(s) => write!(f, "witness is not proportional: {s}"),
            IsoError::Rewrite(e) => write!(f, "{e}"),
            IsoError::Clifford(s) => write!(f, "{s}"),
            IsoError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IsoError {}

impl From<RewriteError> for IsoError {
    fn from(e: RewriteError) -> Self {
        IsoError::Rewrite(e)
    }
}

impl From<CliffordError> for IsoError {
    fn from(e: CliffordError) -> Self {
        IsoError::Clifford(e.to_string())
    }
}

impl From<ScalarError> for IsoError {
    fn from(e: ScalarError) -> Self {
        IsoError::Scalar(e)
    }
}

/// The correction elements F (and G, E in the even case), as reduced
/// polynomials in the generators of the target Clifford algebra.
#[derive(Clone, Debug)]
pub struct FGEElements<K: Ring> {
    pub parity: Parity,
    pub hat: HatAlpha<K>,
    /// (s, r, a) -> F^(a)_{sr}, for 1 <= r < s <= m, a in {1, 2}.
    pub f: BTreeMap<(usize, usize, u8), NCPoly<K>>,
    /// Even case only.
    pub g: BTreeMap<(usize, usize, u8), NCPoly<K>>,
    pub e: Option<NCPoly<K>>,
    pub e_prime: Option<NCPoly<K>>,
    /// Names of identities that were verified during construction.
    pub verified: Vec<String>,
}

fn one_minus_scaled<K: Ring>(hat_val: &K, word: NCPoly<K>) -> NCPoly<K> {
    // 1 - (1 - hat) * word
    let mut out = NCPoly::one();
    out.add_assign(&word.scale(&(hat_val.clone() - K::one())));
    out
}

/// Builds the F (and G, E) elements over a presentation-route Clifford
/// algebra and verifies the whole identity suite they satisfy.
pub fn build_fge<K: Ring>(
    pres: &PresentedClifford<K>,
    hat: &HatAlpha<K>,
) -> Result<FGEElements<K>, IsoError> {
    build_fge_system(&pres.rs, pres.cliff.parity, hat)
}

/// Same construction straight off a completed rewriting system; lets the
/// identity suites run without materializing a structure-constant table.
pub fn build_fge_system<K: Ring>(
    rs: &crate::rewrite::RewriteSystem<K>,
    parity: Parity,
    hat: &HatAlpha<K>,
) -> Result<FGEElements<K>, IsoError> {
    let m = parity.m();
    let nf = |p: &NCPoly<K>| rs.normal_form(p).map_err(IsoError::from);
    let mut fge = FGEElements {
        parity,
        hat: hat.clone(),
        f: BTreeMap::new(),
        g: BTreeMap::new(),
        e: None,
        e_prime: None,
        verified: Vec::new(),
    };
    match parity {
        Parity::Odd { .. } => {
            let z = |i: usize| NCPoly::<K>::gen(i - 1);
            for s in 2..=m {
                for r in 1..s {
                    let pair = z(2 * r - 1).mul(&z(2 * r));
                    fge.f.insert(
                        (s, r, 1),
                        nf(&one_minus_scaled(hat.at(2 * s, 2 * r), pair.clone()))?,
                    );
                    fge.f.insert(
                        (s, r, 2),
                        nf(&one_minus_scaled(hat.at(2 * r, 2 * s), pair))?,
                    );
                }
            }
        }
        Parity::Even { .. } => {
            let y = |i: usize| NCPoly::<K>::gen(i - 1);
            let z = |i: usize| NCPoly::<K>::gen(2 * m + i - 1);
            for s in 2..=m {
                for r in 1..s {
                    let h = hat.at(2 * s, 2 * r);
                    fge.f.insert(
                        (s, r, 1),
                        nf(&one_minus_scaled(h, z(2 * r - 1).mul(&y(2 * r))))?,
                    );
                    fge.f.insert(
                        (s, r, 2),
                        nf(&one_minus_scaled(h, z(2 * r).mul(&y(2 * r - 1))))?,
                    );
                    fge.g.insert(
                        (s, r, 1),
                        nf(&one_minus_scaled(h, y(2 * r - 1).mul(&z(2 * r))))?,
                    );
                    fge.g.insert(
                        (s, r, 2),
                        nf(&one_minus_scaled(h, y(2 * r).mul(&z(2 * r - 1))))?,
                    );
                }
            }
            fge.e = Some(nf(&z(1).mul(&y(2)).add(&z(2).mul(&y(1))))?);
            fge.e_prime = Some(nf(&y(1).mul(&z(2)).add(&y(2).mul(&z(1))))?);
        }
    }
    verify_fge(rs, hat, &mut fge)?;
    Ok(fge)
}

fn check_identity<K: Ring>(
    rs: &crate::rewrite::RewriteSystem<K>,
    verified: &mut Vec<String>,
    name: String,
    lhs: &NCPoly<K>,
    rhs: &NCPoly<K>,
) -> Result<(), IsoError> {
    let diff = rs.normal_form(&lhs.sub(rhs))?;
    if !diff.is_zero() {
        return Err(IsoError::IdentityFails(format!(
            "{name}: residue {}",
            diff.render(rs.gens())
        )));
    }
    verified.push(name);
    Ok(())
}

fn verify_fge<K: Ring>(
    rs: &crate::rewrite::RewriteSystem<K>,
    hat: &HatAlpha<K>,
    fge: &mut FGEElements<K>,
) -> Result<(), IsoError> {
    let m = fge.parity.m();
    let mut verified = std::mem::take(&mut fge.verified);
    match fge.parity {
        Parity::Odd { .. } => {
            let z = |i: usize| NCPoly::<K>::gen(i - 1);
            // Commutation of each F with each generator.
            for (&(s, r, a), fsr) in &fge.f {
                for i in 1..=2 * m {
                    let twist = if i == 2 * r - 1 || i == 2 * r {
                        if a == 1 {
                            hat.at(i, 2 * s).clone()
                        } else {
                            hat.at(2 * s, i).clone()
                        }
                    } else {
                        K::one()
                    };
                    check_identity(
                        rs,
                        &mut verified,
                        format!("F{a}[{s}{r}] z{i} twist"),
                        &fsr.mul(&z(i)),
                        &z(i).mul(fsr).scale(&twist),
                    )?;
                }
            }
            // Pairwise commutation.
            let keys: Vec<_> = fge.f.keys().cloned().collect();
            for (ix, k1) in keys.iter().enumerate() {
                for k2 in keys.iter().skip(ix + 1) {
                    check_identity(
                        rs,
                        &mut verified,
                        format!("F{:?} F{:?} commute", k1, k2),
                        &fge.f[k1].mul(&fge.f[k2]),
                        &fge.f[k2].mul(&fge.f[k1]),
                    )?;
                }
            }
            // F1 F2 = F2 F1 = 1.
            for s in 2..=m {
                for r in 1..s {
                    let f1 = &fge.f[&(s, r, 1)];
                    let f2 = &fge.f[&(s, r, 2)];
                    check_identity(
                        rs,
                        &mut verified,
                        format!("F1[{s}{r}] F2[{s}{r}] = 1"),
                        &f1.mul(f2),
                        &NCPoly::one(),
                    )?;
                    check_identity(
                        rs,
                        &mut verified,
                        format!("F2[{s}{r}] F1[{s}{r}] = 1"),
                        &f2.mul(f1),
                        &NCPoly::one(),
                    )?;
                }
            }
        }
        Parity::Even { .. } => {
            let y = |i: usize| NCPoly::<K>::gen(i - 1);
            let z = |i: usize| NCPoly::<K>::gen(2 * m + i - 1);
            let e = fge.e.clone().expect("even mode has E");
            let e_prime = fge.e_prime.clone().expect("even mode has E'");
            // Idempotent identities and s-independence.
            check_identity(
                rs,
                &mut verified,
                "E + E' = 1".into(),
                &e.add(&e_prime),
                &NCPoly::one(),
            )?;
            check_identity(rs, &mut verified, "E E' = 0".into(), &e.mul(&e_prime), &NCPoly::zero())?;
            check_identity(rs, &mut verified, "E' E = 0".into(), &e_prime.mul(&e), &NCPoly::zero())?;
            check_identity(rs, &mut verified, "E^2 = E".into(), &e.mul(&e), &e)?;
            check_identity(
                rs,
                &mut verified,
                "E'^2 = E'".into(),
                &e_prime.mul(&e_prime),
                &e_prime,
            )?;
            for s in 1..=m {
                check_identity(
                    rs,
                    &mut verified,
                    format!("E from pair {s}"),
                    &z(2 * s - 1).mul(&y(2 * s)).add(&z(2 * s).mul(&y(2 * s - 1))),
                    &e,
                )?;
                check_identity(
                    rs,
                    &mut verified,
                    format!("E' from pair {s}"),
                    &y(2 * s - 1).mul(&z(2 * s)).add(&y(2 * s).mul(&z(2 * s - 1))),
                    &e_prime,
                )?;
            }
            // Twisted intertwining F z = hat z G and G y = hat y F.
            for (&(s, r, a), fsr) in &fge.f {
                let gsr = &fge.g[&(s, r, a)];
                for i in 1..=2 * m {
                    let in_pair = i == 2 * r - 1 || i == 2 * r;
                    let twist = if in_pair {
                        if a == 1 {
                            hat.at(i, 2 * s).clone()
                        } else {
                            hat.at(2 * s, i).clone()
                        }
                    } else {
                        K::one()
                    };
                    check_identity(
                        rs,
                        &mut verified,
                        format!("F{a}[{s}{r}] z{i} intertwine"),
                        &fsr.mul(&z(i)),
                        &z(i).mul(gsr).scale(&twist),
                    )?;
                    check_identity(
                        rs,
                        &mut verified,
                        format!("G{a}[{s}{r}] y{i} intertwine"),
                        &gsr.mul(&y(i)),
                        &y(i).mul(fsr).scale(&twist),
                    )?;
                }
            }
            // Pairwise commutation among all F and G.
            let mut all: Vec<(String, NCPoly<K>)> = Vec::new();
            for (&(s, r, a), p) in &fge.f {
                all.push((format!("F{a}[{s}{r}]"), p.clone()));
            }
            for (&(s, r, a), p) in &fge.g {
                all.push((format!("G{a}[{s}{r}]"), p.clone()));
            }
            for (ix, (n1, p1)) in all.iter().enumerate() {
                for (n2, p2) in all.iter().skip(ix + 1) {
                    check_identity(
                        rs,
                        &mut verified,
                        format!("{n1} {n2} commute"),
                        &p1.mul(p2),
                        &p2.mul(p1),
                    )?;
                }
            }
            // F1 F2 = 1 - (1 - hat) E and the G analogue.
            for s in 2..=m {
                for r in 1..s {
                    let h = hat.at(2 * s, 2 * r);
                    let expect_f = rs.normal_form(&one_minus_scaled(h, e.clone()))?;
                    let expect_g = rs.normal_form(&one_minus_scaled(h, e_prime.clone()))?;
                    for (lhs, rhs, tag) in [
                        (&fge.f[&(s, r, 1)], &fge.f[&(s, r, 2)], "F1 F2"),
                        (&fge.f[&(s, r, 2)], &fge.f[&(s, r, 1)], "F2 F1"),
                    ] {
                        check_identity(
                            rs,
                            &mut verified,
                            format!("{tag}[{s}{r}] = 1-(1-hat)E"),
                            &lhs.mul(rhs),
                            &expect_f,
                        )?;
                    }
                    for (lhs, rhs, tag) in [
                        (&fge.g[&(s, r, 1)], &fge.g[&(s, r, 2)], "G1 G2"),
                        (&fge.g[&(s, r, 2)], &fge.g[&(s, r, 1)], "G2 G1"),
                    ] {
                        check_identity(
                            rs,
                            &mut verified,
                            format!("{tag}[{s}{r}] = 1-(1-hat)E'"),
                            &lhs.mul(rhs),
                            &expect_g,
                        )?;
                    }
                }
            }
        }
    }
    fge.verified = verified;
    Ok(())
}

/// A generator-image description of an algebra homomorphism, with the induced
/// linear map on the full basis.
#[derive(Clone, Debug)]
pub struct AlgebraMap<K: Ring> {
    /// Source generator name -> reduced image polynomial in target generators.
    pub gen_images: BTreeMap<String, NCPoly<K>>,
    /// Induced matrix: column j = target coordinates of the image of source
    /// basis element j.
    pub matrix: ExactMatrix<K>,
    pub hom_verified: bool,
}

/// Builds psi from the commutative-coefficient model onto the skew one and
/// verifies every defining relation of the source maps to zero.
pub fn build_psi<K: Ring>(
    source: &PresentedClifford<K>,
    target: &PresentedClifford<K>,
    fge: &FGEElements<K>,
    sqrt: Option<&SqrtChoice<K>>,
) -> Result<AlgebraMap<K>, IsoError> {
    let m = source.cliff.parity.m();
    debug_assert_eq!(m, target.cliff.parity.m());
    let rs = &target.rs;
    let nf = |p: &NCPoly<K>| rs.normal_form(p).map_err(IsoError::from);
    let mut gen_images: BTreeMap<String, NCPoly<K>> = BTreeMap::new();
    match source.cliff.parity {
        Parity::Odd { .. } => {
            let z = |i: usize| NCPoly::<K>::gen(i - 1);
            for s in 1..=m {
                let mut img1 = z(2 * s - 1);
                let mut img2 = z(2 * s);
                for r in 1..s {
                    img1 = nf(&img1.mul(&fge.f[&(s, r, 1)]))?;
                    img2 = nf(&img2.mul(&fge.f[&(s, r, 2)]))?;
                }
                gen_images.insert(format!("z{}", 2 * s - 1), nf(&img1)?);
                gen_images.insert(format!("z{}", 2 * s), nf(&img2)?);
            }
        }
        Parity::Even { .. } => {
            let sqrt = sqrt.expect("even mode needs the square-root choice");
            let y = |i: usize| NCPoly::<K>::gen(i - 1);
            let z = |i: usize| NCPoly::<K>::gen(2 * m + i - 1);
            for s in 1..=m {
                let mut iy1 = y(2 * s - 1);
                let mut iy2 = y(2 * s).scale(&sqrt.beta(s));
                let mut iz1 = z(2 * s - 1).scale(&sqrt.beta_rev(s));
                let mut iz2 = z(2 * s);
                for r in 1..s {
                    let h = fge.hat.at(2 * r, 2 * s);
                    iy1 = nf(&iy1.mul(&fge.f[&(s, r, 1)]))?;
                    iy2 = nf(&iy2.mul(&fge.f[&(s, r, 2)]).scale(h))?;
                    iz1 = nf(&iz1.mul(&fge.g[&(s, r, 1)]))?;
                    iz2 = nf(&iz2.mul(&fge.g[&(s, r, 2)]).scale(h))?;
                }
                gen_images.insert(format!("y{}", 2 * s - 1), nf(&iy1)?);
                gen_images.insert(format!("y{}", 2 * s), nf(&iy2)?);
                gen_images.insert(format!("z{}", 2 * s - 1), nf(&iz1)?);
                gen_images.insert(format!("z{}", 2 * s), nf(&iz2)?);
            }
        }
    }
    // Every source relation maps to zero.
    let image_poly = |p: &NCPoly<K>| -> Result<NCPoly<K>, IsoError> {
        let mut out = NCPoly::zero();
        for (word, c) in &p.terms {
            let mut img = NCPoly::scalar(c.clone());
            for &letter in &word.0 {
                let name = source.rs.gens().name(letter as usize);
                img = nf(&img.mul(&gen_images[name]))?;
            }
            out.add_assign(&img);
        }
        nf(&out)
    };
    for rel in &source.presentation.relations {
        let residue = image_poly(rel)?;
        if !residue.is_zero() {
            return Err(IsoError::RelationImageNonzero {
                relation: rel.render(source.rs.gens()),
                residue: residue.render(target.rs.gens()),
            });
        }
    }
    // Induced linear map on the basis.
    let dim = source.basis.len();
    debug_assert_eq!(dim, target.basis.len());
    let tindex: std::collections::HashMap<&crate::freealg::Word, usize> = target
        .basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut images_of_words: std::collections::HashMap<crate::freealg::Word, NCPoly<K>> =
        std::collections::HashMap::new();
    images_of_words.insert(crate::freealg::Word::empty(), NCPoly::one());
    let mut matrix = ExactMatrix::zero(dim, dim);
    for (j, word) in source.basis.iter().enumerate() {
        let img = if word.is_empty() {
            NCPoly::one()
        } else {
            let prefix = crate::freealg::Word(word.0[..word.len() - 1].to_vec());
            let last = word.0[word.len() - 1] as usize;
            let prev = images_of_words
                .get(&prefix)
                .expect("prefixes of basis words are basis words")
                .clone();
            let name = source.rs.gens().name(last);
            let img = nf(&prev.mul(&gen_images[name]))?;
            images_of_words.insert(word.clone(), img.clone());
            img
        };
        for (wd, c) in &img.terms {
            let i = *tindex.get(wd).expect("image lies in the target basis");
            matrix[(i, j)] = c.clone();
        }
    }
    Ok(AlgebraMap {
        gen_images,
        matrix,
        hom_verified: true,
    })
}

/// Bijectivity by symbolic determinant: exact over the coefficient ring.
pub fn verify_bijective_symbolic<K: Ring>(map: &AlgebraMap<K>) -> Result<K, IsoError> {
    let det = map.matrix.det();
    if det.is_zero() {
        return Err(IsoError::NotProportional("determinant is zero".into()));
    }
    Ok(det)
}

/// Bijectivity for Laurent-coefficient maps by exact evaluation at the given
/// assignments; each determinant must be nonzero.
pub fn verify_bijective_specialized(
    map: &AlgebraMap<Laurent>,
    assignments: &[BTreeMap<String, Rat>],
) -> Result<Vec<Rat>, IsoError> {
    let mut dets = Vec::new();
    for assignment in assignments {
        let n = map.matrix.rows();
        let mut m = ExactMatrix::<Rat>::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = map.matrix[(i, j)].specialize_map(assignment)?;
            }
        }
        let det = m.det();
        if det.is_zero() {
            return Err(IsoError::SingularAfterSpecialization);
        }
        dets.push(det);
    }
    Ok(dets)
}

/// Replays the surjectivity induction: each target generator equals a scalar
/// multiple of psi(source generator) times a product of correction elements.
/// Returns the witness expressions.
pub fn surjectivity_witnesses<K: Ring>(
    target: &PresentedClifford<K>,
    fge: &FGEElements<K>,
    map: &AlgebraMap<K>,
) -> Result<Vec<String>, IsoError> {
    let m = target.cliff.parity.m();
    let rs = &target.rs;
    let nf = |p: &NCPoly<K>| rs.normal_form(p).map_err(IsoError::from);
    let mut witnesses = Vec::new();
    let mut check = |name: String, correction_tag: &str, img: NCPoly<K>, gen_index: usize| -> Result<(), IsoError> {
        let gen = NCPoly::<K>::gen(gen_index);
        // img must be c * gen for a unit scalar c.
        let img = nf(&img)?;
        if img.num_terms() != 1 {
            return Err(IsoError::NotProportional(format!(
                "{name}: image has {} terms",
                img.num_terms()
            )));
        }
        let (word, c) = img.lead().expect("nonzero");
        let gen_word = gen.lead().expect("generator").0.clone();
        if *word != gen_word {
            return Err(IsoError::NotProportional(format!(
                "{name}: image word is {}",
                rs.gens().render_word(word)
            )));
        }
        let cinv = c.inv().ok_or_else(|| {
            IsoError::NotProportional(format!("{name}: scalar {c} is not a unit"))
        })?;
        witnesses.push(format!(
            "{name} = {} * psi({name}') {correction_tag}",
            crate::scalar::coeff_string(&cinv)
        ));
        Ok(())
    };
    match target.cliff.parity {
        Parity::Odd { .. } => {
            for s in 1..=m {
                // z_{2s-1}: psi(z'_{2s-1}) * prod F2; z_{2s}: * prod F1.
                let mut u1 = map.gen_images[&format!("z{}", 2 * s - 1)].clone();
                let mut u2 = map.gen_images[&format!("z{}", 2 * s)].clone();
                for r in 1..s {
                    u1 = nf(&u1.mul(&fge.f[&(s, r, 2)]))?;
                    u2 = nf(&u2.mul(&fge.f[&(s, r, 1)]))?;
                }
                check(format!("z{}", 2 * s - 1), "* prod F2", u1, 2 * s - 2)?;
                check(format!("z{}", 2 * s), "* prod F1", u2, 2 * s - 1)?;
            }
        }
        Parity::Even { .. } => {
            for s in 1..=m {
                let mut uy1 = map.gen_images[&format!("y{}", 2 * s - 1)].clone();
                let mut uy2 = map.gen_images[&format!("y{}", 2 * s)].clone();
                let mut uz1 = map.gen_images[&format!("z{}", 2 * s - 1)].clone();
                let mut uz2 = map.gen_images[&format!("z{}", 2 * s)].clone();
                for r in 1..s {
                    uy1 = nf(&uy1.mul(&fge.f[&(s, r, 2)]))?;
                    uy2 = nf(&uy2.mul(&fge.f[&(s, r, 1)]))?;
                    uz1 = nf(&uz1.mul(&fge.g[&(s, r, 2)]))?;
                    uz2 = nf(&uz2.mul(&fge.g[&(s, r, 1)]))?;
                }
                check(format!("y{}", 2 * s - 1), "* prod F2", uy1, 2 * s - 2)?;
                check(format!("y{}", 2 * s), "* prod F1", uy2, 2 * s - 1)?;
                check(format!("z{}", 2 * s - 1), "* prod G2", uz1, 2 * m + 2 * s - 2)?;
                check(format!("z{}", 2 * s), "* prod G1", uz2, 2 * m + 2 * s - 1)?;
            }
        }
    }
    Ok(witnesses)
}
