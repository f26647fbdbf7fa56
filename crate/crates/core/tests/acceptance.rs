//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the data that was checked. Everything is exact; there are no tolerances.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evenclif::clifford::{
    clifford_presentation, CliffordError, HatAlpha, LocalizedClifford, Parity,
    PresentedClifford,
};
use evenclif::freealg::{NCPoly, Word};
use evenclif::isomap::{
    build_fge, build_psi, surjectivity_witnesses, verify_bijective_specialized,
    verify_bijective_symbolic, IsoError,
};
use evenclif::matfact::{laurent_params, verify_conjugation, verify_factorization, FiveVarParams};
use evenclif::matrix::ExactMatrix;
use evenclif::pipeline::{expected_shape, hilbert_oracle, stabilization_oracle, Quadric};
use evenclif::scalar::{Gaussian, Laurent, Rat, Ring};
use evenclif::skew::{
    build_f, closed_form_normality, even_alpha_grid, normality, odd_alpha_grid, sample, FKind,
    SkewAlgebra, SqrtChoice,
};
use evenclif::structure::{hu_formula, wedderburn_certificate, WedderburnCertificate};

struct Instance {
    n: usize,
    label: String,
    pres: Option<PresentedClifford<Rat>>,
    loc: LocalizedClifford<Rat>,
    cross_ok: bool,
    cert: WedderburnCertificate,
    i0: usize,
    elapsed: Duration,
}

fn build_instance(n: usize, label: &str, grid: Vec<Vec<Rat>>) -> Instance {
    let start = Instant::now();
    let skew = SkewAlgebra::new(grid).expect("valid grid");
    let quadric = Quadric::prepare(skew, FKind::Hyperbolic).expect("normal instance");
    let pres = match quadric.presentation() {
        Ok(p) => Some(p),
        Err(evenclif::pipeline::PipelineError::Clifford(CliffordError::DegenerateEvenCase)) => {
            assert_eq!(n, 2, "only n = 2 may degenerate");
            None
        }
        Err(e) => panic!("presentation failed for n={n} {label}: {e}"),
    };
    let loc = quadric.localization().expect("localization");
    let cross_ok = match &pres {
        Some(p) => quadric.cross_certify(p, &loc).expect("cross certify").isomorphic,
        None => true,
    };
    let cert = wedderburn_certificate(&loc.cliff.algebra).expect("certificate");
    Instance {
        n,
        label: label.to_string(),
        pres,
        i0: loc.i0,
        loc,
        cross_ok,
        cert,
        elapsed: start.elapsed(),
    }
}

fn build_all_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 2..=7usize {
        out.push(build_instance(n, "commutative", vec![vec![Rat::one(); n]; n]));
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
        for k in 0..3 {
            let grid = if n % 2 == 1 {
                sample::odd_normal_alpha::<Rat>(n / 2, &mut rng)
            } else {
                sample::even_normal_alpha::<Rat>((n - 2) / 2, &mut rng)
            };
            out.push(build_instance(n, &format!("random-{k}"), grid));
        }
    }
    out
}

fn instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(build_all_instances)
}

#[test]
fn criterion_1_odd_structure_theorem() {
    for inst in instances().iter().filter(|i| i.n % 2 == 1) {
        let n = inst.n;
        let (q, s) = expected_shape(n);
        let dim = 1usize << (n - 1);
        assert_eq!(inst.loc.cliff.algebra.dim(), dim, "n={n} {}", inst.label);
        if let Some(p) = &inst.pres {
            assert_eq!(p.cliff.algebra.dim(), dim);
        }
        assert!(inst.cert.semisimple, "n={n} {}", inst.label);
        assert_eq!(inst.cert.radical_dim, 0);
        assert_eq!(inst.cert.center_dim, 1, "n={n} {}", inst.label);
        assert_eq!(inst.cert.block_count as u64, q);
        assert_eq!(inst.cert.block_dims, vec![(s * s) as usize]);
        assert_eq!(inst.cert.block_sizes, Some(vec![s]));
        if n == 7 {
            assert!(
                inst.elapsed < Duration::from_secs(60),
                "n=7 {} took {:?}",
                inst.label,
                inst.elapsed
            );
        }
    }
    let counted = instances().iter().filter(|i| i.n % 2 == 1).count();
    println!("criterion 1 PASS: odd n in {{3,5,7}}, {counted} instances, q=1 and s=2^((n-1)/2) exactly");
}

#[test]
fn criterion_2_even_structure_theorem() {
    for inst in instances().iter().filter(|i| i.n % 2 == 0) {
        let n = inst.n;
        let (q, s) = expected_shape(n);
        let dim = 1usize << (n - 1);
        assert_eq!(inst.loc.cliff.algebra.dim(), dim, "n={n} {}", inst.label);
        assert!(inst.cert.semisimple, "n={n} {}", inst.label);
        assert_eq!(inst.cert.radical_dim, 0);
        assert_eq!(inst.cert.center_dim, 2, "n={n} {}", inst.label);
        assert_eq!(inst.cert.block_count as u64, q);
        assert_eq!(inst.cert.block_dims, vec![(s * s) as usize; 2]);
        assert_eq!(inst.cert.block_sizes, Some(vec![s, s]));
        if n == 2 {
            // The presentation degenerates; the localization carries n = 2.
            assert!(inst.pres.is_none());
        }
    }
    let counted = instances().iter().filter(|i| i.n % 2 == 0).count();
    println!("criterion 2 PASS: even n in {{2,4,6}}, {counted} instances, q=2 and s=2^((n-2)/2) exactly; n=2 via localization");
}

#[test]
fn criterion_3_dimension_and_stabilization() {
    for inst in instances() {
        let n = inst.n;
        let dim = 1usize << (n - 1);
        assert_eq!(inst.loc.cliff.algebra.dim(), dim);
        if let Some(p) = &inst.pres {
            assert_eq!(p.cliff.algebra.dim(), dim);
        }
        assert_eq!(
            inst.i0,
            stabilization_oracle(n),
            "stabilization index for n={n} {}",
            inst.label
        );
        // The level dimensions themselves match the series oracle.
        let oracle = hilbert_oracle(n, 2 * inst.i0 + 2);
        assert_eq!(oracle[2 * inst.i0], dim);
        assert_eq!(oracle[2 * inst.i0 + 2], dim);
    }
    println!(
        "criterion 3 PASS: dim C = 2^(n-1) and i0 matches the series oracle on {} instances, n <= 7",
        instances().len()
    );
}

#[test]
fn criterion_4_cross_certification() {
    let mut count = 0;
    for inst in instances() {
        if inst.pres.is_some() {
            assert!(inst.cross_ok, "cross-certification failed for n={} {}", inst.n, inst.label);
            count += 1;
        } else {
            assert_eq!(inst.n, 2);
        }
    }
    println!("criterion 4 PASS: presentation and localization models isomorphic via the generator map on {count} instances (n=2 has no presentation by design)");
}

fn odd_parametric(m: usize) -> (SkewAlgebra<Laurent>, Vec<String>) {
    let mut names: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    for s in 1..=m {
        for t in s + 1..=m {
            names.push(format!("o{s}{t}"));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let syms = Laurent::ring(&refs);
    let mus: Vec<Laurent> = (0..m).map(|i| Laurent::sym(&syms, i)).collect();
    let mut oddodd = Vec::new();
    let mut idx = m;
    for s in 1..=m {
        let mut row = Vec::new();
        for _ in s + 1..=m {
            row.push(Laurent::sym(&syms, idx));
            idx += 1;
        }
        oddodd.push(row);
    }
    let grid = odd_alpha_grid(&mus, &oddodd);
    (SkewAlgebra::new(grid).unwrap(), names)
}

fn even_parametric(m: usize) -> (SkewAlgebra<Laurent>, SqrtChoice<Laurent>, Vec<String>) {
    let pairs = m + 1;
    let mut names: Vec<String> = (1..=pairs).map(|i| format!("b{i}")).collect();
    for s in 1..=pairs {
        for t in s + 1..=pairs {
            names.push(format!("o{s}{t}"));
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let syms = Laurent::ring(&refs);
    let betas: Vec<Laurent> = (0..pairs).map(|i| Laurent::sym(&syms, i)).collect();
    let lams: Vec<Laurent> = betas.iter().map(|b| b.clone() * b.clone()).collect();
    let mut oddodd = Vec::new();
    let mut idx = pairs;
    for s in 1..=pairs {
        let mut row = Vec::new();
        for _ in s + 1..=pairs {
            row.push(Laurent::sym(&syms, idx));
            idx += 1;
        }
        oddodd.push(row);
    }
    let grid = even_alpha_grid(&lams, &oddodd);
    let skew = SkewAlgebra::new(grid).unwrap();
    let sqrt = SqrtChoice::choose(skew.alpha_grid(), m).expect("pair entries are squares");
    (skew, sqrt, names)
}

fn presented<K: Ring>(skew: &SkewAlgebra<K>) -> PresentedClifford<K> {
    let f = build_f(skew.n(), FKind::Hyperbolic);
    let cert = normality(skew, &f).unwrap().expect("normal by construction");
    clifford_presentation(skew, &cert).unwrap()
}

#[test]
fn criterion_5_psi_isomorphisms() {
    // Odd, n = 3 and n = 5: symbolic homomorphism + symbolic determinant.
    for m in [1usize, 2] {
        let n = 2 * m + 1;
        let (skew, _) = odd_parametric(m);
        let target = presented(&skew);
        let source = presented(&SkewAlgebra::<Laurent>::commutative(n));
        let hat = HatAlpha::odd(&skew).unwrap();
        let fge = build_fge(&target, &hat).unwrap();
        let map = build_psi(&source, &target, &fge, None).unwrap();
        assert!(map.hom_verified);
        let det = verify_bijective_symbolic(&map).unwrap();
        assert!(!det.is_zero());
        let wits = surjectivity_witnesses(&target, &fge, &map).unwrap();
        assert_eq!(wits.len(), 2 * m);
    }
    // Even, n = 4: fully symbolic. n = 6: symbolic homomorphism, bijectivity
    // at three exact specializations.
    for m in [1usize, 2] {
        let n = 2 * m + 2;
        let (skew, sqrt, names) = even_parametric(m);
        let target = presented(&skew);
        let source = presented(&SkewAlgebra::<Laurent>::commutative(n));
        let hat = HatAlpha::even(&skew, &sqrt).unwrap();
        let fge = build_fge(&target, &hat).unwrap();
        let map = build_psi(&source, &target, &fge, Some(&sqrt)).unwrap();
        assert!(map.hom_verified);
        if n <= 5 {
            let det = verify_bijective_symbolic(&map).unwrap();
            assert!(!det.is_zero());
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(5150);
            let assignments: Vec<BTreeMap<String, Rat>> = (0..3)
                .map(|_| {
                    names
                        .iter()
                        .map(|s| (s.clone(), Rat::from_i64(rng.gen_range(2..=97))))
                        .collect()
                })
                .collect();
            let dets = verify_bijective_specialized(&map, &assignments).unwrap();
            assert_eq!(dets.len(), 3);
            assert!(dets.iter().all(|d| !d.is_zero()));
        }
        let wits = surjectivity_witnesses(&target, &fge, &map).unwrap();
        assert_eq!(wits.len(), 4 * m);
    }
    // Negative controls: a perturbed twist index must be caught.
    {
        let (skew, _) = odd_parametric(2);
        let target = presented(&skew);
        let source = presented(&SkewAlgebra::<Laurent>::commutative(5));
        let hat = HatAlpha::odd(&skew).unwrap();
        let mut fge = build_fge(&target, &hat).unwrap();
        let z = |i: usize| NCPoly::<Laurent>::gen(i - 1);
        let mut wrong = NCPoly::one();
        wrong.add_assign(
            &z(1)
                .mul(&z(2))
                .scale(&(hat.at(2, 4).clone() - Laurent::one())),
        );
        fge.f
            .insert((2, 1, 1), target.rs.normal_form(&wrong).unwrap());
        assert!(matches!(
            build_psi(&source, &target, &fge, None),
            Err(IsoError::RelationImageNonzero { .. })
        ));
    }
    {
        let (skew, sqrt, _) = even_parametric(2);
        let target = presented(&skew);
        let source = presented(&SkewAlgebra::<Laurent>::commutative(6));
        let hat = HatAlpha::even(&skew, &sqrt).unwrap();
        let mut fge = build_fge(&target, &hat).unwrap();
        let m = 2;
        let y = |i: usize| NCPoly::<Laurent>::gen(i - 1);
        let z = |i: usize| NCPoly::<Laurent>::gen(2 * m + i - 1);
        let mut wrong = NCPoly::one();
        wrong.add_assign(
            &z(1)
                .mul(&y(2))
                .scale(&(hat.at(2, 4).clone() - Laurent::one())),
        );
        fge.f
            .insert((2, 1, 1), target.rs.normal_form(&wrong).unwrap());
        assert!(matches!(
            build_psi(&source, &target, &fge, Some(&sqrt)),
            Err(IsoError::RelationImageNonzero { .. })
        ));
    }
    println!("criterion 5 PASS: psi verified symbolically (odd n<=5, even n<=6), bijective (symbolic dets for n<=5, 3 exact specializations for n=6), negative controls rejected");
}

#[test]
fn criterion_6_sign_formula_cross_check() {
    let mut samples = 0;
    for n in 2..=4usize {
        let mut rng = ChaCha8Rng::seed_from_u64(600 + n as u64);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..20 {
            let grid = sample::pm1_alpha::<Gaussian>(n, &mut rng);
            let (ok, fails) = closed_form_normality(&grid, FKind::SumOfSquares);
            assert!(ok, "{fails:?}");
            let (l, q, s) = hu_formula(&grid).unwrap();
            let skew = SkewAlgebra::new(grid).unwrap();
            let quadric = Quadric::prepare(skew, FKind::SumOfSquares).unwrap();
            let (cert, _) = quadric.certificate().unwrap();
            assert!(cert.semisimple);
            assert_eq!(cert.block_count as u64, q, "n={n} l={l}");
            let sizes = cert.block_sizes.clone().expect("square blocks");
            assert!(sizes.iter().all(|&b| b == s), "n={n}: sizes {sizes:?} vs s={s}");
            seen.insert((q, s));
            samples += 1;
        }
        assert!(seen.len() > 1 || n == 2, "n={n} samples degenerate: {seen:?}");
    }
    println!("criterion 6 PASS: F2-nullity formula matches the direct pipeline on {samples} random sign grids (n in {{2,3,4}}), exact (q, s) agreement");
}

#[test]
fn criterion_7_element_identity_suites() {
    // Odd suites for m = 2, 3 with fully parametric coefficients.
    let mut verified = 0usize;
    for m in [2usize, 3] {
        let (skew, _) = odd_parametric(m);
        let target = presented(&skew);
        let hat = HatAlpha::odd(&skew).unwrap();
        let fge = build_fge(&target, &hat).unwrap();
        verified += fge.verified.len();
    }
    // Even suites for m = 1, 2, 3 (n = 4, 6, 8), parametric.
    for m in [1usize, 2, 3] {
        let (skew, sqrt, _) = even_parametric(m);
        let hat = HatAlpha::even(&skew, &sqrt).unwrap();
        let fge = if m <= 2 {
            let target = presented(&skew);
            build_fge(&target, &hat).unwrap()
        } else {
            // n = 8: run the identity suite on the rewriting system without
            // materializing the 128x128 structure-constant table.
            let relations = evenclif::clifford::clifford_relations(&skew).unwrap();
            let rs = evenclif::rewrite::complete_auto(&relations).unwrap();
            let dim: usize = rs
                .hilbert_dims(rs.degree_bound())
                .unwrap()
                .iter()
                .sum();
            assert_eq!(dim, 1 << 7);
            evenclif::isomap::build_fge_system(&rs, Parity::of(8), &hat).unwrap()
        };
        verified += fge.verified.len();
        assert!(fge.e.is_some() && fge.e_prime.is_some());
    }
    println!("criterion 7 PASS: {verified} exact element identities (commutation, intertwining, products, idempotents) over parametric coefficients, m <= 3 both parities");
}

#[test]
fn criterion_8_matrix_factorization() {
    let start = Instant::now();
    let (_, params) = laurent_params();
    let skew = params.skew_algebra().unwrap();
    let f = build_f(5, FKind::Hyperbolic);
    // The displayed normality constraints hold for the parametrization.
    let (ok, fails) = closed_form_normality(skew.alpha_grid(), FKind::Hyperbolic);
    assert!(ok, "{fails:?}");
    verify_factorization(&skew, &params, &f, -2..=2).unwrap();
    verify_conjugation(&skew, &params, &params.conjugator(), -2..=2).unwrap();
    // Three specializations: each gives the full 16-dimensional single block.
    let mut rng = ChaCha8Rng::seed_from_u64(888);
    for k in 0..3 {
        let (a, b, g) = if k == 0 {
            (2, 3, 5)
        } else {
            (
                rng.gen_range(2i64..=9),
                rng.gen_range(2i64..=9),
                rng.gen_range(2i64..=9),
            )
        };
        let params = FiveVarParams::new(Rat::from_i64(a), Rat::from_i64(b), Rat::from_i64(g))
            .unwrap();
        let skew = params.skew_algebra().unwrap();
        let quadric = Quadric::prepare(skew, FKind::Hyperbolic).unwrap();
        let (cert, _) = quadric.certificate().unwrap();
        assert!(cert.semisimple);
        assert_eq!(cert.block_count, 1);
        assert_eq!(cert.block_dims, vec![16]);
        assert_eq!(cert.block_sizes, Some(vec![4]));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 8 PASS: factorization and conjugation parametric for i in -2..=2; three specializations give one 16-dim block (4x4 matrices); {elapsed:?}");
}

#[test]
fn criterion_9_property_suites() {
    let mut cases = 0usize;

    // Ring axioms on randomized triples, in every coefficient ring.
    fn ring_axioms<K: Ring>(sampler: &mut dyn FnMut() -> K, count: usize) -> usize {
        for _ in 0..count {
            let a = sampler();
            let b = sampler();
            let c = sampler();
            assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            assert_eq!(a.clone() * K::one(), a.clone());
            assert_eq!(a.clone() + K::zero(), a.clone());
            assert_eq!(a.clone() - a.clone(), K::zero());
            if let Some(inv) = a.inv() {
                assert_eq!(inv * a.clone(), K::one());
            }
        }
        count
    }
    let rng = ChaCha8Rng::seed_from_u64(99);
    let mut rat_sampler = {
        let mut r = rng.clone();
        move || Rat::new(r.gen_range(-9i64..=9).into(), r.gen_range(1i64..=9).into())
    };
    cases += ring_axioms::<Rat>(&mut rat_sampler, 150);
    let mut gauss_sampler = {
        let mut r = ChaCha8Rng::seed_from_u64(100);
        move || {
            Gaussian::new(
                Rat::from_i64(r.gen_range(-5i64..=5)),
                Rat::from_i64(r.gen_range(-5i64..=5)),
            )
        }
    };
    cases += ring_axioms::<Gaussian>(&mut gauss_sampler, 150);
    let mut cyc_sampler = {
        let mut r = ChaCha8Rng::seed_from_u64(101);
        move || {
            let z = evenclif::scalar::Cyclotomic::zeta(8);
            let mut v = evenclif::scalar::Cyclotomic::from_rat(Rat::from_i64(r.gen_range(-3i64..=3)));
            for e in 1..4 {
                let c = Rat::from_i64(r.gen_range(-3i64..=3));
                let mut term = evenclif::scalar::Cyclotomic::from_rat(c);
                for _ in 0..e {
                    term = term * z.clone();
                }
                v = v + term;
            }
            v
        }
    };
    cases += ring_axioms::<evenclif::scalar::Cyclotomic>(&mut cyc_sampler, 150);
    let syms = Laurent::ring(&["q", "t"]);
    let mut laurent_sampler = {
        let mut r = ChaCha8Rng::seed_from_u64(102);
        let syms = syms.clone();
        move || {
            let mut v = Laurent::zero();
            for _ in 0..r.gen_range(0..3) {
                let e = vec![r.gen_range(-2i32..=2), r.gen_range(-2i32..=2)];
                v = v + Laurent::monomial(&syms, e, Rat::from_i64(r.gen_range(-4i64..=4)));
            }
            v
        }
    };
    cases += ring_axioms::<Laurent>(&mut laurent_sampler, 150);

    // specialize is a ring homomorphism.
    {
        let mut r = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..150 {
            let a = laurent_sampler();
            let b = laurent_sampler();
            let vals = vec![
                Rat::from_i64(r.gen_range(1i64..=7)),
                Rat::from_i64(r.gen_range(1i64..=7)),
            ];
            let sp = |x: &Laurent| x.specialize(&vals).unwrap();
            assert_eq!(sp(&(a.clone() * b.clone())), sp(&a) * sp(&b));
            assert_eq!(sp(&(a.clone() + b.clone())), sp(&a) + sp(&b));
            cases += 1;
        }
        assert_eq!(sp_one(&syms), Rat::one());
        fn sp_one(syms: &evenclif::scalar::SymbolList) -> Rat {
            Laurent::constant(syms, Rat::one())
                .specialize(&[Rat::from_i64(2), Rat::from_i64(3)])
                .unwrap()
        }
    }

    // solve_linear recovers solutions of consistent systems.
    {
        let mut r = ChaCha8Rng::seed_from_u64(104);
        for _ in 0..120 {
            let rows = r.gen_range(1..=4);
            let cols = r.gen_range(1..=4);
            let mut m = ExactMatrix::<Rat>::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = Rat::from_i64(r.gen_range(-4i64..=4));
                }
            }
            let x: Vec<Rat> = (0..cols).map(|_| Rat::from_i64(r.gen_range(-4i64..=4))).collect();
            let b = m.mul_vec(&x);
            let solved = m.solve(&b).unwrap().expect("consistent by construction");
            assert_eq!(m.mul_vec(&solved), b);
            cases += 1;
        }
    }

    // Free-algebra product is associative and unital.
    {
        let mut r = ChaCha8Rng::seed_from_u64(105);
        for _ in 0..120 {
            let mut rand_poly = || {
                let mut p = NCPoly::<Rat>::zero();
                for _ in 0..r.gen_range(1..3) {
                    let len = r.gen_range(0..3);
                    let w = Word((0..len).map(|_| r.gen_range(0..3u8)).collect());
                    p.add_term(w, Rat::from_i64(r.gen_range(-3i64..=3)));
                }
                p
            };
            let a = rand_poly();
            let b = rand_poly();
            let c = rand_poly();
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&NCPoly::one()), a);
            cases += 1;
        }
    }

    // Confluence witness: NF(ab) = NF(NF(a) NF(b)) on a completed system.
    {
        let inst = &instances()[1]; // n = 2 random instance is cheap
        let _ = inst;
        let skew: SkewAlgebra<Rat> = SkewAlgebra::commutative(5);
        let f = build_f(5, FKind::Hyperbolic);
        let cert = normality(&skew, &f).unwrap().unwrap();
        let pres = clifford_presentation(&skew, &cert).unwrap();
        let rs = &pres.rs;
        let mut r = ChaCha8Rng::seed_from_u64(106);
        for _ in 0..200 {
            let mut rand_poly = || {
                let mut p = NCPoly::<Rat>::zero();
                for _ in 0..r.gen_range(1..3) {
                    let len = r.gen_range(0..4);
                    let w = Word((0..len).map(|_| r.gen_range(0..4u8)).collect());
                    p.add_term(w, Rat::from_i64(r.gen_range(-3i64..=3)));
                }
                p
            };
            let a = rand_poly();
            let b = rand_poly();
            let lhs = rs.normal_form(&a.mul(&b)).unwrap();
            let rhs = rs
                .normal_form(&rs.normal_form(&a).unwrap().mul(&rs.normal_form(&b).unwrap()))
                .unwrap();
            assert_eq!(lhs, rhs);
            cases += 1;
        }
    }

    // Double dual: relations of the dual of the dual span the original space.
    {
        use evenclif::dual::{quadratic_dual, QuadraticData};
        use evenclif::freealg::{Presentation, PresentationMode};
        for n in 2..=4usize {
            let skew: SkewAlgebra<Rat> = SkewAlgebra::commutative(n);
            let f = build_f(n, FKind::Hyperbolic);
            let mut relations = skew.presentation().relations.clone();
            relations.push(f);
            let p = Presentation::new(skew.gens().clone(), relations, PresentationMode::Quadratic)
                .unwrap();
            let q = QuadraticData::from_presentation(&p).unwrap();
            let dual = quadratic_dual(&q).unwrap();
            let qd = QuadraticData::from_presentation(&dual).unwrap();
            let dd = quadratic_dual(&qd).unwrap();
            let qdd = QuadraticData::from_presentation(&dd).unwrap();
            assert_eq!(qdd.dim_relations(), q.dim_relations());
            // Each original relation reduces to zero against the double dual.
            let ddrs = evenclif::rewrite::complete(&dd, 4).unwrap();
            for rel in &p.relations {
                assert!(ddrs.normal_form(rel).unwrap().is_zero());
            }
            cases += 1;
        }
    }

    // Exhaustive associativity of a 64-dimensional structure-constant table.
    {
        let inst = instances()
            .iter()
            .find(|i| i.n == 7 && i.label == "commutative")
            .unwrap();
        let pres = inst.pres.as_ref().unwrap();
        pres.cliff.algebra.verify_associativity_exhaustive().unwrap();
        pres.cliff.algebra.verify_unit().unwrap();
        // 64^3 basis triples checked exhaustively.
        cases += 64 * 64 * 64;
    }

    assert!(cases >= 1000, "only {cases} cases");
    println!("criterion 9 PASS: property suites with {cases} checked cases (ring axioms, specialization homomorphism, linear solver, free product, confluence, double dual, exhaustive dim-64 associativity)");
}
