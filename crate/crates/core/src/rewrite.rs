//! Degree-bounded completion of a presentation into a confluent rewriting
//! system, normal forms, normal-monomial enumeration, and structure constants
//! for finite-dimensional quotients.
//!
//! Rules are oriented by degree-lexicographic order: the lead is the largest
//! word of a relation, the tail is everything below it. Completion resolves
//! every overlap and inclusion ambiguity of total degree at most the bound;
//! by the diamond lemma that makes normal forms unique for all inputs within
//! the bound. Filtered (inhomogeneous) relations are handled by the same
//! order, which is well-founded across degrees, so degree-dropping rewrites
//! terminate.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::freealg::{Gens, NCPoly, Presentation, Word};
use crate::scalar::Ring;
use crate::structure::FinDimAlgebra;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    /// The lead coefficient of a (possibly derived) relation is not a unit.
    NonUnitLeadingCoefficient { relation: String },
    /// New rules still appearing at the degree bound.
    CompletionDiverged { degree: usize },
    DegreeExceedsBound { degree: usize, bound: usize },
    NotFiniteDimensional,
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::NonUnitLeadingCoefficient { relation } => {
                write!(f, "non-unit leading coefficient in `{relation}`")
            }
            RewriteError::CompletionDiverged { degree } => {
                write!(f, "completion diverged: new rules at degree {degree}")
            }
            RewriteError::DegreeExceedsBound { degree, bound } => {
                write!(f, "degree {degree} exceeds completion bound {bound}")
            }
            RewriteError::NotFiniteDimensional => write!(f, "quotient is not finite-dimensional"),
        }
    }
}

impl std::error::Error for RewriteError {}

#[derive(Clone, Debug)]
pub struct Rule<K> {
    pub lead: Word,
    pub tail: NCPoly<K>,
}

impl<K: Ring> Rule<K> {
    /// lead - tail, the relation the rule encodes.
    fn as_poly(&self) -> NCPoly<K> {
        let mut p = self.tail.neg();
        p.add_term(self.lead.clone(), K::one());
        p
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<K> {
    gens: Gens,
    rules: Vec<Rule<K>>,
    degree_bound: usize,
    /// Rule indices by first letter of the lead, larger leads first.
    buckets: Vec<Vec<usize>>,
}

impl<K: Ring> RewriteSystem<K> {
    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.rules
    }

    /// Report form: one `lead -> tail` line per rule.
    pub fn rule_lines(&self) -> Vec<String> {
        self.rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    self.gens.render_word(&r.lead),
                    r.tail.render(&self.gens)
                )
            })
            .collect()
    }

    fn rebuild_buckets(&mut self) {
        self.buckets = vec![Vec::new(); self.gens.len().max(1)];
        let mut order: Vec<usize> = (0..self.rules.len()).collect();
        order.sort_by(|&a, &b| self.rules[b].lead.cmp(&self.rules[a].lead));
        for idx in order {
            let lead = &self.rules[idx].lead;
            if let Some(&first) = lead.0.first() {
                self.buckets[first as usize].push(idx);
            }
        }
    }

    /// Leftmost reducible position; among rules matching there, the one with
    /// the largest lead.
    fn first_reduction(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            let first = w.0[pos] as usize;
            for &ri in &self.buckets[first] {
                let lead = &self.rules[ri].lead;
                if pos + lead.len() <= w.len() && w.0[pos..pos + lead.len()] == lead.0[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// True when no rule applies anywhere in the word.
    pub fn is_normal(&self, w: &Word) -> bool {
        self.first_reduction(w).is_none()
    }

    /// Irreducible representative; linear and idempotent.
    pub fn normal_form(&self, p: &NCPoly<K>) -> Result<NCPoly<K>, RewriteError> {
        let degree = p.degree();
        if degree > self.degree_bound {
            return Err(RewriteError::DegreeExceedsBound {
                degree,
                bound: self.degree_bound,
            });
        }
        Ok(self.reduce(p))
    }

    fn reduce(&self, p: &NCPoly<K>) -> NCPoly<K> {
        let mut out = NCPoly::zero();
        let mut work = p.terms.clone();
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_reduction(&w) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    let rule = &self.rules[ri];
                    let prefix = &w.0[..pos];
                    let suffix = &w.0[pos + rule.lead.len()..];
                    for (tw, tc) in &rule.tail.terms {
                        let mut spliced = Vec::with_capacity(prefix.len() + tw.len() + suffix.len());
                        spliced.extend_from_slice(prefix);
                        spliced.extend_from_slice(&tw.0);
                        spliced.extend_from_slice(suffix);
                        let key = Word(spliced);
                        let add = c.clone() * tc.clone();
                        match work.entry(key) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                let s = o.get().clone() + add;
                                if s.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = s;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// All irreducible words of length exactly `d`, in monomial order.
    pub fn normal_monomials(&self, d: usize) -> Result<Vec<Word>, RewriteError> {
        if d > self.degree_bound {
            return Err(RewriteError::DegreeExceedsBound {
                degree: d,
                bound: self.degree_bound,
            });
        }
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == d {
                out.push(Word(cur));
                continue;
            }
            // Descend in reverse letter order so the stack pops in lex order.
            for g in (0..self.gens.len()).rev() {
                let mut next = cur.clone();
                next.push(g as u8);
                if self.suffix_normal(&next) {
                    stack.push(next);
                }
            }
        }
        Ok(out)
    }

    /// Assuming all proper prefixes are normal, check the extension: only a
    /// lead ending at the last letter can break normality.
    fn suffix_normal(&self, w: &[u8]) -> bool {
        for rule in &self.rules {
            let l = rule.lead.len();
            if l <= w.len() && w[w.len() - l..] == rule.lead.0[..] {
                return false;
            }
        }
        true
    }

    /// All irreducible words of length <= `d`, in monomial order.
    pub fn cumulative_basis(&self, d: usize) -> Result<Vec<Word>, RewriteError> {
        let mut out = Vec::new();
        for deg in 0..=d {
            out.extend(self.normal_monomials(deg)?);
        }
        Ok(out)
    }

    /// Counts of irreducible words per degree 0..=dmax.
    pub fn hilbert_dims(&self, dmax: usize) -> Result<Vec<usize>, RewriteError> {
        (0..=dmax).map(|d| Ok(self.normal_monomials(d)?.len())).collect()
    }

    /// Structure constants on the (finite) normal basis; the product of two
    /// basis words is the normal form of their concatenation.
    pub fn structure_constants(&self) -> Result<FinDimAlgebra<K>, RewriteError> {
        let bound = self.degree_bound;
        if bound < 2 {
            return Err(RewriteError::DegreeExceedsBound {
                degree: 2,
                bound,
            });
        }
        for d in [bound - 1, bound] {
            if !self.normal_monomials(d)?.is_empty() {
                return Err(RewriteError::NotFiniteDimensional);
            }
        }
        let mut top = 0;
        let mut basis = Vec::new();
        for d in 0..=bound {
            let words = self.normal_monomials(d)?;
            if !words.is_empty() {
                top = d;
            }
            basis.extend(words);
        }
        if 2 * top > bound {
            return Err(RewriteError::DegreeExceedsBound {
                degree: 2 * top,
                bound,
            });
        }
        let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut reducer = Reducer::new(self);
        let dim = basis.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let nf = reducer.nf_word(&a.concat(b));
                let mut coords: Vec<(usize, K)> = Vec::with_capacity(nf.num_terms());
                for (w, c) in &nf.terms {
                    let i = *index
                        .get(w)
                        .expect("normal form lands in the cumulative basis");
                    coords.push((i, c.clone()));
                }
                coords.sort_by_key(|(i, _)| *i);
                table.push(coords);
            }
        }
        let labels = basis.iter().map(|w| self.gens.render_word(w)).collect();
        let unit = vec![(0usize, K::one())];
        Ok(FinDimAlgebra::from_table(labels, table, unit))
    }
}

/// Normal-form computer with a per-word memo cache. The cache belongs to the
/// caller, so a shared read-only `RewriteSystem` stays thread-safe.
pub struct Reducer<'a, K> {
    rs: &'a RewriteSystem<K>,
    cache: HashMap<Word, NCPoly<K>>,
}

impl<'a, K: Ring> Reducer<'a, K> {
    pub fn new(rs: &'a RewriteSystem<K>) -> Self {
        Reducer {
            rs,
            cache: HashMap::new(),
        }
    }

    /// Fully memoized: every intermediate word met during the reduction is
    /// cached, so repeated products over the same system share work.
    pub fn nf_word(&mut self, w: &Word) -> NCPoly<K> {
        if let Some(hit) = self.cache.get(w) {
            return hit.clone();
        }
        let result = match self.rs.first_reduction(w) {
            None => NCPoly::from_word(w.clone()),
            Some((pos, ri)) => {
                let rule = &self.rs.rules[ri];
                let lead_len = rule.lead.len();
                let tail_terms: Vec<(Word, K)> = rule
                    .tail
                    .terms
                    .iter()
                    .map(|(tw, tc)| (tw.clone(), tc.clone()))
                    .collect();
                let prefix = w.0[..pos].to_vec();
                let suffix = w.0[pos + lead_len..].to_vec();
                let mut out = NCPoly::zero();
                for (tw, tc) in tail_terms {
                    let mut spliced = Vec::with_capacity(prefix.len() + tw.len() + suffix.len());
                    spliced.extend_from_slice(&prefix);
                    spliced.extend_from_slice(&tw.0);
                    spliced.extend_from_slice(&suffix);
                    let sub = self.nf_word(&Word(spliced));
                    out.add_scaled(&sub, &tc);
                }
                out
            }
        };
        self.cache.insert(w.clone(), result.clone());
        result
    }

    pub fn nf_poly(&mut self, p: &NCPoly<K>) -> NCPoly<K> {
        let mut out = NCPoly::zero();
        for (w, c) in &p.terms {
            let nf = self.nf_word(w);
            out.add_scaled(&nf, c);
        }
        out
    }
}

/// Ambiguities between two rule leads: proper overlaps (a suffix of `u` is a
/// prefix of `v`) and inclusions (`v` inside `u`).
fn ambiguity_spolys<K: Ring>(a: &Rule<K>, b: &Rule<K>, bound: usize) -> Vec<NCPoly<K>> {
    let mut out = Vec::new();
    let u = &a.lead;
    let v = &b.lead;
    // Overlaps u = p|s, v = s|q with nonempty s, proper on both sides.
    for k in 1..u.len().min(v.len()) {
        if u.0[u.len() - k..] == v.0[..k] {
            let total = u.len() + v.len() - k;
            if total > bound {
                continue;
            }
            // Reduce p|s|q two ways: tail_a * q  vs  p * tail_b.
            let q = Word(v.0[k..].to_vec());
            let p = Word(u.0[..u.len() - k].to_vec());
            let left = a.tail.mul(&NCPoly::from_word(q));
            let right = NCPoly::from_word(p).mul(&b.tail);
            out.push(left.sub(&right));
        }
    }
    // Inclusion: v strictly inside u.
    if v.len() < u.len() {
        for pos in 0..=u.len() - v.len() {
            if u.0[pos..pos + v.len()] == v.0[..] {
                let p = Word(u.0[..pos].to_vec());
                let q = Word(u.0[pos + v.len()..].to_vec());
                let right = NCPoly::from_word(p)
                    .mul(&b.tail)
                    .mul(&NCPoly::from_word(q));
                out.push(a.tail.sub(&right));
            }
        }
    }
    out
}

/// Diamond-lemma completion up to `degree_bound`.
pub fn complete<K: Ring>(
    p: &Presentation<K>,
    degree_bound: usize,
) -> Result<RewriteSystem<K>, RewriteError> {
    assert!(degree_bound >= 2, "degree bound must be at least 2");
    let mut rs = RewriteSystem {
        gens: p.gens.clone(),
        rules: Vec::new(),
        degree_bound,
        buckets: vec![Vec::new(); p.gens.len().max(1)],
    };
    let mut queue: VecDeque<NCPoly<K>> = p.relations.iter().cloned().collect();
    let mut sweeps = 0usize;
    loop {
        while let Some(cand) = queue.pop_front() {
            if rs.rules.len() > 20_000 {
                return Err(RewriteError::CompletionDiverged {
                    degree: degree_bound,
                });
            }
            let nf = rs.reduce(&cand);
            if nf.is_zero() {
                continue;
            }
            let (lead, coeff) = {
                let (w, c) = nf.lead().expect("nonzero polynomial has a lead");
                (w.clone(), c.clone())
            };
            if lead.len() >= degree_bound {
                return Err(RewriteError::CompletionDiverged { degree: lead.len() });
            }
            let Some(cinv) = coeff.inv() else {
                return Err(RewriteError::NonUnitLeadingCoefficient {
                    relation: nf.render(&rs.gens),
                });
            };
            let mut tail = nf.clone();
            tail.terms.remove(&lead);
            let tail = tail.neg().scale(&cinv);
            // Retire rules whose lead the new rule reduces; they re-enter as
            // candidates so nothing is lost.
            let mut kept = Vec::new();
            for r in std::mem::take(&mut rs.rules) {
                let contains = r.lead.len() > lead.len()
                    && (0..=r.lead.len() - lead.len())
                        .any(|pos| r.lead.0[pos..pos + lead.len()] == lead.0[..]);
                if contains {
                    queue.push_back(r.as_poly());
                } else {
                    kept.push(r);
                }
            }
            rs.rules = kept;
            rs.rules.push(Rule {
                lead,
                tail,
            });
            rs.rebuild_buckets();
            let new_idx = rs.rules.len() - 1;
            for i in 0..rs.rules.len() {
                for s in ambiguity_spolys(&rs.rules[new_idx], &rs.rules[i], degree_bound) {
                    queue.push_back(s);
                }
                if i != new_idx {
                    for s in ambiguity_spolys(&rs.rules[i], &rs.rules[new_idx], degree_bound) {
                        queue.push_back(s);
                    }
                }
            }
        }
        // Verification sweep: every ambiguity within the bound must resolve.
        let mut dirty = false;
        'outer: for i in 0..rs.rules.len() {
            for j in 0..rs.rules.len() {
                for s in ambiguity_spolys(&rs.rules[i], &rs.rules[j], degree_bound) {
                    if !rs.reduce(&s).is_zero() {
                        queue.push_back(s);
                        dirty = true;
                        break 'outer;
                    }
                }
            }
        }
        if !dirty {
            break;
        }
        sweeps += 1;
        if sweeps > 64 {
            return Err(RewriteError::CompletionDiverged {
                degree: degree_bound,
            });
        }
    }
    // Canonical tails: fully reduced against the final system.
    let tails: Vec<NCPoly<K>> = rs.rules.iter().map(|r| rs.reduce(&r.tail)).collect();
    for (r, t) in rs.rules.iter_mut().zip(tails) {
        r.tail = t;
    }
    Ok(rs)
}

/// Completion with the default bound policy: initial guess `gens + 4`, one
/// doubling retry on divergence, then re-complete at `2 * top + 2` whenever
/// the quotient turns out finite-dimensional with top normal degree `top`.
pub fn complete_auto<K: Ring>(p: &Presentation<K>) -> Result<RewriteSystem<K>, RewriteError> {
    let d0 = (p.gens.len() + 4).max(6);
    let rs = match complete(p, d0) {
        Ok(rs) => rs,
        Err(RewriteError::CompletionDiverged { .. }) => complete(p, 2 * d0)?,
        Err(e) => return Err(e),
    };
    let bound = rs.degree_bound();
    let finite = rs.normal_monomials(bound - 1)?.is_empty() && rs.normal_monomials(bound)?.is_empty();
    if finite {
        let mut top = 0;
        for d in 0..=bound {
            if !rs.normal_monomials(d)?.is_empty() {
                top = d;
            }
        }
        let needed = 2 * top + 2;
        if bound < needed {
            return complete(p, needed);
        }
    }
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use num_traits::{One, Zero};
    use crate::freealg::parse::parse_poly;
    use crate::freealg::PresentationMode;
    use crate::scalar::parse::{laurent_atoms, rational_atoms};
    use crate::scalar::{Laurent, Rat, Ring};

    fn rat_pres(gens: Gens, rels: &[&str], mode: PresentationMode) -> Presentation<Rat> {
        let relations = rels
            .iter()
            .map(|r| parse_poly(&gens, &rational_atoms, r).unwrap())
            .collect();
        Presentation::new(gens, relations, mode).unwrap()
    }

    /// Relations z_i^2, z1 z2 + z2 z1 - 1 (the m = 1 hyperbolic quotient).
    fn hyperbolic_m1() -> Presentation<Rat> {
        rat_pres(
            Gens::zs(2),
            &["z1*z1", "z2*z2", "z1*z2 + z2*z1 - 1"],
            PresentationMode::Filtered,
        )
    }

    #[test]
    fn single_skew_rule() {
        let gens = Gens::xs(2);
        let syms = Laurent::ring(&["q"]);
        let at = laurent_atoms(&syms);
        let rel = parse_poly::<Laurent>(&gens, &at, "x2*x1 - q^-1*x1*x2").unwrap();
        let p = Presentation::new(gens, vec![rel], PresentationMode::Quadratic).unwrap();
        let rs = complete(&p, 4).unwrap();
        assert_eq!(rs.rules().len(), 1);
        let q = Laurent::sym(&syms, 0);
        let nf = rs
            .normal_form(&NCPoly::from_word(Word(vec![1, 0])))
            .unwrap();
        assert_eq!(nf, NCPoly::term(Word(vec![0, 1]), q.inv().unwrap()));
    }

    #[test]
    fn hyperbolic_m1_completes() {
        let rs = complete(&hyperbolic_m1(), 6).unwrap();
        let basis = rs.cumulative_basis(4).unwrap();
        let names: Vec<String> = basis.iter().map(|w| rs.gens().render_word(w)).collect();
        assert_eq!(names, vec!["1", "z1", "z2", "z1*z2"]);
    }

    #[test]
    fn hyperbolic_m1_normal_forms() {
        let rs = complete(&hyperbolic_m1(), 6).unwrap();
        // z2 z1 -> 1 - z1 z2
        let nf = rs
            .normal_form(&NCPoly::from_word(Word(vec![1, 0])))
            .unwrap();
        let expected = parse_poly(rs.gens(), &rational_atoms, "1 - z1*z2").unwrap();
        assert_eq!(nf, expected);
        // z1 z2 z1 -> z1
        let nf = rs
            .normal_form(&NCPoly::from_word(Word(vec![0, 1, 0])))
            .unwrap();
        assert_eq!(nf, NCPoly::gen(0));
    }

    #[test]
    fn exterior_algebra_on_three_generators() {
        let p = rat_pres(
            Gens::xs(3),
            &[
                "x1*x1",
                "x2*x2",
                "x3*x3",
                "x1*x2 + x2*x1",
                "x1*x3 + x3*x1",
                "x2*x3 + x3*x2",
            ],
            PresentationMode::Quadratic,
        );
        let rs = complete(&p, 6).unwrap();
        assert_eq!(rs.rules().len(), 6);
        let dims = rs.hilbert_dims(4).unwrap();
        assert_eq!(dims, vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn commutative_polynomial_monomial_count() {
        let p = rat_pres(
            Gens::xs(2),
            &["x2*x1 - x1*x2"],
            PresentationMode::Quadratic,
        );
        let rs = complete(&p, 6).unwrap();
        assert_eq!(rs.normal_monomials(3).unwrap().len(), 4);
    }

    #[test]
    fn structure_constants_of_hyperbolic_m1() {
        let rs = complete_auto(&hyperbolic_m1()).unwrap();
        let alg = rs.structure_constants().unwrap();
        assert_eq!(alg.dim(), 4);
        // Basis order: 1, z1, z2, z1z2. z1 * z2 = z1z2; z2 * z1 = 1 - z1z2.
        assert_eq!(alg.table(1, 2), &[(3, Rat::from_i64(1))]);
        assert_eq!(
            alg.table(2, 1),
            &[(0, Rat::from_i64(1)), (3, Rat::from_i64(-1))]
        );
        alg.verify_associativity_exhaustive().unwrap();
        alg.verify_unit().unwrap();
    }

    #[test]
    fn one_generator_square_zero() {
        let p = rat_pres(Gens::xs(1), &["x1*x1"], PresentationMode::Quadratic);
        let rs = complete_auto(&p).unwrap();
        let alg = rs.structure_constants().unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn empty_generator_list_is_the_scalars() {
        let p = Presentation::<Rat>::new(Gens::new(vec![]), vec![], PresentationMode::Filtered)
            .unwrap();
        let rs = complete(&p, 4).unwrap();
        let alg = rs.structure_constants().unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let rs = complete(&hyperbolic_m1(), 6).unwrap();
        let w = NCPoly::<Rat>::from_word(Word(vec![0, 1, 0, 1, 0, 1, 0]));
        assert!(matches!(
            rs.normal_form(&w),
            Err(RewriteError::DegreeExceedsBound { degree: 7, bound: 6 })
        ));
    }

    #[test]
    fn confluence_witness_random_products() {
        use rand::{Rng, SeedableRng};
        let rs = complete(&hyperbolic_m1(), 8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len_a = rng.gen_range(0..3);
            let len_b = rng.gen_range(0..3);
            let wa = Word((0..len_a).map(|_| rng.gen_range(0..2u8)).collect());
            let wb = Word((0..len_b).map(|_| rng.gen_range(0..2u8)).collect());
            let a = NCPoly::<Rat>::term(wa, Rat::from_i64(rng.gen_range(-3..=3)));
            let b = NCPoly::<Rat>::term(wb, Rat::from_i64(rng.gen_range(-3..=3)));
            let lhs = rs.normal_form(&a.mul(&b)).unwrap();
            let rhs = rs
                .normal_form(&rs.normal_form(&a).unwrap().mul(&rs.normal_form(&b).unwrap()))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn non_unit_lead_coefficient_over_laurent() {
        let gens = Gens::xs(2);
        let syms = Laurent::ring(&["q"]);
        let at = laurent_atoms(&syms);
        // (1+q) x2 x1 - x1 x2: lead coefficient 1+q is not a unit.
        let rel = parse_poly::<Laurent>(&gens, &at, "q*x2*x1 + x2*x1 - x1*x2").unwrap();
        let p = Presentation::new(gens, vec![rel], PresentationMode::Quadratic).unwrap();
        assert!(matches!(
            complete(&p, 4),
            Err(RewriteError::NonUnitLeadingCoefficient { .. })
        ));
    }
}
