//! Free associative algebras: words in noncommuting generators, graded
//! noncommutative polynomials, and presentations by relations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::{coeff_string, Ring};

pub mod parse;

/// A word in the generators, ordered degree-lexicographically: shorter words
/// first, equal lengths compared by generator index. The generator list order
/// therefore fixes every monomial order downstream.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn from_indices(ix: &[usize]) -> Self {
        Word(ix.iter().map(|&i| i as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A named generator list, shared by the objects built over it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gens(Arc<Vec<String>>);

impl Gens {
    pub fn new(names: Vec<String>) -> Self {
        assert!(names.len() <= u8::MAX as usize, "too many generators");
        Gens(Arc::new(names))
    }

    /// x1..xn.
    pub fn xs(n: usize) -> Self {
        Gens::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    /// z1..zk.
    pub fn zs(k: usize) -> Self {
        Gens::new((1..=k).map(|i| format!("z{i}")).collect())
    }

    /// y1..yk, z1..zk (the even-case Clifford generators).
    pub fn ys_zs(k: usize) -> Self {
        let mut names: Vec<String> = (1..=k).map(|i| format!("y{i}")).collect();
        names.extend((1..=k).map(|i| format!("z{i}")));
        Gens::new(names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&i| self.name(i as usize).to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A finite linear combination of words; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly<K> {
    pub terms: BTreeMap<Word, K>,
}

impl<K: Ring> NCPoly<K> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NCPoly::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        NCPoly::term(w, K::one())
    }

    pub fn gen(i: usize) -> Self {
        NCPoly::from_word(Word::gen(i))
    }

    pub fn term(w: Word, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn scalar(c: K) -> Self {
        NCPoly::term(Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Top degree, 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Some(d) when all words share the length d.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let d = it.next()?;
        it.all(|l| l == d).then_some(d)
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    /// The order-largest term.
    pub fn lead(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &NCPoly<K>) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly<K>, factor: &K) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone() * factor.clone());
        }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), -c.clone()))
            .collect();
        NCPoly { terms }
    }

    pub fn sub(&self, other: &NCPoly<K>) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn add(&self, other: &NCPoly<K>) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = NCPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.clone() * c.clone());
        }
        out
    }

    /// The free-algebra product: bilinear word concatenation.
    pub fn mul(&self, other: &NCPoly<K>) -> Self {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn map_coeffs<L: Ring>(&self, f: &impl Fn(&K) -> L) -> NCPoly<L> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter())
            .map(|&i| i as usize)
            .max()
    }

    pub fn render(&self, gens: &Gens) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Largest terms first.
        for (w, c) in self.terms.iter().rev() {
            let cs = coeff_string(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if !m.contains('(') => (true, m.to_string()),
                _ => (false, cs),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&gens.render_word(w));
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&gens.render_word(w));
            }
        }
        out
    }
}

/// nc_mul as a free function, mirroring the operation name used elsewhere.
pub fn nc_mul<K: Ring>(p: &NCPoly<K>, q: &NCPoly<K>) -> NCPoly<K> {
    p.mul(q)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresentationMode {
    /// Every relation homogeneous of degree 2.
    Quadratic,
    /// Every relation has top degree 2; lower-degree tails allowed.
    Filtered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeAlgError {
    EmptyRelation,
    BadDegree(String),
    UnknownGenerator(String),
}

impl fmt::Display for FreeAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeAlgError::EmptyRelation => write!(f, "zero relation in presentation"),
            FreeAlgError::BadDegree(s) => write!(f, "bad relation degree: {s}"),
            FreeAlgError::UnknownGenerator(s) => write!(f, "unknown generator `{s}`"),
        }
    }
}

impl std::error::Error for FreeAlgError {}

/// Generators plus defining relations; all generators in degree 1.
#[derive(Clone, Debug)]
pub struct Presentation<K> {
    pub gens: Gens,
    pub relations: Vec<NCPoly<K>>,
    pub mode: PresentationMode,
}

impl<K: Ring> Presentation<K> {
    pub fn new(
        gens: Gens,
        relations: Vec<NCPoly<K>>,
        mode: PresentationMode,
    ) -> Result<Self, FreeAlgError> {
        for r in &relations {
            if r.is_zero() {
                return Err(FreeAlgError::EmptyRelation);
            }
            if let Some(m) = r.max_index() {
                if m >= gens.len() {
                    return Err(FreeAlgError::UnknownGenerator(format!("index {m}")));
                }
            }
            match mode {
                PresentationMode::Quadratic => {
                    if r.homogeneous_degree() != Some(2) {
                        return Err(FreeAlgError::BadDegree(r.render(&gens)));
                    }
                }
                PresentationMode::Filtered => {
                    if r.degree() != 2 {
                        return Err(FreeAlgError::BadDegree(r.render(&gens)));
                    }
                }
            }
        }
        Ok(Presentation {
            gens,
            relations,
            mode,
        })
    }
}
