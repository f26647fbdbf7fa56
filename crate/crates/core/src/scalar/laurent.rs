//! Multivariate Laurent polynomials over Q, with a symbol list fixed per
//! session. Units are exactly the single terms; nothing here ever builds a
//! fraction of polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Rat, Ring, ScalarError};

pub type SymbolList = Arc<Vec<String>>;

type Expt = Vec<i32>;

#[derive(Clone, Debug)]
pub struct Laurent {
    syms: SymbolList,
    /// Exponent vector -> nonzero rational coefficient.
    terms: BTreeMap<Expt, Rat>,
}

impl Laurent {
    pub fn ring(names: &[&str]) -> SymbolList {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn constant(syms: &SymbolList, r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(vec![0; syms.len()], r);
        }
        Laurent {
            syms: syms.clone(),
            terms,
        }
    }

    /// The symbol with the given index, as a degree-1 monomial.
    pub fn sym(syms: &SymbolList, index: usize) -> Self {
        assert!(index < syms.len(), "symbol index out of range");
        let mut e = vec![0; syms.len()];
        e[index] = 1;
        Laurent::monomial(syms, e, Rat::one())
    }

    pub fn sym_named(syms: &SymbolList, name: &str) -> Option<Self> {
        let idx = syms.iter().position(|s| s == name)?;
        Some(Laurent::sym(syms, idx))
    }

    pub fn monomial(syms: &SymbolList, expts: Expt, coeff: Rat) -> Self {
        assert_eq!(expts.len(), syms.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(expts, coeff);
        }
        Laurent {
            syms: syms.clone(),
            terms,
        }
    }

    pub fn symbols(&self) -> &SymbolList {
        &self.syms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Evaluation homomorphism into any ring; every symbol must map to a unit.
    pub fn specialize<K: Ring>(&self, values: &[K]) -> Result<K, ScalarError> {
        if !self.syms.is_empty() && values.len() != self.syms.len() {
            return Err(ScalarError::UnassignedSymbol(
                self.syms.get(values.len()).cloned().unwrap_or_default(),
            ));
        }
        let mut out = K::zero();
        for (expts, coeff) in &self.terms {
            let mut term = K::from_rat(coeff.clone());
            for (i, &e) in expts.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if values[i].inv().is_none() {
                    return Err(ScalarError::ZeroAssigned(self.syms[i].clone()));
                }
                let p = values[i]
                    .pow_i(e as i64)
                    .ok_or_else(|| ScalarError::ZeroAssigned(self.syms[i].clone()))?;
                term = term * p;
            }
            out = out + term;
        }
        Ok(out)
    }

    pub fn specialize_map<K: Ring>(
        &self,
        assignment: &BTreeMap<String, K>,
    ) -> Result<K, ScalarError> {
        let values = self
            .syms
            .iter()
            .map(|s| {
                assignment
                    .get(s)
                    .cloned()
                    .ok_or_else(|| ScalarError::UnassignedSymbol(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.specialize(&values)
    }

    fn unify(a: &Laurent, b: &Laurent) -> (Laurent, Laurent) {
        if Arc::ptr_eq(&a.syms, &b.syms) || a.syms == b.syms {
            return (a.clone(), b.clone());
        }
        if a.syms.is_empty() {
            return (a.lift(&b.syms), b.clone());
        }
        if b.syms.is_empty() {
            return (a.clone(), b.lift(&a.syms));
        }
        panic!(
            "Laurent symbol lists differ: {:?} vs {:?} (one session, one list)",
            a.syms, b.syms
        );
    }

    fn lift(&self, syms: &SymbolList) -> Laurent {
        let terms = self
            .terms
            .iter()
            .map(|(_, c)| (vec![0; syms.len()], c.clone()))
            .collect();
        Laurent {
            syms: syms.clone(),
            terms,
        }
    }

    fn insert(&mut self, e: Expt, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Largest term in the lexicographic group order on exponent vectors.
    fn lead(&self) -> Option<(&Expt, &Rat)> {
        self.terms.iter().next_back()
    }
}

impl PartialEq for Laurent {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Laurent::unify(self, other);
        a.terms == b.terms
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = Laurent::unify(&self, &rhs);
        for (e, c) in b.terms {
            a.insert(e, c);
        }
        a
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = Laurent::unify(&self, &rhs);
        let mut out = Laurent {
            syms: a.syms.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Expt = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent {
            syms: Arc::new(vec![]),
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(&Arc::new(vec![]), Rat::one())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.syms[i].clone()),
                    _ => factors.push(format!("{}^{}", self.syms[i], x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Ring for Laurent {
    const FIELD: bool = false;

    fn from_rat(r: Rat) -> Self {
        Laurent::constant(&Arc::new(vec![]), r)
    }

    /// Only single terms are units; a multi-term inverse is never formed.
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Laurent::monomial(
            &self.syms,
            e.iter().map(|x| -x).collect(),
            c.recip(),
        ))
    }

    /// Exact division by leading-term cancellation in the lexicographic group
    /// order; returns None when the division does not terminate exactly.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (mut rem, d) = Laurent::unify(self, d);
        let (dl_e, dl_c) = d.lead().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quo = Laurent {
            syms: d.syms.clone(),
            terms: BTreeMap::new(),
        };
        let budget = 4 * (self.terms.len() + 1) * (d.terms.len() + 1) + 64;
        for _ in 0..budget {
            let Some((rl_e, rl_c)) = rem.lead().map(|(e, c)| (e.clone(), c.clone())) else {
                return Some(quo);
            };
            let qe: Expt = rl_e.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            let qc = &rl_c / &dl_c;
            let qterm = Laurent::monomial(&d.syms, qe, qc);
            rem = rem - qterm.clone() * d.clone();
            quo = quo + qterm;
        }
        None
    }

    /// Single terms with even exponents and a square coefficient.
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if e.iter().any(|&x| x % 2 != 0) {
            return None;
        }
        let r = c.sqrt()?;
        Some(Laurent::monomial(
            &self.syms,
            e.iter().map(|x| x / 2).collect(),
            r,
        ))
    }
}
