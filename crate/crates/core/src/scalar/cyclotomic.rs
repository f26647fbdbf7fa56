//! The cyclotomic field Q(zeta_N), elements reduced mod the N-th cyclotomic
//! polynomial. Order 1 doubles as the plain rational constant, so `zero()`
//! and `one()` embed into any session order on first contact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rat, Ring};

// Dense univariate polynomials over Q, lowest degree first, no trailing zeros.
type UPoly = Vec<Rat>;

fn up_trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn up_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    up_trim(&mut out);
    out
}

fn up_divmod(num: &UPoly, den: &UPoly) -> (UPoly, UPoly) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.clone();
    let mut quo = vec![Rat::zero(); num.len().saturating_sub(den.len() - 1)];
    let lead = den.last().unwrap();
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() / lead;
        quo[shift] = factor.clone();
        for (i, c) in den.iter().enumerate() {
            let v = &rem[shift + i] - &(c * &factor);
            rem[shift + i] = v;
        }
        up_trim(&mut rem);
        if rem.len() >= den.len() && rem.last().unwrap().is_zero() {
            up_trim(&mut rem);
        }
    }
    up_trim(&mut quo);
    (quo, rem)
}

/// x^n - 1.
fn up_xn_minus_1(n: usize) -> UPoly {
    let mut p = vec![Rat::zero(); n + 1];
    p[0] = -Rat::one();
    p[n] = Rat::one();
    p
}

/// The N-th cyclotomic polynomial, by dividing x^N - 1 by all lower Phi_d.
pub(crate) fn cyclotomic_poly(n: u32) -> UPoly {
    let mut num = up_xn_minus_1(n as usize);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = up_divmod(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// Extended Euclid in Q[x]: returns (g, s, t) with g = s*a + t*b, g monic.
fn up_ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, r) = up_divmod(&r0, &r1);
        let sn = up_sub(&s0, &up_mul(&q, &s1));
        let tn = up_sub(&t0, &up_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, sn);
        t0 = std::mem::replace(&mut t1, tn);
    }
    if let Some(l) = r0.last().cloned() {
        let li = l.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c = &*c * &li;
        }
    }
    (r0, s0, t0)
}

fn up_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        let v = &out[i] - c;
        out[i] = v;
    }
    up_trim(&mut out);
    out
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    /// Root-of-unity order; 1 means a plain rational constant.
    order: u32,
    /// Coefficients of 1, zeta, ..., zeta^(phi(order)-1); no trailing zeros.
    coeffs: UPoly,
}

impl Cyclotomic {
    pub fn rational(r: Rat) -> Self {
        let coeffs = if r.is_zero() { vec![] } else { vec![r] };
        Cyclotomic { order: 1, coeffs }
    }

    /// The generator zeta of Q(zeta_order).
    pub fn zeta(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic::monomial(order, 1)
    }

    fn monomial(order: u32, exp: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); exp + 1];
        coeffs[exp] = Rat::one();
        let mut v = Cyclotomic { order, coeffs };
        v.reduce();
        v
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Rational content, when the element is a constant.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn reduce(&mut self) {
        if self.order > 1 {
            let phi = cyclotomic_poly(self.order);
            if self.coeffs.len() >= phi.len() {
                let (_, r) = up_divmod(&self.coeffs, &phi);
                self.coeffs = r;
            }
        }
        up_trim(&mut self.coeffs);
    }

    /// Raise both operands to a common order. Constants lift into any order;
    /// two genuinely different orders are a caller error.
    fn unify(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        if a.order == 1 {
            let mut a2 = a.clone();
            a2.order = b.order;
            return (a2, b.clone());
        }
        if b.order == 1 {
            let mut b2 = b.clone();
            b2.order = a.order;
            return (a.clone(), b2);
        }
        panic!(
            "cyclotomic order mismatch: {} vs {} (one session, one order)",
            a.order, b.order
        );
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclotomic::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = Cyclotomic::unify(&self, &rhs);
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), Rat::zero());
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let v = &a.coeffs[i] + c;
            a.coeffs[i] = v;
        }
        up_trim(&mut a.coeffs);
        a
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = Cyclotomic::unify(&self, &rhs);
        let mut out = Cyclotomic {
            order: a.order,
            coeffs: up_mul(&a.coeffs, &b.coeffs),
        };
        out.reduce();
        out
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::rational(Rat::one())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &Rat::zero() { -c.clone() } else { c.clone() };
            if first {
                if c < &Rat::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Rat::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "zeta")?;
                    } else {
                        write!(f, "zeta^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring for Cyclotomic {
    const FIELD: bool = true;

    fn from_rat(r: Rat) -> Self {
        Cyclotomic::rational(r)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Cyclotomic::rational(self.coeffs[0].recip()));
        }
        let phi = cyclotomic_poly(self.order);
        let (g, s, _) = up_ext_gcd(&self.coeffs, &phi);
        debug_assert_eq!(g.len(), 1, "cyclotomic polynomial not coprime to unit");
        let ginv = g[0].recip();
        let mut coeffs = s;
        for c in coeffs.iter_mut() {
            *c = &*c * &ginv;
        }
        let mut out = Cyclotomic {
            order: self.order,
            coeffs,
        };
        out.reduce();
        Some(out)
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }

    /// Searches roots of the form r * zeta^e with rational r, smallest
    /// exponent e first.
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Cyclotomic::zero());
        }
        let order = self.order.max(2);
        for e in 0..order {
            let cand = Cyclotomic::monomial(order, (2 * e as usize) % order as usize);
            let Some(q) = self.clone().div_exact(&cand) else {
                continue;
            };
            if let Some(r) = q.as_rational().and_then(|r| r.sqrt()) {
                let root = Cyclotomic::rational(r) * Cyclotomic::monomial(order, e as usize);
                debug_assert_eq!(root.clone() * root.clone(), *self);
                return Some(root);
            }
        }
        None
    }
}
