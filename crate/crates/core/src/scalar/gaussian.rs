//! Gaussian rationals a + b*i.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rat, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gaussian {
    pub re: Rat,
    pub im: Rat,
}

impl Gaussian {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Rat::zero(), Rat::one())
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Self) -> Self {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Self) -> Self {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Gaussian::new(re, im)
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(Rat::one(), Rat::zero())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            first = false;
        }
        if !self.im.is_zero() {
            if first {
                if self.im == -Rat::one() {
                    write!(f, "-")?;
                } else if self.im != Rat::one() {
                    write!(f, "{}*", self.im)?;
                }
            } else if self.im.is_negative() {
                if self.im == -Rat::one() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " - {}*", -self.im.clone())?;
                }
            } else if self.im == Rat::one() {
                write!(f, " + ")?;
            } else {
                write!(f, " + {}*", self.im)?;
            }
            write!(f, "i")?;
        }
        Ok(())
    }
}

impl Ring for Gaussian {
    const FIELD: bool = true;

    fn from_rat(r: Rat) -> Self {
        Gaussian::new(r, Rat::zero())
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let ni = n.recip();
        Some(Gaussian::new(&self.re * &ni, -(&self.im * &ni)))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }

    /// Roots are ordered by (re, im); the larger of the two roots of x^2 = v
    /// is returned, so real positive squares give the positive real root.
    fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if let Some(r) = self.re.sqrt() {
                return Some(Gaussian::new(r, Rat::zero()));
            }
            // re < 0 with |re| a square gives a purely imaginary root.
            let r = (-self.re.clone()).sqrt()?;
            return Some(Gaussian::new(Rat::zero(), r));
        }
        // (x + yi)^2 = a + bi: x^2 = (a + |v|)/2, y = b/(2x).
        let norm_root = self.norm().sqrt()?;
        let two = Rat::from_i64(2);
        let x2 = (&self.re + &norm_root) / &two;
        let x = x2.sqrt()?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / &(&two * &x);
        let cand = Gaussian::new(x, y);
        debug_assert_eq!(cand.clone() * cand.clone(), *self);
        Some(cand)
    }
}
