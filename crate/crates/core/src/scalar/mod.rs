//! Exact coefficient arithmetic.
//!
//! All algebra in this crate is generic over a scalar [`Ring`]. Four rings are
//! provided: arbitrary-precision rationals, Gaussian rationals, cyclotomic
//! fields Q(zeta_N), and multivariate Laurent polynomials over the rationals.
//! Floating point is deliberately absent: every result is an exact identity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

mod cyclotomic;
mod gaussian;
mod laurent;
pub mod parse;
mod rational;

pub use cyclotomic::Cyclotomic;
pub use gaussian::Gaussian;
pub use laurent::{Laurent, SymbolList};

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// An exact commutative coefficient ring.
///
/// Every implementation is an integral domain containing Q. `inv` returns
/// `None` exactly on the non-units (for the fields, on zero; for Laurent
/// polynomials, on everything that is not a single term). Division of
/// multi-term Laurent values is a hard error by design, never a fraction.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + 'static
{
    /// True when every nonzero element is invertible.
    const FIELD: bool;

    fn from_rat(r: Rat) -> Self;

    /// Multiplicative inverse, when the element is a unit.
    fn inv(&self) -> Option<Self>;

    /// Exact quotient `q` with `self = q * d`, when one exists.
    fn div_exact(&self, d: &Self) -> Option<Self>;

    /// A square root in the same ring, when one exists. The returned root is
    /// deterministic (documented per ring).
    fn sqrt(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// Integer power, negative exponents through `inv`.
    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        Some(out)
    }
}

/// Errors from scalar-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// A Laurent symbol was assigned a non-unit (e.g. zero) value.
    ZeroAssigned(String),
    /// A Laurent symbol had no assignment.
    UnassignedSymbol(String),
    /// Operands belong to different ring instances (symbol lists or orders).
    RingMismatch(String),
    /// Inversion of a non-unit was requested.
    NotInvertible(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::ZeroAssigned(s) => write!(f, "symbol `{s}` assigned a non-unit value"),
            ScalarError::UnassignedSymbol(s) => write!(f, "symbol `{s}` has no assignment"),
            ScalarError::RingMismatch(s) => write!(f, "ring mismatch: {s}"),
            ScalarError::NotInvertible(s) => write!(f, "not invertible: {s}"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// Render a scalar for embedding as a coefficient: wraps sums in parentheses.
pub fn coeff_string<K: Ring>(c: &K) -> String {
    let s = c.to_string();
    let inner = s.trim_start_matches('-');
    if inner.contains('+') || inner.contains('-') {
        format!("({s})")
    } else {
        s
    }
}
