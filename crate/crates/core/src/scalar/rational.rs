use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Rat, Ring};

fn int_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Ring for Rat {
    const FIELD: bool = true;

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self * i)
    }

    /// The non-negative root of a perfect square.
    fn sqrt(&self) -> Option<Self> {
        let n = int_sqrt(self.numer())?;
        let d = int_sqrt(self.denom())?;
        Some(Rat::new(n, d))
    }

    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
}
