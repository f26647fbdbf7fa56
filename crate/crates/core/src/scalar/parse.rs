//! Scalar literal grammar: products of factors joined by `*`, each factor a
//! rational `p/q`, a named atom (`i`, `zeta`, a Laurent symbol), optionally
//! raised to an integer power `^e` (negative exponents allowed). Whitespace
//! is ignored; `*` is mandatory between factors.

use std::str::FromStr;

use super::{Cyclotomic, Gaussian, Laurent, Rat, Ring, SymbolList};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Resolver for named atoms of a concrete ring.
pub type AtomFn<'a, K> = &'a dyn Fn(&str) -> Option<K>;

pub fn rational_atoms(_: &str) -> Option<Rat> {
    None
}

pub fn gaussian_atoms(name: &str) -> Option<Gaussian> {
    (name == "i").then(Gaussian::i)
}

pub fn cyclotomic_atoms(order: u32) -> impl Fn(&str) -> Option<Cyclotomic> {
    move |name| (name == "zeta").then(|| Cyclotomic::zeta(order))
}

pub fn laurent_atoms(syms: &SymbolList) -> impl Fn(&str) -> Option<Laurent> + '_ {
    move |name| Laurent::sym_named(syms, name)
}

/// Splits on `*` and multiplies the factors. A single leading `-` negates.
pub fn parse_scalar<K: Ring>(atoms: AtomFn<'_, K>, text: &str) -> Result<K, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut negate = false;
    while let Some(r) = rest.strip_prefix('-') {
        negate = !negate;
        rest = r;
    }
    if rest.is_empty() {
        return Err(ParseError(format!("empty scalar literal `{text}`")));
    }
    let mut out = K::one();
    for factor in rest.split('*') {
        out = out * parse_factor(atoms, factor)?;
    }
    Ok(if negate { -out } else { out })
}

fn parse_factor<K: Ring>(atoms: AtomFn<'_, K>, factor: &str) -> Result<K, ParseError> {
    if factor.is_empty() {
        return Err(ParseError("empty factor (stray `*`?)".into()));
    }
    let (base, exp) = match factor.split_once('^') {
        Some((b, e)) => {
            let exp = i64::from_str(e)
                .map_err(|_| ParseError(format!("bad exponent `{e}` in `{factor}`")))?;
            (b, exp)
        }
        None => (factor, 1),
    };
    let value = parse_base(atoms, base)?;
    value
        .pow_i(exp)
        .ok_or_else(|| ParseError(format!("`{base}` cannot be raised to {exp} (non-unit)")))
}

fn parse_base<K: Ring>(atoms: AtomFn<'_, K>, base: &str) -> Result<K, ParseError> {
    if base
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-')
    {
        let r = Rat::from_str(base).map_err(|_| ParseError(format!("bad rational `{base}`")))?;
        return Ok(K::from_rat(r));
    }
    atoms(base).ok_or_else(|| ParseError(format!("unknown atom `{base}`")))
}
