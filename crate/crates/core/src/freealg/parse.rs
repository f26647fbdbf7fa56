//! Textual polynomial grammar: `x1*x2 - 4*x2*x1 + 1`. Terms are separated by
//! top-level `+`/`-`; factors by `*`. A factor is a generator name (optionally
//! `^e` with e >= 0), or a scalar factor handled by the ring's atom resolver.

use crate::scalar::parse::{AtomFn, ParseError};
use crate::scalar::Ring;

use super::{Gens, NCPoly, Word};

pub fn parse_poly<K: Ring>(
    gens: &Gens,
    atoms: AtomFn<'_, K>,
    text: &str,
) -> Result<NCPoly<K>, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError("empty polynomial".into()));
    }
    let mut out = NCPoly::zero();
    for (sign, term) in split_terms(&compact)? {
        let (word, mut coeff) = parse_term(gens, atoms, &term)?;
        if sign < 0 {
            coeff = -coeff;
        }
        out.add_term(word, coeff);
    }
    Ok(out)
}

/// Splits on `+`/`-` not directly after `^` or at an exponent sign position.
fn split_terms(s: &str) -> Result<Vec<(i32, String)>, ParseError> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if cur.is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(ParseError(format!("dangling sign in `{s}`")));
    }
    terms.push((sign, cur));
    Ok(terms)
}

fn parse_term<K: Ring>(
    gens: &Gens,
    atoms: AtomFn<'_, K>,
    term: &str,
) -> Result<(Word, K), ParseError> {
    let mut coeff = K::one();
    let mut letters: Vec<usize> = Vec::new();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(ParseError(format!("stray `*` in `{term}`")));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| ParseError(format!("bad exponent `{e}`")))?;
                (b, exp)
            }
            None => (factor, 1),
        };
        if let Some(g) = gens.index_of(base) {
            if exp < 0 {
                return Err(ParseError(format!("negative power of generator `{base}`")));
            }
            for _ in 0..exp {
                letters.push(g);
            }
        } else {
            let atom = crate::scalar::parse::parse_scalar(atoms, factor)?;
            coeff = coeff * atom;
        }
    }
    Ok((Word::from_indices(&letters), coeff))
}
