//! Plain-text polynomial format: integer coefficients, leading first,
//! separated by spaces and/or commas; one polynomial per line; lines whose
//! first non-blank character is `#` are comments.

use num_bigint::BigInt;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

pub fn parse_polynomial(line: &str) -> Result<Polynomial<BigInt>> {
    let coeffs = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let p = Polynomial::from_leading_first(coeffs);
    if p.is_zero() {
        return Err(Error::Parse("zero polynomial".into()));
    }
    Ok(p)
}

pub fn parse_polynomials(text: &str) -> Result<Vec<Polynomial<BigInt>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_polynomial)
        .collect()
}

pub fn format_polynomial(p: &Polynomial<BigInt>) -> String {
    p.leading_first().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}
