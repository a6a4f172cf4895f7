//! Literal parsers for matrices, lists and polynomial series entries.

use std::str::FromStr;

use lvkit::formalode::TruncatedSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Splits `[[a,b],[c,d]]` into rows of trimmed entry strings.
pub fn matrix_cells(s: &str) -> Result<Vec<Vec<String>>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or("matrix must be enclosed in [ ]")?;
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or("each row must start with [")?;
        let end = body.find(']').ok_or("unterminated row")?;
        let row = &body[..end];
        if row.contains('[') {
            return Err("nested brackets inside a row".into());
        }
        if row.is_empty() {
            return Err("empty row".into());
        }
        rows.push(row.split(',').map(str::to_string).collect::<Vec<_>>());
        rest = &body[end + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err("trailing comma after last row".into());
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(format!("unexpected `{rest}` after row"));
        }
    }
    if rows.is_empty() {
        return Err("matrix has no rows".into());
    }
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(format!("matrix is not square: {n} rows but a row of length {}", r.len()));
    }
    if rows.iter().flatten().any(|c| c.is_empty()) {
        return Err("empty matrix entry".into());
    }
    Ok(rows)
}

/// Comma-separated list of values.
pub fn list<T: FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|e| format!("`{x}`: {e}")))
        .collect()
}

/// Polynomial in `t1 … tn` with rational coefficients, e.g. `1/2t1^2*t2 - 3`.
/// Plain `t` means `t1`.
pub fn series_entry(s: &str, vars: usize, order: u32) -> Result<TruncatedSeries, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty entry".into());
    }
    let mut terms = Vec::new();
    let chars = s.char_indices().peekable();
    let mut start = 0;
    let mut pieces = Vec::new();
    for (i, c) in chars {
        if (c == '+' || c == '-') && i > start {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    pieces.push(&s[start..]);
    for piece in pieces {
        terms.push(series_term(piece, vars)?);
    }
    TruncatedSeries::from_terms(vars, order, terms).map_err(|e| e.to_string())
}

fn series_term(piece: &str, vars: usize) -> Result<(Vec<u32>, BigRational), String> {
    let (negative, body) = match piece.as_bytes().first() {
        Some(b'-') => (true, &piece[1..]),
        Some(b'+') => (false, &piece[1..]),
        _ => (false, piece),
    };
    if body.is_empty() {
        return Err(format!("dangling sign in `{piece}`"));
    }
    let split = body.find('t').unwrap_or(body.len());
    let (coeff_str, mono) = body.split_at(split);
    let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
    let mut coeff = if coeff_str.is_empty() {
        if mono.is_empty() {
            return Err(format!("empty term in `{piece}`"));
        }
        BigRational::one()
    } else {
        BigRational::from_str(coeff_str).map_err(|_| format!("bad coefficient `{coeff_str}`"))?
    };
    if negative {
        coeff = -coeff;
    }
    let mut exponent = vec![0u32; vars];
    if !mono.is_empty() {
        for factor in mono.split('*') {
            let name = factor.strip_prefix('t').ok_or_else(|| format!("expected variable in `{factor}`"))?;
            let (index, power) = match name.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                None => (name, 1),
            };
            let index: usize = if index.is_empty() {
                1
            } else {
                index.parse().map_err(|_| format!("bad variable `{factor}`"))?
            };
            if index == 0 || index > vars {
                return Err(format!("variable t{index} out of range 1..={vars}"));
            }
            exponent[index - 1] += power;
        }
    }
    Ok((exponent, coeff))
}

pub fn big_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("`{s}` is not an integer"))
}
