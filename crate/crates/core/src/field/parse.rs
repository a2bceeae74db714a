//! Integer polynomial parser for field descriptors.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly  := ['+'|'-'] term (('+'|'-') term)*
//! term  := int ['*'] 'x' ['^' int] | 'x' ['^' int] | int
//! ```
//!
//! Terms of equal degree are summed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in {:?}", self.pos, self.src))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

/// Parses an integer polynomial in `x`; returns coefficients, constant term first,
/// without trailing zeros.
pub fn parse_polynomial(src: &str) -> Result<Vec<BigInt>> {
    let mut cur = Cursor {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        src,
    };
    if cur.chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let raw: Vec<char> = src.chars().collect();
    let mut last_digit = None;
    for (i, c) in raw.iter().enumerate() {
        if c.is_ascii_digit() {
            if last_digit.is_some_and(|j: usize| raw[j + 1..i].iter().any(|c| c.is_whitespace())) {
                return Err(Error::Parse(format!("digits split by whitespace in {src:?}")));
            }
            last_digit = Some(i);
        } else if !c.is_whitespace() {
            last_digit = None;
        }
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => return Err(cur.err("expected '+' or '-'")),
        };
        first = false;
        let number = cur.digits();
        let mut degree = 0usize;
        let has_star = cur.peek() == Some('*');
        if has_star {
            if number.is_none() {
                return Err(cur.err("'*' without a coefficient"));
            }
            cur.bump();
        }
        if cur.peek() == Some('x') {
            cur.bump();
            degree = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                let e = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
                degree = e.parse().map_err(|_| cur.err("exponent too large"))?;
                if degree > 64 {
                    return Err(cur.err("exponent too large"));
                }
            }
        } else if has_star {
            return Err(cur.err("expected 'x' after '*'"));
        } else if number.is_none() {
            return Err(cur.err("expected a term"));
        }
        let mut c: BigInt = match number {
            Some(digits) => digits.parse().expect("digit string"),
            None => BigInt::one(),
        };
        if negative {
            c = -c;
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, BigInt::zero());
        }
        coeffs[degree] += c;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Extracts the polynomial from a descriptor file: a line `f = <poly>`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_descriptor(text: &str) -> Result<Vec<BigInt>> {
    let mut found = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `f = <polynomial>`, got {line:?}")))?;
        if lhs.trim() != "f" {
            return Err(Error::Parse(format!("unknown descriptor key {:?}", lhs.trim())));
        }
        if found.is_some() {
            return Err(Error::Parse("descriptor defines f twice".into()));
        }
        found = Some(parse_polynomial(rhs)?);
    }
    found.ok_or_else(|| Error::Parse("descriptor has no `f = ...` line".into()))
}

/// Renders integer coefficients (constant first) as `x^2+1` style text.
pub fn format_polynomial(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < BigInt::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let show_mag = i == 0 || !mag.is_one();
        if show_mag {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_polynomial("x^2+1").unwrap(), ints(&[1, 0, 1]));
        assert_eq!(parse_polynomial(" x^3 - x - 1 ").unwrap(), ints(&[-1, -1, 0, 1]));
        assert_eq!(parse_polynomial("-2+x^2").unwrap(), ints(&[-2, 0, 1]));
        assert_eq!(parse_polynomial("3x^2 + 2*x").unwrap(), ints(&[0, 2, 3]));
        assert_eq!(parse_polynomial("x").unwrap(), ints(&[0, 1]));
        assert_eq!(parse_polynomial("2").unwrap(), ints(&[2]));
        assert_eq!(parse_polynomial("x^2 + x + x - 2x").unwrap(), ints(&[0, 0, 1]));
        assert_eq!(parse_polynomial("x^0 + x^1").unwrap(), ints(&[1, 1]));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x^", "2*", "x y", "x^2 ++ 1", "*x", "x^2 1", "x^a"] {
            assert!(parse_polynomial(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn descriptor_files() {
        assert_eq!(parse_descriptor("f = x^2+1\n").unwrap(), ints(&[1, 0, 1]));
        assert_eq!(parse_descriptor("# quadratic\n\n f=x^2-2 \n").unwrap(), ints(&[-2, 0, 1]));
        assert!(parse_descriptor("g = x").is_err());
        assert!(parse_descriptor("").is_err());
        assert!(parse_descriptor("f = x\nf = x^2").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        for s in ["x^2+1", "x^3-x-1", "x^2-x-1", "x", "x^3-2", "-3x^4+2x-7"] {
            assert_eq!(format_polynomial(&parse_polynomial(s).unwrap()), s);
        }
    }
}
