//! Text grammar for sparse polynomials.
//!
//! Terms are `c`, `x`, `x^e`, `c*x`, `c*x^e`, `c/d*x^e`, joined by `+` or `-`,
//! with an optional leading sign. Whitespace is ignored between tokens.

use super::SparsePoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }
}

pub fn parse_poly(text: &str) -> Result<SparsePoly> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut terms: BTreeMap<u64, BigRational> = BTreeMap::new();
    let mut first = true;
    loop {
        let negative = match c.peek() {
            None if first => return c.err("empty polynomial"),
            None => break,
            Some(b'+') => {
                c.pos += 1;
                false
            }
            Some(b'-') => {
                c.pos += 1;
                true
            }
            Some(_) if first => false,
            Some(ch) => return c.err(format!("expected '+' or '-', found '{}'", ch as char)),
        };
        first = false;
        let (coeff, exp) = parse_term(&mut c)?;
        let coeff = if negative { -coeff } else { coeff };
        if terms.contains_key(&exp) {
            return Err(Error::DuplicateExponent(exp));
        }
        terms.insert(exp, coeff);
    }
    Ok(SparsePoly::from_map(terms))
}

fn parse_term(c: &mut Cursor) -> Result<(BigRational, u64)> {
    match c.peek() {
        Some(b'x') => {
            let e = parse_monomial(c)?;
            Ok((BigRational::one(), e))
        }
        Some(ch) if ch.is_ascii_digit() => {
            let num: BigInt = c.digits()?.parse().expect("digits");
            let mut coeff = BigRational::from_integer(num);
            if c.peek() == Some(b'/') {
                c.pos += 1;
                let den: BigInt = c.digits()?.parse().expect("digits");
                if den.is_zero() {
                    return c.err("zero denominator");
                }
                coeff = BigRational::new(coeff.to_integer(), den);
            }
            if c.peek() == Some(b'*') {
                c.pos += 1;
                if c.peek() != Some(b'x') {
                    return c.err("expected 'x' after '*'");
                }
                let e = parse_monomial(c)?;
                Ok((coeff, e))
            } else {
                Ok((coeff, 0))
            }
        }
        Some(ch) => c.err(format!("unexpected '{}'", ch as char)),
        None => c.err("unexpected end of input"),
    }
}

fn parse_monomial(c: &mut Cursor) -> Result<u64> {
    debug_assert_eq!(c.peek(), Some(b'x'));
    c.pos += 1;
    if c.peek() == Some(b'^') {
        c.pos += 1;
        let d = c.digits()?;
        d.parse::<u64>().or_else(|_| c.err("exponent too large"))
    } else {
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &SparsePoly) -> Vec<(u64, i64)> {
        f.terms()
            .iter()
            .map(|(e, c)| (*e, i64::try_from(c.to_integer()).unwrap()))
            .collect()
    }

    #[test]
    fn trinomial() {
        let f = parse_poly("x^20 - 10*x^2 + 9").unwrap();
        assert_eq!(ints(&f), vec![(0, 9), (2, -10), (20, 1)]);
        let g = parse_poly("x^4 - 1").unwrap();
        assert_eq!(ints(&g), vec![(0, -1), (4, 1)]);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(parse_poly("3*x^2 + 3*x^2"), Err(Error::DuplicateExponent(2)));
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_poly("x^+"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rationals_and_signs() {
        let f = parse_poly("-3/4*x^3 + x - 2").unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.terms()[2].1, BigRational::new((-3).into(), 4.into()));
        assert_eq!(f.terms()[1], (1, BigRational::one()));
    }
}
