//! Parser for the polynomial text grammar.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' posint)?
//! coeff  := int | int '/' posint
//! ```
//!
//! Whitespace-insensitive. Variables are the fixed names of the target ring.
//! `/` is only legal inside a coefficient.

use thiserror::Error;

use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingId};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

/// Parses `text` into a polynomial over `field` in `ring`, reducing
/// coefficients into the field.
pub fn parse_poly<K: Field>(
    text: &str,
    ring: RingId,
    field: K,
) -> Result<Polynomial<K>, ParseError> {
    let mut sc = Scanner::new(text);
    let mut out = Polynomial::zero(field.clone(), ring);

    let mut sign_neg = match sc.peek() {
        Some(b'-') => {
            sc.bump();
            true
        }
        Some(b'+') => {
            sc.bump();
            false
        }
        Some(_) => false,
        None => return err(0, "empty input"),
    };

    loop {
        let (mono, coeff) = parse_term(&mut sc, ring, &field)?;
        let coeff = if sign_neg { field.neg(&coeff) } else { coeff };
        out.add_term(mono, coeff);

        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.bump();
                sign_neg = false;
            }
            Some(b'-') => {
                sc.bump();
                sign_neg = true;
            }
            Some(c) => {
                return err(
                    sc.pos,
                    format!("expected '+' or '-', found '{}'", c as char),
                )
            }
        }
    }
    Ok(out)
}

fn parse_term<K: Field>(
    sc: &mut Scanner<'_>,
    ring: RingId,
    field: &K,
) -> Result<(Monomial, K::Elem), ParseError> {
    let mut exps = vec![0u8; ring.arity()];
    let coeff;

    match sc.peek() {
        Some(c) if c.is_ascii_digit() => {
            coeff = parse_coeff(sc, field)?;
        }
        Some(c) if c == b'x' => {
            coeff = field.one();
            parse_factor(sc, ring, &mut exps)?;
        }
        Some(c) => return err(sc.pos, format!("expected a term, found '{}'", c as char)),
        None => return err(sc.pos, "expected a term, found end of input"),
    }

    while sc.peek() == Some(b'*') {
        sc.bump();
        match sc.peek() {
            Some(b'x') => parse_factor(sc, ring, &mut exps)?,
            Some(c) if c.is_ascii_digit() => {
                return err(sc.pos, "coefficient must lead its term");
            }
            Some(c) => {
                return err(
                    sc.pos,
                    format!("expected a variable, found '{}'", c as char),
                )
            }
            None => return err(sc.pos, "expected a variable, found end of input"),
        }
    }
    if sc.peek() == Some(b'/') {
        return err(sc.pos, "'/' is only allowed inside a coefficient");
    }
    if sc.peek() == Some(b'^') {
        return err(sc.pos, "'^' must follow a variable");
    }

    Ok((Monomial::from_exponents(&exps), coeff))
}

fn parse_coeff<K: Field>(sc: &mut Scanner<'_>, field: &K) -> Result<K::Elem, ParseError> {
    let pos = sc.pos;
    let digits = sc.digits();
    if digits.is_empty() {
        return err(pos, "expected an integer");
    }
    let mut value = field.from_int_str(digits);
    if sc.peek() == Some(b'/') {
        sc.bump();
        let dpos = sc.pos;
        let den = sc.digits();
        if den.is_empty() {
            return err(dpos, "expected a positive integer denominator");
        }
        if den.bytes().all(|b| b == b'0') {
            return err(dpos, "denominator must be positive");
        }
        let den = field.from_int_str(den);
        let inv = field.inv(&den).ok_or(ParseError {
            pos: dpos,
            msg: "denominator is not invertible in the field".into(),
        })?;
        value = field.mul(&value, &inv);
    }
    Ok(value)
}

fn parse_factor(sc: &mut Scanner<'_>, ring: RingId, exps: &mut [u8]) -> Result<(), ParseError> {
    let pos = sc.pos;
    let name = sc.ident();
    let Some(idx) = ring.var_index(name) else {
        return err(pos, format!("unknown variable '{name}' for ring {ring}"));
    };
    let mut exp = 1u32;
    if sc.peek() == Some(b'^') {
        sc.bump();
        let epos = sc.pos;
        let digits = sc.digits();
        if digits.is_empty() {
            return err(epos, "expected an exponent");
        }
        exp = digits.parse::<u32>().map_err(|_| ParseError {
            pos: epos,
            msg: "malformed exponent".into(),
        })?;
        if exp == 0 {
            return err(epos, "exponent must be a positive integer");
        }
        if exp > u8::MAX as u32 {
            return err(epos, "exponent too large");
        }
    }
    let total = exps[idx] as u32 + exp;
    if total > u8::MAX as u32 {
        return err(pos, "exponent too large");
    }
    exps[idx] = total as u8;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::Monomial;

    #[test]
    fn direct_transcription() {
        let p = parse_poly("x0^2*x1 + 3*x1*x2^2", RingId::Curve, Rationals).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert!(Rationals.is_one(&p.coeff(&Monomial::from_exponents(&[2, 1, 0]))));
        assert_eq!(
            p.coeff(&Monomial::from_exponents(&[0, 1, 2])),
            Rationals.from_i64(3)
        );
    }

    #[test]
    fn unknown_variable_for_ring() {
        let e = parse_poly("x0 + x00", RingId::Curve, Rationals).unwrap_err();
        assert!(e.msg.contains("unknown variable 'x00'"), "{e}");
        assert_eq!(e.pos, 5);
    }

    #[test]
    fn division_outside_coefficient_rejected() {
        assert!(parse_poly("x0/2", RingId::Curve, Rationals).is_err());
        assert!(parse_poly("1/2*x0", RingId::Curve, Rationals).is_ok());
    }

    #[test]
    fn malformed_exponent() {
        assert!(parse_poly("x0^", RingId::Curve, Rationals).is_err());
        assert!(parse_poly("x0^0", RingId::Curve, Rationals).is_err());
        assert!(parse_poly("x0^x1", RingId::Curve, Rationals).is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_poly(" x0 ^2 * x1+ 3 * x2 ^ 3 ", RingId::Curve, Rationals).unwrap();
        let b = parse_poly("x0^2*x1+3*x2^3", RingId::Curve, Rationals).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn leading_sign_and_constants() {
        let p = parse_poly("-x0 + 1", RingId::Curve, Rationals).unwrap();
        assert_eq!(p.to_string(), "-x0 + 1");
        let z = parse_poly("0", RingId::Curve, Rationals).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn coefficients_reduce_into_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly("10*x0 + 1/2*x1", RingId::Curve, f).unwrap();
        assert_eq!(p.coeff(&Monomial::var(3, 0)), 3);
        assert_eq!(p.coeff(&Monomial::var(3, 1)), 4); // 1/2 = 4 mod 7
        assert!(parse_poly("1/7*x0", RingId::Curve, f).is_err());
    }

    #[test]
    fn roundtrip_examples() {
        for text in [
            "x0^2 - x1*x2",
            "2*x0^3 + x0*x1*x2 - 5*x2^3",
            "x00*x11 - x01^2",
        ] {
            let ring = if text.contains("x00") {
                RingId::Ambient
            } else {
                RingId::Curve
            };
            let p = parse_poly(text, ring, Rationals).unwrap();
            let rendered = p.to_string();
            assert_eq!(parse_poly(&rendered, ring, Rationals).unwrap(), p);
        }
    }
}
