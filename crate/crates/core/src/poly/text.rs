//! Text form of polynomials: `3/2*x0^2*y1 - x1 + 5`. The `*` between factors
//! is optional, so `3x0^2 y1` parses too. Printing then parsing returns the
//! same polynomial.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Monomial, Polynomial, RingSpec};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("bad exponent {0:?}")]
    BadExponent(String),
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("empty term at offset {0}")]
    EmptyTerm(usize),
}

impl<F: Field> Polynomial<F> {
    pub fn parse(ring: &Arc<RingSpec>, field: &F, text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut out = Polynomial::zero(ring, field);
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };

        skip_ws(&mut pos);
        if pos == chars.len() {
            return Ok(out);
        }
        let mut first = true;
        while pos < chars.len() {
            skip_ws(&mut pos);
            let mut negative = false;
            if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                negative = chars[pos] == '-';
                pos += 1;
            } else if !first {
                return Err(ParseError::Unexpected(chars[pos], pos));
            }
            first = false;
            let start = pos;
            let mut coef = field.one();
            let mut mono = ring.one();
            let mut factors = 0;
            loop {
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] == '+' || chars[pos] == '-' {
                    break;
                }
                if chars[pos] == '*' {
                    if factors == 0 {
                        return Err(ParseError::Unexpected('*', pos));
                    }
                    pos += 1;
                    continue;
                }
                let c = chars[pos];
                if c.is_ascii_digit() {
                    let s = pos;
                    while pos < chars.len()
                        && (chars[pos].is_ascii_digit() || chars[pos] == '/')
                    {
                        pos += 1;
                    }
                    let lit: String = chars[s..pos].iter().collect();
                    let val = field
                        .parse(&lit)
                        .map_err(|_| ParseError::BadCoefficient(lit.clone()))?;
                    coef = field.mul(&coef, &val);
                } else if c.is_ascii_alphabetic() {
                    let s = pos;
                    pos += 1;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let name: String = chars[s..pos].iter().collect();
                    let var = ring
                        .var_by_name(&name)
                        .ok_or_else(|| ParseError::UnknownVariable(name.clone()))?;
                    skip_ws(&mut pos);
                    let mut e = 1u16;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        skip_ws(&mut pos);
                        let s = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let lit: String = chars[s..pos].iter().collect();
                        e = lit.parse().map_err(|_| ParseError::BadExponent(lit.clone()))?;
                    }
                    let cur = mono.exponent(var);
                    mono.set_exponent(var, cur + e);
                } else {
                    return Err(ParseError::Unexpected(c, pos));
                }
                factors += 1;
            }
            if factors == 0 {
                return Err(ParseError::EmptyTerm(start));
            }
            if negative {
                coef = field.neg(&coef);
            }
            out = &out + &Polynomial::term(ring, field, mono, coef);
        }
        Ok(out)
    }
}

impl RingSpec {
    /// A monomial with this ring's variable names, `1` for the unit.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut out = String::new();
        write_monomial(&mut out, self, m).expect("writing to a string");
        out
    }
}

fn write_monomial<W: fmt::Write>(f: &mut W, ring: &RingSpec, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in ring.vars() {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.var_name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        let one = field.format(&field.one());
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let text = field.format(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != one {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, self.ring(), m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TypeTuple;
    use crate::scalar::{PrimeField, Rationals};

    #[test]
    fn print_and_parse() {
        let s = Arc::new(RingSpec::s(&TypeTuple::new([0, 2, 2, 4]).unwrap()));
        let p = Polynomial::parse(&s, &Rationals, "3/2*x0^2*y1 - x1 + 5 + y3^2").unwrap();
        assert_eq!(p.to_string(), "3/2*x0^2*y1 + y3^2 - x1 + 5");
        let q = Polynomial::parse(&s, &Rationals, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn optional_star_and_juxtaposition() {
        let r = Arc::new(RingSpec::p(2));
        let a = Polynomial::parse(&r, &Rationals, "2x0^2x1 - x2 x1").unwrap();
        let b = Polynomial::parse(&r, &Rationals, "2*x0^2*x1 - x1*x2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fiber_names_follow_ring() {
        let ty = TypeTuple::new([2, 2, 2, 2]).unwrap();
        let u = Arc::new(RingSpec::u(&ty));
        assert!(Polynomial::parse(&u, &Rationals, "x0*z1 + z3").is_ok());
        assert_eq!(
            Polynomial::parse(&u, &Rationals, "y1").unwrap_err(),
            ParseError::UnknownVariable("y1".into())
        );
    }

    #[test]
    fn prime_field_text() {
        let r = Arc::new(RingSpec::p(1));
        let f = PrimeField::new(7).unwrap();
        let p = Polynomial::parse(&r, &f, "-x0 + 1/2*x1").unwrap();
        assert_eq!(p.to_string(), "6*x0 + 4*x1");
        assert_eq!(Polynomial::parse(&r, &f, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        let r = Arc::new(RingSpec::p(1));
        assert!(Polynomial::parse(&r, &Rationals, "x0 +").is_err());
        assert!(Polynomial::parse(&r, &Rationals, "x0 x").is_err());
        assert!(Polynomial::parse(&r, &Rationals, "x0 ? 1").is_err());
        assert!(Polynomial::parse(&r, &Rationals, "*x0").is_err());
        assert!(Polynomial::parse(&r, &Rationals, "").unwrap().is_zero());
        assert!(Polynomial::parse(&r, &Rationals, "x0 - x0").unwrap().is_zero());
    }
}
