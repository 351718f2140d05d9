//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//! Variables are `x1..xn` in a source ring and `X1..Xp` in a target ring.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, RingTag};

pub fn parse_poly(text: &str, ring: RingTag) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: RingTag,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.checked_mul(&self.unary()?)?;
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                Err(self.syntax("expected operator (implicit multiplication is not allowed)"))
            }
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow_truncated(e, None));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a non-negative integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = Rational::from_integer(num);
                if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.syntax("division by zero"));
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.ring, q))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let unknown = || Error::UnknownVariable {
            name: name.to_string(),
            pos: start,
        };
        let rest = name
            .strip_prefix(self.ring.prefix())
            .ok_or_else(unknown)?;
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let idx: usize = rest.parse().map_err(|_| unknown())?;
        if idx == 0 || idx > self.ring.nvars {
            return Err(unknown());
        }
        Ok(Polynomial::var(self.ring, idx - 1))
    }
}

/// Parses a rational literal `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p = parse_poly(text, RingTag::source(0))?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "expected a rational constant".into(),
        });
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use num_traits::One;

    fn src2() -> RingTag {
        RingTag::source(2)
    }

    #[test]
    fn reads_terms() {
        let p = parse_poly("x1^2 - 3/2*x1*x2", src2()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![2, 0])), Rational::one());
        assert_eq!(
            p.coeff(&Monomial::from_exponents(vec![1, 1])),
            Rational::new(-3, 2)
        );
    }

    #[test]
    fn zero_and_identities() {
        assert!(parse_poly("0", src2()).unwrap().is_zero());
        assert_eq!(
            parse_poly("x1*(x1 + 1) - x1", src2()).unwrap(),
            parse_poly("x1^2", src2()).unwrap()
        );
        assert_eq!(
            parse_poly("-x1^2", src2()).unwrap(),
            parse_poly("-(x1^2)", src2()).unwrap()
        );
    }

    #[test]
    fn error_positions() {
        match parse_poly("x1 + * x2", src2()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("2x1", src2()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x1", src2()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x1^-1", src2()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", src2()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(
            parse_poly("x3", src2()),
            Err(Error::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_poly("x1 + X1", src2()),
            Err(Error::UnknownVariable { pos: 5, .. })
        ));
        assert!(matches!(
            parse_poly("y", src2()),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::new(-3, 4));
        assert!(parse_rational("x1").is_err());
    }
}
