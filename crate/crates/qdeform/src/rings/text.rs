//! Text format for exact values.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+')* atom ('^' int)?
//! atom   := integer | 'q' | 'x' | '(' expr ')'
//! ```
//!
//! Both ascending and descending power order parse; output is always
//! descending and fully reduced. Rational constants are written with `/`,
//! so `5/2*q^2` means `(5/2) * q^2` under the usual left-associative rules.
//! Parse errors carry the byte position of the offending token.

use num::bigint::BigInt;

use super::bivar::RatFuncQX;
use super::poly::Q;
use super::ratfunc::RatFuncQ;
use crate::error::Error;

/// Parse an expression in the variables `q` and `x`.
pub fn parse_qx(input: &str) -> Result<RatFuncQX, Error> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parse an expression in `q` alone; rejects anything containing `x`.
pub fn parse_q(input: &str) -> Result<RatFuncQ, Error> {
    let v = parse_qx(input)?;
    ratfunc_q_of(&v).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "expression depends on x, expected a function of q only".into(),
    })
}

/// Parse a plain rational number such as `5/2` or `-3`.
pub fn parse_rational(input: &str) -> Result<Q, Error> {
    let v = parse_q(input)?;
    if !v.num().is_constant() || !v.den().is_one() {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a rational constant".into(),
        });
    }
    Ok(v.num().coeff(0))
}

/// Project a bivariate value down to the coefficient field when it does
/// not involve `x`.
pub fn ratfunc_q_of(v: &RatFuncQX) -> Option<RatFuncQ> {
    if v.num().is_constant() && v.den().is_constant() {
        let d = v.den().coeff(0);
        return Some(&v.num().coeff(0) / &d);
    }
    None
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFuncQX, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFuncQX, Error> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let pos = self.pos;
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFuncQX, Error> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    negate = !negate;
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut v = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e3: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let pos = self.pos;
            v = v.pow(e3).map_err(|_| Error::Parse {
                pos,
                msg: "zero raised to a negative power".into(),
            })?;
        }
        Ok(if negate { -&v } else { v })
    }

    fn atom(&mut self) -> Result<RatFuncQX, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFuncQX::q())
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFuncQX::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFuncQX::from_coeff(RatFuncQ::from_rat(Q::from_integer(
                    n,
                ))))
            }
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let mut sign = BigInt::from(1);
        if self.bytes.get(self.pos) == Some(&b'-') {
            sign = BigInt::from(-1);
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(sign * digits.parse::<BigInt>().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::{rat, PolyQ};

    #[test]
    fn parses_the_reference_expression() {
        let v = parse_q("(q^3+q^2+2*q+1)/(q+1)").unwrap();
        assert_eq!(
            v,
            RatFuncQ::new(
                PolyQ::from_int_coeffs(&[1, 2, 1, 1]),
                PolyQ::from_int_coeffs(&[1, 1]),
            )
        );
        // ascending order accepted too
        let w = parse_q("(1+2*q+q^2+q^3)/(1+q)").unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn display_round_trips() {
        let v = parse_q("(q^3+q^2+2*q+1)/(q+1)").unwrap();
        assert_eq!(parse_q(&v.to_string()).unwrap(), v);
        let u = parse_q("-1/2*q+1").unwrap();
        assert_eq!(parse_q(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn rational_coefficients() {
        let v = parse_q("5/2*q^2").unwrap();
        assert_eq!(v, RatFuncQ::from_poly(PolyQ::monomial(rat(5, 2), 2)));
    }

    #[test]
    fn bivariate_and_projection() {
        let v = parse_qx("(q*x+1-q)/((q-1)*x+1)").unwrap();
        assert!(ratfunc_q_of(&v).is_none());
        assert!(parse_q("q*x").is_err());
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse_q("q^-1").unwrap(), RatFuncQ::var_pow(-1));
    }

    #[test]
    fn error_positions() {
        match parse_q("q^2 + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_q("(q+1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rational_input() {
        assert_eq!(parse_rational("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert!(parse_rational("q").is_err());
    }
}
