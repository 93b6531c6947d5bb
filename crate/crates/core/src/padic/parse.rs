//! Tiny expression language for element literals: integers, `p`, `z`
//! (the root of unity `ζ_{p^m}`), `+ - * /`, `^` with integer exponents and
//! parentheses. Examples: `1+p`, `z-1`, `2*p^-3 + z^4`.

use num_bigint::BigInt;

use super::{FieldDesc, PadicElement};
use crate::error::{Error, Result};

pub fn parse_element(field: &FieldDesc, src: &str) -> Result<PadicElement> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        field,
        tokens,
        pos: 0,
    };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    P,
    Z,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().map_err(|_| Error::Parse(s.clone()))?));
            }
            'p' => {
                out.push(Tok::P);
                i += 1;
            }
            'z' => {
                // accept `z` and `zeta`
                if chars[i..].iter().collect::<String>().starts_with("zeta") {
                    i += 4;
                } else {
                    i += 1;
                }
                out.push(Tok::Z);
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a FieldDesc,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<PadicElement> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PadicElement> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { &acc * &rhs } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PadicElement> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<PadicElement> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n: u64 = match self.tokens.get(self.pos) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        let r = base.pow(n);
        if neg {
            r.inv()
        } else {
            Ok(r)
        }
    }

    fn atom(&mut self) -> Result<PadicElement> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(PadicElement::from_bigint(self.field, &n)),
            Tok::P => Ok(PadicElement::p_power(self.field, 1)),
            Tok::Z => {
                if self.field.level() == 0 {
                    return Err(Error::FieldTooSmall("`z` needs cyclotomic level m >= 1".into()));
                }
                Ok(PadicElement::zeta(self.field))
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn parses_gamma_and_roots() {
        let f = FieldDesc::new(3, 2, 10).unwrap();
        let g = parse_element(&f, "1+p").unwrap();
        assert!(g.eq_at_prec(&PadicElement::from_int(&f, 4)));
        let t = parse_element(&f, "z - 1").unwrap();
        assert_eq!(t.val().exact(), Some(Rational64::new(1, 6)));
        let x = parse_element(&f, "2*p^-2").unwrap();
        assert_eq!(x.val().exact(), Some(Rational64::from_integer(-2)));
        let y = parse_element(&f, "(1+p)^2 - 1/2").unwrap();
        assert!(y.eq_at_prec(&PadicElement::from_int(&f, 16).sub_half()));
    }

    #[test]
    fn rejects_garbage() {
        let f = FieldDesc::qp(3, 10).unwrap();
        assert!(parse_element(&f, "1+q").is_err());
        assert!(parse_element(&f, "(1+p").is_err());
        assert_eq!(parse_element(&f, "z").unwrap_err().code(), "FIELD_TOO_SMALL");
    }

    trait SubHalf {
        fn sub_half(&self) -> PadicElement;
    }
    impl SubHalf for PadicElement {
        fn sub_half(&self) -> PadicElement {
            self - &PadicElement::one(self.field()).div_i64(2)
        }
    }
}
