//! Parser for the canonical polynomial text format.
//!
//! Grammar: `expr := term (("+"|"-") term)*`, `term := unary ("*" unary)*`,
//! `unary := "-" unary | atom ("^" int)?`, `atom := int | ident | "(" expr ")"`.
//! Juxtaposition is rejected.

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Ring,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('(')) => {
                    return Err(Error::Syntax {
                        pos: self.here(),
                        msg: "implicit multiplication is not allowed; use `*`".into(),
                    });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Int(s)) => {
                    self.pos += 1;
                    let k: u64 = s.parse().map_err(|_| Error::Syntax {
                        pos: at,
                        msg: format!("exponent `{s}` is too large"),
                    })?;
                    return Ok(base.pow(k));
                }
                _ => {
                    return Err(Error::Syntax { pos: at, msg: "expected an integer exponent".into() })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let p = self.ring.p() as u64;
                let v = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Poly::constant(self.ring, v as i64))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None if splits_into_vars(&name, self.ring.vars()) => Err(Error::Syntax {
                        pos: at,
                        msg: format!("implicit multiplication `{name}` is not allowed; use `*`"),
                    }),
                    None => Err(Error::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Syntax { pos: self.here(), msg: "expected `)`".into() }),
                }
            }
            Some(t) => Err(Error::Syntax { pos: at, msg: format!("unexpected token {t:?}") }),
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

/// True when `name` is a concatenation of at least two declared variables.
fn splits_into_vars(name: &str, vars: &[String]) -> bool {
    fn go(rest: &str, vars: &[String], parts: usize) -> bool {
        if rest.is_empty() {
            return parts >= 2;
        }
        vars.iter()
            .any(|v| rest.starts_with(v.as_str()) && go(&rest[v.len()..], vars, parts + 1))
    }
    go(name, vars, 0)
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { toks, pos: 0, ring, end };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.here(), msg: "trailing input".into() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn r2() -> Ring {
        PolyRing::with_vars(2, &["x", "y", "z", "u", "v"]).unwrap()
    }

    #[test]
    fn parses_f2_hypersurface() {
        let r = r2();
        let f = parse_poly("x^3+y^3+x*y*z+u*v", &r).unwrap();
        assert_eq!(f.nterms(), 4);
        assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn rejects_juxtaposition() {
        let r = r2();
        assert!(matches!(parse_poly("x^3+y^3+xyz", &r), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(parse_poly("2x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x (y)", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn zero_and_cancellation() {
        let r = r2();
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert!(parse_poly("x^2 - x^2", &r).unwrap().is_zero());
        assert!(parse_poly("2*x", &r).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let r = r2();
        assert_eq!(
            parse_poly("x + w", &r),
            Err(Error::UnknownVariable { name: "w".into(), pos: 4 })
        );
        assert!(matches!(parse_poly("x +", &r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x^y", &r), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn negatives_round_trip() {
        let r = PolyRing::with_vars(5, &["s", "t", "u"]).unwrap();
        let f = parse_poly("s*u - t^2", &r).unwrap();
        assert_eq!(f.to_string(), "-t^2 + s*u");
        assert_eq!(parse_poly("-(t^2) + 3*s*u - 2*s*u", &r).unwrap(), f);
    }
}
