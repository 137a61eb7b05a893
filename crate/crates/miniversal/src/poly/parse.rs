//! Strict polynomial text grammar.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := coeff | coeff '*' powers | powers
//! coeff  := integer ['/' integer]
//! powers := factor ('*' factor)*
//! factor := ident ['^' integer]
//! ```
//!
//! Whitespace between tokens is ignored. There is no implicit multiplication:
//! `2x` is a syntax error, `2*x` is required. A repeated variable inside one
//! term multiplies, so `x*x` equals `x^2`.

use num::BigInt;

use super::{Monomial, Polynomial, Variables};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    /// Next token with its starting byte offset; `None` at end of input.
    fn next(&mut self) -> Result<Option<(Tok, usize)>> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.src[start];
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().expect("digit run");
                return Ok(Some((Tok::Int(n), start)));
            }
            b'_' | b'a'..=b'z' | b'A'..=b'Z' => {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                return Ok(Some((Tok::Ident(text.to_string()), start)));
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", self.src[start] as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((tok, start)))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
    vars: &'a Variables,
    field: Field,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.here(),
            message: message.into(),
        }
    }

    fn var_index(&self, name: &str, position: usize) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable {
                name: name.to_string(),
                position,
            })
    }

    /// `integer ['/' integer]` as a field element; errors carry the offending
    /// token's position.
    fn coefficient(&mut self) -> Result<FieldElement> {
        let (num, num_pos) = match self.bump() {
            Some((Tok::Int(n), p)) => (n, p),
            _ => unreachable!("coefficient called at integer"),
        };
        if matches!(self.peek(), Some((Tok::Slash, _))) {
            self.bump();
            let (den, den_pos) = match self.bump() {
                Some((Tok::Int(d), p)) => (d, p),
                _ => return Err(self.syntax("expected integer denominator after `/`")),
            };
            self.field
                .fraction(&num, &den)
                .map_err(|e| reposition(e, num_pos, den_pos))
        } else {
            Ok(self.field.from_bigint(&num))
        }
    }

    /// `ident ['^' integer] ('*' ...)` resumed by the term loop; one factor.
    fn factor(&mut self, mono: &mut Monomial) -> Result<()> {
        let (name, pos) = match self.bump() {
            Some((Tok::Ident(s), p)) => (s, p),
            _ => unreachable!("factor called at identifier"),
        };
        let i = self.var_index(&name, pos)?;
        let e: u32 = if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.bump();
            match self.bump() {
                Some((Tok::Int(n), p)) => u32::try_from(&n).map_err(|_| Error::Syntax {
                    position: p,
                    message: "exponent too large".into(),
                })?,
                _ => return Err(self.syntax("expected integer exponent after `^`")),
            }
        } else {
            1
        };
        mono.0[i] = mono.0[i].checked_add(e).ok_or_else(|| Error::Syntax {
            position: pos,
            message: "exponent too large".into(),
        })?;
        Ok(())
    }

    /// One term: optional coefficient, then `*`-separated variable powers.
    fn term(&mut self) -> Result<(Monomial, FieldElement)> {
        let mut coeff = self.field.one();
        let mut mono = Monomial::one(self.vars.len());
        let mut saw_factor = false;

        match self.peek() {
            Some((Tok::Int(_), _)) => {
                coeff = self.coefficient()?;
                // after the coefficient either the term ends or `*` introduces powers
                if matches!(self.peek(), Some((Tok::Star, _))) {
                    self.bump();
                    saw_factor = true;
                    match self.peek() {
                        Some((Tok::Ident(_), _)) => self.factor(&mut mono)?,
                        _ => return Err(self.syntax("expected variable after `*`")),
                    }
                } else if matches!(self.peek(), Some((Tok::Ident(_), _))) {
                    return Err(self.syntax(
                        "implicit multiplication is not allowed; write `*` between coefficient and variable",
                    ));
                }
            }
            Some((Tok::Ident(_), _)) => {
                saw_factor = true;
                self.factor(&mut mono)?;
            }
            _ => return Err(self.syntax("expected a term")),
        }

        while saw_factor && matches!(self.peek(), Some((Tok::Star, _))) {
            self.bump();
            match self.peek() {
                Some((Tok::Ident(_), _)) => self.factor(&mut mono)?,
                Some((Tok::Int(_), _)) => {
                    return Err(self.syntax(
                        "numeric factor must come first in a term",
                    ))
                }
                _ => return Err(self.syntax("expected variable after `*`")),
            }
        }
        Ok((mono, coeff))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut p = Polynomial::zero(self.vars.clone(), self.field);
        let mut negate = false;
        match self.peek() {
            Some((Tok::Plus, _)) => {
                self.bump();
            }
            Some((Tok::Minus, _)) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let (mono, coeff) = self.term()?;
            let coeff = if negate { coeff.neg() } else { coeff };
            p = p.add(&Polynomial::from_terms(
                self.vars.clone(),
                self.field,
                [(mono, coeff)],
            )?)?;
            match self.bump() {
                None => break,
                Some((Tok::Plus, _)) => negate = false,
                Some((Tok::Minus, _)) => negate = true,
                Some((_, pos)) => {
                    return Err(Error::Syntax {
                        position: pos,
                        message: "expected `+` or `-` between terms".into(),
                    })
                }
            }
        }
        Ok(p)
    }
}

/// Field-level fraction errors are built before token positions are known;
/// stamp them with the real offsets.
fn reposition(e: Error, num_pos: usize, den_pos: usize) -> Error {
    match e {
        Error::ZeroDenominator { .. } => Error::ZeroDenominator { position: den_pos },
        Error::NotRepresentable { .. } => Error::NotRepresentable { position: den_pos },
        other => {
            let _ = num_pos;
            other
        }
    }
}

/// Parses `input` as a polynomial in `vars` over `field`.
pub fn parse_poly(input: &str, vars: &Variables, field: Field) -> Result<Polynomial> {
    let mut lx = Lexer::new(input);
    let mut toks = Vec::new();
    while let Some(t) = lx.next()? {
        toks.push(t);
    }
    if toks.is_empty() {
        return Err(Error::Syntax {
            position: input.len(),
            message: "empty input".into(),
        });
    }
    let mut parser = Parser {
        toks,
        idx: 0,
        end: input.len(),
        vars,
        field,
    };
    parser.poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::variables;

    fn xy() -> Variables {
        variables(&["x", "y"]).unwrap()
    }

    fn ok(s: &str) -> Polynomial {
        parse_poly(s, &xy(), Field::Q).unwrap()
    }

    fn err_kind(s: &str) -> &'static str {
        parse_poly(s, &xy(), Field::Q).unwrap_err().kind()
    }

    #[test]
    fn grammar_basics() {
        assert_eq!(ok("x^2*y - 3/2*x + 1").to_string(), "x^2*y - 3/2*x + 1");
        assert_eq!(ok("-x + y"), ok("y - x"));
        assert_eq!(ok("+x"), ok("x"));
        assert_eq!(ok("0"), Polynomial::zero(xy(), Field::Q));
        assert_eq!(ok("x - x"), ok("0"));
        assert_eq!(ok("  x\t+ y "), ok("x + y"));
    }

    #[test]
    fn repeated_variable_accumulates() {
        assert_eq!(ok("x*x"), ok("x^2"));
        assert_eq!(ok("x^2*x^3*y"), ok("x^5*y"));
    }

    #[test]
    fn coefficient_forms() {
        assert_eq!(ok("2*x").coeff(&Monomial(vec![1, 0])).to_string(), "2");
        assert_eq!(ok("4/6").coeff(&Monomial(vec![0, 0])).to_string(), "2/3");
        assert_eq!(ok("x^0"), ok("1"));
    }

    #[test]
    fn strictness() {
        assert_eq!(err_kind("2x"), "syntax");
        assert_eq!(err_kind("x y"), "syntax");
        assert_eq!(err_kind("x*2"), "syntax");
        assert_eq!(err_kind("x +"), "syntax");
        assert_eq!(err_kind("* x"), "syntax");
        assert_eq!(err_kind(""), "syntax");
        assert_eq!(err_kind("x ^ -1"), "syntax");
        assert_eq!(err_kind("(x)"), "syntax");
        assert_eq!(err_kind("x^99999999999999999999"), "syntax");
    }

    #[test]
    fn error_positions() {
        match parse_poly("x + 1/0", &xy(), Field::Q).unwrap_err() {
            Error::ZeroDenominator { position } => assert_eq!(position, 6),
            e => panic!("wrong error {e}"),
        }
        match parse_poly("x + z", &xy(), Field::Q).unwrap_err() {
            Error::UnknownVariable { name, position } => {
                assert_eq!(name, "z");
                assert_eq!(position, 4);
            }
            e => panic!("wrong error {e}"),
        }
    }

    #[test]
    fn prime_field_coefficients() {
        let f7 = Field::prime(7).unwrap();
        let p = parse_poly("10*x", &xy(), f7).unwrap();
        assert_eq!(p.to_string(), "3*x");
        // 1/7 does not exist mod 7
        let e = parse_poly("1/7*x", &xy(), f7).unwrap_err();
        assert_eq!(e.kind(), "not_representable");
        // 1/3 = 5 mod 7
        let q = parse_poly("1/3*x", &xy(), f7).unwrap();
        assert_eq!(q.to_string(), "5*x");
    }

    #[test]
    fn roundtrip_display() {
        for s in [
            "x^3 - 2*x*y + y - 5",
            "-x^2*y^2 + 1/3",
            "x",
            "0",
            "7/2",
            "-x - y",
        ] {
            let p = ok(s);
            let again = ok(&p.to_string());
            assert_eq!(p, again);
            assert_eq!(p.to_string(), again.to_string());
        }
    }
}
