//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' signed-int)?
//! atom   := int ('/' int)? | 'x' | 'C' | 'r5' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! A `-` written directly before an integer literal is part of the literal,
//! unless the literal is raised to a power (`-3^2` is `-(3^2)`).
//! Implicit multiplication is rejected and whitespace is ignored.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::GfExpr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        toks.push((tok, start));
        i += 1;
    }
    toks.push((Tok::End, chars.len()));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bindings: &'a HashMap<String, GfExpr>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn expr(&mut self) -> Result<GfExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = GfExpr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = GfExpr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<GfExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = GfExpr::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = GfExpr::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<GfExpr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            if matches!(self.peek(), Tok::Int(_)) {
                let lit = self.rational_literal()?;
                return Ok(match self.exponent()? {
                    Some(k) => GfExpr::neg(GfExpr::pow(GfExpr::Rational(lit), k)),
                    None => GfExpr::Rational(-lit),
                });
            }
            return Ok(GfExpr::neg(self.factor()?));
        }
        let atom = self.atom()?;
        Ok(match self.exponent()? {
            Some(k) => GfExpr::pow(atom, k),
            None => atom,
        })
    }

    fn exponent(&mut self) -> Result<Option<i32>> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let n = if negative { -n } else { n };
                i32::try_from(n)
                    .map(Some)
                    .map_err(|_| syntax(at, "exponent out of range"))
            }
            other => Err(syntax(at, format!("expected an integer exponent, found {}", other.describe()))),
        }
    }

    /// `int` or `int '/' int`; the slash binds to the literal only when an
    /// integer follows it directly.
    fn rational_literal(&mut self) -> Result<BigRational> {
        let at = self.offset();
        let Tok::Int(num) = self.bump() else {
            unreachable!("caller checked for an integer");
        };
        if *self.peek() == Tok::Slash {
            if let Tok::Int(den) = self.peek_at(1).clone() {
                let den_at = self.toks[self.pos + 1].1;
                self.bump();
                self.bump();
                if den.is_zero() {
                    return Err(syntax(den_at, "zero denominator"));
                }
                return Ok(BigRational::new(num, den));
            }
        }
        let _ = at;
        Ok(BigRational::from_integer(num))
    }

    fn atom(&mut self) -> Result<GfExpr> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(_) => Ok(GfExpr::Rational(self.rational_literal()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok(GfExpr::X),
                    "C" => Ok(GfExpr::Catalan),
                    "r5" => Ok(GfExpr::Sqrt5),
                    "sqrt" => {
                        self.expect(Tok::LParen)?;
                        let e = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(GfExpr::sqrt(e))
                    }
                    _ => self
                        .bindings
                        .get(&name)
                        .cloned()
                        .ok_or(Error::UnknownIdentifier { position: at, name }),
                }
            }
            other => Err(syntax(at, format!("expected an operand, found {}", other.describe()))),
        }
    }
}

/// Parses a closed expression.
pub fn parse(text: &str) -> Result<GfExpr> {
    parse_with_bindings(text, &HashMap::new())
}

/// Parses an expression in which the given names stand for whole subtrees.
pub fn parse_with_bindings(text: &str, bindings: &HashMap<String, GfExpr>) -> Result<GfExpr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        bindings,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!("expected an operator or end of input, found {}", p.peek().describe()),
        ));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use GfExpr as E;

    #[test]
    fn grammar_example() {
        let e = parse("x^2*(1-x)/(1-2*x)").unwrap();
        let expect = E::div(
            E::mul(E::pow(E::X, 2), E::sub(E::int(1), E::X)),
            E::sub(E::int(1), E::mul(E::int(2), E::X)),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn literals_and_signs() {
        assert_eq!(parse("3/4").unwrap(), E::Rational(BigRational::new(3.into(), 4.into())));
        assert_eq!(parse("-3").unwrap(), E::int(-3));
        assert_eq!(parse("-(3)").unwrap(), E::neg(E::int(3)));
        assert_eq!(parse("-3^2").unwrap(), E::neg(E::pow(E::int(3), 2)));
        assert_eq!(parse("x/2").unwrap(), E::div(E::X, E::int(2)));
        assert_eq!(parse("1/(1-x)").unwrap(), E::div(E::int(1), E::sub(E::int(1), E::X)));
        assert_eq!(parse("x^-2").unwrap(), E::pow(E::X, -2));
        assert_eq!(parse(" 2 * r5 ").unwrap(), E::mul(E::int(2), E::Sqrt5));
        assert_eq!(parse("1-x-x").unwrap(), E::sub(E::sub(E::int(1), E::X), E::X));
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(
            parse("C^").unwrap_err(),
            Error::Syntax {
                position: 2,
                message: "expected an integer exponent, found end of input".into()
            }
        );
        assert!(matches!(parse("2x"), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(
            parse("1+foo"),
            Err(Error::UnknownIdentifier { position: 2, ref name }) if name == "foo"
        ));
    }

    #[test]
    fn bindings_expand() {
        let mut b = HashMap::new();
        b.insert("vm".to_string(), parse("1+x").unwrap());
        let e = parse_with_bindings("vm*vm", &b).unwrap();
        assert_eq!(e, E::mul(parse("1+x").unwrap(), parse("1+x").unwrap()));
        assert!(matches!(parse("vm"), Err(Error::UnknownIdentifier { .. })));
    }
}
