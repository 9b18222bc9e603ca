//! Text input for polynomials: `+ - * ^`, parentheses, integer literals,
//! division by nonzero constants and named variables, e.g. `1/2*x_1^2 - 3*x*y`.

use super::poly::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
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
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: i + 1,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Identifiers in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>> {
    let mut seen = Vec::new();
    for (_, t) in lex(s)? {
        if let Tok::Ident(name) = t {
            if !seen.contains(&name) {
                seen.push(name);
            }
        }
    }
    Ok(seen)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a Vars,
    len: usize,
}

impl<C: Scalar> MultiPoly<C> {
    /// Parses `s` as a polynomial over `vars`.
    pub fn parse(s: &str, vars: &Vars) -> Result<Self> {
        let mut p = Parser {
            toks: lex(s)?,
            pos: 0,
            vars,
            len: s.chars().count(),
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }

    /// Parses `s` over the variables it mentions, in order of appearance.
    pub fn parse_infer(s: &str) -> Result<Self> {
        Self::parse(s, &Vars::new(identifiers(s)?))
    }
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        let column = self
            .toks
            .get(self.pos)
            .map(|t| t.0 + 1)
            .unwrap_or(self.len + 1);
        Error::Parse {
            column,
            message: message.to_string(),
        }
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr<C: Scalar>(&mut self) -> Result<MultiPoly<C>> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<C: Scalar>(&mut self) -> Result<MultiPoly<C>> {
        let mut acc: MultiPoly<C> = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(C::one() / c)),
                    _ => return Err(self.err("can only divide by a nonzero constant")),
                }
            }
        }
        Ok(acc)
    }

    fn unary<C: Scalar>(&mut self) -> Result<MultiPoly<C>> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<C: Scalar>(&mut self) -> Result<MultiPoly<C>> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<C: Scalar>(&mut self) -> Result<MultiPoly<C>> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        match tok {
            Tok::Num(n) => {
                let c = C::parse_literal(&n).ok_or_else(|| self.err("bad number"))?;
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars, c))
            }
            Tok::Ident(name) => {
                let p = MultiPoly::var(self.vars, &name)
                    .map_err(|_| self.err(&format!("unknown variable `{name}`")))?;
                self.pos += 1;
                Ok(p)
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected `{c}`"))),
        }
    }
}
