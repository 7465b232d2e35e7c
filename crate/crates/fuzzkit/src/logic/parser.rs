//! Text syntax for formulas: variables `x1…xn`, `+` for or, `*` for and,
//! `~` prefix (or `'` suffix) for not, parentheses. Round-trips with the
//! printer.

use super::formula::{FFormula, Node};
use crate::error::{FuzzyError, Result};
use std::fmt;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(usize),
    Plus,
    Star,
    Tilde,
    Prime,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> FuzzyError {
        FuzzyError::parse(1, self.pos + 1, message)
    }

    fn next(&mut self) -> Result<Tok> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        self.pos += 1;
        Ok(match c {
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'~' => Tok::Tilde,
            b'\'' => Tok::Prime,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'x' | b'X' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.error("variable needs an index, like x1"));
                }
                let idx: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error("variable index out of range"))?;
                if idx == 0 {
                    return Err(self.error("variable indices start at 1"));
                }
                Tok::Var(idx)
            }
            other => return Err(self.error(format!("unexpected character {:?}", other as char))),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Tok>,
    max_var: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&Tok> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn bump(&mut self) -> Result<Tok> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next(),
        }
    }

    // sum := product (+ product)*
    fn sum(&mut self) -> Result<Node> {
        let mut parts = vec![self.product()?];
        while *self.peek()? == Tok::Plus {
            self.bump()?;
            parts.push(self.product()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Node::Or(parts)
        })
    }

    // product := factor (* factor)*
    fn product(&mut self) -> Result<Node> {
        let mut parts = vec![self.factor()?];
        while *self.peek()? == Tok::Star {
            self.bump()?;
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Node::And(parts)
        })
    }

    // factor := ~ factor | atom '* | atom
    fn factor(&mut self) -> Result<Node> {
        if *self.peek()? == Tok::Tilde {
            self.bump()?;
            return Ok(Node::Not(Box::new(self.factor()?)));
        }
        let mut node = self.atom()?;
        while *self.peek()? == Tok::Prime {
            self.bump()?;
            node = Node::Not(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.bump()? {
            Tok::Var(i) => {
                self.max_var = self.max_var.max(i);
                Ok(Node::Var(i))
            }
            Tok::LParen => {
                let inner = self.sum()?;
                match self.bump()? {
                    Tok::RParen => Ok(inner),
                    _ => Err(self.lexer.error("expected closing parenthesis")),
                }
            }
            other => Err(self.lexer.error(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a formula; arity defaults to the largest variable index used.
pub fn parse_formula(src: &str, arity: Option<usize>) -> Result<FFormula> {
    let mut parser = Parser {
        lexer: Lexer::new(src),
        peeked: None,
        max_var: 0,
    };
    let node = parser.sum()?;
    if parser.bump()? != Tok::End {
        return Err(parser.lexer.error("trailing input after formula"));
    }
    let arity = arity.unwrap_or(parser.max_var);
    if arity < parser.max_var {
        return Err(FuzzyError::VariableOutOfRange {
            arity,
            index: parser.max_var,
        });
    }
    FFormula::new(arity, node)
}

/// Prints in the parseable syntax. Or binds loosest, so only nested sums
/// need parentheses.
pub fn format_formula(f: &FFormula) -> String {
    fn print(node: &Node, out: &mut String, parent_and: bool) {
        match node {
            Node::Var(i) => out.push_str(&format!("x{i}")),
            Node::Const(g) => out.push_str(&format!("{}", g.value())),
            Node::Not(c) => {
                out.push('~');
                match **c {
                    Node::Var(_) | Node::Const(_) | Node::Not(_) => print(c, out, parent_and),
                    _ => {
                        out.push('(');
                        print(c, out, false);
                        out.push(')');
                    }
                }
            }
            Node::And(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    match c {
                        Node::Or(_) | Node::Implies(..) => {
                            out.push('(');
                            print(c, out, false);
                            out.push(')');
                        }
                        _ => print(c, out, true),
                    }
                }
            }
            Node::Or(cs) => {
                let need_parens = parent_and;
                if need_parens {
                    out.push('(');
                }
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    print(c, out, false);
                }
                if need_parens {
                    out.push(')');
                }
            }
            Node::Implies(a, b) => {
                out.push('(');
                print(a, out, false);
                out.push_str(" -> ");
                print(b, out, false);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    print(f.node(), &mut out, false);
    out
}

impl fmt::Display for FFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for src in [
            "x1*~x1*x2",
            "x1*x2*(~x1 + x3) + x1*~x3",
            "~x2*~x4 + x1*x2*~x3",
            "~(x1 + x2)",
        ] {
            let f = parse_formula(src, None).unwrap();
            let printed = format_formula(&f);
            let again = parse_formula(&printed, Some(f.arity())).unwrap();
            assert_eq!(f, again, "{src} -> {printed}");
        }
    }

    #[test]
    fn prime_suffix_negation() {
        let a = parse_formula("x1'", None).unwrap();
        let b = parse_formula("~x1", None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_formula("x1 + ?", None).unwrap_err();
        match err {
            FuzzyError::Parse { column, .. } => assert_eq!(column, 7),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_formula("x0", None).is_err());
        assert!(parse_formula("x1 x2", None).is_err());
        assert!(parse_formula("(x1", None).is_err());
    }

    #[test]
    fn explicit_arity_checked() {
        assert!(parse_formula("x3", Some(2)).is_err());
        assert_eq!(parse_formula("x3", Some(5)).unwrap().arity(), 5);
    }
}
