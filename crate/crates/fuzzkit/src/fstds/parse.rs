//! Lexer and parser for FSTDS scripts. Keywords are matched
//! case-insensitively; element labels may be bare words or numbers.

use super::{BinOp, Expr, FsetItem, PrintKind, Script, Statement};
use crate::error::{FuzzyError, Result};
use crate::grade::Grade;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64, String),
    Assign, // :=
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Comma,
    Slash,
    Hash,
    Newline,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> FuzzyError {
        FuzzyError::parse(self.line, self.col, message)
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(Tok, usize, usize)> {
        loop {
            match self.peek() {
                Some(b' ') | Some(b'\t') | Some(b'\r') => {
                    self.bump();
                }
                // ';' comments to end of line
                Some(b';') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let tok = match self.peek() {
            None => Tok::End,
            Some(b'\n') => {
                self.bump();
                Tok::Newline
            }
            Some(b'(') => {
                self.bump();
                Tok::LParen
            }
            Some(b')') => {
                self.bump();
                Tok::RParen
            }
            Some(b'[') => {
                self.bump();
                Tok::LBracket
            }
            Some(b']') => {
                self.bump();
                Tok::RBracket
            }
            Some(b'<') => {
                self.bump();
                Tok::LAngle
            }
            Some(b'>') => {
                self.bump();
                Tok::RAngle
            }
            Some(b',') => {
                self.bump();
                Tok::Comma
            }
            Some(b'/') => {
                self.bump();
                Tok::Slash
            }
            Some(b'#') => {
                self.bump();
                Tok::Hash
            }
            Some(b':') => {
                self.bump();
                if self.peek() == Some(b'=') {
                    self.bump();
                    Tok::Assign
                } else {
                    return Err(self.error("expected := after :"));
                }
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() || c == b'.' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value: f64 = text
                    .parse()
                    .map_err(|_| FuzzyError::parse(line, col, format!("bad number {text:?}")))?;
                Tok::Number(value, text.to_string())
            }
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c >= 0x80 => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' || c >= 0x80 {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(
                    std::str::from_utf8(&self.src[start..self.pos])
                        .map_err(|_| FuzzyError::parse(line, col, "invalid utf-8"))?
                        .to_string(),
                )
            }
            Some(c) => return Err(self.error(format!("unexpected character {:?}", c as char))),
        };
        Ok((tok, line, col))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&Tok> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(&self.peeked.as_ref().unwrap().0)
    }

    fn bump(&mut self) -> Result<(Tok, usize, usize)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let (got, line, col) = self.bump()?;
        if got == tok {
            Ok(())
        } else {
            Err(FuzzyError::parse(line, col, format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.bump()? {
            (Tok::Ident(s), ..) => Ok(s),
            (Tok::Number(_, raw), ..) => Ok(raw),
            (_, line, col) => Err(FuzzyError::parse(line, col, format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<f64> {
        match self.bump()? {
            (Tok::Number(v, _), ..) => Ok(v),
            (_, line, col) => Err(FuzzyError::parse(line, col, format!("expected {what}"))),
        }
    }

    fn grade(&mut self) -> Result<f64> {
        let (tok, line, col) = self.bump()?;
        match tok {
            Tok::Number(v, _) => {
                Grade::new(v).map_err(|_| {
                    FuzzyError::parse(line, col, format!("grade {v} is outside [0, 1]"))
                })?;
                Ok(v)
            }
            _ => Err(FuzzyError::parse(line, col, "expected a grade")),
        }
    }

    fn statement(&mut self, keyword: String, line: usize, col: usize) -> Result<Statement> {
        let kw = keyword.to_ascii_lowercase();
        match kw.as_str() {
            "end" => Ok(Statement::End),
            "snap" => Ok(Statement::Snap),
            "para" => Ok(Statement::Para),
            "dump" => {
                self.expect(Tok::LParen, "( after Dump")?;
                let name = self.ident("a name")?;
                self.expect(Tok::RParen, ") after Dump")?;
                Ok(Statement::Dump(name))
            }
            "universe" => {
                self.expect(Tok::LParen, "( after Universe")?;
                let mut labels = vec![self.ident("a point label")?];
                while *self.peek()? == Tok::Comma {
                    self.bump()?;
                    labels.push(self.ident("a point label")?);
                }
                self.expect(Tok::RParen, ") after Universe")?;
                Ok(Statement::UniverseDecl(labels))
            }
            "print" | "printb" | "prints" | "printn" => {
                let kind = match kw.as_str() {
                    "print" => PrintKind::Print,
                    "printb" => PrintKind::Bool,
                    "prints" => PrintKind::GeneralSet,
                    _ => PrintKind::Name,
                };
                self.expect(Tok::LParen, "( after print")?;
                let expr = self.expr()?;
                self.expect(Tok::RParen, ") after print operand")?;
                Ok(Statement::Print(kind, expr))
            }
            "printc" => {
                self.expect(Tok::LParen, "( after Printc")?;
                let mut text = String::new();
                loop {
                    match self.bump()? {
                        (Tok::RParen, ..) => break,
                        (Tok::Ident(s), ..) => {
                            if !text.is_empty() {
                                text.push(' ');
                            }
                            text.push_str(&s);
                        }
                        (Tok::Number(_, raw), ..) => {
                            if !text.is_empty() {
                                text.push(' ');
                            }
                            text.push_str(&raw);
                        }
                        (Tok::Comma, ..) => text.push(','),
                        (_, l, c) => return Err(FuzzyError::parse(l, c, "expected text")),
                    }
                }
                Ok(Statement::PrintChars(text))
            }
            "assign" => {
                self.expect(Tok::LParen, "( after Assign")?;
                let name = self.ident("a name")?;
                self.expect(Tok::Comma, ", in Assign")?;
                let expr = self.expr()?;
                self.expect(Tok::RParen, ") after Assign")?;
                Ok(Statement::Assign(name, expr))
            }
            _ => {
                // `name := expr`
                if *self.peek()? == Tok::Assign {
                    self.bump()?;
                    let expr = self.expr()?;
                    Ok(Statement::Assign(keyword, expr))
                } else {
                    Err(FuzzyError::parse(
                        line,
                        col,
                        format!("unknown statement {keyword:?}"),
                    ))
                }
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let (tok, line, col) = self.bump()?;
        match tok {
            Tok::Hash => {
                self.expect(Tok::LParen, "( after #")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, ") after #")?;
                Ok(Expr::Count(Box::new(inner)))
            }
            Tok::Ident(name) => self.call_or_var(name, line, col),
            _ => Err(FuzzyError::parse(line, col, "expected an expression")),
        }
    }

    fn binary_args(&mut self) -> Result<(Expr, Expr)> {
        self.expect(Tok::LParen, "(")?;
        let a = self.expr()?;
        self.expect(Tok::Comma, ",")?;
        let b = self.expr()?;
        self.expect(Tok::RParen, ")")?;
        Ok((a, b))
    }

    fn call_or_var(&mut self, name: String, _line: usize, _col: usize) -> Result<Expr> {
        let kw = name.to_ascii_lowercase();
        let bin = match kw.as_str() {
            "union" => Some(BinOp::Union),
            "intersection" => Some(BinOp::Intersection),
            "prod" => Some(BinOp::Prod),
            "asum" => Some(BinOp::Asum),
            "bsum" => Some(BinOp::Bsum),
            "bdif" => Some(BinOp::Bdif),
            _ => None,
        };
        if let Some(op) = bin {
            let (a, b) = self.binary_args()?;
            return Ok(Expr::Bin(op, Box::new(a), Box::new(b)));
        }
        match kw.as_str() {
            "fset" => self.fset_literal(),
            "set" => {
                self.expect(Tok::LParen, "( after Set")?;
                let mut items = Vec::new();
                if *self.peek()? != Tok::RParen {
                    items.push(self.ident("an element")?);
                    while *self.peek()? == Tok::Comma {
                        self.bump()?;
                        items.push(self.ident("an element")?);
                    }
                }
                self.expect(Tok::RParen, ") after Set")?;
                Ok(Expr::Set(items))
            }
            "assign" => {
                self.expect(Tok::LParen, "( after Assign")?;
                let name = self.ident("a name")?;
                self.expect(Tok::Comma, ", in Assign")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, ") after Assign")?;
                Ok(Expr::Assign(name, Box::new(inner)))
            }
            "compose" => {
                let (a, b) = self.binary_args()?;
                Ok(Expr::Compose(Box::new(a), Box::new(b)))
            }
            "converse" => {
                self.expect(Tok::LParen, "( after Converse")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Converse(Box::new(inner)))
            }
            "image" => {
                let (r, a) = self.binary_args()?;
                Ok(Expr::Image(Box::new(r), Box::new(a)))
            }
            "domain" => {
                self.expect(Tok::LParen, "( after Domain")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Domain(Box::new(inner)))
            }
            "eq" => {
                let (a, b) = self.binary_args()?;
                Ok(Expr::Eq(Box::new(a), Box::new(b)))
            }
            "subset" => {
                let (a, b) = self.binary_args()?;
                Ok(Expr::Subset(Box::new(a), Box::new(b)))
            }
            "element" => {
                self.expect(Tok::LParen, "( after Element")?;
                let label = self.ident("an element label")?;
                self.expect(Tok::Comma, ",")?;
                let set = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Element(label, Box::new(set)))
            }
            "cut" => {
                self.expect(Tok::LParen, "( after Cut")?;
                let set = self.expr()?;
                self.expect(Tok::Comma, ",")?;
                let level = self.grade()?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Cut(Box::new(set), level))
            }
            "exp" => {
                self.expect(Tok::LParen, "( after EXP")?;
                let set = self.expr()?;
                self.expect(Tok::Comma, ",")?;
                let alpha = self.number("an exponent")?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Exp(Box::new(set), alpha))
            }
            "dlt" => {
                self.expect(Tok::LParen, "( after Dlt")?;
                let set = self.expr()?;
                self.expect(Tok::Comma, ",")?;
                let label = self.ident("an element label")?;
                self.expect(Tok::RParen, ")")?;
                Ok(Expr::Dlt(Box::new(set), label))
            }
            _ => Ok(Expr::Var(name)),
        }
    }

    fn fset_literal(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen, "( after Fset")?;
        let mut items = Vec::new();
        if *self.peek()? != Tok::RParen {
            loop {
                items.push(self.fset_item()?);
                if *self.peek()? == Tok::Comma {
                    self.bump()?;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, ") after Fset items")?;
        Ok(Expr::Fset(items))
    }

    fn fset_item(&mut self) -> Result<FsetItem> {
        if *self.peek()? == Tok::LAngle {
            self.bump()?;
            let a = self.ident("a name")?;
            self.expect(Tok::Comma, ", in pair")?;
            let b = self.ident("a name")?;
            self.expect(Tok::RAngle, "> closing the pair")?;
            return Ok(FsetItem::VarPair(a, b));
        }
        let grade = self.grade()?;
        self.expect(Tok::Slash, "/ after the grade")?;
        match self.bump()? {
            (Tok::LBracket, ..) | (Tok::LAngle, ..) => {
                let closing = Tok::RBracket;
                let alt_closing = Tok::RAngle;
                let a = self.ident("an element label")?;
                self.expect(Tok::Comma, ", in pair")?;
                let b = self.ident("an element label")?;
                let (tok, line, col) = self.bump()?;
                if tok == closing || tok == alt_closing {
                    Ok(FsetItem::GradedPair(grade, a, b))
                } else {
                    Err(FuzzyError::parse(line, col, "expected ] or > closing the pair"))
                }
            }
            (Tok::Ident(label), ..) => Ok(FsetItem::GradedPoint(grade, label)),
            (Tok::Number(_, raw), ..) => Ok(FsetItem::GradedPoint(grade, raw)),
            (_, line, col) => Err(FuzzyError::parse(line, col, "expected an element")),
        }
    }
}

/// Parses a script and infers its universe: declared `Universe(...)` labels
/// first, then every other element label in order of first appearance.
pub fn parse_script(source: &str) -> Result<Script> {
    let mut parser = Parser {
        lexer: Lexer::new(source),
        peeked: None,
    };
    let mut statements = Vec::new();
    loop {
        match parser.bump()? {
            (Tok::End, ..) => break,
            (Tok::Newline, ..) => continue,
            (Tok::Ident(word), line, col) => {
                statements.push(parser.statement(word, line, col)?);
                match parser.bump()? {
                    (Tok::Newline, ..) => {}
                    (Tok::End, ..) => break,
                    (_, line, col) => {
                        return Err(FuzzyError::parse(line, col, "expected end of line"))
                    }
                }
            }
            // a bare circled/numbered label like `1.` is not supported: scripts
            // are one statement per line
            (_, line, col) => return Err(FuzzyError::parse(line, col, "expected a statement")),
        }
    }
    let mut labels: Vec<String> = Vec::new();
    for stmt in &statements {
        if let Statement::UniverseDecl(declared) = stmt {
            for l in declared {
                if !labels.contains(l) {
                    labels.push(l.clone());
                }
            }
        }
    }
    for stmt in &statements {
        collect_statement_labels(stmt, &mut labels);
    }
    if labels.is_empty() {
        labels.push("_".to_string()); // placeholder for literal-free scripts
    }
    Ok(Script {
        statements,
        universe_labels: labels,
    })
}

fn collect_statement_labels(stmt: &Statement, labels: &mut Vec<String>) {
    match stmt {
        Statement::Assign(_, e) | Statement::Print(_, e) => collect_expr_labels(e, labels),
        _ => {}
    }
}

fn push_label(label: &str, labels: &mut Vec<String>) {
    if !labels.iter().any(|l| l == label) {
        labels.push(label.to_string());
    }
}

fn collect_expr_labels(expr: &Expr, labels: &mut Vec<String>) {
    match expr {
        Expr::Fset(items) => {
            for item in items {
                match item {
                    FsetItem::GradedPoint(_, l) => push_label(l, labels),
                    FsetItem::GradedPair(_, a, b) => {
                        push_label(a, labels);
                        push_label(b, labels);
                    }
                    FsetItem::VarPair(..) => {}
                }
            }
        }
        Expr::Set(items) => items.iter().for_each(|l| push_label(l, labels)),
        Expr::Assign(_, e)
        | Expr::Converse(e)
        | Expr::Domain(e)
        | Expr::Cut(e, _)
        | Expr::Exp(e, _)
        | Expr::Count(e)
        | Expr::Dlt(e, _) => collect_expr_labels(e, labels),
        Expr::Element(_, e) => collect_expr_labels(e, labels),
        Expr::Bin(_, a, b)
        | Expr::Compose(a, b)
        | Expr::Image(a, b)
        | Expr::Eq(a, b)
        | Expr::Subset(a, b) => {
            collect_expr_labels(a, labels);
            collect_expr_labels(b, labels);
        }
        Expr::Var(_) => {}
    }
}
