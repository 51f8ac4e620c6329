//! Expressions on the right of `let`: sums and products of `sm(..)`, `sp(..)`,
//! rationals, ring atoms and previously bound names.

use std::fmt;

/// 1-based column inside the expression line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A rational literal such as `3` or `1/2`.
    Num(String),
    /// A bound name or a ring atom (`x1`, `e12`, `[[1,0],[0,1]]`, `lvl1[0,1=1]`).
    Name(String, usize),
    Sm(Vec<u32>, usize),
    Sp(Vec<u32>, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Bound names this expression mentions, in order of appearance.
    pub fn names(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<(&'a str, usize)>) {
        match self {
            Expr::Name(n, c) => out.push((n, *c)),
            Expr::Neg(a) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Lit(String),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
}

fn err(col: usize, message: impl Into<String>) -> ExprError {
    ExprError { col, message: message.into() }
}

// brackets nest; `<..>` does not
fn take_group(chars: &[char], start: usize) -> Result<usize, ExprError> {
    let (open, close) = if chars[start] == '[' { ('[', ']') } else { ('<', '>') };
    let mut depth = 0;
    for (i, &c) in chars.iter().enumerate().skip(start) {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Ok(i + 1);
            }
        }
    }
    Err(err(start + 1, format!("unclosed `{open}`")))
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => (out.push((Tok::Plus, col)), i += 1).1,
            '-' => (out.push((Tok::Minus, col)), i += 1).1,
            '*' => (out.push((Tok::Star, col)), i += 1).1,
            '(' => (out.push((Tok::LParen, col)), i += 1).1,
            ')' => (out.push((Tok::RParen, col)), i += 1).1,
            ',' => (out.push((Tok::Comma, col)), i += 1).1,
            '[' | '<' => {
                let end = take_group(&chars, i)?;
                out.push((Tok::Lit(chars[i..end].iter().collect()), col));
                i = end;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                out.push((Tok::Num(chars[i..j].iter().collect()), col));
                i = j;
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '[' {
                    j = take_group(&chars, j)?;
                    out.push((Tok::Lit(chars[i..j].iter().collect()), col));
                } else {
                    out.push((Tok::Ident(chars[i..j].iter().collect()), col));
                }
                i = j;
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.bump() {
            Some((Tok::Minus, _)) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some((Tok::Num(n), _)) => Ok(Expr::Num(n)),
            Some((Tok::Lit(l), c)) => Ok(Expr::Name(l, c)),
            Some((Tok::LParen, _)) => {
                let e = self.sum()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(e),
                    _ => Err(err(self.col_before(), format!("expected `)` to close `(` at column {col}"))),
                }
            }
            Some((Tok::Ident(name), c)) if (name == "sm" || name == "sp") && self.peek() == Some(&Tok::LParen) => {
                self.bump();
                let coords = self.coords(&name, c)?;
                Ok(if name == "sm" { Expr::Sm(coords, c) } else { Expr::Sp(coords, c) })
            }
            Some((Tok::Ident(name), c)) => Ok(Expr::Name(name, c)),
            Some((t, c)) => Err(err(c, format!("unexpected {}", describe(&t)))),
            None => Err(err(col, "expression ends too early")),
        }
    }

    fn col_before(&self) -> usize {
        self.toks.get(self.pos.saturating_sub(1)).map_or(self.end_col, |(_, c)| *c)
    }

    // `sm(2)`, `sm(1,0)` or `sm((1,0))`
    fn coords(&mut self, name: &str, open: usize) -> Result<Vec<u32>, ExprError> {
        let inner = self.peek() == Some(&Tok::LParen);
        if inner {
            self.bump();
        }
        let mut out = Vec::new();
        loop {
            match self.bump() {
                Some((Tok::Num(n), c)) => out.push(n.parse().map_err(|_| err(c, format!("`{n}` is not a monoid coordinate")))?),
                Some((t, c)) => return Err(err(c, format!("expected a coordinate in `{name}(`, found {}", describe(&t)))),
                None => return Err(err(self.end_col, format!("unbalanced `{name}(` opened at column {open}"))),
            }
            match self.bump() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::RParen, _)) => break,
                Some((t, c)) => return Err(err(c, format!("expected `,` or `)` in `{name}(`, found {}", describe(&t)))),
                None => return Err(err(self.end_col, format!("unbalanced `{name}(` opened at column {open}"))),
            }
        }
        if inner {
            match self.bump() {
                Some((Tok::RParen, _)) => {}
                _ => return Err(err(self.col_before(), format!("unbalanced `{name}(` opened at column {open}"))),
            }
        }
        Ok(out)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(i) => format!("`{i}`"),
        Tok::Lit(l) => format!("literal `{l}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let end_col = src.chars().count() + 1;
    if toks.is_empty() {
        return Err(err(end_col, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end_col };
    let e = p.sum()?;
    if let Some((t, c)) = p.bump() {
        return Err(err(c, format!("unexpected {} after a complete expression", describe(&t))));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("sm(1) * y1*x2 * sp(2) + 1/2").unwrap();
        let Expr::Add(lhs, rhs) = e else { panic!() };
        assert_eq!(*rhs, Expr::Num("1/2".into()));
        assert!(matches!(*lhs, Expr::Mul(..)));
    }

    #[test]
    fn literals_and_tuples() {
        let e = parse_expr("sm((1,1)) * lvl1[0,1=1;1,0=-1/2] * sp(0,2)").unwrap();
        let names = e.names();
        assert_eq!(names, vec![("lvl1[0,1=1;1,0=-1/2]", 13)]);
        assert!(parse_expr("[[1,0],[0,1]] - <1,2>").is_ok());
    }

    #[test]
    fn positioned_errors() {
        let e = parse_expr("sm(1) * a * sp(2").unwrap_err();
        assert!(e.message.contains("unbalanced `sp(`"), "{e}");
        assert_eq!(e.col, 17);
        let e = parse_expr("x + ").unwrap_err();
        assert_eq!(e.col, 5);
        assert_eq!(parse_expr("x $ y").unwrap_err().col, 3);
        assert!(parse_expr("(x + y").unwrap_err().message.contains("column 1"));
    }
}
