use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, SummandAst};
use crate::exact::Rational;

/// A located syntax error. `line` and `column` are 1-based; `column` counts
/// characters, `offset` counts bytes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Short description of what would have been accepted, empty if nothing
    /// specific was expected.
    pub expected: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, offset: usize, message: impl Into<String>, expected: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = src[line_start..offset].chars().count() + 1;
        ParseError { offset, line, column, message: message.into(), expected: expected.into() }
    }

    /// Re-anchors an error raised inside a substring that starts at byte
    /// `base` of `outer`.
    pub(crate) fn relocate(self, outer: &str, base: usize) -> Self {
        ParseError::at(outer, base + self.offset, self.message, self.expected)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const KEYWORDS: [&str; 2] = ["poch", "fact"];

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse::<BigInt>().expect("decimal digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if b"+-*/^(),".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ParseError::at(src, i, format!("unexpected character {ch:?}"), ""));
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    variables: &'a [String],
}

const OPERAND: &str = "an integer, a variable, `(`, `poch` or `fact`";

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>, expected: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.offset(), message, expected)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            // exponent binds through `factor`, so `a^b^c = a^(b^c)` and `a^-1` parse
            return Ok(Expr::Pow(Box::new(base), Box::new(self.factor()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "poch" => {
                self.bump();
                self.expect('(')?;
                let base = self.rational()?;
                self.expect(',')?;
                let index = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Poch(base, Box::new(index)))
            }
            Tok::Ident(name) if name == "fact" => {
                self.bump();
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Fact(Box::new(arg)))
            }
            Tok::Ident(name) => {
                if !self.variables.contains(&name) {
                    let declared = if self.variables.is_empty() {
                        "no variables".to_string()
                    } else {
                        format!("one of {}", self.variables.join(", "))
                    };
                    return Err(ParseError::at(self.src, start, format!("unknown variable `{name}`"), declared));
                }
                self.bump();
                Ok(Expr::Var(name))
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }

    /// `["-"] integer ["/" integer]`, the constant base of a Pochhammer symbol.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat('-');
        let num = self.integer("a rational constant")?;
        let den = if self.eat('/') {
            let at = self.offset();
            let den = self.integer("a nonzero integer denominator")?;
            if den.is_zero() {
                return Err(ParseError::at(self.src, at, "zero denominator in rational constant", ""));
            }
            den
        } else {
            BigInt::from(1)
        };
        let value = Rational::new(num, den);
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(what)),
        }
    }
}

/// Parses `src` over the declared variable names.
///
/// ```
/// use supercong::hypdsl::parse;
/// let ast = parse("poch(1/2,n)^3 / fact(n)^3 * (42*n+5) / 64^n", &["n"]).unwrap();
/// assert_eq!(ast.variables(), ["n"]);
/// let err = parse("poch(1/2,m)", &["n"]).unwrap_err();
/// assert_eq!(err.offset, 9);
/// ```
pub fn parse(src: &str, variables: &[&str]) -> Result<SummandAst, ParseError> {
    let variables: Vec<String> = variables.iter().map(|v| v.to_string()).collect();
    for (i, v) in variables.iter().enumerate() {
        let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || KEYWORDS.contains(&v.as_str()) || variables[..i].contains(v) {
            return Err(ParseError::at(src, 0, format!("invalid variable declaration `{v}`"), ""));
        }
    }
    let toks = tokenize(src)?;
    let mut parser = Parser { src, toks, pos: 0, variables: &variables };
    let root = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(SummandAst { root, variables })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let show = |s: &str| parse(s, &["n"]).unwrap().to_string();
        assert_eq!(show("1-2-3"), "((1 - 2) - 3)");
        assert_eq!(show("2^3^2"), "(2 ^ (3 ^ 2))");
        assert_eq!(show("-2^2"), "(-(2 ^ 2))");
        assert_eq!(show("1+2*n/4"), "(1 + ((2 * n) / 4))");
        assert_eq!(show("2^-n"), "(2 ^ (-n))");
        assert_eq!(show("poch(-3/6, n+1)"), "poch(-1/2, (n + 1))");
    }

    #[test]
    fn errors_are_located() {
        let e = parse("1 +\n  2 $ 3", &[]).unwrap_err();
        assert_eq!((e.offset, e.line, e.column), (8, 2, 5));
        let e = parse("2n", &["n"]).unwrap_err();
        assert_eq!(e.offset, 1);
        assert!(e.message.contains("unexpected"));
        let e = parse("(1+2", &[]).unwrap_err();
        assert_eq!((e.offset, e.expected.as_str()), (4, "`)`"));
        let e = parse("poch(1/0, n)", &["n"]).unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse("poch(n, n)", &["n"]).unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(parse("", &[]).is_err());
        assert!(parse("1", &["poch"]).is_err());
    }

    #[test]
    fn unknown_variables_are_rejected() {
        let e = parse("poch(1/2,m)", &["n"]).unwrap_err();
        assert_eq!(e.offset, 9);
        assert_eq!(e.expected, "one of n");
        assert!(parse("p + r", &["p", "r"]).is_ok());
        assert!(parse("p + n", &["p", "r"]).is_err());
    }
}
