//! Lexer and scalar-expression parser shared by the algebra file format and
//! the command line.
//!
//! Scalar grammar:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (["*"|"/"] factor)*     juxtaposition multiplies
//! factor := atom ["^" INT]
//! atom   := INT | "i" | "a" | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::{GaussianRational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    /// The imaginary unit `i`.
    I,
    /// The parameter `a`.
    Param,
    /// Basis element `e<k>`, 1-based as written.
    Basis(usize),
    Word(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::I => f.write_str("`i`"),
            Tok::Param => f.write_str("`a`"),
            Tok::Basis(k) => write!(f, "`e{k}`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eq => f.write_str("`=`"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub column: usize,
}

/// Splits one line into tokens. A `#` outside a string starts a comment.
pub(crate) fn lex_line(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let column = pos + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, column });
            pos += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            let n = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Token {
                tok: Tok::Int(n),
                column,
            });
            continue;
        }
        if c == '"' {
            let start = pos + 1;
            pos = start;
            while pos < chars.len() && chars[pos] != '"' {
                pos += 1;
            }
            if pos == chars.len() {
                return Err(ParseError::new(line_no, column, "unterminated string"));
            }
            let s: String = chars[start..pos].iter().collect();
            pos += 1;
            out.push(Token {
                tok: Tok::Str(s),
                column,
            });
            continue;
        }
        if c == 'e' && chars.get(pos + 1).is_some_and(char::is_ascii_digit) {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            let k = digits
                .parse::<usize>()
                .map_err(|_| ParseError::new(line_no, column, "basis index too large"))?;
            out.push(Token {
                tok: Tok::Basis(k),
                column,
            });
            continue;
        }
        if c == 'i' && !chars.get(pos + 1).is_some_and(|n| n.is_ascii_alphabetic()) {
            out.push(Token { tok: Tok::I, column });
            pos += 1;
            continue;
        }
        if c == 'a' && !chars.get(pos + 1).is_some_and(|n| n.is_ascii_alphabetic()) {
            out.push(Token {
                tok: Tok::Param,
                column,
            });
            pos += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                pos += 1;
            }
            let w: String = chars[start..pos].iter().collect();
            // `ie5`, `ae3`, `2ie2`: split a leading unit/parameter letter off a basis element
            if let Some(rest) = w.strip_prefix(['i', 'a']) {
                if rest.len() > 1 && rest.starts_with('e') && rest[1..].bytes().all(|b| b.is_ascii_digit()) {
                    pos = start + 1;
                    let tok = if c == 'i' { Tok::I } else { Tok::Param };
                    out.push(Token { tok, column });
                    continue;
                }
            }
            out.push(Token {
                tok: Tok::Word(w),
                column,
            });
            continue;
        }
        return Err(ParseError::new(
            line_no,
            column,
            format!("unexpected character `{c}`"),
        ));
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
pub(crate) struct Cursor<'t> {
    toks: &'t [Token],
    pos: usize,
    line: usize,
    end_column: usize,
    allow_param: bool,
}

impl<'t> Cursor<'t> {
    pub fn new(toks: &'t [Token], line: usize, end_column: usize, allow_param: bool) -> Self {
        Self {
            toks,
            pos: 0,
            line,
            end_column,
            allow_param,
        }
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn peek(&self) -> Option<&'t Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    pub fn next(&mut self) -> Option<&'t Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    pub fn expect(&mut self, tok: &Tok, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    pub fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::I | Tok::Param | Tok::LParen)
        )
    }

    pub fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    pub fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.factor()?;
        self.term_tail(&mut acc)?;
        Ok(acc)
    }

    /// Continues a product whose first factor is already in `acc`. Stops
    /// before anything that cannot continue a product (including `e<k>`).
    pub fn term_tail(&mut self, acc: &mut Scalar) -> Result<(), ParseError> {
        loop {
            match self.peek() {
                Some(Tok::Star) if !matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Basis(_))) => {
                    self.next();
                    *acc = &*acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let column = self.column();
                    let d = self.factor()?;
                    *acc = acc
                        .checked_div(&d)
                        .map_err(|e| ParseError::new(self.line, column, e.to_string()))?;
                }
                _ if self.starts_factor() => {
                    *acc = &*acc * &self.factor()?;
                }
                _ => return Ok(()),
            }
        }
    }

    pub fn factor(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let column = self.column();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e = n
                        .to_u32()
                        .filter(|&e| e <= 64)
                        .ok_or_else(|| ParseError::new(self.line, column, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::new(self.line, column, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        let column = self.column();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.next();
                Ok(Scalar::constant(GaussianRational::real(Rational::from_integer(n))))
            }
            Some(Tok::I) => {
                self.next();
                Ok(Scalar::i())
            }
            Some(Tok::Param) => {
                if !self.allow_param {
                    return Err(ParseError::new(
                        self.line,
                        column,
                        "parameter `a` used without a `param a` declaration",
                    ));
                }
                self.next();
                Ok(Scalar::param())
            }
            Some(Tok::LParen) => {
                self.next();
                let v = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => Err(self.unexpected("a number, `i`, `a` or `(`")),
        }
    }
}

/// Parses a standalone scalar expression such as `1-i`, `2a` or `-1/2`.
pub fn parse_scalar(text: &str, allow_param: bool) -> Result<Scalar, ParseError> {
    let toks = lex_line(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count() + 1, allow_param);
    if cur.at_end() {
        return Err(cur.error("empty expression"));
    }
    let v = cur.expr()?;
    if !cur.at_end() {
        return Err(cur.unexpected("end of expression"));
    }
    Ok(v)
}

/// Parses a parameter-free scalar into ℚ(i).
pub fn parse_constant(text: &str) -> Result<GaussianRational, ParseError> {
    let toks = lex_line(text, 1)?;
    if let Some(t) = toks.iter().find(|t| t.tok == Tok::Param) {
        return Err(ParseError::new(1, t.column, "expression must be parameter-free"));
    }
    let v = parse_scalar(text, false)?;
    Ok(v.as_constant().unwrap_or_else(|| {
        debug_assert!(v.is_zero());
        GaussianRational::zero()
    }))
}
