//! Concrete syntax: `x <| y |> z` for the conditional plus `&&`, `||` and `!` sugar.
//!
//! ```text
//! term      := or_expr
//! or_expr   := and_expr { "||" and_expr }      x || y  is  T <| x |> y
//! and_expr  := not_expr { "&&" not_expr }      x && y  is  y <| x |> F
//! not_expr  := "!" not_expr | cond             !x      is  F <| x |> T
//! cond      := primary [ "<|" term "|>" primary ]
//! primary   := "T" | "F" | atom | "(" term ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::term::{Atom, Term};

/// Byte offsets into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> SourceSpan {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    /// 1-based line number when parsing a term file.
    pub line: Option<usize>,
}

impl ParseError {
    fn new(message: impl Into<String>, span: SourceSpan) -> ParseError {
        ParseError { message: message.into(), span, line: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Only `<| |>`, nested conditionals always parenthesized.
    Ternary,
    /// `!`, `&&`, `||` wherever the exact patterns occur.
    Sugared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    LTri,
    RTri,
    And,
    Or,
    Not,
    True,
    False,
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Open => "`(`",
            Tok::Close => "`)`",
            Tok::LTri => "`<|`",
            Tok::RTri => "`|>`",
            Tok::And => "`&&`",
            Tok::Or => "`||`",
            Tok::Not => "`!`",
            Tok::True => "`T`",
            Tok::False => "`F`",
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = |t: Tok| (t, SourceSpan::new(i, i + 2));
        let pair = bytes.get(i + 1).copied();
        let (tok, span) = match (c, pair) {
            (b'(', _) => (Tok::Open, SourceSpan::new(i, i + 1)),
            (b')', _) => (Tok::Close, SourceSpan::new(i, i + 1)),
            (b'!', _) => (Tok::Not, SourceSpan::new(i, i + 1)),
            (b'<', Some(b'|')) => two(Tok::LTri),
            (b'|', Some(b'>')) => two(Tok::RTri),
            (b'|', Some(b'|')) => two(Tok::Or),
            (b'&', Some(b'&')) => two(Tok::And),
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let word = &text[start..j];
                let tok = match word {
                    "T" => Tok::True,
                    "F" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                (tok, SourceSpan::new(start, j))
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    format!("unexpected character `{ch}`"),
                    SourceSpan::new(i, i + ch.len_utf8()),
                ));
            }
        };
        i = span.end;
        out.push((tok, span));
    }
    out.push((Tok::End, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(format!("expected {want}, found {}", self.peek()), self.span()))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and_expr()?;
            lhs = Term::cond(Term::True, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.not_expr()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.not_expr()?;
            lhs = Term::cond(rhs, lhs, Term::False);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            let inner = self.not_expr()?;
            return Ok(Term::cond(Term::False, inner, Term::True));
        }
        self.cond()
    }

    fn cond(&mut self) -> Result<Term, ParseError> {
        let then_branch = self.primary()?;
        if *self.peek() != Tok::LTri {
            return Ok(then_branch);
        }
        self.bump();
        let condition = self.term()?;
        self.expect(Tok::RTri)?;
        let else_branch = self.primary()?;
        if *self.peek() == Tok::LTri {
            return Err(ParseError::new(
                "nested conditional needs parentheses (`<| |>` does not associate)",
                self.span(),
            ));
        }
        Ok(Term::cond(then_branch, condition, else_branch))
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::True => Ok(Term::True),
            Tok::False => Ok(Term::False),
            Tok::Ident(name) => Atom::new(&name).map(Term::Atom).map_err(|e| ParseError::new(e.to_string(), span)),
            Tok::Open => {
                let inner = self.term()?;
                self.expect(Tok::Close)?;
                Ok(inner)
            }
            other => Err(ParseError::new(format!("expected a term, found {other}"), span)),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(format!("unexpected {} after term", p.peek()), p.span()));
    }
    Ok(t)
}

/// One term per non-blank line; lines starting with `#` are comments.
pub fn parse_term_list(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let t = parse_term(line).map_err(|mut e| {
            e.line = Some(n + 1);
            e
        })?;
        out.push(t);
    }
    Ok(out)
}

const OR: u8 = 1;
const AND: u8 = 2;
const NOT: u8 = 3;
const COND: u8 = 4;
const PRIMARY: u8 = 5;

pub fn print_term(t: &Term, style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Ternary => ternary(t, true, &mut out),
        Style::Sugared => sugared(t, 0, &mut out),
    }
    out
}

fn ternary(t: &Term, top: bool, out: &mut String) {
    match t {
        Term::True => out.push('T'),
        Term::False => out.push('F'),
        Term::Atom(a) => out.push_str(a.name()),
        Term::Cond(x, y, z) => {
            if !top {
                out.push('(');
            }
            ternary(x, false, out);
            out.push_str(" <| ");
            ternary(y, false, out);
            out.push_str(" |> ");
            ternary(z, false, out);
            if !top {
                out.push(')');
            }
        }
    }
}

fn sugar_level(t: &Term) -> u8 {
    match t {
        Term::Cond(x, _, z) => match (x.as_ref(), z.as_ref()) {
            (Term::False, Term::True) => NOT,
            (_, Term::False) => AND,
            (Term::True, _) => OR,
            _ => COND,
        },
        _ => PRIMARY,
    }
}

fn sugared(t: &Term, min: u8, out: &mut String) {
    let level = sugar_level(t);
    if level < min {
        out.push('(');
    }
    match t {
        Term::True => out.push('T'),
        Term::False => out.push('F'),
        Term::Atom(a) => out.push_str(a.name()),
        Term::Cond(x, y, z) => match level {
            NOT => {
                out.push('!');
                sugared(y, NOT, out);
            }
            AND => {
                sugared(y, AND, out);
                out.push_str(" && ");
                sugared(x, NOT, out);
            }
            OR => {
                sugared(y, OR, out);
                out.push_str(" || ");
                sugared(z, AND, out);
            }
            _ => {
                sugared(x, PRIMARY, out);
                out.push_str(" <| ");
                sugared(y, COND + 1, out);
                out.push_str(" |> ");
                sugared(z, PRIMARY, out);
            }
        },
    }
    if level < min {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Term {
        Term::atom(n).unwrap()
    }

    #[test]
    fn direct_ternary() {
        assert_eq!(parse_term("T <| a |> F").unwrap(), Term::cond(Term::True, a("a"), Term::False));
    }

    #[test]
    fn sugar_desugars() {
        assert_eq!(parse_term("a && F").unwrap(), Term::cond(Term::False, a("a"), Term::False));
        let lhs = Term::cond(Term::False, a("a"), Term::False);
        assert_eq!(parse_term("(a && F) || b").unwrap(), Term::cond(Term::True, lhs, a("b")));
        assert_eq!(parse_term("!a").unwrap(), Term::cond(Term::False, a("a"), Term::True));
    }

    #[test]
    fn connectives_associate_left() {
        assert_eq!(parse_term("a && b && c").unwrap(), parse_term("(a && b) && c").unwrap());
        assert_eq!(parse_term("a || b || c").unwrap(), parse_term("(a || b) || c").unwrap());
        assert_eq!(parse_term("a || b && c").unwrap(), parse_term("a || (b && c)").unwrap());
    }

    #[test]
    fn sugar_is_syntactic() {
        let x = "(T <| c |> b)";
        let y = "!d";
        let sugared = parse_term(&format!("{x} && {y}")).unwrap();
        let plain = parse_term(&format!("({y}) <| {x} |> F")).unwrap();
        assert_eq!(sugared, plain);
    }

    #[test]
    fn ternary_needs_parentheses() {
        assert!(parse_term("a <| b |> c <| d |> e").is_err());
        assert!(parse_term("(a <| b |> c) <| d |> e").is_ok());
        assert!(parse_term("a <| b <| c |> d |> e").is_ok());
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_term("a <| T |> ").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 10, end: 10 });
        let e = parse_term("a && $").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 5, end: 6 });
        let e = parse_term("Tx").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 0, end: 2 });
        assert!(parse_term("a)").is_err());
        assert!(parse_term("").is_err());
    }

    #[test]
    fn printing() {
        let t = Term::cond(Term::True, a("a"), Term::False);
        assert_eq!(print_term(&t, Style::Ternary), "T <| a |> F");
        let neg = Term::cond(Term::False, a("a"), Term::True);
        assert_eq!(print_term(&neg, Style::Sugared), "!a");
        let conj = Term::cond(Term::False, a("a"), Term::False);
        assert_eq!(print_term(&conj, Style::Sugared), "a && F");
        let nested = parse_term("a <| (b <| c |> d) |> e").unwrap();
        assert_eq!(print_term(&nested, Style::Ternary), "a <| (b <| c |> d) |> e");
    }

    #[test]
    fn term_files() {
        let text = "# corpus\nT <| a |> F\n\n  # indented comment\na && b\n";
        let ts = parse_term_list(text).unwrap();
        assert_eq!(ts.len(), 2);
        let e = parse_term_list("a\n<|\n").unwrap_err();
        assert_eq!(e.line, Some(2));
    }
}
