//! Parser for the presentation DSL.
//!
//! ```text
//! presentation := genlist "|" relatorlist ;
//! genlist      := name ("," name)* ;
//! relatorlist  := word ("," word)* ;
//! word         := factor+ ;
//! factor       := (name | "(" word ")" | "[" word "," word "]") ("^" integer)? ;
//! name         := [a-z][a-z0-9_]* ;  integer := "-"? [0-9]+ ;
//! ```
//!
//! `[u,v]` expands to `u^-1 v^-1 u v`; whitespace separates factors; `#`
//! starts a comment to end of line.

use std::fmt;

use super::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyGeneratorList,
    DuplicateGenerator(String),
    UnknownGenerator(String),
    UnbalancedDelimiter(char),
    MalformedExponent,
    Expected { expected: &'static str, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::EmptyGeneratorList => write!(f, "empty generator list"),
            ParseErrorKind::DuplicateGenerator(n) => write!(f, "duplicate generator {n:?}"),
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator {n:?}"),
            ParseErrorKind::UnbalancedDelimiter(c) => write!(f, "unbalanced {c:?}"),
            ParseErrorKind::MalformedExponent => write!(f, "malformed exponent after '^'"),
            ParseErrorKind::Expected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Comma,
    Pipe,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name {n:?}"),
            Tok::Int(i) => format!("integer {i}"),
            Tok::Comma => "','".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
        }
    }
}

struct Lexer {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                        line: &mut usize,
                        col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars, &mut line, &mut col);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars, &mut line, &mut col);
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                tokens.push((Tok::Name(name), tline, tcol));
            }
            '0'..='9' | '-' => {
                let mut digits = String::new();
                digits.push(bump(&mut chars, &mut line, &mut col));
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                let value: i64 = digits.parse().map_err(|_| ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::MalformedExponent,
                })?;
                tokens.push((Tok::Int(value), tline, tcol));
            }
            ',' | '|' | '^' | '(' | ')' | '[' | ']' => {
                bump(&mut chars, &mut line, &mut col);
                let tok = match c {
                    ',' => Tok::Comma,
                    '|' => Tok::Pipe,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    _ => Tok::RBracket,
                };
                tokens.push((tok, tline, tcol));
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::Expected {
                        expected: "a name, delimiter or exponent",
                        found: format!("{other:?}"),
                    },
                })
            }
        }
    }
    Ok(Lexer {
        tokens,
        pos: 0,
        end: (line, col),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, kind }
    }

    fn expected(&self, expected: &'static str) -> ParseError {
        let found = self
            .peek()
            .map(|t| t.describe())
            .unwrap_or_else(|| "end of input".into());
        self.err(ParseErrorKind::Expected { expected, found })
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut lx = lex(text)?;
    if matches!(lx.peek(), Some(Tok::Pipe) | None) {
        return Err(lx.err(ParseErrorKind::EmptyGeneratorList));
    }
    let mut names: Vec<String> = Vec::new();
    loop {
        match lx.next() {
            Some(Tok::Name(n)) => {
                if names.contains(&n) {
                    return Err(lx.err(ParseErrorKind::DuplicateGenerator(n)));
                }
                names.push(n);
            }
            _ => return Err(lx.expected("a generator name")),
        }
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::Pipe) => break,
            _ => return Err(lx.expected("',' or '|'")),
        }
    }
    let mut relators = Vec::new();
    loop {
        relators.push(parse_word(&mut lx, &names)?);
        match lx.next() {
            Some(Tok::Comma) => continue,
            None => break,
            Some(t) => {
                return Err(match t {
                    Tok::RParen => lx.err(ParseErrorKind::UnbalancedDelimiter(')')),
                    Tok::RBracket => lx.err(ParseErrorKind::UnbalancedDelimiter(']')),
                    other => lx.err(ParseErrorKind::Expected {
                        expected: "',' or end of input",
                        found: other.describe(),
                    }),
                })
            }
        }
    }
    Ok(Presentation::new(names, relators))
}

fn parse_word(lx: &mut Lexer, names: &[String]) -> Result<Word, ParseError> {
    let mut word = Word::identity();
    let mut any = false;
    while matches!(
        lx.peek(),
        Some(Tok::Name(_)) | Some(Tok::LParen) | Some(Tok::LBracket)
    ) {
        let factor = parse_factor(lx, names)?;
        word = word.multiply(&factor);
        any = true;
    }
    if !any {
        return Err(lx.expected("a word"));
    }
    Ok(word)
}

fn parse_factor(lx: &mut Lexer, names: &[String]) -> Result<Word, ParseError> {
    let base = match lx.next() {
        Some(Tok::Name(n)) => {
            let gen = names
                .iter()
                .position(|x| *x == n)
                .ok_or_else(|| lx.err(ParseErrorKind::UnknownGenerator(n.clone())))?;
            Word::generator(gen)
        }
        Some(Tok::LParen) => {
            let inner = parse_word(lx, names)?;
            match lx.next() {
                Some(Tok::RParen) => inner,
                _ => return Err(lx.err(ParseErrorKind::UnbalancedDelimiter('('))),
            }
        }
        Some(Tok::LBracket) => {
            let u = parse_word(lx, names)?;
            if !matches!(lx.next(), Some(Tok::Comma)) {
                return Err(lx.expected("',' inside commutator"));
            }
            let v = parse_word(lx, names)?;
            match lx.next() {
                Some(Tok::RBracket) => Word::commutator(&u, &v),
                _ => return Err(lx.err(ParseErrorKind::UnbalancedDelimiter('['))),
            }
        }
        _ => return Err(lx.expected("a name, '(' or '['")),
    };
    if matches!(lx.peek(), Some(Tok::Caret)) {
        lx.next();
        match lx.next() {
            Some(Tok::Int(k)) => Ok(base.pow(k)),
            _ => Err(lx.err(ParseErrorKind::MalformedExponent)),
        }
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let p = parse_presentation("a | a^6").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].letter_len(), 6);
    }

    #[test]
    fn s3_presentation() {
        let p = parse_presentation("a,b | a^3, b^2, (a b)^2").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.render_word(&p.relators()[2]), "a b a b");
    }

    #[test]
    fn f20_with_negative_exponents() {
        let p = parse_presentation("a,b | a^5, b^4, b a b^-1 a^-2").unwrap();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.render_word(&p.relators()[2]), "b a b^-1 a^-2");
    }

    #[test]
    fn commutator_sugar() {
        let p = parse_presentation("a, b | [a, b]").unwrap();
        assert_eq!(p.render_word(&p.relators()[0]), "a^-1 b^-1 a b");
    }

    #[test]
    fn comments() {
        let p = parse_presentation("a, b # generators\n | a^2, # inv\n b^2").unwrap();
        assert_eq!(p.relators().len(), 2);
    }

    #[test]
    fn print_parse_round_trip() {
        let texts = [
            "a | a^6",
            "a, b | a^3, b^2, (a b)^2",
            "a, b | a^5, b^4, b a b^-1 a^-2",
            "x, y, zz_1 | x^7, [x, y], zz_1^2 y^-3",
        ];
        for text in texts {
            let p = parse_presentation(text).unwrap();
            let q = parse_presentation(&p.to_string()).unwrap();
            assert_eq!(p, q, "round trip failed for {text:?}");
        }
    }

    #[test]
    fn error_positions_and_kinds() {
        let err = parse_presentation("| a^2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyGeneratorList);

        let err = parse_presentation("a | b^2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownGenerator("b".into()));

        let err = parse_presentation("a | (a^2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedDelimiter('('));

        let err = parse_presentation("a | a^").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MalformedExponent);

        let err = parse_presentation("a, a | a^2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateGenerator("a".into()));

        let err = parse_presentation("a |\na^2 )").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedDelimiter(')'));
        assert_eq!(err.line, 2);

        let err = parse_presentation("a, b | a^2 A").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Expected { .. }));
    }
}
