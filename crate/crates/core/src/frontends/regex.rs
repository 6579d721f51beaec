//! Regular expressions over multi-character literals.
//!
//! Syntax: juxtaposition concatenates, `|` unions, postfix `*` iterates,
//! parentheses group. `0` is the empty language and `eps` the empty string.
//! Literals are bare runs of non-operator characters or `"quoted"` strings.

use std::fmt;

use crate::diagram::Diagram;
use crate::error::{LayoutError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(String),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn lit(s: impl Into<String>) -> Regex {
        Regex::Literal(s.into())
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    pub fn contains_empty(&self) -> bool {
        match self {
            Regex::Empty => true,
            Regex::Epsilon | Regex::Literal(_) => false,
            Regex::Concat(a, b) | Regex::Union(a, b) => a.contains_empty() || b.contains_empty(),
            Regex::Star(a) => a.contains_empty(),
        }
    }

    /// Literals in left-to-right order.
    pub fn literals(&self) -> Vec<&str> {
        let mut out = Vec::new();
        fn go<'a>(r: &'a Regex, out: &mut Vec<&'a str>) {
            match r {
                Regex::Literal(s) => out.push(s),
                Regex::Concat(a, b) | Regex::Union(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Regex::Star(a) => go(a, out),
                _ => {}
            }
        }
        go(self, &mut out);
        out
    }
}

fn is_operator(c: char) -> bool {
    matches!(c, '|' | '*' | '(' | ')' | '"')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Bar,
    Star,
    Open,
    Close,
    Bare(String),
    Quoted(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '|' | '*' | '(' | ')' => {
                it.next();
                let t = match c {
                    '|' => Tok::Bar,
                    '*' => Tok::Star,
                    '(' => Tok::Open,
                    _ => Tok::Close,
                };
                out.push((t, i));
            }
            '"' => {
                it.next();
                let mut s = String::new();
                let mut closed = false;
                while let Some((_, ch)) = it.next() {
                    match ch {
                        '\\' => match it.next() {
                            Some((_, e)) => s.push(e),
                            None => break,
                        },
                        '"' => {
                            closed = true;
                            break;
                        }
                        _ => s.push(ch),
                    }
                }
                if !closed {
                    return Err(ParseError::new(i, "unterminated quoted literal"));
                }
                if s.is_empty() {
                    return Err(ParseError::new(i, "empty literal"));
                }
                out.push((Tok::Quoted(s), i));
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, ch)) = it.peek() {
                    if ch.is_whitespace() || is_operator(ch) {
                        break;
                    }
                    s.push(ch);
                    it.next();
                }
                out.push((Tok::Bare(s), i));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn union(&mut self) -> Result<Regex, ParseError> {
        let mut left = self.concat()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let right = self.concat()?;
            left = Regex::union(left, right);
        }
        Ok(left)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Open | Tok::Bare(_) | Tok::Quoted(_)))
    }

    fn concat(&mut self) -> Result<Regex, ParseError> {
        if !self.starts_atom() {
            let what = match self.peek() {
                None => "unexpected end of input, expected an expression".to_string(),
                Some(t) => format!("expected an expression, found {t:?}"),
            };
            return Err(ParseError::new(self.offset(), what));
        }
        let mut left = self.postfix()?;
        while self.starts_atom() {
            let right = self.postfix()?;
            left = Regex::concat(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        let off = self.offset();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Open) => {
                let r = self.union()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(ParseError::new(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(Tok::Bare(s)) if s == "0" => Ok(Regex::Empty),
            Some(Tok::Bare(s)) if s == "eps" => Ok(Regex::Epsilon),
            Some(Tok::Bare(s)) | Some(Tok::Quoted(s)) => Ok(Regex::Literal(s)),
            _ => Err(ParseError::new(off, "expected an expression")),
        }
    }
}

pub fn parse_regex(text: &str) -> Result<Regex, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let r = p.union()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::new(p.offset(), "unexpected trailing input"));
    }
    Ok(r)
}

fn literal_text(s: &str) -> String {
    let bare_ok = !s.is_empty()
        && s != "0"
        && s != "eps"
        && !s.chars().any(|c| c.is_whitespace() || is_operator(c) || c == '\\');
    if bare_ok {
        s.to_string()
    } else {
        let mut out = String::from("\"");
        for c in s.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}

fn write_prec(r: &Regex, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mine = match r {
        Regex::Union(..) => 0,
        Regex::Concat(..) => 1,
        Regex::Star(_) => 2,
        _ => 3,
    };
    let paren = mine < prec;
    if paren {
        f.write_str("(")?;
    }
    match r {
        Regex::Empty => f.write_str("0")?,
        Regex::Epsilon => f.write_str("eps")?,
        Regex::Literal(s) => f.write_str(&literal_text(s))?,
        Regex::Union(a, b) => {
            write_prec(a, 0, f)?;
            f.write_str(" | ")?;
            write_prec(b, 1, f)?;
        }
        Regex::Concat(a, b) => {
            write_prec(a, 1, f)?;
            f.write_str(" ")?;
            write_prec(b, 2, f)?;
        }
        Regex::Star(a) => {
            write_prec(a, 2, f)?;
            f.write_str("*")?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

pub fn print_regex(r: &Regex) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eliminated {
    Regex(Regex),
    EmptyLanguage,
}

/// Removes every `0` using r·0 = 0·r = 0, r|0 = 0|r = r and 0* = ε.
pub fn eliminate_empty(r: &Regex) -> Eliminated {
    fn go(r: &Regex) -> Option<Regex> {
        match r {
            Regex::Empty => None,
            Regex::Epsilon | Regex::Literal(_) => Some(r.clone()),
            Regex::Concat(a, b) => Some(Regex::concat(go(a)?, go(b)?)),
            Regex::Union(a, b) => match (go(a), go(b)) {
                (Some(x), Some(y)) => Some(Regex::union(x, y)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
            Regex::Star(a) => Some(match go(a) {
                Some(x) => Regex::star(x),
                None => Regex::Epsilon,
            }),
        }
    }
    match go(r) {
        Some(x) => Eliminated::Regex(x),
        None => Eliminated::EmptyLanguage,
    }
}

/// Translates a regex without `0` subterms to a diagram.
pub fn regex_to_diagram(r: &Regex) -> Result<Diagram, LayoutError> {
    Ok(match r {
        Regex::Empty => return Err(LayoutError::EmptyLanguage),
        Regex::Epsilon => Diagram::epsilon(),
        Regex::Literal(s) => Diagram::terminal(s.clone()),
        Regex::Concat(a, b) => Diagram::seq(vec![regex_to_diagram(a)?, regex_to_diagram(b)?]),
        Regex::Union(a, b) => Diagram::plus(regex_to_diagram(a)?, regex_to_diagram(b)?),
        Regex::Star(a) => Diagram::minus(Diagram::epsilon(), regex_to_diagram(a)?),
    })
}

/// Parses, eliminates `0`, and translates.
pub fn regex_source_to_diagram(text: &str) -> Result<Result<Diagram, LayoutError>, ParseError> {
    let r = parse_regex(text)?;
    Ok(match eliminate_empty(&r) {
        Eliminated::Regex(x) => regex_to_diagram(&x),
        Eliminated::EmptyLanguage => Err(LayoutError::EmptyLanguage),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Regex {
        Regex::lit(s)
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_regex("a b | c*").unwrap(),
            Regex::union(Regex::concat(l("a"), l("b")), Regex::star(l("c")))
        );
        assert_eq!(parse_regex("eps").unwrap(), Regex::Epsilon);
        assert_eq!(parse_regex("0").unwrap(), Regex::Empty);
        assert_eq!(parse_regex("\"0\"").unwrap(), l("0"));
        assert_eq!(parse_regex("(a|b)*c").unwrap(), Regex::concat(Regex::star(Regex::union(l("a"), l("b"))), l("c")));
    }

    #[test]
    fn errors() {
        assert!(parse_regex("a |").is_err());
        assert!(parse_regex("| a").is_err());
        assert!(parse_regex("(a").is_err());
        assert!(parse_regex("a)").is_err());
        assert!(parse_regex("*").is_err());
        assert!(parse_regex("").is_err());
        assert!(parse_regex("()").is_err());
        assert_eq!(parse_regex("a |").unwrap_err().offset, 3);
    }

    #[test]
    fn print_round_trip() {
        for src in ["a b | c*", "a (b c)", "a | (b | c)", "(a b)*", "a**", "\"x y\" \"|\" eps 0", "\"0\" \"eps\""] {
            let r = parse_regex(src).unwrap();
            assert_eq!(parse_regex(&print_regex(&r)).unwrap(), r, "{src} -> {}", print_regex(&r));
        }
    }

    #[test]
    fn elimination() {
        assert_eq!(eliminate_empty(&Regex::concat(l("a"), Regex::Empty)), Eliminated::EmptyLanguage);
        assert_eq!(eliminate_empty(&Regex::union(l("a"), Regex::Empty)), Eliminated::Regex(l("a")));
        assert_eq!(eliminate_empty(&Regex::star(Regex::Empty)), Eliminated::Regex(Regex::Epsilon));
    }

    #[test]
    fn translation() {
        assert_eq!(regex_to_diagram(&Regex::star(l("a"))).unwrap().to_string(), "(- () \"a\")");
        assert_eq!(regex_to_diagram(&Regex::Epsilon).unwrap().to_string(), "()");
        assert_eq!(regex_to_diagram(&Regex::union(l("a"), l("b"))).unwrap().to_string(), "(+ \"a\" \"b\")");
        assert!(regex_to_diagram(&Regex::Empty).is_err());
    }
}
