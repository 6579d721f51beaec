//! Abstract railroad diagrams: tokens, sequences and binary stacks.

use std::fmt;

use crate::error::ParseError;
use crate::sexpr::{self, Cursor, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Polarity> {
        match s {
            "+" => Some(Polarity::Positive),
            "-" => Some(Polarity::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Diagram {
    Terminal(String),
    NonTerminal(String),
    Sequence(Vec<Diagram>),
    Stack(Polarity, Box<Diagram>, Box<Diagram>),
}

impl Diagram {
    pub fn epsilon() -> Diagram {
        Diagram::Sequence(Vec::new())
    }

    pub fn terminal(label: impl Into<String>) -> Diagram {
        Diagram::Terminal(label.into())
    }

    pub fn nonterminal(label: impl Into<String>) -> Diagram {
        Diagram::NonTerminal(label.into())
    }

    pub fn seq(children: Vec<Diagram>) -> Diagram {
        Diagram::Sequence(children)
    }

    pub fn stack(pol: Polarity, top: Diagram, bottom: Diagram) -> Diagram {
        Diagram::Stack(pol, Box::new(top), Box::new(bottom))
    }

    pub fn plus(top: Diagram, bottom: Diagram) -> Diagram {
        Diagram::stack(Polarity::Positive, top, bottom)
    }

    pub fn minus(top: Diagram, bottom: Diagram) -> Diagram {
        Diagram::stack(Polarity::Negative, top, bottom)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Diagram::Sequence(c) if c.is_empty())
    }

    /// Number of constructors in the term.
    pub fn size(&self) -> usize {
        match self {
            Diagram::Terminal(_) | Diagram::NonTerminal(_) => 1,
            Diagram::Sequence(c) => 1 + c.iter().map(Diagram::size).sum::<usize>(),
            Diagram::Stack(_, t, b) => 1 + t.size() + b.size(),
        }
    }
}

/// Parses the s-expression syntax: `"t"`, `[n]`, `(d ...)`, `(+ d d)`, `(- d d)`.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let tokens = sexpr::tokenize(text)?;
    let mut cur = Cursor::new(&tokens, text.len());
    if cur.peek().is_none() {
        return Err(ParseError::new(0, "empty input"));
    }
    let d = parse_term(&mut cur)?;
    cur.finish()?;
    Ok(d)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Diagram, ParseError> {
    let offset = cur.offset();
    match cur.next() {
        Some(Token { kind: TokenKind::Quoted(l), .. }) => Ok(Diagram::Terminal(l.clone())),
        Some(Token { kind: TokenKind::Bracketed(l), .. }) => Ok(Diagram::NonTerminal(l.clone())),
        Some(Token { kind: TokenKind::Open, .. }) => {
            if let Some(Token { kind: TokenKind::Atom(a), offset: aoff }) = cur.peek() {
                let Some(pol) = Polarity::from_symbol(a) else {
                    return Err(ParseError::new(*aoff, format!("unexpected atom `{a}`")));
                };
                cur.next();
                let mut parts = Vec::new();
                while !cur.at_close() {
                    if cur.peek().is_none() {
                        return Err(ParseError::new(cur.offset(), "unbalanced delimiters: missing `)`"));
                    }
                    parts.push(parse_term(cur)?);
                }
                if parts.len() != 2 {
                    return Err(ParseError::new(
                        offset,
                        format!("stack arity: expected 2 subdiagrams, found {}", parts.len()),
                    ));
                }
                cur.expect_close()?;
                let bottom = parts.pop().unwrap();
                let top = parts.pop().unwrap();
                return Ok(Diagram::stack(pol, top, bottom));
            }
            let mut children = Vec::new();
            while !cur.at_close() {
                if cur.peek().is_none() {
                    return Err(ParseError::new(cur.offset(), "unbalanced delimiters: missing `)`"));
                }
                children.push(parse_term(cur)?);
            }
            cur.expect_close()?;
            Ok(Diagram::Sequence(children))
        }
        Some(Token { kind: TokenKind::Close, offset }) => {
            Err(ParseError::new(*offset, "unbalanced delimiters: unexpected `)`"))
        }
        Some(Token { kind: TokenKind::Atom(a), offset }) => {
            Err(ParseError::new(*offset, format!("unexpected atom `{a}`")))
        }
        None => Err(ParseError::new(offset, "unexpected end of input")),
    }
}

pub fn print_diagram(d: &Diagram) -> String {
    d.to_string()
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Terminal(l) => write!(f, "{}", sexpr::quote(l)),
            Diagram::NonTerminal(l) => write!(f, "[{}]", sexpr::escape_label(l, ']')),
            Diagram::Sequence(children) => {
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            Diagram::Stack(pol, t, b) => write!(f, "({} {} {})", pol.symbol(), t, b),
        }
    }
}

/// Splices nested sequences into their parents, drops ε children, and
/// unwraps single-child sequences.
pub fn canonicalize(d: &Diagram) -> Diagram {
    match d {
        Diagram::Terminal(_) | Diagram::NonTerminal(_) => d.clone(),
        Diagram::Stack(p, t, b) => Diagram::stack(*p, canonicalize(t), canonicalize(b)),
        Diagram::Sequence(children) => {
            let mut flat = Vec::with_capacity(children.len());
            for c in children {
                match canonicalize(c) {
                    Diagram::Sequence(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Diagram::Sequence(flat)
            }
        }
    }
}

pub fn equivalent(d1: &Diagram, d2: &Diagram) -> bool {
    canonicalize(d1) == canonicalize(d2)
}
