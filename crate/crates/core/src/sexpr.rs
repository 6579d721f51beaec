//! Tokenizer shared by the diagram and layout s-expression syntaxes.

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Open,
    Close,
    /// `"..."` with `\"`, `\]` and `\\` escapes resolved.
    Quoted(String),
    /// `[...]` with escapes resolved.
    Bracketed(String),
    Atom(String),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub offset: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b';' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::Open, offset: pos });
                pos += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::Close, offset: pos });
                pos += 1;
            }
            b'"' | b'[' => {
                let close = if c == b'"' { '"' } else { ']' };
                let start = pos;
                let (label, next) = read_delimited(text, pos + 1, close)
                    .ok_or_else(|| ParseError::new(start, format!("unterminated label, expected `{close}`")))?;
                let kind = if c == b'"' {
                    TokenKind::Quoted(label)
                } else {
                    TokenKind::Bracketed(label)
                };
                tokens.push(Token { kind, offset: start });
                pos = next;
            }
            b']' => return Err(ParseError::new(pos, "unexpected `]`")),
            _ => {
                let start = pos;
                while pos < bytes.len()
                    && !matches!(bytes[pos], b' ' | b'\t' | b'\n' | b'\r' | b'(' | b')' | b'"' | b'[' | b']' | b';')
                {
                    pos += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Atom(text[start..pos].to_string()),
                    offset: start,
                });
            }
        }
    }
    Ok(tokens)
}

/// Reads up to the unescaped `close` character; returns the unescaped label
/// and the byte offset just past the delimiter.
fn read_delimited(text: &str, from: usize, close: char) -> Option<(String, usize)> {
    let mut out = String::new();
    let mut chars = text[from..].char_indices();
    while let Some((i, ch)) = chars.next() {
        if ch == '\\' {
            let (_, escaped) = chars.next()?;
            out.push(escaped);
        } else if ch == close {
            return Some((out, from + i + ch.len_utf8()));
        } else {
            out.push(ch);
        }
    }
    None
}

/// Escapes a label for printing between `open` and `close`.
pub(crate) fn escape_label(label: &str, close: char) -> String {
    let mut out = String::with_capacity(label.len());
    for ch in label.chars() {
        if ch == '\\' || ch == close {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

pub(crate) fn quote(label: &str) -> String {
    format!("\"{}\"", escape_label(label, '"'))
}

/// Cursor over a token stream with the helpers both parsers need.
pub(crate) struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    end_offset: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token], end_offset: usize) -> Self {
        Cursor { tokens, pos: 0, end_offset }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn offset(&self) -> usize {
        self.peek().map_or(self.end_offset, |t| t.offset)
    }

    pub fn expect_open(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Open, .. }) => Ok(()),
            Some(t) => Err(ParseError::new(t.offset, "expected `(`")),
            None => Err(ParseError::new(self.end_offset, "unexpected end of input, expected `(`")),
        }
    }

    pub fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Close, .. }) => Ok(()),
            Some(t) => Err(ParseError::new(t.offset, "expected `)`")),
            None => Err(ParseError::new(self.end_offset, "unbalanced delimiters: missing `)`")),
        }
    }

    pub fn expect_atom(&mut self, what: &str) -> Result<(&'a str, usize), ParseError> {
        match self.next() {
            Some(Token { kind: TokenKind::Atom(a), offset }) => Ok((a.as_str(), *offset)),
            Some(t) => Err(ParseError::new(t.offset, format!("expected {what}"))),
            None => Err(ParseError::new(self.end_offset, format!("unexpected end of input, expected {what}"))),
        }
    }

    pub fn at_close(&self) -> bool {
        matches!(self.peek(), Some(Token { kind: TokenKind::Close, .. }))
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(Token { kind: TokenKind::Close, offset }) => {
                Err(ParseError::new(*offset, "unbalanced delimiters: unexpected `)`"))
            }
            Some(t) => Err(ParseError::new(t.offset, "trailing input after term")),
        }
    }
}
