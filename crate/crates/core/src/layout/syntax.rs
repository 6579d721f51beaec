use std::fmt::Write as _;

use super::{Direction, Layout, TipSpec};
use crate::diagram::Polarity;
use crate::error::ParseError;
use crate::sexpr::{self, Cursor, Token, TokenKind};

/// Parses the layout s-expression syntax, e.g. `(hconcat ltr (rail ltr 20) (station ltr "a" #t))`.
pub fn parse_layout(text: &str) -> Result<Layout, ParseError> {
    let tokens = sexpr::tokenize(text)?;
    let mut cur = Cursor::new(&tokens, text.len());
    if cur.peek().is_none() {
        return Err(ParseError::new(0, "empty input"));
    }
    let l = parse_node(&mut cur)?;
    cur.finish()?;
    Ok(l)
}

fn parse_dir(cur: &mut Cursor<'_>) -> Result<Direction, ParseError> {
    let (a, off) = cur.expect_atom("direction")?;
    match a {
        "ltr" => Ok(Direction::Ltr),
        "rtl" => Ok(Direction::Rtl),
        _ => Err(ParseError::new(off, format!("expected `ltr` or `rtl`, found `{a}`"))),
    }
}

fn parse_real(cur: &mut Cursor<'_>, what: &str) -> Result<f64, ParseError> {
    let (a, off) = cur.expect_atom(what)?;
    match a.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::new(off, format!("expected {what}, found `{a}`"))),
    }
}

fn parse_string(cur: &mut Cursor<'_>, what: &str) -> Result<String, ParseError> {
    let off = cur.offset();
    match cur.next() {
        Some(Token { kind: TokenKind::Quoted(s), .. }) => Ok(s.clone()),
        Some(Token { kind: TokenKind::Atom(s), .. }) => Ok(s.clone()),
        _ => Err(ParseError::new(off, format!("expected {what}"))),
    }
}

fn parse_tip(cur: &mut Cursor<'_>) -> Result<TipSpec, ParseError> {
    let off = cur.offset();
    match cur.peek() {
        Some(Token { kind: TokenKind::Atom(a), .. }) if a == "vertical" => {
            cur.next();
            Ok(TipSpec::Vertical)
        }
        Some(Token { kind: TokenKind::Open, .. }) => {
            cur.next();
            let (head, hoff) = cur.expect_atom("`logical` or `physical`")?;
            let ts = match head {
                "logical" => {
                    let (a, aoff) = cur.expect_atom("row number")?;
                    match a.parse::<u32>() {
                        Ok(r) if r > 0 => TipSpec::Logical(r),
                        _ => return Err(ParseError::new(aoff, format!("row number must be a positive integer, found `{a}`"))),
                    }
                }
                "physical" => {
                    let aoff = cur.offset();
                    let p = parse_real(cur, "proportion")?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err(ParseError::new(aoff, format!("proportion must be in [0, 1], found {p}")));
                    }
                    TipSpec::Physical(p)
                }
                _ => return Err(ParseError::new(hoff, format!("unknown tip specification `{head}`"))),
            };
            cur.expect_close()?;
            Ok(ts)
        }
        _ => Err(ParseError::new(off, "expected tip specification")),
    }
}

fn parse_children(cur: &mut Cursor<'_>) -> Result<Vec<Layout>, ParseError> {
    let mut out = Vec::new();
    while !cur.at_close() {
        if cur.peek().is_none() {
            return Err(ParseError::new(cur.offset(), "unbalanced delimiters: missing `)`"));
        }
        out.push(parse_node(cur)?);
    }
    Ok(out)
}

fn parse_node(cur: &mut Cursor<'_>) -> Result<Layout, ParseError> {
    let start = cur.offset();
    cur.expect_open()?;
    let (head, hoff) = cur.expect_atom("layout constructor")?;
    let l = match head {
        "rail" => {
            let dir = parse_dir(cur)?;
            let woff = cur.offset();
            let width = parse_real(cur, "rail width")?;
            if width < 0.0 {
                return Err(ParseError::new(woff, "rail width must be nonnegative"));
            }
            Layout::Rail { dir, width }
        }
        "space" => Layout::Space { dir: parse_dir(cur)? },
        "station" => {
            let dir = parse_dir(cur)?;
            let label = parse_string(cur, "station label")?;
            let (flag, foff) = cur.expect_atom("terminal flag")?;
            let terminal = match flag {
                "#t" => true,
                "#f" => false,
                _ => return Err(ParseError::new(foff, format!("expected #t or #f, found `{flag}`"))),
            };
            Layout::Station { dir, label, terminal }
        }
        "hconcat" => {
            let dir = parse_dir(cur)?;
            let children = parse_children(cur)?;
            if children.is_empty() {
                return Err(ParseError::new(start, "hconcat needs at least one sublayout"));
            }
            Layout::HConcat { dir, children }
        }
        "vconcat-inline" => {
            let dir = parse_dir(cur)?;
            let left = parse_tip(cur)?;
            let right = parse_tip(cur)?;
            let marker = parse_string(cur, "marker")?;
            let children = parse_children(cur)?;
            if children.len() < 2 {
                return Err(ParseError::new(start, "vconcat-inline needs at least two sublayouts"));
            }
            Layout::VConcatInline { dir, left, right, marker, children }
        }
        "vconcat-block" => {
            let dir = parse_dir(cur)?;
            let left = parse_tip(cur)?;
            let right = parse_tip(cur)?;
            let (p, poff) = cur.expect_atom("polarity")?;
            let polarity = Polarity::from_symbol(p)
                .ok_or_else(|| ParseError::new(poff, format!("expected `+` or `-`, found `{p}`")))?;
            let mut children = parse_children(cur)?;
            if children.len() != 2 {
                return Err(ParseError::new(
                    start,
                    format!("vconcat-block needs exactly two sublayouts, found {}", children.len()),
                ));
            }
            let bottom = Box::new(children.pop().unwrap());
            let top = Box::new(children.pop().unwrap());
            Layout::VConcatBlock { dir, left, right, polarity, top, bottom }
        }
        _ => return Err(ParseError::new(hoff, format!("unknown layout constructor `{head}`"))),
    };
    cur.expect_close()?;
    Ok(l)
}

fn tip_str(ts: TipSpec) -> String {
    match ts {
        TipSpec::Vertical => "vertical".to_string(),
        TipSpec::Logical(r) => format!("(logical {r})"),
        TipSpec::Physical(p) => format!("(physical {p})"),
    }
}

/// Prints a layout with one constructor per line, indented by nesting.
pub fn print_layout(l: &Layout) -> String {
    let mut out = String::new();
    write_node(&mut out, l, 0);
    out
}

fn write_node(out: &mut String, l: &Layout, indent: usize) {
    let pad = "  ".repeat(indent);
    out.push_str(&pad);
    match l {
        Layout::Rail { dir, width } => {
            let _ = write!(out, "(rail {} {})", dir.name(), width);
        }
        Layout::Space { dir } => {
            let _ = write!(out, "(space {})", dir.name());
        }
        Layout::Station { dir, label, terminal } => {
            let _ = write!(out, "(station {} {} {})", dir.name(), sexpr::quote(label), if *terminal { "#t" } else { "#f" });
        }
        Layout::HConcat { dir, children } => {
            let _ = write!(out, "(hconcat {}", dir.name());
            write_children(out, children.iter(), indent);
        }
        Layout::VConcatInline { dir, left, right, marker, children } => {
            let _ = write!(out, "(vconcat-inline {} {} {} {}", dir.name(), tip_str(*left), tip_str(*right), sexpr::quote(marker));
            write_children(out, children.iter(), indent);
        }
        Layout::VConcatBlock { dir, left, right, polarity, top, bottom } => {
            let _ = write!(out, "(vconcat-block {} {} {} {}", dir.name(), tip_str(*left), tip_str(*right), polarity.symbol());
            write_children(out, [top.as_ref(), bottom.as_ref()].into_iter(), indent);
        }
    }
}

fn write_children<'a>(out: &mut String, children: impl Iterator<Item = &'a Layout>, indent: usize) {
    for c in children {
        out.push('\n');
        write_node(out, c, indent + 1);
    }
    out.push(')');
}
