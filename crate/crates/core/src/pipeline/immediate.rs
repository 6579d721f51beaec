use std::fmt::Write as _;

use crate::diagram::{Diagram, Polarity};
use crate::layout::Direction;
use crate::sexpr;

/// Tokens become stations and stacks become blocks. Sequence children are
/// kept in visual order, so right-to-left sequences are reversed.
#[derive(Debug, Clone, PartialEq)]
pub enum Immediate {
    Station { dir: Direction, label: String, terminal: bool },
    Seq { dir: Direction, children: Vec<Immediate> },
    Block { dir: Direction, polarity: Polarity, top: Box<Immediate>, bottom: Box<Immediate> },
}

impl Immediate {
    pub fn dir(&self) -> Direction {
        match self {
            Immediate::Station { dir, .. } | Immediate::Seq { dir, .. } | Immediate::Block { dir, .. } => *dir,
        }
    }
}

pub fn to_immediate(d: &Diagram, dir: Direction) -> Immediate {
    match d {
        Diagram::Terminal(l) => Immediate::Station { dir, label: l.clone(), terminal: true },
        Diagram::NonTerminal(l) => Immediate::Station { dir, label: l.clone(), terminal: false },
        Diagram::Sequence(children) => {
            let mut children: Vec<Immediate> = children.iter().map(|c| to_immediate(c, dir)).collect();
            if dir == Direction::Rtl {
                children.reverse();
            }
            Immediate::Seq { dir, children }
        }
        Diagram::Stack(pol, t, b) => Immediate::Block {
            dir,
            polarity: *pol,
            top: Box::new(to_immediate(t, dir)),
            bottom: Box::new(to_immediate(b, dir.under(*pol))),
        },
    }
}

pub fn print_immediate(id: &Immediate) -> String {
    let mut out = String::new();
    write_imm(&mut out, id, 0);
    out
}

fn write_imm(out: &mut String, id: &Immediate, indent: usize) {
    out.push_str(&"  ".repeat(indent));
    match id {
        Immediate::Station { dir, label, terminal } => {
            let _ = write!(out, "(station {} {} {})", dir.name(), sexpr::quote(label), if *terminal { "#t" } else { "#f" });
        }
        Immediate::Seq { dir, children } => {
            let _ = write!(out, "({}", dir.name());
            for c in children {
                out.push('\n');
                write_imm(out, c, indent + 1);
            }
            out.push(')');
        }
        Immediate::Block { dir, polarity, top, bottom } => {
            let _ = write!(out, "(vconcat-block {} {}", dir.name(), polarity.symbol());
            for c in [top, bottom] {
                out.push('\n');
                write_imm(out, c, indent + 1);
            }
            out.push(')');
        }
    }
}
