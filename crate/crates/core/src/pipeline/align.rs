//! Alignment: chooses tip specifications and inserts the spaces that make
//! block children connectable.

use std::fmt::Write as _;

use super::immediate::Immediate;
use super::params::{AlignItems, JustifyContent, LayoutParams};
use crate::diagram::Polarity;
use crate::layout::{Direction, Side, TipSpec};
use crate::sexpr;

#[derive(Debug, Clone, PartialEq)]
pub enum Aligned {
    Station { dir: Direction, label: String, terminal: bool },
    Space { dir: Direction },
    Seq(AlignedSeq),
    Block {
        dir: Direction,
        left: TipSpec,
        right: TipSpec,
        polarity: Polarity,
        top: Box<Aligned>,
        bottom: Box<Aligned>,
        depth: u32,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignedSeq {
    pub dir: Direction,
    pub left: TipSpec,
    pub right: TipSpec,
    /// Visual order; framing spaces appear only as the first and last child.
    pub children: Vec<Aligned>,
    /// Nesting depth of the sequence in the canonical diagram.
    pub depth: u32,
    /// False for sequences the aligner introduced to frame a single term;
    /// these never wrap and carry no penalty.
    pub counted: bool,
}

impl AlignedSeq {
    pub fn space_on(&self, side: Side) -> bool {
        let c = match side {
            Side::Left => self.children.first(),
            Side::Right => self.children.last(),
        };
        matches!(c, Some(Aligned::Space { .. }))
    }

    /// Children without the framing spaces, in visual order.
    pub fn items(&self) -> &[Aligned] {
        let mut lo = 0;
        let mut hi = self.children.len();
        if self.space_on(Side::Left) {
            lo += 1;
        }
        if hi > lo && self.space_on(Side::Right) {
            hi -= 1;
        }
        &self.children[lo..hi]
    }
}

impl Aligned {
    pub fn dir(&self) -> Direction {
        match self {
            Aligned::Station { dir, .. } | Aligned::Space { dir } | Aligned::Block { dir, .. } => *dir,
            Aligned::Seq(s) => s.dir,
        }
    }

    pub fn tip(&self, side: Side) -> TipSpec {
        match self {
            Aligned::Block { left, right, .. } => match side {
                Side::Left => *left,
                Side::Right => *right,
            },
            Aligned::Seq(s) => match side {
                Side::Left => s.left,
                Side::Right => s.right,
            },
            _ => TipSpec::Logical(1),
        }
    }
}

/// Logical rows the eventual layout offers on `side`.
pub fn aligned_rows(a: &Aligned, side: Side) -> u32 {
    match a {
        Aligned::Station { .. } | Aligned::Space { .. } => 1,
        Aligned::Seq(s) => {
            let c = match side {
                Side::Left => s.children.first(),
                Side::Right => s.children.last(),
            };
            c.map_or(1, |c| aligned_rows(c, side))
        }
        Aligned::Block { .. } if !a.tip(side).is_vertical() => 1,
        Aligned::Block { .. } => block_inner_rows(a, side),
    }
}

pub fn aligned_connectable_rows(a: &Aligned, side: Side) -> u32 {
    match a {
        Aligned::Seq(s) => {
            let c = match side {
                Side::Left => s.children.first(),
                Side::Right => s.children.last(),
            };
            c.map_or(1, |c| aligned_connectable_rows(c, side))
        }
        Aligned::Block { polarity: Polarity::Negative, .. } if a.tip(side).is_vertical() => 1,
        _ => aligned_rows(a, side),
    }
}

fn block_inner_rows(a: &Aligned, side: Side) -> u32 {
    match a {
        Aligned::Block { polarity: Polarity::Positive, top, bottom, .. } => {
            aligned_connectable_rows(top, side) + aligned_connectable_rows(bottom, side)
        }
        Aligned::Block { polarity: Polarity::Negative, top, bottom, .. } => {
            aligned_rows(top, side) + aligned_rows(bottom, side) + 1 - aligned_connectable_rows(top, side)
        }
        _ => aligned_rows(a, side),
    }
}

struct Aligner {
    align: AlignItems,
    justify: JustifyContent,
}

pub fn align(id: &Immediate, params: &LayoutParams) -> Aligned {
    let al = Aligner { align: params.align_items, justify: params.justify_content };
    match id {
        Immediate::Seq { dir, children } => Aligned::Seq(al.seq(*dir, children, 0, false, true)),
        other => {
            let item = al.item(other, 0, false, false);
            let dir = other.dir();
            Aligned::Seq(AlignedSeq {
                dir,
                left: TipSpec::Logical(1),
                right: TipSpec::Logical(1),
                children: vec![item],
                depth: 0,
                counted: false,
            })
        }
    }
}

fn is_positive_block(id: &Immediate) -> bool {
    matches!(id, Immediate::Block { polarity: Polarity::Positive, .. })
}

impl Aligner {
    fn seq(&self, dir: Direction, children: &[Immediate], depth: u32, framed: bool, counted: bool) -> AlignedSeq {
        let n = children.len();
        let (first_vis, last_vis) = match dir {
            Direction::Ltr => (0, n.wrapping_sub(1)),
            Direction::Rtl => (n.wrapping_sub(1), 0),
        };
        let collapse_start = framed
            && n >= 2
            && matches!(self.justify, JustifyContent::Start | JustifyContent::SpaceBetween)
            && is_positive_block(&children[first_vis]);
        let collapse_end =
            framed && n >= 2 && self.justify == JustifyContent::End && is_positive_block(&children[last_vis]);
        let start = dir.start_side();
        let mut items = Vec::with_capacity(n);
        for (i, c) in children.iter().enumerate() {
            let at_start = collapse_start && i == first_vis;
            let at_end = collapse_end && i == last_vis;
            let (vl, vr) = match start {
                Side::Left => (at_start, at_end),
                Side::Right => (at_end, at_start),
            };
            items.push(self.item(c, depth + 1, vl, vr));
        }
        let (collapse_left, collapse_right) = match start {
            Side::Left => (collapse_start, collapse_end),
            Side::Right => (collapse_end, collapse_start),
        };
        let mut all = Vec::with_capacity(n + 2);
        if framed && !collapse_left {
            all.push(Aligned::Space { dir });
        }
        all.extend(items);
        if framed && !collapse_right {
            all.push(Aligned::Space { dir });
        }
        let mut s = AlignedSeq {
            dir,
            left: TipSpec::Logical(1),
            right: TipSpec::Logical(1),
            children: all,
            depth,
            counted,
        };
        let probe = Aligned::Seq(s.clone());
        s.left = self.seq_tip(&probe, Side::Left);
        s.right = self.seq_tip(&probe, Side::Right);
        s
    }

    fn seq_tip(&self, seq: &Aligned, side: Side) -> TipSpec {
        match self.align {
            AlignItems::Top | AlignItems::Baseline => TipSpec::Logical(1),
            AlignItems::Bottom => TipSpec::Logical(aligned_rows(seq, side)),
            AlignItems::Center => TipSpec::Physical(0.5),
        }
    }

    /// A term placed in a sequence. `vl`/`vr` request a collapsed side.
    fn item(&self, id: &Immediate, depth: u32, vl: bool, vr: bool) -> Aligned {
        match id {
            Immediate::Station { dir, label, terminal } => {
                Aligned::Station { dir: *dir, label: label.clone(), terminal: *terminal }
            }
            Immediate::Block { .. } => self.block(id, depth, vl, vr),
            // Canonical diagrams have no sequence directly inside a sequence.
            Immediate::Seq { dir, children } => Aligned::Seq(self.seq(*dir, children, depth, false, !children.is_empty())),
        }
    }

    /// A direct subterm of a block, which must be connectable on both sides.
    fn block_child(&self, id: &Immediate, depth: u32) -> Aligned {
        match id {
            Immediate::Station { dir, .. } => Aligned::Seq(self.framed_single(*dir, self.item(id, depth, false, false), depth)),
            Immediate::Seq { dir, children } => Aligned::Seq(self.seq(*dir, children, depth, true, !children.is_empty())),
            Immediate::Block { polarity: Polarity::Positive, .. } => self.block(id, depth, true, true),
            Immediate::Block { dir, .. } => {
                Aligned::Seq(self.framed_single(*dir, self.block(id, depth, false, false), depth))
            }
        }
    }

    fn framed_single(&self, dir: Direction, inner: Aligned, depth: u32) -> AlignedSeq {
        AlignedSeq {
            dir,
            left: TipSpec::Logical(1),
            right: TipSpec::Logical(1),
            children: vec![Aligned::Space { dir }, inner, Aligned::Space { dir }],
            depth,
            counted: false,
        }
    }

    fn block(&self, id: &Immediate, depth: u32, vl: bool, vr: bool) -> Aligned {
        let Immediate::Block { dir, polarity, top, bottom } = id else { unreachable!("block expected") };
        let top_a = self.block_child(top, depth + 1);
        let bottom_a = self.block_child(bottom, depth + 1);
        let top_is_eps = matches!(top.as_ref(), Immediate::Seq { children, .. } if children.is_empty());
        let mut out = Aligned::Block {
            dir: *dir,
            left: TipSpec::Logical(1),
            right: TipSpec::Logical(1),
            polarity: *polarity,
            top: Box::new(top_a),
            bottom: Box::new(bottom_a),
            depth,
        };
        let collapse = *polarity == Polarity::Positive;
        let left = if vl && collapse { TipSpec::Vertical } else { self.block_tip(&out, Side::Left, top_is_eps) };
        let right = if vr && collapse { TipSpec::Vertical } else { self.block_tip(&out, Side::Right, top_is_eps) };
        if let Aligned::Block { left: l, right: r, .. } = &mut out {
            *l = left;
            *r = right;
        }
        out
    }

    fn block_tip(&self, block: &Aligned, side: Side, top_is_eps: bool) -> TipSpec {
        let Aligned::Block { polarity, bottom, .. } = block else { unreachable!("block expected") };
        match self.align {
            AlignItems::Top => TipSpec::Logical(1),
            AlignItems::Bottom => TipSpec::Logical(block_inner_rows(block, side)),
            AlignItems::Center => TipSpec::Physical(0.5),
            AlignItems::Baseline => {
                if *polarity == Polarity::Positive && top_is_eps && aligned_connectable_rows(bottom, side) == 1 {
                    TipSpec::Logical(2)
                } else {
                    TipSpec::Logical(1)
                }
            }
        }
    }
}

fn tip_str(ts: TipSpec) -> String {
    match ts {
        TipSpec::Vertical => "vertical".to_string(),
        TipSpec::Logical(r) => format!("(logical {r})"),
        TipSpec::Physical(p) => format!("(physical {p})"),
    }
}

pub fn print_aligned(a: &Aligned) -> String {
    let mut out = String::new();
    write_aligned(&mut out, a, 0);
    out
}

fn write_aligned(out: &mut String, a: &Aligned, indent: usize) {
    out.push_str(&"  ".repeat(indent));
    match a {
        Aligned::Station { dir, label, terminal } => {
            let _ = write!(out, "(station {} {} {})", dir.name(), sexpr::quote(label), if *terminal { "#t" } else { "#f" });
        }
        Aligned::Space { dir } => {
            let _ = write!(out, "(space {})", dir.name());
        }
        Aligned::Seq(s) => {
            let _ = write!(out, "({} {} {}", s.dir.name(), tip_str(s.left), tip_str(s.right));
            for c in &s.children {
                out.push('\n');
                write_aligned(out, c, indent + 1);
            }
            out.push(')');
        }
        Aligned::Block { dir, left, right, polarity, top, bottom, .. } => {
            let _ = write!(out, "(vconcat-block {} {} {} {}", dir.name(), tip_str(*left), tip_str(*right), polarity.symbol());
            for c in [top, bottom] {
                out.push('\n');
                write_aligned(out, c, indent + 1);
            }
            out.push(')');
        }
    }
}

/// Checks the structural invariants of an aligned tree: no vertical tips on
/// negative blocks or sequences, and spaces only at the ends of sequences
/// that sit directly inside blocks.
pub fn check_aligned_invariants(root: &Aligned) -> Result<(), String> {
    fn go(a: &Aligned, in_block: bool, is_root: bool) -> Result<(), String> {
        match a {
            Aligned::Station { .. } => Ok(()),
            Aligned::Space { .. } => Err("space outside a sequence end".into()),
            Aligned::Block { polarity, left, right, top, bottom, .. } => {
                if *polarity == Polarity::Negative && (left.is_vertical() || right.is_vertical()) {
                    return Err("vertical tip on a negative block".into());
                }
                go(top, true, false)?;
                go(bottom, true, false)
            }
            Aligned::Seq(s) => {
                if s.left.is_vertical() || s.right.is_vertical() {
                    return Err("vertical tip on a sequence".into());
                }
                let n = s.children.len();
                for (i, c) in s.children.iter().enumerate() {
                    if let Aligned::Space { .. } = c {
                        if !in_block || is_root {
                            return Err("space in a sequence that is not a block child".into());
                        }
                        if i != 0 && i + 1 != n {
                            return Err("space in the middle of a sequence".into());
                        }
                    } else {
                        go(c, false, false)?;
                    }
                }
                Ok(())
            }
        }
    }
    go(root, false, true)
}
