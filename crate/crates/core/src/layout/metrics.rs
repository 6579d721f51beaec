use super::{Connectability, Direction, Layout, Side, TipSpec};
use crate::diagram::Polarity;
use crate::style::StyleConstants;

/// Whether an inline VC draws a bracket on `side`. Only physical tips do,
/// except at the start-side top (0) and the end-side bottom (1).
pub(crate) fn inline_bracketed(l: &Layout, side: Side) -> bool {
    let Layout::VConcatInline { dir, .. } = l else { return false };
    tip_bracketed(*dir, side, l.tip(side))
}

pub(crate) fn tip_bracketed(dir: Direction, side: Side, ts: TipSpec) -> bool {
    match ts {
        TipSpec::Physical(p) => {
            if side == dir.start_side() {
                p != 0.0
            } else {
                p != 1.0
            }
        }
        _ => false,
    }
}

pub fn width(l: &Layout, style: &StyleConstants) -> f64 {
    match l {
        Layout::Rail { width, .. } => *width,
        Layout::Space { .. } => 2.0 * style.s,
        Layout::Station { label, .. } => style.measure_station(label).0 + 2.0 * style.s,
        Layout::HConcat { children, .. } => children.iter().map(|c| width(c, style)).sum(),
        Layout::VConcatInline { marker, children, .. } => {
            let mut w = width(&children[0], style) + style.marker_width(marker);
            for side in [Side::Left, Side::Right] {
                if inline_bracketed(l, side) {
                    w += 3.0 * style.s;
                }
            }
            w
        }
        Layout::VConcatBlock { left, right, top, .. } => {
            let mut w = width(top, style);
            for ts in [left, right] {
                if !ts.is_vertical() {
                    w += 3.0 * style.s;
                }
            }
            w
        }
    }
}

fn sidemost(l: &Layout, side: Side) -> Option<&Layout> {
    match l {
        Layout::HConcat { children, .. } => match side {
            Side::Left => children.first(),
            Side::Right => children.last(),
        },
        Layout::VConcatInline { dir, children, .. } => {
            if side == dir.start_side() {
                children.first()
            } else {
                children.last()
            }
        }
        _ => None,
    }
}

/// Rows a block VC offers on `side` when that tip is vertical; also the
/// bound for a logical tip on that side.
pub fn inner_rows(l: &Layout, side: Side) -> u32 {
    match l {
        Layout::VConcatBlock { polarity: Polarity::Positive, top, bottom, .. } => {
            connectable_rows(top, side) + connectable_rows(bottom, side)
        }
        Layout::VConcatBlock { polarity: Polarity::Negative, top, bottom, .. } => {
            logical_rows(top, side) + logical_rows(bottom, side) + 1 - connectable_rows(top, side)
        }
        _ => logical_rows(l, side),
    }
}

pub fn logical_rows(l: &Layout, side: Side) -> u32 {
    match l {
        Layout::Rail { .. } | Layout::Space { .. } | Layout::Station { .. } => 1,
        Layout::HConcat { .. } | Layout::VConcatInline { .. } => match sidemost(l, side) {
            Some(c) => logical_rows(c, side),
            None => 1,
        },
        Layout::VConcatBlock { .. } => {
            if l.tip(side).is_vertical() {
                inner_rows(l, side)
            } else {
                1
            }
        }
    }
}

pub fn connectable_rows(l: &Layout, side: Side) -> u32 {
    match l {
        Layout::HConcat { .. } | Layout::VConcatInline { .. } => match sidemost(l, side) {
            Some(c) => connectable_rows(c, side),
            None => 1,
        },
        Layout::VConcatBlock { polarity: Polarity::Negative, .. } if l.tip(side).is_vertical() => 1,
        _ => logical_rows(l, side),
    }
}

pub fn connectability(l: &Layout, side: Side) -> Connectability {
    match l {
        Layout::Rail { .. } | Layout::Station { .. } => Connectability::Neither,
        Layout::Space { .. } => Connectability::Both,
        Layout::HConcat { .. } | Layout::VConcatInline { .. } => match sidemost(l, side) {
            Some(c) => connectability(c, side),
            None => Connectability::Neither,
        },
        Layout::VConcatBlock { polarity, top, bottom, .. } => {
            if !l.tip(side).is_vertical() {
                return Connectability::Neither;
            }
            let up = match polarity {
                Polarity::Positive if top.is_block(Polarity::Negative) => false,
                Polarity::Negative if top.is_block(Polarity::Positive) => false,
                _ => connectability(top, side).up(),
            };
            let down = if bottom.is_block(Polarity::Negative) {
                false
            } else {
                connectability(bottom, side).down()
            };
            Connectability::from_flags(up, down)
        }
    }
}
