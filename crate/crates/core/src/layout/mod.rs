//! Concrete layouts: rails, spaces, stations and the three concatenations.

pub(crate) mod metrics;
mod syntax;
mod wf;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Polarity};

pub use metrics::{connectability, connectable_rows, inner_rows, logical_rows, width};
pub use syntax::{parse_layout, print_layout};
pub use wf::{top_level_well_formed, well_formed, well_formed_eps, WfReport, WfRule, WfViolation, DEFAULT_WF_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ltr,
    Rtl,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Ltr => Direction::Rtl,
            Direction::Rtl => Direction::Ltr,
        }
    }

    /// Direction of the bottom of a block with this direction and polarity.
    pub fn under(self, pol: Polarity) -> Direction {
        match pol {
            Polarity::Positive => self,
            Polarity::Negative => self.flip(),
        }
    }

    pub fn start_side(self) -> Side {
        match self {
            Direction::Ltr => Side::Left,
            Direction::Rtl => Side::Right,
        }
    }

    pub fn end_side(self) -> Side {
        self.start_side().opposite()
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Ltr => "ltr",
            Direction::Rtl => "rtl",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum TipSpec {
    Vertical,
    Logical(u32),
    Physical(f64),
}

impl TipSpec {
    pub fn is_vertical(self) -> bool {
        matches!(self, TipSpec::Vertical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectability {
    Neither,
    Up,
    Down,
    Both,
}

impl Connectability {
    pub fn from_flags(up: bool, down: bool) -> Connectability {
        match (up, down) {
            (false, false) => Connectability::Neither,
            (true, false) => Connectability::Up,
            (false, true) => Connectability::Down,
            (true, true) => Connectability::Both,
        }
    }

    pub fn up(self) -> bool {
        matches!(self, Connectability::Up | Connectability::Both)
    }

    pub fn down(self) -> bool {
        matches!(self, Connectability::Down | Connectability::Both)
    }

    /// The capability order: `self` offers everything `other` does.
    pub fn at_least(self, other: Connectability) -> bool {
        (self.up() || !other.up()) && (self.down() || !other.down())
    }

    pub fn name(self) -> &'static str {
        match self {
            Connectability::Neither => "neither",
            Connectability::Up => "up",
            Connectability::Down => "down",
            Connectability::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    Rail {
        dir: Direction,
        width: f64,
    },
    Space {
        dir: Direction,
    },
    Station {
        dir: Direction,
        label: String,
        terminal: bool,
    },
    HConcat {
        dir: Direction,
        children: Vec<Layout>,
    },
    VConcatInline {
        dir: Direction,
        left: TipSpec,
        right: TipSpec,
        marker: String,
        children: Vec<Layout>,
    },
    VConcatBlock {
        dir: Direction,
        left: TipSpec,
        right: TipSpec,
        polarity: Polarity,
        top: Box<Layout>,
        bottom: Box<Layout>,
    },
}

impl Layout {
    pub fn dir(&self) -> Direction {
        match self {
            Layout::Rail { dir, .. }
            | Layout::Space { dir }
            | Layout::Station { dir, .. }
            | Layout::HConcat { dir, .. }
            | Layout::VConcatInline { dir, .. }
            | Layout::VConcatBlock { dir, .. } => *dir,
        }
    }

    /// Tip specification on `side`; non-VC layouts have `(logical 1)`.
    pub fn tip(&self, side: Side) -> TipSpec {
        match self {
            Layout::VConcatInline { left, right, .. } | Layout::VConcatBlock { left, right, .. } => match side {
                Side::Left => *left,
                Side::Right => *right,
            },
            _ => TipSpec::Logical(1),
        }
    }

    pub fn is_block(&self, pol: Polarity) -> bool {
        matches!(self, Layout::VConcatBlock { polarity, .. } if *polarity == pol)
    }

    /// Direct subterms in term order.
    pub fn children(&self) -> Vec<&Layout> {
        match self {
            Layout::HConcat { children, .. } | Layout::VConcatInline { children, .. } => children.iter().collect(),
            Layout::VConcatBlock { top, bottom, .. } => vec![top, bottom],
            _ => Vec::new(),
        }
    }

    /// Subterm at a path of child indices.
    pub fn at_path(&self, path: &[usize]) -> Option<&Layout> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Nesting depth: atoms are 1.
    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }
}

/// Extracts the diagram a layout draws.
pub fn diagram_of(l: &Layout) -> Diagram {
    match l {
        Layout::Rail { .. } | Layout::Space { .. } => Diagram::epsilon(),
        Layout::Station { label, terminal: true, .. } => Diagram::Terminal(label.clone()),
        Layout::Station { label, terminal: false, .. } => Diagram::NonTerminal(label.clone()),
        Layout::HConcat { dir: Direction::Ltr, children } | Layout::VConcatInline { children, .. } => {
            Diagram::Sequence(children.iter().map(diagram_of).collect())
        }
        Layout::HConcat { dir: Direction::Rtl, children } => {
            Diagram::Sequence(children.iter().rev().map(diagram_of).collect())
        }
        Layout::VConcatBlock { polarity, top, bottom, .. } => {
            Diagram::stack(*polarity, diagram_of(top), diagram_of(bottom))
        }
    }
}
