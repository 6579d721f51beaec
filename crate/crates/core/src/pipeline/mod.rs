//! The compiler: canonical form, immediate lowering, alignment, wrapping and
//! justification.

pub mod align;
pub mod global;
pub mod immediate;
pub mod justify;
pub mod params;
pub mod wrap;

use std::collections::BTreeMap;

pub use align::{align, print_aligned, Aligned, AlignedSeq};
pub use global::{global_search, GlobalChoice, GlobalOutcome};
pub use immediate::{print_immediate, to_immediate, Immediate};
pub use justify::{justify_row, RowItem, RowPlan, RowState};
pub use params::{AlignItems, JustifyContent, LayoutParams, OrderMode, PenaltyFn, WrapMode, WrapOrder};
pub use wrap::{enumerate_sequence_wraps, print_wrapped, select_local, WNode, WrapCandidate, WrapSpec, FIT_EPS};

use crate::diagram::{canonicalize, Diagram};
use crate::error::LayoutError;
use crate::layout::{Direction, Layout};
use crate::render::geometry::layout_height;
use justify::Justifier;
use wrap::{build_tree, fix_tree, Dims};

/// Intermediate forms of one diagram.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub canonical: Diagram,
    pub immediate: Immediate,
    pub aligned: Aligned,
    pub tree: WNode,
}

pub fn prepare(d: &Diagram, params: &LayoutParams) -> Prepared {
    let canonical = canonicalize(d);
    let immediate = to_immediate(&canonical, Direction::Ltr);
    let aligned = align(&immediate, params);
    let tree = build_tree(&aligned, params);
    Prepared { canonical, immediate, aligned, tree }
}

/// Narrowest target the diagram can be laid out at.
pub fn min_content(d: &Diagram, params: &LayoutParams) -> f64 {
    prepare(d, params).tree.min()
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub layout: Layout,
    pub min_content: f64,
    pub max_content: f64,
    /// Content width of the wraps actually used.
    pub chosen_content: f64,
    pub wrap_penalty: f64,
    pub height: f64,
    /// The global search ran out of budget and local wrapping was used instead.
    pub degraded: bool,
    /// Wrap chosen for each sequence, by preorder sequence id.
    pub wraps: BTreeMap<usize, WrapSpec>,
    pub prepared: Prepared,
}

impl Compiled {
    pub fn dump_wrapped(&self) -> String {
        print_wrapped(&self.prepared.tree, &self.wraps)
    }
}

pub fn compile(d: &Diagram, params: &LayoutParams) -> Result<Compiled, LayoutError> {
    params.validate().map_err(LayoutError::InvalidParams)?;
    let prepared = prepare(d, params);
    let tree = &prepared.tree;
    let t = params.target_width;
    let min = tree.min();
    if t < min - FIT_EPS {
        return Err(LayoutError::TargetTooSmall { target: t, min_content: min });
    }
    let dims = Dims::new(params);
    let mut degraded = false;
    let (layout, wraps) = match params.wrap_mode {
        WrapMode::Local => local_justify(tree, params),
        WrapMode::Global => match global_search(tree, params) {
            GlobalOutcome::Found(choice) => {
                let fixed = fix_tree(tree, &choice.assignment, &dims);
                let mut j = Justifier::new(params);
                let layout = j.node(&fixed, t);
                (layout, j.chosen)
            }
            GlobalOutcome::Exhausted => {
                degraded = true;
                local_justify(tree, params)
            }
            GlobalOutcome::Infeasible => return Err(LayoutError::NoFeasibleWrap { target: t, min_content: min }),
        },
    };
    let chosen_content = fix_tree(tree, &wraps, &dims).min();
    let wrap_penalty = wrap::wrap_penalty(tree, &wraps, &params.order);
    let height = layout_height(&layout, &params.style);
    Ok(Compiled {
        layout,
        min_content: min,
        max_content: tree.max(),
        chosen_content,
        wrap_penalty,
        height,
        degraded,
        wraps,
        prepared,
    })
}

fn local_justify(tree: &WNode, params: &LayoutParams) -> (Layout, BTreeMap<usize, WrapSpec>) {
    let mut j = Justifier::new(params);
    let layout = j.node(tree, params.target_width);
    (layout, j.chosen)
}
