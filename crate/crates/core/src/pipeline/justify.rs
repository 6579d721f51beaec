//! Justification: distributes a target width over a wrapped tree and emits
//! the final layout.

use std::collections::BTreeMap;

use super::params::{JustifyContent, LayoutParams};
use super::wrap::{select_local, Dims, WNode, WSeq, WrapSpec};
use crate::layout::{Direction, Layout};

/// Bookkeeping after one step of the row algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct RowState {
    /// Absorbed width: everything that becomes rails.
    pub aw: f64,
    /// Width given to each item.
    pub sw: Vec<f64>,
    /// Remaining width.
    pub rw: f64,
}

/// Result of justifying one row: item widths and the rails before, between
/// and after the items (`n + 1` entries, reading order).
#[derive(Debug, Clone, PartialEq)]
pub struct RowPlan {
    pub sw: Vec<f64>,
    pub rails: Vec<f64>,
    /// States after steps 1 to 4.
    pub trace: Vec<RowState>,
}

#[derive(Debug, Clone, Copy)]
pub struct RowItem {
    pub min: f64,
    pub max: f64,
    pub concat: bool,
}

/// Rails smaller than this in magnitude are treated as rounding error.
const RAIL_EPS: f64 = 1e-6;

pub fn justify_row(items: &[RowItem], target: f64, gap: f64, flex_absorb: f64, justify: JustifyContent) -> RowPlan {
    let n = items.len();
    let mut trace = Vec::with_capacity(4);

    // 1: everything at min-content, gaps absorbed
    let mut aw = gap * n.saturating_sub(1) as f64;
    let mut sw: Vec<f64> = items.iter().map(|i| i.min).collect();
    let mut rw = target - aw - sw.iter().sum::<f64>();
    trace.push(RowState { aw, sw: sw.clone(), rw });

    // 2: grow toward max-content
    let growth: Vec<f64> = items.iter().map(|i| (i.max - i.min).max(0.0)).collect();
    let total_growth: f64 = growth.iter().sum();
    let mg = rw.min(total_growth).max(0.0);
    if total_growth > 0.0 && mg > 0.0 {
        for (s, g) in sw.iter_mut().zip(&growth) {
            *s += mg * g / total_growth;
        }
        rw -= mg;
    }
    trace.push(RowState { aw, sw: sw.clone(), rw });

    // 3: absorb a share of the rest
    let absorbed = rw * flex_absorb;
    aw += absorbed;
    rw -= absorbed;
    trace.push(RowState { aw, sw: sw.clone(), rw });

    // 4: the rest goes to concatenations, or is absorbed too
    let weight: f64 = items.iter().filter(|i| i.concat).map(|i| i.max).sum();
    if weight > 0.0 {
        for (s, it) in sw.iter_mut().zip(items) {
            if it.concat {
                *s += rw * it.max / weight;
            }
        }
    } else {
        aw += rw;
    }
    rw = 0.0;
    trace.push(RowState { aw, sw: sw.clone(), rw });

    // 5: realize absorbed width as rails
    let mut e = aw - gap * n.saturating_sub(1) as f64;
    if e < 0.0 && e > -RAIL_EPS {
        e = 0.0;
    }
    let e = e.max(0.0);
    let mut rails = vec![gap; n + 1];
    if n == 0 {
        rails[0] = e;
    } else {
        let nf = n as f64;
        let (lead, between, trail) = match justify {
            JustifyContent::Start => (0.0, gap, e),
            JustifyContent::End => (e, gap, 0.0),
            JustifyContent::Center => (e / 2.0, gap, e / 2.0),
            JustifyContent::SpaceBetween if n == 1 => (0.0, gap, e),
            JustifyContent::SpaceBetween => (0.0, gap + e / (nf - 1.0), 0.0),
            JustifyContent::SpaceAround => (e / (2.0 * nf), gap + e / nf, e / (2.0 * nf)),
            JustifyContent::SpaceEvenly => (e / (nf + 1.0), gap + e / (nf + 1.0), e / (nf + 1.0)),
        };
        rails[0] = lead;
        rails[n] = trail;
        for r in rails.iter_mut().take(n).skip(1) {
            *r = between;
        }
    }
    RowPlan { sw, rails, trace }
}

/// Concatenates in visual order; a single child stands for itself.
pub fn make_hconcat(dir: Direction, mut children: Vec<Layout>) -> Layout {
    if children.len() == 1 {
        return children.pop().unwrap();
    }
    Layout::HConcat { dir, children }
}

pub struct Justifier<'a> {
    params: &'a LayoutParams,
    dims: Dims,
    /// Wrap chosen for each sequence, by sequence id.
    pub chosen: BTreeMap<usize, WrapSpec>,
}

impl<'a> Justifier<'a> {
    pub fn new(params: &'a LayoutParams) -> Justifier<'a> {
        Justifier { params, dims: Dims::new(params), chosen: BTreeMap::new() }
    }

    pub fn node(&mut self, n: &WNode, t: f64) -> Layout {
        match n {
            WNode::Station { dir, label, terminal, .. } => {
                Layout::Station { dir: *dir, label: label.clone(), terminal: *terminal }
            }
            WNode::Block(b) => {
                let mut inner = t;
                for ts in [b.left, b.right] {
                    if !ts.is_vertical() {
                        inner -= 3.0 * self.dims.s;
                    }
                }
                let top = self.node(&b.top, inner);
                let bottom = self.node(&b.bottom, inner);
                Layout::VConcatBlock {
                    dir: b.dir,
                    left: b.left,
                    right: b.right,
                    polarity: b.polarity,
                    top: Box::new(top),
                    bottom: Box::new(bottom),
                }
            }
            WNode::Seq(s) => self.seq(s, t),
        }
    }

    fn seq(&mut self, s: &WSeq, t: f64) -> Layout {
        let spec = match &s.fixed {
            Some(spec) => spec.clone(),
            None => select_local(s, t, self.params).spec,
        };
        self.chosen.insert(s.id, spec.clone());
        let ranges = spec.ranges(s.n());
        let k = ranges.len();
        if k == 1 {
            return self.row(s, 0..s.n(), true, true, t);
        }
        let w = t - self.dims.m - s.brackets(&self.dims);
        let rows: Vec<Layout> = ranges
            .into_iter()
            .enumerate()
            .map(|(r, range)| {
                let (first, last) = (r == 0, r + 1 == k);
                let rt = if first || last { w } else { w - self.dims.m };
                self.row(s, range, first, last, rt)
            })
            .collect();
        Layout::VConcatInline { dir: s.dir, left: s.left, right: s.right, marker: self.dims.marker.clone(), children: rows }
    }

    fn row(&mut self, s: &WSeq, range: std::ops::Range<usize>, first: bool, last: bool, t: f64) -> Layout {
        let start_space = first && s.start_space;
        let end_space = last && s.end_space;
        let mut core = t;
        for sp in [start_space, end_space] {
            if sp {
                core -= 2.0 * self.dims.s;
            }
        }
        let items = &s.items[range];
        let spec: Vec<RowItem> =
            items.iter().map(|i| RowItem { min: i.min(), max: i.max(), concat: i.is_concat() }).collect();
        let plan = justify_row(&spec, core, self.dims.gap, self.params.flex_absorb, self.params.justify_content);
        let dir = s.dir;
        let mut out = Vec::with_capacity(2 * items.len() + 3);
        if start_space {
            out.push(Layout::Space { dir });
        }
        if items.is_empty() {
            if plan.rails[0] > 0.0 || !(start_space || end_space) {
                out.push(Layout::Rail { dir, width: plan.rails[0] });
            }
        } else {
            for (i, item) in items.iter().enumerate() {
                if plan.rails[i] > 0.0 {
                    out.push(Layout::Rail { dir, width: plan.rails[i] });
                }
                out.push(self.node(item, plan.sw[i]));
            }
            let trail = plan.rails[items.len()];
            if trail > 0.0 {
                out.push(Layout::Rail { dir, width: trail });
            }
        }
        if end_space {
            out.push(Layout::Space { dir });
        }
        if dir == Direction::Rtl {
            out.reverse();
        }
        make_hconcat(dir, out)
    }
}
