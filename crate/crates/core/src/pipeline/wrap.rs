//! Wrapping: wrap specifications, min-/max-content and the local wrap order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::ops::Range;

use super::align::{Aligned, AlignedSeq};
use super::params::{LayoutParams, WrapOrder};
use crate::diagram::Polarity;
use crate::layout::metrics::tip_bracketed;
use crate::layout::{Direction, Side, TipSpec};
use crate::sexpr;

/// Slack allowed when testing whether content fits a target.
pub const FIT_EPS: f64 = 1e-9;

/// 1-based indices of the children that start a row. Always contains 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WrapSpec(pub Vec<usize>);

impl WrapSpec {
    pub fn single() -> WrapSpec {
        WrapSpec(vec![1])
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn is_valid(&self, n: usize) -> bool {
        if n == 0 {
            return self.0 == [1];
        }
        self.0.first() == Some(&1) && self.0.windows(2).all(|w| w[0] < w[1]) && self.0.iter().all(|&p| p <= n)
    }

    /// Zero-based index ranges of the rows.
    pub fn ranges(&self, n: usize) -> Vec<Range<usize>> {
        if n == 0 {
            #[allow(clippy::single_range_in_vec_init)]
            return vec![0..0];
        }
        let mut out = Vec::with_capacity(self.0.len());
        for (i, &p) in self.0.iter().enumerate() {
            let end = self.0.get(i + 1).map_or(n, |&q| q - 1);
            out.push(p - 1..end);
        }
        out
    }

    /// All 2^(n-1) specifications of an n-child sequence, fewest rows first,
    /// then lexicographically.
    pub fn all(n: usize) -> Vec<WrapSpec> {
        WrapSpec::iter_all(n).collect()
    }

    /// The order of [`WrapSpec::all`], generated lazily.
    pub fn iter_all(n: usize) -> AllSpecs {
        AllSpecs { n, next: Some(vec![1]) }
    }
}

/// Iterator over the wrap specifications of a sequence.
#[derive(Debug, Clone)]
pub struct AllSpecs {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllSpecs {
    type Item = WrapSpec;

    fn next(&mut self) -> Option<WrapSpec> {
        let cur = self.next.take()?;
        let n = self.n;
        // row starts after the leading 1 form a combination of 2..=n
        let mut pts = cur.clone();
        let r = pts.len() - 1;
        let bump = (1..=r).rev().find(|&i| pts[i] < n - (r - i));
        self.next = match bump {
            Some(i) => {
                pts[i] += 1;
                for j in i + 1..=r {
                    pts[j] = pts[j - 1] + 1;
                }
                Some(pts)
            }
            None if r + 1 < n => Some((1..=r + 2).collect()),
            None => None,
        };
        Some(WrapSpec(cur))
    }
}

impl fmt::Display for WrapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Width constants the wrap and justify stages need.
#[derive(Debug, Clone)]
pub struct Dims {
    pub s: f64,
    pub gap: f64,
    pub marker: String,
    pub m: f64,
}

impl Dims {
    pub fn new(params: &LayoutParams) -> Dims {
        let marker = params.style.marker.clone();
        Dims { s: params.style.s, gap: params.gap, m: params.style.marker_width(&marker), marker }
    }

    /// Cost of one row: item widths, gaps between items and any frame spaces.
    pub fn row_cost(&self, items: &[f64], start_space: bool, end_space: bool) -> f64 {
        let mut c = items.iter().fold(0.0, |acc, w| acc + w);
        c += self.gap * items.len().saturating_sub(1) as f64;
        if start_space {
            c += 2.0 * self.s;
        }
        if end_space {
            c += 2.0 * self.s;
        }
        c
    }

    /// Width of an inline VC whose widest adjusted row is `inner`.
    pub fn inline_content(&self, inner: f64, br: f64) -> f64 {
        inner + self.m + br
    }

    pub fn block_content(&self, top: f64, bottom: f64, left: TipSpec, right: TipSpec) -> f64 {
        let mut c = top.max(bottom);
        for ts in [left, right] {
            if !ts.is_vertical() {
                c += 3.0 * self.s;
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WSeq {
    /// Preorder index among all sequences of the tree.
    pub id: usize,
    pub dir: Direction,
    pub left: TipSpec,
    pub right: TipSpec,
    /// Reading order.
    pub items: Vec<WNode>,
    pub start_space: bool,
    pub end_space: bool,
    pub depth: u32,
    pub counted: bool,
    /// Set when the wrap of this sequence has already been decided.
    pub fixed: Option<WrapSpec>,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WBlock {
    pub dir: Direction,
    pub left: TipSpec,
    pub right: TipSpec,
    pub polarity: Polarity,
    pub top: Box<WNode>,
    pub bottom: Box<WNode>,
    pub depth: u32,
    pub min: f64,
    pub max: f64,
}

/// Aligned diagram annotated with min- and max-content.
#[derive(Debug, Clone, PartialEq)]
pub enum WNode {
    Station { dir: Direction, label: String, terminal: bool, width: f64 },
    Seq(WSeq),
    Block(WBlock),
}

impl WNode {
    pub fn min(&self) -> f64 {
        match self {
            WNode::Station { width, .. } => *width,
            WNode::Seq(s) => s.min,
            WNode::Block(b) => b.min,
        }
    }

    pub fn max(&self) -> f64 {
        match self {
            WNode::Station { width, .. } => *width,
            WNode::Seq(s) => s.max,
            WNode::Block(b) => b.max,
        }
    }

    pub fn is_concat(&self) -> bool {
        !matches!(self, WNode::Station { .. })
    }

    /// Sequences in preorder.
    pub fn seqs(&self) -> Vec<&WSeq> {
        let mut out = Vec::new();
        fn go<'a>(n: &'a WNode, out: &mut Vec<&'a WSeq>) {
            match n {
                WNode::Station { .. } => {}
                WNode::Seq(s) => {
                    out.push(s);
                    for c in &s.items {
                        go(c, out);
                    }
                }
                WNode::Block(b) => {
                    go(&b.top, out);
                    go(&b.bottom, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl WSeq {
    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn brackets(&self, dims: &Dims) -> f64 {
        let mut br = 0.0;
        for (side, ts) in [(Side::Left, self.left), (Side::Right, self.right)] {
            if tip_bracketed(self.dir, side, ts) {
                br += 3.0 * dims.s;
            }
        }
        br
    }

    /// Content of this sequence wrapped by `spec`, given item widths.
    pub fn content(&self, spec: &WrapSpec, items: &[f64], dims: &Dims) -> f64 {
        let n = items.len();
        let ranges = spec.ranges(n);
        if ranges.len() == 1 {
            return dims.row_cost(items, self.start_space, self.end_space);
        }
        let k = ranges.len();
        let mut inner = dims.m;
        for (r, range) in ranges.into_iter().enumerate() {
            let rc = dims.row_cost(&items[range], r == 0 && self.start_space, r == k - 1 && self.end_space);
            let adj = if r > 0 && r + 1 < k { rc + dims.m } else { rc };
            inner = inner.max(adj);
        }
        dims.inline_content(inner, self.brackets(dims))
    }

    pub fn penalty(&self, rows: usize, order: &WrapOrder) -> f64 {
        if self.counted {
            order.seq_penalty(rows, self.depth)
        } else {
            0.0
        }
    }
}

pub fn build_tree(a: &Aligned, params: &LayoutParams) -> WNode {
    let dims = Dims::new(params);
    let mut next = 0;
    build(a, params, &dims, &mut next)
}

fn build(a: &Aligned, params: &LayoutParams, dims: &Dims, next: &mut usize) -> WNode {
    match a {
        Aligned::Station { dir, label, terminal } => WNode::Station {
            dir: *dir,
            label: label.clone(),
            terminal: *terminal,
            width: params.style.measure_station(label).0 + 2.0 * params.style.s,
        },
        Aligned::Space { .. } => unreachable!("spaces only frame sequences"),
        Aligned::Seq(s) => WNode::Seq(build_seq(s, params, dims, next)),
        Aligned::Block { dir, left, right, polarity, top, bottom, depth } => {
            let top = build(top, params, dims, next);
            let bottom = build(bottom, params, dims, next);
            let min = dims.block_content(top.min(), bottom.min(), *left, *right);
            let max = dims.block_content(top.max(), bottom.max(), *left, *right);
            WNode::Block(WBlock {
                dir: *dir,
                left: *left,
                right: *right,
                polarity: *polarity,
                top: Box::new(top),
                bottom: Box::new(bottom),
                depth: *depth,
                min,
                max,
            })
        }
    }
}

fn build_seq(s: &AlignedSeq, params: &LayoutParams, dims: &Dims, next: &mut usize) -> WSeq {
    let id = *next;
    *next += 1;
    let mut visual: Vec<&Aligned> = s.items().iter().collect();
    if s.dir == Direction::Rtl {
        visual.reverse();
    }
    let items: Vec<WNode> = visual.into_iter().map(|c| build(c, params, dims, next)).collect();
    let mut w = WSeq {
        id,
        dir: s.dir,
        left: s.left,
        right: s.right,
        items,
        start_space: s.space_on(s.dir.start_side()),
        end_space: s.space_on(s.dir.end_side()),
        depth: s.depth,
        counted: s.counted,
        fixed: None,
        min: 0.0,
        max: 0.0,
    };
    let mins: Vec<f64> = w.items.iter().map(WNode::min).collect();
    let maxs: Vec<f64> = w.items.iter().map(WNode::max).collect();
    w.min = RowTable::new(&w, &mins, dims).min_content();
    w.max = w.content(&WrapSpec::single(), &maxs, dims);
    w
}

/// Adjusted row costs for every contiguous range of a sequence.
struct RowTable<'a> {
    n: usize,
    dims: &'a Dims,
    br: f64,
    /// `adj[i][j]`: cost of the row holding items `i..j`, plus a marker if it is a middle row.
    adj: Vec<Vec<f64>>,
    single: f64,
}

impl<'a> RowTable<'a> {
    fn new(seq: &WSeq, items: &[f64], dims: &'a Dims) -> RowTable<'a> {
        let n = items.len();
        let mut adj = vec![vec![f64::NAN; n + 1]; n + 1];
        for i in 0..n {
            for j in i + 1..=n {
                let rc = dims.row_cost(&items[i..j], i == 0 && seq.start_space, j == n && seq.end_space);
                adj[i][j] = if i > 0 && j < n { rc + dims.m } else { rc };
            }
        }
        let single = dims.row_cost(items, seq.start_space, seq.end_space);
        RowTable { n, dims, br: seq.brackets(dims), adj, single }
    }

    fn content_of_inner(&self, inner: f64) -> f64 {
        self.dims.inline_content(inner.max(self.dims.m), self.br)
    }

    /// Smallest bottleneck over all splits into exactly `k` rows, for each k,
    /// restricted to rows accepted by `ok`. Index k of the result; infinity
    /// when no split exists.
    #[allow(clippy::needless_range_loop)]
    fn bottlenecks(&self, ok: &dyn Fn(usize, usize) -> bool) -> Vec<f64> {
        let n = self.n;
        let mut best = vec![vec![f64::INFINITY; n + 1]; n + 1];
        best[0][0] = f64::NEG_INFINITY;
        for r in 1..=n {
            for j in r..=n {
                let mut b = f64::INFINITY;
                for i in r - 1..j {
                    let prev = best[r - 1][i];
                    if prev == f64::INFINITY || !ok(i, j) {
                        continue;
                    }
                    b = b.min(prev.max(self.adj[i][j]));
                }
                best[r][j] = b;
            }
        }
        (0..=n).map(|k| best[k][n]).collect()
    }

    /// Lexicographically smallest split into `k` rows whose rows all pass `ok`
    /// and stay within `thr`.
    fn smallest_spec(&self, k: usize, thr: f64, ok: &dyn Fn(usize, usize) -> bool) -> Option<WrapSpec> {
        let n = self.n;
        let good = |i: usize, j: usize| ok(i, j) && self.adj[i][j] <= thr;
        // reach[r][i]: items i.. can form exactly r good rows
        let mut reach = vec![vec![false; n + 1]; k + 1];
        reach[0][n] = true;
        for r in 1..=k {
            for i in (0..n).rev() {
                reach[r][i] = (i + 1..=n).any(|j| reach[r - 1][j] && good(i, j));
            }
        }
        if !reach[k][0] {
            return None;
        }
        let mut pts = Vec::with_capacity(k);
        let mut i = 0;
        for r in (1..=k).rev() {
            pts.push(i + 1);
            i = (i + 1..=n).find(|&j| reach[r - 1][j] && good(i, j))?;
        }
        Some(WrapSpec(pts))
    }

    fn min_content(&self) -> f64 {
        let mut best = self.single;
        if self.n >= 2 {
            let b = self.bottlenecks(&|_, _| true);
            for &bk in &b[2..] {
                if bk.is_finite() {
                    best = best.min(self.content_of_inner(bk));
                }
            }
        }
        best
    }
}

/// A sequence wrap candidate with its contents and local score.
#[derive(Debug, Clone, PartialEq)]
pub struct WrapCandidate {
    pub spec: WrapSpec,
    pub min_content: f64,
    pub max_content: f64,
    pub penalty: f64,
    pub score: f64,
}

fn local_cmp(a: &WrapCandidate, b: &WrapCandidate) -> Ordering {
    a.score
        .total_cmp(&b.score)
        .then_with(|| a.max_content.total_cmp(&b.max_content))
        .then_with(|| a.spec.cmp(&b.spec))
}

fn local_score(max_content: f64, penalty: f64, target: f64, order: &WrapOrder) -> f64 {
    let excess = (max_content - target).max(0.0);
    order.excess_weight * excess * excess + order.local_penalty_weight * penalty
}

fn candidate(seq: &WSeq, spec: WrapSpec, mins: &[f64], maxs: &[f64], target: f64, dims: &Dims, order: &WrapOrder) -> WrapCandidate {
    let min_content = seq.content(&spec, mins, dims);
    let max_content = seq.content(&spec, maxs, dims);
    let penalty = seq.penalty(spec.rows(), order);
    WrapCandidate { score: local_score(max_content, penalty, target, order), spec, min_content, max_content, penalty }
}

/// Every wrap of `seq`, sorted by the local order at `target`.
pub fn enumerate_sequence_wraps(seq: &WSeq, target: f64, params: &LayoutParams) -> Vec<WrapCandidate> {
    let dims = Dims::new(params);
    let mins: Vec<f64> = seq.items.iter().map(WNode::min).collect();
    let maxs: Vec<f64> = seq.items.iter().map(WNode::max).collect();
    let mut out: Vec<WrapCandidate> = WrapSpec::all(seq.n())
        .into_iter()
        .map(|spec| candidate(seq, spec, &mins, &maxs, target, &dims, &params.order))
        .collect();
    out.sort_by(local_cmp);
    out
}

/// The least wrap under the local order whose min-content fits `target`.
/// Falls back to a wrap of least min-content when nothing fits.
pub fn select_local(seq: &WSeq, target: f64, params: &LayoutParams) -> WrapCandidate {
    let dims = Dims::new(params);
    let mins: Vec<f64> = seq.items.iter().map(WNode::min).collect();
    let maxs: Vec<f64> = seq.items.iter().map(WNode::max).collect();
    select_with(seq, &mins, &maxs, target, &dims, &params.order)
        .or_else(|| select_with(seq, &mins, &maxs, seq.min, &dims, &params.order))
        .unwrap_or_else(|| candidate(seq, WrapSpec::single(), &mins, &maxs, target, &dims, &params.order))
}

fn select_with(seq: &WSeq, mins: &[f64], maxs: &[f64], target: f64, dims: &Dims, order: &WrapOrder) -> Option<WrapCandidate> {
    let n = seq.n();
    let mut best: Option<WrapCandidate> = None;
    let mut consider = |c: WrapCandidate| {
        if best.as_ref().is_none_or(|b| local_cmp(&c, b) == Ordering::Less) {
            best = Some(c);
        }
    };
    let single_min = dims.row_cost(mins, seq.start_space, seq.end_space);
    if single_min <= target + FIT_EPS {
        consider(candidate(seq, WrapSpec::single(), mins, maxs, target, dims, order));
    }
    if n >= 2 {
        let tmin = RowTable::new(seq, mins, dims);
        let tmax = RowTable::new(seq, maxs, dims);
        let br = tmin.br;
        if dims.inline_content(dims.m, br) <= target + FIT_EPS {
            let ok = |i: usize, j: usize| dims.inline_content(tmin.adj[i][j], br) <= target + FIT_EPS;
            let b = tmax.bottlenecks(&ok);
            for (k, &bk) in b.iter().enumerate().skip(2) {
                if !bk.is_finite() {
                    continue;
                }
                let thr = bk.max(dims.m);
                if let Some(spec) = tmax.smallest_spec(k, thr, &ok) {
                    consider(candidate(seq, spec, mins, maxs, target, dims, order));
                }
            }
        }
    }
    best
}

/// Copy of the tree with every sequence fixed to its assigned wrap (absent
/// sequences take a single row) and contents recomputed so min = max.
pub fn fix_tree(n: &WNode, assign: &BTreeMap<usize, WrapSpec>, dims: &Dims) -> WNode {
    match n {
        WNode::Station { .. } => n.clone(),
        WNode::Block(b) => {
            let top = fix_tree(&b.top, assign, dims);
            let bottom = fix_tree(&b.bottom, assign, dims);
            let c = dims.block_content(top.min(), bottom.min(), b.left, b.right);
            WNode::Block(WBlock { top: Box::new(top), bottom: Box::new(bottom), min: c, max: c, ..b.clone() })
        }
        WNode::Seq(s) => {
            let items: Vec<WNode> = s.items.iter().map(|c| fix_tree(c, assign, dims)).collect();
            let spec = assign.get(&s.id).cloned().unwrap_or_else(WrapSpec::single);
            let ws: Vec<f64> = items.iter().map(WNode::min).collect();
            let c = s.content(&spec, &ws, dims);
            WNode::Seq(WSeq { items, fixed: Some(spec), min: c, max: c, ..s.clone() })
        }
    }
}

/// Sum of the sequence penalties of an assignment; missing sequences count as one row.
pub fn wrap_penalty(root: &WNode, assign: &BTreeMap<usize, WrapSpec>, order: &WrapOrder) -> f64 {
    root.seqs().iter().map(|s| s.penalty(assign.get(&s.id).map_or(1, WrapSpec::rows), order)).sum()
}

/// Prints the wrapped tree: sequences show their wrap and rows.
pub fn print_wrapped(root: &WNode, assign: &BTreeMap<usize, WrapSpec>) -> String {
    let mut out = String::new();
    write_wrapped(&mut out, root, assign, 0);
    out
}

fn tip_str(ts: TipSpec) -> String {
    match ts {
        TipSpec::Vertical => "vertical".to_string(),
        TipSpec::Logical(r) => format!("(logical {r})"),
        TipSpec::Physical(p) => format!("(physical {p})"),
    }
}

fn write_wrapped(out: &mut String, n: &WNode, assign: &BTreeMap<usize, WrapSpec>, indent: usize) {
    let pad = "  ".repeat(indent);
    out.push_str(&pad);
    match n {
        WNode::Station { dir, label, terminal, .. } => {
            let _ = write!(out, "(station {} {} {})", dir.name(), sexpr::quote(label), if *terminal { "#t" } else { "#f" });
        }
        WNode::Block(b) => {
            let _ = write!(
                out,
                "(vconcat-block {} {} {} {}",
                b.dir.name(),
                tip_str(b.left),
                tip_str(b.right),
                b.polarity.symbol()
            );
            for c in [&b.top, &b.bottom] {
                out.push('\n');
                write_wrapped(out, c, assign, indent + 1);
            }
            out.push(')');
        }
        WNode::Seq(s) => {
            let spec = assign.get(&s.id).or(s.fixed.as_ref()).cloned().unwrap_or_else(WrapSpec::single);
            let points: Vec<String> = spec.0.iter().map(|p| p.to_string()).collect();
            let _ = write!(
                out,
                "(wrap {} {} {} ({})",
                s.dir.name(),
                tip_str(s.left),
                tip_str(s.right),
                points.join(" ")
            );
            let k = spec.rows();
            for (r, range) in spec.ranges(s.n()).into_iter().enumerate() {
                out.push('\n');
                out.push_str(&pad);
                out.push_str("  (row");
                if r == 0 && s.start_space {
                    out.push_str(" space");
                }
                for c in &s.items[range] {
                    out.push('\n');
                    write_wrapped(out, c, assign, indent + 2);
                }
                if r + 1 == k && s.end_space {
                    out.push_str(" space");
                }
                out.push(')');
            }
            out.push(')');
        }
    }
}
