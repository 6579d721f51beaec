//! Global wrapping: an exact search over per-sequence wrap choices.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::justify::Justifier;
use super::params::{LayoutParams, OrderMode};
use super::wrap::{fix_tree, Dims, WNode, WSeq, WrapSpec, FIT_EPS};
use crate::render::geometry::layout_height;

/// The best assignment found and what it scores.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalChoice {
    pub assignment: BTreeMap<usize, WrapSpec>,
    pub content: f64,
    pub penalty: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GlobalOutcome {
    Found(GlobalChoice),
    /// The expansion budget ran out.
    Exhausted,
    Infeasible,
}

/// Content of the tree under a full assignment.
pub fn assigned_content(root: &WNode, assign: &BTreeMap<usize, WrapSpec>, dims: &Dims) -> f64 {
    fix_tree(root, assign, dims).min()
}

/// Height of the layout an assignment yields when justified at its own content.
pub fn assigned_height(root: &WNode, assign: &BTreeMap<usize, WrapSpec>, params: &LayoutParams) -> f64 {
    let dims = Dims::new(params);
    let fixed = fix_tree(root, assign, &dims);
    let mut j = Justifier::new(params);
    let l = j.node(&fixed, fixed.min());
    layout_height(&l, &params.style)
}

pub fn assigned_penalty(root: &WNode, assign: &BTreeMap<usize, WrapSpec>, params: &LayoutParams) -> f64 {
    super::wrap::wrap_penalty(root, assign, &params.order)
}

/// Key used to break exact ties: the specs of counted sequences in preorder.
fn structural_key(assign: &BTreeMap<usize, WrapSpec>) -> Vec<&WrapSpec> {
    assign.values().collect()
}

struct Leaf {
    assign: BTreeMap<usize, WrapSpec>,
    content: f64,
    penalty: f64,
    height: Option<f64>,
}

struct Search<'a> {
    root: &'a WNode,
    params: &'a LayoutParams,
    dims: Dims,
    seqs: Vec<&'a WSeq>,
    assign: BTreeMap<usize, WrapSpec>,
    best: Option<Leaf>,
    expansions: u64,
    exhausted: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Bound {
    Lower,
    Upper,
}

impl Search<'_> {
    fn bound(&self, n: &WNode, which: Bound) -> f64 {
        match n {
            WNode::Station { width, .. } => *width,
            WNode::Block(b) => {
                let t = self.bound(&b.top, which);
                let bt = self.bound(&b.bottom, which);
                self.dims.block_content(t, bt, b.left, b.right)
            }
            WNode::Seq(s) => {
                let spec = if s.counted { self.assign.get(&s.id).cloned() } else { Some(WrapSpec::single()) };
                match spec {
                    Some(spec) => {
                        let items: Vec<f64> = s.items.iter().map(|c| self.bound(c, which)).collect();
                        s.content(&spec, &items, &self.dims)
                    }
                    None if which == Bound::Lower => s.min,
                    None => {
                        let items: Vec<f64> = s.items.iter().map(|c| self.bound(c, which)).collect();
                        let row = self.dims.row_cost(&items, s.start_space, s.end_space);
                        if s.n() >= 2 {
                            self.dims.inline_content(row + self.dims.m, s.brackets(&self.dims))
                        } else {
                            row
                        }
                    }
                }
            }
        }
    }

    fn height(&self, assign: &BTreeMap<usize, WrapSpec>) -> f64 {
        assigned_height(self.root, assign, self.params)
    }

    fn score(&self, content: f64, penalty: f64, height: f64) -> f64 {
        let o = &self.params.order;
        -o.content_weight * content + o.penalty_weight * penalty + o.height_weight * height
    }

    /// Weighted score of the best leaf so far.
    fn best_score(&mut self) -> Option<f64> {
        let mut best = self.best.take()?;
        let h = *best.height.get_or_insert_with(|| self.height(&best.assign));
        let sc = self.score(best.content, best.penalty, h);
        self.best = Some(best);
        Some(sc)
    }

    /// Whether `cand` precedes the current best.
    fn better(&mut self, cand: &mut Leaf) -> bool {
        let Some(mut best) = self.best.take() else { return true };
        let o = &self.params.order;
        let ord = match o.mode {
            OrderMode::Lexicographic => {
                let mut ord = best.content.total_cmp(&cand.content).then(cand.penalty.total_cmp(&best.penalty));
                if ord == Ordering::Equal {
                    let hc = *cand.height.get_or_insert_with(|| self.height(&cand.assign));
                    let hb = *best.height.get_or_insert_with(|| self.height(&best.assign));
                    ord = hc.total_cmp(&hb);
                }
                ord
            }
            OrderMode::Weighted => {
                let hc = *cand.height.get_or_insert_with(|| self.height(&cand.assign));
                let hb = *best.height.get_or_insert_with(|| self.height(&best.assign));
                self.score(cand.content, cand.penalty, hc).total_cmp(&self.score(best.content, best.penalty, hb))
            }
        };
        let ord = ord.then_with(|| structural_key(&cand.assign).cmp(&structural_key(&best.assign)));
        self.best = Some(best);
        ord == Ordering::Less
    }

    fn dfs(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        self.expansions += 1;
        if self.expansions > self.params.search_budget {
            self.exhausted = true;
            return;
        }
        let target = self.params.target_width;
        if self.bound(self.root, Bound::Lower) > target + FIT_EPS {
            return;
        }
        // unassigned sequences count one row, the least they can cost
        match self.params.order.mode {
            OrderMode::Lexicographic => {
                if let Some(best) = &self.best {
                    let upper = self.bound(self.root, Bound::Upper);
                    if upper < best.content {
                        return;
                    }
                    if upper == best.content && assigned_penalty(self.root, &self.assign, self.params) > best.penalty {
                        return;
                    }
                }
            }
            OrderMode::Weighted => {
                if let Some(sb) = self.best_score() {
                    let upper = self.bound(self.root, Bound::Upper);
                    let penalty = assigned_penalty(self.root, &self.assign, self.params);
                    // heights are nonnegative
                    if self.score(upper, penalty, 0.0) > sb {
                        return;
                    }
                }
            }
        }
        if i == self.seqs.len() {
            let content = self.bound(self.root, Bound::Lower);
            let penalty = assigned_penalty(self.root, &self.assign, self.params);
            let mut leaf = Leaf { assign: self.assign.clone(), content, penalty, height: None };
            if self.better(&mut leaf) {
                self.best = Some(leaf);
            }
            return;
        }
        let id = self.seqs[i].id;
        for spec in WrapSpec::iter_all(self.seqs[i].n()) {
            self.assign.insert(id, spec);
            self.dfs(i + 1);
            self.assign.remove(&id);
            if self.exhausted {
                return;
            }
        }
    }
}

/// The least assignment, under the global order, whose content fits the target.
pub fn global_search(root: &WNode, params: &LayoutParams) -> GlobalOutcome {
    let seqs: Vec<&WSeq> = root.seqs().into_iter().filter(|s| s.counted).collect();
    let mut search = Search {
        root,
        params,
        dims: Dims::new(params),
        seqs,
        assign: BTreeMap::new(),
        best: None,
        expansions: 0,
        exhausted: false,
    };
    search.dfs(0);
    if search.exhausted {
        return GlobalOutcome::Exhausted;
    }
    match search.best {
        Some(leaf) => {
            let height = leaf.height.unwrap_or_else(|| assigned_height(root, &leaf.assign, params));
            GlobalOutcome::Found(GlobalChoice {
                assignment: leaf.assign,
                content: leaf.content,
                penalty: leaf.penalty,
                height,
            })
        }
        None => GlobalOutcome::Infeasible,
    }
}
