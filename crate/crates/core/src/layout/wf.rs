use std::fmt;

use serde::Serialize;

use super::metrics::{connectability, inner_rows, width};
use super::{Connectability, Layout, Side, TipSpec};
use crate::style::StyleConstants;

pub const DEFAULT_WF_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WfRule {
    #[serde(rename = "WF_c")]
    Conc,
    #[serde(rename = "WF_hc")]
    HConcat,
    #[serde(rename = "WF_t")]
    Tip,
    #[serde(rename = "WF_ivc")]
    Inline,
    #[serde(rename = "WF_bvc")]
    Block,
    #[serde(rename = "WF_top")]
    TopLevel,
}

impl WfRule {
    pub fn name(self) -> &'static str {
        match self {
            WfRule::Conc => "WF_c",
            WfRule::HConcat => "WF_hc",
            WfRule::Tip => "WF_t",
            WfRule::Inline => "WF_ivc",
            WfRule::Block => "WF_bvc",
            WfRule::TopLevel => "WF_top",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WfViolation {
    pub rule: WfRule,
    /// Child indices from the root to the node where the rule fails
    /// (block VCs: 0 is the top, 1 the bottom).
    pub path: Vec<usize>,
    pub message: String,
}

impl WfViolation {
    pub fn path_string(&self) -> String {
        if self.path.is_empty() {
            return "/".to_string();
        }
        self.path.iter().map(|i| format!("/{i}")).collect()
    }
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.rule.name(), self.path_string(), self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct WfReport {
    pub violations: Vec<WfViolation>,
}

impl WfReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn rules(&self) -> Vec<WfRule> {
        self.violations.iter().map(|v| v.rule).collect()
    }
}

impl fmt::Display for WfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("well-formed");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for WfReport {}

pub fn well_formed(l: &Layout, style: &StyleConstants) -> WfReport {
    well_formed_eps(l, style, DEFAULT_WF_EPS)
}

pub fn well_formed_eps(l: &Layout, style: &StyleConstants, eps: f64) -> WfReport {
    let mut ck = Checker { style, eps, path: Vec::new(), out: Vec::new() };
    ck.check(l);
    WfReport { violations: ck.out }
}

pub fn top_level_well_formed(l: &Layout, style: &StyleConstants) -> WfReport {
    let mut report = well_formed(l, style);
    for side in [Side::Left, Side::Right] {
        let c = connectability(l, side);
        if c != Connectability::Neither {
            report.violations.push(WfViolation {
                rule: WfRule::TopLevel,
                path: Vec::new(),
                message: format!("top-level layout is {}-connectable on its {} side", c.name(), side.name()),
            });
        }
    }
    report
}

struct Checker<'a> {
    style: &'a StyleConstants,
    eps: f64,
    path: Vec<usize>,
    out: Vec<WfViolation>,
}

impl Checker<'_> {
    fn fail(&mut self, rule: WfRule, message: String) {
        self.out.push(WfViolation { rule, path: self.path.clone(), message });
    }

    fn recurse(&mut self, i: usize, child: &Layout) {
        self.path.push(i);
        self.check(child);
        self.path.pop();
    }

    fn check(&mut self, l: &Layout) {
        match l {
            Layout::Rail { .. } | Layout::Space { .. } | Layout::Station { .. } => {}
            Layout::HConcat { dir, children } => {
                self.conc(*dir, children);
                self.interior(WfRule::HConcat, children, Side::Left, Side::Right);
            }
            Layout::VConcatInline { dir, marker, children, .. } => {
                self.conc(*dir, children);
                self.tips(l);
                if children.len() < 2 {
                    self.fail(WfRule::Inline, format!("inline VC needs at least 2 sublayouts, found {}", children.len()));
                }
                self.interior(WfRule::Inline, children, dir.start_side(), dir.end_side());
                let n = children.len();
                if n == 0 {
                    return;
                }
                let m = self.style.marker_width(marker);
                let w = width(&children[0], self.style);
                let wl = width(&children[n - 1], self.style);
                if (w - wl).abs() > self.eps {
                    self.fail(WfRule::Inline, format!("first and last sublayouts differ in width ({w} vs {wl})"));
                }
                if w < m - self.eps {
                    self.fail(WfRule::Inline, format!("row width {w} is less than the marker width {m}"));
                }
                for (i, c) in children.iter().enumerate().take(n.saturating_sub(1)).skip(1) {
                    let wi = width(c, self.style);
                    if (wi - (w - m)).abs() > self.eps {
                        self.fail(WfRule::Inline, format!("sublayout {i} has width {wi}, expected {}", w - m));
                    }
                }
            }
            Layout::VConcatBlock { dir, polarity, top, bottom, .. } => {
                self.recurse(0, top);
                self.recurse(1, bottom);
                self.tips(l);
                let (wt, wb) = (width(top, self.style), width(bottom, self.style));
                if (wt - wb).abs() > self.eps {
                    self.fail(WfRule::Block, format!("top and bottom differ in width ({wt} vs {wb})"));
                }
                if top.dir() != *dir {
                    self.fail(WfRule::Block, format!("top has direction {}, expected {}", top.dir().name(), dir.name()));
                }
                let want = dir.under(*polarity);
                if bottom.dir() != want {
                    self.fail(
                        WfRule::Block,
                        format!("bottom has direction {}, expected {}", bottom.dir().name(), want.name()),
                    );
                }
                for side in [Side::Left, Side::Right] {
                    let ct = connectability(top, side);
                    if !ct.at_least(Connectability::Down) {
                        self.fail(
                            WfRule::Block,
                            format!("top is {}-connectable on its {} side, needs down", ct.name(), side.name()),
                        );
                    }
                    let cb = connectability(bottom, side);
                    if !cb.at_least(Connectability::Up) {
                        self.fail(
                            WfRule::Block,
                            format!("bottom is {}-connectable on its {} side, needs up", cb.name(), side.name()),
                        );
                    }
                }
            }
        }
    }

    fn conc(&mut self, dir: super::Direction, children: &[Layout]) {
        if children.is_empty() {
            self.fail(WfRule::Conc, "concatenation has no sublayouts".to_string());
        }
        for (i, c) in children.iter().enumerate() {
            self.recurse(i, c);
            if c.dir() != dir {
                self.fail(
                    WfRule::Conc,
                    format!("sublayout {i} has direction {}, expected {}", c.dir().name(), dir.name()),
                );
            }
        }
    }

    /// Interior sides of a concatenation must be neither-connectable. A space
    /// at either end is exempt on its inner side: it frames the concatenation.
    fn interior(&mut self, rule: WfRule, children: &[Layout], first_side: Side, last_side: Side) {
        let n = children.len();
        for (i, c) in children.iter().enumerate() {
            let is_space = matches!(c, Layout::Space { .. });
            if i >= 1 && !(is_space && i == n - 1) {
                let ct = connectability(c, first_side);
                if ct != Connectability::Neither {
                    self.fail(
                        rule,
                        format!("sublayout {i} is {}-connectable on its interior {} side", ct.name(), first_side.name()),
                    );
                }
            }
            if i + 1 < n && !(is_space && i == 0) {
                let ct = connectability(c, last_side);
                if ct != Connectability::Neither {
                    self.fail(
                        rule,
                        format!("sublayout {i} is {}-connectable on its interior {} side", ct.name(), last_side.name()),
                    );
                }
            }
        }
    }

    fn tips(&mut self, l: &Layout) {
        for side in [Side::Left, Side::Right] {
            match l.tip(side) {
                TipSpec::Logical(r) => {
                    let rows = inner_rows(l, side);
                    if r == 0 || r > rows {
                        self.fail(
                            WfRule::Tip,
                            format!("{} tip (logical {r}) exceeds the {rows} available rows", side.name()),
                        );
                    }
                }
                TipSpec::Vertical => {
                    if connectability(l, side) == Connectability::Neither {
                        self.fail(
                            WfRule::Tip,
                            format!("{} tip is vertical but the VC is neither-connectable there", side.name()),
                        );
                    }
                }
                TipSpec::Physical(p) => {
                    if !(0.0..=1.0).contains(&p) {
                        self.fail(WfRule::Tip, format!("{} tip proportion {p} is outside [0, 1]", side.name()));
                    }
                }
            }
        }
    }
}
