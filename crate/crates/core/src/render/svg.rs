use std::fmt::Write as _;

use super::geometry::{geometry, Geom};
use crate::diagram::Polarity;
use crate::layout::metrics::tip_bracketed;
use crate::layout::{top_level_well_formed, Direction, Layout, Side, TipSpec, WfReport};
use crate::style::StyleConstants;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub style: StyleConstants,
    pub stroke_width: f64,
    pub font_family: String,
    pub font_size: f64,
    pub class_prefix: String,
    pub arrows: bool,
    /// Embed the default stylesheet.
    pub embed_style: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            style: StyleConstants::default(),
            stroke_width: 2.0,
            font_family: "monospace".to_string(),
            font_size: 13.0,
            class_prefix: "rr".to_string(),
            arrows: false,
            embed_style: true,
        }
    }
}

impl RenderStyle {
    pub fn with_style(style: StyleConstants) -> Self {
        RenderStyle { style, ..Default::default() }
    }
}

/// Compact deterministic number formatting.
fn num(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn stylesheet(rs: &RenderStyle) -> String {
    let p = &rs.class_prefix;
    format!(
        "<style>\
.{p} path{{fill:none;stroke:#222;stroke-width:{sw}}}\
.{p}-station rect{{fill:#f4f4e8;stroke:#222;stroke-width:{sw}}}\
.{p}-nonterminal rect{{fill:#e8eef8}}\
.{p} text{{font-family:{ff};font-size:{fs}px;text-anchor:middle;dominant-baseline:central;fill:#111}}\
.{p}-marker{{fill:#666}}\
.{p}-arrow{{fill:#222;stroke:none}}\
</style>",
        sw = num(rs.stroke_width),
        ff = rs.font_family,
        fs = num(rs.font_size),
    )
}

/// Renders a top-level well-formed layout; ill-formed layouts are refused.
pub fn render_svg(l: &Layout, rs: &RenderStyle) -> Result<String, WfReport> {
    let report = top_level_well_formed(l, &rs.style);
    if !report.is_ok() {
        return Err(report);
    }
    let g = geometry(l, &rs.style);
    let w = crate::layout::width(l, &rs.style);
    let pad = rs.stroke_width;
    let h = g.height + 2.0 * pad;
    let mut out = open_doc(rs, w, h, -pad);
    let mut r = Renderer { rs, out: String::new() };
    r.node(l, &g, 0.0, 0.0);
    out.push_str(&r.out);
    out.push_str("</svg>\n");
    Ok(out)
}

fn open_doc(rs: &RenderStyle, w: f64, h: f64, vy: f64) -> String {
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" class=\"{p}\" width=\"{w}\" height=\"{h}\" viewBox=\"0 {vy} {w} {h}\" style=\"overflow:visible\">",
        p = rs.class_prefix,
        vy = num(vy),
        h = num(h),
    );
    if rs.embed_style {
        out.push_str(&stylesheet(rs));
    }
    out
}

/// Renders several named layouts stacked top to bottom in one document.
pub fn render_named(items: &[(String, Layout)], rs: &RenderStyle) -> Result<String, WfReport> {
    let title_h = rs.font_size + 8.0;
    let mut body = String::new();
    let mut y = 0.0;
    let mut w: f64 = 0.0;
    for (name, l) in items {
        let report = top_level_well_formed(l, &rs.style);
        if !report.is_ok() {
            return Err(report);
        }
        let g = geometry(l, &rs.style);
        w = w.max(g.width);
        let _ = write!(
            body,
            "<g class=\"{p}-rule\"><text class=\"{p}-rule-name\" x=\"0\" y=\"{ty}\" style=\"text-anchor:start\">{n}</text>",
            p = rs.class_prefix,
            ty = num(y + title_h / 2.0),
            n = escape(name),
        );
        let mut r = Renderer { rs, out: String::new() };
        r.node(l, &g, 0.0, y + title_h);
        body.push_str(&r.out);
        body.push_str("</g>");
        y += title_h + g.height + 2.0 * rs.style.row_gap;
    }
    let pad = rs.stroke_width;
    let mut out = open_doc(rs, w, y + 2.0 * pad, -pad);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

struct Renderer<'a> {
    rs: &'a RenderStyle,
    out: String,
}

impl Renderer<'_> {
    fn open(&mut self, classes: &[&str]) {
        let p = &self.rs.class_prefix;
        let cls: Vec<String> = classes.iter().map(|c| format!("{p}-{c}")).collect();
        let _ = write!(self.out, "<g class=\"{}\">", cls.join(" "));
    }

    fn path(&mut self, d: &str) {
        let _ = write!(self.out, "<path d=\"{d}\"/>");
    }

    fn hline(&mut self, x: f64, y: f64, w: f64) {
        if w > 0.0 {
            self.path(&format!("M{} {}h{}", num(x), num(y), num(w)));
        }
    }

    /// Rail from (xl, yl) to (xr, yr) bending through quarter arcs where there is room.
    fn bend(&mut self, xl: f64, yl: f64, xr: f64, yr: f64) {
        let s = self.rs.style.s;
        let dy = yr - yl;
        let dx = xr - xl;
        if dy.abs() < 1e-9 {
            self.hline(xl, yl, dx);
            return;
        }
        let r = s.min(dy.abs() / 2.0).min(dx / 3.0);
        let sg = dy.signum();
        let (s1, s2) = if sg > 0.0 { (1, 0) } else { (0, 1) };
        let straight = (dx - 2.0 * r) / 2.0;
        let d = format!(
            "M{} {}h{}a{} {} 0 0 {} {} {}v{}a{} {} 0 0 {} {} {}h{}",
            num(xl),
            num(yl),
            num(straight),
            num(r),
            num(r),
            s1,
            num(r),
            num(sg * r),
            num(dy - 2.0 * sg * r),
            num(r),
            num(r),
            s2,
            num(r),
            num(sg * r),
            num(straight),
        );
        self.path(&d);
    }

    fn vline(&mut self, x: f64, y0: f64, y1: f64) {
        if (y1 - y0).abs() > 1e-9 {
            self.path(&format!("M{} {}V{}", num(x), num(y0), num(y1)));
        }
    }

    fn arrow(&mut self, x: f64, y: f64, dir: Direction) {
        let s = self.rs.style.s / 2.0;
        let dx = if dir == Direction::Ltr { s } else { -s };
        let _ = write!(
            self.out,
            "<path class=\"{}-arrow\" d=\"M{} {}l{} {}l{} {}z\"/>",
            self.rs.class_prefix,
            num(x - dx / 2.0),
            num(y - s / 2.0),
            num(dx),
            num(s / 2.0),
            num(-dx),
            num(s / 2.0)
        );
    }

    fn node(&mut self, l: &Layout, g: &Geom, x: f64, y: f64) {
        let st = &self.rs.style;
        match l {
            Layout::Rail { width, .. } => {
                self.open(&["rail"]);
                self.hline(x, y, *width);
                self.out.push_str("</g>");
            }
            Layout::Space { .. } => {
                self.open(&["space"]);
                self.hline(x, y, 2.0 * st.s);
                self.out.push_str("</g>");
            }
            Layout::Station { label, terminal, .. } => {
                let kind = if *terminal { "terminal" } else { "nonterminal" };
                self.open(&["station", kind]);
                let (iw, ih) = st.measure_station(label);
                let (s, mid) = (st.s, y + ih / 2.0);
                self.hline(x, mid, s);
                let rx = if *terminal { ih / 2.0 } else { 0.0 };
                let _ = write!(
                    self.out,
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" rx=\"{}\"/>",
                    num(x + s),
                    num(y),
                    num(iw),
                    num(ih),
                    num(rx)
                );
                let _ = write!(self.out, "<text x=\"{}\" y=\"{}\">{}</text>", num(x + s + iw / 2.0), num(mid), escape(label));
                self.hline(x + s + iw, mid, s);
                self.out.push_str("</g>");
            }
            Layout::HConcat { children, .. } => {
                self.open(&["hconcat"]);
                for (c, (cx, cy, cg)) in children.iter().zip(&g.children) {
                    self.node(c, cg, x + cx, y + cy);
                }
                self.out.push_str("</g>");
            }
            Layout::VConcatInline { dir, left, right, marker, children } => {
                self.open(&["vc-inline"]);
                let m = st.marker_width(marker);
                let n = children.len();
                let start = dir.start_side();
                for (i, (c, (cx, cy, cg))) in children.iter().zip(&g.children).enumerate() {
                    self.node(c, cg, x + cx, y + cy);
                    let (rl, rr) = (x + cx, x + cx + cg.width);
                    // markers: the end of every row but the last, the start of every row but the first
                    let (has_left, has_right) = match start {
                        Side::Left => (i > 0, i + 1 < n),
                        Side::Right => (i + 1 < n, i > 0),
                    };
                    if has_left {
                        self.marker(rl - m, y + cy + cg.left_tip, m, marker);
                    }
                    if has_right {
                        self.marker(rr, y + cy + cg.right_tip, m, marker);
                    }
                }
                for (side, ts) in [(Side::Left, *left), (Side::Right, *right)] {
                    let row = if side == start { 0 } else { n - 1 };
                    let (cx, cy, cg) = &g.children[row];
                    let ry = y + cy + cg.tip(side);
                    let ty = y + g.tip(side);
                    if !tip_bracketed(*dir, side, ts) {
                        continue;
                    }
                    let b = 3.0 * st.s;
                    match side {
                        Side::Left => self.bend(x, ty, x + b, ry),
                        Side::Right => self.bend(x + cx + cg.width, ry, x + cx + cg.width + b, ty),
                    }
                }
                self.out.push_str("</g>");
            }
            Layout::VConcatBlock { dir, left, right, polarity, top, bottom } => {
                let pol = if *polarity == Polarity::Positive { "pos" } else { "neg" };
                self.open(&["vc-block", pol]);
                let (tx, ty, tg) = &g.children[0];
                let (bx, by, bg) = &g.children[1];
                self.node(top, tg, x + tx, y + ty);
                self.node(bottom, bg, x + bx, y + by);
                let inner_w = tg.width;
                for (side, ts) in [(Side::Left, *left), (Side::Right, *right)] {
                    let rows: Vec<f64> = if ts.is_vertical() { g.rows(side).to_vec() } else { self.inner_rows(g, side) };
                    let (edge, inner_edge) = match side {
                        Side::Left => (x, x + tx),
                        Side::Right => (x + g.width, x + tx + inner_w),
                    };
                    match ts {
                        TipSpec::Vertical => {
                            let lo = rows.iter().copied().fold(f64::INFINITY, f64::min);
                            let hi = rows.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                            self.vline(edge, y + lo, y + hi);
                        }
                        _ => {
                            let tip = y + g.tip(side);
                            for r in rows {
                                match side {
                                    Side::Left => self.bend(edge, tip, inner_edge, y + r),
                                    Side::Right => self.bend(inner_edge, y + r, edge, tip),
                                }
                            }
                        }
                    }
                }
                if self.rs.arrows && *polarity == Polarity::Negative {
                    self.arrow(x + bx + bg.width / 2.0, y + by + bg.left_tip, dir.flip());
                }
                self.out.push_str("</g>");
            }
        }
    }

    /// Rows a non-vertical block tip fans out to, relative to the block's top.
    fn inner_rows(&self, g: &Geom, side: Side) -> Vec<f64> {
        let (_, ty, tg) = &g.children[0];
        let (_, by, bg) = &g.children[1];
        let mut v: Vec<f64> = tg.conn(side).iter().map(|r| r + ty).collect();
        v.extend(bg.conn(side).iter().map(|r| r + by));
        v
    }

    fn marker(&mut self, x: f64, y: f64, m: f64, marker: &str) {
        let _ = write!(
            self.out,
            "<text class=\"{}-marker\" x=\"{}\" y=\"{}\">{}</text>",
            self.rs.class_prefix,
            num(x + m / 2.0),
            num(y),
            escape(marker)
        );
    }
}
