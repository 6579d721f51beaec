//! Box geometry of layouts: sizes, row positions and tip positions.
//! All y coordinates are relative to the top of the node's box.

use crate::diagram::Polarity;
use crate::layout::{connectable_rows, logical_rows, width, Layout, Side, TipSpec};
use crate::style::StyleConstants;

#[derive(Debug, Clone, PartialEq)]
pub struct Geom {
    pub width: f64,
    pub height: f64,
    /// Logical rows on each side.
    pub left_rows: Vec<f64>,
    pub right_rows: Vec<f64>,
    /// Connectable rows on each side.
    pub left_conn: Vec<f64>,
    pub right_conn: Vec<f64>,
    /// Where the through-line enters or leaves.
    pub left_tip: f64,
    pub right_tip: f64,
    /// Children's offsets within this box.
    pub children: Vec<(f64, f64, Geom)>,
}

impl Geom {
    pub fn rows(&self, side: Side) -> &[f64] {
        match side {
            Side::Left => &self.left_rows,
            Side::Right => &self.right_rows,
        }
    }

    pub fn conn(&self, side: Side) -> &[f64] {
        match side {
            Side::Left => &self.left_conn,
            Side::Right => &self.right_conn,
        }
    }

    pub fn tip(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.left_tip,
            Side::Right => self.right_tip,
        }
    }

    fn line(width: f64) -> Geom {
        Geom {
            width,
            height: 0.0,
            left_rows: vec![0.0],
            right_rows: vec![0.0],
            left_conn: vec![0.0],
            right_conn: vec![0.0],
            left_tip: 0.0,
            right_tip: 0.0,
            children: Vec::new(),
        }
    }
}

fn shifted(v: &[f64], dy: f64) -> Vec<f64> {
    v.iter().map(|y| y + dy).collect()
}

fn tip_y(ts: TipSpec, rows: &[f64]) -> f64 {
    let first = rows.first().copied().unwrap_or(0.0);
    let last = rows.last().copied().unwrap_or(first);
    match ts {
        TipSpec::Vertical => first,
        TipSpec::Logical(r) => rows.get(r as usize - 1).copied().unwrap_or(last),
        TipSpec::Physical(p) => first + p * (last - first),
    }
}

pub fn geometry(l: &Layout, style: &StyleConstants) -> Geom {
    match l {
        Layout::Rail { width, .. } => Geom::line(*width),
        Layout::Space { .. } => Geom::line(2.0 * style.s),
        Layout::Station { .. } => {
            let h = style.station_height;
            let mid = h / 2.0;
            Geom {
                width: width(l, style),
                height: h,
                left_rows: vec![mid],
                right_rows: vec![mid],
                left_conn: vec![mid],
                right_conn: vec![mid],
                left_tip: mid,
                right_tip: mid,
                children: Vec::new(),
            }
        }
        Layout::HConcat { children, .. } if children.is_empty() => Geom::line(0.0),
        Layout::VConcatInline { children, .. } if children.is_empty() => Geom::line(0.0),
        Layout::HConcat { children, .. } => {
            let geoms: Vec<Geom> = children.iter().map(|c| geometry(c, style)).collect();
            // chain tips: each child's entry meets the previous child's exit
            let mut tops = Vec::with_capacity(geoms.len());
            let mut y = 0.0;
            for (i, g) in geoms.iter().enumerate() {
                if i > 0 {
                    y += geoms[i - 1].right_tip - g.left_tip;
                }
                tops.push(y);
            }
            let min_top = tops.iter().copied().fold(f64::INFINITY, f64::min);
            let max_bot = tops.iter().zip(&geoms).map(|(t, g)| t + g.height).fold(f64::NEG_INFINITY, f64::max);
            let mut x = 0.0;
            let mut placed = Vec::with_capacity(geoms.len());
            for (t, g) in tops.iter().zip(geoms) {
                let w = g.width;
                placed.push((x, t - min_top, g));
                x += w;
            }
            let (_, fy, first) = &placed[0];
            let (_, ly, last) = placed.last().unwrap();
            Geom {
                width: x,
                height: max_bot - min_top,
                left_rows: shifted(&first.left_rows, *fy),
                right_rows: shifted(&last.right_rows, *ly),
                left_conn: shifted(&first.left_conn, *fy),
                right_conn: shifted(&last.right_conn, *ly),
                left_tip: first.left_tip + fy,
                right_tip: last.right_tip + ly,
                children: placed,
            }
        }
        Layout::VConcatInline { dir, left, right, children, .. } => {
            let total = width(l, style);
            let Layout::VConcatInline { marker, .. } = l else { unreachable!() };
            let m = style.marker_width(marker);
            let start = dir.start_side();
            let br_left = crate::layout::metrics::tip_bracketed(*dir, Side::Left, *left);
            let x0 = if br_left { 3.0 * style.s } else { 0.0 };
            let n = children.len();
            let mut y = 0.0;
            let mut placed = Vec::with_capacity(n);
            for (i, c) in children.iter().enumerate() {
                let g = geometry(c, style);
                // the marker sits on the end side of every row but the last
                // and on the start side of every row but the first
                let lead_marker = match start {
                    Side::Left => i > 0,
                    Side::Right => i + 1 < n,
                };
                let x = x0 + if lead_marker { m } else { 0.0 };
                let h = g.height;
                placed.push((x, y, g));
                y += h + style.row_gap;
            }
            let height = y - style.row_gap;
            let (first_i, last_i) = (0, n - 1);
            let side_child = |side: Side| if side == start { first_i } else { last_i };
            let (li, ri) = (side_child(Side::Left), side_child(Side::Right));
            let left_rows = shifted(&placed[li].2.left_rows, placed[li].1);
            let right_rows = shifted(&placed[ri].2.right_rows, placed[ri].1);
            let left_conn = shifted(&placed[li].2.left_conn, placed[li].1);
            let right_conn = shifted(&placed[ri].2.right_conn, placed[ri].1);
            let side_tip = |side: Side, ts: TipSpec| -> f64 {
                let ends: Vec<f64> = [first_i, last_i].iter().map(|&i| placed[i].2.tip(side) + placed[i].1).collect();
                match ts {
                    TipSpec::Physical(p) => ends[0] + p * (ends[1] - ends[0]),
                    other => tip_y(other, if side == Side::Left { &left_rows } else { &right_rows }),
                }
            };
            let left_tip = side_tip(Side::Left, *left);
            let right_tip = side_tip(Side::Right, *right);
            Geom {
                width: total,
                height,
                left_rows,
                right_rows,
                left_conn,
                right_conn,
                left_tip,
                right_tip,
                children: placed,
            }
        }
        Layout::VConcatBlock { left, right, polarity, top, bottom, .. } => {
            let gt = geometry(top, style);
            let gb = geometry(bottom, style);
            let x = if left.is_vertical() { 0.0 } else { 3.0 * style.s };
            let yb = gt.height + style.row_gap;
            let height = yb + gb.height;
            let inner = |side: Side| -> Vec<f64> {
                match polarity {
                    Polarity::Positive => {
                        let mut v = gt.conn(side).to_vec();
                        v.extend(shifted(gb.conn(side), yb));
                        v
                    }
                    Polarity::Negative => {
                        let t = logical_rows(top, side) as usize;
                        let c = connectable_rows(top, side) as usize;
                        let mut v: Vec<f64> = gt.rows(side).iter().take(t + 1 - c).copied().collect();
                        v.extend(shifted(gb.rows(side), yb));
                        v
                    }
                }
            };
            let sides = [(Side::Left, *left), (Side::Right, *right)].map(|(side, ts)| {
                let rows = inner(side);
                let tip = tip_y(ts, &rows);
                if ts.is_vertical() {
                    let conn = if *polarity == Polarity::Negative { vec![rows[0]] } else { rows.clone() };
                    (rows, conn, tip)
                } else {
                    (vec![tip], vec![tip], tip)
                }
            });
            let [(lr, lc, lt), (rr, rc, rt)] = sides;
            Geom {
                width: width(l, style),
                height,
                left_rows: lr,
                right_rows: rr,
                left_conn: lc,
                right_conn: rc,
                left_tip: lt,
                right_tip: rt,
                children: vec![(x, 0.0, gt), (x, yb, gb)],
            }
        }
    }
}

/// Total height of a layout.
pub fn layout_height(l: &Layout, style: &StyleConstants) -> f64 {
    geometry(l, style).height
}
