use serde::{Deserialize, Serialize};

use crate::style::StyleConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum WrapMode {
    #[default]
    Local,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum AlignItems {
    Top,
    Center,
    Bottom,
    #[default]
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum JustifyContent {
    #[default]
    Start,
    End,
    Center,
    SpaceBetween,
    SpaceAround,
    SpaceEvenly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMode {
    #[default]
    Lexicographic,
    Weighted,
}

/// A monotonic positive penalty function of a nonnegative integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PenaltyFn {
    /// `scale * x`
    Linear { scale: f64 },
    /// `base ^ x`
    Exponential { base: f64 },
    /// `x ^ exponent`
    Power { exponent: f64 },
}

impl PenaltyFn {
    pub fn eval(self, x: u32) -> f64 {
        let xf = f64::from(x);
        match self {
            PenaltyFn::Linear { scale } => scale * xf,
            PenaltyFn::Exponential { base } => base.powi(x as i32),
            PenaltyFn::Power { exponent } => xf.powf(exponent),
        }
    }

    fn validate(self, name: &str) -> Result<(), String> {
        let ok = match self {
            PenaltyFn::Linear { scale } => scale.is_finite() && scale >= 0.0,
            PenaltyFn::Exponential { base } => base.is_finite() && base >= 1.0,
            PenaltyFn::Power { exponent } => exponent.is_finite() && exponent >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{name} must be nondecreasing and nonnegative, got {self:?}"))
        }
    }
}

/// Defines the preference order over wraps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WrapOrder {
    /// Wrap-length penalty, applied to the number of rows of a sequence wrap.
    pub p_wl: PenaltyFn,
    /// Depth penalty, applied to the nesting depth of a sequence.
    pub p_d: PenaltyFn,
    /// How global wraps are compared.
    pub mode: OrderMode,
    /// Weighted global mode: score = -content_weight*content + penalty_weight*p_w + height_weight*height.
    pub content_weight: f64,
    pub penalty_weight: f64,
    pub height_weight: f64,
    /// Local order: excess_weight*max(0, max_content - target)^2 + local_penalty_weight*p_w,
    /// then max-content, then the smaller wrap specification.
    pub excess_weight: f64,
    pub local_penalty_weight: f64,
}

impl Default for WrapOrder {
    fn default() -> Self {
        WrapOrder {
            p_wl: PenaltyFn::Linear { scale: 1.0 },
            p_d: PenaltyFn::Exponential { base: 4.0 },
            mode: OrderMode::Lexicographic,
            content_weight: 1.0,
            penalty_weight: 10.0,
            height_weight: 1.0,
            excess_weight: 1.0,
            local_penalty_weight: 10.0,
        }
    }
}

impl WrapOrder {
    pub fn seq_penalty(&self, rows: usize, depth: u32) -> f64 {
        self.p_wl.eval(rows as u32) * self.p_d.eval(depth)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutParams {
    pub target_width: f64,
    pub wrap_mode: WrapMode,
    pub align_items: AlignItems,
    pub justify_content: JustifyContent,
    pub flex_absorb: f64,
    pub gap: f64,
    pub style: StyleConstants,
    pub order: WrapOrder,
    /// Partial assignments the global search may expand before falling back
    /// to local wrapping.
    pub search_budget: u64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            target_width: 800.0,
            wrap_mode: WrapMode::Local,
            align_items: AlignItems::Baseline,
            justify_content: JustifyContent::Start,
            flex_absorb: 0.5,
            gap: 8.0,
            style: StyleConstants::default(),
            order: WrapOrder::default(),
            search_budget: 100_000,
        }
    }
}

impl LayoutParams {
    pub fn with_width(target_width: f64) -> Self {
        LayoutParams { target_width, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.style.validate()?;
        if !self.target_width.is_finite() || self.target_width < 0.0 {
            return Err(format!("target_width must be a nonnegative number, got {}", self.target_width));
        }
        if !(0.0..=1.0).contains(&self.flex_absorb) {
            return Err(format!("flex_absorb must be in [0, 1], got {}", self.flex_absorb));
        }
        if !self.gap.is_finite() || self.gap < 0.0 {
            return Err(format!("gap must be nonnegative, got {}", self.gap));
        }
        self.order.p_wl.validate("p_wl")?;
        self.order.p_d.validate("p_d")?;
        let o = &self.order;
        for (name, v) in [
            ("content_weight", o.content_weight),
            ("penalty_weight", o.penalty_weight),
            ("height_weight", o.height_weight),
            ("excess_weight", o.excess_weight),
            ("local_penalty_weight", o.local_penalty_weight),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(format!("{name} must be nonnegative, got {v}"));
            }
        }
        Ok(())
    }
}
