use serde::{Deserialize, Serialize};

/// Metric constants shared by layout width computation and rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StyleConstants {
    /// Unit width around curves and boxes.
    pub s: f64,
    pub char_width: f64,
    pub text_pad: f64,
    pub marker_char_width: f64,
    pub row_gap: f64,
    pub station_height: f64,
    pub marker: String,
}

impl Default for StyleConstants {
    fn default() -> Self {
        StyleConstants {
            s: 10.0,
            char_width: 8.0,
            text_pad: 5.0,
            marker_char_width: 8.0,
            row_gap: 6.0,
            station_height: 24.0,
            marker: "\u{bb}".to_string(),
        }
    }
}

impl StyleConstants {
    /// Intrinsic box size of a station label, excluding the 2S rail allowance.
    pub fn measure_station(&self, label: &str) -> (f64, f64) {
        let len = label.chars().count() as f64;
        (self.char_width * len + 2.0 * self.text_pad, self.station_height)
    }

    pub fn marker_width(&self, marker: &str) -> f64 {
        self.marker_char_width * marker.chars().count() as f64
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [("s", self.s), ("char_width", self.char_width), ("marker_char_width", self.marker_char_width), ("station_height", self.station_height)];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        for (name, v) in [("text_pad", self.text_pad), ("row_gap", self.row_gap)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(format!("{name} must be nonnegative, got {v}"));
            }
        }
        Ok(())
    }
}
