//! SVG realization of layouts.

pub mod geometry;
mod svg;

pub use geometry::{geometry, layout_height, Geom};
pub use svg::{render_named, render_svg, RenderStyle};
