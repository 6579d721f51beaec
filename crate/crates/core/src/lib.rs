//! Railroad diagram layout: a compiler from abstract diagrams to well-formed
//! layouts of an exact target width, with regex and BNF frontends and an SVG
//! renderer.
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use railyard::{parse_diagram, pipeline::{compile, LayoutParams}, render::{render_svg, RenderStyle}};
//!
//! let d = parse_diagram(r#"("a" (- "b" ","))"#)?;
//! let c = compile(&d, &LayoutParams::with_width(300.0))?;
//! let svg = render_svg(&c.layout, &RenderStyle::default())?;
//! assert!(svg.contains(r#"width="300""#));
//! # Ok(()) }
//! ```

pub mod diagram;
pub mod error;
pub mod frontends;
pub mod input;
pub mod layout;
pub mod pipeline;
pub mod render;
pub mod service;
mod sexpr;
pub mod style;

pub use diagram::{canonicalize, equivalent, parse_diagram, print_diagram, Diagram, Polarity};
pub use error::{LayoutError, ParseError};
pub use layout::{diagram_of, top_level_well_formed, well_formed, Direction, Layout, TipSpec};
pub use style::StyleConstants;
