//! Turning source text of any supported kind into diagrams or a layout.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_diagram, Diagram};
use crate::error::{LayoutError, ParseError};
use crate::frontends::bnf::{bnf_rule_to_diagram, parse_bnf};
use crate::frontends::regex::regex_source_to_diagram;
use crate::layout::{parse_layout, Layout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    #[default]
    Diagram,
    Regex,
    Bnf,
    Layout,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::Diagram => "diagram",
            InputKind::Regex => "regex",
            InputKind::Bnf => "bnf",
            InputKind::Layout => "layout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// Parsed input: named diagrams (one per BNF rule, otherwise a single
/// unnamed one) or a concrete layout.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Diagrams(Vec<(Option<String>, Diagram)>),
    Layout(Layout),
}

pub fn load(kind: InputKind, text: &str) -> Result<Source, InputError> {
    Ok(match kind {
        InputKind::Diagram => Source::Diagrams(vec![(None, parse_diagram(text)?)]),
        InputKind::Regex => Source::Diagrams(vec![(None, regex_source_to_diagram(text)??)]),
        InputKind::Bnf => {
            let g = parse_bnf(text)?;
            Source::Diagrams(g.rules.iter().map(|r| (Some(r.name.clone()), bnf_rule_to_diagram(r))).collect())
        }
        InputKind::Layout => Source::Layout(parse_layout(text)?),
    })
}
