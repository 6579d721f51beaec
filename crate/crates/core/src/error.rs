use thiserror::Error;

/// Syntax error in any of the textual inputs, positioned by byte offset.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("target width {target} is smaller than the min-content width {min_content}")]
    TargetTooSmall { target: f64, min_content: f64 },
    #[error("no wrap fits within target width {target} (min-content {min_content})")]
    NoFeasibleWrap { target: f64, min_content: f64 },
    #[error("the empty language cannot be drawn")]
    EmptyLanguage,
    #[error("invalid layout parameters: {0}")]
    InvalidParams(String),
}

impl LayoutError {
    pub fn min_content(&self) -> Option<f64> {
        match self {
            LayoutError::TargetTooSmall { min_content, .. }
            | LayoutError::NoFeasibleWrap { min_content, .. } => Some(*min_content),
            _ => None,
        }
    }
}
