use std::fmt;
use std::path::Path;

use thiserror::Error;

use scenetalk_core::error::{BuildError, ModelError, SchemaError};
use scenetalk_nlg::LoadError;

/// Position of a diagnostic in an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: Option<usize>,
}

impl Location {
    pub fn file(path: &Path) -> Self {
        Location { file: path.display().to_string(), line: None }
    }

    pub fn line(path: &Path, line: usize) -> Self {
        Location { file: path.display().to_string(), line: Some(line) }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{l}", self.file),
            None => f.write_str(&self.file),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Missing or malformed input; exit code 2.
    #[error("{at}: {message}")]
    Input { at: Location, message: String },
    /// Bad command-line arguments; exit code 2.
    #[error("usage: {0}")]
    Usage(String),
    /// Valid input the pipeline could not handle; exit code 1.
    #[error("{0}")]
    Domain(String),
    #[error("writing {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    pub fn input(at: Location, message: impl fmt::Display) -> Self {
        CliError::Input { at, message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Output { .. } => 1,
        }
    }

    pub(crate) fn from_load(path: &Path, e: LoadError) -> Self {
        match e {
            LoadError::Syntax { line, message, .. } => CliError::input(Location::line(path, line), message),
            LoadError::Invalid { message, .. } => CliError::input(Location::file(path), message),
        }
    }

    /// Build failures caused by the scene configuration are input errors;
    /// anything the data itself gives rise to is a domain failure.
    pub(crate) fn from_build(config: &Path, e: BuildError) -> Self {
        let config_fault = matches!(
            e,
            BuildError::Config(_)
                | BuildError::Model(
                    ModelError::UnknownEntity(_) | ModelError::UnknownFamily(_) | ModelError::ArityMismatch { .. }
                )
                | BuildError::Schema(
                    SchemaError::UnknownRegion(_) | SchemaError::OverlappingRegions(..) | SchemaError::RouteGraph(_)
                )
        );
        if config_fault {
            CliError::input(Location::file(config), e)
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

/// 1-based line of a byte offset.
pub(crate) fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

pub(crate) fn from_toml(path: &Path, src: &str, e: toml::de::Error) -> CliError {
    match e.span() {
        Some(span) => CliError::input(Location::line(path, line_of(src, span.start)), e.message()),
        None => CliError::input(Location::file(path), e.message()),
    }
}

pub(crate) fn from_json(path: &Path, e: serde_json::Error) -> CliError {
    CliError::input(Location::line(path, e.line()), e)
}
