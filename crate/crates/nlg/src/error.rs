use thiserror::Error;

/// Generation and parsing failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlgError {
    #[error("no lexicon entry `{0}`")]
    LexiconGap(String),
    #[error("entity `{0}` has no vocabulary entry")]
    VocabularyGap(String),
    #[error("no grammar rule {lhs} -> {}", rhs.join(" "))]
    GrammarGap { lhs: String, rhs: Vec<String> },
    #[error("{event} needs a `{role}` role")]
    MissingRole { event: String, role: String },
    #[error("`{key}` cannot be used as {category}: {reason}")]
    BadPhrase { key: String, category: String, reason: String },
    #[error("token {position} `{token}` is not in the lexicon")]
    UnknownToken { token: String, position: usize },
    #[error("no parse: {0}")]
    ParseFailure(String),
}

/// Malformed lexicon, grammar or vocabulary data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("{}line {line}: {message}", file_prefix(.file))]
    Syntax { file: Option<String>, line: usize, message: String },
    #[error("{}{message}", file_prefix(.file))]
    Invalid { file: Option<String>, message: String },
}

fn file_prefix(file: &Option<String>) -> String {
    file.as_ref().map(|f| format!("{f}: ")).unwrap_or_default()
}

impl LoadError {
    pub fn invalid(message: impl Into<String>) -> Self {
        LoadError::Invalid { file: None, message: message.into() }
    }

    /// Attaches a file name for diagnostics.
    pub fn in_file(self, name: impl Into<String>) -> Self {
        let name = Some(name.into());
        match self {
            LoadError::Syntax { line, message, .. } => LoadError::Syntax { file: name, line, message },
            LoadError::Invalid { message, .. } => LoadError::Invalid { file: name, message },
        }
    }

    pub(crate) fn from_toml(e: toml::de::Error, src: &str) -> Self {
        match e.span() {
            Some(span) => LoadError::Syntax {
                file: None,
                line: src[..span.start.min(src.len())].matches('\n').count() + 1,
                message: e.message().to_string(),
            },
            None => LoadError::invalid(e.message()),
        }
    }
}
