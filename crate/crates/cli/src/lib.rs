//! Scene bundles in, perceptual narratives and summaries out.

pub mod bundle;
pub mod commands;
pub mod error;

pub use bundle::Bundle;
pub use commands::{narrate, parse_sentence, read_narration, relations, Narration};
pub use error::{CliError, Location};
