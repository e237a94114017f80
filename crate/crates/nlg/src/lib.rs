//! Sentence generation from perceptual narratives, and parsing back into
//! syntax trees, driven by a context-free grammar and a lexicon.

pub mod error;
pub mod grammar;
pub mod ids;
pub mod lexicon;
pub mod morphology;
pub mod parse;
pub mod realize;
pub mod summary;
pub mod tree;

pub use error::{LoadError, NlgError};
pub use grammar::{Grammar, Rule, SentenceClass};
pub use ids::{plan, schema_to_ids, EventKind, Filler, Ids, Modifier, PhraseSpec, Role, Tense, Vocabulary};
pub use lexicon::{Category, Form, Lexicon, PrepFunction};
pub use parse::parse;
pub use realize::realize;
pub use summary::{summarize, Summary};
pub use tree::{linearize, Leaf, SyntaxTree};
