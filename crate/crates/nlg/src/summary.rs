//! Narrative summaries: plan, realise and linearise every occurrence of a store.

use serde::{Deserialize, Serialize};

use scenetalk_core::store::NarrativeStore;
use scenetalk_core::time::Span;

use crate::grammar::{Grammar, SentenceClass};
use crate::ids::{plan, Ids, Tense, Vocabulary};
use crate::lexicon::Lexicon;
use crate::realize::{realize, sentence_class};
use crate::tree::{linearize, SyntaxTree};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceOut {
    pub sentence: String,
    pub class: Option<SentenceClass>,
    pub span: Span,
    pub occurrences: Vec<String>,
    pub ids: Ids,
    pub tree: SyntaxTree,
}

/// An occurrence that could not be put into words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub occurrences: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub tense: Tense,
    pub sentences: Vec<SentenceOut>,
    pub skipped: Vec<Skipped>,
}

impl Summary {
    pub fn text(&self) -> String {
        self.sentences.iter().map(|s| s.sentence.as_str()).collect::<Vec<_>>().join("\n")
    }
}

/// Realises a single record into a sentence.
pub fn sentence(ids: &Ids, lexicon: &Lexicon, grammar: &Grammar) -> Result<SentenceOut, crate::NlgError> {
    let tree = realize(ids, lexicon, grammar)?;
    Ok(SentenceOut {
        sentence: linearize(&tree, grammar),
        class: sentence_class(&tree, grammar),
        span: ids.span,
        occurrences: ids.occurrences.clone(),
        ids: ids.clone(),
        tree,
    })
}

pub fn summarize(
    store: &NarrativeStore,
    vocab: &Vocabulary,
    lexicon: &Lexicon,
    grammar: &Grammar,
    tense: Tense,
) -> Summary {
    let (records, errors) = plan(store, vocab, tense);
    let mut skipped: Vec<Skipped> =
        errors.into_iter().map(|(id, e)| Skipped { occurrences: vec![id], reason: e.to_string() }).collect();
    let mut sentences = Vec::new();
    for ids in &records {
        match sentence(ids, lexicon, grammar) {
            Ok(s) => sentences.push(s),
            Err(e) => skipped.push(Skipped { occurrences: ids.occurrences.clone(), reason: e.to_string() }),
        }
    }
    Summary { tense, sentences, skipped }
}
