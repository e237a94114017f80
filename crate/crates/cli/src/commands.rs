//! The three subcommands as library functions returning their output text.

use serde::{Deserialize, Serialize};

use scenetalk_core::fluent::{Family, Fluent};
use scenetalk_core::narrative::build_narrative;
use scenetalk_core::store::{HoldsQuery, NarrativeStore};
use scenetalk_core::time::TimePoint;
use scenetalk_nlg::{parse, summarize, Grammar, Lexicon, NlgError, Summary, SyntaxTree, Tense};

use crate::bundle::Bundle;
use crate::error::CliError;

pub const NARRATE_SCHEMA: &str = "scenetalk.narrate/1";

/// Narrative and summary of one bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Narration {
    pub schema: String,
    pub narrative: NarrativeStore,
    pub summary: Summary,
}

impl Narration {
    pub fn text(&self) -> String {
        let mut out = self.summary.text();
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("narration serialises");
        out.push('\n');
        out
    }
}

pub fn narrate(bundle: &Bundle, tense: Tense) -> Result<Narration, CliError> {
    let store =
        build_narrative(&bundle.scene, &bundle.config).map_err(|e| CliError::from_build(&bundle.config_path, e))?;
    log::info!("{} holdings, {} occurrences", store.holding_count(), store.occurrences().len());
    let summary = summarize(&store, &bundle.vocab, &bundle.lexicon, &bundle.grammar, tense);
    for s in &summary.skipped {
        log::warn!("not narrated ({}): {}", s.occurrences.join(", "), s.reason);
    }
    Ok(Narration { schema: NARRATE_SCHEMA.to_string(), narrative: store, summary })
}

/// Reads the narrative back from `narrate --json` output.
pub fn read_narration(src: &str) -> Result<Narration, serde_json::Error> {
    serde_json::from_str(src)
}

/// A fluent pattern such as `topology(irene_face,right_quadrant)`; `_` matches
/// any argument.
pub fn parse_fluent_pattern(pattern: &str) -> Result<HoldsQuery, CliError> {
    let usage = |why: &str| CliError::Usage(format!("bad fluent `{pattern}`: {why}"));
    let (name, rest) = pattern.trim().split_once('(').ok_or_else(|| usage("expected family(arg,...)"))?;
    let args = rest.strip_suffix(')').ok_or_else(|| usage("missing `)`"))?;
    let family: Family = name.trim().parse().map_err(|e| usage(&format!("{e}")))?;
    let args: Vec<Option<String>> = args
        .split(',')
        .map(|a| match a.trim() {
            "_" => Ok(None),
            "" => Err(usage("empty argument")),
            a => Ok(Some(a.to_string())),
        })
        .collect::<Result<_, _>>()?;
    if args.iter().all(Option::is_some) {
        let fluent = Fluent::new(family, args.into_iter().flatten()).map_err(|e| usage(&e.to_string()))?;
        return Ok(HoldsQuery::fluent(&fluent));
    }
    HoldsQuery::pattern(family, args).map_err(|e| usage(&e.to_string()))
}

/// One holding per line, in the store's canonical order.
pub fn relations(
    store: &NarrativeStore,
    fluent: Option<&str>,
    relation: Option<&str>,
    at: Option<f64>,
) -> Result<String, CliError> {
    let mut query = match fluent {
        Some(f) => parse_fluent_pattern(f)?,
        None => HoldsQuery::any(),
    };
    if let Some(symbol) = relation {
        let family = fluent
            .and_then(|f| f.split_once('('))
            .and_then(|(name, _)| name.trim().parse::<Family>().ok())
            .ok_or_else(|| CliError::Usage("--relation needs --fluent to fix the family".into()))?;
        query = query.relation(family.parse_relation(symbol).map_err(|e| CliError::Usage(e.to_string()))?);
    }
    if let Some(t) = at {
        query = query.at(TimePoint::from_secs(t).map_err(|e| CliError::Usage(format!("--at: {e}")))?);
    }
    Ok(store.query_holds(&query).iter().map(|h| format!("{h}\n")).collect())
}

/// All parses of a sentence: indented trees, or a JSON array with `--json`.
pub fn parse_sentence(sentence: &str, lexicon: &Lexicon, grammar: &Grammar, json: bool) -> Result<String, CliError> {
    let trees: Vec<SyntaxTree> = parse(sentence, grammar, lexicon).map_err(|e| match e {
        NlgError::UnknownToken { token, position } => {
            CliError::Domain(format!("cannot parse: word {} `{token}` is not in the lexicon", position + 1))
        }
        other => CliError::Domain(format!("cannot parse: {other}")),
    })?;
    if json {
        let mut out = serde_json::to_string_pretty(&trees).expect("trees serialise");
        out.push('\n');
        return Ok(out);
    }
    let mut out = format!("{} parse{}\n", trees.len(), if trees.len() == 1 { "" } else { "s" });
    for (i, t) in trees.iter().enumerate() {
        out.push_str(&format!("parse {}:\n{t}", i + 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fluent_patterns() {
        assert!(parse_fluent_pattern("topology(a,b)").is_ok());
        assert!(parse_fluent_pattern("at_location(barbara, _)").is_ok());
        for bad in ["topology", "topology(a)", "nonsense(a,b)", "topology(a,)", "topology(a,b"] {
            assert!(matches!(parse_fluent_pattern(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }
}
