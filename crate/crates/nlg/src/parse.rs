//! Chart parser recovering every syntax tree the grammar and lexicon assign
//! to a sentence.

use std::collections::HashMap;

use crate::error::NlgError;
use crate::grammar::Grammar;
use crate::lexicon::{Category, Lexicon};
use crate::tree::{Leaf, SyntaxTree};

/// Splits a sentence into words, dropping commas and the final period.
pub fn tokenize(sentence: &str) -> Vec<String> {
    sentence
        .split_whitespace()
        .map(|w| w.trim_matches(|c| c == ',' || c == '.').to_string())
        .filter(|w| !w.is_empty())
        .collect()
}

fn lower_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

struct Chart<'a> {
    grammar: &'a Grammar,
    /// Lexical matches starting at each token: (token count, leaf).
    lexical: Vec<Vec<(usize, Leaf)>>,
    memo: HashMap<(String, usize, usize), Vec<SyntaxTree>>,
}

impl Chart<'_> {
    fn parses(&mut self, symbol: &str, i: usize, j: usize) -> Vec<SyntaxTree> {
        if let Some(hit) = self.memo.get(&(symbol.to_string(), i, j)) {
            return hit.clone();
        }
        let out = if let Ok(cat) = symbol.parse::<Category>() {
            self.lexical[i]
                .iter()
                .filter(|(len, leaf)| i + len == j && leaf.category == cat)
                .map(|(_, leaf)| SyntaxTree::Leaf(leaf.clone()))
                .collect()
        } else {
            let mut out = Vec::new();
            for &r in self.grammar.rules_for(symbol) {
                let rhs = self.grammar.rule(r).rhs.clone();
                for children in self.sequences(&rhs, i, j) {
                    out.push(SyntaxTree::Node { category: symbol.to_string(), rule: r, children });
                }
            }
            out
        };
        self.memo.insert((symbol.to_string(), i, j), out.clone());
        out
    }

    /// Every way of covering `[i, j)` with one non-empty constituent per symbol.
    fn sequences(&mut self, symbols: &[String], i: usize, j: usize) -> Vec<Vec<SyntaxTree>> {
        let Some((first, rest)) = symbols.split_first() else {
            return Vec::new();
        };
        if rest.is_empty() {
            return self.parses(first, i, j).into_iter().map(|t| vec![t]).collect();
        }
        let mut out = Vec::new();
        for k in i + 1..=j.saturating_sub(rest.len()) {
            let heads = self.parses(first, i, k);
            if heads.is_empty() {
                continue;
            }
            let tails = self.sequences(rest, k, j);
            for h in &heads {
                for t in &tails {
                    let mut seq = Vec::with_capacity(symbols.len());
                    seq.push(h.clone());
                    seq.extend(t.iter().cloned());
                    out.push(seq);
                }
            }
        }
        out
    }
}

/// All parses of `sentence`, in a deterministic order (pre-order rule
/// sequence, then leaf identities). The first word matches regardless of
/// the case of its first letter.
pub fn parse(sentence: &str, grammar: &Grammar, lexicon: &Lexicon) -> Result<Vec<SyntaxTree>, NlgError> {
    let tokens = tokenize(sentence);
    if tokens.is_empty() {
        return Err(NlgError::ParseFailure("empty sentence".into()));
    }
    let leaves = lexicon.all_leaves();
    let words: Vec<Vec<&str>> = leaves.iter().map(|l| l.surface.split(' ').collect()).collect();
    let mut lexical = vec![Vec::new(); tokens.len()];
    let mut covered = vec![false; tokens.len()];
    for (i, slot) in lexical.iter_mut().enumerate() {
        for (leaf, w) in leaves.iter().zip(&words) {
            let Some(span) = tokens.get(i..i + w.len()) else { continue };
            let matches = span.iter().zip(w).enumerate().all(|(k, (tok, word))| {
                if i + k == 0 {
                    lower_first(tok) == lower_first(word)
                } else {
                    tok == word
                }
            });
            if matches {
                slot.push((w.len(), leaf.clone()));
                covered[i..i + w.len()].iter_mut().for_each(|c| *c = true);
            }
        }
    }
    if let Some(position) = covered.iter().position(|c| !c) {
        return Err(NlgError::UnknownToken { token: tokens[position].clone(), position });
    }
    let mut chart = Chart { grammar, lexical, memo: HashMap::new() };
    let mut trees = chart.parses(grammar.start(), 0, tokens.len());
    if trees.is_empty() {
        return Err(NlgError::ParseFailure(format!("no {} spans `{}`", grammar.start(), tokens.join(" "))));
    }
    trees.sort_by_cached_key(|t| (t.order_key(), t.leaves().into_iter().map(|l| l.key.clone()).collect::<Vec<_>>()));
    trees.dedup();
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::tests::GRAMMAR;
    use crate::lexicon::tests::{small, SMALL};
    use crate::tree::linearize;

    #[test]
    fn tokenizes_punctuation() {
        assert_eq!(tokenize("While walking, Irene is in it."), ["While", "walking", "Irene", "is", "in", "it"]);
    }

    #[test]
    fn parses_unique_sentence() {
        let g = Grammar::from_text(GRAMMAR).unwrap();
        let lex = small();
        let s = "Irene occupies the right quadrant, while The Driver occupies the left quadrant.";
        let trees = parse(s, &g, &lex).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(linearize(&trees[0], &g), s);
        let keys: Vec<_> = trees[0].leaves().iter().map(|l| l.key.as_str()).collect();
        assert_eq!(keys[..5], ["irene", "occupy", "the", "right", "quadrant"]);
        assert_eq!(keys[6..8], ["the_driver", "occupy"]);
    }

    #[test]
    fn unknown_tokens_and_failures() {
        let g = Grammar::from_text(GRAMMAR).unwrap();
        let lex = small();
        assert_eq!(
            parse("Irene occupies the purple quadrant.", &g, &lex),
            Err(NlgError::UnknownToken { token: "purple".into(), position: 3 })
        );
        assert!(matches!(parse("Quadrant the occupies.", &g, &lex), Err(NlgError::ParseFailure(_))));
        assert!(matches!(parse(" . ", &g, &lex), Err(NlgError::ParseFailure(_))));
        assert!(matches!(
            parse("Driver occupies the room.", &g, &lex),
            Err(NlgError::UnknownToken { position: 0, .. })
        ));
    }

    #[test]
    fn ambiguity_yields_every_parse_in_stable_order() {
        let g = Grammar::from_text(GRAMMAR).unwrap();
        let extra = "\n[[entry]]\nkey = \"outside_adj\"\npos = \"adjective\"\nbase = \"outside\"\n\n\
                     [[entry]]\nkey = \"outside\"\npos = \"noun\"\nbase = \"outside\"\n";
        let lex = Lexicon::from_toml_str(&format!("{SMALL}{extra}")).unwrap();
        let s = "Irene occupies the outside room.";
        let trees = parse(s, &g, &lex).unwrap();
        assert_eq!(trees.len(), 2);
        assert_ne!(trees[0], trees[1]);
        assert_eq!(parse(s, &g, &lex).unwrap(), trees);
        for t in &trees {
            assert_eq!(linearize(t, &g), s);
        }
    }
}
