//! Context-free grammar loaded from a line-oriented text file.
//!
//! ```text
//! # comment
//! %start S
//! %comma_before ViaPP WhileClause
//! %comma_after SubClause
//! S -> Clause @simple
//! Clause -> NP VP
//! ```
//!
//! Symbols that are never a left-hand side must be preterminal categories.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LoadError;
use crate::lexicon::Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SentenceClass {
    Simple,
    Compound,
    Complex,
}

impl SentenceClass {
    pub const ALL: [SentenceClass; 3] = [SentenceClass::Simple, SentenceClass::Compound, SentenceClass::Complex];

    pub fn name(self) -> &'static str {
        match self {
            SentenceClass::Simple => "simple",
            SentenceClass::Compound => "compound",
            SentenceClass::Complex => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<SentenceClass>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs.join(" "))?;
        if let Some(c) = self.class {
            write!(f, " @{}", c.name())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    start: String,
    rules: Vec<Rule>,
    by_lhs: BTreeMap<String, Vec<usize>>,
    comma_before: BTreeSet<String>,
    comma_after: BTreeSet<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Syntax { file: None, line, message: message.into() }
}

fn valid_symbol(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Grammar {
    pub fn from_text(src: &str) -> Result<Self, LoadError> {
        let mut start = None;
        let mut rules = Vec::new();
        let mut lines = Vec::new();
        let (mut comma_before, mut comma_after) = (BTreeSet::new(), BTreeSet::new());
        for (i, raw) in src.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('%') {
                let mut parts = rest.split_whitespace();
                let directive = parts.next().unwrap_or("");
                let args: Vec<String> = parts.map(str::to_string).collect();
                if let Some(bad) = args.iter().find(|a| !valid_symbol(a)) {
                    return Err(syntax(n, format!("bad symbol `{bad}`")));
                }
                match directive {
                    "start" if args.len() == 1 => {
                        if start.replace(args[0].clone()).is_some() {
                            return Err(syntax(n, "duplicate %start"));
                        }
                    }
                    "comma_before" => comma_before.extend(args),
                    "comma_after" => comma_after.extend(args),
                    _ => return Err(syntax(n, format!("unknown directive `%{rest}`"))),
                }
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| syntax(n, "expected `LHS -> RHS`"))?;
            let lhs = lhs.trim();
            if !valid_symbol(lhs) {
                return Err(syntax(n, format!("bad left-hand side `{lhs}`")));
            }
            if lhs.parse::<Category>().is_ok() {
                return Err(syntax(n, format!("`{lhs}` is a preterminal and cannot be rewritten")));
            }
            let mut symbols = Vec::new();
            let mut class = None;
            for tok in rhs.split_whitespace() {
                if let Some(tag) = tok.strip_prefix('@') {
                    let c = SentenceClass::ALL
                        .into_iter()
                        .find(|c| c.name() == tag)
                        .ok_or_else(|| syntax(n, format!("unknown sentence class `@{tag}`")))?;
                    if class.replace(c).is_some() {
                        return Err(syntax(n, "more than one sentence class"));
                    }
                } else if valid_symbol(tok) {
                    symbols.push(tok.to_string());
                } else {
                    return Err(syntax(n, format!("bad symbol `{tok}`")));
                }
            }
            if symbols.is_empty() {
                return Err(syntax(n, "empty right-hand side"));
            }
            let rule = Rule { lhs: lhs.to_string(), rhs: symbols, class };
            if rules.iter().any(|r: &Rule| r.lhs == rule.lhs && r.rhs == rule.rhs) {
                return Err(syntax(n, format!("duplicate rule `{rule}`")));
            }
            rules.push(rule);
            lines.push(n);
        }
        let start = start.unwrap_or_else(|| "S".to_string());
        let mut by_lhs: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_lhs.entry(r.lhs.clone()).or_default().push(i);
        }
        let g = Grammar { start, rules, by_lhs, comma_before, comma_after };
        g.validate(&lines)?;
        Ok(g)
    }

    fn validate(&self, lines: &[usize]) -> Result<(), LoadError> {
        if !self.by_lhs.contains_key(&self.start) {
            return Err(LoadError::invalid(format!("start symbol `{}` has no rules", self.start)));
        }
        for (r, &n) in self.rules.iter().zip(lines) {
            if let Some(s) = r.rhs.iter().find(|s| !self.by_lhs.contains_key(*s) && s.parse::<Category>().is_err()) {
                return Err(syntax(n, format!("`{s}` is neither a nonterminal nor a preterminal")));
            }
        }
        // Unit rules A -> B must not form a cycle, or a span could derive itself.
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        fn visit<'a>(g: &'a Grammar, a: &'a str, state: &mut BTreeMap<&'a str, u8>) -> Result<(), String> {
            match state.get(a) {
                Some(1) => return Err(a.to_string()),
                Some(_) => return Ok(()),
                None => {}
            }
            state.insert(a, 1);
            for &i in g.by_lhs.get(a).map(Vec::as_slice).unwrap_or(&[]) {
                if let [b] = g.rules[i].rhs.as_slice() {
                    visit(g, b, state)?;
                }
            }
            state.insert(a, 2);
            Ok(())
        }
        for lhs in self.by_lhs.keys() {
            visit(self, lhs, &mut state).map_err(|s| LoadError::invalid(format!("unit-rule cycle through `{s}`")))?;
        }
        Ok(())
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> &Rule {
        &self.rules[index]
    }

    pub fn rules_for(&self, lhs: &str) -> &[usize] {
        self.by_lhs.get(lhs).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn find_rule(&self, lhs: &str, rhs: &[&str]) -> Option<usize> {
        self.rules_for(lhs)
            .iter()
            .copied()
            .find(|&i| self.rules[i].rhs.iter().map(String::as_str).eq(rhs.iter().copied()))
    }

    pub fn comma_before(&self, category: &str) -> bool {
        self.comma_before.contains(category)
    }

    pub fn comma_after(&self, category: &str) -> bool {
        self.comma_after.contains(category)
    }
}
