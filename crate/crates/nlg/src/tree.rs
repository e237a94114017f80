//! Syntax trees and their linearisation into sentences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grammar::Grammar;
use crate::lexicon::{Category, Form};

/// An inflected word together with the lexicon entry it realises.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Leaf {
    pub category: Category,
    pub key: String,
    pub form: Form,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SyntaxTree {
    Node {
        category: String,
        /// Index of the grammar rule that licenses the node.
        rule: usize,
        children: Vec<SyntaxTree>,
    },
    Leaf(Leaf),
}

impl SyntaxTree {
    pub fn category(&self) -> &str {
        match self {
            SyntaxTree::Node { category, .. } => category,
            SyntaxTree::Leaf(l) => l.category.name(),
        }
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Leaf>) {
        match self {
            SyntaxTree::Leaf(l) => out.push(l),
            SyntaxTree::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// The rule at the root, if the root is a node.
    pub fn rule(&self) -> Option<usize> {
        match self {
            SyntaxTree::Node { rule, .. } => Some(*rule),
            SyntaxTree::Leaf(_) => None,
        }
    }

    /// Pre-order sequence of rule indices and leaf identities; orders parses.
    pub(crate) fn order_key(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        self.push_key(&mut out);
        out
    }

    fn push_key(&self, out: &mut Vec<(usize, usize, usize)>) {
        match self {
            SyntaxTree::Node { rule, children, .. } => {
                out.push((0, *rule, 0));
                children.iter().for_each(|c| c.push_key(out));
            }
            SyntaxTree::Leaf(l) => out.push((1, l.category as usize, l.form as usize)),
        }
    }

    fn fmt_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            SyntaxTree::Leaf(l) => writeln!(f, "{pad}{} \"{}\" [{}, {}]", l.category, l.surface, l.key, l.form),
            SyntaxTree::Node { category, children, .. } => {
                writeln!(f, "{pad}{category}")?;
                children.iter().try_for_each(|c| c.fmt_indented(f, depth + 1))
            }
        }
    }
}

/// Indented one-node-per-line rendering.
impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_indented(f, 0)
    }
}

fn walk(tree: &SyntaxTree, grammar: &Grammar, words: &mut Vec<String>, commas: &mut Vec<bool>) {
    match tree {
        SyntaxTree::Leaf(l) => {
            words.push(l.surface.clone());
            commas.push(false);
        }
        SyntaxTree::Node { category, children, .. } => {
            if grammar.comma_before(category) && !words.is_empty() {
                *commas.last_mut().expect("non-empty") = true;
            }
            children.iter().for_each(|c| walk(c, grammar, words, commas));
            if grammar.comma_after(category) {
                if let Some(last) = commas.last_mut() {
                    *last = true;
                }
            }
        }
    }
}

/// Joins the leaves into a sentence: commas from the grammar's punctuation
/// rules, a final period and a capitalised first letter.
pub fn linearize(tree: &SyntaxTree, grammar: &Grammar) -> String {
    let (mut words, mut commas) = (Vec::new(), Vec::new());
    walk(tree, grammar, &mut words, &mut commas);
    if let Some(last) = commas.last_mut() {
        *last = false;
    }
    let mut out = String::new();
    for (i, (w, comma)) in words.iter().zip(&commas).enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(w);
        if *comma {
            out.push(',');
        }
    }
    out.push('.');
    let mut chars = out.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => out,
    }
}
