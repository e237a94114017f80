//! Regular English inflection. Irregular forms come from the lexicon.

fn split_last(word: &str) -> (&str, &str) {
    match word.rfind(' ') {
        Some(i) => (&word[..=i], &word[i + 1..]),
        None => ("", word),
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u')
}

fn consonant_y(w: &str) -> bool {
    let mut rev = w.chars().rev();
    matches!((rev.next(), rev.next()), (Some('y'), Some(c)) if !is_vowel(c))
}

/// Inflects only the last word of a multi-word base.
fn on_last(base: &str, f: impl Fn(&str) -> String) -> String {
    let (head, last) = split_last(base);
    format!("{head}{}", f(last))
}

/// `-s` / `-es` / `-ies`: third person singular and noun plural.
pub fn sibilant_suffix(base: &str) -> String {
    on_last(base, |w| {
        if consonant_y(w) {
            format!("{}ies", &w[..w.len() - 1])
        } else if ["s", "x", "z", "ch", "sh", "o"].iter().any(|s| w.ends_with(s)) {
            format!("{w}es")
        } else {
            format!("{w}s")
        }
    })
}

pub fn third_singular(base: &str) -> String {
    sibilant_suffix(base)
}

pub fn plural(base: &str) -> String {
    sibilant_suffix(base)
}

pub fn past(base: &str) -> String {
    on_last(base, |w| {
        if w.ends_with('e') {
            format!("{w}d")
        } else if consonant_y(w) {
            format!("{}ied", &w[..w.len() - 1])
        } else {
            format!("{w}ed")
        }
    })
}

pub fn present_participle(base: &str) -> String {
    on_last(base, |w| {
        if let Some(stem) = w.strip_suffix("ie") {
            format!("{stem}ying")
        } else if w.len() > 2 && w.ends_with('e') && !["ee", "ye", "oe"].iter().any(|s| w.ends_with(s)) {
            format!("{}ing", &w[..w.len() - 1])
        } else {
            format!("{w}ing")
        }
    })
}

/// Possessive of a name; without an apostrophe unless `apostrophe` is set.
pub fn possessive(base: &str, apostrophe: bool) -> String {
    match (apostrophe, base.ends_with('s')) {
        (false, _) => format!("{base}s"),
        (true, true) => format!("{base}'"),
        (true, false) => format!("{base}'s"),
    }
}
