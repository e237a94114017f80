//! Lexicon entries, inflected forms and the lexical choices used by the realiser.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LoadError, NlgError};
use crate::morphology;
use crate::tree::Leaf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pos {
    Noun,
    ProperNoun,
    Verb,
    Preposition,
    Determiner,
    Adjective,
    Conjunction,
    Auxiliary,
}

/// Inflectional form of a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Plain,
    Singular,
    Plural,
    Possessive,
    Base,
    #[serde(rename = "present_3sg")]
    Present3sg,
    PresentOther,
    Past,
    PastPlural,
    PresentParticiple,
    PastParticiple,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Plain => "plain",
            Form::Singular => "singular",
            Form::Plural => "plural",
            Form::Possessive => "possessive",
            Form::Base => "base",
            Form::Present3sg => "present_3sg",
            Form::PresentOther => "present_other",
            Form::Past => "past",
            Form::PastPlural => "past_plural",
            Form::PresentParticiple => "present_participle",
            Form::PastParticiple => "past_participle",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Preterminal categories: the grammar symbols that dominate a single word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    PropN,
    Poss,
    N,
    Adj,
    Det,
    #[serde(rename = "P_src")]
    PSource,
    #[serde(rename = "P_via")]
    PVia,
    #[serde(rename = "P_goal")]
    PGoal,
    #[serde(rename = "P_loc")]
    PLoc,
    #[serde(rename = "P_agent")]
    PAgent,
    Conj,
    Aux,
    #[serde(rename = "V_fin")]
    VFin,
    #[serde(rename = "V_base")]
    VBase,
    #[serde(rename = "V_ing")]
    VIng,
    #[serde(rename = "V_pp")]
    VPp,
}

impl Category {
    pub const ALL: [Category; 16] = [
        Category::PropN,
        Category::Poss,
        Category::N,
        Category::Adj,
        Category::Det,
        Category::PSource,
        Category::PVia,
        Category::PGoal,
        Category::PLoc,
        Category::PAgent,
        Category::Conj,
        Category::Aux,
        Category::VFin,
        Category::VBase,
        Category::VIng,
        Category::VPp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::PropN => "PropN",
            Category::Poss => "Poss",
            Category::N => "N",
            Category::Adj => "Adj",
            Category::Det => "Det",
            Category::PSource => "P_src",
            Category::PVia => "P_via",
            Category::PGoal => "P_goal",
            Category::PLoc => "P_loc",
            Category::PAgent => "P_agent",
            Category::Conj => "Conj",
            Category::Aux => "Aux",
            Category::VFin => "V_fin",
            Category::VBase => "V_base",
            Category::VIng => "V_ing",
            Category::VPp => "V_pp",
        }
    }
}

/// What a preposition introduces; each maps to its own preterminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrepFunction {
    Source,
    Via,
    Goal,
    Location,
    Agent,
}

impl PrepFunction {
    pub fn category(self) -> Category {
        match self {
            PrepFunction::Source => Category::PSource,
            PrepFunction::Via => Category::PVia,
            PrepFunction::Goal => Category::PGoal,
            PrepFunction::Location => Category::PLoc,
            PrepFunction::Agent => Category::PAgent,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Category::ALL.into_iter().find(|c| c.name() == s).ok_or(())
    }
}

const FINITE: [Form; 4] = [Form::Present3sg, Form::PresentOther, Form::Past, Form::PastPlural];
const AUX_VERB: [Form; 7] = [
    Form::Present3sg,
    Form::PresentOther,
    Form::Past,
    Form::PastPlural,
    Form::Base,
    Form::PresentParticiple,
    Form::PastParticiple,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub key: String,
    pub pos: Pos,
    pub base: String,
    /// Irregular forms overriding the regular rules.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<Form, String>,
    /// Verbs that also serve as auxiliaries (`be`).
    #[serde(default)]
    pub auxiliary: bool,
    /// Stative verbs have no continuous forms and fall back to the simple tense.
    #[serde(default)]
    pub stative: bool,
    /// Prepositions only: the phrase types the preposition can head.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<PrepFunction>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl Entry {
    /// Forms the entry can take under a preterminal, in canonical order.
    pub fn forms_for(&self, category: Category) -> &'static [Form] {
        use Category as C;
        if self.pos == Pos::Preposition {
            return if self.functions.iter().any(|f| f.category() == category) { &[Form::Plain] } else { &[] };
        }
        match (self.pos, category) {
            (Pos::ProperNoun, C::PropN) => &[Form::Plain],
            (Pos::ProperNoun, C::Poss) => &[Form::Possessive],
            (Pos::Noun, C::N) => &[Form::Singular, Form::Plural],
            (Pos::Adjective, C::Adj) | (Pos::Determiner, C::Det) | (Pos::Conjunction, C::Conj) => &[Form::Plain],
            (Pos::Auxiliary, C::Aux) => &[Form::Base],
            (Pos::Verb, C::Aux) if self.auxiliary => &AUX_VERB,
            (Pos::Verb, C::VFin) => &FINITE,
            (Pos::Verb, C::VBase) => &[Form::Base],
            (Pos::Verb, C::VIng) => &[Form::PresentParticiple],
            (Pos::Verb, C::VPp) => &[Form::PastParticiple],
            _ => &[],
        }
    }

    pub fn surface(&self, form: Form, possessive_apostrophe: bool) -> String {
        if let Some(s) = self.forms.get(&form) {
            return s.clone();
        }
        let b = &self.base;
        match form {
            Form::Plain | Form::Singular | Form::Base | Form::PresentOther => b.clone(),
            Form::Plural => morphology::plural(b),
            Form::Possessive => morphology::possessive(b, possessive_apostrophe),
            Form::Present3sg => morphology::third_singular(b),
            Form::Past => morphology::past(b),
            Form::PastPlural | Form::PastParticiple => self.surface(Form::Past, possessive_apostrophe),
            Form::PresentParticiple => morphology::present_participle(b),
        }
    }
}

/// Lexical choices per schema and trajector kind; all values are lexicon keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Choices {
    pub occupy: String,
    pub be: String,
    pub contain_preposition: String,
    pub person_motion: String,
    pub gaze_motion: String,
    pub person_source: String,
    pub person_via: String,
    pub person_goal: String,
    pub gaze_source: String,
    pub gaze_via: String,
    pub gaze_goal: String,
    pub attract: String,
    pub agent_preposition: String,
    pub attention: String,
    #[serde(rename = "while")]
    pub while_: String,
    pub will: String,
    pub determiner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    #[serde(default)]
    possessive_apostrophe: bool,
    choices: Choices,
    #[serde(default, rename = "entry")]
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    possessive_apostrophe: bool,
    choices: Choices,
    entries: Vec<Entry>,
    index: BTreeMap<String, usize>,
}

impl Lexicon {
    pub fn from_toml_str(src: &str) -> Result<Self, LoadError> {
        let file: LexiconFile = toml::from_str(src).map_err(|e| LoadError::from_toml(e, src))?;
        Lexicon::new(file.entries, file.choices, file.possessive_apostrophe)
    }

    pub fn new(entries: Vec<Entry>, choices: Choices, possessive_apostrophe: bool) -> Result<Self, LoadError> {
        let mut index = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            if e.key.trim().is_empty() || e.base.trim().is_empty() {
                return Err(LoadError::invalid(format!("entry {} has an empty key or base form", i + 1)));
            }
            if e.base.split(' ').any(str::is_empty) {
                return Err(LoadError::invalid(format!("entry `{}`: base form has stray spaces", e.key)));
            }
            if index.insert(e.key.clone(), i).is_some() {
                return Err(LoadError::invalid(format!("duplicate lexicon key `{}`", e.key)));
            }
            if e.auxiliary && e.pos != Pos::Verb {
                return Err(LoadError::invalid(format!("entry `{}`: only verbs can be flagged auxiliary", e.key)));
            }
            if (e.pos == Pos::Preposition) == e.functions.is_empty() {
                return Err(LoadError::invalid(format!(
                    "entry `{}`: prepositions, and only prepositions, list their functions",
                    e.key
                )));
            }
        }
        let lex = Lexicon { possessive_apostrophe, choices, entries, index };
        lex.validate_choices()?;
        Ok(lex)
    }

    fn validate_choices(&self) -> Result<(), LoadError> {
        let c = &self.choices;
        let want: [(&str, &String, &[Pos]); 17] = [
            ("occupy", &c.occupy, &[Pos::Verb]),
            ("be", &c.be, &[Pos::Verb]),
            ("contain_preposition", &c.contain_preposition, &[Pos::Preposition]),
            ("person_motion", &c.person_motion, &[Pos::Verb]),
            ("gaze_motion", &c.gaze_motion, &[Pos::Verb]),
            ("person_source", &c.person_source, &[Pos::Preposition]),
            ("person_via", &c.person_via, &[Pos::Preposition]),
            ("person_goal", &c.person_goal, &[Pos::Preposition]),
            ("gaze_source", &c.gaze_source, &[Pos::Preposition]),
            ("gaze_via", &c.gaze_via, &[Pos::Preposition]),
            ("gaze_goal", &c.gaze_goal, &[Pos::Preposition]),
            ("attract", &c.attract, &[Pos::Verb]),
            ("agent_preposition", &c.agent_preposition, &[Pos::Preposition]),
            ("attention", &c.attention, &[Pos::Noun]),
            ("while", &c.while_, &[Pos::Conjunction]),
            ("will", &c.will, &[Pos::Auxiliary]),
            ("determiner", &c.determiner, &[Pos::Determiner]),
        ];
        for (slot, key, pos) in want {
            let entry = self
                .get(key)
                .ok_or_else(|| LoadError::invalid(format!("choice `{slot}` names unknown entry `{key}`")))?;
            if !pos.contains(&entry.pos) {
                return Err(LoadError::invalid(format!("choice `{slot}`: `{key}` is a {:?}", entry.pos)));
            }
        }
        use PrepFunction as F;
        let preps: [(&str, &String, &[PrepFunction]); 8] = [
            ("contain_preposition", &c.contain_preposition, &[F::Location]),
            ("person_source", &c.person_source, &[F::Source]),
            ("person_via", &c.person_via, &[F::Via, F::Location]),
            ("person_goal", &c.person_goal, &[F::Goal]),
            ("gaze_source", &c.gaze_source, &[F::Source]),
            ("gaze_via", &c.gaze_via, &[F::Via, F::Location]),
            ("gaze_goal", &c.gaze_goal, &[F::Goal]),
            ("agent_preposition", &c.agent_preposition, &[F::Agent]),
        ];
        for (slot, key, functions) in preps {
            let e = self.get(key).expect("checked");
            if let Some(f) = functions.iter().find(|f| !e.functions.contains(f)) {
                return Err(LoadError::invalid(format!("choice `{slot}`: `{key}` lacks the {f:?} function")));
            }
        }
        let be = self.get(&c.be).expect("checked");
        if !be.auxiliary {
            return Err(LoadError::invalid(format!("choice `be`: `{}` must be flagged auxiliary", c.be)));
        }
        Ok(())
    }

    pub fn choices(&self) -> &Choices {
        &self.choices
    }

    pub fn possessive_apostrophe(&self) -> bool {
        self.possessive_apostrophe
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.index.get(key).map(|&i| &self.entries[i])
    }

    pub fn entry(&self, key: &str) -> Result<&Entry, NlgError> {
        self.get(key).ok_or_else(|| NlgError::LexiconGap(key.to_string()))
    }

    pub fn position(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// The leaf for `key` under `category` in `form`. Forms that coincide on
    /// the surface collapse to the first one in canonical order, so that
    /// generation and parsing agree on the leaf.
    pub fn leaf(&self, category: Category, key: &str, form: Form) -> Result<Leaf, NlgError> {
        let entry = self.entry(key)?;
        let forms = entry.forms_for(category);
        if !forms.contains(&form) {
            return Err(NlgError::BadPhrase {
                key: key.to_string(),
                category: category.name().to_string(),
                reason: format!("a {:?} has no {} form there", entry.pos, form),
            });
        }
        let surface = entry.surface(form, self.possessive_apostrophe);
        let canonical = forms
            .iter()
            .copied()
            .find(|f| entry.surface(*f, self.possessive_apostrophe) == surface)
            .expect("form itself matches");
        Ok(Leaf { category, key: key.to_string(), form: canonical, surface })
    }

    /// Every distinct leaf the lexicon can produce.
    pub fn all_leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        for e in &self.entries {
            for c in Category::ALL {
                for &f in e.forms_for(c) {
                    let leaf = self.leaf(c, &e.key, f).expect("form listed for category");
                    if leaf.form == f {
                        out.push(leaf);
                    }
                }
            }
        }
        out
    }
}
