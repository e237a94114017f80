//! Syntactic and morphological realisation of an IDS record.

use scenetalk_core::schemas::{ContainmentVariant, TrajectorKind};

use crate::error::NlgError;
use crate::grammar::{Grammar, SentenceClass};
use crate::ids::{EventKind, Ids, Modifier, PhraseSpec, Role, Tense};
use crate::lexicon::{Category, Choices, Form, Lexicon, Pos, PrepFunction};
use crate::tree::SyntaxTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Voice {
    Active,
    Passive,
}

struct Realiser<'a> {
    lexicon: &'a Lexicon,
    grammar: &'a Grammar,
}

impl<'a> Realiser<'a> {
    fn choices(&self) -> &'a Choices {
        self.lexicon.choices()
    }

    fn node(&self, category: &str, children: Vec<SyntaxTree>) -> Result<SyntaxTree, NlgError> {
        let rhs: Vec<&str> = children.iter().map(SyntaxTree::category).collect();
        let rule = self.grammar.find_rule(category, &rhs).ok_or_else(|| NlgError::GrammarGap {
            lhs: category.to_string(),
            rhs: rhs.iter().map(|s| s.to_string()).collect(),
        })?;
        Ok(SyntaxTree::Node { category: category.to_string(), rule, children })
    }

    fn leaf(&self, category: Category, key: &str, form: Form) -> Result<SyntaxTree, NlgError> {
        self.lexicon.leaf(category, key, form).map(SyntaxTree::Leaf)
    }

    fn bad(&self, key: &str, category: &str, reason: &str) -> NlgError {
        NlgError::BadPhrase { key: key.to_string(), category: category.to_string(), reason: reason.to_string() }
    }

    fn nom(&self, modifiers: &[String], head: &str, plural: bool) -> Result<SyntaxTree, NlgError> {
        match modifiers.split_first() {
            None => {
                let form = if plural { Form::Plural } else { Form::Singular };
                self.node("Nom", vec![self.leaf(Category::N, head, form)?])
            }
            Some((m, rest)) => {
                let first = match self.lexicon.entry(m)?.pos {
                    Pos::Adjective => self.leaf(Category::Adj, m, Form::Plain)?,
                    Pos::Noun => self.leaf(Category::N, m, Form::Singular)?,
                    _ => return Err(self.bad(m, "Nom", "modifiers must be adjectives or nouns")),
                };
                self.node("Nom", vec![first, self.nom(rest, head, plural)?])
            }
        }
    }

    fn np(&self, phrase: &PhraseSpec) -> Result<SyntaxTree, NlgError> {
        let entry = self.lexicon.entry(&phrase.head)?;
        match entry.pos {
            Pos::ProperNoun => {
                if !phrase.modifiers.is_empty() || phrase.possessor.is_some() {
                    return Err(self.bad(&phrase.head, "NP", "proper nouns take no modifiers or possessor"));
                }
                self.node("NP", vec![self.leaf(Category::PropN, &phrase.head, Form::Plain)?])
            }
            Pos::Noun => {
                let nom = self.nom(&phrase.modifiers, &phrase.head, phrase.plural)?;
                let spec = match &phrase.possessor {
                    Some(owner) => self.leaf(Category::Poss, owner, Form::Possessive)?,
                    None => self.leaf(Category::Det, &self.choices().determiner, Form::Plain)?,
                };
                self.node("NP", vec![spec, nom])
            }
            _ => Err(self.bad(&phrase.head, "NP", "the head must be a noun or proper noun")),
        }
    }

    fn pp(&self, function: PrepFunction, preposition: &str, phrase: &PhraseSpec) -> Result<SyntaxTree, NlgError> {
        let category = match function {
            PrepFunction::Source => "SourcePP",
            PrepFunction::Via => "ViaPP",
            PrepFunction::Goal => "GoalPP",
            PrepFunction::Location => "LocPP",
            PrepFunction::Agent => "AgentPP",
        };
        self.node(category, vec![self.leaf(function.category(), preposition, Form::Plain)?, self.np(phrase)?])
    }

    /// Finite verb group agreeing with a third-person subject.
    fn vg(&self, verb: &str, tense: Tense, plural: bool, voice: Voice) -> Result<SyntaxTree, NlgError> {
        let (be, will) = (&self.choices().be, &self.choices().will);
        let tense = if voice == Voice::Active && tense.is_continuous() && self.lexicon.entry(verb)?.stative {
            tense.simple()
        } else {
            tense
        };
        let present = if plural { Form::PresentOther } else { Form::Present3sg };
        let past = if plural { Form::PastPlural } else { Form::Past };
        let aux = |key: &str, form| self.leaf(Category::Aux, key, form);
        let children = match (voice, tense) {
            (Voice::Active, Tense::SimplePresent) => vec![self.leaf(Category::VFin, verb, present)?],
            (Voice::Active, Tense::SimplePast) => vec![self.leaf(Category::VFin, verb, past)?],
            (Voice::Active, Tense::SimpleFuture) => {
                vec![aux(will, Form::Base)?, self.leaf(Category::VBase, verb, Form::Base)?]
            }
            (Voice::Active, Tense::PresentContinuous) => {
                vec![aux(be, present)?, self.leaf(Category::VIng, verb, Form::PresentParticiple)?]
            }
            (Voice::Active, Tense::PastContinuous) => {
                vec![aux(be, past)?, self.leaf(Category::VIng, verb, Form::PresentParticiple)?]
            }
            (Voice::Active, Tense::FutureContinuous) => vec![
                aux(will, Form::Base)?,
                aux(be, Form::Base)?,
                self.leaf(Category::VIng, verb, Form::PresentParticiple)?,
            ],
            (Voice::Passive, t) => {
                let mut v = match t {
                    Tense::SimplePresent => vec![aux(be, present)?],
                    Tense::SimplePast => vec![aux(be, past)?],
                    Tense::SimpleFuture => vec![aux(will, Form::Base)?, aux(be, Form::Base)?],
                    Tense::PresentContinuous => vec![aux(be, present)?, aux(be, Form::PresentParticiple)?],
                    Tense::PastContinuous => vec![aux(be, past)?, aux(be, Form::PresentParticiple)?],
                    Tense::FutureContinuous => {
                        vec![aux(will, Form::Base)?, aux(be, Form::Base)?, aux(be, Form::PresentParticiple)?]
                    }
                };
                v.push(self.leaf(Category::VPp, verb, Form::PastParticiple)?);
                v
            }
        };
        self.node("VG", children)
    }

    fn path_words(&self, kind: TrajectorKind) -> (&'a str, &'a str, &'a str, &'a str) {
        let c = self.choices();
        match kind {
            TrajectorKind::Person => (&c.person_motion, &c.person_source, &c.person_via, &c.person_goal),
            TrajectorKind::Gaze => (&c.gaze_motion, &c.gaze_source, &c.gaze_via, &c.gaze_goal),
        }
    }

    fn path_rest(&self, via_prep: &str, goal_prep: &str, ids: &Ids) -> Result<SyntaxTree, NlgError> {
        let goal = self.pp(PrepFunction::Goal, goal_prep, &ids.role(Role::Goal)?.phrase)?;
        let mut rest = self.node("PathRest", vec![goal])?;
        for via in ids.fillers(Role::Via).iter().rev() {
            rest = self.node("PathRest", vec![self.pp(PrepFunction::Via, via_prep, &via.phrase)?, rest])?;
        }
        Ok(rest)
    }

    fn clause(&self, ids: &Ids) -> Result<SyntaxTree, NlgError> {
        let c = self.choices();
        let (subject, vp) = match ids.event {
            EventKind::Containment { variant } => {
                let subject = &ids.role(Role::Trajector)?.phrase;
                let container = &ids.role(Role::Container)?.phrase;
                let vp = match variant {
                    ContainmentVariant::Occupies => {
                        vec![self.vg(&c.occupy, ids.tense, subject.plural, Voice::Active)?, self.np(container)?]
                    }
                    ContainmentVariant::In => vec![
                        self.vg(&c.be, ids.tense, subject.plural, Voice::Active)?,
                        self.pp(PrepFunction::Location, &c.contain_preposition, container)?,
                    ],
                };
                (subject.clone(), vp)
            }
            EventKind::SourcePathGoal { trajector } => {
                let subject = &ids.role(Role::Trajector)?.phrase;
                let (verb, from, via, to) = self.path_words(trajector);
                let source = self.pp(PrepFunction::Source, from, &ids.role(Role::Source)?.phrase)?;
                let path = self.node("PathPP", vec![source, self.path_rest(via, to, ids)?])?;
                (subject.clone(), vec![self.vg(verb, ids.tense, subject.plural, Voice::Active)?, path])
            }
            EventKind::PathGoal { trajector } => {
                let subject = &ids.role(Role::Trajector)?.phrase;
                let (verb, _, _, to) = self.path_words(trajector);
                let goal = self.pp(PrepFunction::Goal, to, &ids.role(Role::Goal)?.phrase)?;
                let path = self.node("PathPP", vec![goal])?;
                (subject.clone(), vec![self.vg(verb, ids.tense, subject.plural, Voice::Active)?, path])
            }
            EventKind::Attraction => {
                let owner = &ids.role(Role::Experiencer)?.phrase;
                let subject =
                    PhraseSpec { possessor: Some(owner.head.clone()), ..PhraseSpec::new(c.attention.clone()) };
                let agent = self.pp(PrepFunction::Agent, &c.agent_preposition, &ids.role(Role::Attractor)?.phrase)?;
                (subject, vec![self.vg(&c.attract, ids.tense, false, Voice::Passive)?, agent])
            }
        };
        let vp = self.node("VP", vp)?;
        self.node("Clause", vec![self.np(&subject)?, vp])
    }

    fn sentence(&self, ids: &Ids) -> Result<SyntaxTree, NlgError> {
        let c = self.choices();
        let main = self.clause(ids)?;
        let children = match &ids.modifier {
            None => vec![main],
            Some(Modifier::While(sub)) => {
                let conj = self.leaf(Category::Conj, &c.while_, Form::Plain)?;
                vec![main, self.node("WhileClause", vec![conj, self.clause(sub)?])?]
            }
            Some(Modifier::WhileMoving { mover, location }) => {
                let (verb, _, via, _) = self.path_words(*mover);
                let part = self.node(
                    "VPart",
                    vec![
                        self.leaf(Category::VIng, verb, Form::PresentParticiple)?,
                        self.pp(PrepFunction::Location, via, &location.phrase)?,
                    ],
                )?;
                let conj = self.leaf(Category::Conj, &c.while_, Form::Plain)?;
                vec![self.node("SubClause", vec![conj, part])?, main]
            }
        };
        self.node(self.grammar.start(), children)
    }
}

/// Builds the syntax tree for one record. Every node is checked against a
/// grammar rule, so the tree is always derivable from the grammar.
pub fn realize(ids: &Ids, lexicon: &Lexicon, grammar: &Grammar) -> Result<SyntaxTree, NlgError> {
    Realiser { lexicon, grammar }.sentence(ids)
}

/// Sentence class of a tree, from the tag of its root rule.
pub fn sentence_class(tree: &SyntaxTree, grammar: &Grammar) -> Option<SentenceClass> {
    tree.rule().and_then(|r| grammar.rule(r).class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::tests::GRAMMAR;
    use crate::ids::Filler;
    use crate::lexicon::tests::small;
    use crate::tree::linearize;
    use scenetalk_core::time::{Span, TimePoint};

    fn filler(entity: &str, phrase: PhraseSpec) -> Filler {
        Filler { entity: entity.into(), phrase }
    }

    fn quadrant(side: &str) -> PhraseSpec {
        PhraseSpec { modifiers: vec![side.into()], ..PhraseSpec::new("quadrant") }
    }

    fn occupies(who: &str, side: &str, tense: Tense) -> Ids {
        Ids::new(EventKind::Containment { variant: ContainmentVariant::Occupies }, tense, Span::At(TimePoint::ZERO))
            .with(Role::Trajector, filler(who, PhraseSpec::new(who)))
            .with(Role::Container, filler("q", quadrant(side)))
    }

    fn say(ids: &Ids) -> String {
        let g = Grammar::from_text(GRAMMAR).unwrap();
        let lex = small();
        linearize(&realize(ids, &lex, &g).unwrap(), &g)
    }

    #[test]
    fn containment_sentences() {
        assert_eq!(say(&occupies("irene", "right", Tense::SimplePresent)), "Irene occupies the right quadrant.");
        assert_eq!(say(&occupies("irene", "right", Tense::SimplePast)), "Irene occupied the right quadrant.");
        assert_eq!(
            say(&occupies("irene", "right", Tense::FutureContinuous)),
            "Irene will be occupying the right quadrant."
        );
        let mut both = occupies("irene", "right", Tense::SimplePresent);
        both.modifier = Some(Modifier::While(Box::new(occupies("the_driver", "left", Tense::SimplePresent))));
        assert_eq!(say(&both), "Irene occupies the right quadrant, while The Driver occupies the left quadrant.");

        let mut inside = occupies("irene", "right", Tense::PresentContinuous);
        inside.event = EventKind::Containment { variant: ContainmentVariant::In };
        assert_eq!(say(&inside), "Irene is in the right quadrant.");
    }

    #[test]
    fn gaze_path_agrees_with_plural_subject() {
        let eyes = PhraseSpec { possessor: Some("barbara".into()), plural: true, ..PhraseSpec::new("eye") };
        let ids = Ids::new(
            EventKind::SourcePathGoal { trajector: TrajectorKind::Gaze },
            Tense::SimplePresent,
            Span::At(TimePoint::ZERO),
        )
        .with(Role::Trajector, filler("g", eyes))
        .with(Role::Source, filler("a", PhraseSpec::new("room")))
        .with(Role::Via, filler("b", quadrant("left")))
        .with(Role::Via, filler("c", quadrant("right")))
        .with(Role::Goal, filler("d", PhraseSpec::new("room")));
        assert_eq!(
            say(&ids),
            "Barbaras eyes move from the room, over the left quadrant, over the right quadrant to the room."
        );
        assert_eq!(
            say(&ids.clone().with_tense(Tense::PastContinuous)),
            "Barbaras eyes were moving from the room, over the left quadrant, over the right quadrant to the room."
        );
    }

    #[test]
    fn attraction_is_passive() {
        let ids = Ids::new(EventKind::Attraction, Tense::SimplePresent, Span::At(TimePoint::ZERO))
            .with(Role::Experiencer, filler("b", PhraseSpec::new("barbara")))
            .with(Role::Attractor, filler("r", PhraseSpec::new("room")));
        let mut complex = ids.clone();
        complex.modifier =
            Some(Modifier::WhileMoving { mover: TrajectorKind::Person, location: filler("q", quadrant("left")) });
        assert_eq!(
            say(&complex),
            "While walking through the left quadrant, Barbaras attention is attracted by the room."
        );
        assert_eq!(
            say(&ids.with_tense(Tense::FutureContinuous)),
            "Barbaras attention will be being attracted by the room."
        );
    }

    #[test]
    fn gaps_are_errors() {
        let g = Grammar::from_text(GRAMMAR).unwrap();
        let lex = small();
        let ghost = occupies("casper", "right", Tense::SimplePresent);
        assert_eq!(realize(&ghost, &lex, &g), Err(NlgError::LexiconGap("casper".into())));
        let mut missing = occupies("irene", "right", Tense::SimplePresent);
        missing.roles.remove(&Role::Container);
        assert!(matches!(realize(&missing, &lex, &g), Err(NlgError::MissingRole { .. })));
        let no_while = Grammar::from_text(&GRAMMAR.replace("S -> Clause WhileClause @compound", "")).unwrap();
        let mut both = occupies("irene", "right", Tense::SimplePresent);
        both.modifier = Some(Modifier::While(Box::new(occupies("the_driver", "left", Tense::SimplePresent))));
        assert!(matches!(realize(&both, &lex, &no_while), Err(NlgError::GrammarGap { .. })));
    }
}
