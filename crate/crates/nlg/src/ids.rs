//! Interaction description records: the generator's input, one per sentence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use scenetalk_core::schemas::{ContainmentVariant, SchemaOccurrence, TrajectorKind};
use scenetalk_core::store::{NarrativeStore, Occurrence};
use scenetalk_core::temporal::allen_endpoints;
use scenetalk_core::time::Span;

use crate::error::{LoadError, NlgError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tense {
    SimplePresent,
    SimplePast,
    SimpleFuture,
    PresentContinuous,
    PastContinuous,
    FutureContinuous,
}

impl Tense {
    pub const ALL: [Tense; 6] = [
        Tense::SimplePresent,
        Tense::SimplePast,
        Tense::SimpleFuture,
        Tense::PresentContinuous,
        Tense::PastContinuous,
        Tense::FutureContinuous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tense::SimplePresent => "simple_present",
            Tense::SimplePast => "simple_past",
            Tense::SimpleFuture => "simple_future",
            Tense::PresentContinuous => "present_continuous",
            Tense::PastContinuous => "past_continuous",
            Tense::FutureContinuous => "future_continuous",
        }
    }

    pub fn is_continuous(self) -> bool {
        matches!(self, Tense::PresentContinuous | Tense::PastContinuous | Tense::FutureContinuous)
    }

    /// The simple tense with the same time reference.
    pub fn simple(self) -> Tense {
        match self {
            Tense::PresentContinuous => Tense::SimplePresent,
            Tense::PastContinuous => Tense::SimplePast,
            Tense::FutureContinuous => Tense::SimpleFuture,
            t => t,
        }
    }
}

impl fmt::Display for Tense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tense {
    type Err = String;

    /// Accepts the full names and the short forms `present`, `past`, `future`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase().replace('-', "_");
        let short = match s.as_str() {
            "present" => Some(Tense::SimplePresent),
            "past" => Some(Tense::SimplePast),
            "future" => Some(Tense::SimpleFuture),
            _ => None,
        };
        short.or_else(|| Tense::ALL.into_iter().find(|t| t.name() == s)).ok_or_else(|| {
            let names: Vec<_> = Tense::ALL.iter().map(|t| t.name()).collect();
            format!("unknown tense `{s}` (expected one of {}, present, past, future)", names.join(", "))
        })
    }
}

/// How a noun phrase for an entity is built from lexicon keys.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PhraseSpec {
    pub head: String,
    /// Pre-head modifiers (adjectives or nouns), outermost first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modifiers: Vec<String>,
    /// Lexicon key of a proper-noun possessor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub possessor: Option<String>,
    #[serde(default)]
    pub plural: bool,
}

impl PhraseSpec {
    pub fn new(head: impl Into<String>) -> Self {
        PhraseSpec { head: head.into(), modifiers: Vec::new(), possessor: None, plural: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VocabEntry {
    pub head: String,
    #[serde(default)]
    pub modifiers: Vec<String>,
    /// Entity whose possession this is (gaze tracks belong to a person).
    #[serde(default)]
    pub owner: Option<String>,
    #[serde(default)]
    pub plural: bool,
}

/// Entity and region identifiers mapped to phrases of the lexicon.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vocabulary {
    #[serde(default)]
    pub entity: BTreeMap<String, VocabEntry>,
}

impl Vocabulary {
    pub fn from_toml_str(src: &str) -> Result<Self, LoadError> {
        let v: Vocabulary = toml::from_str(src).map_err(|e| LoadError::from_toml(e, src))?;
        for (id, e) in &v.entity {
            if let Some(owner) = &e.owner {
                if !v.entity.contains_key(owner) {
                    return Err(LoadError::invalid(format!("entity `{id}`: owner `{owner}` has no entry")));
                }
            }
        }
        Ok(v)
    }

    pub fn insert(&mut self, id: impl Into<String>, entry: VocabEntry) {
        self.entity.insert(id.into(), entry);
    }

    pub fn phrase(&self, entity: &str) -> Result<PhraseSpec, NlgError> {
        let e = self.entity.get(entity).ok_or_else(|| NlgError::VocabularyGap(entity.to_string()))?;
        let possessor = match &e.owner {
            Some(owner) => {
                Some(self.entity.get(owner).ok_or_else(|| NlgError::VocabularyGap(owner.clone()))?.head.clone())
            }
            None => None,
        };
        Ok(PhraseSpec { head: e.head.clone(), modifiers: e.modifiers.clone(), possessor, plural: e.plural })
    }

    pub fn filler(&self, entity: &str) -> Result<Filler, NlgError> {
        Ok(Filler { entity: entity.to_string(), phrase: self.phrase(entity)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Trajector,
    Container,
    Source,
    Via,
    Goal,
    /// Whose attention is drawn.
    Experiencer,
    Attractor,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Trajector => "trajector",
            Role::Container => "container",
            Role::Source => "source",
            Role::Via => "via",
            Role::Goal => "goal",
            Role::Experiencer => "experiencer",
            Role::Attractor => "attractor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Filler {
    pub entity: String,
    pub phrase: PhraseSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "schema", rename_all = "snake_case")]
pub enum EventKind {
    Containment { variant: ContainmentVariant },
    SourcePathGoal { trajector: TrajectorKind },
    PathGoal { trajector: TrajectorKind },
    Attraction,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Containment { .. } => "containment",
            EventKind::SourcePathGoal { .. } => "source_path_goal",
            EventKind::PathGoal { .. } => "path_goal",
            EventKind::Attraction => "attraction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Modifier {
    /// A co-temporal event, realised as a `while` clause.
    While(Box<Ids>),
    /// The experiencer was moving through a location, realised as a
    /// participial `while` clause.
    WhileMoving { mover: TrajectorKind, location: Filler },
}

/// One sentence worth of content.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ids {
    pub event: EventKind,
    pub roles: BTreeMap<Role, Vec<Filler>>,
    pub tense: Tense,
    pub span: Span,
    /// Occurrence ids the record was built from.
    pub occurrences: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modifier: Option<Modifier>,
}

impl Ids {
    pub fn new(event: EventKind, tense: Tense, span: Span) -> Self {
        Ids { event, roles: BTreeMap::new(), tense, span, occurrences: Vec::new(), modifier: None }
    }

    pub fn with(mut self, role: Role, filler: Filler) -> Self {
        self.roles.entry(role).or_default().push(filler);
        self
    }

    pub fn role(&self, role: Role) -> Result<&Filler, NlgError> {
        self.roles.get(&role).and_then(|v| v.first()).ok_or_else(|| NlgError::MissingRole {
            event: self.event.name().to_string(),
            role: role.name().to_string(),
        })
    }

    pub fn fillers(&self, role: Role) -> &[Filler] {
        self.roles.get(&role).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn with_tense(mut self, tense: Tense) -> Self {
        self.tense = tense;
        self.modifier = match self.modifier.take() {
            Some(Modifier::While(other)) => Some(Modifier::While(Box::new(other.with_tense(tense)))),
            m => m,
        };
        self
    }
}

fn intersecting(a: &Span, b: &Span) -> bool {
    match (a, b) {
        (Span::Between(_), Span::Between(_)) => {
            allen_endpoints(a.start(), a.end(), b.start(), b.end()).is_intersecting()
        }
        _ => a.touches(b),
    }
}

/// The record for a single occurrence, without any pairing.
pub fn schema_to_ids(occ: &Occurrence, vocab: &Vocabulary, tense: Tense) -> Result<Ids, NlgError> {
    let span = occ.span();
    let mut ids = match &occ.schema {
        SchemaOccurrence::Containment(c) => Ids::new(EventKind::Containment { variant: c.variant }, tense, span)
            .with(Role::Trajector, vocab.filler(&c.entity)?)
            .with(Role::Container, vocab.filler(&c.container)?),
        SchemaOccurrence::SourcePathGoal(p) => {
            let mut ids = Ids::new(EventKind::SourcePathGoal { trajector: p.trajector_kind }, tense, span)
                .with(Role::Trajector, vocab.filler(&p.trajector)?)
                .with(Role::Source, vocab.filler(&p.source)?);
            for v in &p.via {
                ids = ids.with(Role::Via, vocab.filler(v)?);
            }
            ids.with(Role::Goal, vocab.filler(&p.goal)?)
        }
        SchemaOccurrence::PathGoal(p) => Ids::new(EventKind::PathGoal { trajector: p.trajector_kind }, tense, span)
            .with(Role::Trajector, vocab.filler(&p.trajector)?)
            .with(Role::Goal, vocab.filler(&p.goal)?),
        SchemaOccurrence::Attraction(a) => Ids::new(EventKind::Attraction, tense, span)
            .with(Role::Experiencer, vocab.filler(&a.entity)?)
            .with(Role::Attractor, vocab.filler(&a.attractor)?),
    };
    ids.occurrences.push(occ.id.clone());
    Ok(ids)
}

/// A path of `owner` under way when `at` begins, if any.
fn moving_kind(store: &NarrativeStore, owner: &str, span: &Span) -> Option<TrajectorKind> {
    store.occurrences().iter().find_map(|o| match &o.schema {
        SchemaOccurrence::SourcePathGoal(p) if p.trajector == owner && p.span.contains(span.start()) => {
            Some(p.trajector_kind)
        }
        SchemaOccurrence::PathGoal(p) if p.trajector == owner && p.span.contains(span.start()) => {
            Some(p.trajector_kind)
        }
        _ => None,
    })
}

/// Records for every occurrence of a store, in span order.
///
/// Containments of different entities whose spans intersect are paired: the
/// earlier one is the main clause and the later one its `while` clause.
/// Attractions that begin while their owner is on a path get a participial
/// clause naming the owner's location. Occurrences that cannot be expressed
/// are reported and skipped.
pub fn plan(store: &NarrativeStore, vocab: &Vocabulary, tense: Tense) -> (Vec<Ids>, Vec<(String, NlgError)>) {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    let occs = store.occurrences();
    let mut paired = vec![false; occs.len()];
    for (i, occ) in occs.iter().enumerate() {
        if paired[i] {
            continue;
        }
        let mut ids = match schema_to_ids(occ, vocab, tense) {
            Ok(ids) => ids,
            Err(e) => {
                errors.push((occ.id.clone(), e));
                continue;
            }
        };
        match &occ.schema {
            SchemaOccurrence::Containment(c) => {
                let partner = occs.iter().enumerate().skip(i + 1).find(|(j, o)| {
                    !paired[*j]
                        && matches!(&o.schema, SchemaOccurrence::Containment(d)
                            if d.entity != c.entity && intersecting(&c.span, &d.span))
                });
                if let Some((j, other)) = partner {
                    match schema_to_ids(other, vocab, tense) {
                        Ok(sub) => {
                            paired[j] = true;
                            ids.occurrences.push(other.id.clone());
                            ids.modifier = Some(Modifier::While(Box::new(sub)));
                        }
                        Err(e) => errors.push((other.id.clone(), e)),
                    }
                }
            }
            SchemaOccurrence::Attraction(a) => {
                if let (Some(loc), Some(mover)) = (&a.context_location, moving_kind(store, &a.entity, &a.span)) {
                    match vocab.filler(loc) {
                        Ok(location) => ids.modifier = Some(Modifier::WhileMoving { mover, location }),
                        Err(e) => errors.push((occ.id.clone(), e)),
                    }
                }
            }
            _ => {}
        }
        paired[i] = true;
        out.push(ids);
    }
    out.sort_by_key(|ids| ids.span.start());
    (out, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use scenetalk_core::schemas::ContainmentOccurrence;
    use scenetalk_core::store::EntityKind;
    use scenetalk_core::time::TimePoint;

    fn span(a: f64, b: f64) -> Span {
        Span::from_bounds(TimePoint::secs(a), TimePoint::secs(b)).unwrap()
    }

    fn vocab() -> Vocabulary {
        Vocabulary::from_toml_str(
            r#"
[entity.irene_face]
head = "irene"
[entity.driver_face]
head = "the_driver"
[entity.right_quadrant]
head = "quadrant"
modifiers = ["right"]
[entity.left_quadrant]
head = "quadrant"
modifiers = ["left"]
"#,
        )
        .unwrap()
    }

    fn containment(entity: &str, container: &str, s: Span) -> SchemaOccurrence {
        SchemaOccurrence::Containment(ContainmentOccurrence {
            entity: entity.into(),
            container: container.into(),
            span: s,
            variant: ContainmentVariant::Occupies,
        })
    }

    fn store(occs: Vec<SchemaOccurrence>) -> NarrativeStore {
        let mut s = NarrativeStore::new(TimePoint::ZERO, TimePoint::secs(30.0)).unwrap();
        for e in ["irene_face", "driver_face", "right_quadrant", "left_quadrant", "nobody"] {
            s.register_entity(e, EntityKind::Object).unwrap();
        }
        s.insert_occurrences(occs).unwrap();
        s
    }

    #[test]
    fn overlapping_containments_pair() {
        let s = store(vec![
            containment("driver_face", "left_quadrant", span(12.0, 22.0)),
            containment("irene_face", "right_quadrant", span(10.0, 18.0)),
        ]);
        let (ids, errors) = plan(&s, &vocab(), Tense::SimplePresent);
        assert!(errors.is_empty());
        assert_eq!(ids.len(), 1);
        assert_eq!(ids[0].role(Role::Trajector).unwrap().entity, "irene_face");
        let Some(Modifier::While(sub)) = &ids[0].modifier else { panic!("no while link") };
        assert_eq!(sub.role(Role::Trajector).unwrap().entity, "driver_face");
        assert_eq!(ids[0].occurrences.len(), 2);
    }

    #[test]
    fn disjoint_containments_stay_apart() {
        let s = store(vec![
            containment("irene_face", "right_quadrant", span(1.0, 5.0)),
            containment("driver_face", "left_quadrant", span(6.0, 9.0)),
        ]);
        let (ids, _) = plan(&s, &vocab(), Tense::SimplePresent);
        assert_eq!(ids.len(), 2);
        assert!(ids.iter().all(|i| i.modifier.is_none()));
    }

    #[test]
    fn vocabulary_gaps_are_reported() {
        let s = store(vec![
            containment("nobody", "right_quadrant", span(1.0, 5.0)),
            containment("irene_face", "right_quadrant", span(7.0, 9.0)),
        ]);
        let (ids, errors) = plan(&s, &vocab(), Tense::SimplePresent);
        assert_eq!(ids.len(), 1);
        assert!(matches!(&errors[0].1, NlgError::VocabularyGap(e) if e == "nobody"));
    }

    #[test]
    fn tense_names() {
        for t in Tense::ALL {
            assert_eq!(t.name().parse::<Tense>().unwrap(), t);
        }
        assert_eq!("past".parse::<Tense>().unwrap(), Tense::SimplePast);
        assert!("pluperfect".parse::<Tense>().is_err());
    }
}
