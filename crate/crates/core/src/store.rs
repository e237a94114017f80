//! The narrative store: maximal holdings and schema occurrences for one scene.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ModelError;
use crate::fluent::{Family, Fluent, Holding, Relation};
use crate::geometry::TrackKind;
use crate::schemas::SchemaOccurrence;
use crate::time::{Interval, Span, TimePoint};

pub const NARRATIVE_SCHEMA: &str = "scenetalk.narrative/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntityKind {
    Person,
    Object,
    Gaze,
    Camera,
    Region,
}

impl From<TrackKind> for EntityKind {
    fn from(k: TrackKind) -> Self {
        match k {
            TrackKind::Person => EntityKind::Person,
            TrackKind::Object => EntityKind::Object,
            TrackKind::Gaze => EntityKind::Gaze,
            TrackKind::Camera => EntityKind::Camera,
        }
    }
}

/// `Occurs(schema, span)` with a store-assigned identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub id: String,
    #[serde(flatten)]
    pub schema: SchemaOccurrence,
}

impl Occurrence {
    pub fn span(&self) -> Span {
        self.schema.span()
    }
}

/// Temporal constraint of a holdings query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeFilter {
    /// Spans containing the point.
    At(TimePoint),
    /// Spans sharing at least one point with the interval.
    Overlapping(Interval),
}

/// A partial fluent pattern plus optional relation and time constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HoldsQuery {
    family: Option<Family>,
    args: Vec<Option<String>>,
    relation: Option<Relation>,
    time: Option<TimeFilter>,
}

impl HoldsQuery {
    /// Matches everything.
    pub fn any() -> Self {
        HoldsQuery::default()
    }

    pub fn fluent(fluent: &Fluent) -> Self {
        HoldsQuery {
            family: Some(fluent.family()),
            args: fluent.args().iter().cloned().map(Some).collect(),
            ..Default::default()
        }
    }

    /// `None` args are wildcards. An empty arg list leaves all args open.
    pub fn pattern(family: Family, args: Vec<Option<String>>) -> Result<Self, ModelError> {
        if !args.is_empty() && args.len() != family.arity() {
            return Err(ModelError::ArityMismatch {
                family: family.name().to_string(),
                expected: family.arity(),
                got: args.len(),
            });
        }
        Ok(HoldsQuery { family: Some(family), args, ..Default::default() })
    }

    pub fn relation(mut self, relation: Relation) -> Self {
        self.relation = Some(relation);
        self
    }

    pub fn at(mut self, t: TimePoint) -> Self {
        self.time = Some(TimeFilter::At(t));
        self
    }

    pub fn overlapping(mut self, interval: Interval) -> Self {
        self.time = Some(TimeFilter::Overlapping(interval));
        self
    }

    pub fn time(mut self, filter: Option<TimeFilter>) -> Self {
        self.time = filter;
        self
    }

    fn matches_key(&self, fluent: &Fluent, relation: &Relation) -> bool {
        if self.family.is_some_and(|f| f != fluent.family()) {
            return false;
        }
        if self.relation.is_some_and(|r| r != *relation) {
            return false;
        }
        self.args.iter().zip(fluent.args()).all(|(want, have)| want.as_ref().is_none_or(|w| w == have))
    }

    fn matches_span(&self, span: &Span) -> bool {
        match self.time {
            None => true,
            Some(TimeFilter::At(t)) => span.contains(t),
            Some(TimeFilter::Overlapping(i)) => span.intersects_interval(&i),
        }
    }
}

/// Holdings and occurrences for one scene.
///
/// Spans of the same `(fluent, relation)` are kept sorted, pairwise disjoint
/// and non-touching: inserting a span that overlaps or touches existing ones
/// merges them. The result does not depend on insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct NarrativeStore {
    first: TimePoint,
    last: TimePoint,
    frames: Vec<TimePoint>,
    entities: BTreeMap<String, EntityKind>,
    holdings: BTreeMap<(Fluent, Relation), Vec<Span>>,
    occurrences: Vec<Occurrence>,
}

impl NarrativeStore {
    pub fn new(first: TimePoint, last: TimePoint) -> Result<Self, ModelError> {
        if first > last {
            return Err(ModelError::DegenerateInterval { start: first, end: last });
        }
        Ok(NarrativeStore {
            first,
            last,
            frames: Vec::new(),
            entities: BTreeMap::new(),
            holdings: BTreeMap::new(),
            occurrences: Vec::new(),
        })
    }

    /// A store whose timeline spans the given frame times.
    pub fn with_frames(mut frames: Vec<TimePoint>) -> Result<Self, ModelError> {
        frames.sort();
        frames.dedup();
        let (Some(&first), Some(&last)) = (frames.first(), frames.last()) else {
            return Err(ModelError::EmptyTrack("<frames>".into()));
        };
        let mut store = NarrativeStore::new(first, last)?;
        store.frames = frames;
        Ok(store)
    }

    pub fn timeline(&self) -> (TimePoint, TimePoint) {
        (self.first, self.last)
    }

    /// Frame times the narrative was built from; empty for hand-built stores.
    pub fn frames(&self) -> &[TimePoint] {
        &self.frames
    }

    /// The frame directly after `t`, if `t` is a frame.
    pub fn next_frame(&self, t: TimePoint) -> Option<TimePoint> {
        let idx = self.frames.binary_search(&t).ok()?;
        self.frames.get(idx + 1).copied()
    }

    pub fn register_entity(&mut self, id: impl Into<String>, kind: EntityKind) -> Result<(), ModelError> {
        let id = id.into();
        match self.entities.get(&id) {
            Some(existing) if *existing != kind => Err(ModelError::DuplicateEntity(id)),
            Some(_) => Ok(()),
            None => {
                self.entities.insert(id, kind);
                Ok(())
            }
        }
    }

    pub fn entity_kind(&self, id: &str) -> Option<EntityKind> {
        self.entities.get(id).copied()
    }

    pub fn entities(&self) -> &BTreeMap<String, EntityKind> {
        &self.entities
    }

    fn check_span(&self, span: &Span) -> Result<(), ModelError> {
        if span.start() < self.first || span.end() > self.last {
            return Err(ModelError::OutOfTimeline { span: span.to_string(), first: self.first, last: self.last });
        }
        Ok(())
    }

    pub fn insert_holding(&mut self, holding: Holding) -> Result<(), ModelError> {
        let Holding { fluent, relation, span } = holding;
        if !relation.belongs_to(fluent.family()) {
            return Err(ModelError::FamilyMismatch {
                family: fluent.name().to_string(),
                relation: relation.symbol().to_string(),
            });
        }
        self.check_span(&span)?;
        if let Some(unknown) = fluent.args().iter().find(|a| !self.entities.contains_key(*a)) {
            return Err(ModelError::UnknownEntity(unknown.clone()));
        }
        let spans = self.holdings.entry((fluent, relation)).or_default();
        let mut merged = span;
        spans.retain(|s| {
            if s.touches(&merged) {
                merged = merged.hull(s);
                false
            } else {
                true
            }
        });
        let pos = spans.partition_point(|s| s.start() < merged.start());
        spans.insert(pos, merged);
        Ok(())
    }

    /// Adds occurrences and renumbers all of them in (span start, content) order.
    pub fn insert_occurrences(
        &mut self,
        occurrences: impl IntoIterator<Item = SchemaOccurrence>,
    ) -> Result<(), ModelError> {
        let mut all: Vec<SchemaOccurrence> = self.occurrences.drain(..).map(|o| o.schema).collect();
        for occ in occurrences {
            self.check_span(&occ.span())?;
            for entity in occ.entities() {
                if !self.entities.contains_key(entity) {
                    return Err(ModelError::UnknownEntity(entity.to_string()));
                }
            }
            all.push(occ);
        }
        all.sort_by(|a, b| (a.span().start(), a).cmp(&(b.span().start(), b)));
        all.dedup();
        self.occurrences = all
            .into_iter()
            .enumerate()
            .map(|(i, schema)| Occurrence { id: format!("{}-{:03}", schema.kind_name(), i + 1), schema })
            .collect();
        Ok(())
    }

    pub fn occurrences(&self) -> &[Occurrence] {
        &self.occurrences
    }

    pub fn occurrence(&self, id: &str) -> Option<&Occurrence> {
        self.occurrences.iter().find(|o| o.id == id)
    }

    /// Maximal spans of one ground fluent/relation pair, in time order.
    pub fn spans(&self, fluent: &Fluent, relation: Relation) -> &[Span] {
        self.holdings.get(&(fluent.clone(), relation)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn holdings(&self) -> Vec<Holding> {
        self.query_holds(&HoldsQuery::any())
    }

    pub fn holding_count(&self) -> usize {
        self.holdings.values().map(Vec::len).sum()
    }

    /// All holdings unifying with the query, ordered by span start, then
    /// fluent name, args and relation.
    pub fn query_holds(&self, query: &HoldsQuery) -> Vec<Holding> {
        let mut out: Vec<Holding> = self
            .holdings
            .iter()
            .filter(|((fluent, relation), _)| query.matches_key(fluent, relation))
            .flat_map(|((fluent, relation), spans)| {
                spans.iter().filter(|s| query.matches_span(s)).map(move |span| Holding {
                    fluent: fluent.clone(),
                    relation: *relation,
                    span: *span,
                })
            })
            .collect();
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }
}

#[derive(Serialize, Deserialize)]
struct StoreRepr {
    schema: String,
    timeline: [TimePoint; 2],
    #[serde(default)]
    frames: Vec<TimePoint>,
    entities: BTreeMap<String, EntityKind>,
    holdings: Vec<Holding>,
    occurrences: Vec<Occurrence>,
}

impl Serialize for NarrativeStore {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StoreRepr {
            schema: NARRATIVE_SCHEMA.to_string(),
            timeline: [self.first, self.last],
            frames: self.frames.clone(),
            entities: self.entities.clone(),
            holdings: self.holdings(),
            occurrences: self.occurrences.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NarrativeStore {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = StoreRepr::deserialize(d)?;
        if repr.schema != NARRATIVE_SCHEMA {
            return Err(D::Error::custom(format!("unsupported narrative schema `{}`", repr.schema)));
        }
        let mut store = NarrativeStore::new(repr.timeline[0], repr.timeline[1]).map_err(D::Error::custom)?;
        store.frames = repr.frames;
        for (id, kind) in repr.entities {
            store.register_entity(id, kind).map_err(D::Error::custom)?;
        }
        for h in repr.holdings {
            store.insert_holding(h).map_err(D::Error::custom)?;
        }
        let ids: Vec<String> = repr.occurrences.iter().map(|o| o.id.clone()).collect();
        store.insert_occurrences(repr.occurrences.into_iter().map(|o| o.schema)).map_err(D::Error::custom)?;
        if store.occurrences.iter().map(|o| &o.id).ne(ids.iter()) {
            return Err(D::Error::custom("occurrence ids are not in canonical order"));
        }
        Ok(store)
    }
}
