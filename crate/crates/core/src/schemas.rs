//! Image-schema detection over a narrative store.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::SchemaError;
use crate::fluent::{Family, Fluent, Holding, Relation};
use crate::geometry::{Box2, Track};
use crate::narrative::{maximal_intervals, FrameFacts};
use crate::spatial::Rcc8;
use crate::store::{HoldsQuery, NarrativeStore};
use crate::time::{Duration, Span, TimePoint};

pub const DEFAULT_OCCUPANCY_THRESHOLD: f64 = 0.6;
pub const DEFAULT_ATTRACTION_SECS: f64 = 2.0;

/// Named locations on a floorplan and their undirected adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RouteGraph {
    region_of: BTreeMap<String, String>,
    node_of: BTreeMap<String, String>,
    edges: BTreeSet<(String, String)>,
}

impl RouteGraph {
    /// `nodes` pairs each node name with its region.
    pub fn new(
        nodes: impl IntoIterator<Item = (String, String)>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, SchemaError> {
        let mut g = RouteGraph::default();
        for (node, region) in nodes {
            if g.region_of.contains_key(&node) {
                return Err(SchemaError::RouteGraph(format!("duplicate node `{node}`")));
            }
            if let Some(other) = g.node_of.get(&region) {
                return Err(SchemaError::RouteGraph(format!("region `{region}` bound to both `{other}` and `{node}`")));
            }
            g.node_of.insert(region.clone(), node.clone());
            g.region_of.insert(node, region);
        }
        for (a, b) in edges {
            for n in [&a, &b] {
                if !g.region_of.contains_key(n) {
                    return Err(SchemaError::RouteGraph(format!("edge references unknown node `{n}`")));
                }
            }
            if a == b {
                return Err(SchemaError::RouteGraph(format!("self-loop on `{a}`")));
            }
            g.edges.insert(if a < b { (a, b) } else { (b, a) });
        }
        Ok(g)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&str, &str)> {
        self.region_of.iter().map(|(n, r)| (n.as_str(), r.as_str()))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn node_for_region(&self, region: &str) -> Option<&str> {
        self.node_of.get(region).map(String::as_str)
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.edges.contains(&key)
    }

    /// Adjacency of the nodes bound to two regions; unbound regions are never adjacent.
    pub fn regions_adjacent(&self, a: &str, b: &str) -> bool {
        match (self.node_for_region(a), self.node_for_region(b)) {
            (Some(na), Some(nb)) => self.adjacent(na, nb),
            _ => false,
        }
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.region_of.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start.as_str()]);
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(n) = queue.pop_front() {
            for (a, b) in self.edges() {
                let next = if a == n {
                    b
                } else if b == n {
                    a
                } else {
                    continue;
                };
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len() == self.region_of.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentVariant {
    In,
    Occupies,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ContainmentOccurrence {
    pub entity: String,
    pub container: String,
    pub span: Span,
    pub variant: ContainmentVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectorKind {
    Person,
    Gaze,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourcePathGoalOccurrence {
    pub trajector: String,
    pub trajector_kind: TrajectorKind,
    pub source: String,
    pub via: Vec<String>,
    pub goal: String,
    pub span: Span,
}

impl SourcePathGoalOccurrence {
    /// Source, via locations and goal in visiting order.
    pub fn locations(&self) -> Vec<&str> {
        std::iter::once(self.source.as_str())
            .chain(self.via.iter().map(String::as_str))
            .chain(std::iter::once(self.goal.as_str()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathGoalOccurrence {
    pub trajector: String,
    pub trajector_kind: TrajectorKind,
    pub goal: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AttractionOccurrence {
    /// Whose attention is attracted.
    pub entity: String,
    pub gaze: String,
    pub attractor: String,
    pub span: Span,
    pub dwell: Duration,
    /// Where the owner was when the dwell began.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context_location: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "schema", rename_all = "snake_case")]
pub enum SchemaOccurrence {
    Containment(ContainmentOccurrence),
    SourcePathGoal(SourcePathGoalOccurrence),
    PathGoal(PathGoalOccurrence),
    Attraction(AttractionOccurrence),
}

impl SchemaOccurrence {
    pub fn span(&self) -> Span {
        match self {
            SchemaOccurrence::Containment(o) => o.span,
            SchemaOccurrence::SourcePathGoal(o) => o.span,
            SchemaOccurrence::PathGoal(o) => o.span,
            SchemaOccurrence::Attraction(o) => o.span,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SchemaOccurrence::Containment(_) => "containment",
            SchemaOccurrence::SourcePathGoal(_) => "source_path_goal",
            SchemaOccurrence::PathGoal(_) => "path_goal",
            SchemaOccurrence::Attraction(_) => "attraction",
        }
    }

    /// Every entity or region identifier the occurrence mentions.
    pub fn entities(&self) -> Vec<&str> {
        match self {
            SchemaOccurrence::Containment(o) => vec![&o.entity, &o.container],
            SchemaOccurrence::SourcePathGoal(o) => {
                let mut v = vec![o.trajector.as_str()];
                v.extend(o.locations());
                v
            }
            SchemaOccurrence::PathGoal(o) => vec![&o.trajector, &o.goal],
            SchemaOccurrence::Attraction(o) => {
                let mut v = vec![o.entity.as_str(), &o.gaze, &o.attractor];
                v.extend(o.context_location.as_deref());
                v
            }
        }
    }
}

/// Rejects region sets whose members share interior points.
pub fn validate_disjoint<'a>(regions: impl IntoIterator<Item = (&'a str, &'a Box2)>) -> Result<(), SchemaError> {
    let regions: Vec<_> = regions.into_iter().collect();
    for (i, (na, a)) in regions.iter().enumerate() {
        for (nb, b) in &regions[i + 1..] {
            if a.interiors_overlap(b) {
                return Err(SchemaError::OverlappingRegions(na.to_string(), nb.to_string()));
            }
        }
    }
    Ok(())
}

/// Location-membership timeline of a track over named regions.
///
/// Membership is half-open (`[min, max)` on both axes) so a point on a shared
/// border belongs to exactly one region. Frames are the track's own
/// observation times; observations more than `max_gap` apart do not form
/// one run.
pub fn localize<'a>(
    track: &Track,
    regions: impl IntoIterator<Item = (&'a str, &'a Box2)> + Clone,
    min_hold_frames: usize,
    max_gap: Duration,
) -> Result<Vec<Holding>, SchemaError> {
    let mut frames: Vec<FrameFacts> = Vec::with_capacity(track.observations().len());
    for obs in track.observations() {
        if let Some(prev) = frames.last() {
            if obs.at - prev.at > max_gap {
                frames.push(FrameFacts::new(prev.at + Duration::from_micros(1)));
            }
        }
        let p = obs.representative_point();
        let inside: Vec<&str> =
            regions.clone().into_iter().filter(|(_, b)| b.contains_point_half_open(&p)).map(|(n, _)| n).collect();
        let mut facts = FrameFacts::new(obs.at);
        match inside.as_slice() {
            [] => {}
            [loc] => {
                let fluent = Fluent::new(Family::AtLocation, [track.entity_id(), loc]).expect("at_location is binary");
                facts.insert(fluent, Relation::Holds);
            }
            many => {
                return Err(SchemaError::AmbiguousLocation {
                    entity: track.entity_id().to_string(),
                    at: obs.at,
                    regions: many.iter().map(|s| s.to_string()).collect(),
                })
            }
        }
        frames.push(facts);
    }
    Ok(maximal_intervals(&frames, min_hold_frames))
}

fn occupancy(entity: &Box2, container: &Box2) -> f64 {
    entity.area() / container.area()
}

/// Joins spans whose gap contains no frame of the store and is at most `max_gap`.
fn merge_consecutive(store: &NarrativeStore, mut spans: Vec<Span>, max_gap: Duration) -> Vec<Span> {
    spans.sort();
    let mut out: Vec<Span> = Vec::new();
    for s in spans {
        if let Some(last) = out.last_mut() {
            let joins = s.start() <= last.end()
                || (s.start() - last.end() <= max_gap && store.next_frame(last.end()).is_some_and(|n| n >= s.start()));
            if joins {
                *last = last.hull(&s);
                continue;
            }
        }
        out.push(s);
    }
    out
}

/// One occurrence per maximal run of `tpp`, `ntpp` or `eq` between the pair.
///
/// `box_at` supplies the boxes used for the occupancy ratio; a frame without
/// both boxes counts as below the threshold. Runs of different relations
/// join when they meet at consecutive frames at most `max_gap` apart.
pub fn detect_containment(
    store: &NarrativeStore,
    entity: &str,
    container: &str,
    threshold: f64,
    max_gap: Duration,
    box_at: impl Fn(&str, TimePoint) -> Option<Box2>,
) -> Vec<ContainmentOccurrence> {
    let Ok(fluent) = Fluent::new(Family::Topology, [entity, container]) else {
        return Vec::new();
    };
    let spans: Vec<Span> = [Rcc8::Tpp, Rcc8::Ntpp, Rcc8::Eq]
        .into_iter()
        .flat_map(|r| store.spans(&fluent, Relation::Topology(r)).iter().copied())
        .collect();
    merge_consecutive(store, spans, max_gap)
        .into_iter()
        .map(|span| {
            let mut times: Vec<TimePoint> = store.frames().iter().copied().filter(|t| span.contains(*t)).collect();
            if times.is_empty() {
                times = vec![span.start(), span.end()];
            }
            let occupies = times.iter().all(|&t| match (box_at(entity, t), box_at(container, t)) {
                (Some(e), Some(c)) => occupancy(&e, &c) >= threshold,
                _ => false,
            });
            let variant = if occupies { ContainmentVariant::Occupies } else { ContainmentVariant::In };
            ContainmentOccurrence { entity: entity.to_string(), container: container.to_string(), span, variant }
        })
        .collect()
}

/// Movement of a trajector through its location timeline.
///
/// The ordered `at_location` holdings are split where consecutive locations
/// are more than `max_transition_gap` apart in time, or (for persons, when a
/// route graph is given) not adjacent in it. Each part visiting at least two
/// distinct locations becomes an occurrence.
pub fn detect_source_path_goal(
    store: &NarrativeStore,
    trajector: &str,
    kind: TrajectorKind,
    route_graph: Option<&RouteGraph>,
    max_transition_gap: Duration,
) -> Vec<SourcePathGoalOccurrence> {
    let query = HoldsQuery::pattern(Family::AtLocation, vec![Some(trajector.to_string()), None])
        .expect("at_location is binary")
        .relation(Relation::Holds);
    let mut visits: Vec<(String, Span)> = Vec::new();
    for h in store.query_holds(&query) {
        let loc = h.fluent.args()[1].clone();
        match visits.last_mut() {
            Some((last, span)) if *last == loc && h.span.start() - span.end() <= max_transition_gap => {
                *span = span.hull(&h.span);
            }
            _ => visits.push((loc, h.span)),
        }
    }

    let mut runs: Vec<Vec<(String, Span)>> = Vec::new();
    for visit in visits {
        let split = match runs.last().and_then(|r| r.last()) {
            None => true,
            Some((prev, prev_span)) => {
                let gap = visit.1.start() - prev_span.end();
                let jump =
                    kind == TrajectorKind::Person && route_graph.is_some_and(|g| !g.regions_adjacent(prev, &visit.0));
                gap > max_transition_gap || jump
            }
        };
        if split {
            runs.push(vec![visit]);
        } else {
            runs.last_mut().expect("non-empty").push(visit);
        }
    }

    runs.into_iter()
        .filter(|run| run.len() >= 2)
        .map(|run| {
            let span = run[0].1.hull(&run[run.len() - 1].1);
            let mut names = run.into_iter().map(|(loc, _)| loc);
            let source = names.next().expect("len >= 2");
            let mut rest: Vec<String> = names.collect();
            let goal = rest.pop().expect("len >= 2");
            SourcePathGoalOccurrence {
                trajector: trajector.to_string(),
                trajector_kind: kind,
                source,
                via: rest,
                goal,
                span,
            }
        })
        .collect()
}

/// Goal-only projection of [`detect_source_path_goal`].
pub fn detect_path_goal(
    store: &NarrativeStore,
    trajector: &str,
    kind: TrajectorKind,
    route_graph: Option<&RouteGraph>,
    max_transition_gap: Duration,
) -> Vec<PathGoalOccurrence> {
    detect_source_path_goal(store, trajector, kind, route_graph, max_transition_gap)
        .into_iter()
        .map(project_path_goal)
        .collect()
}

pub fn project_path_goal(spg: SourcePathGoalOccurrence) -> PathGoalOccurrence {
    PathGoalOccurrence { trajector: spg.trajector, trajector_kind: spg.trajector_kind, goal: spg.goal, span: spg.span }
}

/// One occurrence per stay of the gaze in an attractor region lasting at
/// least `threshold`.
pub fn detect_attraction(
    store: &NarrativeStore,
    gaze: &str,
    owner: &str,
    attractors: &[String],
    threshold: Duration,
) -> Vec<AttractionOccurrence> {
    let mut out = Vec::new();
    for attractor in attractors {
        let Ok(fluent) = Fluent::new(Family::AtLocation, [gaze, attractor.as_str()]) else {
            continue;
        };
        for span in store.spans(&fluent, Relation::Holds) {
            let dwell = span.duration();
            if dwell < threshold {
                continue;
            }
            let context = HoldsQuery::pattern(Family::AtLocation, vec![Some(owner.to_string()), None])
                .expect("at_location is binary")
                .at(span.start());
            let context_location = store.query_holds(&context).first().map(|h| h.fluent.args()[1].clone());
            out.push(AttractionOccurrence {
                entity: owner.to_string(),
                gaze: gaze.to_string(),
                attractor: attractor.clone(),
                span: *span,
                dwell,
                context_location,
            });
        }
    }
    out.sort();
    out
}
