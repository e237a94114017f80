//! From tracks and regions to a narrative store: per-frame relation
//! evaluation, maximal-interval extraction and schema detection.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BuildError, ModelError, SchemaError};
use crate::fluent::{Family, Fluent, Holding, Relation};
use crate::geometry::{Box2, Observation, Track, TrackKind};
use crate::motion::{motion_epsilon, movement, size_motion, Window};
use crate::schemas::{
    detect_attraction, detect_containment, detect_source_path_goal, localize, project_path_goal, validate_disjoint,
    RouteGraph, SchemaOccurrence, TrajectorKind, DEFAULT_ATTRACTION_SECS, DEFAULT_OCCUPANCY_THRESHOLD,
};
use crate::spatial::{
    position_1d, rcc8, rcc8_point, relative_distance, relative_position, relative_size, Axis, AxisPolarity, Rcc8,
};
use crate::store::{EntityKind, NarrativeStore};
use crate::time::{Duration, Span, TimePoint};

/// Which way the y axis of the input coordinates points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisConvention {
    /// Image coordinates: y grows downwards, smaller y is `above`.
    #[default]
    Image,
    /// Floorplan coordinates: y grows northwards, larger y is `above`.
    Floorplan,
}

impl AxisConvention {
    pub fn vertical_polarity(self) -> AxisPolarity {
        match self {
            AxisConvention::Image => AxisPolarity::Ascending,
            AxisConvention::Floorplan => AxisPolarity::Descending,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute distance tolerance, scene units.
    pub distance: f64,
    /// Relative area tolerance.
    pub size: f64,
    /// Half-width of the band around a scalar depth.
    pub depth: f64,
    /// Static band for motion, as a fraction of the scene diagonal per second.
    pub motion_rate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { distance: 0.0, size: 0.05, depth: 0.5, motion_rate: 0.01 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluentSpec {
    pub family: Family,
    pub args: Vec<String>,
    /// Absolute motion tolerance in scene units per second for this fluent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_motion_per_second: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainmentSpec {
    pub entity: String,
    pub container: String,
    #[serde(default = "default_occupancy")]
    pub threshold: f64,
}

fn default_occupancy() -> f64 {
    DEFAULT_OCCUPANCY_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizeSpec {
    pub entity: String,
    pub regions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathSchema {
    SourcePathGoal,
    PathGoal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub trajector: String,
    pub schema: PathSchema,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttractionSpec {
    pub gaze: String,
    pub owner: String,
    pub attractors: Vec<String>,
    /// Minimum dwell in seconds.
    #[serde(default = "default_attraction")]
    pub threshold: f64,
}

fn default_attraction() -> f64 {
    DEFAULT_ATTRACTION_SECS
}

/// What to evaluate over a scene and with which tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneConfig {
    pub axis: AxisConvention,
    /// `[xmin, ymin, xmax, ymax]`; defaults to the hull of regions and tracks.
    pub extent: Option<[f64; 4]>,
    /// Runs shorter than this many frames are dropped. 0 behaves as 1.
    pub min_hold_frames: usize,
    /// Longest gap, in seconds, bridged by interpolation.
    pub max_gap: f64,
    /// Motion windows span this many frames.
    pub stride: usize,
    /// Longest pause, in seconds, between two locations of one path.
    pub max_transition_gap: f64,
    pub tolerances: Tolerances,
    #[serde(rename = "fluent")]
    pub fluents: Vec<FluentSpec>,
    pub containment: Vec<ContainmentSpec>,
    pub localize: Vec<LocalizeSpec>,
    #[serde(rename = "path")]
    pub paths: Vec<PathSpec>,
    pub attraction: Vec<AttractionSpec>,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            axis: AxisConvention::Image,
            extent: None,
            min_hold_frames: 1,
            max_gap: 0.5,
            stride: 1,
            max_transition_gap: 1.0,
            tolerances: Tolerances::default(),
            fluents: Vec::new(),
            containment: Vec::new(),
            localize: Vec::new(),
            paths: Vec::new(),
            attraction: Vec::new(),
        }
    }
}

impl SceneConfig {
    pub fn max_gap(&self) -> Duration {
        Duration::from_secs(self.max_gap)
    }

    fn fluent_list(&self) -> Result<Vec<(Fluent, Option<f64>)>, ModelError> {
        self.fluents
            .iter()
            .map(|s| Ok((Fluent::new(s.family, s.args.iter().cloned())?, s.epsilon_motion_per_second)))
            .collect()
    }
}

/// Observed tracks, named static regions and an optional route graph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    tracks: BTreeMap<String, Track>,
    regions: BTreeMap<String, Box2>,
    route_graph: Option<RouteGraph>,
}

impl Scene {
    pub fn new(
        tracks: impl IntoIterator<Item = Track>,
        regions: impl IntoIterator<Item = (String, Box2)>,
        route_graph: Option<RouteGraph>,
    ) -> Result<Self, BuildError> {
        let mut scene = Scene { route_graph, ..Default::default() };
        for t in tracks {
            let id = t.entity_id().to_string();
            if scene.tracks.insert(id.clone(), t).is_some() {
                return Err(ModelError::DuplicateEntity(id).into());
            }
        }
        for (name, b) in regions {
            if scene.tracks.contains_key(&name) || scene.regions.insert(name.clone(), b).is_some() {
                return Err(ModelError::DuplicateEntity(name).into());
            }
        }
        if let Some(g) = &scene.route_graph {
            if let Some((_, r)) = g.nodes().find(|(_, r)| !scene.regions.contains_key(*r)) {
                return Err(SchemaError::UnknownRegion(r.to_string()).into());
            }
        }
        Ok(scene)
    }

    pub fn tracks(&self) -> &BTreeMap<String, Track> {
        &self.tracks
    }

    pub fn regions(&self) -> &BTreeMap<String, Box2> {
        &self.regions
    }

    pub fn route_graph(&self) -> Option<&RouteGraph> {
        self.route_graph.as_ref()
    }

    pub fn has_entity(&self, id: &str) -> bool {
        self.tracks.contains_key(id) || self.regions.contains_key(id)
    }

    /// The percept of an entity at `t`: a track sample or a region's box.
    pub fn percept(&self, id: &str, t: TimePoint, max_gap: Duration) -> Option<Observation> {
        if let Some(track) = self.tracks.get(id) {
            return track.sample(t, max_gap).ok();
        }
        self.regions.get(id).map(|b| Observation::with_box(t, *b))
    }

    pub fn box_at(&self, id: &str, t: TimePoint, max_gap: Duration) -> Option<Box2> {
        self.percept(id, t, max_gap).and_then(|o| o.bbox)
    }

    /// Sorted union of all observation times.
    pub fn frame_times(&self) -> Vec<TimePoint> {
        let set: BTreeSet<TimePoint> =
            self.tracks.values().flat_map(|t| t.observations().iter().map(|o| o.at)).collect();
        set.into_iter().collect()
    }

    fn hull_diagonal(&self) -> f64 {
        let corners = self.regions.values().copied().chain(self.tracks.values().flat_map(|t| {
            t.observations().iter().map(|o| {
                o.bbox.unwrap_or_else(|| {
                    let p = o.representative_point();
                    Box2::new(p.x, p.x.next_up(), p.y, p.y.next_up()).expect("finite point")
                })
            })
        }));
        corners.reduce(|a, b| a.union(&b)).map(|b| b.diagonal()).unwrap_or(0.0)
    }

    /// Diagonal of the configured extent, or of everything in the scene.
    pub fn diagonal(&self, config: &SceneConfig) -> f64 {
        if let Some(e) = config.extent {
            return ((e[2] - e[0]).powi(2) + (e[3] - e[1]).powi(2)).sqrt();
        }
        self.hull_diagonal()
    }
}

/// Fluent values at one frame; at most one relation per fluent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrameFacts {
    pub at: TimePoint,
    pub facts: BTreeMap<Fluent, Relation>,
}

impl FrameFacts {
    pub fn new(at: TimePoint) -> Self {
        FrameFacts { at, facts: BTreeMap::new() }
    }

    pub fn insert(&mut self, fluent: Fluent, relation: Relation) {
        self.facts.insert(fluent, relation);
    }

    pub fn get(&self, fluent: &Fluent) -> Option<Relation> {
        self.facts.get(fluent).copied()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

fn topology(a: &Observation, b: &Observation) -> Rcc8 {
    match (a.bbox, b.bbox) {
        (Some(ba), Some(bb)) => rcc8(&ba, &bb),
        (None, Some(bb)) => rcc8_point(&a.representative_point(), &bb),
        (Some(ba), None) => rcc8_point(&b.representative_point(), &ba).converse(),
        (None, None) if a.representative_point() == b.representative_point() => Rcc8::Eq,
        (None, None) => Rcc8::Dc,
    }
}

/// Evaluates every configured fluent at `t`. Motion fluents compare `t` with
/// `prev` and are skipped without one. Fluents that cannot be evaluated (a
/// missing percept, a box-only relation over points) are omitted.
pub fn compute_frame_relations(
    scene: &Scene,
    config: &SceneConfig,
    t: TimePoint,
    prev: Option<TimePoint>,
) -> FrameFacts {
    let fluents = config.fluent_list().unwrap_or_default();
    evaluate_frame(scene, config, &fluents, scene.diagonal(config), t, prev)
}

fn evaluate_frame(
    scene: &Scene,
    config: &SceneConfig,
    fluents: &[(Fluent, Option<f64>)],
    diagonal: f64,
    t: TimePoint,
    prev: Option<TimePoint>,
) -> FrameFacts {
    let max_gap = config.max_gap();
    let tol = &config.tolerances;
    let mut frame = FrameFacts::new(t);
    for (fluent, eps_override) in fluents {
        let args = fluent.args();
        let percept = |i: usize| scene.percept(&args[i], t, max_gap);
        let window = prev.and_then(|p| Window::new(p, t).ok());
        let eps_motion = |w: &Window| match eps_override {
            Some(rate) => rate * w.duration().as_secs_f64(),
            None => motion_epsilon(diagonal, tol.motion_rate, w.duration()),
        };
        let relation = match fluent.family() {
            Family::Topology => percept(0).zip(percept(1)).map(|(a, b)| Relation::Topology(topology(&a, &b))),
            Family::Position(axis) => percept(0).zip(percept(1)).and_then(|(a, b)| match axis {
                Axis::Depth => relative_position(&a, &b, config.axis.vertical_polarity(), tol.depth)
                    .ok()
                    .and_then(|p| p.depth)
                    .or_else(|| depth_only(&a, &b, tol.depth))
                    .map(Relation::Position),
                Axis::Horizontal => {
                    let (ba, bb) = (a.bbox?, b.bbox?);
                    Some(Relation::Position(position_1d(ba.x_extent(), bb.x_extent(), axis, AxisPolarity::Ascending)))
                }
                Axis::Vertical => {
                    let (ba, bb) = (a.bbox?, b.bbox?);
                    let pol = config.axis.vertical_polarity();
                    Some(Relation::Position(position_1d(ba.y_extent(), bb.y_extent(), axis, pol)))
                }
            }),
            Family::RelativeDistance => {
                let (a, b, c) = (percept(0), percept(1), percept(2));
                a.zip(b).zip(c).map(|((a, b), c)| {
                    Relation::Distance(relative_distance(
                        &a.representative_point(),
                        &b.representative_point(),
                        &c.representative_point(),
                        tol.distance,
                    ))
                })
            }
            Family::RelativeSize => percept(0)
                .zip(percept(1))
                .and_then(|(a, b)| Some(Relation::Size(relative_size(&a.bbox?, &b.bbox?, tol.size)))),
            Family::Move => {
                let (ta, tb) = (scene.tracks.get(&args[0]), scene.tracks.get(&args[1]));
                match (ta, tb, window) {
                    (Some(ta), Some(tb), Some(w)) => {
                        movement(ta, tb, w, eps_motion(&w), max_gap).ok().map(Relation::Move)
                    }
                    _ => None,
                }
            }
            Family::SizeMotion(axis) => match (scene.tracks.get(&args[0]), window) {
                (Some(track), Some(w)) => {
                    size_motion(track, axis, w, eps_motion(&w), max_gap).ok().map(Relation::SizeMotion)
                }
                _ => None,
            },
            Family::AtLocation => None,
        };
        if let Some(r) = relation {
            frame.insert(fluent.clone(), r);
        }
    }
    frame
}

/// Depth order for percepts without boxes (relative_position needs boxes).
fn depth_only(a: &Observation, b: &Observation, eps: f64) -> Option<crate::spatial::PosRelation1D> {
    let widen = |o: &Observation| o.depth_extent.or(o.depth.map(|d| (d - eps, d + eps)));
    let (ea, eb) = (widen(a)?, widen(b)?);
    if ea.0 < ea.1 && eb.0 < eb.1 {
        Some(position_1d(ea, eb, Axis::Depth, AxisPolarity::Ascending))
    } else {
        None
    }
}

/// Maximal runs of consecutive frames with the same fluent value.
///
/// Runs shorter than `min_hold_frames` are dropped; a surviving single-frame
/// run becomes an `at` holding. Output is in holding sort order.
pub fn maximal_intervals(frames: &[FrameFacts], min_hold_frames: usize) -> Vec<Holding> {
    let min = min_hold_frames.max(1);
    let keys: BTreeSet<(&Fluent, Relation)> =
        frames.iter().flat_map(|f| f.facts.iter().map(|(k, v)| (k, *v))).collect();
    let mut out = Vec::new();
    for (fluent, relation) in keys {
        let mut run: Option<(usize, usize)> = None;
        let flush = |run: Option<(usize, usize)>, out: &mut Vec<Holding>| {
            if let Some((s, e)) = run {
                if e - s + 1 >= min {
                    let span = Span::from_bounds(frames[s].at, frames[e].at).expect("frames are ordered");
                    out.push(Holding { fluent: fluent.clone(), relation, span });
                }
            }
        };
        for (i, f) in frames.iter().enumerate() {
            if f.facts.get(fluent) == Some(&relation) {
                run = Some(run.map_or((i, i), |(s, _)| (s, i)));
            } else {
                flush(run.take(), &mut out);
            }
        }
        flush(run, &mut out);
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Separates frames more than `max_gap` apart with an empty frame, so that no
/// run bridges a stretch in which nothing was observed.
fn with_gap_breaks(frames: Vec<FrameFacts>, max_gap: Duration) -> Vec<FrameFacts> {
    let mut out: Vec<FrameFacts> = Vec::with_capacity(frames.len());
    for f in frames {
        if let Some(prev) = out.last() {
            if f.at - prev.at > max_gap {
                out.push(FrameFacts::new(prev.at + Duration::from_micros(1)));
            }
        }
        out.push(f);
    }
    out
}

/// Per-frame facts implied by a set of holdings at the given frame times.
pub fn expand(holdings: &[Holding], times: &[TimePoint]) -> Vec<FrameFacts> {
    times
        .iter()
        .map(|&t| {
            let mut f = FrameFacts::new(t);
            for h in holdings.iter().filter(|h| h.span.contains(t)) {
                f.insert(h.fluent.clone(), h.relation);
            }
            f
        })
        .collect()
}

fn config_error(msg: impl Into<String>) -> BuildError {
    BuildError::Config(msg.into())
}

fn validate(scene: &Scene, config: &SceneConfig) -> Result<(), BuildError> {
    let known = |id: &str| -> Result<(), BuildError> {
        if scene.has_entity(id) {
            Ok(())
        } else {
            Err(ModelError::UnknownEntity(id.to_string()).into())
        }
    };
    let track = |id: &str| -> Result<&Track, BuildError> {
        known(id)?;
        scene.tracks.get(id).ok_or_else(|| config_error(format!("`{id}` must be a tracked entity")))
    };
    let region = |id: &str| -> Result<(), BuildError> {
        if scene.regions.contains_key(id) {
            Ok(())
        } else {
            Err(SchemaError::UnknownRegion(id.to_string()).into())
        }
    };
    if !(config.max_gap >= 0.0 && config.max_transition_gap >= 0.0) {
        return Err(config_error("max_gap and max_transition_gap must be non-negative"));
    }
    if config.stride == 0 {
        return Err(config_error("stride must be at least 1"));
    }
    let tol = &config.tolerances;
    if [tol.distance, tol.size, tol.depth, tol.motion_rate].iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(config_error("tolerances must be finite and non-negative"));
    }
    for spec in &config.fluents {
        let fluent = Fluent::new(spec.family, spec.args.iter().cloned())?;
        if fluent.family() == Family::AtLocation {
            return Err(config_error("at_location facts come from [[localize]], not [[fluent]]"));
        }
        for a in fluent.args() {
            known(a)?;
        }
    }
    for c in &config.containment {
        known(&c.entity)?;
        known(&c.container)?;
        if !(c.threshold > 0.0 && c.threshold <= 1.0) {
            return Err(config_error(format!("containment threshold {} must lie in (0, 1]", c.threshold)));
        }
    }
    let mut localized = BTreeSet::new();
    for l in &config.localize {
        track(&l.entity)?;
        for r in &l.regions {
            region(r)?;
        }
        validate_disjoint(l.regions.iter().map(|r| (r.as_str(), &scene.regions[r])))?;
        localized.insert(l.entity.as_str());
    }
    for p in &config.paths {
        let t = track(&p.trajector)?;
        if !localized.contains(p.trajector.as_str()) {
            return Err(config_error(format!("path trajector `{}` has no [[localize]] entry", p.trajector)));
        }
        if t.kind() == TrackKind::Person {
            if let Some(g) = scene.route_graph() {
                if !g.is_connected() {
                    return Err(SchemaError::RouteGraph("graph is not connected".into()).into());
                }
            }
        }
    }
    for a in &config.attraction {
        track(&a.gaze)?;
        track(&a.owner)?;
        for r in &a.attractors {
            region(r)?;
        }
        if !localized.contains(a.gaze.as_str()) {
            return Err(config_error(format!("gaze `{}` has no [[localize]] entry", a.gaze)));
        }
        if !(a.threshold.is_finite() && a.threshold >= 0.0) {
            return Err(config_error("attraction threshold must be non-negative"));
        }
    }
    Ok(())
}

fn trajector_kind(track: &Track) -> TrajectorKind {
    match track.kind() {
        TrackKind::Gaze => TrajectorKind::Gaze,
        _ => TrajectorKind::Person,
    }
}

/// Builds the complete narrative of a scene. The result depends only on the
/// inputs, not on thread scheduling.
pub fn build_narrative(scene: &Scene, config: &SceneConfig) -> Result<NarrativeStore, BuildError> {
    validate(scene, config)?;
    let times = scene.frame_times();
    if times.is_empty() {
        return Err(config_error("scene has no observations"));
    }
    let fluents = config.fluent_list()?;
    let diagonal = scene.diagonal(config);
    let frames: Vec<FrameFacts> = (0..times.len())
        .into_par_iter()
        .map(|i| {
            let prev = i.checked_sub(config.stride).map(|j| times[j]);
            evaluate_frame(scene, config, &fluents, diagonal, times[i], prev)
        })
        .collect();

    let mut store = NarrativeStore::with_frames(times)?;
    for (id, t) in &scene.tracks {
        store.register_entity(id.clone(), t.kind().into())?;
    }
    for id in scene.regions.keys() {
        store.register_entity(id.clone(), EntityKind::Region)?;
    }
    for h in maximal_intervals(&with_gap_breaks(frames, config.max_gap()), config.min_hold_frames) {
        store.insert_holding(h)?;
    }
    for l in &config.localize {
        let regions = l.regions.iter().map(|r| (r.as_str(), &scene.regions[r]));
        for h in localize(&scene.tracks[&l.entity], regions, config.min_hold_frames, config.max_gap())? {
            store.insert_holding(h)?;
        }
    }

    let max_gap = config.max_gap();
    let transition = Duration::from_secs(config.max_transition_gap);
    let mut occurrences: Vec<SchemaOccurrence> = Vec::new();
    for c in &config.containment {
        let box_at = |id: &str, t: TimePoint| scene.box_at(id, t, max_gap);
        occurrences.extend(
            detect_containment(&store, &c.entity, &c.container, c.threshold, max_gap, box_at)
                .into_iter()
                .map(SchemaOccurrence::Containment),
        );
    }
    for p in &config.paths {
        let kind = trajector_kind(&scene.tracks[&p.trajector]);
        let spg = detect_source_path_goal(&store, &p.trajector, kind, scene.route_graph(), transition);
        occurrences.extend(spg.into_iter().map(|o| match p.schema {
            PathSchema::SourcePathGoal => SchemaOccurrence::SourcePathGoal(o),
            PathSchema::PathGoal => SchemaOccurrence::PathGoal(project_path_goal(o)),
        }));
    }
    for a in &config.attraction {
        let threshold = Duration::from_secs(a.threshold);
        occurrences.extend(
            detect_attraction(&store, &a.gaze, &a.owner, &a.attractors, threshold)
                .into_iter()
                .map(SchemaOccurrence::Attraction),
        );
    }
    store.insert_occurrences(occurrences)?;
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::spatial::AxisOrder;

    fn t(s: f64) -> TimePoint {
        TimePoint::secs(s)
    }

    fn bx(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Box2 {
        Box2::new(xmin, xmax, ymin, ymax).unwrap()
    }

    fn topo(a: &str, b: &str) -> Fluent {
        Fluent::new(Family::Topology, [a, b]).unwrap()
    }

    fn frames_with(pattern: &[bool]) -> Vec<FrameFacts> {
        pattern
            .iter()
            .enumerate()
            .map(|(i, on)| {
                let mut f = FrameFacts::new(t(i as f64));
                if *on {
                    f.insert(topo("a", "b"), Relation::Topology(Rcc8::Ntpp));
                }
                f
            })
            .collect()
    }

    #[test]
    fn maximal_interval_examples() {
        let mut p = vec![false; 60];
        p[10..=50].iter_mut().for_each(|v| *v = true);
        let hs = maximal_intervals(&frames_with(&p), 0);
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].span, Span::from_bounds(t(10.0), t(50.0)).unwrap());

        p[13] = false;
        let hs = maximal_intervals(&frames_with(&p), 5);
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].span, Span::from_bounds(t(14.0), t(50.0)).unwrap());

        let alternating: Vec<bool> = (0..20).map(|i| i % 2 == 0).collect();
        assert!(maximal_intervals(&frames_with(&alternating), 2).is_empty());
        let single = maximal_intervals(&frames_with(&alternating), 0);
        assert_eq!(single.len(), 10);
        assert!(single.iter().all(|h| matches!(h.span, Span::At(_))));
    }

    #[test]
    fn expansion_reconstructs_frames() {
        let p: Vec<bool> = (0..30).map(|i| (i / 3) % 2 == 0 || i == 17).collect();
        let frames = frames_with(&p);
        let times: Vec<_> = frames.iter().map(|f| f.at).collect();
        assert_eq!(expand(&maximal_intervals(&frames, 0), &times), frames);
    }

    fn quadrant_scene() -> Scene {
        let face = Track::new(
            "face",
            TrackKind::Person,
            vec![
                Observation::with_box(t(0.0), bx(100.0, 300.0, 100.0, 300.0)),
                Observation::with_box(t(1.0), bx(900.0, 1100.0, 100.0, 300.0)),
                Observation::with_box(t(2.0), bx(1200.0, 1500.0, 100.0, 400.0)),
            ],
        )
        .unwrap();
        let gaze = Track::new(
            "gaze",
            TrackKind::Gaze,
            vec![
                Observation::with_point(t(0.0), Point2::new(10.0, 10.0)),
                Observation::with_point(t(2.0), Point2::new(1500.0, 10.0)),
            ],
        )
        .unwrap();
        let regions = vec![
            ("left".to_string(), bx(0.0, 960.0, 0.0, 1080.0)),
            ("right".to_string(), bx(960.0, 1920.0, 0.0, 1080.0)),
        ];
        Scene::new([face, gaze], regions, None).unwrap()
    }

    fn spec(family: Family, args: &[&str]) -> FluentSpec {
        FluentSpec { family, args: args.iter().map(|s| s.to_string()).collect(), epsilon_motion_per_second: None }
    }

    #[test]
    fn frame_relations() {
        let scene = quadrant_scene();
        assert!(compute_frame_relations(&scene, &SceneConfig::default(), t(0.0), None).is_empty());

        let config = SceneConfig {
            fluents: vec![
                spec(Family::Topology, &["face", "right"]),
                spec(Family::Topology, &["gaze", "left"]),
                spec(Family::Position(Axis::Horizontal), &["face", "right"]),
                spec(Family::SizeMotion(Axis::Horizontal), &["face"]),
                spec(Family::Position(Axis::Horizontal), &["gaze", "left"]),
            ],
            ..Default::default()
        };
        let f0 = compute_frame_relations(&scene, &config, t(0.0), None);
        assert_eq!(f0.get(&topo("face", "right")), Some(Relation::Topology(Rcc8::Dc)));
        assert_eq!(f0.get(&topo("gaze", "left")), Some(Relation::Topology(Rcc8::Ntpp)));
        assert_eq!(f0.len(), 3, "no motion without a previous frame, no box position for a point");

        let f2 = compute_frame_relations(&scene, &config, t(2.0), Some(t(1.0)));
        assert_eq!(f2.get(&topo("face", "right")), Some(Relation::Topology(Rcc8::Ntpp)));
        let pos = Fluent::new(Family::Position(Axis::Horizontal), ["face", "right"]).unwrap();
        assert!(matches!(f2.get(&pos), Some(Relation::Position(p)) if p.order == AxisOrder::OverlapsBefore));
        let grow = Fluent::new(Family::SizeMotion(Axis::Horizontal), ["face"]).unwrap();
        assert_eq!(f2.get(&grow).map(|r| r.symbol()), Some("elongating"));
        // Gaze is only observed at 0 and 2; t=1 lies in a 2 s gap.
        let f1 = compute_frame_relations(&scene, &config, t(1.0), Some(t(0.0)));
        assert_eq!(f1.get(&topo("gaze", "left")), None);
    }

    #[test]
    fn build_single_frame() {
        let b =
            Track::new("b", TrackKind::Object, vec![Observation::with_box(t(3.0), bx(0.0, 1.0, 0.0, 1.0))]).unwrap();
        let c =
            Track::new("c", TrackKind::Object, vec![Observation::with_box(t(3.0), bx(5.0, 6.0, 0.0, 1.0))]).unwrap();
        let scene = Scene::new([b, c], [], None).unwrap();
        let config = SceneConfig {
            fluents: vec![spec(Family::Topology, &["b", "c"]), spec(Family::Move, &["b", "c"])],
            ..Default::default()
        };
        let store = build_narrative(&scene, &config).unwrap();
        let hs = store.holdings();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].span, Span::At(t(3.0)));
        assert_eq!(hs[0].relation, Relation::Topology(Rcc8::Dc));
    }

    #[test]
    fn build_breaks_runs_where_nothing_was_observed() {
        let obs =
            |x: f64| [0.0, 0.5, 10.0, 10.5].map(|s| Observation::with_box(t(s), bx(x, x + 1.0, 0.0, 1.0))).to_vec();
        let b = Track::new("b", TrackKind::Object, obs(0.0)).unwrap();
        let c = Track::new("c", TrackKind::Object, obs(5.0)).unwrap();
        let scene = Scene::new([b, c], [], None).unwrap();
        let config = SceneConfig { fluents: vec![spec(Family::Topology, &["b", "c"])], ..Default::default() };
        let spans: Vec<Span> = build_narrative(&scene, &config).unwrap().holdings().iter().map(|h| h.span).collect();
        assert_eq!(spans, [Span::from_bounds(t(0.0), t(0.5)).unwrap(), Span::from_bounds(t(10.0), t(10.5)).unwrap()]);
        let bridged = SceneConfig { max_gap: 9.5, ..config };
        assert_eq!(build_narrative(&scene, &bridged).unwrap().holdings().len(), 1);
    }

    #[test]
    fn build_rejects_bad_config() {
        let scene = quadrant_scene();
        let unknown = SceneConfig { fluents: vec![spec(Family::Topology, &["face", "nowhere"])], ..Default::default() };
        assert!(matches!(build_narrative(&scene, &unknown), Err(BuildError::Model(ModelError::UnknownEntity(_)))));
        let arity = SceneConfig { fluents: vec![spec(Family::Topology, &["face"])], ..Default::default() };
        assert!(matches!(build_narrative(&scene, &arity), Err(BuildError::Model(ModelError::ArityMismatch { .. }))));
        let overlap = Scene::new(
            [],
            [("a".to_string(), bx(0.0, 5.0, 0.0, 5.0)), ("b".to_string(), bx(4.0, 9.0, 0.0, 5.0))],
            None,
        )
        .unwrap();
        let cfg = SceneConfig {
            localize: vec![LocalizeSpec { entity: "face".into(), regions: vec!["a".into(), "b".into()] }],
            ..Default::default()
        };
        assert!(build_narrative(&overlap, &cfg).is_err());
    }

    #[test]
    fn build_is_deterministic() {
        let scene = quadrant_scene();
        let config = SceneConfig {
            fluents: vec![
                spec(Family::Topology, &["face", "right"]),
                spec(Family::Topology, &["face", "left"]),
                spec(Family::SizeMotion(Axis::Vertical), &["face"]),
            ],
            containment: vec![ContainmentSpec { entity: "face".into(), container: "right".into(), threshold: 0.6 }],
            ..Default::default()
        };
        let a = build_narrative(&scene, &config).unwrap();
        for _ in 0..5 {
            assert_eq!(build_narrative(&scene, &config).unwrap(), a);
        }
        assert_eq!(a.occurrences().len(), 1);
        assert_eq!(a.occurrences()[0].id, "containment-001");
    }
}
