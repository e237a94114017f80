//! Observed geometry: boxes, points, per-frame observations and tracks.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, ModelError};
use crate::time::{Duration, TimePoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn lerp(&self, other: &Point2, f: f64) -> Point2 {
        Point2::new(lerp(self.x, other.x, f), lerp(self.y, other.y, f))
    }
}

/// Axis-aligned rectangle; the only region geometry in the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Box2 {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Box2 {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self, ModelError> {
        let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
        if !finite || xmin >= xmax || ymin >= ymax {
            return Err(ModelError::InvalidBox { xmin, xmax, ymin, ymax });
        }
        Ok(Box2 { xmin, xmax, ymin, ymax })
    }

    /// From the `[xmin, ymin, xmax, ymax]` layout used by the scene files.
    pub fn from_corners(c: [f64; 4]) -> Result<Self, ModelError> {
        Box2::new(c[0], c[2], c[1], c[3])
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }
    pub fn xmax(&self) -> f64 {
        self.xmax
    }
    pub fn ymin(&self) -> f64 {
        self.ymin
    }
    pub fn ymax(&self) -> f64 {
        self.ymax
    }

    pub fn x_extent(&self) -> (f64, f64) {
        (self.xmin, self.xmax)
    }

    pub fn y_extent(&self) -> (f64, f64) {
        (self.ymin, self.ymax)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn centroid(&self) -> Point2 {
        Point2::new((self.xmin + self.xmax) / 2.0, (self.ymin + self.ymax) / 2.0)
    }

    /// Closed membership.
    pub fn contains_point(&self, p: &Point2) -> bool {
        self.xmin <= p.x && p.x <= self.xmax && self.ymin <= p.y && p.y <= self.ymax
    }

    /// Half-open membership `[min, max)` on both axes, so that boxes sharing
    /// an edge partition the points on it.
    pub fn contains_point_half_open(&self, p: &Point2) -> bool {
        self.xmin <= p.x && p.x < self.xmax && self.ymin <= p.y && p.y < self.ymax
    }

    pub fn interiors_overlap(&self, other: &Box2) -> bool {
        self.xmin < other.xmax && other.xmin < self.xmax && self.ymin < other.ymax && other.ymin < self.ymax
    }

    pub fn union(&self, other: &Box2) -> Box2 {
        Box2 {
            xmin: self.xmin.min(other.xmin),
            xmax: self.xmax.max(other.xmax),
            ymin: self.ymin.min(other.ymin),
            ymax: self.ymax.max(other.ymax),
        }
    }

    fn lerp(&self, other: &Box2, f: f64) -> Box2 {
        Box2 {
            xmin: lerp(self.xmin, other.xmin, f),
            xmax: lerp(self.xmax, other.xmax, f),
            ymin: lerp(self.ymin, other.ymin, f),
            ymax: lerp(self.ymax, other.ymax, f),
        }
    }
}

impl<'de> Deserialize<'de> for Box2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            xmin: f64,
            xmax: f64,
            ymin: f64,
            ymax: f64,
        }
        let r = Raw::deserialize(d)?;
        Box2::new(r.xmin, r.xmax, r.ymin, r.ymax).map_err(serde::de::Error::custom)
    }
}

fn lerp(a: f64, b: f64, f: f64) -> f64 {
    a + (b - a) * f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackKind {
    Person,
    Object,
    Gaze,
    Camera,
}

impl TrackKind {
    pub fn name(&self) -> &'static str {
        match self {
            TrackKind::Person => "person",
            TrackKind::Object => "object",
            TrackKind::Gaze => "gaze",
            TrackKind::Camera => "camera",
        }
    }
}

/// One percept of one entity at one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub at: TimePoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bbox: Option<Box2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Point2>,
    /// Distance from the observer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<f64>,
    /// Near/far extent along the viewing direction, when the sensor provides one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_extent: Option<(f64, f64)>,
}

impl Observation {
    pub fn with_box(at: TimePoint, bbox: Box2) -> Self {
        Observation { at, bbox: Some(bbox), point: None, depth: None, depth_extent: None }
    }

    pub fn with_point(at: TimePoint, point: Point2) -> Self {
        Observation { at, bbox: None, point: Some(point), depth: None, depth_extent: None }
    }

    pub fn depth(mut self, depth: f64) -> Self {
        self.depth = Some(depth);
        self
    }

    fn validate(&self, entity: &str) -> Result<(), ModelError> {
        let ctx = || (entity.to_string(), self.at);
        match (&self.bbox, &self.point) {
            (None, None) => {
                let (entity, at) = ctx();
                return Err(ModelError::EmptyObservation { entity, at });
            }
            (Some(b), Some(p)) if !b.contains_point(p) => {
                let (entity, at) = ctx();
                return Err(ModelError::PointOutsideBox { entity, at });
            }
            _ => {}
        }
        if let Some(p) = &self.point {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(ModelError::NonFiniteCoordinate);
            }
        }
        if let Some(d) = self.depth {
            if !d.is_finite() {
                return Err(ModelError::NonFiniteCoordinate);
            }
        }
        if let Some((near, far)) = self.depth_extent {
            if !(near.is_finite() && far.is_finite() && near < far) {
                let (entity, at) = ctx();
                return Err(ModelError::InvalidDepthExtent { entity, at });
            }
        }
        Ok(())
    }

    /// Box centroid, or the raw point for point-only percepts (gaze).
    pub fn representative_point(&self) -> Point2 {
        match (&self.point, &self.bbox) {
            (_, Some(b)) => b.centroid(),
            (Some(p), None) => *p,
            (None, None) => unreachable!("validated observation"),
        }
    }

    fn interpolate(&self, next: &Observation, at: TimePoint) -> Observation {
        let span = (next.at - self.at).micros() as f64;
        let f = (at - self.at).micros() as f64 / span;
        let both = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| lerp(a, b, f));
        Observation {
            at,
            bbox: self.bbox.zip(next.bbox).map(|(a, b)| a.lerp(&b, f)),
            point: self.point.zip(next.point).map(|(a, b)| a.lerp(&b, f)),
            depth: both(self.depth, next.depth),
            depth_extent: self.depth_extent.zip(next.depth_extent).map(|(a, b)| (lerp(a.0, b.0, f), lerp(a.1, b.1, f))),
        }
    }
}

/// Time-ordered observations of one entity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Track {
    entity_id: String,
    kind: TrackKind,
    observations: Vec<Observation>,
}

impl Track {
    pub fn new(
        entity_id: impl Into<String>,
        kind: TrackKind,
        observations: Vec<Observation>,
    ) -> Result<Self, ModelError> {
        let entity_id = entity_id.into();
        if observations.is_empty() {
            return Err(ModelError::EmptyTrack(entity_id));
        }
        for (i, obs) in observations.iter().enumerate() {
            obs.validate(&entity_id)?;
            if i > 0 && observations[i - 1].at >= obs.at {
                return Err(ModelError::UnorderedObservations { entity: entity_id, at: obs.at });
            }
        }
        Ok(Track { entity_id, kind, observations })
    }

    pub fn entity_id(&self) -> &str {
        &self.entity_id
    }

    pub fn kind(&self) -> TrackKind {
        self.kind
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn first_time(&self) -> TimePoint {
        self.observations[0].at
    }

    pub fn last_time(&self) -> TimePoint {
        self.observations[self.observations.len() - 1].at
    }

    /// The observation at `at`, linearly interpolated between the bracketing
    /// observations when they are at most `max_gap` apart.
    pub fn sample(&self, at: TimePoint, max_gap: Duration) -> Result<Observation, GeometryError> {
        let idx = self.observations.partition_point(|o| o.at < at);
        if let Some(obs) = self.observations.get(idx) {
            if obs.at == at {
                return Ok(obs.clone());
            }
        }
        if idx == 0 || idx == self.observations.len() {
            return Err(GeometryError::NotObserved { entity: self.entity_id.clone(), at });
        }
        let (prev, next) = (&self.observations[idx - 1], &self.observations[idx]);
        let gap = next.at - prev.at;
        if gap > max_gap {
            return Err(GeometryError::SamplingGap { entity: self.entity_id.clone(), at, gap });
        }
        Ok(prev.interpolate(next, at))
    }
}

impl<'de> Deserialize<'de> for Track {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            entity_id: String,
            kind: TrackKind,
            observations: Vec<Observation>,
        }
        let r = Raw::deserialize(d)?;
        Track::new(r.entity_id, r.kind, r.observations).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: f64) -> TimePoint {
        TimePoint::secs(s)
    }

    #[test]
    fn zero_area_boxes_rejected() {
        assert!(Box2::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(Box2::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(Box2::new(0.0, f64::NAN, 0.0, 1.0).is_err());
        let b = Box2::from_corners([1.0, 2.0, 5.0, 4.0]).unwrap();
        assert_eq!((b.width(), b.height(), b.area()), (4.0, 2.0, 8.0));
    }

    #[test]
    fn track_invariants() {
        let b = Box2::new(0.0, 2.0, 0.0, 2.0).unwrap();
        assert!(matches!(Track::new("a", TrackKind::Object, vec![]), Err(ModelError::EmptyTrack(_))));
        let obs = vec![Observation::with_box(t(1.0), b), Observation::with_box(t(1.0), b)];
        assert!(matches!(Track::new("a", TrackKind::Object, obs), Err(ModelError::UnorderedObservations { .. })));
        let mut outside = Observation::with_box(t(0.0), b);
        outside.point = Some(Point2::new(5.0, 5.0));
        assert!(matches!(Track::new("a", TrackKind::Object, vec![outside]), Err(ModelError::PointOutsideBox { .. })));
        let empty = Observation { at: t(0.0), bbox: None, point: None, depth: None, depth_extent: None };
        assert!(Track::new("a", TrackKind::Object, vec![empty]).is_err());
    }

    #[test]
    fn sampling_interpolates_within_gap() {
        let track = Track::new(
            "g",
            TrackKind::Gaze,
            vec![
                Observation::with_point(t(0.0), Point2::new(0.0, 0.0)),
                Observation::with_point(t(0.4), Point2::new(4.0, 8.0)),
                Observation::with_point(t(2.0), Point2::new(0.0, 0.0)),
            ],
        )
        .unwrap();
        let max_gap = Duration::from_secs(0.5);
        let mid = track.sample(t(0.1), max_gap).unwrap();
        assert_eq!(mid.point, Some(Point2::new(1.0, 2.0)));
        assert!(matches!(track.sample(t(1.0), max_gap), Err(GeometryError::SamplingGap { .. })));
        assert!(matches!(track.sample(t(2.5), max_gap), Err(GeometryError::NotObserved { .. })));
        assert_eq!(track.sample(t(2.0), max_gap).unwrap().at, t(2.0));
    }
}
