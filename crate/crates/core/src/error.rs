use thiserror::Error;

use crate::time::{Duration, TimePoint};

/// Violations of the data-model invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("time must be finite and non-negative, got {0}")]
    NegativeTime(f64),
    #[error("degenerate interval: start {start} is not before end {end}")]
    DegenerateInterval { start: TimePoint, end: TimePoint },
    #[error("invalid box [{xmin}, {xmax}] x [{ymin}, {ymax}]: extents must be finite with min < max")]
    InvalidBox { xmin: f64, xmax: f64, ymin: f64, ymax: f64 },
    #[error("coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("observation of `{entity}` at {at} carries neither box nor point")]
    EmptyObservation { entity: String, at: TimePoint },
    #[error("observation of `{entity}` at {at}: point lies outside its box")]
    PointOutsideBox { entity: String, at: TimePoint },
    #[error("observation of `{entity}` at {at}: depth extent must satisfy near < far")]
    InvalidDepthExtent { entity: String, at: TimePoint },
    #[error("track `{0}` has no observations")]
    EmptyTrack(String),
    #[error("track `{entity}`: observation at {at} is not after the previous one")]
    UnorderedObservations { entity: String, at: TimePoint },
    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),
    #[error("fluent family `{family}` takes {expected} argument(s), got {got}")]
    ArityMismatch { family: String, expected: usize, got: usize },
    #[error("relation `{relation}` does not belong to fluent family `{family}`")]
    FamilyMismatch { family: String, relation: String },
    #[error("unknown relation symbol `{relation}` for family `{family}`")]
    UnknownRelation { family: String, relation: String },
    #[error("span {span} lies outside the narrative timeline [{first}, {last}]")]
    OutOfTimeline { span: String, first: TimePoint, last: TimePoint },
    #[error("entity `{0}` is not registered")]
    UnknownEntity(String),
    #[error("duplicate entity id `{0}`")]
    DuplicateEntity(String),
}

/// Failures while evaluating relations over observed geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("`{entity}` has no {what} at {at}")]
    GeometryMissing { entity: String, what: &'static str, at: TimePoint },
    #[error("`{entity}` is not observed at {at} and the surrounding gap of {gap} exceeds the interpolation limit")]
    SamplingGap { entity: String, at: TimePoint, gap: Duration },
    #[error("`{entity}` is not observed at {at}")]
    NotObserved { entity: String, at: TimePoint },
    #[error("invalid motion window: {0}")]
    InvalidWindow(String),
}

/// Failures of image-schema detection and its configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemaError {
    #[error("`{entity}` at {at} lies in more than one location: {regions:?}")]
    AmbiguousLocation { entity: String, at: TimePoint, regions: Vec<String> },
    #[error("location regions `{0}` and `{1}` overlap")]
    OverlappingRegions(String, String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("route graph: {0}")]
    RouteGraph(String),
}

/// Anything that can go wrong while building a narrative from scene data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("scene configuration: {0}")]
    Config(String),
}
