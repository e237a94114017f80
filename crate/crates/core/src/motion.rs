//! Qualitative motion: change of inter-object distance and per-axis size
//! change across a time window.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::geometry::{Observation, Track};
use crate::spatial::Axis;
use crate::time::{Duration, TimePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveRelation {
    Approaching,
    Receding,
    Static,
}

impl MoveRelation {
    pub const ALL: [MoveRelation; 3] = [MoveRelation::Approaching, MoveRelation::Receding, MoveRelation::Static];

    pub fn symbol(self) -> &'static str {
        match self {
            MoveRelation::Approaching => "approaching",
            MoveRelation::Receding => "receding",
            MoveRelation::Static => "static",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeChange {
    Elongating,
    Shortening,
    Static,
}

impl SizeChange {
    pub const ALL: [SizeChange; 3] = [SizeChange::Elongating, SizeChange::Shortening, SizeChange::Static];

    pub fn symbol(self) -> &'static str {
        match self {
            SizeChange::Elongating => "elongating",
            SizeChange::Shortening => "shortening",
            SizeChange::Static => "static",
        }
    }
}

/// Size change along one axis. Simultaneous changes on several axes are
/// separate facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SizeMotionRelation {
    pub axis: Axis,
    pub change: SizeChange,
}

impl fmt::Display for SizeMotionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.change.symbol(), self.axis.name())
    }
}

/// Ordered pair of time points compared by a motion relation. `from` may be
/// later than `to` (a reversed window).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub from: TimePoint,
    pub to: TimePoint,
}

impl Window {
    pub fn new(from: TimePoint, to: TimePoint) -> Result<Self, GeometryError> {
        if from == to {
            return Err(GeometryError::InvalidWindow(format!("empty window at {from}")));
        }
        Ok(Window { from, to })
    }

    pub fn reversed(self) -> Self {
        Window { from: self.to, to: self.from }
    }

    pub fn duration(&self) -> Duration {
        if self.to > self.from {
            self.to - self.from
        } else {
            self.from - self.to
        }
    }
}

/// Tolerance for a window: `rate` is a fraction of the scene diagonal per
/// second, scaled by the window duration.
pub fn motion_epsilon(scene_diagonal: f64, rate: f64, window: Duration) -> f64 {
    scene_diagonal * rate * window.as_secs_f64()
}

fn classify(before: f64, after: f64, eps: f64) -> std::cmp::Ordering {
    if after < before - eps {
        std::cmp::Ordering::Less
    } else if after > before + eps {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

/// Change of the planar distance between the representative points of two
/// tracks (box centroids; raw points for point-only percepts).
pub fn movement(
    a: &Track,
    b: &Track,
    window: Window,
    eps_motion: f64,
    max_gap: Duration,
) -> Result<MoveRelation, GeometryError> {
    let distance = |t: TimePoint| -> Result<f64, GeometryError> {
        let (oa, ob) = (a.sample(t, max_gap)?, b.sample(t, max_gap)?);
        Ok(oa.representative_point().distance(&ob.representative_point()))
    };
    let (d0, d1) = (distance(window.from)?, distance(window.to)?);
    Ok(match classify(d0, d1, eps_motion) {
        std::cmp::Ordering::Less => MoveRelation::Approaching,
        std::cmp::Ordering::Greater => MoveRelation::Receding,
        std::cmp::Ordering::Equal => MoveRelation::Static,
    })
}

fn extent(track: &Track, obs: &Observation, axis: Axis) -> Result<f64, GeometryError> {
    let missing = |what| GeometryError::GeometryMissing { entity: track.entity_id().to_string(), what, at: obs.at };
    match axis {
        Axis::Horizontal => obs.bbox.map(|b| b.width()).ok_or_else(|| missing("box")),
        Axis::Vertical => obs.bbox.map(|b| b.height()).ok_or_else(|| missing("box")),
        Axis::Depth => obs.depth_extent.map(|(near, far)| far - near).ok_or_else(|| missing("depth extent")),
    }
}

/// Change of one track's extent along `axis` across the window.
pub fn size_motion(
    track: &Track,
    axis: Axis,
    window: Window,
    eps_motion: f64,
    max_gap: Duration,
) -> Result<SizeMotionRelation, GeometryError> {
    let at = |t| -> Result<f64, GeometryError> {
        let obs = track.sample(t, max_gap)?;
        extent(track, &obs, axis)
    };
    let (e0, e1) = (at(window.from)?, at(window.to)?);
    let change = match classify(e0, e1, eps_motion) {
        std::cmp::Ordering::Less => SizeChange::Shortening,
        std::cmp::Ordering::Greater => SizeChange::Elongating,
        std::cmp::Ordering::Equal => SizeChange::Static,
    };
    Ok(SizeMotionRelation { axis, change })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Box2, Point2, TrackKind};

    fn t(s: f64) -> TimePoint {
        TimePoint::secs(s)
    }

    fn point_track(id: &str, pts: &[(f64, f64, f64)]) -> Track {
        let obs = pts.iter().map(|&(s, x, y)| Observation::with_point(t(s), Point2::new(x, y))).collect();
        Track::new(id, TrackKind::Object, obs).unwrap()
    }

    fn window(a: f64, b: f64) -> Window {
        Window::new(t(a), t(b)).unwrap()
    }

    const GAP: f64 = 0.5;

    #[test]
    fn movement_examples() {
        let origin = point_track("o", &[(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0)]);
        let closing = point_track("a", &[(0.0, 5.0, 0.0), (1.0, 3.0, 0.0), (2.0, 3.05, 0.0)]);
        let gap = Duration::from_secs(GAP);
        assert_eq!(movement(&closing, &origin, window(0.0, 1.0), 0.1, gap).unwrap(), MoveRelation::Approaching);
        assert_eq!(movement(&closing, &origin, window(1.0, 2.0), 0.1, gap).unwrap(), MoveRelation::Static);

        // A camera backing away from the pair it tracks.
        let pair = point_track("pair", &[(0.0, 0.0, 0.0), (1.0, 0.0, 1.0), (2.0, 0.0, 2.0)]);
        let camera = point_track("camera", &[(0.0, 0.0, 2.0), (1.0, 0.0, 4.0), (2.0, 0.0, 6.0)]);
        assert_eq!(movement(&camera, &pair, window(0.0, 1.0), 0.1, gap).unwrap(), MoveRelation::Receding);
    }

    #[test]
    fn movement_symmetry_and_reversal() {
        let a = point_track("a", &[(0.0, 5.0, 0.0), (1.0, 2.0, 0.0)]);
        let b = point_track("b", &[(0.0, 0.0, 0.0), (1.0, 0.0, 1.0)]);
        let gap = Duration::from_secs(2.0);
        let w = window(0.0, 1.0);
        let fwd = movement(&a, &b, w, 0.1, gap).unwrap();
        assert_eq!(fwd, movement(&b, &a, w, 0.1, gap).unwrap());
        assert_eq!(fwd, MoveRelation::Approaching);
        assert_eq!(movement(&a, &b, w.reversed(), 0.1, gap).unwrap(), MoveRelation::Receding);
    }

    #[test]
    fn movement_sampling_gap() {
        let a = point_track("a", &[(0.0, 5.0, 0.0), (3.0, 2.0, 0.0)]);
        let b = point_track("b", &[(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0), (3.0, 0.0, 0.0)]);
        let err = movement(&a, &b, window(0.0, 1.0), 0.1, Duration::from_secs(GAP)).unwrap_err();
        assert!(matches!(err, GeometryError::SamplingGap { .. }));
        assert!(Window::new(t(1.0), t(1.0)).is_err());
    }

    #[test]
    fn size_motion_examples() {
        let b = |w: f64, h: f64| Box2::new(0.0, w, 0.0, h).unwrap();
        let track = Track::new(
            "face",
            TrackKind::Person,
            vec![Observation::with_box(t(0.0), b(10.0, 5.0)), Observation::with_box(t(1.0), b(14.0, 5.0))],
        )
        .unwrap();
        let gap = Duration::from_secs(GAP);
        let h = size_motion(&track, Axis::Horizontal, window(0.0, 1.0), 0.1, gap).unwrap();
        assert_eq!(h, SizeMotionRelation { axis: Axis::Horizontal, change: SizeChange::Elongating });
        let v = size_motion(&track, Axis::Vertical, window(0.0, 1.0), 0.1, gap).unwrap();
        assert_eq!(v.change, SizeChange::Static);
        let rev = size_motion(&track, Axis::Horizontal, window(1.0, 0.0), 0.1, gap).unwrap();
        assert_eq!(rev.change, SizeChange::Shortening);
        assert!(matches!(
            size_motion(&track, Axis::Depth, window(0.0, 1.0), 0.1, gap),
            Err(GeometryError::GeometryMissing { .. })
        ));
    }

    #[test]
    fn epsilon_scales_with_window() {
        let eps = motion_epsilon(100.0, 0.01, Duration::from_secs(0.5));
        assert!((eps - 0.5).abs() < 1e-12);
    }
}
