//! Frame-level time: fixed-point time points, closed intervals and spans.
//!
//! Time points are stored as whole microseconds so that ordering and equality
//! are exact. Everything that compares endpoints (Allen relations, maximal
//! interval extraction, store merging) relies on that.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ModelError;

const TICKS_PER_SECOND: i64 = 1_000_000;

/// A non-negative instant on the scene clock, in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimePoint(i64);

impl TimePoint {
    pub const ZERO: TimePoint = TimePoint(0);

    pub fn from_micros(micros: i64) -> Result<Self, ModelError> {
        if micros < 0 {
            return Err(ModelError::NegativeTime(micros as f64 / TICKS_PER_SECOND as f64));
        }
        Ok(TimePoint(micros))
    }

    /// Rounds to the nearest microsecond.
    pub fn from_secs(secs: f64) -> Result<Self, ModelError> {
        if !secs.is_finite() || secs < 0.0 {
            return Err(ModelError::NegativeTime(secs));
        }
        Ok(TimePoint((secs * TICKS_PER_SECOND as f64).round() as i64))
    }

    /// Panicking shorthand for literals in tests and fixtures.
    pub fn secs(secs: f64) -> Self {
        Self::from_secs(secs).expect("valid time literal")
    }

    pub fn micros(self) -> i64 {
        self.0
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / TICKS_PER_SECOND as f64
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_secs(f, self.0)
    }
}

fn write_secs(f: &mut fmt::Formatter<'_>, micros: i64) -> fmt::Result {
    let sign = if micros < 0 { "-" } else { "" };
    let abs = micros.unsigned_abs();
    let whole = abs / TICKS_PER_SECOND as u64;
    let frac = abs % TICKS_PER_SECOND as u64;
    if frac == 0 {
        write!(f, "{sign}{whole}.0")
    } else {
        let digits = format!("{frac:06}");
        write!(f, "{sign}{whole}.{}", digits.trim_end_matches('0'))
    }
}

impl Serialize for TimePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_secs_f64())
    }
}

impl<'de> Deserialize<'de> for TimePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let secs = f64::deserialize(d)?;
        TimePoint::from_secs(secs).map_err(serde::de::Error::custom)
    }
}

/// Signed difference between two time points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Duration(i64);

impl Duration {
    pub const ZERO: Duration = Duration(0);

    pub fn from_micros(micros: i64) -> Self {
        Duration(micros)
    }

    pub fn from_secs(secs: f64) -> Self {
        Duration((secs * TICKS_PER_SECOND as f64).round() as i64)
    }

    pub fn micros(self) -> i64 {
        self.0
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / TICKS_PER_SECOND as f64
    }
}

impl fmt::Display for Duration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_secs(f, self.0)?;
        f.write_str("s")
    }
}

impl Serialize for Duration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_secs_f64())
    }
}

impl<'de> Deserialize<'de> for Duration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let secs = f64::deserialize(d)?;
        if !secs.is_finite() {
            return Err(serde::de::Error::custom("duration must be finite"));
        }
        Ok(Duration::from_secs(secs))
    }
}

impl Sub for TimePoint {
    type Output = Duration;
    fn sub(self, rhs: TimePoint) -> Duration {
        Duration(self.0 - rhs.0)
    }
}

impl Add<Duration> for TimePoint {
    type Output = TimePoint;
    fn add(self, rhs: Duration) -> TimePoint {
        TimePoint((self.0 + rhs.0).max(0))
    }
}

/// Closed interval `[start, end]` with `start < end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    start: TimePoint,
    end: TimePoint,
}

/// `between(t1, t2)`; degenerate intervals are rejected.
pub fn make_interval(start: TimePoint, end: TimePoint) -> Result<Interval, ModelError> {
    Interval::new(start, end)
}

impl Interval {
    pub fn new(start: TimePoint, end: TimePoint) -> Result<Self, ModelError> {
        if start >= end {
            return Err(ModelError::DegenerateInterval { start, end });
        }
        Ok(Interval { start, end })
    }

    pub fn start(&self) -> TimePoint {
        self.start
    }

    pub fn end(&self) -> TimePoint {
        self.end
    }

    pub fn duration(&self) -> Duration {
        self.end - self.start
    }

    pub fn contains(&self, t: TimePoint) -> bool {
        self.start <= t && t <= self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "between({}, {})", self.start, self.end)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            start: TimePoint,
            end: TimePoint,
        }
        let raw = Raw::deserialize(d)?;
        Interval::new(raw.start, raw.end).map_err(serde::de::Error::custom)
    }
}

/// The temporal extent of a holding or occurrence: `at(t)` or `between(t1, t2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Span {
    At(TimePoint),
    Between(Interval),
}

impl Span {
    /// Builds `At` when the endpoints coincide, `Between` otherwise.
    pub fn from_bounds(start: TimePoint, end: TimePoint) -> Result<Self, ModelError> {
        match start.cmp(&end) {
            std::cmp::Ordering::Equal => Ok(Span::At(start)),
            std::cmp::Ordering::Less => Ok(Span::Between(Interval { start, end })),
            std::cmp::Ordering::Greater => Err(ModelError::DegenerateInterval { start, end }),
        }
    }

    pub fn start(&self) -> TimePoint {
        match self {
            Span::At(t) => *t,
            Span::Between(i) => i.start,
        }
    }

    pub fn end(&self) -> TimePoint {
        match self {
            Span::At(t) => *t,
            Span::Between(i) => i.end,
        }
    }

    pub fn duration(&self) -> Duration {
        self.end() - self.start()
    }

    pub fn contains(&self, t: TimePoint) -> bool {
        self.start() <= t && t <= self.end()
    }

    /// Closed-interval intersection test (touching endpoints count).
    pub fn touches(&self, other: &Span) -> bool {
        self.start() <= other.end() && other.start() <= self.end()
    }

    pub fn intersects_interval(&self, other: &Interval) -> bool {
        self.start() <= other.end && other.start <= self.end()
    }

    pub fn hull(&self, other: &Span) -> Span {
        let start = self.start().min(other.start());
        let end = self.end().max(other.end());
        Span::from_bounds(start, end).expect("hull of ordered spans")
    }
}

impl PartialOrd for Span {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Span {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.start(), self.end()).cmp(&(other.start(), other.end()))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Span::At(t) => write!(f, "at({t})"),
            Span::Between(i) => i.fmt(f),
        }
    }
}

impl From<Interval> for Span {
    fn from(i: Interval) -> Self {
        Span::Between(i)
    }
}

impl From<TimePoint> for Span {
    fn from(t: TimePoint) -> Self {
        Span::At(t)
    }
}
