//! Allen's interval algebra plus the point and point-interval relation families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::time::{Interval, TimePoint};

/// The thirteen basic relations between two intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllenRelation {
    Before,
    After,
    During,
    Contains,
    Starts,
    StartedBy,
    Finishes,
    FinishedBy,
    Overlaps,
    OverlappedBy,
    Meets,
    MetBy,
    Equal,
}

use AllenRelation::*;

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        Before,
        After,
        During,
        Contains,
        Starts,
        StartedBy,
        Finishes,
        FinishedBy,
        Overlaps,
        OverlappedBy,
        Meets,
        MetBy,
        Equal,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Before => "before",
            After => "after",
            During => "during",
            Contains => "contains",
            Starts => "starts",
            StartedBy => "started_by",
            Finishes => "finishes",
            FinishedBy => "finished_by",
            Overlaps => "overlaps",
            OverlappedBy => "overlapped_by",
            Meets => "meets",
            MetBy => "met_by",
            Equal => "equal",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.symbol() == s)
    }

    pub fn converse(self) -> Self {
        match self {
            Before => After,
            After => Before,
            During => Contains,
            Contains => During,
            Starts => StartedBy,
            StartedBy => Starts,
            Finishes => FinishedBy,
            FinishedBy => Finishes,
            Overlaps => OverlappedBy,
            OverlappedBy => Overlaps,
            Meets => MetBy,
            MetBy => Meets,
            Equal => Equal,
        }
    }

    /// True for the nine relations under which the two intervals share more
    /// than an endpoint.
    pub fn is_intersecting(self) -> bool {
        !matches!(self, Before | After | Meets | MetBy)
    }
}

impl fmt::Display for AllenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn converse(r: AllenRelation) -> AllenRelation {
    r.converse()
}

/// Allen relation of `[a_start, a_end]` w.r.t. `[b_start, b_end]` from endpoint
/// comparisons. Both extents must be non-degenerate.
pub fn allen_endpoints<T: PartialOrd + Copy>(a_start: T, a_end: T, b_start: T, b_end: T) -> AllenRelation {
    debug_assert!(a_start < a_end && b_start < b_end);
    if a_end < b_start {
        Before
    } else if a_end == b_start {
        Meets
    } else if b_end < a_start {
        After
    } else if b_end == a_start {
        MetBy
    } else if a_start == b_start {
        if a_end == b_end {
            Equal
        } else if a_end < b_end {
            Starts
        } else {
            StartedBy
        }
    } else if a_end == b_end {
        if a_start > b_start {
            Finishes
        } else {
            FinishedBy
        }
    } else if a_start > b_start && a_end < b_end {
        During
    } else if a_start < b_start && a_end > b_end {
        Contains
    } else if a_start < b_start {
        Overlaps
    } else {
        OverlappedBy
    }
}

pub fn allen(i1: &Interval, i2: &Interval) -> AllenRelation {
    allen_endpoints(i1.start(), i1.end(), i2.start(), i2.end())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointRelation {
    Before,
    After,
    Equals,
}

pub fn point_relation(t1: TimePoint, t2: TimePoint) -> PointRelation {
    match t1.cmp(&t2) {
        std::cmp::Ordering::Less => PointRelation::Before,
        std::cmp::Ordering::Greater => PointRelation::After,
        std::cmp::Ordering::Equal => PointRelation::Equals,
    }
}

/// A time point w.r.t. an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointIntervalRelation {
    Before,
    Starts,
    During,
    Finishes,
    After,
}

/// An interval w.r.t. a time point; the converse direction of
/// [`PointIntervalRelation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalPointRelation {
    After,
    StartedBy,
    Contains,
    FinishedBy,
    Before,
}

impl PointIntervalRelation {
    pub const ALL: [PointIntervalRelation; 5] = [
        PointIntervalRelation::Before,
        PointIntervalRelation::Starts,
        PointIntervalRelation::During,
        PointIntervalRelation::Finishes,
        PointIntervalRelation::After,
    ];

    pub fn converse(self) -> IntervalPointRelation {
        match self {
            PointIntervalRelation::Before => IntervalPointRelation::After,
            PointIntervalRelation::Starts => IntervalPointRelation::StartedBy,
            PointIntervalRelation::During => IntervalPointRelation::Contains,
            PointIntervalRelation::Finishes => IntervalPointRelation::FinishedBy,
            PointIntervalRelation::After => IntervalPointRelation::Before,
        }
    }
}

impl IntervalPointRelation {
    pub fn converse(self) -> PointIntervalRelation {
        match self {
            IntervalPointRelation::After => PointIntervalRelation::Before,
            IntervalPointRelation::StartedBy => PointIntervalRelation::Starts,
            IntervalPointRelation::Contains => PointIntervalRelation::During,
            IntervalPointRelation::FinishedBy => PointIntervalRelation::Finishes,
            IntervalPointRelation::Before => PointIntervalRelation::After,
        }
    }
}

pub fn point_interval(t: TimePoint, i: &Interval) -> PointIntervalRelation {
    if t < i.start() {
        PointIntervalRelation::Before
    } else if t == i.start() {
        PointIntervalRelation::Starts
    } else if t < i.end() {
        PointIntervalRelation::During
    } else if t == i.end() {
        PointIntervalRelation::Finishes
    } else {
        PointIntervalRelation::After
    }
}

pub fn interval_point(i: &Interval, t: TimePoint) -> IntervalPointRelation {
    point_interval(t, i).converse()
}

/// A set of Allen relations, one bit per relation in [`AllenRelation::ALL`] order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AllenRelationSet(u16);

impl AllenRelationSet {
    pub const EMPTY: AllenRelationSet = AllenRelationSet(0);
    pub const FULL: AllenRelationSet = AllenRelationSet((1 << 13) - 1);

    pub const fn from_bits(bits: u16) -> Self {
        AllenRelationSet(bits & ((1 << 13) - 1))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn single(r: AllenRelation) -> Self {
        AllenRelationSet(1 << r.index())
    }

    pub fn insert(&mut self, r: AllenRelation) {
        self.0 |= 1 << r.index();
    }

    pub fn contains(self, r: AllenRelation) -> bool {
        self.0 & (1 << r.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = AllenRelation> {
        AllenRelation::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    pub fn converse(self) -> Self {
        self.iter().map(AllenRelation::converse).collect()
    }

    pub fn union(self, other: Self) -> Self {
        AllenRelationSet(self.0 | other.0)
    }
}

impl FromIterator<AllenRelation> for AllenRelationSet {
    fn from_iter<I: IntoIterator<Item = AllenRelation>>(iter: I) -> Self {
        let mut set = AllenRelationSet::EMPTY;
        for r in iter {
            set.insert(r);
        }
        set
    }
}

impl fmt::Debug for AllenRelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|r| r.symbol())).finish()
    }
}

/// Composition of basic relations: if `r1(a, b)` and `r2(b, c)`, the possible
/// relations `r(a, c)`.
pub fn compose_allen(r1: AllenRelation, r2: AllenRelation) -> AllenRelationSet {
    AllenRelationSet::from_bits(COMPOSITION[r1.index()][r2.index()])
}

/// Composition table, rows `r1`, columns `r2`, both in [`AllenRelation::ALL`]
/// order. Generated by exhaustive enumeration over integer intervals and
/// checked against that enumeration in the test suite.
#[rustfmt::skip]
const COMPOSITION: [[u16; 13]; 13] = [
    // before
    [0x0001, 0x1fff, 0x0515, 0x0001, 0x0001, 0x0001, 0x0515, 0x0001, 0x0001, 0x0515, 0x0001, 0x0515, 0x0001],
    // after
    [0x1fff, 0x0002, 0x0a46, 0x0002, 0x0a46, 0x0002, 0x0002, 0x0002, 0x0a46, 0x0002, 0x0a46, 0x0002, 0x0002],
    // during
    [0x0001, 0x0002, 0x0004, 0x1fff, 0x0004, 0x0a46, 0x0004, 0x0515, 0x0515, 0x0a46, 0x0001, 0x0002, 0x0004],
    // contains
    [0x0589, 0x0a2a, 0x13fc, 0x0008, 0x0188, 0x0008, 0x0228, 0x0008, 0x0188, 0x0228, 0x0188, 0x0228, 0x0008],
    // starts
    [0x0001, 0x0002, 0x0004, 0x0589, 0x0010, 0x1030, 0x0004, 0x0501, 0x0501, 0x0244, 0x0001, 0x0800, 0x0010],
    // started_by
    [0x0589, 0x0002, 0x0244, 0x0008, 0x1030, 0x0020, 0x0200, 0x0008, 0x0188, 0x0200, 0x0188, 0x0800, 0x0020],
    // finishes
    [0x0001, 0x0002, 0x0004, 0x0a2a, 0x0004, 0x0a02, 0x0040, 0x10c0, 0x0114, 0x0a02, 0x0400, 0x0002, 0x0040],
    // finished_by
    [0x0001, 0x0a2a, 0x0114, 0x0008, 0x0100, 0x0008, 0x10c0, 0x0080, 0x0100, 0x0228, 0x0400, 0x0228, 0x0080],
    // overlaps
    [0x0001, 0x0a2a, 0x0114, 0x0589, 0x0100, 0x0188, 0x0114, 0x0501, 0x0501, 0x13fc, 0x0001, 0x0228, 0x0100],
    // overlapped_by
    [0x0589, 0x0002, 0x0244, 0x0a2a, 0x0244, 0x0a02, 0x0200, 0x0228, 0x13fc, 0x0a02, 0x0188, 0x0002, 0x0200],
    // meets
    [0x0001, 0x0a2a, 0x0114, 0x0001, 0x0400, 0x0400, 0x0114, 0x0001, 0x0001, 0x0114, 0x0001, 0x10c0, 0x0400],
    // met_by
    [0x0589, 0x0002, 0x0244, 0x0002, 0x0244, 0x0002, 0x0800, 0x0800, 0x0244, 0x0002, 0x1030, 0x0002, 0x0800],
    // equal
    [0x0001, 0x0002, 0x0004, 0x0008, 0x0010, 0x0020, 0x0040, 0x0080, 0x0100, 0x0200, 0x0400, 0x0800, 0x1000],
];
