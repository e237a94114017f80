//! Relations between geometric primitives at a single time point: topology
//! (RCC-8), per-axis relative position, relative distance and relative size.
//!
//! Regions are axis-aligned rectangles, so every relation here reduces to
//! comparisons of per-axis extents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::geometry::{Box2, Observation, Point2};
use crate::temporal::{allen_endpoints, AllenRelation};

/// RCC-8 base relations of a region `a` with respect to a region `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rcc8 {
    Dc,
    Ec,
    Po,
    Eq,
    Tpp,
    Ntpp,
    TppI,
    NtppI,
}

impl Rcc8 {
    pub const ALL: [Rcc8; 8] = [Rcc8::Dc, Rcc8::Ec, Rcc8::Po, Rcc8::Eq, Rcc8::Tpp, Rcc8::Ntpp, Rcc8::TppI, Rcc8::NtppI];

    pub fn symbol(self) -> &'static str {
        match self {
            Rcc8::Dc => "dc",
            Rcc8::Ec => "ec",
            Rcc8::Po => "po",
            Rcc8::Eq => "eq",
            Rcc8::Tpp => "tpp",
            Rcc8::Ntpp => "ntpp",
            Rcc8::TppI => "tpp_i",
            Rcc8::NtppI => "ntpp_i",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.symbol() == s)
    }

    pub fn converse(self) -> Self {
        match self {
            Rcc8::Tpp => Rcc8::TppI,
            Rcc8::TppI => Rcc8::Tpp,
            Rcc8::Ntpp => Rcc8::NtppI,
            Rcc8::NtppI => Rcc8::Ntpp,
            other => other,
        }
    }

    /// `a` is a (possibly improper) part of `b`.
    pub fn is_part(self) -> bool {
        matches!(self, Rcc8::Tpp | Rcc8::Ntpp | Rcc8::Eq)
    }
}

impl fmt::Display for Rcc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// RCC-8 relation of rectangle `a` w.r.t. rectangle `b` (closed regions).
pub fn rcc8(a: &Box2, b: &Box2) -> Rcc8 {
    let axes = [(a.x_extent(), b.x_extent()), (a.y_extent(), b.y_extent())];
    if axes.iter().any(|((alo, ahi), (blo, bhi))| ahi < blo || bhi < alo) {
        return Rcc8::Dc;
    }
    if axes.iter().any(|((alo, ahi), (blo, bhi))| ahi == blo || bhi == alo) {
        return Rcc8::Ec;
    }
    if a == b {
        return Rcc8::Eq;
    }
    let inside = |p: &Box2, q: &Box2| {
        p.xmin() >= q.xmin() && p.xmax() <= q.xmax() && p.ymin() >= q.ymin() && p.ymax() <= q.ymax()
    };
    let strictly_inside =
        |p: &Box2, q: &Box2| p.xmin() > q.xmin() && p.xmax() < q.xmax() && p.ymin() > q.ymin() && p.ymax() < q.ymax();
    if inside(a, b) {
        if strictly_inside(a, b) {
            Rcc8::Ntpp
        } else {
            Rcc8::Tpp
        }
    } else if inside(b, a) {
        if strictly_inside(b, a) {
            Rcc8::NtppI
        } else {
            Rcc8::TppI
        }
    } else {
        Rcc8::Po
    }
}

/// Topology of a point percept (a degenerate region) w.r.t. a rectangle:
/// `ntpp` in the interior, `tpp` on the boundary, `dc` outside.
pub fn rcc8_point(p: &Point2, b: &Box2) -> Rcc8 {
    if !b.contains_point(p) {
        Rcc8::Dc
    } else if p.x > b.xmin() && p.x < b.xmax() && p.y > b.ymin() && p.y < b.ymax() {
        Rcc8::Ntpp
    } else {
        Rcc8::Tpp
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Horizontal,
    Vertical,
    Depth,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Horizontal, Axis::Vertical, Axis::Depth];

    pub fn name(self) -> &'static str {
        match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
            Axis::Depth => "depth",
        }
    }
}

/// Which end of a coordinate axis reads as "above" / "left" / "closer".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisPolarity {
    /// Smaller coordinates come first (image rows, x to the right, depth).
    #[default]
    Ascending,
    /// Larger coordinates come first (floorplan y pointing up).
    Descending,
}

/// Seven-way order of one extent w.r.t. another along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisOrder {
    Before,
    AlongBefore,
    OverlapsBefore,
    Equal,
    OverlapsAfter,
    AlongAfter,
    After,
}

impl AxisOrder {
    pub const ALL: [AxisOrder; 7] = [
        AxisOrder::Before,
        AxisOrder::AlongBefore,
        AxisOrder::OverlapsBefore,
        AxisOrder::Equal,
        AxisOrder::OverlapsAfter,
        AxisOrder::AlongAfter,
        AxisOrder::After,
    ];

    pub fn converse(self) -> Self {
        match self {
            AxisOrder::Before => AxisOrder::After,
            AxisOrder::AlongBefore => AxisOrder::AlongAfter,
            AxisOrder::OverlapsBefore => AxisOrder::OverlapsAfter,
            AxisOrder::Equal => AxisOrder::Equal,
            AxisOrder::OverlapsAfter => AxisOrder::OverlapsBefore,
            AxisOrder::AlongAfter => AxisOrder::AlongBefore,
            AxisOrder::After => AxisOrder::Before,
        }
    }
}

/// One relation of the vertical, horizontal or depth position family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PosRelation1D {
    pub axis: Axis,
    pub order: AxisOrder,
}

impl PosRelation1D {
    pub fn symbol(self) -> &'static str {
        use AxisOrder::*;
        match (self.axis, self.order) {
            (Axis::Vertical, Before) => "above",
            (Axis::Vertical, AlongBefore) => "along_above",
            (Axis::Vertical, OverlapsBefore) => "overlaps_above",
            (Axis::Vertical, Equal) => "vertically_equal",
            (Axis::Vertical, OverlapsAfter) => "overlaps_below",
            (Axis::Vertical, AlongAfter) => "along_below",
            (Axis::Vertical, After) => "below",
            (Axis::Horizontal, Before) => "left",
            (Axis::Horizontal, AlongBefore) => "along_left",
            (Axis::Horizontal, OverlapsBefore) => "overlaps_left",
            (Axis::Horizontal, Equal) => "horizontally_equal",
            (Axis::Horizontal, OverlapsAfter) => "overlaps_right",
            (Axis::Horizontal, AlongAfter) => "along_right",
            (Axis::Horizontal, After) => "right",
            (Axis::Depth, Before) => "closer",
            (Axis::Depth, AlongBefore) => "along_closer",
            (Axis::Depth, OverlapsBefore) => "overlaps_closer",
            (Axis::Depth, Equal) => "distance_equal",
            (Axis::Depth, OverlapsAfter) => "overlaps_further",
            (Axis::Depth, AlongAfter) => "along_further",
            (Axis::Depth, After) => "further",
        }
    }

    pub fn from_symbol(axis: Axis, s: &str) -> Option<Self> {
        AxisOrder::ALL.into_iter().map(|order| PosRelation1D { axis, order }).find(|r| r.symbol() == s)
    }

    pub fn converse(self) -> Self {
        PosRelation1D { axis: self.axis, order: self.order.converse() }
    }
}

impl fmt::Display for PosRelation1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Coarsens an Allen relation between two extents to the seven-way axis order.
///
/// Containment-like relations (starts, during, finishes and their inverses)
/// are split by midpoint order; an exact midpoint tie reads as equal.
pub fn coarsen_allen(rel: AllenRelation, a: (f64, f64), b: (f64, f64)) -> AxisOrder {
    use AllenRelation as A;
    match rel {
        A::Before => AxisOrder::Before,
        A::Meets => AxisOrder::AlongBefore,
        A::Overlaps => AxisOrder::OverlapsBefore,
        A::Equal => AxisOrder::Equal,
        A::OverlappedBy => AxisOrder::OverlapsAfter,
        A::MetBy => AxisOrder::AlongAfter,
        A::After => AxisOrder::After,
        A::Starts | A::During | A::Finishes | A::StartedBy | A::Contains | A::FinishedBy => {
            // Compare doubled midpoints to stay exact.
            let (ma, mb) = (a.0 + a.1, b.0 + b.1);
            if ma < mb {
                AxisOrder::OverlapsBefore
            } else if ma > mb {
                AxisOrder::OverlapsAfter
            } else {
                AxisOrder::Equal
            }
        }
    }
}

/// Position of extent `a` w.r.t. extent `b` along `axis`. Extents are `(lo, hi)`
/// in raw coordinates with `lo < hi`.
pub fn position_1d(a: (f64, f64), b: (f64, f64), axis: Axis, polarity: AxisPolarity) -> PosRelation1D {
    let flip = |(lo, hi): (f64, f64)| match polarity {
        AxisPolarity::Ascending => (lo, hi),
        AxisPolarity::Descending => (-hi, -lo),
    };
    let (a, b) = (flip(a), flip(b));
    let rel = allen_endpoints(a.0, a.1, b.0, b.1);
    PosRelation1D { axis, order: coarsen_allen(rel, a, b) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionTriple {
    pub vertical: PosRelation1D,
    pub horizontal: PosRelation1D,
    pub depth: Option<PosRelation1D>,
}

/// Per-axis position of observation `a` w.r.t. `b`. The depth component is
/// present only when both observations carry depth; scalar depths are widened
/// by `eps_depth` into extents.
pub fn relative_position(
    a: &Observation,
    b: &Observation,
    vertical_polarity: AxisPolarity,
    eps_depth: f64,
) -> Result<PositionTriple, GeometryError> {
    let box_of = |o: &Observation, which: &str| {
        o.bbox.ok_or(GeometryError::GeometryMissing { entity: which.to_string(), what: "box", at: o.at })
    };
    let (ba, bb) = (box_of(a, "a")?, box_of(b, "b")?);
    Ok(PositionTriple {
        vertical: position_1d(ba.y_extent(), bb.y_extent(), Axis::Vertical, vertical_polarity),
        horizontal: position_1d(ba.x_extent(), bb.x_extent(), Axis::Horizontal, AxisPolarity::Ascending),
        depth: depth_position(a, b, eps_depth),
    })
}

fn depth_position(a: &Observation, b: &Observation, eps_depth: f64) -> Option<PosRelation1D> {
    if let (Some(ea), Some(eb)) = (a.depth_extent, b.depth_extent) {
        return Some(position_1d(ea, eb, Axis::Depth, AxisPolarity::Ascending));
    }
    let (da, db) = (a.depth?, b.depth?);
    if eps_depth > 0.0 {
        let widen = |d: f64| (d - eps_depth, d + eps_depth);
        Some(position_1d(widen(da), widen(db), Axis::Depth, AxisPolarity::Ascending))
    } else {
        let order = match da.total_cmp(&db) {
            std::cmp::Ordering::Less => AxisOrder::Before,
            std::cmp::Ordering::Equal => AxisOrder::Equal,
            std::cmp::Ordering::Greater => AxisOrder::After,
        };
        Some(PosRelation1D { axis: Axis::Depth, order })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistRelation {
    Closer,
    Further,
    Same,
}

impl DistRelation {
    pub const ALL: [DistRelation; 3] = [DistRelation::Closer, DistRelation::Further, DistRelation::Same];

    pub fn symbol(self) -> &'static str {
        match self {
            DistRelation::Closer => "closer",
            DistRelation::Further => "further",
            DistRelation::Same => "same",
        }
    }
}

/// Is `p1` closer to `p3` than `p2` is?
pub fn relative_distance(p1: &Point2, p2: &Point2, p3: &Point2, eps_dist: f64) -> DistRelation {
    let (d1, d2) = (p1.distance(p3), p2.distance(p3));
    if d1 < d2 - eps_dist {
        DistRelation::Closer
    } else if d1 > d2 + eps_dist {
        DistRelation::Further
    } else {
        DistRelation::Same
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeRelation {
    Smaller,
    Bigger,
    Same,
}

impl SizeRelation {
    pub const ALL: [SizeRelation; 3] = [SizeRelation::Smaller, SizeRelation::Bigger, SizeRelation::Same];

    pub fn symbol(self) -> &'static str {
        match self {
            SizeRelation::Smaller => "smaller",
            SizeRelation::Bigger => "bigger",
            SizeRelation::Same => "same",
        }
    }
}

/// Area comparison with relative tolerance: `same` iff the areas differ by at
/// most `eps_size` times the larger one.
pub fn relative_size(a: &Box2, b: &Box2, eps_size: f64) -> SizeRelation {
    let (aa, ab) = (a.area(), b.area());
    if (aa - ab).abs() <= eps_size * aa.max(ab) {
        SizeRelation::Same
    } else if aa < ab {
        SizeRelation::Smaller
    } else {
        SizeRelation::Bigger
    }
}
