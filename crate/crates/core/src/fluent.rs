//! Fluents, relation symbols and the holdings that pair them with a span.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ModelError;
use crate::motion::{MoveRelation, SizeChange, SizeMotionRelation};
use crate::spatial::{Axis, DistRelation, PosRelation1D, Rcc8, SizeRelation};
use crate::time::Span;

/// A relation family; fixes the fluent's arity and the admissible symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Topology,
    Position(Axis),
    RelativeDistance,
    RelativeSize,
    Move,
    SizeMotion(Axis),
    AtLocation,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Topology,
        Family::Position(Axis::Vertical),
        Family::Position(Axis::Horizontal),
        Family::Position(Axis::Depth),
        Family::RelativeDistance,
        Family::RelativeSize,
        Family::Move,
        Family::SizeMotion(Axis::Horizontal),
        Family::SizeMotion(Axis::Vertical),
        Family::SizeMotion(Axis::Depth),
        Family::AtLocation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Topology => "topology",
            Family::Position(Axis::Vertical) => "position_v",
            Family::Position(Axis::Horizontal) => "position_h",
            Family::Position(Axis::Depth) => "position_d",
            Family::RelativeDistance => "rel_distance",
            Family::RelativeSize => "rel_size",
            Family::Move => "move",
            Family::SizeMotion(Axis::Horizontal) => "size_motion_h",
            Family::SizeMotion(Axis::Vertical) => "size_motion_v",
            Family::SizeMotion(Axis::Depth) => "size_motion_d",
            Family::AtLocation => "at_location",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::RelativeDistance => 3,
            Family::SizeMotion(_) => 1,
            _ => 2,
        }
    }

    /// Every relation symbol the family admits.
    pub fn relations(self) -> Vec<Relation> {
        match self {
            Family::Topology => Rcc8::ALL.into_iter().map(Relation::Topology).collect(),
            Family::Position(axis) => crate::spatial::AxisOrder::ALL
                .into_iter()
                .map(|order| Relation::Position(PosRelation1D { axis, order }))
                .collect(),
            Family::RelativeDistance => DistRelation::ALL.into_iter().map(Relation::Distance).collect(),
            Family::RelativeSize => SizeRelation::ALL.into_iter().map(Relation::Size).collect(),
            Family::Move => MoveRelation::ALL.into_iter().map(Relation::Move).collect(),
            Family::SizeMotion(axis) => SizeChange::ALL
                .into_iter()
                .map(|change| Relation::SizeMotion(SizeMotionRelation { axis, change }))
                .collect(),
            Family::AtLocation => vec![Relation::Holds],
        }
    }

    pub fn parse_relation(self, symbol: &str) -> Result<Relation, ModelError> {
        self.relations().into_iter().find(|r| r.symbol() == symbol).ok_or_else(|| ModelError::UnknownRelation {
            family: self.name().to_string(),
            relation: symbol.to_string(),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| ModelError::UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A relation value of some family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Topology(Rcc8),
    Position(PosRelation1D),
    Distance(DistRelation),
    Size(SizeRelation),
    Move(MoveRelation),
    SizeMotion(SizeMotionRelation),
    /// The value of a propositional fluent that is true.
    Holds,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Topology(r) => r.symbol(),
            Relation::Position(r) => r.symbol(),
            Relation::Distance(r) => r.symbol(),
            Relation::Size(r) => r.symbol(),
            Relation::Move(r) => r.symbol(),
            Relation::SizeMotion(r) => r.change.symbol(),
            Relation::Holds => "true",
        }
    }

    pub fn belongs_to(&self, family: Family) -> bool {
        match (self, family) {
            (Relation::Topology(_), Family::Topology)
            | (Relation::Distance(_), Family::RelativeDistance)
            | (Relation::Size(_), Family::RelativeSize)
            | (Relation::Move(_), Family::Move)
            | (Relation::Holds, Family::AtLocation) => true,
            (Relation::Position(r), Family::Position(axis)) => r.axis == axis,
            (Relation::SizeMotion(r), Family::SizeMotion(axis)) => r.axis == axis,
            _ => false,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A relation-valued fluent over ordered entity or region identifiers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fluent {
    family: Family,
    args: Vec<String>,
}

impl Fluent {
    pub fn new<S: Into<String>>(family: Family, args: impl IntoIterator<Item = S>) -> Result<Self, ModelError> {
        let args: Vec<String> = args.into_iter().map(Into::into).collect();
        if args.len() != family.arity() {
            return Err(ModelError::ArityMismatch {
                family: family.name().to_string(),
                expected: family.arity(),
                got: args.len(),
            });
        }
        Ok(Fluent { family, args })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn args(&self) -> &[String] {
        &self.args
    }
}

impl fmt::Display for Fluent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.name(), self.args.join(","))
    }
}

impl FromStr for Fluent {
    type Err = ModelError;

    /// Parses `family(arg1,arg2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(|| ModelError::UnknownFamily(s.to_string()))?;
        let inner = rest.strip_suffix(')').ok_or_else(|| ModelError::UnknownFamily(s.to_string()))?;
        let family: Family = name.trim().parse()?;
        let args: Vec<&str> = inner.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        Fluent::new(family, args)
    }
}

impl<'de> Deserialize<'de> for Fluent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            family: Family,
            args: Vec<String>,
        }
        let r = Raw::deserialize(d)?;
        Fluent::new(r.family, r.args).map_err(serde::de::Error::custom)
    }
}

/// `Holds(fluent, relation, span)` with a maximal span.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Holding {
    pub fluent: Fluent,
    pub relation: Relation,
    pub span: Span,
}

impl Holding {
    pub fn new(fluent: Fluent, relation: Relation, span: Span) -> Result<Self, ModelError> {
        if !relation.belongs_to(fluent.family()) {
            return Err(ModelError::FamilyMismatch {
                family: fluent.name().to_string(),
                relation: relation.symbol().to_string(),
            });
        }
        Ok(Holding { fluent, relation, span })
    }

    /// Deterministic ordering: span start, fluent name, args, relation, span end.
    pub fn sort_key(&self) -> impl Ord + '_ {
        (self.span.start(), self.fluent.name(), self.fluent.args(), self.relation.symbol(), self.span.end())
    }
}

impl fmt::Display for Holding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "holds({}, {}, {})", self.fluent, self.relation, self.span)
    }
}

impl Serialize for Holding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            fluent: &'a Fluent,
            relation: &'static str,
            span: &'a Span,
        }
        Raw { fluent: &self.fluent, relation: self.relation.symbol(), span: &self.span }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Holding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            fluent: Fluent,
            relation: String,
            span: Span,
        }
        let r = Raw::deserialize(d)?;
        let relation = r.fluent.family().parse_relation(&r.relation).map_err(serde::de::Error::custom)?;
        Holding::new(r.fluent, relation, r.span).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::TimePoint;

    #[test]
    fn arity_is_checked() {
        assert!(Fluent::new(Family::RelativeDistance, ["a", "b"]).is_err());
        assert!(Fluent::new(Family::RelativeDistance, ["a", "b", "c"]).is_ok());
        assert!(Fluent::new(Family::SizeMotion(Axis::Vertical), ["a"]).is_ok());
    }

    #[test]
    fn family_mismatch() {
        let f = Fluent::new(Family::RelativeDistance, ["a", "b", "c"]).unwrap();
        let err = Holding::new(f, Relation::Topology(Rcc8::Po), Span::At(TimePoint::ZERO)).unwrap_err();
        assert!(matches!(err, ModelError::FamilyMismatch { .. }));
        let v = Fluent::new(Family::Position(Axis::Vertical), ["a", "b"]).unwrap();
        let left = Family::Position(Axis::Horizontal).parse_relation("left").unwrap();
        assert!(Holding::new(v, left, Span::At(TimePoint::ZERO)).is_err());
    }

    #[test]
    fn fluent_syntax() {
        let f: Fluent = "topology(irene_face, right_quadrant)".parse().unwrap();
        assert_eq!(f.to_string(), "topology(irene_face,right_quadrant)");
        assert!("topology(a)".parse::<Fluent>().is_err());
        assert!("nonsense(a,b)".parse::<Fluent>().is_err());
        assert!("topology a b".parse::<Fluent>().is_err());
    }

    #[test]
    fn every_symbol_parses_back() {
        for family in Family::ALL {
            let rels = family.relations();
            for r in &rels {
                assert!(r.belongs_to(family));
                assert_eq!(family.parse_relation(r.symbol()).unwrap(), *r);
            }
            let mut symbols: Vec<_> = rels.iter().map(|r| r.symbol()).collect();
            symbols.dedup();
            assert_eq!(symbols.len(), rels.len(), "{family}");
        }
    }
}
