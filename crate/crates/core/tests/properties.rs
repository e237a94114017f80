use proptest::prelude::*;

use scenetalk_core::fluent::{Family, Fluent, Holding, Relation};
use scenetalk_core::geometry::{Box2, Observation, Point2, Track, TrackKind};
use scenetalk_core::motion::{movement, MoveRelation, Window};
use scenetalk_core::narrative::{expand, maximal_intervals, FrameFacts};
use scenetalk_core::schemas::{detect_containment, ContainmentVariant};
use scenetalk_core::spatial::{position_1d, rcc8, Axis, AxisPolarity, Rcc8};
use scenetalk_core::store::{EntityKind, HoldsQuery, NarrativeStore};
use scenetalk_core::temporal::{allen, compose_allen, AllenRelation};
use scenetalk_core::time::{Duration, Interval, Span, TimePoint};

fn boxes() -> impl Strategy<Value = Box2> {
    (-50i32..50, 1i32..40, -50i32..50, 1i32..40)
        .prop_map(|(x, w, y, h)| Box2::new(x as f64, (x + w) as f64, y as f64, (y + h) as f64).unwrap())
}

fn intervals() -> impl Strategy<Value = Interval> {
    (0i64..100, 1i64..50).prop_map(|(s, d)| {
        Interval::new(TimePoint::from_micros(s).unwrap(), TimePoint::from_micros(s + d).unwrap()).unwrap()
    })
}

fn t(i: usize) -> TimePoint {
    TimePoint::secs(i as f64 * 0.5)
}

/// Frames of a single binary fluent whose value cycles through three symbols
/// or is absent.
fn frame_series() -> impl Strategy<Value = Vec<FrameFacts>> {
    prop::collection::vec(0u8..4, 1..60).prop_map(|vals| {
        let fluent = Fluent::new(Family::Topology, ["a", "b"]).unwrap();
        vals.iter()
            .enumerate()
            .map(|(i, v)| {
                let mut f = FrameFacts::new(t(i));
                let r = [Rcc8::Dc, Rcc8::Po, Rcc8::Ntpp];
                if let Some(rel) = r.get(*v as usize) {
                    f.insert(fluent.clone(), Relation::Topology(*rel));
                }
                f
            })
            .collect()
    })
}

fn fresh_store() -> NarrativeStore {
    let mut s = NarrativeStore::new(TimePoint::ZERO, TimePoint::secs(100.0)).unwrap();
    s.register_entity("a", EntityKind::Object).unwrap();
    s.register_entity("b", EntityKind::Region).unwrap();
    s
}

fn spans() -> impl Strategy<Value = Vec<(u8, Span)>> {
    prop::collection::vec((0u8..3, 0u32..80, 0u32..10), 0..25).prop_map(|v| {
        v.into_iter()
            .map(|(r, s, d)| {
                let start = TimePoint::secs(s as f64);
                (r, Span::from_bounds(start, TimePoint::secs((s + d) as f64)).unwrap())
            })
            .collect()
    })
}

fn rel(i: u8) -> Relation {
    Relation::Topology([Rcc8::Dc, Rcc8::Po, Rcc8::Ntpp][i as usize])
}

proptest! {
    #[test]
    fn rcc8_converse(a in boxes(), b in boxes()) {
        prop_assert_eq!(rcc8(&b, &a), rcc8(&a, &b).converse());
        prop_assert_eq!(rcc8(&a, &a), Rcc8::Eq);
    }

    #[test]
    fn position_converse(a in boxes(), b in boxes(), descending in any::<bool>()) {
        let pol = if descending { AxisPolarity::Descending } else { AxisPolarity::Ascending };
        let ab = position_1d(a.y_extent(), b.y_extent(), Axis::Vertical, pol);
        let ba = position_1d(b.y_extent(), a.y_extent(), Axis::Vertical, pol);
        prop_assert_eq!(ba, ab.converse());
    }

    #[test]
    fn allen_converse_and_composition(a in intervals(), b in intervals(), c in intervals()) {
        prop_assert_eq!(allen(&b, &a), allen(&a, &b).converse());
        prop_assert!(compose_allen(allen(&a, &b), allen(&b, &c)).contains(allen(&a, &c)));
        prop_assert_eq!(allen(&a, &a), AllenRelation::Equal);
    }

    #[test]
    fn reconstruction(frames in frame_series()) {
        let times: Vec<_> = frames.iter().map(|f| f.at).collect();
        prop_assert_eq!(expand(&maximal_intervals(&frames, 0), &times), frames);
    }

    #[test]
    fn min_hold_monotone(frames in frame_series(), lo in 0usize..6, extra in 0usize..6) {
        let small = maximal_intervals(&frames, lo);
        for h in maximal_intervals(&frames, lo + extra) {
            prop_assert!(small.contains(&h));
        }
    }

    #[test]
    fn store_insertion_order_irrelevant(items in spans()) {
        let fluent = Fluent::new(Family::Topology, ["a", "b"]).unwrap();
        let build = |order: &[(u8, Span)]| {
            let mut s = fresh_store();
            for (r, span) in order {
                s.insert_holding(Holding::new(fluent.clone(), rel(*r), *span).unwrap()).unwrap();
            }
            s
        };
        let forward = build(&items);
        let mut rev = items.clone();
        rev.reverse();
        prop_assert_eq!(&forward, &build(&rev));
        for r in 0..3 {
            let s = forward.spans(&fluent, rel(r));
            for w in s.windows(2) {
                prop_assert!(w[0].end() < w[1].start());
            }
        }
        for (r, span) in &items {
            let covered = forward.query_holds(&HoldsQuery::fluent(&fluent).relation(rel(*r)).at(span.start()));
            prop_assert_eq!(covered.len(), 1);
        }
    }

    #[test]
    fn store_json_round_trip(items in spans()) {
        let fluent = Fluent::new(Family::Topology, ["a", "b"]).unwrap();
        let mut s = fresh_store();
        for (r, span) in &items {
            s.insert_holding(Holding::new(fluent.clone(), rel(*r), *span).unwrap()).unwrap();
        }
        let json = serde_json::to_string(&s).unwrap();
        let back: NarrativeStore = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn movement_symmetric_and_reversible(
        pa in prop::collection::vec((-20.0f64..20.0, -20.0f64..20.0), 2),
        pb in prop::collection::vec((-20.0f64..20.0, -20.0f64..20.0), 2),
        eps in 0.0f64..2.0,
    ) {
        let track = |id: &str, pts: &[(f64, f64)]| {
            let obs = pts.iter().enumerate().map(|(i, (x, y))| Observation::with_point(t(i), Point2::new(*x, *y))).collect();
            Track::new(id, TrackKind::Object, obs).unwrap()
        };
        let (a, b) = (track("a", &pa), track("b", &pb));
        let w = Window::new(t(0), t(1)).unwrap();
        let gap = Duration::from_secs(1.0);
        let fwd = movement(&a, &b, w, eps, gap).unwrap();
        prop_assert_eq!(fwd, movement(&b, &a, w, eps, gap).unwrap());
        let back = movement(&a, &b, w.reversed(), eps, gap).unwrap();
        let expected = match fwd {
            MoveRelation::Approaching => MoveRelation::Receding,
            MoveRelation::Receding => MoveRelation::Approaching,
            MoveRelation::Static => MoveRelation::Static,
        };
        prop_assert_eq!(back, expected);
    }

    #[test]
    fn containment_threshold_stability(side in 1.0f64..99.0, lo in 0.05f64..1.0, raise in 0.0f64..0.5) {
        let frames = vec![t(0), t(1), t(2)];
        let mut s = NarrativeStore::with_frames(frames).unwrap();
        s.register_entity("e", EntityKind::Object).unwrap();
        s.register_entity("room", EntityKind::Region).unwrap();
        let f = Fluent::new(Family::Topology, ["e", "room"]).unwrap();
        let span = Span::from_bounds(t(0), t(2)).unwrap();
        s.insert_holding(Holding::new(f, Relation::Topology(Rcc8::Ntpp), span).unwrap()).unwrap();
        let room = Box2::new(0.0, 100.0, 0.0, 100.0).unwrap();
        let inner = Box2::new(0.5, 0.5 + side, 0.5, 0.5 + side).unwrap();
        let geom = |id: &str, _: TimePoint| Some(if id == "room" { room } else { inner });
        let at_lo = detect_containment(&s, "e", "room", lo, Duration::from_secs(1.0), geom)[0].variant;
        let at_hi = detect_containment(&s, "e", "room", lo + raise, Duration::from_secs(1.0), geom)[0].variant;
        prop_assert!(!(at_lo == ContainmentVariant::In && at_hi == ContainmentVariant::Occupies));
    }
}
