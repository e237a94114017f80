//! RCC-8 on rectangles checked against point-set reasoning on a half-unit grid.
//!
//! Boxes have integer corners, so every boundary lies on the grid and every
//! non-empty interior overlap contains a grid point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scenetalk_core::geometry::Box2;
use scenetalk_core::spatial::{rcc8, Rcc8};

type IBox = (i32, i32, i32, i32);

fn grid(b: IBox) -> impl Iterator<Item = (i32, i32)> {
    let (x0, x1, y0, y1) = b;
    (2 * x0..=2 * x1).flat_map(move |x| (2 * y0..=2 * y1).map(move |y| (x, y)))
}

/// Doubled coordinates, so `(x, y)` stands for `(x / 2, y / 2)`.
fn closed(b: IBox, (x, y): (i32, i32)) -> bool {
    2 * b.0 <= x && x <= 2 * b.1 && 2 * b.2 <= y && y <= 2 * b.3
}

fn open(b: IBox, (x, y): (i32, i32)) -> bool {
    2 * b.0 < x && x < 2 * b.1 && 2 * b.2 < y && y < 2 * b.3
}

fn oracle(a: IBox, b: IBox) -> Rcc8 {
    let touch = grid(a).any(|p| closed(b, p));
    let overlap = grid(a).any(|p| open(a, p) && open(b, p));
    let a_in_b = grid(a).all(|p| closed(b, p));
    let b_in_a = grid(b).all(|p| closed(a, p));
    let a_strict = grid(a).all(|p| open(b, p));
    let b_strict = grid(b).all(|p| open(a, p));
    match (touch, overlap, a_in_b, b_in_a) {
        (false, ..) => Rcc8::Dc,
        (true, false, ..) => Rcc8::Ec,
        (_, _, true, true) => Rcc8::Eq,
        (_, _, true, false) if a_strict => Rcc8::Ntpp,
        (_, _, true, false) => Rcc8::Tpp,
        (_, _, false, true) if b_strict => Rcc8::NtppI,
        (_, _, false, true) => Rcc8::TppI,
        _ => Rcc8::Po,
    }
}

fn to_box(b: IBox) -> Box2 {
    Box2::new(b.0 as f64, b.1 as f64, b.2 as f64, b.3 as f64).unwrap()
}

fn all_boxes(max: i32) -> Vec<IBox> {
    let spans: Vec<(i32, i32)> = (0..=max).flat_map(|lo| ((lo + 1)..=max).map(move |hi| (lo, hi))).collect();
    spans.iter().flat_map(|&(x0, x1)| spans.iter().map(move |&(y0, y1)| (x0, x1, y0, y1))).collect()
}

#[test]
fn exhaustive_small_grid() {
    let boxes = all_boxes(4);
    let mut seen = std::collections::BTreeSet::new();
    for &a in &boxes {
        for &b in &boxes {
            let want = oracle(a, b);
            assert_eq!(rcc8(&to_box(a), &to_box(b)), want, "{a:?} vs {b:?}");
            seen.insert(want);
        }
    }
    assert_eq!(seen.len(), 8, "every relation is exercised");
}

#[test]
fn random_pairs_on_larger_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ce7e);
    let mut ibox = || {
        let (x0, y0) = (rng.random_range(0..12), rng.random_range(0..12));
        (x0, rng.random_range(x0 + 1..=12), y0, rng.random_range(y0 + 1..=12))
    };
    for _ in 0..20_000 {
        let (a, b) = (ibox(), ibox());
        assert_eq!(rcc8(&to_box(a), &to_box(b)), oracle(a, b), "{a:?} vs {b:?}");
    }
}
