mod common;

use common::slots::{random_op, replay, SlotOp};
use flowsched::timeline::{Backend, FreeRun, Quantizer, SignedSlotArray, SlotTimeline};
use flowsched::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn backends_match_array_on_random_histories() {
    let mut rng = StdRng::seed_from_u64(1);
    for round in 0..200 {
        let slots = rng.gen_range(1..=64);
        let capacity = rng.gen_range(1..=12);
        let initial: Vec<i64> = (0..slots).map(|_| rng.gen_range(0..=capacity)).collect();
        let ops: Vec<SlotOp> = (0..200).map(|_| random_op(&mut rng, slots, capacity)).collect();
        replay(&initial, capacity, &ops).unwrap_or_else(|e| panic!("round {round}: {e}"));
    }
}

fn op_strategy(slots: usize, capacity: i64) -> impl Strategy<Value = SlotOp> {
    (1..=slots, 1..=slots, -capacity..=capacity, 0..5u8).prop_map(move |(x, y, v, kind)| {
        let (a, b) = (x.min(y), x.max(y));
        match kind {
            0 => SlotOp::Add(a, b, v),
            1 => SlotOp::Min(a, b),
            2 => SlotOp::Max(a, b),
            3 => SlotOp::BestFit(a, b, v.abs()),
            _ => SlotOp::Exact(a, b, v.abs()),
        }
    })
}

fn history() -> impl Strategy<Value = (Vec<i64>, i64, Vec<SlotOp>)> {
    (1usize..=40, 1i64..=10).prop_flat_map(|(slots, capacity)| {
        (
            proptest::collection::vec(0..=capacity, slots),
            Just(capacity),
            proptest::collection::vec(op_strategy(slots, capacity), 0..80),
        )
    })
}

proptest! {
    #[test]
    fn backends_agree_with_array((initial, capacity, ops) in history()) {
        prop_assert_eq!(replay(&initial, capacity, &ops), Ok(()));
    }

    #[test]
    fn failed_update_leaves_values_alone(values in proptest::collection::vec(0i64..=10, 1..20), delta in 1i64..=10) {
        let slots = values.len();
        for backend in common::slots::BACKENDS {
            let mut tl = SlotTimeline::from_values(values.clone(), 1.0, 10, backend).unwrap();
            let before = tl.values();
            let down = tl.range_add(1, slots, -delta);
            prop_assert_eq!(down.is_ok(), values.iter().all(|&v| v >= delta));
            if down.is_err() {
                prop_assert_eq!(tl.values(), before.clone());
            }
        }
    }

    #[test]
    fn longest_free_run_matches_scan(
        reservations in proptest::collection::vec((1usize..=24, 1usize..=24), 0..8),
        cancels in 0usize..4,
        query in (1usize..=24, 1usize..=24),
    ) {
        let slots = 24;
        let mut arr = SignedSlotArray::new(slots, 1).unwrap();
        let mut count = vec![0; slots + 1];
        let ranges: Vec<(usize, usize)> = reservations.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
        for &(a, b) in &ranges {
            arr.reserve(a, b).unwrap();
            (a..=b).for_each(|t| count[t] += 1);
        }
        for &(a, b) in ranges.iter().take(cancels) {
            arr.cancel(a, b).unwrap();
            (a..=b).for_each(|t| count[t] -= 1);
        }
        let (a, b) = (query.0.min(query.1), query.0.max(query.1));
        let mut longest = 0;
        let mut run = 0;
        for &c in &count[a..=b] {
            run = if c == 0 { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        let got = arr.longest_free_interval(a, b).unwrap();
        prop_assert_eq!(got.len, longest);
        if got.len > 0 {
            prop_assert!(got.start >= a && got.start + got.len - 1 <= b);
            prop_assert!((got.start..got.start + got.len).all(|t| count[t] == 0));
        }
    }
}

#[test]
fn reference_timeline_values() {
    for backend in common::slots::BACKENDS {
        let mut tl = SlotTimeline::new(4, 1.0, 10, backend).unwrap();
        tl.range_add(2, 3, -4).unwrap();
        assert_eq!(tl.values(), vec![10, 6, 6, 10]);
        tl.range_add(1, 4, 0).unwrap();
        assert_eq!(tl.values(), vec![10, 6, 6, 10]);
        assert_eq!(tl.range_min(1, 4).unwrap(), 6);
        assert_eq!(tl.range_min(3, 3).unwrap(), 6);
        assert_eq!(tl.range_max(2, 4).unwrap(), (10, 4));
        assert_eq!(tl.range_add(0, 2, 1), Err(Error::SlotOutOfRange { slot: 0, slots: 4 }));
        assert_eq!(tl.range_min(3, 2), Err(Error::ReversedRange { a: 3, b: 2 }));
    }
    let flat = SlotTimeline::from_values(vec![5; 6], 1.0, 10, Backend::SegmentTree).unwrap();
    assert_eq!(flat.range_max(2, 6).unwrap(), (5, 2));
}

#[test]
fn grouped_searches() {
    let tl = SlotTimeline::from_values(vec![9, 3, 5, 8], 1.0, 10, Backend::grouped_sorted()).unwrap();
    assert_eq!(tl.find_best_fit(1, 4, 4).unwrap(), Some(3));
    assert_eq!(tl.find_best_fit(1, 4, 10).unwrap(), None);
    assert_eq!(tl.find_exact(1, 4, 5).unwrap(), Some(3));
    assert_eq!(tl.find_exact(1, 4, 7).unwrap(), None);
    let zero = SlotTimeline::from_values(vec![4, 0, 2], 1.0, 10, Backend::grouped_sorted()).unwrap();
    assert_eq!(zero.find_best_fit(1, 3, 0).unwrap(), Some(2));
    let hashed = SlotTimeline::from_values(vec![9, 3, 5, 8], 1.0, 10, Backend::grouped_hashed()).unwrap();
    assert!(matches!(hashed.find_best_fit(1, 4, 4), Err(Error::Unsupported(_))));
    assert_eq!(hashed.find_exact(1, 4, 8).unwrap(), Some(4));
}

#[test]
fn free_runs_reference() {
    let mut arr = SignedSlotArray::new(6, 1).unwrap();
    arr.reserve(3, 3).unwrap();
    assert_eq!(arr.longest_free_interval(1, 6).unwrap(), FreeRun { start: 4, len: 3 });
    let empty = SignedSlotArray::new(6, 1).unwrap();
    assert_eq!(empty.longest_free_interval(2, 5).unwrap(), FreeRun { start: 2, len: 4 });
    let mut full = SignedSlotArray::new(4, 2).unwrap();
    full.reserve(1, 4).unwrap();
    assert_eq!(full.longest_free_interval(1, 4).unwrap().len, 0);
}

#[test]
fn segment_tree_touches_logarithmically_many_nodes() {
    let slots = 1 << 12;
    let mut tl = SlotTimeline::new(slots, 1.0, 100, Backend::SegmentTree).unwrap();
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..200 {
        let a = rng.gen_range(1..=slots);
        let b = rng.gen_range(a..=slots);
        let seg = tl.segment_tree().unwrap();
        seg.reset_touched();
        tl.range_min(a, b).unwrap();
        // two root-to-leaf boundary paths plus their siblings
        assert!(tl.segment_tree().unwrap().touched_nodes() <= 4 * 13, "[{a}, {b}]");
        let _ = tl.range_add(a, b, -1);
    }
}

#[test]
fn quantizer_rounds_demand_up_and_supply_down() {
    let q = Quantizer::new(10.0, 4).unwrap();
    assert_eq!(q.capacity_units(), 4);
    assert_eq!(q.demand_units(3.0), 2);
    assert_eq!(q.supply_units(3.0), 1);
    assert_eq!(q.demand_units(5.0), 2);
}
