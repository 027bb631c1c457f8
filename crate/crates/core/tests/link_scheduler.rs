mod common;

use common::link::{brute_force_feasible, check_allocations, random_batch};
use flowsched::link_scheduler::*;
use flowsched::maxflow::{max_flow, FlowNetwork};
use flowsched::timeline::{Backend, SlotTimeline};
use flowsched::trace::{batches_of, run_trace, BatchConfig, TraceEvent};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MODES: [BatchMode; 2] = [BatchMode::IterativeGrant, BatchMode::DesirabilityCutoff];

/// Minimum s-t cut by trying every source side.
fn min_cut(n: usize, edges: &[(usize, usize, i64)]) -> i64 {
    (0..1u32 << n)
        .filter(|mask| mask & 1 == 1 && mask >> (n - 1) & 1 == 0)
        .map(|mask| {
            edges
                .iter()
                .filter(|&&(u, v, _)| mask >> u & 1 == 1 && mask >> v & 1 == 0)
                .map(|e| e.2)
                .sum::<i64>()
        })
        .min()
        .unwrap()
}

proptest! {
    #[test]
    fn max_flow_equals_min_cut(
        n in 2usize..=7,
        raw in proptest::collection::vec((0usize..7, 0usize..7, 0i64..10), 0..18),
    ) {
        let edges: Vec<_> = raw.into_iter().filter(|&(u, v, _)| u < n && v < n && u != v).collect();
        let mut net = FlowNetwork::new(n, 0, n - 1).unwrap();
        for &(u, v, c) in &edges {
            net.add_edge(u, v, c).unwrap();
        }
        let flow = max_flow(&net);
        prop_assert_eq!(flow.value, min_cut(n, &edges));
        for (e, &f) in net.edges().iter().zip(&flow.edge_flows) {
            prop_assert!(0 <= f && f <= e.capacity);
        }
        for v in 1..n - 1 {
            prop_assert_eq!(flow.net_outflow(&net, v), 0);
        }
        prop_assert_eq!(flow.net_outflow(&net, 0), flow.value);
    }

    #[test]
    fn fixed_admission_is_a_range_min_test(
        avb in proptest::collection::vec(0i64..=10, 1..12),
        window in (0usize..12, 0usize..12),
        b in 1i64..=10,
    ) {
        let slots = avb.len();
        let (s, f) = ((window.0 % slots) + 1, (window.1 % slots) + 1);
        let (s, f) = (s.min(f), s.max(f));
        let mut tl = SlotTimeline::from_values(avb.clone(), 1.0, 10, Backend::blocks()).unwrap();
        let d = admit_nonpreemptive_fixed(&mut tl, &TransferRequest::fixed("x", s, f, b, 1.0)).unwrap();
        let fits = avb[s - 1..f].iter().all(|&v| v >= b);
        prop_assert_eq!(d.granted, fits);
        let expected: Vec<i64> = avb.iter().enumerate().map(|(i, &v)| if fits && i + 1 >= s && i < f { v - b } else { v }).collect();
        prop_assert_eq!(tl.values(), expected);
    }
}

#[test]
fn all_granted_iff_brute_force_finds_allocation() {
    let mut rng = StdRng::seed_from_u64(21);
    for round in 0..300 {
        let (avb, batch) = random_batch(&mut rng);
        let feasible = brute_force_feasible(&avb, &batch);
        for mode in MODES {
            let mut tl = SlotTimeline::from_values(avb.clone(), 1.0, 8, Backend::SegmentTree).unwrap();
            let decisions = schedule_batch_preemptive(&mut tl, &batch, mode, &DesirabilityConfig::default()).unwrap();
            let all = decisions.iter().all(|d| d.granted);
            assert_eq!(all, feasible, "round {round} {mode:?}: {avb:?} {batch:?}");
            let left = check_allocations(&avb, &batch, &decisions).unwrap_or_else(|e| panic!("round {round}: {e}"));
            assert_eq!(tl.values(), left, "round {round} {mode:?}");
        }
    }
}

#[test]
fn cutoff_grants_a_feasible_desirability_prefix() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..200 {
        let (avb, batch) = random_batch(&mut rng);
        let cfg = DesirabilityConfig::new(rng.gen_range(0.5..2.0)).unwrap();
        let order = desirability_order(&batch, &cfg);
        let mut tl = SlotTimeline::from_values(avb.clone(), 1.0, 8, Backend::SegmentTree).unwrap();
        let decisions = schedule_batch_preemptive(&mut tl, &batch, BatchMode::DesirabilityCutoff, &cfg).unwrap();
        // the leading run of grants in desirability order is maximal
        let lead = order.iter().take_while(|&&i| decisions[i].granted).count();
        let prefix: Vec<_> = order[..lead].iter().map(|&i| batch[i].clone()).collect();
        assert!(brute_force_feasible(&avb, &prefix));
        if lead < order.len() {
            let mut longer = prefix.clone();
            longer.push(batch[order[lead]].clone());
            assert!(!brute_force_feasible(&avb, &longer));
        }
    }
}

#[test]
fn reference_batches() {
    let cfg = DesirabilityConfig::default();
    for mode in MODES {
        let mut tl = SlotTimeline::from_values(vec![10, 10], 1.0, 10, Backend::SegmentTree).unwrap();
        let pair = [TransferRequest::preemptive("a", 1, 2, 15.0, 1.0), TransferRequest::preemptive("b", 1, 2, 15.0, 1.0)];
        let d = schedule_batch_preemptive(&mut tl, &pair, mode, &cfg).unwrap();
        assert_eq!(d.iter().filter(|d| d.granted).count(), 1, "{mode:?}");
        assert!(schedule_batch_preemptive(&mut tl, &[], mode, &cfg).unwrap().is_empty());
        let outside = [TransferRequest::preemptive("c", 2, 3, 1.0, 1.0)];
        assert!(schedule_batch_preemptive(&mut tl, &outside, mode, &cfg).is_err());
    }
}

#[test]
fn reference_nonpreemptive() {
    let mut tl = SlotTimeline::from_values(vec![10, 6, 6, 10], 1.0, 10, Backend::SegmentTree).unwrap();
    assert!(!admit_nonpreemptive_fixed(&mut tl, &TransferRequest::fixed("x", 1, 4, 7, 1.0)).unwrap().granted);
    assert_eq!(tl.values(), vec![10, 6, 6, 10]);
    assert!(admit_nonpreemptive_fixed(&mut tl, &TransferRequest::fixed("x", 1, 4, 0, 1.0)).is_err());
    assert!(admit_nonpreemptive_fixed(&mut tl, &TransferRequest::fixed("x", 1, 4, 6, 1.0)).unwrap().granted);
    assert_eq!(tl.values(), vec![4, 0, 0, 4]);

    for (policy, backend, expected) in [
        (UnitPolicy::BestFit, Backend::grouped_sorted(), vec![9, 3, 1, 8]),
        (UnitPolicy::MaxAvail, Backend::SegmentTree, vec![5, 3, 5, 8]),
    ] {
        let mut tl = SlotTimeline::from_values(vec![9, 3, 5, 8], 1.0, 10, backend).unwrap();
        assert!(admit_nonpreemptive_unit(&mut tl, &TransferRequest::unit("u", 1, 4, 4, 1.0), policy).unwrap().granted);
        assert_eq!(tl.values(), expected);
        assert!(!admit_nonpreemptive_unit(&mut tl, &TransferRequest::unit("u", 1, 4, 10, 1.0), policy).unwrap().granted);
    }
}

fn event(id: &str, arrival: f64) -> TraceEvent {
    TraceEvent {
        id: id.into(),
        kind: RequestKind::Preemptive,
        start: 1,
        finish: 2,
        data: Some(1.0),
        bandwidth: None,
        profit: 1.0,
        arrival,
    }
}

#[test]
fn batching_rule() {
    let cfg = BatchConfig { max_batch: 2, flush_timeout: 10.0, ..BatchConfig::default() };
    let events = [event("r1", 0.0), event("r2", 0.0), event("r3", 100.0)];
    assert_eq!(batches_of(&events, &cfg), vec![vec![0, 1], vec![2]]);
    let events = [event("r1", 0.0), event("r2", 5.0), event("r3", 10.0), event("r4", 10.5)];
    assert_eq!(batches_of(&events, &BatchConfig { max_batch: 5, ..cfg }), vec![vec![0, 1, 2], vec![3]]);
}

#[test]
fn empty_trace_leaves_timeline() {
    let mut tl = SlotTimeline::from_values(vec![3, 4], 1.0, 10, Backend::SegmentTree).unwrap();
    let report = run_trace(&[], &mut tl, &BatchConfig::default()).unwrap();
    assert!(report.decisions.is_empty() && report.batches.is_empty());
    assert_eq!((report.granted, report.total_profit), (0, 0.0));
    assert_eq!(report.timeline.avb, vec![3, 4]);
}

#[test]
fn trace_out_of_range_is_rejected_before_scheduling() {
    let mut tl = SlotTimeline::from_values(vec![3, 4], 1.0, 10, Backend::SegmentTree).unwrap();
    let mut bad = event("late", 1.0);
    bad.finish = 3;
    assert!(run_trace(&[event("ok", 0.0), bad], &mut tl, &BatchConfig::default()).is_err());
    assert_eq!(tl.values(), vec![3, 4]);
}

#[test]
fn unsorted_traces_are_sorted_by_arrival() {
    let events = [event("b", 2.0), event("a", 0.0), event("c", 2.0)];
    let mut tl = SlotTimeline::from_values(vec![10, 10], 1.0, 10, Backend::SegmentTree).unwrap();
    let report = run_trace(&events, &mut tl, &BatchConfig::online()).unwrap();
    assert_eq!(report.batches, vec![vec!["a"], vec!["b"], vec!["c"]]);
}
