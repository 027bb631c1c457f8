//! Seeded random instances for `--seed`, the examples and the property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cli::{Aggregation, ColorInput, LinkInput, TreeJob, TreeOp};
use crate::interval_coloring::ColoringOp;
use crate::link_scheduler::RequestKind;
use crate::revenue_path::{RevenueEdge, RevenueInstance, SwitchTerm, SwitchingCase};
use crate::timeline::TimelineSnapshot;
use crate::trace::TraceEvent;
use crate::tree_aggregates::{TreeEdge, TreeSpec, WeightKind};
use crate::wireless_distribution::{MobilePathInstance, SensorPathInstance, SensorRegime};

/// Edges of a uniformly attached random tree on `0..n` (parent of `v` is
/// drawn from `0..v`, then labels are shuffled).
pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    (1..n).map(|v| (label[rng.gen_range(0..v)], label[v])).collect()
}

pub fn link_input<R: Rng>(rng: &mut R) -> LinkInput {
    let slots = rng.gen_range(4..=12);
    let capacity = 10;
    let avb = (0..slots).map(|_| rng.gen_range(capacity / 2..=capacity)).collect();
    let timeline = TimelineSnapshot { slots, slot_duration: 1.0, capacity, avb };
    let mut arrival = 0.0;
    let requests = (0..rng.gen_range(3..=8))
        .map(|i| {
            arrival += f64::from(rng.gen_range(0..3u8));
            let start = rng.gen_range(1..=slots);
            let finish = rng.gen_range(start..=slots.min(start + 4));
            let kind = *[RequestKind::Preemptive, RequestKind::NonpreemptiveFixed, RequestKind::NonpreemptiveUnit]
                .choose(rng)
                .expect("non-empty");
            let (data, bandwidth) = match kind {
                RequestKind::Preemptive => (Some(f64::from(rng.gen_range(1..=20u8))), None),
                _ => (None, Some(rng.gen_range(1..=6))),
            };
            TraceEvent {
                id: format!("r{}", i + 1),
                kind,
                start,
                finish,
                data,
                bandwidth,
                profit: f64::from(rng.gen_range(1..=10u8)),
                arrival,
            }
        })
        .collect();
    LinkInput { timeline, requests }
}

pub fn coloring_ops<R: Rng>(rng: &mut R, slots: usize, count: usize, colors: u32) -> Vec<ColoringOp> {
    (0..count)
        .map(|_| {
            let a = rng.gen_range(1..=slots);
            let b = rng.gen_range(a..=slots);
            ColoringOp::new(a, b, rng.gen_range(0..colors).into())
        })
        .collect()
}

pub fn color_input<R: Rng>(rng: &mut R) -> ColorInput {
    let slots = rng.gen_range(1..=50);
    let count = rng.gen_range(0..=40);
    ColorInput { slots, initial: 0, ops: coloring_ops(rng, slots, count, 4) }
}

pub fn tree_spec<R: Rng>(rng: &mut R, max_n: usize) -> TreeSpec {
    let n = rng.gen_range(1..=max_n.max(1));
    let edges = random_tree_edges(rng, n)
        .into_iter()
        .map(|(u, v)| TreeEdge { u, v, we: rng.gen_range(-9..=9) })
        .collect();
    let wv = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
    TreeSpec { n, root: rng.gen_range(0..n), edges, wv }
}

/// Random ops on `spec`; `updates` allows `add`/`set`.
pub fn tree_ops<R: Rng>(rng: &mut R, spec: &TreeSpec, agg: Aggregation, kind: WeightKind, count: usize, updates: bool) -> Vec<TreeOp> {
    let n = spec.n;
    let non_root = |rng: &mut R| loop {
        let v = rng.gen_range(0..n);
        if kind == WeightKind::Vertex || v != spec.root {
            break v;
        }
    };
    (0..count)
        .map(|_| {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let choice = rng.gen_range(0..if updates && (n > 1 || kind == WeightKind::Vertex) { 6 } else { 4 });
            match choice {
                0 => TreeOp::PathFromRoot { v },
                1 => TreeOp::Path { u, v },
                2 => TreeOp::Subtree { v },
                3 => TreeOp::Lca { u, v },
                4 if agg.invertible() => TreeOp::Add { v: non_root(rng), delta: rng.gen_range(-5..=5) },
                _ => TreeOp::Set { v: non_root(rng), w: rng.gen_range(-9..=9) },
            }
        })
        .collect()
}

pub fn tree_job<R: Rng>(rng: &mut R, updates: bool) -> TreeJob {
    let tree = tree_spec(rng, 12);
    let agg = *[Aggregation::Sum, Aggregation::Xor, Aggregation::Min, Aggregation::Max].choose(rng).expect("non-empty");
    let kind = if rng.gen_bool(0.5) { WeightKind::Edge } else { WeightKind::Vertex };
    let ops = tree_ops(rng, &tree, agg, kind, 20, updates);
    TreeJob { tree, agg, kind, ops }
}

/// A revenue instance with `n <= 10`, costs in 0..=5, revenues in 0..=9 and
/// switching terms in 0..=3.
pub fn revenue_instance<R: Rng>(rng: &mut R) -> RevenueInstance {
    let case = if rng.gen_bool(0.5) { SwitchingCase::ZeroSwitching } else { SwitchingCase::BoundedDegree };
    revenue_instance_with(rng, 10, case)
}

pub fn revenue_instance_with<R: Rng>(rng: &mut R, max_n: usize, case: SwitchingCase) -> RevenueInstance {
    let n = rng.gen_range(1..=max_n.max(1));
    let pairs = random_tree_edges(rng, n);
    let edges: Vec<RevenueEdge> = pairs
        .iter()
        .map(|&(u, v)| RevenueEdge { u, v, cost: rng.gen_range(0..=5), revenue: rng.gen_range(0..=9), we: None })
        .collect();
    let (mut sc, mut sp) = (Vec::new(), Vec::new());
    if case == SwitchingCase::BoundedDegree {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, nb) in adj.iter().enumerate() {
            for (i, &v) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    sc.push(SwitchTerm { u, v, w, value: rng.gen_range(0..=3) });
                    sp.push(SwitchTerm { u, v, w, value: rng.gen_range(0..=3) });
                }
            }
        }
    }
    RevenueInstance {
        n,
        root: None,
        edges,
        wv: None,
        sc,
        sp,
        c_max: rng.gen_range(0..=12),
        case,
        cc_max: None,
        d_max: None,
    }
}

pub fn mobile_instance<R: Rng>(rng: &mut R) -> MobilePathInstance {
    let n = rng.gen_range(1..=12);
    let mut x = Vec::with_capacity(n);
    let mut at = 0.0;
    for _ in 0..n {
        x.push(at);
        at += (rng.gen_range(0.0..5.0_f64) * 100.0).round() / 100.0;
    }
    let range = (rng.gen_range(0.5..3.0_f64) * 100.0).round() / 100.0;
    let speed = (rng.gen_range(0.5..2.0_f64) * 100.0).round() / 100.0;
    MobilePathInstance { x, range, speed }
}

pub fn sensor_instance_with<R: Rng>(rng: &mut R, n: usize, regime: SensorRegime) -> SensorPathInstance {
    let n = n.max(2);
    let mut x = vec![0.0];
    for _ in 1..n {
        let last = *x.last().expect("non-empty");
        x.push(last + f64::from(rng.gen_range(1..=4u8)));
    }
    let mut pt = vec![0.0; n];
    let mut release = 0.0;
    for p in pt.iter_mut().skip(1) {
        release += f64::from(rng.gen_range(0..=6u8));
        *p = release;
    }
    let shared = f64::from(rng.gen_range(0..=3u8));
    let mut d = vec![0.0; n];
    for (i, slot) in d.iter_mut().enumerate().skip(1) {
        *slot = match regime {
            SensorRegime::ZeroD if i < n - 1 => 0.0,
            SensorRegime::UniformDp if i < n - 1 => shared,
            _ => f64::from(rng.gen_range(0..=3u8)),
        };
    }
    let s = f64::from(rng.gen_range(1..=2u8));
    SensorPathInstance { x, s, pt, d, regime }
}

pub fn sensor_instance<R: Rng>(rng: &mut R) -> SensorPathInstance {
    let regime = *[SensorRegime::ZeroD, SensorRegime::UniformDp, SensorRegime::GeneralInteger].choose(rng).expect("non-empty");
    let n = rng.gen_range(2..=8);
    sensor_instance_with(rng, n, regime)
}
