//! Brute-force reference answers used by the CLI's `--oracle` flag.
//!
//! Each check recomputes a result the slow, obvious way and reports the
//! first disagreement as an error message.

use itertools::Itertools;
use num_bigint::BigUint;

use crate::interval_coloring::{Color, ColoredInterval, ColoringOp};
use crate::link_scheduler::{RequestKind, TransferRequest, UnitPolicy};
use crate::perm_count::{count_steps, Count, CountMode};
use crate::revenue_path::{Cost, CostRevenueTree};
use crate::trace::TraceReport;
use crate::tree_aggregates::{WeightKind, WeightedRootedTree};
use crate::wireless_distribution::{MobilePathInstance, SensorPathInstance};

pub type Verdict = std::result::Result<(), String>;

/// Replays a trace report on a plain array: every decision must honor its
/// request's contract against the availability at that moment, online
/// admissions must match a linear scan, and the final timeline must match.
pub fn check_trace(initial: &[i64], slot_duration: f64, requests: &[TransferRequest], report: &TraceReport, policy: UnitPolicy) -> Verdict {
    let mut avb = initial.to_vec();
    for d in &report.decisions {
        let r = requests
            .iter()
            .find(|r| r.id == d.request_id)
            .ok_or_else(|| format!("decision for unknown request {}", d.request_id))?;
        let window = &avb[r.start - 1..r.finish];
        if d.allocation.keys().any(|&t| t < r.start || t > r.finish) {
            return Err(format!("{}: allocation outside its window", r.id));
        }
        match r.kind {
            RequestKind::Preemptive => {
                if d.granted && d.allocated_units() != r.demand_units(slot_duration) {
                    return Err(format!("{}: allocation does not cover the demand", r.id));
                }
            }
            RequestKind::NonpreemptiveFixed => {
                let fits = window.iter().all(|&v| v >= r.bandwidth);
                if d.granted != fits {
                    return Err(format!("{}: window minimum disagrees with the decision", r.id));
                }
                if d.granted && (d.allocation.len() != r.window_len() || d.allocation.values().any(|&b| b != r.bandwidth)) {
                    return Err(format!("{}: fixed allocation must hold B in every slot", r.id));
                }
            }
            RequestKind::NonpreemptiveUnit => {
                let candidates: Vec<i64> = match policy {
                    UnitPolicy::MaxAvail => window.iter().copied().max().filter(|&v| v >= r.bandwidth).into_iter().collect(),
                    UnitPolicy::BestFit => window.iter().copied().filter(|&v| v >= r.bandwidth).min().into_iter().collect(),
                    UnitPolicy::Exact => window.iter().copied().filter(|&v| v == r.bandwidth).take(1).collect(),
                };
                if d.granted == candidates.is_empty() {
                    return Err(format!("{}: linear scan disagrees with the decision", r.id));
                }
                if d.granted {
                    let (&t, &b) = d.allocation.iter().next().expect("granted unit request has a slot");
                    if d.allocation.len() != 1 || b != r.bandwidth || avb[t - 1] != candidates[0] {
                        return Err(format!("{}: chosen slot {t} does not follow the policy", r.id));
                    }
                }
            }
        }
        for (&t, &b) in &d.allocation {
            if b < 0 || b > avb[t - 1] {
                return Err(format!("{}: slot {t} over-allocated", r.id));
            }
            avb[t - 1] -= b;
        }
    }
    if avb != report.timeline.avb {
        return Err("final timeline differs from the replayed allocations".into());
    }
    Ok(())
}

/// Paints every op onto an explicit slot array.
pub fn paint(slots: usize, ops: &[ColoringOp], initial: Color) -> Vec<Color> {
    let mut colors = vec![initial; slots];
    for op in ops {
        colors[op.a - 1..op.b].fill(op.color);
    }
    colors
}

pub fn check_coloring(slots: usize, ops: &[ColoringOp], initial: Color, got: &[ColoredInterval]) -> Verdict {
    let expected = paint(slots, ops, initial);
    let mut next = 1;
    for (k, iv) in got.iter().enumerate() {
        if iv.lo != next || iv.hi < iv.lo {
            return Err(format!("interval {k} does not continue the partition at slot {next}"));
        }
        if k > 0 && got[k - 1].color == iv.color {
            return Err(format!("intervals {} and {k} share a color", k - 1));
        }
        if let Some(t) = (iv.lo..=iv.hi).find(|&t| expected[t - 1] != iv.color) {
            return Err(format!("slot {t}: expected color {}, got {}", expected[t - 1], iv.color));
        }
        next = iv.hi + 1;
    }
    if next != slots + 1 {
        return Err("intervals do not cover every slot".into());
    }
    Ok(())
}

/// Vertices from `v` up to the root.
fn root_path(tree: &WeightedRootedTree, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while let Some(p) = tree.parent(v) {
        path.push(p);
        v = p;
    }
    path
}

pub fn naive_lca(tree: &WeightedRootedTree, u: usize, v: usize) -> usize {
    let up = root_path(tree, u);
    root_path(tree, v).into_iter().find(|x| up.contains(x)).expect("same tree")
}

/// Weights met on the `u`–`v` path: edges below the LCA, or every vertex.
pub fn naive_path_weights(tree: &WeightedRootedTree, kind: WeightKind, u: usize, v: usize) -> Vec<i64> {
    let lca = naive_lca(tree, u, v);
    let mut out = Vec::new();
    for end in [u, v] {
        let mut x = end;
        while x != lca {
            out.push(tree.weight(x, kind).expect("non-root"));
            x = tree.parent(x).expect("below the lca");
        }
    }
    if kind == WeightKind::Vertex {
        out.push(tree.vertex_weight(lca));
    }
    out
}

/// Weights inside the subtree of `v`: edges below `v`, or all its vertices.
pub fn naive_subtree_weights(tree: &WeightedRootedTree, kind: WeightKind, v: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        if x != v || kind == WeightKind::Vertex {
            out.push(tree.weight(x, kind).expect("non-root"));
        }
        stack.extend(tree.children(x));
    }
    out
}

/// Best affordable revenue over all `O(n²)` simple paths.
pub fn revenue_brute_force(tree: &CostRevenueTree) -> Option<Cost> {
    let mut best = None;
    for u in 0..tree.len() {
        for v in u..tree.len() {
            let walk = tree.path_vertices(u, v).ok()?;
            let (cost, revenue) = tree.walk_totals(&walk).ok()?;
            if cost <= tree.c_max() && best.is_none_or(|b| revenue > b) {
                best = Some(revenue);
            }
        }
    }
    best
}

/// Closed-form mobile makespan: `max(0, max_{i<j} (x_j - x_i - (j-i) D) / 2v)`.
pub fn mobile_makespan_pairs(inst: &MobilePathInstance) -> f64 {
    let x = &inst.x;
    let mut best: f64 = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            best = best.max((x[j] - x[i] - (j - i) as f64 * inst.range) / (2.0 * inst.speed));
        }
    }
    best
}

/// Round-trip time of one wait/no-wait choice per intermediate node.
pub fn simulate_sensor(inst: &SensorPathInstance, waits: &[bool]) -> f64 {
    let n = inst.len();
    let hop = |i: usize| (inst.x[i] - inst.x[i - 1]).abs() / inst.s;
    let mut t = 0.0;
    let mut processed = vec![false; n];
    for i in 1..n - 1 {
        t += hop(i);
        if t < inst.pt[i] {
            if waits[i - 1] {
                t = inst.pt[i] + inst.d[i];
                processed[i] = true;
            }
        } else {
            t += inst.d[i];
            processed[i] = true;
        }
    }
    t += hop(n - 1);
    t = t.max(inst.pt[n - 1]) + inst.d[n - 1];
    for i in (1..n - 1).rev() {
        t += hop(i + 1);
        if !processed[i] {
            t = t.max(inst.pt[i]) + inst.d[i];
        }
    }
    t + hop(1)
}

/// Largest sensor path accepted by [`sensor_exhaustive`].
pub const SENSOR_ENUMERATION_LIMIT: usize = 22;

/// Best round trip over all `2^(n-2)` decision vectors.
pub fn sensor_exhaustive(inst: &SensorPathInstance) -> Option<f64> {
    let n = inst.len();
    if n > SENSOR_ENUMERATION_LIMIT {
        return None;
    }
    (0u64..1 << (n - 2))
        .map(|mask| {
            let waits: Vec<bool> = (0..n - 2).map(|b| mask >> b & 1 == 1).collect();
            simulate_sensor(inst, &waits)
        })
        .min_by(f64::total_cmp)
}

/// Counts by enumerating all permutations of `1..=n` (`n <= 8`).
pub fn permutation_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n];
    for perm in (1..=n).permutations(n) {
        counts[count_steps(&perm, 1)] += 1;
    }
    counts
}

pub fn check_perm_counts(n: usize, mode: CountMode, got: &[(usize, Count)]) -> Verdict {
    let exact: Vec<BigUint> = if n <= crate::perm_count::ENUMERATION_LIMIT {
        permutation_counts(n).into_iter().map(BigUint::from).collect()
    } else {
        match crate::perm_count::count_table(n, CountMode::ExactBigint).map_err(|e| e.to_string())?.rows.pop() {
            Some(row) => row
                .into_iter()
                .map(|c| match c {
                    Count::Exact(v) => v,
                    Count::Modular(_) => unreachable!("exact table"),
                })
                .collect(),
            None => return Err("empty table".into()),
        }
    };
    let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
    if exact.iter().sum::<BigUint>() != factorial {
        return Err(format!("row {n} does not sum to {n}!"));
    }
    for (k, c) in got {
        let expected = match mode {
            CountMode::ExactBigint => Count::Exact(exact[*k].clone()),
            CountMode::Modular(m) => {
                let r = &exact[*k] % m;
                Count::Modular(r.iter_u64_digits().next().unwrap_or(0))
            }
        };
        if *c != expected {
            return Err(format!("P({n}, {k}): expected {expected}, got {c}"));
        }
    }
    Ok(())
}
