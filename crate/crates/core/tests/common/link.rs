use std::collections::HashSet;

use flowsched::link_scheduler::{ScheduleDecision, TransferRequest};
use rand::Rng;

/// Batch with `m <= 4`, `T <= 5`, integer demands `1..=6`, slot durations
/// of one second.
pub fn random_batch<R: Rng>(rng: &mut R) -> (Vec<i64>, Vec<TransferRequest>) {
    let slots = rng.gen_range(1..=5);
    let avb = (0..slots).map(|_| rng.gen_range(0..=8)).collect();
    let m = rng.gen_range(1..=4);
    let batch = (0..m)
        .map(|i| {
            let s = rng.gen_range(1..=slots);
            let f = rng.gen_range(s..=slots);
            let demand = rng.gen_range(1..=6);
            TransferRequest::preemptive(format!("r{i}"), s, f, f64::from(demand), f64::from(rng.gen_range(1..=5u8)))
        })
        .collect();
    (avb, batch)
}

/// Enumerates per-slot splits of every demand; true iff one fits under `avb`.
pub fn brute_force_feasible(avb: &[i64], batch: &[TransferRequest]) -> bool {
    let demands: Vec<i64> = batch.iter().map(|r| r.demand_units(1.0)).collect();
    let mut failed = HashSet::new();
    place(avb.to_vec(), batch, &demands, 0, 0, demands.first().copied().unwrap_or(0), &mut failed)
}

/// Places the remaining `left` units of request `r`, deciding slot
/// `r.start + k` next.
fn place(
    avb: Vec<i64>,
    batch: &[TransferRequest],
    demands: &[i64],
    r: usize,
    k: usize,
    left: i64,
    failed: &mut HashSet<(usize, usize, i64, Vec<i64>)>,
) -> bool {
    let Some(req) = batch.get(r) else { return true };
    let slot = req.start + k;
    if slot > req.finish {
        return left == 0 && place(avb, batch, demands, r + 1, 0, demands.get(r + 1).copied().unwrap_or(0), failed);
    }
    let key = (r, k, left, avb.clone());
    if failed.contains(&key) {
        return false;
    }
    for amount in 0..=left.min(avb[slot - 1]) {
        let mut next = avb.clone();
        next[slot - 1] -= amount;
        if place(next, batch, demands, r, k + 1, left - amount, failed) {
            return true;
        }
    }
    failed.insert(key);
    false
}

/// Every granted allocation carries its demand inside its window, and the
/// slot totals stay within `avb`. Returns the remaining bandwidth.
pub fn check_allocations(avb: &[i64], batch: &[TransferRequest], decisions: &[ScheduleDecision]) -> Result<Vec<i64>, String> {
    if decisions.len() != batch.len() {
        return Err("one decision per request expected".into());
    }
    let mut left = avb.to_vec();
    for (r, d) in batch.iter().zip(decisions) {
        if d.request_id != r.id {
            return Err(format!("decision for {} out of order", d.request_id));
        }
        if !d.granted {
            if !d.allocation.is_empty() {
                return Err(format!("{} rejected with an allocation", r.id));
            }
            continue;
        }
        if d.allocated_units() != r.demand_units(1.0) {
            return Err(format!("{} carries {} of {} units", r.id, d.allocated_units(), r.demand_units(1.0)));
        }
        for (&t, &units) in &d.allocation {
            if t < r.start || t > r.finish || units < 0 {
                return Err(format!("{} uses slot {t} outside [{}, {}]", r.id, r.start, r.finish));
            }
            left[t - 1] -= units;
        }
    }
    if let Some(t) = left.iter().position(|&v| v < 0) {
        return Err(format!("slot {} oversubscribed", t + 1));
    }
    Ok(left)
}
