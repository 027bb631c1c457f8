//! Admission control on a single link.
//!
//! Preemptive requests are admitted in batches through a bipartite flow
//! network (requests on one side, slots on the other); non-preemptive
//! requests are admitted one at a time against the timeline's range
//! queries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxflow::{max_flow, FlowNetwork};
use crate::timeline::SlotTimeline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequestKind {
    /// Total data `TD` split freely over the window.
    Preemptive,
    /// Bandwidth `B` held in every slot of the window.
    NonpreemptiveFixed,
    /// Bandwidth `B` in exactly one slot of the window.
    NonpreemptiveUnit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferRequest {
    pub id: String,
    pub kind: RequestKind,
    pub start: usize,
    pub finish: usize,
    /// Total data in unit-seconds (preemptive only).
    pub data: f64,
    /// Minimum bandwidth in units (non-preemptive only).
    pub bandwidth: i64,
    pub profit: f64,
}

const DEMAND_SLACK: f64 = 1e-9;

impl TransferRequest {
    pub fn preemptive(id: impl Into<String>, start: usize, finish: usize, data: f64, profit: f64) -> Self {
        TransferRequest { id: id.into(), kind: RequestKind::Preemptive, start, finish, data, bandwidth: 0, profit }
    }

    pub fn fixed(id: impl Into<String>, start: usize, finish: usize, bandwidth: i64, profit: f64) -> Self {
        TransferRequest { id: id.into(), kind: RequestKind::NonpreemptiveFixed, start, finish, data: 0.0, bandwidth, profit }
    }

    pub fn unit(id: impl Into<String>, start: usize, finish: usize, bandwidth: i64, profit: f64) -> Self {
        TransferRequest { id: id.into(), kind: RequestKind::NonpreemptiveUnit, start, finish, data: 0.0, bandwidth, profit }
    }

    pub fn window_len(&self) -> usize {
        self.finish + 1 - self.start
    }

    /// Units that must be carried in total: `ceil(TD / slot_d)`.
    pub fn demand_units(&self, slot_duration: f64) -> i64 {
        (self.data / slot_duration - DEMAND_SLACK).ceil().max(0.0) as i64
    }

    /// `p · (F − S + 1)^exp / TD`
    pub fn desirability(&self, cfg: &DesirabilityConfig) -> f64 {
        self.profit * (self.window_len() as f64).powf(cfg.exponent) / self.data
    }

    pub fn validate(&self, slots: usize) -> Result<()> {
        for slot in [self.start, self.finish] {
            if slot == 0 || slot > slots {
                return Err(Error::SlotOutOfRange { slot, slots });
            }
        }
        if self.start > self.finish {
            return Err(Error::ReversedRange { a: self.start, b: self.finish });
        }
        if !(self.profit >= 0.0 && self.profit.is_finite()) {
            return Err(Error::Invalid(format!("request {}: profit must be non-negative", self.id)));
        }
        match self.kind {
            RequestKind::Preemptive if !(self.data > 0.0 && self.data.is_finite()) => {
                Err(Error::Invalid(format!("request {}: TD must be positive", self.id)))
            }
            RequestKind::NonpreemptiveFixed | RequestKind::NonpreemptiveUnit if self.bandwidth <= 0 => {
                Err(Error::Invalid(format!("request {}: B must be positive", self.id)))
            }
            _ => Ok(()),
        }
    }

    fn expect_kind(&self, kind: RequestKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Invalid(format!("request {} is {:?}, expected {:?}", self.id, self.kind, kind)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleDecision {
    pub request_id: String,
    pub granted: bool,
    /// Slot → units, empty when rejected.
    pub allocation: BTreeMap<usize, i64>,
}

impl ScheduleDecision {
    pub fn rejected(id: &str) -> Self {
        ScheduleDecision { request_id: id.to_string(), granted: false, allocation: BTreeMap::new() }
    }

    pub fn granted(id: &str, allocation: BTreeMap<usize, i64>) -> Self {
        ScheduleDecision { request_id: id.to_string(), granted: true, allocation }
    }

    pub fn allocated_units(&self) -> i64 {
        self.allocation.values().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesirabilityConfig {
    #[serde(rename = "exp")]
    pub exponent: f64,
}

impl Default for DesirabilityConfig {
    fn default() -> Self {
        DesirabilityConfig { exponent: 1.0 }
    }
}

impl DesirabilityConfig {
    pub fn new(exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::Invalid(format!("desirability exponent must be positive, got {exponent}")));
        }
        Ok(DesirabilityConfig { exponent })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BatchMode {
    /// Grant every saturated request, re-run on the rest until a pass
    /// grants nothing.
    IterativeGrant,
    /// Grant the longest feasible prefix in desirability order, reject the
    /// next request, recurse on the remainder.
    DesirabilityCutoff,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitPolicy {
    #[default]
    MaxAvail,
    BestFit,
    Exact,
}

/// Flow network for a batch plus the edge bookkeeping needed to read
/// allocations back out of a flow.
#[derive(Debug, Clone)]
pub struct BatchNetwork {
    pub network: FlowNetwork,
    /// Edge `src → r` per request.
    pub demand_edges: Vec<usize>,
    /// `(slot, edge r → slot)` per request, slots 1-based.
    pub slot_edges: Vec<Vec<(usize, usize)>>,
    pub demands: Vec<i64>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl BatchNetwork {
    fn build(avb: &[i64], slot_duration: f64, batch: &[&TransferRequest]) -> Result<Self> {
        let m = batch.len();
        let slots = avb.len();
        let demands: Vec<i64> = batch.iter().map(|r| r.demand_units(slot_duration)).collect();
        let unbounded = demands.iter().try_fold(1i64, |acc, &d| acc.checked_add(d)).ok_or(Error::Overflow)?;
        let slot_node = |t: usize| 2 + m + (t - 1);
        let mut network = FlowNetwork::new(2 + m + slots, SOURCE, SINK)?;
        let mut demand_edges = Vec::with_capacity(m);
        let mut slot_edges = Vec::with_capacity(m);
        for (i, r) in batch.iter().enumerate() {
            demand_edges.push(network.add_edge(SOURCE, 2 + i, demands[i])?);
            let links = (r.start..=r.finish)
                .map(|t| network.add_edge(2 + i, slot_node(t), unbounded).map(|e| (t, e)))
                .collect::<Result<Vec<_>>>()?;
            slot_edges.push(links);
        }
        for (t, &cap) in avb.iter().enumerate() {
            network.add_edge(slot_node(t + 1), SINK, cap)?;
        }
        Ok(BatchNetwork { network, demand_edges, slot_edges, demands })
    }

    /// Runs max-flow; returns each request's allocation if its demand edge
    /// is saturated.
    pub fn solve(&self) -> Vec<Option<BTreeMap<usize, i64>>> {
        let flow = max_flow(&self.network);
        (0..self.demands.len())
            .map(|i| {
                (flow.edge_flows[self.demand_edges[i]] == self.demands[i]).then(|| {
                    self.slot_edges[i]
                        .iter()
                        .filter_map(|&(t, e)| {
                            let f = flow.edge_flows[e];
                            (f > 0).then_some((t, f))
                        })
                        .collect()
                })
            })
            .collect()
    }
}

fn check_batch(tl: &SlotTimeline, batch: &[TransferRequest]) -> Result<()> {
    for r in batch {
        r.expect_kind(RequestKind::Preemptive)?;
        r.validate(tl.slots())?;
    }
    Ok(())
}

/// Bipartite network `src → requests → slots → dest` for the current
/// timeline.
pub fn build_batch_network(tl: &SlotTimeline, batch: &[TransferRequest]) -> Result<BatchNetwork> {
    check_batch(tl, batch)?;
    let refs: Vec<&TransferRequest> = batch.iter().collect();
    BatchNetwork::build(&tl.values(), tl.slot_duration(), &refs)
}

/// Allocations for `requests` if all of them fit together.
fn allocate_all(avb: &[i64], slot_duration: f64, requests: &[&TransferRequest]) -> Result<Option<Vec<BTreeMap<usize, i64>>>> {
    if requests.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let solved = BatchNetwork::build(avb, slot_duration, requests)?.solve();
    Ok(solved.into_iter().collect())
}

fn commit(tl: &mut SlotTimeline, avb: &mut [i64], allocation: &BTreeMap<usize, i64>) -> Result<()> {
    for (&t, &units) in allocation {
        tl.range_add(t, t, -units)?;
        avb[t - 1] -= units;
    }
    Ok(())
}

/// Admits a batch of preemptive requests, decrementing `tl` by every
/// granted allocation. Decisions come back in batch order.
pub fn schedule_batch_preemptive(
    tl: &mut SlotTimeline,
    batch: &[TransferRequest],
    mode: BatchMode,
    cfg: &DesirabilityConfig,
) -> Result<Vec<ScheduleDecision>> {
    check_batch(tl, batch)?;
    let slot_duration = tl.slot_duration();
    let mut avb = tl.values();
    let mut outcome: Vec<Option<BTreeMap<usize, i64>>> = vec![None; batch.len()];

    match mode {
        BatchMode::IterativeGrant => {
            let mut pending: Vec<usize> = (0..batch.len()).collect();
            while !pending.is_empty() {
                let refs: Vec<&TransferRequest> = pending.iter().map(|&i| &batch[i]).collect();
                let solved = BatchNetwork::build(&avb, slot_duration, &refs)?.solve();
                let mut still = Vec::new();
                for (&i, alloc) in pending.iter().zip(solved) {
                    match alloc {
                        Some(alloc) => {
                            commit(tl, &mut avb, &alloc)?;
                            outcome[i] = Some(alloc);
                        }
                        None => still.push(i),
                    }
                }
                if still.len() == pending.len() {
                    break;
                }
                pending = still;
            }
        }
        BatchMode::DesirabilityCutoff => {
            let order = desirability_order(batch, cfg);
            let mut rest: &[usize] = &order;
            while !rest.is_empty() {
                let prefix = |p: usize| -> Vec<&TransferRequest> { rest[..p].iter().map(|&i| &batch[i]).collect() };
                // largest p with r_1..r_p jointly feasible; q = p + 1
                let (mut lo, mut hi) = (0usize, rest.len());
                while lo < hi {
                    let mid = (lo + hi).div_ceil(2);
                    if allocate_all(&avb, slot_duration, &prefix(mid))?.is_some() {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                let allocs = allocate_all(&avb, slot_duration, &prefix(lo))?.expect("prefix checked feasible");
                for (&i, alloc) in rest[..lo].iter().zip(allocs) {
                    commit(tl, &mut avb, &alloc)?;
                    outcome[i] = Some(alloc);
                }
                // rest[lo], if any, is r_q and stays rejected
                rest = rest.get(lo + 1..).unwrap_or(&[]);
            }
        }
    }

    Ok(batch
        .iter()
        .zip(outcome)
        .map(|(r, alloc)| match alloc {
            Some(a) => ScheduleDecision::granted(&r.id, a),
            None => ScheduleDecision::rejected(&r.id),
        })
        .collect())
}

/// Batch indices sorted by non-increasing desirability; ties by higher
/// profit, then lower id.
pub fn desirability_order(batch: &[TransferRequest], cfg: &DesirabilityConfig) -> Vec<usize> {
    let d: Vec<f64> = batch.iter().map(|r| r.desirability(cfg)).collect();
    let mut order: Vec<usize> = (0..batch.len()).collect();
    order.sort_by(|&a, &b| {
        d[b].total_cmp(&d[a])
            .then_with(|| batch[b].profit.total_cmp(&batch[a].profit))
            .then_with(|| batch[a].id.cmp(&batch[b].id))
    });
    order
}

/// Grants `B` on every slot of the window iff the window minimum allows it.
pub fn admit_nonpreemptive_fixed(tl: &mut SlotTimeline, r: &TransferRequest) -> Result<ScheduleDecision> {
    r.expect_kind(RequestKind::NonpreemptiveFixed)?;
    r.validate(tl.slots())?;
    if tl.range_min(r.start, r.finish)? < r.bandwidth {
        return Ok(ScheduleDecision::rejected(&r.id));
    }
    tl.range_add(r.start, r.finish, -r.bandwidth)?;
    Ok(ScheduleDecision::granted(&r.id, (r.start..=r.finish).map(|t| (t, r.bandwidth)).collect()))
}

/// Places a unit-duration request in one slot of its window chosen by
/// `policy`.
pub fn admit_nonpreemptive_unit(tl: &mut SlotTimeline, r: &TransferRequest, policy: UnitPolicy) -> Result<ScheduleDecision> {
    r.expect_kind(RequestKind::NonpreemptiveUnit)?;
    r.validate(tl.slots())?;
    let slot = match policy {
        UnitPolicy::MaxAvail => {
            let (v, t) = tl.range_max(r.start, r.finish)?;
            (v >= r.bandwidth).then_some(t)
        }
        UnitPolicy::BestFit => tl.find_best_fit(r.start, r.finish, r.bandwidth)?,
        UnitPolicy::Exact => tl.find_exact(r.start, r.finish, r.bandwidth)?,
    };
    match slot {
        Some(t) => {
            tl.range_add(t, t, -r.bandwidth)?;
            Ok(ScheduleDecision::granted(&r.id, BTreeMap::from([(t, r.bandwidth)])))
        }
        None => Ok(ScheduleDecision::rejected(&r.id)),
    }
}
