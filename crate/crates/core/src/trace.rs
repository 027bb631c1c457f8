//! Trace-driven batching loop over the link scheduler.
//!
//! Requests are replayed in simulated time. A batch opens at the arrival of
//! its first request and is flushed once it holds `R` requests or the flush
//! timeout has passed. Within a batch the preemptive requests are scheduled
//! together through max-flow, then the non-preemptive ones are admitted one
//! by one in arrival order.

use std::collections::HashSet;

use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link_scheduler::{
    admit_nonpreemptive_fixed, admit_nonpreemptive_unit, schedule_batch_preemptive, BatchMode, DesirabilityConfig,
    RequestKind, ScheduleDecision, TransferRequest, UnitPolicy,
};
use crate::timeline::{Backend, GroupView, SlotTimeline, TimelineSnapshot};

/// One request of a trace, as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEvent {
    pub id: String,
    pub kind: RequestKind,
    #[serde(rename = "S")]
    pub start: usize,
    #[serde(rename = "F")]
    pub finish: usize,
    #[serde(rename = "TD", default)]
    pub data: Option<f64>,
    #[serde(rename = "B", default)]
    pub bandwidth: Option<i64>,
    #[serde(rename = "p")]
    pub profit: f64,
    /// Simulated arrival time in seconds.
    pub arrival: f64,
}

impl TraceEvent {
    pub fn to_request(&self) -> Result<TransferRequest> {
        let missing = |field: &str| Error::Invalid(format!("request {}: {field} is required for {:?}", self.id, self.kind));
        Ok(match self.kind {
            RequestKind::Preemptive => {
                let data = self.data.ok_or_else(|| missing("TD"))?;
                TransferRequest::preemptive(self.id.clone(), self.start, self.finish, data, self.profit)
            }
            RequestKind::NonpreemptiveFixed => {
                let b = self.bandwidth.ok_or_else(|| missing("B"))?;
                TransferRequest::fixed(self.id.clone(), self.start, self.finish, b, self.profit)
            }
            RequestKind::NonpreemptiveUnit => {
                let b = self.bandwidth.ok_or_else(|| missing("B"))?;
                TransferRequest::unit(self.id.clone(), self.start, self.finish, b, self.profit)
            }
        })
    }
}

fn default_exp() -> f64 {
    1.0
}

fn default_backend() -> Backend {
    Backend::SegmentTree
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchConfig {
    /// Maximum batch size `R >= 1`.
    #[serde(rename = "R")]
    pub max_batch: usize,
    /// Simulated seconds a batch stays open after its first arrival.
    pub flush_timeout: f64,
    pub mode: BatchMode,
    #[serde(default = "default_exp")]
    pub exp: f64,
    #[serde(default = "UnitPolicy::default")]
    pub unit_policy: UnitPolicy,
    #[serde(default = "default_backend")]
    pub backend: Backend,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            max_batch: 4,
            flush_timeout: 1.0,
            mode: BatchMode::DesirabilityCutoff,
            exp: 1.0,
            unit_policy: UnitPolicy::MaxAvail,
            backend: Backend::SegmentTree,
        }
    }
}

impl BatchConfig {
    /// Every request is its own batch.
    pub fn online() -> Self {
        BatchConfig { max_batch: 1, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_batch == 0 {
            return Err(Error::Invalid("R must be at least 1".into()));
        }
        if !(self.flush_timeout > 0.0 && self.flush_timeout.is_finite()) {
            return Err(Error::Invalid("flush_timeout must be positive".into()));
        }
        DesirabilityConfig::new(self.exp)?;
        if self.unit_policy == UnitPolicy::BestFit
            && !matches!(self.backend, Backend::GroupedSlots { view: GroupView::Sorted, .. })
        {
            return Err(Error::Invalid("best_fit needs the sorted grouped_slots backend".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    /// Request ids per batch, in processing order.
    pub batches: Vec<Vec<String>>,
    /// Decisions in processing order.
    pub decisions: Vec<ScheduleDecision>,
    pub granted: usize,
    pub total_profit: f64,
    pub timeline: TimelineSnapshot,
}

/// Groups arrival-sorted events into batches (index lists) by the
/// `R`/timeout rule.
pub fn batches_of(events: &[TraceEvent], cfg: &BatchConfig) -> Vec<Vec<usize>> {
    let mut batches: Vec<Vec<usize>> = Vec::new();
    let mut deadline = f64::NEG_INFINITY;
    for (i, e) in events.iter().enumerate() {
        match batches.last_mut() {
            Some(open) if open.len() < cfg.max_batch && e.arrival <= deadline => open.push(i),
            _ => {
                batches.push(vec![i]);
                deadline = e.arrival + cfg.flush_timeout;
            }
        }
    }
    batches
}

/// Replays `events` against `tl`. Events are stably sorted by arrival
/// first; every request is validated before any is scheduled.
pub fn run_trace(events: &[TraceEvent], tl: &mut SlotTimeline, cfg: &BatchConfig) -> Result<TraceReport> {
    cfg.validate()?;
    let desirability = DesirabilityConfig::new(cfg.exp)?;
    let mut sorted = events.to_vec();
    if let Some(e) = sorted.iter().find(|e| !e.arrival.is_finite()) {
        return Err(Error::Invalid(format!("request {}: arrival must be finite", e.id)));
    }
    sorted.sort_by(|a, b| a.arrival.total_cmp(&b.arrival));
    let mut seen = HashSet::new();
    let mut requests = Vec::with_capacity(sorted.len());
    for e in &sorted {
        if !seen.insert(e.id.as_str()) {
            return Err(Error::Invalid(format!("duplicate request id {}", e.id)));
        }
        let r = e.to_request()?;
        r.validate(tl.slots())?;
        requests.push(r);
    }

    let mut report = TraceReport {
        batches: Vec::new(),
        decisions: Vec::new(),
        granted: 0,
        total_profit: 0.0,
        timeline: tl.snapshot(),
    };
    for batch in batches_of(&sorted, cfg) {
        debug!("batch of {} requests opening at t = {}", batch.len(), sorted[batch[0]].arrival);
        let (preemptive, other): (Vec<usize>, Vec<usize>) =
            batch.iter().partition(|&&i| requests[i].kind == RequestKind::Preemptive);
        let group: Vec<TransferRequest> = preemptive.iter().map(|&i| requests[i].clone()).collect();
        let mut decisions = schedule_batch_preemptive(tl, &group, cfg.mode, &desirability)?;
        let mut order = preemptive;
        for &i in &other {
            let r = &requests[i];
            decisions.push(match r.kind {
                RequestKind::NonpreemptiveFixed => admit_nonpreemptive_fixed(tl, r)?,
                _ => admit_nonpreemptive_unit(tl, r, cfg.unit_policy)?,
            });
        }
        order.extend(other);
        for (&i, d) in order.iter().zip(&decisions) {
            if d.granted {
                report.granted += 1;
                report.total_profit += requests[i].profit;
            }
        }
        report.batches.push(order.iter().map(|&i| requests[i].id.clone()).collect());
        report.decisions.extend(decisions);
    }
    info!("{} of {} requests granted", report.granted, requests.len());
    report.timeline = tl.snapshot();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn event(id: &str, arrival: f64) -> TraceEvent {
        TraceEvent {
            id: id.into(),
            kind: RequestKind::NonpreemptiveFixed,
            start: 1,
            finish: 1,
            data: None,
            bandwidth: Some(1),
            profit: 1.0,
            arrival,
        }
    }

    #[test]
    fn batches_close_on_size_and_timeout() {
        let cfg = BatchConfig { max_batch: 2, flush_timeout: 10.0, ..BatchConfig::default() };
        let events = [event("r1", 0.0), event("r2", 0.0), event("r3", 100.0)];
        assert_eq!(batches_of(&events, &cfg), vec![vec![0, 1], vec![2]]);
        let events = [event("r1", 0.0), event("r2", 5.0), event("r3", 10.0)];
        let cfg = BatchConfig { max_batch: 5, ..cfg };
        assert_eq!(batches_of(&events, &cfg), vec![vec![0, 1, 2]]);
        let cfg = BatchConfig { flush_timeout: 4.0, ..cfg };
        assert_eq!(batches_of(&events, &cfg), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn empty_trace_leaves_timeline_alone() {
        let mut tl = SlotTimeline::from_values(vec![3, 4], 1.0, 5, Backend::SegmentTree).unwrap();
        let report = run_trace(&[], &mut tl, &BatchConfig::default()).unwrap();
        assert!(report.decisions.is_empty() && report.batches.is_empty());
        assert_eq!(report.timeline.avb, vec![3, 4]);
    }

    #[test]
    fn preemptive_first_then_arrival_order() {
        let mut tl = SlotTimeline::from_values(vec![10, 10], 1.0, 10, Backend::SegmentTree).unwrap();
        let mut fixed = event("f", 0.0);
        fixed.finish = 2;
        fixed.bandwidth = Some(6);
        let pre = TraceEvent {
            id: "p".into(),
            kind: RequestKind::Preemptive,
            start: 1,
            finish: 2,
            data: Some(15.0),
            bandwidth: None,
            profit: 2.0,
            arrival: 0.5,
        };
        let report = run_trace(&[fixed, pre], &mut tl, &BatchConfig::default()).unwrap();
        assert_eq!(report.batches, vec![vec!["p".to_string(), "f".to_string()]]);
        assert!(report.decisions[0].granted && !report.decisions[1].granted);
        assert_eq!((report.granted, report.total_profit), (1, 2.0));
        assert_eq!(report.timeline.avb.iter().sum::<i64>(), 5);
    }

    #[test]
    fn rejects_bad_traces() {
        let mut tl = SlotTimeline::from_values(vec![3], 1.0, 5, Backend::SegmentTree).unwrap();
        let mut far = event("x", 0.0);
        far.finish = 2;
        assert_eq!(run_trace(&[far], &mut tl, &BatchConfig::default()).unwrap_err(), Error::SlotOutOfRange { slot: 2, slots: 1 });
        let dup = [event("a", 0.0), event("a", 1.0)];
        assert!(run_trace(&dup, &mut tl, &BatchConfig::default()).is_err());
        let mut no_b = event("b", 0.0);
        no_b.bandwidth = None;
        assert!(run_trace(&[no_b], &mut tl, &BatchConfig::default()).is_err());
        assert!(run_trace(&[], &mut tl, &BatchConfig { max_batch: 0, ..BatchConfig::default() }).is_err());
        assert_eq!(tl.values(), vec![3]);
    }
}
