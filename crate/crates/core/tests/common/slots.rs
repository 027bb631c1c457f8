use flowsched::timeline::{Backend, GroupView, SlotTimeline};
use flowsched::Error;
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub enum SlotOp {
    Add(usize, usize, i64),
    Min(usize, usize),
    Max(usize, usize),
    BestFit(usize, usize, i64),
    Exact(usize, usize, i64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Add(Result<(), Error>),
    Min(i64),
    Max(i64, usize),
    Slot(Option<usize>),
}

/// Plain-array timeline, the reference for every backend.
pub struct ArrayTimeline {
    pub avb: Vec<i64>,
    pub capacity: i64,
}

impl ArrayTimeline {
    fn range(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        (a..=b).map(|t| (t, self.avb[t - 1]))
    }

    pub fn apply(&mut self, op: SlotOp) -> Answer {
        match op {
            SlotOp::Add(a, b, delta) => {
                // the extreme slot in the direction of `delta` is the one that can break
                let values = self.range(a, b).map(|p| p.1);
                let edge = if delta < 0 { values.min() } else { values.max() }.unwrap();
                let value = edge + delta;
                if delta != 0 && (value < 0 || value > self.capacity) {
                    let slot = self.range(a, b).find(|p| p.1 == edge).unwrap().0;
                    return Answer::Add(Err(Error::CapacityViolation { slot, value, capacity: self.capacity }));
                }
                for t in a..=b {
                    self.avb[t - 1] += delta;
                }
                Answer::Add(Ok(()))
            }
            SlotOp::Min(a, b) => Answer::Min(self.range(a, b).map(|p| p.1).min().unwrap()),
            SlotOp::Max(a, b) => {
                let best = self.range(a, b).map(|p| p.1).max().unwrap();
                Answer::Max(best, self.range(a, b).find(|p| p.1 == best).unwrap().0)
            }
            SlotOp::BestFit(a, b, demand) => {
                Answer::Slot(self.range(a, b).filter(|p| p.1 >= demand).min_by_key(|&(t, v)| (v, t)).map(|p| p.0))
            }
            SlotOp::Exact(a, b, value) => Answer::Slot(self.range(a, b).find(|p| p.1 == value).map(|p| p.0)),
        }
    }
}

pub fn apply(tl: &mut SlotTimeline, op: SlotOp) -> Option<Answer> {
    Some(match op {
        SlotOp::Add(a, b, d) => Answer::Add(tl.range_add(a, b, d)),
        SlotOp::Min(a, b) => Answer::Min(tl.range_min(a, b).unwrap()),
        SlotOp::Max(a, b) => {
            let (v, t) = tl.range_max(a, b).unwrap();
            Answer::Max(v, t)
        }
        SlotOp::BestFit(a, b, d) => match tl.backend() {
            Backend::GroupedSlots { view: GroupView::Sorted, .. } => Answer::Slot(tl.find_best_fit(a, b, d).unwrap()),
            _ => return None,
        },
        SlotOp::Exact(a, b, v) => match tl.backend() {
            Backend::GroupedSlots { .. } => Answer::Slot(tl.find_exact(a, b, v).unwrap()),
            _ => return None,
        },
    })
}

pub const BACKENDS: [Backend; 6] = [
    Backend::SegmentTree,
    Backend::BlockPartition { k: None },
    Backend::BlockPartition { k: Some(3) },
    Backend::GroupedSlots { k: None, view: GroupView::Sorted },
    Backend::GroupedSlots { k: Some(5), view: GroupView::Sorted },
    Backend::GroupedSlots { k: None, view: GroupView::Hashed },
];

pub fn random_op<R: Rng>(rng: &mut R, slots: usize, capacity: i64) -> SlotOp {
    let a = rng.gen_range(1..=slots);
    let b = rng.gen_range(a..=slots);
    match rng.gen_range(0..5) {
        0 => SlotOp::Add(a, b, rng.gen_range(-capacity / 2..=capacity / 2)),
        1 => SlotOp::Min(a, b),
        2 => SlotOp::Max(a, b),
        3 => SlotOp::BestFit(a, b, rng.gen_range(0..=capacity)),
        _ => SlotOp::Exact(a, b, rng.gen_range(0..=capacity)),
    }
}

/// Replays `ops` on every backend and the array; returns the first
/// disagreement.
pub fn replay(initial: &[i64], capacity: i64, ops: &[SlotOp]) -> Result<(), String> {
    let mut oracle = ArrayTimeline { avb: initial.to_vec(), capacity };
    let mut timelines: Vec<SlotTimeline> = BACKENDS
        .iter()
        .map(|&b| SlotTimeline::from_values(initial.to_vec(), 1.0, capacity, b).unwrap())
        .collect();
    for (k, &op) in ops.iter().enumerate() {
        let expected = oracle.apply(op);
        for tl in &mut timelines {
            if let Some(got) = apply(tl, op) {
                if got != expected {
                    return Err(format!("op {k} {op:?} on {:?}: expected {expected:?}, got {got:?}", tl.backend()));
                }
            }
        }
    }
    for tl in &timelines {
        if tl.values() != oracle.avb {
            return Err(format!("{:?} final values differ", tl.backend()));
        }
    }
    Ok(())
}
