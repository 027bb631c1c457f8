//! Slot-indexed available bandwidth.
//!
//! A [`SlotTimeline`] keeps `avb(t)` for slots `1..=T` in integer
//! bandwidth units behind one of three interchangeable range structures.
//! All public slot indices are 1-based; the [`RangeStore`] backends work
//! on 0-based inclusive ranges.

mod blocks;
mod free_runs;
mod grouped;
mod segment;

use serde::{Deserialize, Serialize};

pub use blocks::BlockPartition;
pub use free_runs::{FreeRun, MaxSumSegment, SignedSlotArray};
pub use grouped::{GroupView, GroupedSlots};
pub use segment::SegmentTree;

use crate::error::{Error, Result};

/// Range addition with range minimum / maximum queries over 0-based
/// inclusive ranges. `max` reports the leftmost slot attaining the maximum.
pub trait RangeStore {
    fn len(&self) -> usize;
    fn add(&mut self, a: usize, b: usize, delta: i64);
    fn min(&self, a: usize, b: usize) -> i64;
    fn max(&self, a: usize, b: usize) -> (i64, usize);

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, t: usize) -> i64 {
        self.min(t, t)
    }
}

/// Default block / group size: `ceil(sqrt(T))`.
pub fn default_group_size(slots: usize) -> usize {
    let mut k = (slots as f64).sqrt() as usize;
    while k * k < slots {
        k += 1;
    }
    k.max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Backend {
    SegmentTree,
    BlockPartition { k: Option<usize> },
    GroupedSlots { k: Option<usize>, view: GroupView },
}

impl Backend {
    pub fn grouped_sorted() -> Self {
        Backend::GroupedSlots { k: None, view: GroupView::Sorted }
    }

    pub fn grouped_hashed() -> Self {
        Backend::GroupedSlots { k: None, view: GroupView::Hashed }
    }

    pub fn blocks() -> Self {
        Backend::BlockPartition { k: None }
    }
}

#[derive(Debug, Clone)]
enum Store {
    Segment(SegmentTree),
    Blocks(BlockPartition),
    Grouped(GroupedSlots),
}

impl Store {
    fn build(backend: Backend, values: &[i64]) -> Result<Self> {
        let check_k = |k: Option<usize>| match k {
            Some(0) => Err(Error::Invalid("group size must be positive".into())),
            Some(k) => Ok(k),
            None => Ok(default_group_size(values.len())),
        };
        Ok(match backend {
            Backend::SegmentTree => Store::Segment(SegmentTree::from_values(values)),
            Backend::BlockPartition { k } => Store::Blocks(BlockPartition::from_values(values, check_k(k)?)),
            Backend::GroupedSlots { k, view } => Store::Grouped(GroupedSlots::from_values(values, check_k(k)?, view)),
        })
    }

    fn inner(&self) -> &dyn RangeStore {
        match self {
            Store::Segment(s) => s,
            Store::Blocks(s) => s,
            Store::Grouped(s) => s,
        }
    }

    fn inner_mut(&mut self) -> &mut dyn RangeStore {
        match self {
            Store::Segment(s) => s,
            Store::Blocks(s) => s,
            Store::Grouped(s) => s,
        }
    }
}

/// Available bandwidth per slot, in units, for slots `1..=T`.
#[derive(Debug, Clone)]
pub struct SlotTimeline {
    slot_duration: f64,
    capacity: i64,
    backend: Backend,
    store: Store,
}

impl SlotTimeline {
    /// Every slot starts at the full link capacity.
    pub fn new(slots: usize, slot_duration: f64, capacity: i64, backend: Backend) -> Result<Self> {
        if capacity < 0 {
            return Err(Error::Invalid(format!("negative capacity {capacity}")));
        }
        Self::from_values(vec![capacity; slots], slot_duration, capacity, backend)
    }

    pub fn from_values(avb: Vec<i64>, slot_duration: f64, capacity: i64, backend: Backend) -> Result<Self> {
        if avb.is_empty() {
            return Err(Error::Invalid("timeline needs at least one slot".into()));
        }
        if !(slot_duration > 0.0 && slot_duration.is_finite()) {
            return Err(Error::Invalid(format!("slot duration must be positive, got {slot_duration}")));
        }
        if let Some((i, &v)) = avb.iter().enumerate().find(|(_, &v)| v < 0 || v > capacity) {
            return Err(Error::CapacityViolation { slot: i + 1, value: v, capacity });
        }
        Ok(SlotTimeline { slot_duration, capacity, backend, store: Store::build(backend, &avb)? })
    }

    pub fn from_snapshot(snap: &TimelineSnapshot, backend: Backend) -> Result<Self> {
        if snap.avb.len() != snap.slots {
            return Err(Error::Invalid(format!("avb has {} entries but T = {}", snap.avb.len(), snap.slots)));
        }
        Self::from_values(snap.avb.clone(), snap.slot_duration, snap.capacity, backend)
    }

    pub fn slots(&self) -> usize {
        self.store.inner().len()
    }

    pub fn slot_duration(&self) -> f64 {
        self.slot_duration
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Validates a 1-based inclusive range.
    pub fn check_range(&self, a: usize, b: usize) -> Result<()> {
        let slots = self.slots();
        for slot in [a, b] {
            if slot == 0 || slot > slots {
                return Err(Error::SlotOutOfRange { slot, slots });
            }
        }
        if a > b {
            return Err(Error::ReversedRange { a, b });
        }
        Ok(())
    }

    /// Adds `delta` to `avb(t)` for every `t` in `[a, b]`. Fails without
    /// modifying anything if a slot would leave `[0, B_max]`.
    pub fn range_add(&mut self, a: usize, b: usize, delta: i64) -> Result<()> {
        self.check_range(a, b)?;
        if delta == 0 {
            return Ok(());
        }
        let store = self.store.inner();
        let edge = if delta < 0 { store.min(a - 1, b - 1) } else { store.max(a - 1, b - 1).0 };
        let value = edge.checked_add(delta).ok_or(Error::Overflow)?;
        if value < 0 || value > self.capacity {
            let slot = (a..=b).find(|&t| store.get(t - 1) == edge).unwrap_or(a);
            return Err(Error::CapacityViolation { slot, value, capacity: self.capacity });
        }
        self.store.inner_mut().add(a - 1, b - 1, delta);
        Ok(())
    }

    pub fn range_min(&self, a: usize, b: usize) -> Result<i64> {
        self.check_range(a, b)?;
        Ok(self.store.inner().min(a - 1, b - 1))
    }

    /// Maximum over `[a, b]` and the leftmost slot attaining it.
    pub fn range_max(&self, a: usize, b: usize) -> Result<(i64, usize)> {
        self.check_range(a, b)?;
        let (v, t) = self.store.inner().max(a - 1, b - 1);
        Ok((v, t + 1))
    }

    pub fn get(&self, t: usize) -> Result<i64> {
        self.range_min(t, t)
    }

    pub fn values(&self) -> Vec<i64> {
        let store = self.store.inner();
        (0..store.len()).map(|t| store.get(t)).collect()
    }

    /// Slot in `[a, b]` with the tightest available bandwidth `>= demand`,
    /// smallest slot on ties. Needs the sorted grouped backend.
    pub fn find_best_fit(&self, a: usize, b: usize, demand: i64) -> Result<Option<usize>> {
        self.check_range(a, b)?;
        match &self.store {
            Store::Grouped(g) if g.view() == GroupView::Sorted => Ok(g.best_fit(a - 1, b - 1, demand).map(|t| t + 1)),
            _ => Err(Error::Unsupported("best-fit search needs the sorted grouped-slots backend".into())),
        }
    }

    /// Smallest slot in `[a, b]` with exactly `value` units available.
    /// Needs a grouped backend.
    pub fn find_exact(&self, a: usize, b: usize, value: i64) -> Result<Option<usize>> {
        self.check_range(a, b)?;
        match &self.store {
            Store::Grouped(g) => Ok(g.exact(a - 1, b - 1, value).map(|t| t + 1)),
            _ => Err(Error::Unsupported("exact search needs the grouped-slots backend".into())),
        }
    }

    /// Segment-tree instrumentation, `None` for other backends.
    pub fn segment_tree(&self) -> Option<&SegmentTree> {
        match &self.store {
            Store::Segment(s) => Some(s),
            _ => None,
        }
    }

    pub fn grouped(&self) -> Option<&GroupedSlots> {
        match &self.store {
            Store::Grouped(g) => Some(g),
            _ => None,
        }
    }

    pub fn snapshot(&self) -> TimelineSnapshot {
        TimelineSnapshot {
            slots: self.slots(),
            slot_duration: self.slot_duration,
            capacity: self.capacity,
            avb: self.values(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimelineSnapshot {
    #[serde(rename = "T")]
    pub slots: usize,
    #[serde(rename = "slot_d")]
    pub slot_duration: f64,
    #[serde(rename = "B_max")]
    pub capacity: i64,
    pub avb: Vec<i64>,
}

/// Converts physical bandwidth figures into integer units of
/// `capacity / levels`. Demands round up, supplies round down, so a
/// quantized admission never exceeds the physical link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantizer {
    pub capacity: f64,
    #[serde(default = "Quantizer::default_levels")]
    pub levels: u64,
}

const ROUNDING_SLACK: f64 = 1e-9;

impl Quantizer {
    pub const DEFAULT_LEVELS: u64 = 1000;

    fn default_levels() -> u64 {
        Self::DEFAULT_LEVELS
    }

    pub fn new(capacity: f64, levels: u64) -> Result<Self> {
        if !(capacity > 0.0 && capacity.is_finite()) || levels == 0 {
            return Err(Error::Invalid(format!("bad quantizer capacity={capacity} levels={levels}")));
        }
        Ok(Quantizer { capacity, levels })
    }

    pub fn unit(&self) -> f64 {
        self.capacity / self.levels as f64
    }

    pub fn capacity_units(&self) -> i64 {
        self.levels as i64
    }

    pub fn demand_units(&self, bandwidth: f64) -> i64 {
        (bandwidth / self.unit() - ROUNDING_SLACK).ceil().max(0.0) as i64
    }

    pub fn supply_units(&self, bandwidth: f64) -> i64 {
        (bandwidth / self.unit() + ROUNDING_SLACK).floor().max(0.0) as i64
    }
}
