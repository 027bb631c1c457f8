//! Longest run of free slots as a maximum-sum-segment query.
//!
//! Each free slot carries `A > 0`; a reservation adds `X < -T·A` to its
//! slots and a cancellation adds `-X` back. Slot values are therefore
//! `A + k·X` where `k` is the slot's reservation multiplicity, and any
//! segment touching an occupied slot has negative sum. The tree stores the
//! multiplicity statistics (minimum `k` and runs attaining it), which
//! survive uniform range additions unchanged, and derives the signed
//! segment answer from them.

use crate::error::{Error, Result};

/// Best segment of a [`SignedSlotArray`] query. Slots are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxSumSegment {
    pub sum: i64,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeRun {
    /// First slot of the run; meaningless when `len == 0`.
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    len: usize,
    lo: usize,
    min_k: i64,
    /// leftmost slot attaining `min_k`
    first_min: usize,
    prefix: usize,
    suffix: usize,
    best_len: usize,
    best_start: usize,
}

impl Node {
    fn leaf(t: usize, k: i64) -> Self {
        Node { len: 1, lo: t, min_k: k, first_min: t, prefix: 1, suffix: 1, best_len: 1, best_start: t }
    }

    fn shifted(mut self, dk: i64) -> Self {
        self.min_k += dk;
        self
    }

    fn merge(l: Node, r: Node) -> Node {
        let min_k = l.min_k.min(r.min_k);
        let lm = l.min_k == min_k;
        let rm = r.min_k == min_k;
        let first_min = if lm { l.first_min } else { r.first_min };
        let prefix = match (lm, rm) {
            (true, true) if l.prefix == l.len => l.len + r.prefix,
            (true, _) => l.prefix,
            (false, _) => 0,
        };
        let suffix = match (lm, rm) {
            (true, true) if r.suffix == r.len => r.len + l.suffix,
            (_, true) => r.suffix,
            (_, false) => 0,
        };
        // candidates in left-to-right order so ties keep the leftmost
        let mut best = (0usize, first_min);
        let mut offer = |len: usize, start: usize| {
            if len > best.0 {
                best = (len, start);
            }
        };
        if lm {
            offer(l.best_len, l.best_start);
        }
        if lm && rm {
            offer(l.suffix + r.prefix, l.lo + l.len - l.suffix);
        }
        if rm {
            offer(r.best_len, r.best_start);
        }
        Node { len: l.len + r.len, lo: l.lo, min_k, first_min, prefix, suffix, best_len: best.0, best_start: best.1 }
    }
}

#[derive(Debug, Clone)]
pub struct SignedSlotArray {
    slots: usize,
    free_weight: i64,
    occupied_delta: i64,
    nodes: Vec<Node>,
    lazy: Vec<i64>,
}

impl SignedSlotArray {
    /// All slots free, `A = free_weight`, `X = -(T·A) - 1`.
    pub fn new(slots: usize, free_weight: i64) -> Result<Self> {
        let bound = (slots as i64).checked_mul(free_weight).ok_or(Error::Overflow)?;
        Self::with_delta(slots, free_weight, -bound - 1)
    }

    pub fn with_delta(slots: usize, free_weight: i64, occupied_delta: i64) -> Result<Self> {
        if slots == 0 {
            return Err(Error::Invalid("timeline needs at least one slot".into()));
        }
        if free_weight <= 0 {
            return Err(Error::Invalid(format!("free weight must be positive, got {free_weight}")));
        }
        let bound = (slots as i64).checked_mul(free_weight).ok_or(Error::Overflow)?;
        if occupied_delta >= -bound {
            return Err(Error::Invalid(format!("occupation delta {occupied_delta} must be below -{bound}")));
        }
        let mut arr = SignedSlotArray {
            slots,
            free_weight,
            occupied_delta,
            nodes: vec![Node::leaf(1, 0); 4 * slots],
            lazy: vec![0; 4 * slots],
        };
        arr.build(1, 1, slots);
        Ok(arr)
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize) {
        if lo == hi {
            self.nodes[node] = Node::leaf(lo, 0);
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid);
        self.build(2 * node + 1, mid + 1, hi);
        self.nodes[node] = Node::merge(self.nodes[2 * node], self.nodes[2 * node + 1]);
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn free_weight(&self) -> i64 {
        self.free_weight
    }

    pub fn occupied_delta(&self) -> i64 {
        self.occupied_delta
    }

    fn check(&self, a: usize, b: usize) -> Result<()> {
        for slot in [a, b] {
            if slot == 0 || slot > self.slots {
                return Err(Error::SlotOutOfRange { slot, slots: self.slots });
            }
        }
        if a > b {
            return Err(Error::ReversedRange { a, b });
        }
        Ok(())
    }

    fn update(&mut self, node: usize, lo: usize, hi: usize, a: usize, b: usize, dk: i64) {
        if b < lo || hi < a {
            return;
        }
        if a <= lo && hi <= b {
            self.nodes[node] = self.nodes[node].shifted(dk);
            self.lazy[node] += dk;
            return;
        }
        let mid = (lo + hi) / 2;
        self.update(2 * node, lo, mid, a, b, dk);
        self.update(2 * node + 1, mid + 1, hi, a, b, dk);
        self.nodes[node] = Node::merge(self.nodes[2 * node], self.nodes[2 * node + 1]).shifted(self.lazy[node]);
    }

    fn query(&self, node: usize, lo: usize, hi: usize, a: usize, b: usize, carry: i64) -> Option<Node> {
        if b < lo || hi < a {
            return None;
        }
        if a <= lo && hi <= b {
            return Some(self.nodes[node].shifted(carry));
        }
        let carry = carry + self.lazy[node];
        let mid = (lo + hi) / 2;
        match (self.query(2 * node, lo, mid, a, b, carry), self.query(2 * node + 1, mid + 1, hi, a, b, carry)) {
            (Some(l), Some(r)) => Some(Node::merge(l, r)),
            (l, r) => l.or(r),
        }
    }

    /// Adds `delta` to every slot of `[a, b]`. `delta` must be a multiple of
    /// the occupation delta `X`, and no slot may drop below zero
    /// reservations.
    pub fn range_add(&mut self, a: usize, b: usize, delta: i64) -> Result<()> {
        self.check(a, b)?;
        if delta % self.occupied_delta != 0 {
            return Err(Error::Invalid(format!(
                "delta {delta} is not a multiple of the occupation delta {}",
                self.occupied_delta
            )));
        }
        let dk = delta / self.occupied_delta;
        if dk < 0 {
            let node = self.query(1, 1, self.slots, a, b, 0).expect("nonempty range");
            if node.min_k + dk < 0 {
                return Err(Error::Invalid(format!("slot {} is not reserved in [{a}, {b}]", node.first_min)));
            }
        }
        self.update(1, 1, self.slots, a, b, dk);
        Ok(())
    }

    pub fn reserve(&mut self, a: usize, b: usize) -> Result<()> {
        self.range_add(a, b, self.occupied_delta)
    }

    pub fn cancel(&mut self, a: usize, b: usize) -> Result<()> {
        self.range_add(a, b, -self.occupied_delta)
    }

    /// Current signed value of slot `t`.
    pub fn value(&self, t: usize) -> Result<i64> {
        self.check(t, t)?;
        let k = self.query(1, 1, self.slots, t, t, 0).expect("nonempty range").min_k;
        Ok(self.free_weight + k * self.occupied_delta)
    }

    /// Maximum-sum segment fully inside `[a, b]`; ties go to the leftmost.
    pub fn max_sum_segment(&self, a: usize, b: usize) -> Result<MaxSumSegment> {
        self.check(a, b)?;
        let node = self.query(1, 1, self.slots, a, b, 0).expect("nonempty range");
        Ok(if node.min_k == 0 {
            MaxSumSegment { sum: self.free_weight * node.best_len as i64, start: node.best_start, len: node.best_len }
        } else {
            MaxSumSegment { sum: self.free_weight + node.min_k * self.occupied_delta, start: node.first_min, len: 1 }
        })
    }

    /// Longest run of free slots inside `[a, b]`; `len == 0` when none.
    pub fn longest_free_interval(&self, a: usize, b: usize) -> Result<FreeRun> {
        let seg = self.max_sum_segment(a, b)?;
        Ok(if seg.sum > 0 {
            FreeRun { start: seg.start, len: seg.len }
        } else {
            FreeRun { start: 0, len: 0 }
        })
    }
}
