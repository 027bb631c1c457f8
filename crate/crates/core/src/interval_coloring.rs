//! Interval colorings of the slot horizon `[1, T]`.
//!
//! Three routes to the same result: an ordered interval set updated online,
//! an offline endpoint sweep with a max-heap, and an offline reverse pass
//! over a disjoint-set forest.

use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Color = i64;

/// Paint `[a, b]` with `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringOp {
    pub a: usize,
    pub b: usize,
    pub color: Color,
}

impl ColoringOp {
    pub fn new(a: usize, b: usize, color: Color) -> Self {
        ColoringOp { a, b, color }
    }

    pub fn validate(&self, slots: usize) -> Result<()> {
        for slot in [self.a, self.b] {
            if slot == 0 || slot > slots {
                return Err(Error::SlotOutOfRange { slot, slots });
            }
        }
        if self.a > self.b {
            return Err(Error::ReversedRange { a: self.a, b: self.b });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredInterval {
    pub lo: usize,
    pub hi: usize,
    pub color: Color,
}

/// Maximally-colored disjoint intervals whose union is `[1, T]`: no two
/// adjacent intervals share a color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredIntervalSet {
    slots: usize,
    // lo -> (hi, color)
    runs: BTreeMap<usize, (usize, Color)>,
}

impl ColoredIntervalSet {
    pub fn new(slots: usize, initial: Color) -> Result<Self> {
        if slots == 0 {
            return Err(Error::Invalid("coloring needs at least one slot".into()));
        }
        Ok(ColoredIntervalSet { slots, runs: BTreeMap::from([(1, (slots, initial))]) })
    }

    /// Builds a set from consecutive intervals, merging equal-colored
    /// neighbours.
    fn from_consecutive(slots: usize, pieces: impl IntoIterator<Item = ColoredInterval>) -> Self {
        let mut runs: BTreeMap<usize, (usize, Color)> = BTreeMap::new();
        let mut last: Option<(usize, usize, Color)> = None;
        for p in pieces {
            last = match last {
                Some((lo, _, c)) if c == p.color => Some((lo, p.hi, c)),
                Some((lo, hi, c)) => {
                    runs.insert(lo, (hi, c));
                    Some((p.lo, p.hi, p.color))
                }
                None => Some((p.lo, p.hi, p.color)),
            };
        }
        if let Some((lo, hi, c)) = last {
            runs.insert(lo, (hi, c));
        }
        ColoredIntervalSet { slots, runs }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn intervals(&self) -> Vec<ColoredInterval> {
        self.runs.iter().map(|(&lo, &(hi, color))| ColoredInterval { lo, hi, color }).collect()
    }

    pub fn color_at(&self, t: usize) -> Option<Color> {
        self.runs.range(..=t).next_back().filter(|(_, &(hi, _))| t <= hi).map(|(_, &(_, c))| c)
    }

    /// Colors `[op.a, op.b]` and restores maximality.
    pub fn color_online(&mut self, op: ColoringOp) -> Result<()> {
        op.validate(self.slots)?;
        let ColoringOp { mut a, mut b, color } = op;

        // intervals overlapping [a, b], left to right
        let first = self.runs.range(..=a).next_back().map(|(&lo, _)| lo).unwrap_or(a);
        let overlapping: Vec<(usize, usize, Color)> =
            self.runs.range(first..=b).map(|(&lo, &(hi, c))| (lo, hi, c)).filter(|&(_, hi, _)| hi >= a).collect();

        for &(lo, hi, c) in &overlapping {
            self.runs.remove(&lo);
            if lo < a {
                self.runs.insert(lo, (a - 1, c));
            }
            if hi > b {
                self.runs.insert(b + 1, (hi, c));
            }
        }
        self.runs.insert(a, (b, color));

        if a > 1 {
            let (&lo, &(_, c)) = self.runs.range(..a).next_back().expect("left neighbour exists");
            if c == color {
                self.runs.remove(&a);
                self.runs.insert(lo, (b, color));
                a = lo;
            }
        }
        if b < self.slots {
            let &(hi, c) = self.runs.get(&(b + 1)).expect("right neighbour starts at b + 1");
            if c == color {
                self.runs.remove(&(b + 1));
                self.runs.insert(a, (hi, color));
                b = hi;
            }
        }
        debug_assert!(self.runs.get(&a).is_some_and(|&(hi, _)| hi == b));
        Ok(())
    }
}

/// Offline coloring by sweeping sorted endpoints with a max-heap keyed by
/// operation index. Memory is proportional to the number of operations,
/// independent of `T`.
pub fn color_offline_sweep(slots: usize, ops: &[ColoringOp], initial: Color) -> Result<ColoredIntervalSet> {
    if slots == 0 {
        return Err(Error::Invalid("coloring needs at least one slot".into()));
    }
    for op in ops {
        op.validate(slots)?;
    }
    // operation k has value k; the background [1, T] has value 0
    let mut intervals: Vec<ColoringOp> = Vec::with_capacity(ops.len() + 1);
    intervals.push(ColoringOp::new(1, slots, initial));
    intervals.extend_from_slice(ops);

    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum End {
        Left,
        Right,
    }
    let mut events: Vec<(usize, End, usize)> = Vec::with_capacity(2 * intervals.len());
    for (v, op) in intervals.iter().enumerate() {
        events.push((op.a, End::Left, v));
        events.push((op.b, End::Right, v));
    }
    // equal positions: left endpoints first
    events.sort_unstable();

    const FAKE: i64 = i64::MIN;
    let mut heap: BinaryHeap<i64> = BinaryHeap::from([FAKE]);
    let mut active = vec![false; intervals.len()];
    let color_of = |value: i64| if value == FAKE { initial } else { intervals[value as usize].color };
    let top = |heap: &mut BinaryHeap<i64>, active: &[bool]| -> i64 {
        while let Some(&v) = heap.peek() {
            if v == FAKE || active[v as usize] {
                return v;
            }
            heap.pop();
        }
        unreachable!("fake interval never leaves the heap")
    };

    let mut tuples: Vec<(usize, i64)> = Vec::new();
    let mut i = 0;
    while i < events.len() {
        let (pos, end, _) = events[i];
        let mut j = i;
        while j < events.len() && events[j].0 == pos && events[j].1 == end {
            let v = events[j].2;
            match end {
                End::Left => {
                    active[v] = true;
                    heap.push(v as i64);
                }
                End::Right => active[v] = false,
            }
            j += 1;
        }
        let best = top(&mut heap, &active);
        tuples.push(match end {
            End::Left => (pos, best),
            End::Right => (pos + 1, best),
        });
        i = j;
    }

    // same position: keep the largest value
    let mut kept: Vec<(usize, i64)> = Vec::with_capacity(tuples.len());
    for (t, v) in tuples {
        match kept.last_mut() {
            Some(last) if last.0 == t => last.1 = last.1.max(v),
            _ => kept.push((t, v)),
        }
    }
    debug_assert_eq!(kept.first().map(|k| k.0), Some(1));
    debug_assert_eq!(kept.last().map(|k| k.0), Some(slots + 1));

    let pieces = kept.windows(2).map(|w| ColoredInterval { lo: w[0].0, hi: w[1].0 - 1, color: color_of(w[0].1) });
    Ok(ColoredIntervalSet::from_consecutive(slots, pieces))
}

/// Disjoint-set forest over slots where every set is a contiguous colored
/// run; representatives know their run's bounds.
#[derive(Debug, Clone)]
pub struct IntervalDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    colored: Vec<bool>,
    find_steps: u64,
}

impl IntervalDsu {
    /// Slots `1..=slots`, index 0 unused.
    pub fn new(slots: usize) -> Self {
        IntervalDsu {
            parent: (0..=slots).collect(),
            size: vec![1; slots + 1],
            left: (0..=slots).collect(),
            right: (0..=slots).collect(),
            colored: vec![false; slots + 1],
            find_steps: 0,
        }
    }

    pub fn find(&mut self, t: usize) -> usize {
        let mut root = t;
        while self.parent[root] != root {
            root = self.parent[root];
            self.find_steps += 1;
        }
        let mut cur = t;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.left[a] = self.left[a].min(self.left[b]);
        self.right[a] = self.right[a].max(self.right[b]);
    }

    pub fn is_colored(&self, t: usize) -> bool {
        self.colored[t]
    }

    /// Bounds of the run containing `t`.
    pub fn run(&mut self, t: usize) -> (usize, usize) {
        let r = self.find(t);
        (self.left[r], self.right[r])
    }

    /// Parent-pointer hops taken by `find` so far.
    pub fn find_steps(&self) -> u64 {
        self.find_steps
    }

    fn mark(&mut self, t: usize) {
        self.colored[t] = true;
        if t > 1 && self.colored[t - 1] {
            self.union(t, t - 1);
        }
        if t + 1 < self.colored.len() && self.colored[t + 1] {
            self.union(t, t + 1);
        }
    }
}

/// Offline coloring processing operations last-to-first; each slot is
/// colored at most once.
pub fn color_offline_dsu(slots: usize, ops: &[ColoringOp], initial: Color) -> Result<ColoredIntervalSet> {
    color_offline_dsu_traced(slots, ops, initial).map(|(set, _)| set)
}

/// As [`color_offline_dsu`], also returning the forest's total `find`
/// steps.
pub fn color_offline_dsu_traced(slots: usize, ops: &[ColoringOp], initial: Color) -> Result<(ColoredIntervalSet, u64)> {
    if slots == 0 {
        return Err(Error::Invalid("coloring needs at least one slot".into()));
    }
    for op in ops {
        op.validate(slots)?;
    }
    let mut dsu = IntervalDsu::new(slots);
    let mut colors = vec![initial; slots + 1];
    for op in ops.iter().rev() {
        let mut idx = op.a;
        while idx <= op.b {
            if dsu.is_colored(idx) {
                idx = dsu.run(idx).1 + 1;
            } else {
                colors[idx] = op.color;
                dsu.mark(idx);
                idx += 1;
            }
        }
    }
    let pieces = (1..=slots).map(|t| ColoredInterval { lo: t, hi: t, color: colors[t] });
    Ok((ColoredIntervalSet::from_consecutive(slots, pieces), dsu.find_steps()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize, color: Color) -> ColoredInterval {
        ColoredInterval { lo, hi, color }
    }

    #[test]
    fn online_split_and_merges() {
        let mut set = ColoredIntervalSet::new(10, 0).unwrap();
        set.color_online(ColoringOp::new(3, 5, 1)).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 2, 0), iv(3, 5, 1), iv(6, 10, 0)]);
        set.color_online(ColoringOp::new(6, 8, 1)).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 2, 0), iv(3, 8, 1), iv(9, 10, 0)]);
        set.color_online(ColoringOp::new(1, 10, 0)).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 10, 0)]);
    }

    #[test]
    fn online_merges_both_sides() {
        let mut set = ColoredIntervalSet::new(9, 0).unwrap();
        set.color_online(ColoringOp::new(4, 6, 2)).unwrap();
        set.color_online(ColoringOp::new(4, 6, 0)).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 9, 0)]);
        set.color_online(ColoringOp::new(2, 2, 5)).unwrap();
        set.color_online(ColoringOp::new(4, 4, 5)).unwrap();
        set.color_online(ColoringOp::new(3, 3, 5)).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 1, 0), iv(2, 4, 5), iv(5, 9, 0)]);
        assert_eq!(set.color_at(3), Some(5));
        assert_eq!(set.color_at(10), None);
    }

    #[test]
    fn offline_examples() {
        let ops = [ColoringOp::new(3, 5, 1), ColoringOp::new(6, 8, 1), ColoringOp::new(1, 10, 0)];
        for f in [color_offline_sweep, color_offline_dsu] {
            assert_eq!(f(10, &[], 4).unwrap().intervals(), vec![iv(1, 10, 4)]);
            assert_eq!(f(10, &ops, 0).unwrap().intervals(), vec![iv(1, 10, 0)]);
            let two = [ColoringOp::new(1, 4, 2), ColoringOp::new(3, 6, 3)];
            assert_eq!(f(6, &two, 0).unwrap().intervals(), vec![iv(1, 2, 2), iv(3, 6, 3)]);
            assert_eq!(f(7, &[ColoringOp::new(1, 7, 9)], 0).unwrap().intervals(), vec![iv(1, 7, 9)]);
            assert_eq!(
                f(5, &[ColoringOp::new(2, 2, 7)], 1).unwrap().intervals(),
                vec![iv(1, 1, 1), iv(2, 2, 7), iv(3, 5, 1)]
            );
        }
    }

    #[test]
    fn sweep_touching_endpoints() {
        // [2,3] then [4,5]: the right end of one meets the left of the next
        let ops = [ColoringOp::new(2, 3, 1), ColoringOp::new(4, 5, 2), ColoringOp::new(3, 3, 2)];
        let set = color_offline_sweep(6, &ops, 0).unwrap();
        assert_eq!(set.intervals(), vec![iv(1, 1, 0), iv(2, 2, 1), iv(3, 5, 2), iv(6, 6, 0)]);
    }

    #[test]
    fn sweep_huge_horizon() {
        let t = 1_000_000_000;
        let ops = [ColoringOp::new(5, t - 5, 1), ColoringOp::new(100, 200, 2)];
        let set = color_offline_sweep(t, &ops, 0).unwrap();
        assert_eq!(set.len(), 5);
        assert_eq!(set.color_at(150), Some(2));
    }

    #[test]
    fn invalid_ops() {
        assert!(color_offline_sweep(5, &[ColoringOp::new(0, 2, 1)], 0).is_err());
        assert!(color_offline_dsu(5, &[ColoringOp::new(3, 2, 1)], 0).is_err());
        let mut set = ColoredIntervalSet::new(5, 0).unwrap();
        assert!(set.color_online(ColoringOp::new(4, 6, 1)).is_err());
    }
}
