use std::sync::atomic::{AtomicUsize, Ordering};

use super::RangeStore;

/// Range-add / range-min / range-max segment tree.
///
/// Pending additions are never pushed down: `lazy[node]` is already folded
/// into `min[node]`/`max[node]` but not into the children, so queries only
/// need the sum of lazies on the root path and can run through `&self`.
#[derive(Debug)]
pub struct SegmentTree {
    len: usize,
    min: Vec<i64>,
    max: Vec<(i64, usize)>,
    lazy: Vec<i64>,
    touched: AtomicUsize,
}

impl Clone for SegmentTree {
    fn clone(&self) -> Self {
        SegmentTree {
            len: self.len,
            min: self.min.clone(),
            max: self.max.clone(),
            lazy: self.lazy.clone(),
            touched: AtomicUsize::new(self.touched.load(Ordering::Relaxed)),
        }
    }
}

// leftmost wins ties
fn better_max(a: (i64, usize), b: (i64, usize)) -> (i64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

impl SegmentTree {
    pub fn from_values(values: &[i64]) -> Self {
        assert!(!values.is_empty(), "segment tree needs at least one slot");
        let len = values.len();
        let size = 4 * len;
        let mut tree = SegmentTree {
            len,
            min: vec![0; size],
            max: vec![(0, 0); size],
            lazy: vec![0; size],
            touched: AtomicUsize::new(0),
        };
        tree.build(1, 0, len - 1, values);
        tree
    }

    fn build(&mut self, node: usize, lo: usize, hi: usize, values: &[i64]) {
        if lo == hi {
            self.min[node] = values[lo];
            self.max[node] = (values[lo], lo);
            return;
        }
        let mid = (lo + hi) / 2;
        self.build(2 * node, lo, mid, values);
        self.build(2 * node + 1, mid + 1, hi, values);
        self.pull(node);
    }

    fn pull(&mut self, node: usize) {
        let l = 2 * node;
        let r = l + 1;
        let lazy = self.lazy[node];
        self.min[node] = self.min[l].min(self.min[r]) + lazy;
        let (v, i) = better_max(self.max[l], self.max[r]);
        self.max[node] = (v + lazy, i);
    }

    /// Number of tree nodes visited since the last reset.
    pub fn touched_nodes(&self) -> usize {
        self.touched.load(Ordering::Relaxed)
    }

    pub fn reset_touched(&self) {
        self.touched.store(0, Ordering::Relaxed);
    }

    fn touch(&self) {
        self.touched.fetch_add(1, Ordering::Relaxed);
    }

    fn update(&mut self, node: usize, lo: usize, hi: usize, a: usize, b: usize, delta: i64) {
        self.touch();
        if b < lo || hi < a {
            return;
        }
        if a <= lo && hi <= b {
            self.min[node] += delta;
            self.max[node].0 += delta;
            self.lazy[node] += delta;
            return;
        }
        let mid = (lo + hi) / 2;
        self.update(2 * node, lo, mid, a, b, delta);
        self.update(2 * node + 1, mid + 1, hi, a, b, delta);
        self.pull(node);
    }

    fn query_min(&self, node: usize, lo: usize, hi: usize, a: usize, b: usize, carry: i64) -> i64 {
        self.touch();
        if b < lo || hi < a {
            return i64::MAX;
        }
        if a <= lo && hi <= b {
            return self.min[node] + carry;
        }
        let carry = carry + self.lazy[node];
        let mid = (lo + hi) / 2;
        self.query_min(2 * node, lo, mid, a, b, carry)
            .min(self.query_min(2 * node + 1, mid + 1, hi, a, b, carry))
    }

    fn query_max(&self, node: usize, lo: usize, hi: usize, a: usize, b: usize, carry: i64) -> Option<(i64, usize)> {
        self.touch();
        if b < lo || hi < a {
            return None;
        }
        if a <= lo && hi <= b {
            let (v, i) = self.max[node];
            return Some((v + carry, i));
        }
        let carry = carry + self.lazy[node];
        let mid = (lo + hi) / 2;
        let left = self.query_max(2 * node, lo, mid, a, b, carry);
        let right = self.query_max(2 * node + 1, mid + 1, hi, a, b, carry);
        match (left, right) {
            (Some(l), Some(r)) => Some(better_max(l, r)),
            (l, r) => l.or(r),
        }
    }
}

impl RangeStore for SegmentTree {
    fn len(&self) -> usize {
        self.len
    }

    fn add(&mut self, a: usize, b: usize, delta: i64) {
        self.update(1, 0, self.len - 1, a, b, delta);
    }

    fn min(&self, a: usize, b: usize) -> i64 {
        self.query_min(1, 0, self.len - 1, a, b, 0)
    }

    fn max(&self, a: usize, b: usize) -> (i64, usize) {
        self.query_max(1, 0, self.len - 1, a, b, 0).expect("nonempty range")
    }
}
