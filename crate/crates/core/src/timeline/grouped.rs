use std::collections::HashMap;

use super::RangeStore;

/// Per-group lookup structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupView {
    /// Stored values kept in ascending `(value, slot)` order; supports
    /// best-fit queries by binary search.
    Sorted,
    /// Stored values bucketed in a hash table; supports exact-value lookups.
    Hashed,
}

#[derive(Debug, Clone)]
enum View {
    Sorted(Vec<(i64, usize)>),
    Hashed {
        buckets: HashMap<i64, Vec<usize>>,
        min: i64,
        max: (i64, usize),
    },
}

#[derive(Debug, Clone)]
struct Group {
    lo: usize,
    hi: usize,
    globalbw: i64,
    view: View,
}

/// Slots split into groups of `k`; the real value of slot `t` in group `G`
/// is `stored[t] + G.globalbw`.
#[derive(Debug, Clone)]
pub struct GroupedSlots {
    k: usize,
    stored: Vec<i64>,
    groups: Vec<Group>,
    kind: GroupView,
}

impl GroupedSlots {
    pub fn from_values(values: &[i64], k: usize, kind: GroupView) -> Self {
        assert!(!values.is_empty() && k > 0);
        let groups = (0..values.len().div_ceil(k))
            .map(|g| Group {
                lo: g * k,
                hi: ((g + 1) * k).min(values.len()) - 1,
                globalbw: 0,
                view: View::Sorted(Vec::new()),
            })
            .collect();
        let mut gs = GroupedSlots { k, stored: values.to_vec(), groups, kind };
        for g in 0..gs.groups.len() {
            gs.rebuild(g);
        }
        gs
    }

    pub fn view(&self) -> GroupView {
        self.kind
    }

    pub fn group_size(&self) -> usize {
        self.k
    }

    /// Pending addition of the group containing slot `t` (0-based).
    pub fn globalbw(&self, t: usize) -> i64 {
        self.groups[t / self.k].globalbw
    }

    /// Value stored for slot `t` before adding its group's `globalbw`.
    pub fn stored(&self, t: usize) -> i64 {
        self.stored[t]
    }

    fn rebuild(&mut self, g: usize) {
        let (lo, hi) = (self.groups[g].lo, self.groups[g].hi);
        let members = (lo..=hi).map(|t| (self.stored[t], t));
        self.groups[g].view = match self.kind {
            GroupView::Sorted => {
                let mut sorted: Vec<_> = members.collect();
                sorted.sort_unstable();
                View::Sorted(sorted)
            }
            GroupView::Hashed => {
                let mut buckets: HashMap<i64, Vec<usize>> = HashMap::new();
                let mut min = i64::MAX;
                let mut max = (i64::MIN, lo);
                for (v, t) in members {
                    buckets.entry(v).or_default().push(t);
                    min = min.min(v);
                    if v > max.0 {
                        max = (v, t);
                    }
                }
                View::Hashed { buckets, min, max }
            }
        };
    }

    fn group_min(&self, g: &Group) -> i64 {
        let base = match &g.view {
            View::Sorted(s) => s[0].0,
            View::Hashed { min, .. } => *min,
        };
        base + g.globalbw
    }

    fn group_max(&self, g: &Group) -> (i64, usize) {
        let (v, t) = match &g.view {
            View::Sorted(s) => {
                let top = s[s.len() - 1].0;
                s[s.partition_point(|e| e.0 < top)]
            }
            View::Hashed { max, .. } => *max,
        };
        (v + g.globalbw, t)
    }

    /// Visits the groups overlapping `[a, b]`, passing whether each is
    /// fully inside the range.
    fn for_groups(&self, a: usize, b: usize, mut f: impl FnMut(&Group, bool)) {
        for g in &self.groups[a / self.k..=b / self.k] {
            f(g, a <= g.lo && g.hi <= b);
        }
    }

    /// Slot in `[a, b]` with the smallest real value `>= demand`; ties go to
    /// the smallest slot. Requires the sorted view.
    pub fn best_fit(&self, a: usize, b: usize, demand: i64) -> Option<usize> {
        assert_eq!(self.kind, GroupView::Sorted, "best fit needs the sorted view");
        let mut best: Option<(i64, usize)> = None;
        let mut offer = |cand: (i64, usize)| {
            if best.is_none_or(|cur| cand < cur) {
                best = Some(cand);
            }
        };
        self.for_groups(a, b, |g, internal| {
            if internal {
                let View::Sorted(s) = &g.view else { unreachable!() };
                let want = demand - g.globalbw;
                if let Some(&(v, t)) = s.get(s.partition_point(|e| e.0 < want)) {
                    offer((v + g.globalbw, t));
                }
            } else {
                for t in g.lo.max(a)..=g.hi.min(b) {
                    let v = self.stored[t] + g.globalbw;
                    if v >= demand {
                        offer((v, t));
                    }
                }
            }
        });
        best.map(|(_, t)| t)
    }

    /// Smallest slot in `[a, b]` whose real value equals `value`.
    pub fn exact(&self, a: usize, b: usize, value: i64) -> Option<usize> {
        let mut found: Option<usize> = None;
        self.for_groups(a, b, |g, internal| {
            if found.is_some() {
                return;
            }
            let want = value - g.globalbw;
            if internal {
                found = match &g.view {
                    View::Hashed { buckets, .. } => buckets.get(&want).map(|slots| slots[0]),
                    View::Sorted(s) => s.get(s.partition_point(|e| e.0 < want)).filter(|e| e.0 == want).map(|e| e.1),
                };
            } else {
                found = (g.lo.max(a)..=g.hi.min(b)).find(|&t| self.stored[t] == want);
            }
        });
        found
    }
}

impl RangeStore for GroupedSlots {
    fn len(&self) -> usize {
        self.stored.len()
    }

    fn add(&mut self, a: usize, b: usize, delta: i64) {
        for g in a / self.k..=b / self.k {
            let (lo, hi) = (self.groups[g].lo, self.groups[g].hi);
            if a <= lo && hi <= b {
                self.groups[g].globalbw += delta;
            } else {
                for t in lo.max(a)..=hi.min(b) {
                    self.stored[t] += delta;
                }
                self.rebuild(g);
            }
        }
    }

    fn min(&self, a: usize, b: usize) -> i64 {
        let mut best = i64::MAX;
        self.for_groups(a, b, |g, internal| {
            if internal {
                best = best.min(self.group_min(g));
            } else {
                for t in g.lo.max(a)..=g.hi.min(b) {
                    best = best.min(self.stored[t] + g.globalbw);
                }
            }
        });
        best
    }

    fn max(&self, a: usize, b: usize) -> (i64, usize) {
        let mut best = (i64::MIN, usize::MAX);
        self.for_groups(a, b, |g, internal| {
            if internal {
                let cand = self.group_max(g);
                if cand.0 > best.0 {
                    best = cand;
                }
            } else {
                for t in g.lo.max(a)..=g.hi.min(b) {
                    let v = self.stored[t] + g.globalbw;
                    if v > best.0 {
                        best = (v, t);
                    }
                }
            }
        });
        best
    }
}
