//! Largest-revenue path under a cost cap.
//!
//! Centroid decomposition reduces the problem to finding the best path
//! through a fixed vertex `r` of each component. Paths through `r` are
//! either a single arm `r → i` or two arms joined at `r` through different
//! sons, possibly paying a switching cost/revenue at `r`.

use std::cmp::Reverse;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Cost = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchingCase {
    /// Small vertex degrees; switching terms allowed.
    BoundedDegree,
    /// Arbitrary degrees; all switching terms are zero.
    ZeroSwitching,
}

/// How two-arm candidates through the root are matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoArmStrategy {
    /// Comparison sort plus binary search.
    Search,
    /// Counting sort over integer costs `0..=CC_max` plus prefix arrays.
    BoundedCost,
    /// Vertices in increasing cost order with a rolling index.
    TwoPointer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Arc {
    to: usize,
    cost: Cost,
    revenue: Cost,
}

#[derive(Debug, Clone)]
pub struct CostRevenueTree {
    adj: Vec<Vec<Arc>>,
    switch_cost: HashMap<(usize, usize, usize), Cost>,
    switch_revenue: HashMap<(usize, usize, usize), Cost>,
    c_max: Cost,
    case: SwitchingCase,
    cc_max: Option<Cost>,
    d_max: Option<usize>,
}

fn switch_key(u: usize, v: usize, w: usize) -> (usize, usize, usize) {
    (u, v.min(w), v.max(w))
}

impl CostRevenueTree {
    /// `edges` are `(u, v, C(u,v), P(u,v))`.
    pub fn new(n: usize, edges: &[(usize, usize, Cost, Cost)], c_max: Cost, case: SwitchingCase) -> Result<Self> {
        if n > 0 && edges.len() != n - 1 || n == 0 && !edges.is_empty() {
            return Err(Error::Invalid(format!("a tree on {n} vertices cannot have {} edges", edges.len())));
        }
        if c_max < 0 {
            return Err(Error::Invalid("C_max must be non-negative".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, cost, revenue) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at vertex {u}")));
            }
            if cost < 0 || revenue < 0 {
                return Err(Error::Invalid(format!("edge ({u}, {v}) has a negative cost or revenue")));
            }
            adj[u].push(Arc { to: v, cost, revenue });
            adj[v].push(Arc { to: u, cost, revenue });
        }
        for list in &mut adj {
            list.sort_by_key(|a| a.to);
        }
        let tree = CostRevenueTree {
            adj,
            switch_cost: HashMap::new(),
            switch_revenue: HashMap::new(),
            c_max,
            case,
            cc_max: None,
            d_max: None,
        };
        if n > 0 {
            let reached = tree.component_from(0, &vec![false; n]).len();
            if reached != n {
                return Err(Error::Invalid("edges do not connect all vertices".into()));
            }
        }
        Ok(tree)
    }

    fn check_turn(&self, u: usize, v: usize, w: usize, value: Cost) -> Result<()> {
        for x in [u, v, w] {
            if x >= self.len() {
                return Err(Error::UnknownVertex(x));
            }
        }
        if v == w || self.arc(u, v).is_none() || self.arc(u, w).is_none() {
            return Err(Error::Invalid(format!("({u}, {v}) and ({u}, {w}) are not neighboring edges")));
        }
        if value < 0 {
            return Err(Error::Invalid("switching terms must be non-negative".into()));
        }
        if self.case == SwitchingCase::ZeroSwitching && value != 0 {
            return Err(Error::Invalid("zero_switching trees cannot carry switching terms".into()));
        }
        Ok(())
    }

    /// Sets `SC(u, v, w) = SC(u, w, v)`.
    pub fn set_switching_cost(&mut self, u: usize, v: usize, w: usize, value: Cost) -> Result<()> {
        self.check_turn(u, v, w, value)?;
        self.switch_cost.insert(switch_key(u, v, w), value);
        Ok(())
    }

    /// Sets `SP(u, v, w) = SP(u, w, v)`.
    pub fn set_switching_revenue(&mut self, u: usize, v: usize, w: usize, value: Cost) -> Result<()> {
        self.check_turn(u, v, w, value)?;
        self.switch_revenue.insert(switch_key(u, v, w), value);
        Ok(())
    }

    pub fn set_cost_bound(&mut self, cc_max: Option<Cost>) -> Result<()> {
        if cc_max.is_some_and(|c| c < 0) {
            return Err(Error::Invalid("CC_max must be non-negative".into()));
        }
        self.cc_max = cc_max;
        Ok(())
    }

    pub fn set_degree_bound(&mut self, d_max: Option<usize>) -> Result<()> {
        if let Some(d) = d_max {
            if let Some(u) = (0..self.len()).find(|&u| self.adj[u].len() > d) {
                return Err(Error::Invalid(format!("vertex {u} has degree {} > D_max = {d}", self.adj[u].len())));
            }
        }
        self.d_max = d_max;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn c_max(&self) -> Cost {
        self.c_max
    }

    pub fn case(&self) -> SwitchingCase {
        self.case
    }

    pub fn cost_bound(&self) -> Option<Cost> {
        self.cc_max
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.d_max
    }

    /// Neighbors of `u` in ascending id order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().map(|a| a.to)
    }

    fn arc(&self, u: usize, v: usize) -> Option<&Arc> {
        self.adj[u].binary_search_by_key(&v, |a| a.to).ok().map(|k| &self.adj[u][k])
    }

    /// `(C(u,v), P(u,v))` if the edge exists.
    pub fn edge(&self, u: usize, v: usize) -> Option<(Cost, Cost)> {
        self.arc(u, v).map(|a| (a.cost, a.revenue))
    }

    pub fn switching_cost(&self, u: usize, v: usize, w: usize) -> Cost {
        self.switch_cost.get(&switch_key(u, v, w)).copied().unwrap_or(0)
    }

    pub fn switching_revenue(&self, u: usize, v: usize, w: usize) -> Cost {
        self.switch_revenue.get(&switch_key(u, v, w)).copied().unwrap_or(0)
    }

    /// Vertices reachable from `start` avoiding `removed`, in BFS order.
    fn component_from(&self, start: usize, removed: &[bool]) -> Vec<usize> {
        let mut seen = HashMap::from([(start, ())]);
        let mut order = vec![start];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for a in &self.adj[u] {
                if !removed[a.to] && seen.insert(a.to, ()).is_none() {
                    order.push(a.to);
                }
            }
        }
        order
    }

    /// Vertices on the simple `u`–`v` path, in order.
    pub fn path_vertices(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        for x in [u, v] {
            if x >= self.len() {
                return Err(Error::UnknownVertex(x));
            }
        }
        let mut parent = vec![usize::MAX; self.len()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for a in &self.adj[x] {
                if parent[a.to] == usize::MAX {
                    parent[a.to] = x;
                    queue.push_back(a.to);
                }
            }
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }

    /// Total `(cost, revenue)` of a vertex walk, including switching terms
    /// at every interior vertex.
    pub fn walk_totals(&self, walk: &[usize]) -> Result<(Cost, Cost)> {
        let (mut cost, mut revenue) = (0, 0);
        for (k, pair) in walk.windows(2).enumerate() {
            let (c, p) = self
                .edge(pair[0], pair[1])
                .ok_or_else(|| Error::Invalid(format!("({}, {}) is not an edge", pair[0], pair[1])))?;
            cost += c;
            revenue += p;
            if k > 0 {
                let (prev, mid, next) = (walk[k - 1], pair[0], pair[1]);
                cost += self.switching_cost(mid, prev, next);
                revenue += self.switching_revenue(mid, prev, next);
            }
        }
        Ok((cost, revenue))
    }
}

/// A path between `u` and `v` (`u <= v`; `u == v` is the single-vertex
/// path of cost and revenue 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCandidate {
    pub u: usize,
    pub v: usize,
    pub cost: Cost,
    pub revenue: Cost,
}

impl PathCandidate {
    fn new(a: usize, b: usize, cost: Cost, revenue: Cost) -> Self {
        PathCandidate { u: a.min(b), v: a.max(b), cost, revenue }
    }

    /// Higher revenue, then lower cost, then smaller endpoint pair.
    pub fn beats(&self, other: &PathCandidate) -> bool {
        let rank = |c: &PathCandidate| (c.revenue, Reverse(c.cost), Reverse((c.u, c.v)));
        rank(self) > rank(other)
    }
}

fn keep_best(best: &mut PathCandidate, cand: PathCandidate) {
    if cand.beats(best) {
        *best = cand;
    }
}

/// Vertex with minimum `W_max` in the component of `start` (unit weights),
/// smallest id on ties.
pub fn find_centroid(tree: &CostRevenueTree, component: &[usize]) -> Result<usize> {
    let Some(&first) = component.first() else {
        return Err(Error::Invalid("empty component".into()));
    };
    let inside: HashMap<usize, usize> = component.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let m = component.len();
    // BFS from the first vertex, then sizes bottom-up
    let mut order = vec![inside[&first]];
    let mut parent = vec![usize::MAX; m];
    parent[order[0]] = order[0];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for a in &tree.adj[component[x]] {
            if let Some(&y) = inside.get(&a.to) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
    }
    if order.len() != m {
        return Err(Error::Invalid("component is not connected".into()));
    }
    let mut wt = vec![1usize; m];
    let mut heaviest_son = vec![0usize; m];
    for &x in order.iter().skip(1).rev() {
        let p = parent[x];
        wt[p] += wt[x];
        heaviest_son[p] = heaviest_son[p].max(wt[x]);
    }
    let w_max = |x: usize| heaviest_son[x].max(m - wt[x]);
    let best = (0..m).min_by_key(|&x| (w_max(x), component[x])).expect("component is nonempty");
    Ok(component[best])
}

/// The root-path scratch values of a component rooted at `r`.
struct RootedComponent {
    /// Global vertex ids in BFS order from `r` (index 0).
    vertex: Vec<usize>,
    c_root: Vec<Cost>,
    p_root: Vec<Cost>,
    /// Son of `r` above each vertex; `NO_SON` for `r`.
    pson: Vec<usize>,
    /// Sons of `r` (global ids, ascending).
    sons: Vec<usize>,
}

const NO_SON: usize = usize::MAX;

impl RootedComponent {
    fn build(tree: &CostRevenueTree, component: &[usize], r: usize) -> Result<Self> {
        let inside: HashMap<usize, ()> = component.iter().map(|&v| (v, ())).collect();
        if !inside.contains_key(&r) {
            return Err(Error::Invalid(format!("vertex {r} is not in the component")));
        }
        let mut vertex = vec![r];
        let mut parent = vec![usize::MAX];
        let mut c_root = vec![0];
        let mut p_root = vec![0];
        let mut pson = vec![NO_SON];
        let mut head = 0;
        while head < vertex.len() {
            let (x, up) = (vertex[head], parent[head]);
            for a in &tree.adj[x] {
                if a.to == up || !inside.contains_key(&a.to) {
                    continue;
                }
                let (mut c, mut p) = (c_root[head] + a.cost, p_root[head] + a.revenue);
                if up != usize::MAX {
                    c += tree.switching_cost(x, up, a.to);
                    p += tree.switching_revenue(x, up, a.to);
                }
                vertex.push(a.to);
                parent.push(x);
                c_root.push(c);
                p_root.push(p);
                pson.push(if x == r { a.to } else { pson[head] });
            }
            head += 1;
        }
        if vertex.len() != component.len() {
            return Err(Error::Invalid("component is not connected".into()));
        }
        let sons = tree.adj[r].iter().map(|a| a.to).filter(|v| inside.contains_key(v)).collect();
        Ok(RootedComponent { vertex, c_root, p_root, pson, sons })
    }

    fn len(&self) -> usize {
        self.vertex.len()
    }

    /// Best single-arm path `r → i`, including `r` alone.
    fn single_arm(&self, c_max: Cost) -> PathCandidate {
        let r = self.vertex[0];
        let mut best = PathCandidate::new(r, r, 0, 0);
        for i in 1..self.len() {
            if self.c_root[i] <= c_max {
                keep_best(&mut best, PathCandidate::new(r, self.vertex[i], self.c_root[i], self.p_root[i]));
            }
        }
        best
    }

    fn join(&self, i: usize, q: usize, turn_cost: Cost, turn_revenue: Cost) -> PathCandidate {
        PathCandidate::new(
            self.vertex[i],
            self.vertex[q],
            self.c_root[i] + turn_cost + self.c_root[q],
            self.p_root[i] + turn_revenue + self.p_root[q],
        )
    }

    /// Local indices sorted by `(C_root, index)`.
    fn sorted_by_cost(&self, members: impl Iterator<Item = usize>) -> Vec<usize> {
        let mut list: Vec<usize> = members.collect();
        list.sort_by_key(|&q| (self.c_root[q], q));
        list
    }

    /// Local indices grouped per son (`sets[k]` for `sons[k]`), each sorted
    /// by `C_root`.
    fn son_sets(&self, sorted: &[usize]) -> Vec<Vec<usize>> {
        let slot: HashMap<usize, usize> = self.sons.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut sets = vec![Vec::new(); self.sons.len()];
        for &q in sorted {
            if q != 0 {
                sets[slot[&self.pson[q]]].push(q);
            }
        }
        sets
    }

    /// Counting sort of all local indices by `C_root ∈ [0, cc_max]`.
    fn counting_sort(&self, cc_max: Cost) -> Result<Vec<usize>> {
        let mut buckets = vec![Vec::new(); cc_max as usize + 1];
        for q in 0..self.len() {
            let c = self.c_root[q];
            if c > cc_max {
                return Err(Error::Invalid(format!("C_root({}) = {c} exceeds CC_max = {cc_max}", self.vertex[q])));
            }
            buckets[c as usize].push(q);
        }
        Ok(buckets.into_iter().flatten().collect())
    }
}

/// Prefix maxima of `P_root` over a cost-sorted list: entry `k` is the
/// argmax among the first `k` items (earliest on ties), `None` for `k = 0`.
fn prefix_max(rc: &RootedComponent, list: &[usize]) -> Vec<Option<usize>> {
    let mut out = Vec::with_capacity(list.len() + 1);
    out.push(None);
    for &q in list {
        let prev = *out.last().expect("nonempty");
        out.push(match prev {
            Some(b) if rc.p_root[b] >= rc.p_root[q] => Some(b),
            _ => Some(q),
        });
    }
    out
}

/// Best and runner-up (from a different son) prefix maxima over the global
/// cost order: `(P_max(j), Rson(j))` and `(P_max,2(j), Rson_2(j))` with the
/// argmax vertex in place of the value.
struct TwoBest {
    best: Vec<(Option<usize>, usize)>,
    second: Vec<(Option<usize>, usize)>,
}

impl TwoBest {
    fn build(rc: &RootedComponent, order: &[usize]) -> Self {
        let value = |x: Option<usize>| x.map(|q| rc.p_root[q]);
        let mut best = vec![(None, NO_SON)];
        let mut second = vec![(None, NO_SON)];
        for &q in order {
            let (pb, rb) = *best.last().expect("nonempty");
            let (ps, rsec) = *second.last().expect("nonempty");
            let son = rc.pson[q];
            let top = if value(pb) >= Some(rc.p_root[q]) { (pb, rb) } else { (Some(q), son) };
            let mut pick: Option<(Option<usize>, usize)> = None;
            for pair in [(pb, rb), (ps, rsec), (Some(q), son)] {
                if pair.1 == top.1 {
                    continue;
                }
                if pick.is_none_or(|p| value(pair.0) > value(p.0)) {
                    pick = Some(pair);
                }
            }
            best.push(top);
            second.push(pick.unwrap_or((None, NO_SON)));
        }
        TwoBest { best, second }
    }

    /// Best partner among the first `k` items whose son differs from `son`.
    fn partner(&self, rc: &RootedComponent, k: usize, son: usize) -> Option<usize> {
        [self.best[k], self.second[k]]
            .into_iter()
            .filter(|&(q, rs)| q.is_some() && rs != son)
            .map(|(q, _)| q.expect("filtered"))
            .max_by(|&a, &b| rc.p_root[a].cmp(&rc.p_root[b]).then(b.cmp(&a)))
    }
}

/// Best path through `r` within `component`, matching two-arm candidates
/// by comparison sort and binary search.
pub fn best_path_through(tree: &CostRevenueTree, component: &[usize], r: usize) -> Result<PathCandidate> {
    let rc = RootedComponent::build(tree, component, r)?;
    let c_max = tree.c_max;
    let mut best = rc.single_arm(c_max);
    match tree.case {
        SwitchingCase::BoundedDegree => {
            let sorted = rc.sorted_by_cost(1..rc.len());
            let sets = rc.son_sets(&sorted);
            let maxima: Vec<_> = sets.iter().map(|s| prefix_max(&rc, s)).collect();
            for i in 1..rc.len() {
                if rc.c_root[i] > c_max {
                    continue;
                }
                for (j, &son) in rc.sons.iter().enumerate() {
                    if son == rc.pson[i] {
                        continue;
                    }
                    let sc = tree.switching_cost(r, rc.pson[i], son);
                    let limit = c_max - rc.c_root[i] - sc;
                    let k = sets[j].partition_point(|&q| rc.c_root[q] <= limit);
                    if let Some(q) = maxima[j][k] {
                        keep_best(&mut best, rc.join(i, q, sc, tree.switching_revenue(r, rc.pson[i], son)));
                    }
                }
            }
        }
        SwitchingCase::ZeroSwitching => {
            let order = rc.sorted_by_cost(0..rc.len());
            let two = TwoBest::build(&rc, &order);
            for i in 1..rc.len() {
                if rc.c_root[i] > c_max {
                    continue;
                }
                let limit = c_max - rc.c_root[i];
                let k = order.partition_point(|&q| rc.c_root[q] <= limit);
                if let Some(q) = two.partner(&rc, k, rc.pson[i]) {
                    keep_best(&mut best, rc.join(i, q, 0, 0));
                }
            }
        }
    }
    Ok(best)
}

fn cost_bound(tree: &CostRevenueTree) -> Cost {
    tree.cc_max.unwrap_or_else(|| {
        let edges: Cost = tree.adj.iter().flatten().map(|a| a.cost).sum::<Cost>() / 2;
        edges + tree.switch_cost.values().sum::<Cost>()
    })
}

/// Same contract as [`best_path_through`] for integer costs bounded by
/// `CC_max` (or by the total cost of the tree when unset): counting sort
/// and per-cost prefix arrays replace sorting and binary search.
pub fn best_path_through_bounded_cost(tree: &CostRevenueTree, component: &[usize], r: usize) -> Result<PathCandidate> {
    let rc = RootedComponent::build(tree, component, r)?;
    let cc_max = cost_bound(tree);
    let order = rc.counting_sort(cc_max)?;
    let c_max = tree.c_max;
    let mut best = rc.single_arm(c_max);
    let width = cc_max as usize + 1;
    match tree.case {
        SwitchingCase::BoundedDegree => {
            let sets = rc.son_sets(&order);
            // P_max'(j, cc): argmax of P_root among son j's tuples with cost <= cc
            let tables: Vec<Vec<Option<usize>>> = sets
                .iter()
                .map(|set| {
                    let mut table: Vec<Option<usize>> = vec![None; width];
                    for &q in set {
                        let slot = &mut table[rc.c_root[q] as usize];
                        if slot.is_none_or(|b| rc.p_root[q] > rc.p_root[b]) {
                            *slot = Some(q);
                        }
                    }
                    for cc in 1..width {
                        if let Some(prev) = table[cc - 1] {
                            if table[cc].is_none_or(|b| rc.p_root[prev] >= rc.p_root[b]) {
                                table[cc] = Some(prev);
                            }
                        }
                    }
                    table
                })
                .collect();
            for i in 1..rc.len() {
                if rc.c_root[i] > c_max {
                    continue;
                }
                for (j, &son) in rc.sons.iter().enumerate() {
                    if son == rc.pson[i] {
                        continue;
                    }
                    let sc = tree.switching_cost(r, rc.pson[i], son);
                    let budget = c_max - rc.c_root[i] - sc;
                    if budget < 0 {
                        continue;
                    }
                    if let Some(q) = tables[j][budget.min(cc_max) as usize] {
                        keep_best(&mut best, rc.join(i, q, sc, tree.switching_revenue(r, rc.pson[i], son)));
                    }
                }
            }
        }
        SwitchingCase::ZeroSwitching => {
            let two = TwoBest::build(&rc, &order);
            // upto[cc] = number of tuples with cost <= cc
            let mut upto = vec![0usize; width];
            for &q in &order {
                upto[rc.c_root[q] as usize] += 1;
            }
            for cc in 1..width {
                upto[cc] += upto[cc - 1];
            }
            for i in 1..rc.len() {
                let budget = c_max - rc.c_root[i];
                if budget < 0 {
                    continue;
                }
                let k = upto[budget.min(cc_max) as usize];
                if let Some(q) = two.partner(&rc, k, rc.pson[i]) {
                    keep_best(&mut best, rc.join(i, q, 0, 0));
                }
            }
        }
    }
    Ok(best)
}

/// Same contract as [`best_path_through`], visiting vertices by increasing
/// `C_root` so that the matching index only moves down.
pub fn best_path_two_pointer(tree: &CostRevenueTree, component: &[usize], r: usize) -> Result<PathCandidate> {
    best_path_two_pointer_traced(tree, component, r).map(|(best, _)| best)
}

/// [`best_path_two_pointer`] plus the sequence of index values taken by
/// every rolling pointer: one sequence in the zero-switching case, one per
/// ordered pair of distinct sons otherwise.
pub fn best_path_two_pointer_traced(
    tree: &CostRevenueTree,
    component: &[usize],
    r: usize,
) -> Result<(PathCandidate, Vec<Vec<usize>>)> {
    let rc = RootedComponent::build(tree, component, r)?;
    let c_max = tree.c_max;
    let mut best = rc.single_arm(c_max);
    let mut traces = Vec::new();
    match tree.case {
        SwitchingCase::ZeroSwitching => {
            let order = rc.sorted_by_cost(0..rc.len());
            let two = TwoBest::build(&rc, &order);
            let mut k = order.len();
            let mut trace = Vec::with_capacity(order.len());
            for &i in &order {
                while k > 0 && rc.c_root[order[k - 1]] > c_max - rc.c_root[i] {
                    k -= 1;
                }
                trace.push(k);
                if i == 0 || rc.c_root[i] > c_max {
                    continue;
                }
                if let Some(q) = two.partner(&rc, k, rc.pson[i]) {
                    keep_best(&mut best, rc.join(i, q, 0, 0));
                }
            }
            traces.push(trace);
        }
        SwitchingCase::BoundedDegree => {
            let sorted = rc.sorted_by_cost(1..rc.len());
            let sets = rc.son_sets(&sorted);
            let maxima: Vec<_> = sets.iter().map(|s| prefix_max(&rc, s)).collect();
            // For a fixed pair of sons the turn cost is fixed, so the budget
            // shrinks as C_root(i) grows.
            for (a, &son_a) in rc.sons.iter().enumerate() {
                for (j, &son_j) in rc.sons.iter().enumerate() {
                    if a == j {
                        continue;
                    }
                    let sc = tree.switching_cost(r, son_a, son_j);
                    let sp = tree.switching_revenue(r, son_a, son_j);
                    let mut k = sets[j].len();
                    let mut trace = Vec::with_capacity(sets[a].len());
                    for &i in &sets[a] {
                        let limit = c_max - rc.c_root[i] - sc;
                        while k > 0 && rc.c_root[sets[j][k - 1]] > limit {
                            k -= 1;
                        }
                        trace.push(k);
                        if rc.c_root[i] > c_max {
                            continue;
                        }
                        if let Some(q) = maxima[j][k] {
                            keep_best(&mut best, rc.join(i, q, sc, sp));
                        }
                    }
                    traces.push(trace);
                }
            }
        }
    }
    Ok((best, traces))
}

/// Parent links and height of a centroid tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidTree {
    pub root: Option<usize>,
    pub parent: Vec<Option<usize>>,
    /// Number of levels (1 for a single vertex, 0 for an empty tree).
    pub height: usize,
}

/// Centroid decomposition with unit vertex weights.
pub fn centroid_decomposition(tree: &CostRevenueTree) -> CentroidTree {
    let mut out = CentroidTree { root: None, parent: vec![None; tree.len()], height: 0 };
    decompose(tree, |centroid, parent, depth, _| {
        out.parent[centroid] = parent;
        if parent.is_none() {
            out.root = Some(centroid);
        }
        out.height = out.height.max(depth);
        Ok(())
    })
    .expect("visitor never fails");
    out
}

/// Walks the centroid decomposition, calling `visit(centroid, parent,
/// depth, component)` once per component.
fn decompose(
    tree: &CostRevenueTree,
    mut visit: impl FnMut(usize, Option<usize>, usize, &[usize]) -> Result<()>,
) -> Result<()> {
    let n = tree.len();
    if n == 0 {
        return Ok(());
    }
    let mut removed = vec![false; n];
    let mut stack = vec![(0usize, None, 1usize)];
    while let Some((start, parent, depth)) = stack.pop() {
        let component = tree.component_from(start, &removed);
        let centroid = find_centroid(tree, &component)?;
        visit(centroid, parent, depth, &component)?;
        removed[centroid] = true;
        for v in tree.neighbors(centroid) {
            if !removed[v] {
                stack.push((v, Some(centroid), depth + 1));
            }
        }
    }
    Ok(())
}

/// Best path overall: the best path through each centroid within its
/// component. `None` only for an empty tree.
pub fn solve_max_revenue_path(tree: &CostRevenueTree) -> Option<PathCandidate> {
    solve_with(tree, TwoArmStrategy::Search).expect("search strategy cannot fail on a valid tree")
}

pub fn solve_with(tree: &CostRevenueTree, strategy: TwoArmStrategy) -> Result<Option<PathCandidate>> {
    let limit = (usize::BITS - tree.len().leading_zeros()) as usize; // floor(log2 n) + 1
    let mut best = None;
    decompose(tree, |centroid, _, depth, component| {
        assert!(depth <= limit, "centroid tree deeper than floor(log2 n) + 1");
        let cand = match strategy {
            TwoArmStrategy::Search => best_path_through(tree, component, centroid)?,
            TwoArmStrategy::BoundedCost => best_path_through_bounded_cost(tree, component, centroid)?,
            TwoArmStrategy::TwoPointer => best_path_two_pointer(tree, component, centroid)?,
        };
        if best.as_ref().is_none_or(|b| cand.beats(b)) {
            best = Some(cand);
        }
        Ok(())
    })?;
    Ok(best)
}

/// Wire format for revenue-path instances. `root`, `wv` and edge `we` from
/// the plain tree format are accepted and ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevenueInstance {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    pub edges: Vec<RevenueEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wv: Option<Vec<f64>>,
    #[serde(rename = "SC", default, skip_serializing_if = "Vec::is_empty")]
    pub sc: Vec<SwitchTerm>,
    #[serde(rename = "SP", default, skip_serializing_if = "Vec::is_empty")]
    pub sp: Vec<SwitchTerm>,
    #[serde(rename = "C_max")]
    pub c_max: Cost,
    pub case: SwitchingCase,
    #[serde(rename = "CC_max", default, skip_serializing_if = "Option::is_none")]
    pub cc_max: Option<Cost>,
    #[serde(rename = "D_max", default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevenueEdge {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "C")]
    pub cost: Cost,
    #[serde(rename = "P")]
    pub revenue: Cost,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub we: Option<f64>,
}

/// A switching term at vertex `u` between edges `(u, v)` and `(u, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchTerm {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub value: Cost,
}

impl RevenueInstance {
    pub fn build(&self) -> Result<CostRevenueTree> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, e.cost, e.revenue)).collect();
        let mut tree = CostRevenueTree::new(self.n, &edges, self.c_max, self.case)?;
        for t in &self.sc {
            tree.set_switching_cost(t.u, t.v, t.w, t.value)?;
        }
        for t in &self.sp {
            tree.set_switching_revenue(t.u, t.v, t.w, t.value)?;
        }
        tree.set_cost_bound(self.cc_max)?;
        tree.set_degree_bound(self.d_max)?;
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [TwoArmStrategy; 3] = [TwoArmStrategy::Search, TwoArmStrategy::BoundedCost, TwoArmStrategy::TwoPointer];

    fn path3(c_max: Cost) -> CostRevenueTree {
        CostRevenueTree::new(3, &[(0, 1, 1, 5), (1, 2, 1, 5)], c_max, SwitchingCase::ZeroSwitching).unwrap()
    }

    #[test]
    fn centroid_of_small_trees() {
        let single = CostRevenueTree::new(1, &[], 0, SwitchingCase::ZeroSwitching).unwrap();
        assert_eq!(find_centroid(&single, &[0]).unwrap(), 0);
        assert_eq!(find_centroid(&path3(0), &[0, 1, 2]).unwrap(), 1);
        assert!(find_centroid(&single, &[]).is_err());
    }

    #[test]
    fn path_through_middle() {
        for s in ALL {
            let best = solve_with(&path3(2), s).unwrap().unwrap();
            assert_eq!((best.u, best.v, best.cost, best.revenue), (0, 2, 2, 10), "{s:?}");
            let best = solve_with(&path3(1), s).unwrap().unwrap();
            assert_eq!(best.revenue, 5, "{s:?}");
        }
        let through = best_path_through(&path3(2), &[0, 1, 2], 1).unwrap();
        assert_eq!(through.revenue, 10);
    }

    #[test]
    fn expensive_turns_leave_single_arms() {
        let mut star = CostRevenueTree::new(4, &[(0, 1, 1, 4), (0, 2, 1, 6), (0, 3, 1, 5)], 5, SwitchingCase::BoundedDegree).unwrap();
        for (v, w) in [(1, 2), (1, 3), (2, 3)] {
            star.set_switching_cost(0, v, w, 100).unwrap();
            star.set_switching_revenue(0, v, w, 50).unwrap();
        }
        for s in ALL {
            let best = solve_with(&star, s).unwrap().unwrap();
            assert_eq!((best.u, best.v, best.revenue), (0, 2, 6), "{s:?}");
        }
    }

    #[test]
    fn nothing_affordable_gives_a_single_vertex() {
        let tree = CostRevenueTree::new(2, &[(0, 1, 9, 9)], 3, SwitchingCase::ZeroSwitching).unwrap();
        let best = solve_max_revenue_path(&tree).unwrap();
        assert_eq!((best.cost, best.revenue, best.u == best.v), (0, 0, true));
        let empty = CostRevenueTree::new(0, &[], 3, SwitchingCase::ZeroSwitching).unwrap();
        assert_eq!(solve_max_revenue_path(&empty), None);
    }

    #[test]
    fn cost_bound_is_checked() {
        let mut tree = path3(2);
        tree.set_cost_bound(Some(1)).unwrap();
        assert!(best_path_through_bounded_cost(&tree, &[0, 1, 2], 1).is_ok());
        assert!(best_path_through_bounded_cost(&tree, &[0, 1, 2], 0).is_err());
        tree.set_cost_bound(Some(2)).unwrap();
        assert!(best_path_through_bounded_cost(&tree, &[0, 1, 2], 0).is_ok());
    }

    #[test]
    fn zero_costs_keep_the_pointer_still() {
        let tree = CostRevenueTree::new(4, &[(0, 1, 0, 1), (0, 2, 0, 2), (0, 3, 0, 3)], 0, SwitchingCase::ZeroSwitching).unwrap();
        let (best, traces) = best_path_two_pointer_traced(&tree, &[0, 1, 2, 3], 0).unwrap();
        assert_eq!(traces, vec![vec![4, 4, 4, 4]]);
        assert_eq!(best.revenue, 5);
    }

    #[test]
    fn walk_totals_include_turns() {
        let mut tree = CostRevenueTree::new(3, &[(0, 1, 1, 2), (1, 2, 3, 4)], 10, SwitchingCase::BoundedDegree).unwrap();
        tree.set_switching_cost(1, 2, 0, 5).unwrap();
        tree.set_switching_revenue(1, 0, 2, 7).unwrap();
        assert_eq!(tree.walk_totals(&tree.path_vertices(2, 0).unwrap()).unwrap(), (9, 13));
        assert!(tree.set_switching_cost(0, 1, 2, 1).is_err());
        let mut zero = path3(1);
        assert!(zero.set_switching_cost(1, 0, 2, 1).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CostRevenueTree::new(3, &[(0, 1, 1, 1)], 1, SwitchingCase::ZeroSwitching).is_err());
        assert!(CostRevenueTree::new(3, &[(0, 1, 1, 1), (0, 1, 1, 1)], 1, SwitchingCase::ZeroSwitching).is_err());
        assert!(CostRevenueTree::new(2, &[(0, 1, -1, 1)], 1, SwitchingCase::ZeroSwitching).is_err());
        let mut star = CostRevenueTree::new(3, &[(0, 1, 1, 1), (0, 2, 1, 1)], 1, SwitchingCase::BoundedDegree).unwrap();
        assert!(star.set_degree_bound(Some(1)).is_err());
        assert!(star.set_degree_bound(Some(2)).is_ok());
    }

    #[test]
    fn instance_json_round_trip() {
        let text = r#"{"n":3,"edges":[{"u":0,"v":1,"C":1,"P":5},{"u":1,"v":2,"C":1,"P":5}],
            "SC":[{"u":1,"v":0,"w":2,"value":1}],"C_max":3,"case":"bounded_degree"}"#;
        let inst: RevenueInstance = serde_json::from_str(text).unwrap();
        let tree = inst.build().unwrap();
        assert_eq!(tree.switching_cost(1, 2, 0), 1);
        assert_eq!(solve_max_revenue_path(&tree).unwrap().revenue, 10);
    }
}
