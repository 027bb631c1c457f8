//! Aggregates over rooted tree networks.
//!
//! An Euler tour with one entry and one exit position per vertex turns
//! root-path and subtree aggregates into range queries over a segment tree
//! with point updates. Static binary-lifting tables answer LCA and u–v
//! path aggregates for any associative aggregation, invertible or not.

use std::collections::VecDeque;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Weight = i64;

/// Associative aggregation.
pub trait Semigroup {
    fn combine(a: Weight, b: Weight) -> Weight;
}

/// Aggregation with a neutral element `e`.
pub trait Monoid: Semigroup {
    fn identity() -> Weight;
}

/// Aggregation where every value has an inverse.
pub trait Group: Monoid {
    fn inverse(a: Weight) -> Weight;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sum;
#[derive(Debug, Clone, Copy, Default)]
pub struct Xor;
#[derive(Debug, Clone, Copy, Default)]
pub struct Min;
#[derive(Debug, Clone, Copy, Default)]
pub struct Max;

impl Semigroup for Sum {
    fn combine(a: Weight, b: Weight) -> Weight {
        a + b
    }
}
impl Monoid for Sum {
    fn identity() -> Weight {
        0
    }
}
impl Group for Sum {
    fn inverse(a: Weight) -> Weight {
        -a
    }
}

impl Semigroup for Xor {
    fn combine(a: Weight, b: Weight) -> Weight {
        a ^ b
    }
}
impl Monoid for Xor {
    fn identity() -> Weight {
        0
    }
}
impl Group for Xor {
    fn inverse(a: Weight) -> Weight {
        a
    }
}

impl Semigroup for Min {
    fn combine(a: Weight, b: Weight) -> Weight {
        a.min(b)
    }
}
impl Monoid for Min {
    fn identity() -> Weight {
        Weight::MAX
    }
}

impl Semigroup for Max {
    fn combine(a: Weight, b: Weight) -> Weight {
        a.max(b)
    }
}
impl Monoid for Max {
    fn identity() -> Weight {
        Weight::MIN
    }
}

/// Whether weights sit on edges `(parent(i), i)` or on vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Edge,
    Vertex,
}

#[derive(Debug, Clone)]
pub struct WeightedRootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    level: Vec<usize>,
    vertex_weight: Vec<Weight>,
    /// Weight of the edge to the parent; unused for the root.
    edge_weight: Vec<Weight>,
}

impl WeightedRootedTree {
    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize, Weight)], vertex_weight: Vec<Weight>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("tree needs at least one vertex".into()));
        }
        if root >= n {
            return Err(Error::UnknownVertex(root));
        }
        if vertex_weight.len() != n {
            return Err(Error::Invalid(format!("expected {n} vertex weights, got {}", vertex_weight.len())));
        }
        if edges.len() != n - 1 {
            return Err(Error::Invalid(format!("a tree on {n} vertices has {} edges, got {}", n - 1, edges.len())));
        }
        let mut adj: Vec<Vec<(usize, Weight)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut parent = vec![None; n];
        let mut level = vec![0; n];
        let mut edge_weight = vec![0; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    level[v] = level[u] + 1;
                    edge_weight[v] = w;
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Invalid(format!("vertex {v} is not connected to the root")));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        Ok(WeightedRootedTree { root, parent, children, level, vertex_weight, edge_weight })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn vertex_weight(&self, v: usize) -> Weight {
        self.vertex_weight[v]
    }

    pub fn edge_weight(&self, v: usize) -> Option<Weight> {
        self.parent[v].map(|_| self.edge_weight[v])
    }

    /// Weight attached to `v` under `kind`; `None` for the root's edge.
    pub fn weight(&self, v: usize, kind: WeightKind) -> Option<Weight> {
        match kind {
            WeightKind::Edge => self.edge_weight(v),
            WeightKind::Vertex => Some(self.vertex_weight[v]),
        }
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: Weight) -> Result<()> {
        self.check(v)?;
        self.vertex_weight[v] = w;
        Ok(())
    }

    pub fn set_edge_weight(&mut self, v: usize, w: Weight) -> Result<()> {
        self.check(v)?;
        if self.parent[v].is_none() {
            return Err(Error::Invalid("the root has no parent edge".into()));
        }
        self.edge_weight[v] = w;
        Ok(())
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.len() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(())
    }

    /// Entry and exit positions (1-based) of each vertex in DFS order,
    /// children visited by ascending id.
    fn dfs_positions(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut tour = Vec::with_capacity(2 * n);
        let mut first = vec![0; n];
        let mut last = vec![0; n];
        let mut stack: Vec<(usize, usize)> = vec![(self.root, 0)];
        tour.push(self.root);
        first[self.root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&c) = self.children[v].get(*next) {
                *next += 1;
                tour.push(c);
                first[c] = tour.len();
                stack.push((c, 0));
            } else {
                tour.push(v);
                last[v] = tour.len();
                stack.pop();
            }
        }
        (tour, first, last)
    }
}

/// Wire format: `{"n", "root", "edges": [{"u", "v", "we"}], "wv"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeSpec {
    pub n: usize,
    pub root: usize,
    pub edges: Vec<TreeEdge>,
    pub wv: Vec<Weight>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub we: Weight,
}

impl TreeSpec {
    pub fn build(&self) -> Result<WeightedRootedTree> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, e.we)).collect();
        WeightedRootedTree::from_edges(self.n, self.root, &edges, self.wv.clone())
    }

    pub fn from_tree(tree: &WeightedRootedTree) -> Self {
        let edges = (0..tree.len())
            .filter_map(|v| tree.parent(v).map(|p| TreeEdge { u: p, v, we: tree.edge_weight[v] }))
            .collect();
        TreeSpec { n: tree.len(), root: tree.root, edges, wv: tree.vertex_weight.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TourMode {
    /// Entry carries the weight, exit its inverse: prefix sums give
    /// root-to-vertex aggregates.
    Path,
    /// Entry carries the weight, exit the neutral element: ranges give
    /// subtree aggregates.
    Subtree,
}

/// Point-update / range-fold segment tree over 1-based positions.
#[derive(Debug, Clone)]
struct PositionTree<M> {
    size: usize,
    data: Vec<Weight>,
    _agg: std::marker::PhantomData<M>,
}

impl<M: Monoid> PositionTree<M> {
    fn new(values: &[Weight]) -> Self {
        let size = values.len().next_power_of_two();
        let mut data = vec![M::identity(); 2 * size];
        data[size..size + values.len()].copy_from_slice(values);
        for i in (1..size).rev() {
            data[i] = M::combine(data[2 * i], data[2 * i + 1]);
        }
        PositionTree { size, data, _agg: std::marker::PhantomData }
    }

    fn get(&self, pos: usize) -> Weight {
        self.data[self.size + pos - 1]
    }

    fn set(&mut self, pos: usize, value: Weight) {
        let mut i = self.size + pos - 1;
        self.data[i] = value;
        while i > 1 {
            i /= 2;
            self.data[i] = M::combine(self.data[2 * i], self.data[2 * i + 1]);
        }
    }

    /// Ordered fold over `[lo, hi]`; empty when `lo > hi`.
    fn fold(&self, lo: usize, hi: usize) -> Weight {
        if lo > hi {
            return M::identity();
        }
        let (mut l, mut r) = (self.size + lo - 1, self.size + hi);
        let (mut left, mut right) = (M::identity(), M::identity());
        while l < r {
            if l & 1 == 1 {
                left = M::combine(left, self.data[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                right = M::combine(self.data[r], right);
            }
            l /= 2;
            r /= 2;
        }
        M::combine(left, right)
    }
}

/// Euler tour of a rooted tree backed by a segment tree over its positions.
#[derive(Debug, Clone)]
pub struct EulerTour<M> {
    mode: TourMode,
    kind: WeightKind,
    root: usize,
    parent: Vec<Option<usize>>,
    tour: Vec<usize>,
    first: Vec<usize>,
    last: Vec<usize>,
    /// Current weight per vertex (edge to parent, or vertex).
    weight: Vec<Weight>,
    inverse: Option<fn(Weight) -> Weight>,
    compacted: bool,
    positions: PositionTree<M>,
}

impl<G: Group> EulerTour<G> {
    /// Root-path mode; the aggregation must be invertible.
    pub fn for_paths(tree: &WeightedRootedTree, kind: WeightKind) -> Self {
        Self::build(tree, TourMode::Path, kind, Some(G::inverse))
    }
}

impl<M: Monoid> EulerTour<M> {
    /// Subtree mode; any aggregation with a neutral element.
    pub fn for_subtrees(tree: &WeightedRootedTree, kind: WeightKind) -> Self {
        Self::build(tree, TourMode::Subtree, kind, None)
    }

    fn build(tree: &WeightedRootedTree, mode: TourMode, kind: WeightKind, inverse: Option<fn(Weight) -> Weight>) -> Self {
        let (tour, first, last) = tree.dfs_positions();
        let n = tree.len();
        let weight: Vec<Weight> = (0..n).map(|v| tree.weight(v, kind).unwrap_or_else(M::identity)).collect();
        let mut values = vec![M::identity(); 2 * n];
        for v in 0..n {
            let is_root_edge = kind == WeightKind::Edge && v == tree.root;
            if is_root_edge {
                continue;
            }
            values[first[v] - 1] = weight[v];
            if mode == TourMode::Path {
                let inv = inverse.expect("path mode needs an inverse");
                values[last[v] - 1] = inv(weight[v]);
            }
        }
        EulerTour {
            mode,
            kind,
            root: tree.root,
            parent: tree.parent.clone(),
            tour,
            first,
            last,
            weight,
            inverse,
            compacted: false,
            positions: PositionTree::new(&values),
        }
    }

    pub fn mode(&self) -> TourMode {
        self.mode
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Vertex sequence: `2n` entries, or `n` after compaction.
    pub fn sequence(&self) -> &[usize] {
        &self.tour
    }

    /// `(a(i), b(i))`, 1-based.
    pub fn positions(&self, v: usize) -> Result<(usize, usize)> {
        self.check(v)?;
        Ok((self.first[v], self.last[v]))
    }

    pub fn is_compacted(&self) -> bool {
        self.compacted
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.first.len() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(())
    }

    fn require(&self, mode: TourMode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Unsupported(format!("operation needs a {mode:?}-mode tour")));
        }
        Ok(())
    }

    /// Whether `a` lies on the root path of `b` (inclusive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.first[a] <= self.first[b] && self.last[b] <= self.last[a]
    }

    /// Aggregate of edge (vertex) weights from the root to `v`: the fold of
    /// positions `[1, a(v)]`.
    pub fn path_from_root(&self, v: usize) -> Result<Weight> {
        self.check(v)?;
        self.require(TourMode::Path)?;
        Ok(self.positions.fold(1, self.first[v]))
    }

    /// Aggregate over `v`'s subtree: positions `[a(v)+1, b(v)]` for edge
    /// weights, `[a(v), b(v)]` for vertex weights.
    pub fn subtree_aggregate(&self, v: usize) -> Result<Weight> {
        self.check(v)?;
        self.require(TourMode::Subtree)?;
        let lo = match self.kind {
            WeightKind::Edge => self.first[v] + 1,
            WeightKind::Vertex => self.first[v],
        };
        Ok(self.positions.fold(lo, self.last[v]))
    }

    /// Folds `delta` into the weight of `v` (its parent edge in edge mode).
    pub fn update_weight(&mut self, v: usize, delta: Weight) -> Result<()> {
        self.check(v)?;
        if self.kind == WeightKind::Edge && v == self.root {
            return Err(Error::Invalid("the root has no parent edge".into()));
        }
        self.weight[v] = M::combine(self.weight[v], delta);
        let a = self.first[v];
        self.positions.set(a, M::combine(self.positions.get(a), delta));
        if self.mode == TourMode::Path {
            let inv = self.inverse.expect("path mode keeps its inverse");
            let b = self.last[v];
            self.positions.set(b, M::combine(self.positions.get(b), inv(delta)));
        }
        Ok(())
    }

    /// Replaces the weight of `v`. Path-mode tours apply the difference,
    /// which assumes a commutative aggregation.
    pub fn set_weight(&mut self, v: usize, w: Weight) -> Result<()> {
        self.check(v)?;
        if self.kind == WeightKind::Edge && v == self.root {
            return Err(Error::Invalid("the root has no parent edge".into()));
        }
        match self.mode {
            TourMode::Path => {
                let inv = self.inverse.expect("path mode keeps its inverse");
                self.update_weight(v, M::combine(inv(self.weight[v]), w))
            }
            TourMode::Subtree => {
                self.weight[v] = w;
                self.positions.set(self.first[v], w);
                Ok(())
            }
        }
    }

    /// Current weight of `v` (its parent edge in edge mode).
    pub fn weight(&self, v: usize) -> Result<Weight> {
        self.check(v)?;
        Ok(self.weight[v])
    }

    /// Aggregate on the u–v path:
    /// `agg(u) · agg(v) · agg(lca)⁻¹ · agg(lca)⁻¹`, folding in `wv(lca)` for
    /// vertex weights.
    pub fn path_between<S: Semigroup>(&self, lifts: &LiftTables<S>, u: usize, v: usize) -> Result<Weight> {
        self.check(u)?;
        self.check(v)?;
        self.require(TourMode::Path)?;
        let inv = self.inverse.expect("path mode keeps its inverse");
        let lca = lifts.lca(u, v)?;
        let at_lca = inv(self.path_from_root(lca)?);
        let mut agg = M::combine(self.path_from_root(u)?, self.path_from_root(v)?);
        agg = M::combine(M::combine(agg, at_lca), at_lca);
        if self.kind == WeightKind::Vertex {
            agg = M::combine(agg, self.weight[lca]);
        }
        Ok(agg)
    }

    /// Drops the exit positions of a subtree-mode tour: each `b(i)` becomes
    /// the last entry position inside `i`'s subtree and entries are
    /// renumbered `1..=n`. Subtree answers are unchanged.
    pub fn compact(mut self) -> Result<Self> {
        self.require(TourMode::Subtree)?;
        if self.compacted {
            return Ok(self);
        }
        let n = self.first.len();
        let mut cnt_a = 0;
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for (k, &v) in self.tour.iter().enumerate() {
            if !seen[v] {
                seen[v] = true;
                cnt_a += 1;
                order.push(v);
                values.push(self.positions.get(k + 1));
                self.first[v] = cnt_a;
            } else {
                self.last[v] = cnt_a;
            }
        }
        self.tour = order;
        self.positions = PositionTree::new(&values);
        self.compacted = true;
        Ok(self)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }
}

/// Rebuilds the vertex sequence of an Euler tour from `(a(i), b(i))`
/// position pairs by sorting all `2n` positions.
pub fn tour_from_positions(pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut slots: Vec<(usize, usize)> = Vec::with_capacity(2 * pairs.len());
    for (v, &(a, b)) in pairs.iter().enumerate() {
        if a == 0 || a >= b {
            return Err(Error::Invalid(format!("vertex {v}: positions ({a}, {b}) are not increasing")));
        }
        slots.push((a, v));
        slots.push((b, v));
    }
    slots.sort_unstable();
    for (k, &(pos, _)) in slots.iter().enumerate() {
        if pos != k + 1 {
            return Err(Error::Invalid("positions do not cover 1..=2n exactly once".into()));
        }
    }
    Ok(slots.into_iter().map(|(_, v)| v).collect())
}

/// Binary-lifting tables on a static tree: `Anc(i, j)` is the ancestor
/// `2^j` levels up (clamped at the root), `Agg(i, j)` the aggregate on that
/// stretch, undefined (`None`) when the jump would pass the root.
#[derive(Debug, Clone)]
pub struct LiftTables<S> {
    kind: WeightKind,
    level: Vec<usize>,
    first: Vec<usize>,
    last: Vec<usize>,
    vertex_weight: Vec<Weight>,
    anc: Vec<Vec<usize>>,
    agg: Vec<Vec<Option<Weight>>>,
    _agg: std::marker::PhantomData<S>,
}

fn fold_opt<S: Semigroup>(acc: Option<Weight>, x: Option<Weight>) -> Option<Weight> {
    match (acc, x) {
        (Some(a), Some(b)) => Some(S::combine(a, b)),
        (a, b) => a.or(b),
    }
}

impl<S: Semigroup> LiftTables<S> {
    pub fn build(tree: &WeightedRootedTree, kind: WeightKind) -> Self {
        let n = tree.len();
        let depth = (usize::BITS - n.leading_zeros()) as usize; // floor(log2 n) + 1
        let root = tree.root();
        let mut anc = vec![vec![root; n]; depth];
        let mut agg = vec![vec![None; n]; depth];
        for v in 0..n {
            if let Some(p) = tree.parent(v) {
                anc[0][v] = p;
                agg[0][v] = tree.weight(v, kind);
            }
        }
        for j in 1..depth {
            for v in 0..n {
                let mid = anc[j - 1][v];
                anc[j][v] = anc[j - 1][mid];
                if tree.level(v) >= 1 << j {
                    agg[j][v] = fold_opt::<S>(agg[j - 1][v], agg[j - 1][mid]);
                }
            }
        }
        let (_, first, last) = tree.dfs_positions();
        LiftTables {
            kind,
            level: tree.level.clone(),
            first,
            last,
            vertex_weight: tree.vertex_weight.clone(),
            anc,
            agg,
            _agg: std::marker::PhantomData,
        }
    }

    /// Number of lifting levels, `floor(log2 n) + 1`.
    pub fn depth(&self) -> usize {
        self.anc.len()
    }

    pub fn ancestor(&self, v: usize, j: usize) -> usize {
        self.anc[j][v]
    }

    pub fn aggregate(&self, v: usize, j: usize) -> Option<Weight> {
        self.agg[j][v]
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.level.len() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(())
    }

    /// O(1) via Euler positions.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.first[a] <= self.first[b] && self.last[b] <= self.last[a]
    }

    pub fn lca(&self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        if self.is_ancestor(u, v) {
            return Ok(u);
        }
        if self.is_ancestor(v, u) {
            return Ok(v);
        }
        let mut pu = u;
        let mut j = self.depth() as isize - 1;
        while j >= 0 {
            while j >= 0 && self.is_ancestor(self.anc[j as usize][pu], v) {
                j -= 1;
            }
            if j >= 0 {
                pu = self.anc[j as usize][pu];
            }
        }
        Ok(self.anc[0][pu])
    }

    /// Aggregate from `u` up to its ancestor `au`, excluding `au` itself;
    /// `None` when `u == au`.
    fn climb(&self, u: usize, au: usize) -> Option<Weight> {
        let mut pu = u;
        let mut pagg = None;
        let mut j = self.depth() - 1;
        while self.level[pu] > self.level[au] {
            while self.level[pu] < self.level[au] + (1 << j) {
                j -= 1;
            }
            pagg = fold_opt::<S>(pagg, self.agg[j][pu]);
            pu = self.anc[j][pu];
        }
        pagg
    }

    /// Aggregate on the u–v path; `None` for an empty (edge-mode, `u == v`)
    /// path.
    pub fn path_aggregate_static(&self, u: usize, v: usize) -> Result<Option<Weight>> {
        let lca = self.lca(u, v)?;
        let mut agg = fold_opt::<S>(self.climb(u, lca), self.climb(v, lca));
        if self.kind == WeightKind::Vertex {
            agg = fold_opt::<S>(agg, Some(self.vertex_weight[lca]));
        }
        Ok(agg)
    }
}
