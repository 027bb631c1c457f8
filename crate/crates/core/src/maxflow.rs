//! Integer maximum flow (Dinic).
//!
//! Every edge added to a [`FlowNetwork`] is stored as a forward arc paired
//! with a zero-capacity reverse arc, so arc `2 * e` is edge `e` and arc
//! `2 * e + 1` its residual twin.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    edges: Vec<FlowEdge>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<Self> {
        for node in [source, sink] {
            if node >= node_count {
                return Err(Error::NodeOutOfRange { node, nodes: node_count });
            }
        }
        if source == sink {
            return Err(Error::Invalid("source and sink coincide".into()));
        }
        Ok(FlowNetwork { node_count, edges: Vec::new(), source, sink })
    }

    /// Appends a directed edge and returns its index.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64) -> Result<usize> {
        for node in [from, to] {
            if node >= self.node_count {
                return Err(Error::NodeOutOfRange { node, nodes: self.node_count });
            }
        }
        if capacity < 0 {
            return Err(Error::Invalid(format!("negative capacity {capacity} on edge {from}->{to}")));
        }
        self.edges.push(FlowEdge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Flow on each edge, indexed like [`FlowNetwork::edges`].
    pub edge_flows: Vec<i64>,
}

impl MaxFlow {
    /// Net flow leaving `node` (outgoing minus incoming).
    pub fn net_outflow(&self, net: &FlowNetwork, node: usize) -> i64 {
        net.edges
            .iter()
            .zip(&self.edge_flows)
            .map(|(e, &f)| {
                let out = if e.from == node { f } else { 0 };
                let inc = if e.to == node { f } else { 0 };
                out - inc
            })
            .sum()
    }
}

struct Residual {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let mut head = vec![Vec::new(); net.node_count];
        let mut to = Vec::with_capacity(net.edges.len() * 2);
        let mut cap = Vec::with_capacity(net.edges.len() * 2);
        for (i, e) in net.edges.iter().enumerate() {
            head[e.from].push(2 * i);
            to.push(e.to);
            cap.push(e.capacity);
            head[e.to].push(2 * i + 1);
            to.push(e.from);
            cap.push(0);
        }
        Residual { head, to, cap }
    }

    fn levels(&self, source: usize, sink: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &arc in &self.head[u] {
                let v = self.to[arc];
                if self.cap[arc] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level[sink] >= 0
    }

    /// Finds one augmenting path in the level graph and pushes its
    /// bottleneck. Returns 0 once the level graph is blocked.
    fn augment(&mut self, source: usize, sink: usize, level: &mut [i32], next: &mut [usize]) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = source;
        loop {
            if u == sink {
                let push = path.iter().map(|&a| self.cap[a]).min().unwrap_or(0);
                for &a in &path {
                    self.cap[a] -= push;
                    self.cap[a ^ 1] += push;
                }
                return push;
            }
            let mut advanced = false;
            while next[u] < self.head[u].len() {
                let arc = self.head[u][next[u]];
                let v = self.to[arc];
                if self.cap[arc] > 0 && level[v] == level[u] + 1 {
                    path.push(arc);
                    u = v;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                // dead end: prune u from this phase and retreat
                level[u] = -1;
                match path.pop() {
                    None => return 0,
                    Some(arc) => {
                        u = self.to[arc ^ 1];
                        next[u] += 1;
                    }
                }
            }
        }
    }
}

/// Computes a maximum source-sink flow. Deterministic for a fixed edge
/// insertion order.
pub fn max_flow(net: &FlowNetwork) -> MaxFlow {
    let mut res = Residual::build(net);
    let mut level = vec![-1i32; net.node_count];
    let mut next = vec![0usize; net.node_count];
    let mut value = 0i64;
    while res.levels(net.source, net.sink, &mut level) {
        next.fill(0);
        loop {
            let pushed = res.augment(net.source, net.sink, &mut level, &mut next);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    let edge_flows = (0..net.edges.len()).map(|i| res.cap[2 * i + 1]).collect();
    MaxFlow { value, edge_flows }
}
