//! Integral maximum flow, with and without per-arc lower bounds.
//!
//! Plain max flow is Dinic's algorithm over an adjacency list kept in arc
//! insertion order, so augmentation order (and therefore the returned flow)
//! is reproducible. Lower bounds are handled by the textbook two-phase
//! reduction: a circulation through an auxiliary source/sink pair finds a
//! feasible flow, then ordinary augmentation from `s` to `t` maximizes it.

use std::collections::VecDeque;

use thiserror::Error;

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("source and sink must differ (both are {0})")]
    SourceIsSink(NodeId),
    #[error("node {node} out of range for a network of {nodes} nodes")]
    NodeOutOfRange { node: NodeId, nodes: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("arc {from}->{to}: lower bound {lower} exceeds capacity {upper}")]
    InvertedBounds { from: NodeId, to: NodeId, lower: u64, upper: u64 },
    #[error("arc {arc} has lower bound {lower}; plain max flow requires zero lower bounds")]
    NonZeroLowerBound { arc: usize, lower: u64 },
    #[error("flow vector has {found} entries, network has {expected} arcs")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error("arc {arc} carries {flow}, outside [{lower}, {upper}]")]
    BoundViolated { arc: usize, flow: u64, lower: u64, upper: u64 },
    #[error("flow not conserved at node {node} (in {inflow}, out {outflow})")]
    NotConserved { node: NodeId, inflow: u64, outflow: u64 },
    #[error("reported value {reported} differs from net outflow {actual} at the source")]
    ValueMismatch { reported: i64, actual: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    pub lower: u64,
    pub upper: u64,
}

/// Directed network with a lower bound and a capacity on every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedNetwork {
    nodes: usize,
    source: NodeId,
    sink: NodeId,
    arcs: Vec<Arc>,
}

impl BoundedNetwork {
    pub fn new(nodes: usize, source: NodeId, sink: NodeId) -> Result<Self, FlowError> {
        for node in [source, sink] {
            if node >= nodes {
                return Err(FlowError::NodeOutOfRange { node, nodes });
            }
        }
        if source == sink {
            return Err(FlowError::SourceIsSink(source));
        }
        Ok(BoundedNetwork { nodes, source, sink, arcs: Vec::new() })
    }

    /// Appends an arc and returns its index.
    pub fn add_arc(
        &mut self,
        from: NodeId,
        to: NodeId,
        lower: u64,
        upper: u64,
    ) -> Result<usize, FlowError> {
        for node in [from, to] {
            if node >= self.nodes {
                return Err(FlowError::NodeOutOfRange { node, nodes: self.nodes });
            }
        }
        if from == to {
            return Err(FlowError::SelfLoop(from));
        }
        if lower > upper {
            return Err(FlowError::InvertedBounds { from, to, lower, upper });
        }
        self.arcs.push(Arc { from, to, lower, upper });
        Ok(self.arcs.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Net flow leaving the source under `flows`.
    pub fn source_outflow(&self, flows: &[u64]) -> i64 {
        self.arcs.iter().zip(flows).fold(0i64, |acc, (a, &f)| {
            if a.from == self.source {
                acc + f as i64
            } else if a.to == self.source {
                acc - f as i64
            } else {
                acc
            }
        })
    }

    /// Checks bounds, conservation and the reported value of a feasible
    /// result. Infeasible results carry no flow and always pass.
    pub fn audit(&self, result: &FlowResult) -> Result<(), FlowError> {
        if !result.feasible {
            return Ok(());
        }
        if result.flows.len() != self.arcs.len() {
            return Err(FlowError::ArcCountMismatch {
                expected: self.arcs.len(),
                found: result.flows.len(),
            });
        }
        let mut inflow = vec![0u64; self.nodes];
        let mut outflow = vec![0u64; self.nodes];
        for (arc, (a, &f)) in self.arcs.iter().zip(&result.flows).enumerate() {
            if f < a.lower || f > a.upper {
                return Err(FlowError::BoundViolated { arc, flow: f, lower: a.lower, upper: a.upper });
            }
            outflow[a.from] += f;
            inflow[a.to] += f;
        }
        for node in 0..self.nodes {
            if node != self.source && node != self.sink && inflow[node] != outflow[node] {
                return Err(FlowError::NotConserved {
                    node,
                    inflow: inflow[node],
                    outflow: outflow[node],
                });
            }
        }
        let actual = self.source_outflow(&result.flows);
        if actual != result.value {
            return Err(FlowError::ValueMismatch { reported: result.value, actual });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub feasible: bool,
    /// Net flow out of the source.
    pub value: i64,
    /// Flow per arc, indexed like [`BoundedNetwork::arcs`]. Empty when
    /// infeasible.
    pub flows: Vec<u64>,
}

impl FlowResult {
    fn infeasible() -> Self {
        FlowResult { feasible: false, value: 0, flows: Vec::new() }
    }
}

/// Maximum flow of a network whose lower bounds are all zero.
pub fn max_flow(net: &BoundedNetwork) -> Result<FlowResult, FlowError> {
    if let Some((arc, a)) = net.arcs.iter().enumerate().find(|(_, a)| a.lower > 0) {
        return Err(FlowError::NonZeroLowerBound { arc, lower: a.lower });
    }
    let mut g = Dinic::new(net.nodes);
    let handles: Vec<usize> = net.arcs.iter().map(|a| g.add_edge(a.from, a.to, a.upper)).collect();
    g.max_flow(net.source, net.sink);
    let flows: Vec<u64> = handles.iter().map(|&h| g.flow(h)).collect();
    let value = net.source_outflow(&flows);
    Ok(FlowResult { feasible: true, value, flows })
}

/// Maximum feasible flow honoring every arc's lower bound, or an infeasible
/// verdict when the lower bounds cannot all be met.
pub fn max_flow_with_lower_bounds(net: &BoundedNetwork) -> FlowResult {
    let n = net.nodes;
    let (aux_source, aux_sink) = (n, n + 1);
    let mut g = Dinic::new(n + 2);

    let handles: Vec<usize> =
        net.arcs.iter().map(|a| g.add_edge(a.from, a.to, a.upper - a.lower)).collect();

    let mut aux = Vec::new();
    let mut required = 0u64;
    for a in net.arcs.iter().filter(|a| a.lower > 0) {
        aux.push(g.add_edge(aux_source, a.to, a.lower));
        aux.push(g.add_edge(a.from, aux_sink, a.lower));
        required += a.lower;
    }
    // Return arcs both ways: s and t are exempt from conservation, and a
    // feasible flow may have negative net value (more entering s than leaving).
    let unbounded: u64 = net.arcs.iter().map(|a| a.upper).sum();
    let back = g.add_edge(net.sink, net.source, unbounded);
    let forth = g.add_edge(net.source, net.sink, unbounded);

    if g.max_flow(aux_source, aux_sink) != required {
        return FlowResult::infeasible();
    }

    // Freeze the circulation: the auxiliary arcs are saturated and the
    // return arcs' flow becomes part of the s-t value.
    g.disable(back);
    g.disable(forth);
    for h in aux {
        g.disable(h);
    }
    g.max_flow(net.source, net.sink);

    let flows: Vec<u64> =
        net.arcs.iter().zip(&handles).map(|(a, &h)| a.lower + g.flow(h)).collect();
    let value = net.source_outflow(&flows);
    FlowResult { feasible: true, value, flows }
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Dinic max flow. Edge handles index `edges`; the reverse edge of handle
/// `h` is `h ^ 1`.
#[derive(Debug, Clone)]
struct Dinic {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    original: Vec<u64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            original: Vec::new(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let h = self.edges.len();
        self.edges.push(Edge { to, cap, rev: h + 1 });
        self.edges.push(Edge { to: from, cap: 0, rev: h });
        self.original.push(cap);
        self.original.push(0);
        self.adj[from].push(h);
        self.adj[to].push(h + 1);
        h
    }

    fn flow(&self, h: usize) -> u64 {
        self.original[h] - self.edges[h].cap
    }

    /// Removes an edge from the residual graph, keeping its current flow.
    fn disable(&mut self, h: usize) {
        // With the residual capacity zeroed, `flow()` reads back `original`.
        self.original[h] = self.flow(h);
        self.edges[h].cap = 0;
        self.edges[h ^ 1].cap = 0;
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &h in &self.adj[v] {
                let e = &self.edges[h];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.adj[v].len() {
            let h = self.adj[v][self.iter[v]];
            let (to, cap) = (self.edges[h].to, self.edges[h].cap);
            if cap > 0 && self.level[v] < self.level[to] {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.edges[h].cap -= pushed;
                    let rev = self.edges[h].rev;
                    self.edges[rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(nodes: usize, arcs: &[(usize, usize, u64, u64)]) -> BoundedNetwork {
        let mut n = BoundedNetwork::new(nodes, 0, nodes - 1).unwrap();
        for &(a, b, l, u) in arcs {
            n.add_arc(a, b, l, u).unwrap();
        }
        n
    }

    #[test]
    fn parallel_arcs_sum() {
        let n = net(2, &[(0, 1, 0, 3), (0, 1, 0, 2)]);
        let r = max_flow(&n).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.flows, vec![3, 2]);
        n.audit(&r).unwrap();
    }

    #[test]
    fn bottleneck() {
        let n = net(3, &[(0, 1, 0, 1), (1, 2, 0, 2)]);
        assert_eq!(max_flow(&n).unwrap().value, 1);
    }

    #[test]
    fn disconnected() {
        let n = net(4, &[(0, 1, 0, 5), (2, 3, 0, 5)]);
        let r = max_flow(&n).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.feasible);
    }

    #[test]
    fn plain_max_flow_rejects_lower_bounds() {
        let n = net(2, &[(0, 1, 1, 1)]);
        assert_eq!(max_flow(&n), Err(FlowError::NonZeroLowerBound { arc: 0, lower: 1 }));
    }

    #[test]
    fn forced_unit_chain() {
        let n = net(3, &[(0, 1, 1, 1), (1, 2, 0, 2)]);
        let r = max_flow_with_lower_bounds(&n);
        assert!(r.feasible);
        assert_eq!(r.value, 1);
        assert_eq!(r.flows, vec![1, 1]);
        n.audit(&r).unwrap();
    }

    #[test]
    fn lower_bound_exceeds_downstream() {
        let n = net(3, &[(0, 1, 2, 2), (1, 2, 0, 1)]);
        assert!(!max_flow_with_lower_bounds(&n).feasible);
    }

    #[test]
    fn lower_bound_on_cycle_is_satisfied_by_circulation() {
        // 1 -> 2 -> 1 must carry at least 2 units; the s-t path is independent.
        let n = net(4, &[(0, 3, 0, 4), (1, 2, 2, 3), (2, 1, 0, 3)]);
        let r = max_flow_with_lower_bounds(&n);
        assert!(r.feasible);
        assert_eq!(r.value, 4);
        n.audit(&r).unwrap();
    }

    #[test]
    fn flow_into_source_counts_negative() {
        // Forced unit on t -> s: the best net outflow is 3 - 1.
        let n = net(2, &[(0, 1, 0, 3), (1, 0, 1, 2)]);
        let r = max_flow_with_lower_bounds(&n);
        assert!(r.feasible);
        assert_eq!(r.value, 2);
        n.audit(&r).unwrap();
    }

    #[test]
    fn structural_errors() {
        assert_eq!(BoundedNetwork::new(2, 0, 0), Err(FlowError::SourceIsSink(0)));
        assert_eq!(
            BoundedNetwork::new(2, 0, 2),
            Err(FlowError::NodeOutOfRange { node: 2, nodes: 2 })
        );
        let mut n = BoundedNetwork::new(3, 0, 2).unwrap();
        assert_eq!(n.add_arc(1, 1, 0, 1), Err(FlowError::SelfLoop(1)));
        assert_eq!(n.add_arc(0, 5, 0, 1), Err(FlowError::NodeOutOfRange { node: 5, nodes: 3 }));
        assert!(matches!(n.add_arc(0, 1, 2, 1), Err(FlowError::InvertedBounds { .. })));
    }

    #[test]
    fn audit_catches_tampering() {
        let n = net(3, &[(0, 1, 1, 1), (1, 2, 0, 2)]);
        let mut r = max_flow_with_lower_bounds(&n);
        r.flows[1] = 2;
        assert!(matches!(n.audit(&r), Err(FlowError::NotConserved { node: 1, .. })));
        r.flows = vec![0, 0];
        assert!(matches!(n.audit(&r), Err(FlowError::BoundViolated { arc: 0, .. })));
    }
}
