//! Dinic max-flow on a small dense-ish graph, plus the vertex-cut reduction
//! used by the barrier and minimax code.

use std::collections::{BTreeMap, VecDeque};

use crate::lattice::{neighbors, Cell};

pub(crate) const INF: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct FlowGraph {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowGraph {
    pub fn new(nodes: usize) -> Self {
        FlowGraph { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u64) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && level[to] == u32::MAX {
                    level[to] = level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        level
    }

    fn push(&mut self, v: usize, t: usize, f: u64, level: &[u32], it: &mut [usize]) -> u64 {
        if v == t {
            return f;
        }
        while it[v] < self.adj[v].len() {
            let e = self.adj[v][it[v]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && level[to] == level[v] + 1 {
                let d = self.push(to, t, f.min(cap), level, it);
                if d > 0 {
                    self.edges[e].cap -= d;
                    self.edges[e ^ 1].cap += d;
                    return d;
                }
            }
            it[v] += 1;
        }
        0
    }

    /// Maximum flow value, saturating at `INF`.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        loop {
            let level = self.levels(s);
            if level[t] == u32::MAX {
                return total;
            }
            let mut it = vec![0; self.adj.len()];
            loop {
                let f = self.push(s, t, INF, &level, &mut it);
                if f == 0 {
                    break;
                }
                total = total.saturating_add(f);
                if total >= INF {
                    return INF;
                }
            }
        }
    }

    /// Nodes reachable from `s` in the residual graph.
    pub fn residual_reach(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != u32::MAX).collect()
    }
}

/// Role of a cell in a vertex-cut instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    /// Fire; every one is a source.
    Source,
    /// Free and protectable at unit cost.
    Cuttable,
    /// Free but not protectable.
    Fixed,
}

/// Minimum number of `Cuttable` cells meeting every path from a source to a
/// target. Cells not in `nodes` are impassable. Returns the value and one
/// optimal cut, or `None` when no finite cut exists.
pub(crate) fn min_vertex_cut(nodes: &BTreeMap<Cell, Node>, targets: &[Cell]) -> Option<(u64, Vec<Cell>)> {
    let index: BTreeMap<Cell, usize> = nodes.keys().enumerate().map(|(i, &c)| (c, i)).collect();
    let n = index.len();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut g = FlowGraph::new(2 * n + 2);
    for (&c, &i) in &index {
        let cap = match nodes[&c] {
            Node::Cuttable => 1,
            _ => INF,
        };
        g.add_edge(2 * i, 2 * i + 1, cap);
        if nodes[&c] == Node::Source {
            g.add_edge(s, 2 * i, INF);
        }
        for nb in neighbors(c) {
            if let Some(&j) = index.get(&nb) {
                g.add_edge(2 * i + 1, 2 * j, INF);
            }
        }
    }
    for c in targets {
        if let Some(&i) = index.get(c) {
            g.add_edge(2 * i + 1, t, INF);
        }
    }
    let value = g.max_flow(s, t);
    if value >= INF {
        return None;
    }
    let reach = g.residual_reach(s);
    let cut = index
        .iter()
        .filter(|&(_, &i)| reach[2 * i] && !reach[2 * i + 1])
        .map(|(&c, _)| c)
        .collect();
    Some((value, cut))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        let mut g = FlowGraph::new(4);
        g.add_edge(0, 1, 3);
        g.add_edge(0, 2, 2);
        g.add_edge(1, 2, 1);
        g.add_edge(1, 3, 2);
        g.add_edge(2, 3, 3);
        assert_eq!(g.max_flow(0, 3), 5);
    }

    #[test]
    fn path_of_cells_is_cut_once() {
        let nodes: BTreeMap<Cell, Node> = (0..5)
            .map(|x| (Cell::new(x, 0), if x == 0 { Node::Source } else { Node::Cuttable }))
            .collect();
        let (v, cut) = min_vertex_cut(&nodes, &[Cell::new(4, 0)]).unwrap();
        assert_eq!(v, 1);
        assert_eq!(cut.len(), 1);
    }

    #[test]
    fn uncuttable_path_has_no_cut() {
        let nodes: BTreeMap<Cell, Node> =
            [(Cell::new(0, 0), Node::Source), (Cell::new(1, 0), Node::Fixed)].into_iter().collect();
        assert!(min_vertex_cut(&nodes, &[Cell::new(1, 0)]).is_none());
    }
}
