//! EDP instances, their normal form, the augmented graph, and solution checking.

use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminalPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl TerminalPair {
    pub fn new(s: VertexId, t: VertexId) -> Self {
        debug_assert_ne!(s, t);
        TerminalPair { s, t }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdpInstance {
    pub graph: Multigraph,
    pub pairs: Vec<TerminalPair>,
    /// Every terminal is in one pair, has degree one, and has no terminal neighbor.
    pub normalized: bool,
}

impl EdpInstance {
    pub fn new(graph: Multigraph, pairs: Vec<TerminalPair>) -> Self {
        let normalized = satisfies_normal_form(&graph, &pairs);
        EdpInstance {
            graph,
            pairs,
            normalized,
        }
    }

    /// `role[v]` is `Some(pair index)` for terminals (first occurrence).
    pub fn terminal_of(&self) -> Vec<Option<usize>> {
        let mut role = vec![None; self.graph.n() + 1];
        for (i, p) in self.pairs.iter().enumerate().rev() {
            role[p.s] = Some(i);
            role[p.t] = Some(i);
        }
        role
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.pairs.iter().any(|p| p.s == v || p.t == v)
    }
}

fn satisfies_normal_form(g: &Multigraph, pairs: &[TerminalPair]) -> bool {
    let mut count = vec![0usize; g.n() + 1];
    for p in pairs {
        count[p.s] += 1;
        count[p.t] += 1;
    }
    let deg = g.degrees();
    let terminals_ok = g
        .vertices()
        .all(|v| count[v] == 0 || (count[v] == 1 && deg[v] == 1));
    terminals_ok
        && g
            .edges()
            .iter()
            .all(|&(u, v)| count[u] == 0 || count[v] == 0)
}

/// Attaches a fresh leaf to every terminal occurrence that breaks the normal
/// form and moves the pair onto it. New ids follow pair order, `s` before `t`.
pub fn normalize_instance(inst: &EdpInstance) -> EdpInstance {
    let g = &inst.graph;
    let mut count = vec![0usize; g.n() + 1];
    for p in &inst.pairs {
        count[p.s] += 1;
        count[p.t] += 1;
    }
    let deg = g.degrees();
    let mut bad = vec![false; g.n() + 1];
    for v in g.vertices() {
        if count[v] > 1 || (count[v] == 1 && deg[v] != 1) {
            bad[v] = true;
        }
    }
    for &(u, v) in g.edges() {
        if count[u] > 0 && count[v] > 0 {
            bad[u] = true;
            bad[v] = true;
        }
    }
    let mut out = g.clone();
    let mut pairs = Vec::with_capacity(inst.pairs.len());
    for p in &inst.pairs {
        let mut ends = [p.s, p.t];
        for end in ends.iter_mut() {
            if bad[*end] {
                let leaf = out.add_vertex();
                out.add_edge(*end, leaf).expect("fresh leaf");
                *end = leaf;
            }
        }
        pairs.push(TerminalPair::new(ends[0], ends[1]));
    }
    let res = EdpInstance::new(out, pairs);
    debug_assert!(res.normalized);
    res
}

/// The input graph followed by one edge per pair, in pair order.
pub fn augmented_graph(inst: &EdpInstance) -> Multigraph {
    let mut g = inst.graph.undirected();
    for p in &inst.pairs {
        g.add_edge(p.s, p.t).expect("pair endpoints are vertices");
    }
    g
}

/// One edge sequence per pair, by 0-based edge index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet {
    pub paths: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Walks `path` from `from`; returns the end vertex or a diagnostic.
/// Arc direction is respected when `g` is directed.
pub fn walk(g: &Multigraph, from: VertexId, path: &[EdgeId]) -> Result<VertexId, String> {
    let mut at = from;
    for (i, &e) in path.iter().enumerate() {
        if e >= g.m() {
            return Err(format!("edge index {} out of range", e + 1));
        }
        let (u, v) = g.edge(e);
        at = if u == at {
            v
        } else if v == at && !g.is_directed() {
            u
        } else {
            return Err(format!("step {} (edge {}) not incident to vertex {at}", i + 1, e + 1));
        };
    }
    Ok(at)
}

/// Accepts iff each pair has an edge-consecutive walk between its terminals and
/// no edge index appears twice overall. Diagnostics use 1-based indices.
pub fn verify_solution(inst: &EdpInstance, sol: &PathSet) -> Verdict {
    if sol.paths.len() != inst.pairs.len() {
        return Verdict::Reject(format!(
            "expected {} paths, got {}",
            inst.pairs.len(),
            sol.paths.len()
        ));
    }
    let mut used = vec![false; inst.graph.m()];
    for (i, (p, path)) in inst.pairs.iter().zip(&sol.paths).enumerate() {
        let end = match walk(&inst.graph, p.s, path) {
            Ok(end) => end,
            Err(msg) => return Verdict::Reject(format!("path {}: not consecutive: {msg}", i + 1)),
        };
        if end != p.t {
            return Verdict::Reject(format!(
                "path {}: wrong endpoint {end}, expected {}",
                i + 1,
                p.t
            ));
        }
        for &e in path {
            if used[e] {
                return Verdict::Reject(format!("edge reused: {}", e + 1));
            }
            used[e] = true;
        }
    }
    Verdict::Accept
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Demand {
    pub s: VertexId,
    pub t: VertexId,
    pub count: usize,
}

/// Several paths per terminal triple, over a directed or undirected multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDemandInstance {
    pub graph: Multigraph,
    pub demands: Vec<Demand>,
}

/// For each demand, its `count` paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPathSet {
    pub paths: Vec<Vec<Vec<EdgeId>>>,
}

pub fn verify_multi_solution(inst: &MultiDemandInstance, sol: &MultiPathSet) -> Verdict {
    if sol.paths.len() != inst.demands.len() {
        return Verdict::Reject("demand count mismatch".into());
    }
    let mut used = vec![false; inst.graph.m()];
    for (i, (d, group)) in inst.demands.iter().zip(&sol.paths).enumerate() {
        if group.len() != d.count {
            return Verdict::Reject(format!(
                "demand {}: {} paths, expected {}",
                i + 1,
                group.len(),
                d.count
            ));
        }
        for path in group {
            match walk(&inst.graph, d.s, path) {
                Ok(end) if end == d.t => {}
                Ok(end) => {
                    return Verdict::Reject(format!("demand {}: wrong endpoint {end}", i + 1))
                }
                Err(msg) => return Verdict::Reject(format!("demand {}: {msg}", i + 1)),
            }
            for &e in path {
                if used[e] {
                    return Verdict::Reject(format!("edge reused: {}", e + 1));
                }
                used[e] = true;
            }
        }
    }
    Verdict::Accept
}
