//! Fracture modulators: search, the terminal-free transform, and removal of
//! modulator-internal edges.

use std::collections::BTreeSet;

use crate::graph::{components_avoiding, EdgeId, Multigraph, VertexId};
use crate::instance::{augmented_graph, EdpInstance};
use crate::oracle::is_fracture_modulator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulatorMode {
    /// Branch on each vertex of a too-large connected piece; size at most `k`.
    Exact,
    /// Delete the whole piece; size at most `(k + 1) * k`.
    Approx,
}

/// A fracture modulator of `g` (every component of `g - x` has at most
/// `|x|` vertices), or `None` when the fracture number exceeds `k`.
/// Result is sorted.
pub fn find_fracture_modulator(g: &Multigraph, k: usize, mode: ModulatorMode) -> Option<Vec<VertexId>> {
    let mut x = Vec::new();
    if !branch(g, &mut x, k, k, mode) {
        return None;
    }
    // components are at most k; growing x to k keeps them so and makes |x| >= k
    pad(g, &mut x, k.min(g.n()), |_| true);
    x.sort_unstable();
    Some(x)
}

fn branch(g: &Multigraph, x: &mut Vec<VertexId>, budget: usize, cap: usize, mode: ModulatorMode) -> bool {
    let comps = components_avoiding(g, x);
    let Some(big) = comps.iter().find(|c| c.len() > cap) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let piece = connected_piece(g, x, big[0], cap + 1);
    match mode {
        ModulatorMode::Exact => {
            for v in piece {
                x.push(v);
                if branch(g, x, budget - 1, cap, mode) {
                    return true;
                }
                x.pop();
            }
            false
        }
        ModulatorMode::Approx => {
            x.extend(piece);
            branch(g, x, budget - 1, cap, mode)
        }
    }
}

/// First `size` vertices reached by a depth-first walk from `start` in `g - removed`.
fn connected_piece(g: &Multigraph, removed: &[VertexId], start: VertexId, size: usize) -> Vec<VertexId> {
    let inc = g.incidence();
    let mut seen = vec![false; g.n() + 1];
    for &v in removed {
        seen[v] = true;
    }
    let mut out = Vec::new();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        out.push(v);
        if out.len() == size {
            break;
        }
        for &(w, _) in inc[v].iter().rev() {
            if !seen[w] {
                stack.push(w);
            }
        }
    }
    out
}

/// Adds the lowest eligible vertices to `x` until it has `target` members.
fn pad(g: &Multigraph, x: &mut Vec<VertexId>, target: usize, eligible: impl Fn(VertexId) -> bool) {
    for v in g.vertices() {
        if x.len() >= target {
            break;
        }
        if eligible(v) && !x.contains(&v) {
            x.push(v);
        }
    }
}

/// Swaps every pair touched by `x0` for the graph neighbours of both its
/// terminals. When that leaves a component larger than the result, the
/// lowest non-terminals are added until the result is a fracture modulator
/// again (or no non-terminal is left).
pub fn terminal_free_modulator(inst: &EdpInstance, x0: &[VertexId]) -> Vec<VertexId> {
    let inc = inst.graph.incidence();
    let hit: BTreeSet<VertexId> = x0.iter().copied().collect();
    let mut drop = BTreeSet::new();
    let mut add = BTreeSet::new();
    for p in &inst.pairs {
        if hit.contains(&p.s) || hit.contains(&p.t) {
            for a in [p.s, p.t] {
                drop.insert(a);
                add.extend(inc[a].iter().map(|&(w, _)| w));
            }
        }
    }
    let mut x: BTreeSet<VertexId> = hit.difference(&drop).copied().collect();
    x.extend(add);
    let mut x: Vec<VertexId> = x.into_iter().collect();
    let aug = augmented_graph(inst);
    let role = inst.terminal_of();
    while !is_fracture_modulator(&aug, &x) {
        let before = x.len();
        pad(&aug, &mut x, before + 1, |v| role[v].is_none());
        if x.len() == before {
            break;
        }
    }
    x.sort_unstable();
    x
}

/// An instance whose modulator spans no edge, with each edge traced back to
/// the caller's edge it came from.
#[derive(Debug, Clone)]
pub struct FracturePrep {
    pub inst: EdpInstance,
    pub modulator: Vec<VertexId>,
    pub origin: Vec<EdgeId>,
}

impl FracturePrep {
    /// Caller's edge sequence for a path of the prepared instance.
    pub fn unmap_path(&self, path: &[EdgeId]) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = path.iter().map(|&e| self.origin[e]).collect();
        // both halves of a subdivided edge are consecutive on any path
        out.dedup();
        out
    }
}

/// Subdivides every edge with both ends in `x`.
pub fn prepare_fracture(inst: &EdpInstance, x: &[VertexId]) -> FracturePrep {
    let g = &inst.graph;
    let mut in_x = vec![false; g.n() + 1];
    for &v in x {
        in_x[v] = true;
    }
    let mut out = Multigraph::new(g.n());
    let mut origin = Vec::with_capacity(g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_x[u] && in_x[v] {
            let w = out.add_vertex();
            out.add_edge(u, w).expect("subdivision");
            out.add_edge(w, v).expect("subdivision");
            origin.extend([e, e]);
        } else {
            out.add_edge(u, v).expect("copied edge");
            origin.push(e);
        }
    }
    FracturePrep {
        inst: EdpInstance::new(out, inst.pairs.clone()),
        modulator: x.to_vec(),
        origin,
    }
}
