//! Independent reference checks shared by the integration tests.

#![allow(dead_code)]

use edpkit_core::graph::{EdgeId, VertexId};
use edpkit_core::sedp::{LabelSet, SedpInstance};

/// One path to route: endpoints plus a vertex it must avoid.
#[derive(Clone, Copy, Debug)]
struct Leg {
    from: VertexId,
    to: VertexId,
    avoid: Option<VertexId>,
}

struct Local {
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    m: usize,
}

impl Local {
    fn route(&self, legs: &[Leg], used: &mut Vec<bool>) -> bool {
        let Some((&leg, rest)) = legs.split_first() else {
            return true;
        };
        if Some(leg.from) == leg.avoid || Some(leg.to) == leg.avoid {
            return false;
        }
        let mut on = vec![false; self.adj.len()];
        self.walk(leg.from, leg, rest, used, &mut on)
    }

    fn walk(&self, at: VertexId, leg: Leg, rest: &[Leg], used: &mut Vec<bool>, on: &mut Vec<bool>) -> bool {
        if at == leg.to {
            return self.route(rest, used);
        }
        on[at] = true;
        for &(w, e) in &self.adj[at] {
            if used[e] || on[w] || Some(w) == leg.avoid {
                continue;
            }
            used[e] = true;
            let ok = self.walk(w, leg, rest, used, on);
            used[e] = false;
            if ok {
                on[at] = false;
                return true;
            }
        }
        on[at] = false;
        false
    }
}

/// Labels of the subtree at `t`, found by trying every way of routing the
/// requirements of each label with edge-disjoint simple paths inside the
/// subtree plus `x`.
pub fn enumerate_labels(prep: &SedpInstance, t: VertexId) -> LabelSet {
    let x = prep.x;
    let sub = prep.subtree(t);
    let g = &prep.inst.graph;
    let mut inside = vec![false; g.n() + 1];
    for &v in &sub {
        inside[v] = true;
    }
    inside[x] = true;
    let mut adj = vec![Vec::new(); g.n() + 1];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if inside[u] && inside[v] {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let local = Local { adj, m: g.m() };

    // pairs with a terminal in the subtree: (index, terminals inside, partner outside)
    let mut local_pairs = Vec::new();
    for (i, p) in prep.inst.pairs.iter().enumerate() {
        let ins: Vec<VertexId> = [p.s, p.t].into_iter().filter(|&v| inside[v] && v != x).collect();
        if !ins.is_empty() {
            local_pairs.push((i, p.s, p.t, ins));
        }
    }

    // alternatives that serve a pair in the gamma-empty sense
    let serve = |s: VertexId, tt: VertexId, ins: &[VertexId]| -> Vec<Vec<Leg>> {
        if ins.len() == 2 {
            vec![
                vec![Leg { from: s, to: tt, avoid: Some(x) }],
                vec![
                    Leg { from: s, to: x, avoid: Some(tt) },
                    Leg { from: tt, to: x, avoid: Some(s) },
                ],
            ]
        } else {
            let a = ins[0];
            let b = if a == s { tt } else { s };
            vec![vec![Leg { from: a, to: x, avoid: Some(b) }]]
        }
    };
    // alternatives that hand one terminal of the pair up to t
    let lift = |s: VertexId, tt: VertexId, ins: &[VertexId]| -> Vec<Vec<Leg>> {
        if ins.len() == 2 {
            vec![
                vec![
                    Leg { from: t, to: s, avoid: Some(x) },
                    Leg { from: tt, to: x, avoid: Some(s) },
                ],
                vec![
                    Leg { from: t, to: tt, avoid: Some(x) },
                    Leg { from: s, to: x, avoid: Some(tt) },
                ],
            ]
        } else {
            vec![vec![Leg { from: t, to: ins[0], avoid: Some(x) }]]
        }
    };

    let feasible = |groups: Vec<Vec<Vec<Leg>>>| -> bool {
        // cartesian product over the alternatives of every group
        let mut idx = vec![0usize; groups.len()];
        loop {
            let legs: Vec<Leg> = groups
                .iter()
                .zip(&idx)
                .flat_map(|(g, &k)| g[k].iter().copied())
                .collect();
            let mut used = vec![false; local.m];
            if local.route(&legs, &mut used) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return false;
                }
                idx[i] += 1;
                if idx[i] < groups[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    };

    let base = |skip: Option<usize>| -> Vec<Vec<Vec<Leg>>> {
        local_pairs
            .iter()
            .filter(|(i, ..)| Some(*i) != skip)
            .map(|(_, s, tt, ins)| serve(*s, *tt, ins))
            .collect()
    };

    let gamma_empty = feasible(base(None));
    let mut with_x = base(None);
    with_x.push(vec![vec![Leg { from: t, to: x, avoid: None }]]);
    let gamma_x = feasible(with_x);
    let mut pairs = Vec::new();
    for (i, s, tt, ins) in &local_pairs {
        let mut groups = base(Some(*i));
        groups.push(lift(*s, *tt, ins));
        if feasible(groups) {
            pairs.push(*i);
        }
    }
    LabelSet {
        gamma_empty,
        gamma_x,
        pairs,
    }
}

/// Inner tree nodes whose subtree plus `x` has at most `limit` vertices.
pub fn small_inner_nodes(prep: &SedpInstance, limit: usize) -> Vec<VertexId> {
    prep.order
        .iter()
        .copied()
        .filter(|&t| !prep.children[t].is_empty() && prep.subtree(t).len() < limit)
        .collect()
}

pub mod graphs;
pub mod search;
pub mod signature;
