//! Exhaustive reference solvers.
//!
//! Paths are routed one demand unit at a time in the given order. For each unit
//! the candidate paths are enumerated shortest first, then by edge-index order,
//! so the first certificate found is reproducible. Pruning only discards states
//! that provably cannot be completed: an unreachable demand, too few free edges
//! at a terminal, or a total shortest-distance requirement above the number of
//! free edges.

use std::collections::VecDeque;

use crate::graph::{components_avoiding, EdgeId, Multigraph, VertexId};
use crate::instance::{EdpInstance, MultiDemandInstance, MultiPathSet, PathSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Yes(T),
    No,
    BudgetExceeded,
}

impl<T> Outcome<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn decided(&self) -> Option<bool> {
        match self {
            Outcome::Yes(_) => Some(true),
            Outcome::No => Some(false),
            Outcome::BudgetExceeded => None,
        }
    }
}

struct Unit {
    s: VertexId,
    t: VertexId,
    /// Units that any solution may swap with the previous one; the search
    /// keeps them in increasing path order.
    after_previous: bool,
    /// Compare without the first and last edge (interchangeable leaf terminals).
    inner_key: bool,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a Multigraph,
    out: Vec<Vec<(VertexId, EdgeId)>>,
    inc: Vec<Vec<(VertexId, EdgeId)>>,
    units: Vec<Unit>,
    used: Vec<bool>,
    free: usize,
    chosen: Vec<Vec<EdgeId>>,
    nodes: u64,
    budget: u64,
    /// `on_path[v] == i + 1` while `v` is on the partial path of unit `i`.
    on_path: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Multigraph, units: Vec<Unit>, budget: u64) -> Self {
        let n = g.n();
        Search {
            g,
            out: g.out_arcs(),
            inc: g.incidence(),
            chosen: vec![Vec::new(); units.len()],
            units,
            used: vec![false; g.m()],
            free: g.m(),
            nodes: 0,
            budget,
            on_path: vec![0; n + 1],
        }
    }

    /// Distances to `t` over free edges (reverse arcs when directed).
    fn dist_to(&self, t: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.g.n() + 1];
        dist[t] = 0;
        let mut q = VecDeque::from([t]);
        while let Some(v) = q.pop_front() {
            for &(w, e) in &self.inc[v] {
                if self.used[e] || dist[w] != usize::MAX {
                    continue;
                }
                if self.g.is_directed() && self.g.edge(e).1 != v {
                    continue;
                }
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
        dist
    }

    fn free_degree(&self, v: VertexId, outgoing: bool) -> usize {
        self.inc[v]
            .iter()
            .filter(|&&(_, e)| {
                !self.used[e]
                    && (!self.g.is_directed() || (self.g.edge(e).0 == v) == outgoing)
            })
            .count()
    }

    /// Necessary conditions for routing units `from..`.
    fn feasible(&self, from: usize) -> bool {
        let rest = &self.units[from..];
        if rest.is_empty() {
            return true;
        }
        let mut need_out = vec![0usize; self.g.n() + 1];
        let mut need_in = vec![0usize; self.g.n() + 1];
        for u in rest {
            need_out[u.s] += 1;
            need_in[u.t] += 1;
        }
        for v in self.g.vertices() {
            if need_out[v] + need_in[v] == 0 {
                continue;
            }
            if self.g.is_directed() {
                if self.free_degree(v, true) < need_out[v] || self.free_degree(v, false) < need_in[v] {
                    return false;
                }
            } else if self.free_degree(v, true) < need_out[v] + need_in[v] {
                return false;
            }
        }
        let mut total = 0usize;
        let mut cache: Vec<(VertexId, Vec<usize>)> = Vec::new();
        for u in rest {
            let pos = match cache.iter().position(|(t, _)| *t == u.t) {
                Some(p) => p,
                None => {
                    cache.push((u.t, self.dist_to(u.t)));
                    cache.len() - 1
                }
            };
            let d = cache[pos].1[u.s];
            if d == usize::MAX {
                return false;
            }
            total += d;
        }
        total <= self.free
    }

    fn route(&mut self, i: usize) -> Step {
        if i == self.units.len() {
            return Step::Found;
        }
        if !self.feasible(i) {
            return Step::Exhausted;
        }
        let (s, t) = (self.units[i].s, self.units[i].t);
        let dist = self.dist_to(t);
        let shortest = dist[s];
        let floor = if self.units[i].after_previous {
            self.chosen[i - 1].len().max(shortest)
        } else {
            shortest
        };
        let longest = self.g.n().saturating_sub(1).min(self.free);
        for len in floor..=longest {
            let mut path = Vec::with_capacity(len);
            let old = std::mem::replace(&mut self.on_path[s], i + 1);
            let step = self.extend(i, s, t, len, &dist, &mut path);
            self.on_path[s] = old;
            match step {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }

    fn extend(
        &mut self,
        i: usize,
        v: VertexId,
        t: VertexId,
        len: usize,
        dist: &[usize],
        path: &mut Vec<EdgeId>,
    ) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if v == t {
            if path.len() != len || !self.after_previous_ok(i, path) {
                return Step::Exhausted;
            }
            self.chosen[i] = path.clone();
            let step = self.route(i + 1);
            if matches!(step, Step::Exhausted) {
                self.chosen[i].clear();
            }
            return step;
        }
        let left = len - path.len();
        for idx in 0..self.out[v].len() {
            let (w, e) = self.out[v][idx];
            if self.used[e] || self.on_path[w] == i + 1 || dist[w] == usize::MAX || dist[w] + 1 > left {
                continue;
            }
            self.used[e] = true;
            self.free -= 1;
            let old = std::mem::replace(&mut self.on_path[w], i + 1);
            path.push(e);
            let step = self.extend(i, w, t, len, dist, path);
            path.pop();
            self.on_path[w] = old;
            self.free += 1;
            self.used[e] = false;
            match step {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }

    fn after_previous_ok(&self, i: usize, path: &[EdgeId]) -> bool {
        let unit = &self.units[i];
        if !unit.after_previous {
            return true;
        }
        let prev = &self.chosen[i - 1];
        if prev.len() != path.len() {
            return path.len() > prev.len();
        }
        if unit.inner_key && path.len() >= 2 {
            path[1..path.len() - 1] > prev[1..prev.len() - 1]
        } else {
            path > &prev[..]
        }
    }
}

fn single_neighbor(inc: &[Vec<(VertexId, EdgeId)>], v: VertexId) -> Option<VertexId> {
    match inc[v].as_slice() {
        [(w, _)] => Some(*w),
        _ => None,
    }
}

/// Exact EDP by backtracking. Yes answers carry a certificate.
pub fn brute_force_edp(inst: &EdpInstance, budget: u64) -> Outcome<PathSet> {
    let g = inst.graph.undirected();
    let inc = g.incidence();
    let mut units: Vec<Unit> = Vec::with_capacity(inst.pairs.len());
    for (i, p) in inst.pairs.iter().enumerate() {
        // pairs of leaves hanging off the same two vertices are interchangeable
        let twin = i > 0 && {
            let q = inst.pairs[i - 1];
            let key = |a: VertexId, b: VertexId| (single_neighbor(&inc, a), single_neighbor(&inc, b));
            let (ka, kb) = (key(p.s, p.t), key(q.s, q.t));
            ka.0.is_some() && ka.1.is_some() && ka == kb && ka.0 != ka.1
        };
        units.push(Unit {
            s: p.s,
            t: p.t,
            after_previous: twin,
            inner_key: true,
        });
    }
    let mut search = Search::new(&g, units, budget);
    match search.route(0) {
        Step::Found => Outcome::Yes(PathSet {
            paths: search.chosen,
        }),
        Step::Exhausted => Outcome::No,
        Step::OutOfBudget => Outcome::BudgetExceeded,
    }
}

/// Exact multi-demand routing; arc directions are respected for directed graphs.
pub fn brute_force_multi(inst: &MultiDemandInstance, budget: u64) -> Outcome<MultiPathSet> {
    let mut units = Vec::new();
    let mut owner = Vec::new();
    for (i, d) in inst.demands.iter().enumerate() {
        for c in 0..d.count {
            units.push(Unit {
                s: d.s,
                t: d.t,
                after_previous: c > 0,
                inner_key: false,
            });
            owner.push(i);
        }
    }
    let mut search = Search::new(&inst.graph, units, budget);
    match search.route(0) {
        Step::Found => {
            let mut paths = vec![Vec::new(); inst.demands.len()];
            for (k, p) in search.chosen.into_iter().enumerate() {
                paths[owner[k]].push(p);
            }
            Outcome::Yes(MultiPathSet { paths })
        }
        Step::Exhausted => Outcome::No,
        Step::OutOfBudget => Outcome::BudgetExceeded,
    }
}

/// True iff every component of `g - x` has at most `|x|` vertices.
pub fn is_fracture_modulator(g: &Multigraph, x: &[VertexId]) -> bool {
    components_avoiding(g, x).iter().all(|c| c.len() <= x.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractureWitness {
    pub number: usize,
    pub modulator: Vec<VertexId>,
}

/// Smallest fracture modulator of size at most `kmax`, by subset enumeration.
pub fn exhaustive_fracture_number(g: &Multigraph, kmax: usize) -> Option<FractureWitness> {
    let n = g.n();
    for k in 0..=kmax.min(n) {
        let mut subset: Vec<VertexId> = (1..=k).collect();
        loop {
            if is_fracture_modulator(g, &subset) {
                return Some(FractureWitness {
                    number: k,
                    modulator: subset,
                });
            }
            // next k-subset in lexicographic order
            let mut i = k;
            while i > 0 && subset[i - 1] == n - k + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            subset[i - 1] += 1;
            for j in i..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    None
}
