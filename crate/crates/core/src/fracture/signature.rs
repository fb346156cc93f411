//! Components of the augmented graph minus the modulator, and the
//! configurations each one admits.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::graph::{components_avoiding, EdgeId, Multigraph, VertexId};
use crate::instance::{augmented_graph, EdpInstance, TerminalPair};

use super::FractureError;

/// A component of `G^P - X` with the graph edges it owns (those with an
/// end inside it) and the pairs living in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub pairs: Vec<usize>,
}

/// Components in order of their lowest vertex. `x` must span no graph edge.
pub fn components(inst: &EdpInstance, x: &[VertexId]) -> Vec<Component> {
    let g = &inst.graph;
    let comps = components_avoiding(&augmented_graph(inst), x);
    let mut owner = vec![usize::MAX; g.n() + 1];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            owner[v] = i;
        }
    }
    let mut out: Vec<Component> = comps
        .into_iter()
        .map(|vertices| Component {
            vertices,
            edges: Vec::new(),
            pairs: Vec::new(),
        })
        .collect();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = if owner[u] != usize::MAX { owner[u] } else { owner[v] };
        debug_assert!(c != usize::MAX, "edge {e} inside the modulator");
        out[c].edges.push(e);
    }
    for (i, p) in inst.pairs.iter().enumerate() {
        out[owner[p.s]].pairs.push(i);
    }
    out
}

/// Number of 2-subsets of a modulator of size `k`.
pub fn slot_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Index of the 2-subset `{a, b}` of the sorted modulator `x`.
pub fn slot(x: &[VertexId], a: VertexId, b: VertexId) -> usize {
    let i = x.binary_search(&a).expect("a in modulator");
    let j = x.binary_search(&b).expect("b in modulator");
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i < j);
    i * (2 * x.len() - i - 1) / 2 + (j - i - 1)
}

/// Traces demanded by the pairs that leave the component, and the number of
/// modulator-to-modulator paths it supplies per 2-subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    /// Sorted; each trace reads from its smaller end.
    pub alpha: Vec<Vec<VertexId>>,
    /// Indexed by [`slot`].
    pub beta: Vec<u32>,
}

impl Configuration {
    /// How many traces have each 2-subset as consecutive entries.
    pub fn demand(&self, x: &[VertexId]) -> Vec<u32> {
        let mut d = vec![0; slot_count(x.len())];
        for t in &self.alpha {
            for w in t.windows(2) {
                d[slot(x, w[0], w[1])] += 1;
            }
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairRoute {
    /// `s` to `t` inside the component's edges.
    Inside { pair: usize, path: Vec<EdgeId> },
    /// `s` to the trace's first entry and `t` to its last.
    Out {
        pair: usize,
        from_s: Vec<EdgeId>,
        from_t: Vec<EdgeId>,
        trace: Vec<VertexId>,
    },
}

/// A modulator-to-modulator path, read from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: VertexId,
    pub b: VertexId,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigWitness {
    pub routes: Vec<PairRoute>,
    pub supply: Vec<Segment>,
}

pub type Signature = BTreeMap<Configuration, ConfigWitness>;

/// Largest supply value tracked: `|x|^2`, raised to the number of edges
/// between the component and one modulator vertex when parallel edges allow more.
pub fn beta_cap(g: &Multigraph, comp: &Component, x: &[VertexId]) -> u32 {
    let mut towards = BTreeMap::new();
    for &e in &comp.edges {
        let (u, v) = g.edge(e);
        for w in [u, v] {
            if x.binary_search(&w).is_ok() {
                *towards.entry(w).or_insert(0usize) += 1;
            }
        }
    }
    let most = towards.values().copied().max().unwrap_or(0);
    (x.len() * x.len()).max(most) as u32
}

/// Every sequence of distinct modulator vertices from `a` to `b`.
pub fn traces_between(x: &[VertexId], a: VertexId, b: VertexId) -> Vec<Vec<VertexId>> {
    fn grow(x: &[VertexId], b: VertexId, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        cur.push(b);
        out.push(cur.clone());
        cur.pop();
        for &z in x {
            if z != b && !cur.contains(&z) {
                cur.push(z);
                grow(x, b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(x, b, &mut vec![a], &mut out);
    out
}

/// A trace read from its smaller end.
pub fn canonical_trace(t: &[VertexId]) -> Vec<VertexId> {
    if t.first() > t.last() {
        t.iter().rev().copied().collect()
    } else {
        t.to_vec()
    }
}

type Supplies = Rc<BTreeMap<Vec<u32>, Vec<Segment>>>;

struct Search<'a> {
    x: &'a [VertexId],
    in_x: Vec<bool>,
    /// Local edge index to graph edge.
    local: Vec<EdgeId>,
    inc: Vec<Vec<(VertexId, usize)>>,
    cap: u32,
    memo: HashMap<u128, Supplies>,
}

impl<'a> Search<'a> {
    /// Simple paths from `start` over unused edges, one per reached target.
    fn paths_from(&self, start: VertexId, used: u128, target: &dyn Fn(VertexId) -> bool) -> Vec<(VertexId, Vec<usize>, u128)> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.inc.len()];
        on_path[start] = true;
        self.walk(start, used, &mut on_path, &mut Vec::new(), target, &mut out);
        out
    }

    fn walk(
        &self,
        v: VertexId,
        used: u128,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        target: &dyn Fn(VertexId) -> bool,
        out: &mut Vec<(VertexId, Vec<usize>, u128)>,
    ) {
        for &(w, e) in &self.inc[v] {
            if used >> e & 1 == 1 || on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.push(e);
            if target(w) {
                let mask = path.iter().fold(0u128, |m, &f| m | 1 << f);
                out.push((w, path.clone(), mask));
            }
            self.walk(w, used, on_path, path, target, out);
            path.pop();
            on_path[w] = false;
        }
    }

    fn global(&self, path: &[usize]) -> Vec<EdgeId> {
        path.iter().map(|&e| self.local[e]).collect()
    }

    /// Every supply vector reachable with the unused edges, with one witness each.
    fn supplies(&mut self, used: u128) -> Supplies {
        if let Some(s) = self.memo.get(&used) {
            return s.clone();
        }
        let mut out = BTreeMap::new();
        out.insert(vec![0; slot_count(self.x.len())], Vec::new());
        for &a in self.x {
            let in_x = self.in_x.clone();
            for (b, path, mask) in self.paths_from(a, used, &|w| in_x[w] && w > a) {
                let s = slot(self.x, a, b);
                let rest = self.supplies(used | mask);
                for (beta, segs) in rest.iter() {
                    if beta[s] >= self.cap {
                        continue;
                    }
                    let mut more = beta.clone();
                    more[s] += 1;
                    out.entry(more).or_insert_with(|| {
                        let mut v = vec![Segment {
                            a,
                            b,
                            edges: self.global(&path),
                        }];
                        v.extend(segs.iter().cloned());
                        v
                    });
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(used, out.clone());
        out
    }
}

/// Partial routing of a component's pairs: one leaving choice per pair.
struct Partial {
    routes: Vec<PairRoute>,
    used: u128,
}

/// The exact set of configurations `comp` admits, each with the first
/// witness found. `x` is sorted and spans no edge of `g`.
pub fn component_signature(
    g: &Multigraph,
    pairs: &[TerminalPair],
    comp: &Component,
    x: &[VertexId],
) -> Result<Signature, FractureError> {
    if comp.edges.len() > 128 {
        return Err(FractureError::ComponentTooLarge { edges: comp.edges.len() });
    }
    let mut in_x = vec![false; g.n() + 1];
    for &v in x {
        in_x[v] = true;
    }
    let mut inc = vec![Vec::new(); g.n() + 1];
    for (i, &e) in comp.edges.iter().enumerate() {
        let (u, v) = g.edge(e);
        inc[u].push((v, i));
        inc[v].push((u, i));
    }
    let mut search = Search {
        x,
        in_x: in_x.clone(),
        local: comp.edges.clone(),
        inc,
        cap: beta_cap(g, comp, x),
        memo: HashMap::new(),
    };

    let mut partials = vec![Partial {
        routes: Vec::new(),
        used: 0,
    }];
    for &p in &comp.pairs {
        let TerminalPair { s, t } = pairs[p];
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for part in &partials {
            let mut push = |route: PairRoute, used: u128, next: &mut Vec<Partial>| {
                let mut routes = part.routes.clone();
                routes.push(route);
                let key: Vec<Option<(VertexId, VertexId)>> = routes.iter().map(route_ends).collect();
                if seen.insert((key, used)) {
                    next.push(Partial { routes, used });
                }
            };
            for (_, path, mask) in search.paths_from(s, part.used, &|w| w == t) {
                let route = PairRoute::Inside {
                    pair: p,
                    path: search.global(&path),
                };
                push(route, part.used | mask, &mut next);
            }
            for (x1, ps, m1) in search.paths_from(s, part.used, &|w| in_x[w]) {
                for (x2, pt, m2) in search.paths_from(t, part.used | m1, &|w| in_x[w]) {
                    if x1 == x2 {
                        continue;
                    }
                    let route = PairRoute::Out {
                        pair: p,
                        from_s: search.global(&ps),
                        from_t: search.global(&pt),
                        trace: vec![x1, x2],
                    };
                    push(route, part.used | m1 | m2, &mut next);
                }
            }
        }
        partials = next;
    }

    let mut sig = Signature::new();
    for part in &partials {
        let supplies = search.supplies(part.used);
        let leaving: Vec<usize> = (0..part.routes.len())
            .filter(|&i| matches!(part.routes[i], PairRoute::Out { .. }))
            .collect();
        let options: Vec<Vec<Vec<VertexId>>> = leaving
            .iter()
            .map(|&i| match &part.routes[i] {
                PairRoute::Out { trace, .. } => traces_between(x, trace[0], trace[1]),
                PairRoute::Inside { .. } => unreachable!(),
            })
            .collect();
        let mut pick = vec![0usize; leaving.len()];
        loop {
            let mut routes = part.routes.clone();
            for (j, &i) in leaving.iter().enumerate() {
                if let PairRoute::Out { trace, .. } = &mut routes[i] {
                    *trace = options[j][pick[j]].clone();
                }
            }
            let mut alpha: Vec<Vec<VertexId>> = leaving.iter().enumerate().map(|(j, _)| canonical_trace(&options[j][pick[j]])).collect();
            alpha.sort();
            for (beta, segs) in supplies.iter() {
                let config = Configuration {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                };
                sig.entry(config).or_insert_with(|| ConfigWitness {
                    routes: routes.clone(),
                    supply: segs.clone(),
                });
            }
            // odometer over the trace choices
            let mut j = 0;
            while j < pick.len() {
                pick[j] += 1;
                if pick[j] < options[j].len() {
                    break;
                }
                pick[j] = 0;
                j += 1;
            }
            if j == pick.len() {
                break;
            }
        }
    }
    Ok(sig)
}

fn route_ends(r: &PairRoute) -> Option<(VertexId, VertexId)> {
    match r {
        PairRoute::Inside { .. } => None,
        PairRoute::Out { trace, .. } => Some((trace[0], trace[trace.len() - 1])),
    }
}
