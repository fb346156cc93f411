//! Edge-disjoint paths when one vertex `x` meets every cycle.
//!
//! Each tree of `G - x` is labelled bottom-up; the instance is solvable iff
//! every tree root carries `gamma_empty`. Paths are rebuilt top-down from the
//! same matchings that decided the labels.

mod extract;
pub mod labels;

pub use labels::{compute_labels, inner_labels, leaf_labels, ChildClass, LabelSet, NodePartition};

use crate::graph::{components_avoiding, find_fvs_one, is_forest_without, EdgeId, Multigraph, VertexId};
use crate::instance::{normalize_instance, verify_solution, EdpInstance, PathSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SedpError {
    #[error("removing vertex {0} does not leave a forest")]
    NotForest(VertexId),
    #[error("no single vertex meets every cycle")]
    NoFeedbackVertex,
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
}

/// A normalized instance with every tree of `G - x` rooted, `x` only adjacent
/// to rooted leaves, and no terminal at `x` or at a root.
#[derive(Debug, Clone)]
pub struct SedpInstance {
    pub inst: EdpInstance,
    pub x: VertexId,
    pub roots: Vec<VertexId>,
    pub parent: Vec<Option<VertexId>>,
    pub parent_edge: Vec<Option<EdgeId>>,
    pub children: Vec<Vec<VertexId>>,
    /// Lowest edge to `x`, per vertex.
    pub x_edge: Vec<Option<EdgeId>>,
    pub terminal_of: Vec<Option<usize>>,
    /// Non-`x` vertices, parents before children.
    pub order: Vec<VertexId>,
    /// Edge of the input instance each edge stands for; `None` for added leaves.
    pub origin: Vec<Option<EdgeId>>,
}

struct Rooting {
    roots: Vec<VertexId>,
    parent: Vec<Option<VertexId>>,
    parent_edge: Vec<Option<EdgeId>>,
    children: Vec<Vec<VertexId>>,
    order: Vec<VertexId>,
}

fn root_forest(g: &Multigraph, x: VertexId, roots: &[VertexId]) -> Rooting {
    let inc = g.incidence();
    let n = g.n();
    let mut parent = vec![None; n + 1];
    let mut parent_edge = vec![None; n + 1];
    let mut children = vec![Vec::new(); n + 1];
    let mut seen = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    seen[x] = true;
    for &r in roots {
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(w, e) in &inc[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    parent_edge[w] = Some(e);
                    children[v].push(w);
                    order.push(w);
                }
            }
        }
    }
    Rooting {
        roots: roots.to_vec(),
        parent,
        parent_edge,
        children,
        order,
    }
}

/// Brings `inst` into the shape the labelling needs, keeping the answer.
pub fn prepare_sedp(inst: &EdpInstance, x: VertexId) -> Result<SedpInstance, SedpError> {
    if x == 0 || x > inst.graph.n() {
        return Err(SedpError::OutOfRange(x));
    }
    if !is_forest_without(&inst.graph, Some(x)) {
        return Err(SedpError::NotForest(x));
    }
    let m0 = inst.graph.m();
    let norm = normalize_instance(inst);
    let mut g = norm.graph;
    let mut pairs = norm.pairs;
    let mut origin: Vec<Option<EdgeId>> = (0..g.m()).map(|e| (e < m0).then_some(e)).collect();

    if pairs.iter().any(|p| p.s == x || p.t == x) {
        let leaf = g.add_vertex();
        g.add_edge(x, leaf).expect("fresh leaf");
        origin.push(None);
        for p in pairs.iter_mut() {
            for end in [&mut p.s, &mut p.t] {
                if *end == x {
                    *end = leaf;
                }
            }
        }
    }

    let mut is_terminal = vec![false; g.n() + 1];
    for p in &pairs {
        is_terminal[p.s] = true;
        is_terminal[p.t] = true;
    }
    let mut touches_x = vec![false; g.n() + 1];
    for &(u, v) in g.edges() {
        if u == x {
            touches_x[v] = true;
        } else if v == x {
            touches_x[u] = true;
        }
    }
    let mut roots = Vec::new();
    for comp in components_avoiding(&g, &[x]) {
        let candidates = comp.iter().copied().filter(|&v| !is_terminal[v]);
        let pick = candidates.clone().find(|&v| !touches_x[v]).or_else(|| candidates.min());
        match pick {
            Some(r) => roots.push(r),
            None => {
                debug_assert_eq!(comp.len(), 1);
                let r = g.add_vertex();
                g.add_edge(comp[0], r).expect("fresh root");
                origin.push(None);
                roots.push(r);
            }
        }
    }
    roots.sort_unstable();

    // edges from x to vertices with children become two-edge detours through a new leaf
    let rooting = root_forest(&g, x, &roots);
    let mut rebuilt = Multigraph::new(g.n());
    let mut new_origin = Vec::with_capacity(origin.len());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let inner = if u == x { v } else { u };
        if (u == x || v == x) && !rooting.children[inner].is_empty() {
            let l = rebuilt.add_vertex();
            rebuilt.add_edge(inner, l).expect("detour");
            rebuilt.add_edge(l, x).expect("detour");
            new_origin.push(origin[e]);
            new_origin.push(origin[e]);
        } else {
            rebuilt.add_edge(u, v).expect("copied edge");
            new_origin.push(origin[e]);
        }
    }
    let g = rebuilt;
    let origin = new_origin;
    let rooting = root_forest(&g, x, &roots);

    let mut x_edge = vec![None; g.n() + 1];
    for (e, &(u, v)) in g.edges().iter().enumerate().rev() {
        if u == x {
            x_edge[v] = Some(e);
        } else if v == x {
            x_edge[u] = Some(e);
        }
    }
    let inst = EdpInstance::new(g, pairs);
    let terminal_of = inst.terminal_of();
    Ok(SedpInstance {
        inst,
        x,
        roots: rooting.roots,
        parent: rooting.parent,
        parent_edge: rooting.parent_edge,
        children: rooting.children,
        x_edge,
        terminal_of,
        order: rooting.order,
        origin,
    })
}

impl SedpInstance {
    /// Label set of every vertex (index 0 and `x` stay empty).
    pub fn compute_all_labels(&self) -> Vec<LabelSet> {
        let mut labels = vec![LabelSet::default(); self.inst.graph.n() + 1];
        for &v in self.order.iter().rev() {
            let kids: Vec<&LabelSet> = self.children[v].iter().map(|&c| &labels[c]).collect();
            let l = compute_labels(self.terminal_of[v], self.x_edge[v].is_some(), &kids);
            labels[v] = l;
        }
        labels
    }

    /// Whether every tree root carries `gamma_empty`.
    pub fn all_trees_gamma_empty(&self, labels: &[LabelSet]) -> bool {
        self.roots.iter().all(|&r| labels[r].gamma_empty)
    }

    /// Vertices of the subtree rooted at `t`.
    pub fn subtree(&self, t: VertexId) -> Vec<VertexId> {
        let mut out = vec![t];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children[out[i]].iter().copied());
            i += 1;
        }
        out
    }

    /// Maps a path of the prepared graph back to the input instance.
    pub fn unmap_path(&self, path: &[EdgeId]) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = Vec::with_capacity(path.len());
        for &e in path {
            if let Some(o) = self.origin[e] {
                if out.last() != Some(&o) {
                    out.push(o);
                }
            }
        }
        out
    }
}

/// Whether the tree rooted at `root` carries `gamma_empty`.
pub fn tree_gamma_empty(prep: &SedpInstance, root: VertexId) -> bool {
    prep.compute_all_labels()[root].gamma_empty
}

/// Decides the instance; on yes the paths refer to `inst`'s edges.
pub fn solve_sedp(inst: &EdpInstance) -> Result<Option<PathSet>, SedpError> {
    match find_fvs_one(&inst.graph).vertex() {
        Some(x) => solve_sedp_at(inst, x),
        None if crate::graph::is_forest(&inst.graph) => {
            let mut g = inst.graph.clone();
            let x = g.add_vertex();
            let widened = EdpInstance::new(g, inst.pairs.clone());
            solve_sedp_at(&widened, x)
        }
        None => Err(SedpError::NoFeedbackVertex),
    }
}

/// Same as [`solve_sedp`] with the feedback vertex given.
pub fn solve_sedp_at(inst: &EdpInstance, x: VertexId) -> Result<Option<PathSet>, SedpError> {
    let prep = prepare_sedp(inst, x)?;
    let labels = prep.compute_all_labels();
    if !prep.all_trees_gamma_empty(&labels) {
        return Ok(None);
    }
    let local = extract::extract_paths(&prep, &labels);
    debug_assert!(verify_solution(&prep.inst, &local).is_accept());
    let sol = PathSet {
        paths: local.paths.iter().map(|p| prep.unmap_path(p)).collect(),
    };
    debug_assert!(verify_solution(inst, &sol).is_accept(), "{:?}", verify_solution(inst, &sol));
    Ok(Some(sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::TerminalPair;
    use crate::oracle::{brute_force_edp, Outcome, DEFAULT_BUDGET};

    fn inst(n: usize, e: &[(usize, usize)], p: &[(usize, usize)]) -> EdpInstance {
        EdpInstance::new(
            Multigraph::from_edges(n, e).unwrap(),
            p.iter().map(|&(s, t)| TerminalPair::new(s, t)).collect(),
        )
    }

    #[test]
    fn two_trees_joined_at_x() {
        // a=1 u=2 l1=3 b=4 v=5 l2=6 x=7
        let yes = inst(7, &[(1, 2), (2, 3), (4, 5), (5, 6), (3, 7), (6, 7)], &[(1, 4)]);
        let sol = solve_sedp_at(&yes, 7).unwrap().expect("yes");
        assert!(verify_solution(&yes, &sol).is_accept());
        assert_eq!(sol.paths[0], vec![0, 1, 4, 5, 3, 2]);

        let no = inst(7, &[(1, 2), (2, 3), (4, 5), (5, 6), (3, 7)], &[(1, 4)]);
        assert_eq!(solve_sedp_at(&no, 7).unwrap(), None);
    }

    #[test]
    fn empty_pair_list() {
        let i = inst(3, &[(1, 2), (2, 3), (3, 1)], &[]);
        assert_eq!(solve_sedp(&i).unwrap(), Some(PathSet::default()));
    }

    #[test]
    fn rejects_two_disjoint_cycles() {
        let i = inst(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)], &[]);
        assert_eq!(solve_sedp(&i), Err(SedpError::NoFeedbackVertex));
        assert_eq!(prepare_sedp(&i, 1).unwrap_err(), SedpError::NotForest(1));
    }

    #[test]
    fn inner_neighbour_of_x_gets_a_detour_leaf() {
        // path 1-2-3 with x=4 adjacent to 2
        let i = inst(4, &[(1, 2), (2, 3), (2, 4)], &[]);
        let p = prepare_sedp(&i, 4).unwrap();
        assert_eq!(p.inst.graph.n(), 5);
        assert_eq!(p.inst.graph.edges(), &[(1, 2), (2, 3), (2, 5), (5, 4)]);
        assert_eq!(p.origin, vec![Some(0), Some(1), Some(2), Some(2)]);
        assert_eq!(p.roots, vec![1]);
        assert!(p.children[5].is_empty());
        assert_eq!(p.x_edge[5], Some(3));
    }

    #[test]
    fn clean_instance_is_unchanged() {
        let i = inst(4, &[(1, 2), (2, 3), (1, 4), (3, 4)], &[]);
        let p = prepare_sedp(&i, 4).unwrap();
        assert_eq!(p.inst.graph, i.graph);
        assert_eq!(p.roots, vec![2]);
    }

    #[test]
    fn terminal_only_tree_gets_a_fresh_root() {
        // x=1, terminals 2 and 3 hang off x
        let i = inst(4, &[(1, 2), (1, 3), (1, 4), (4, 1)], &[(2, 3)]);
        let p = prepare_sedp(&i, 1).unwrap();
        assert_eq!(p.roots.len(), 3);
        for &r in &p.roots {
            assert!(p.terminal_of[r].is_none());
        }
        assert!(solve_sedp_at(&i, 1).unwrap().is_some());
    }

    #[test]
    fn terminal_at_x_moves_to_a_leaf() {
        let i = inst(3, &[(1, 2), (2, 3), (3, 1)], &[(1, 2)]);
        let p = prepare_sedp(&i, 1).unwrap();
        assert!(p.inst.pairs.iter().all(|q| q.s != 1 && q.t != 1));
        let sol = solve_sedp_at(&i, 1).unwrap().unwrap();
        assert!(verify_solution(&i, &sol).is_accept());
    }

    #[test]
    fn gamma_examples() {
        // r=1, m=2, a=3, b=4, x=5 isolated
        let i = inst(5, &[(1, 2), (2, 3), (2, 4)], &[(3, 4)]);
        let p = prepare_sedp(&i, 5).unwrap();
        assert!(tree_gamma_empty(&p, p.roots[0]));
        // a=1 u=2 l1=3, partner b=4 elsewhere, x=5 touching only b's side
        let i = inst(6, &[(1, 2), (2, 3), (4, 6), (6, 5)], &[(1, 4)]);
        let p = prepare_sedp(&i, 5).unwrap();
        let labels = p.compute_all_labels();
        assert!(!labels[p.roots[0]].gamma_empty);
        let i = inst(4, &[(1, 2), (2, 3), (3, 4), (4, 1)], &[]);
        let p = prepare_sedp(&i, 1).unwrap();
        assert!(tree_gamma_empty(&p, p.roots[0]));
    }

    #[test]
    fn forest_input_gets_an_isolated_feedback_vertex() {
        let i = inst(4, &[(1, 2), (2, 3), (3, 4)], &[(1, 4)]);
        let sol = solve_sedp(&i).unwrap().unwrap();
        assert_eq!(sol.paths, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn star_of_paths_is_solvable() {
        let i = crate::corpus::star_of_paths(8, 5, 4);
        let sol = solve_sedp(&i).unwrap().expect("yes");
        assert!(verify_solution(&i, &sol).is_accept());
        assert!(brute_force_edp(&i, DEFAULT_BUDGET).is_yes());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random forest on 2..n plus edges from vertex 1, then random pairs.
        fn fvs_one() -> impl Strategy<Value = EdpInstance> {
            (4usize..=11).prop_flat_map(|n| {
                (
                    prop::collection::vec(any::<prop::sample::Index>(), n - 2),
                    prop::collection::vec(any::<bool>(), n - 2),
                    prop::collection::vec(any::<prop::sample::Index>(), 0..4),
                    prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..=3),
                )
                    .prop_map(move |(par, keep, xs, ps)| {
                        let mut g = Multigraph::new(n);
                        for (i, p) in par.iter().enumerate() {
                            let v = i + 3;
                            if keep[i] {
                                g.add_edge(2 + p.index(v - 2), v).unwrap();
                            }
                        }
                        for idx in xs {
                            g.add_edge(1, 2 + idx.index(n - 1)).unwrap();
                        }
                        let pairs = ps
                            .iter()
                            .map(|(a, b)| (a.index(n) + 1, b.index(n) + 1))
                            .filter(|(a, b)| a != b)
                            .map(|(a, b)| TerminalPair::new(a, b))
                            .collect();
                        EdpInstance::new(g, pairs)
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]
            #[test]
            fn agrees_with_brute_force(i in fvs_one()) {
                let got = solve_sedp_at(&i, 1).unwrap();
                let want = brute_force_edp(&i, DEFAULT_BUDGET);
                prop_assert!(!matches!(want, Outcome::BudgetExceeded));
                prop_assert_eq!(got.is_some(), want.is_yes());
                if let Some(sol) = got {
                    prop_assert!(verify_solution(&i, &sol).is_accept());
                }
            }

            #[test]
            fn gamma_x_implies_gamma_empty(i in fvs_one()) {
                let p = prepare_sedp(&i, 1).unwrap();
                for l in p.compute_all_labels() {
                    prop_assert!(!l.gamma_x || l.gamma_empty);
                }
            }
        }
    }
}
