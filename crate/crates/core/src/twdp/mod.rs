//! Dynamic program over a nice tree decomposition; tables stay small when
//! both the width and the maximum degree are small.

pub mod decomposition;
pub mod records;

pub use decomposition::{
    build_tree_decomposition, decompose, decomposition_from_order, exact_order, make_nice, min_degree_order,
    min_fill_order, NiceKind, NiceNode, NiceTreeDecomposition, TreeDecomposition, WidthExceeded,
};
pub use records::{record_of, RecordTable, Role, TwRecord, Witness, WitnessPath};

use crate::graph::{EdgeId, VertexId};
use crate::instance::{normalize_instance, EdpInstance, PathSet};

/// A normalized instance with a nice decomposition in which every terminal
/// sits in exactly two bags, directly below the bag that forgets its neighbour.
#[derive(Debug, Clone)]
pub struct TwdpPlan {
    pub inst: EdpInstance,
    pub nice: NiceTreeDecomposition,
    pub terminal_of: Vec<Option<usize>>,
    /// Edge count of the caller's graph; later edges are normalization leaves.
    pub original_edges: usize,
}

impl TwdpPlan {
    /// Plans over `td`, a decomposition of (at least the non-terminal part of)
    /// the caller's graph.
    pub fn new(inst: &EdpInstance, td: &TreeDecomposition) -> Self {
        let norm = normalize_instance(inst);
        let terminal_of = norm.terminal_of();
        let stripped = TreeDecomposition {
            bags: td
                .bags
                .iter()
                .map(|b| b.iter().copied().filter(|&v| terminal_of[v].is_none()).collect())
                .collect(),
            tree: td.tree.clone(),
        };
        let mut nice = make_nice(&stripped);
        let inc = norm.graph.incidence();
        for v in norm.graph.vertices() {
            if terminal_of[v].is_some() {
                let (u, _) = inc[v][0];
                nice.attach_leaf(v, u);
            }
        }
        TwdpPlan {
            inst: norm,
            nice,
            terminal_of,
            original_edges: inst.graph.m(),
        }
    }

    /// Vertices that are not terminals of the normalized instance.
    pub fn core_vertices(inst: &EdpInstance) -> Vec<VertexId> {
        let norm = normalize_instance(inst);
        let role = norm.terminal_of();
        inst.graph.vertices().filter(|&v| role[v].is_none()).collect()
    }

    /// Record table of every node, indexed like `nice.nodes`.
    pub fn tables(&self) -> Vec<RecordTable> {
        let g = &self.inst.graph;
        let delta = g.max_degree();
        let inc = g.incidence();
        let mut tables: Vec<Option<RecordTable>> = vec![None; self.nice.nodes.len()];
        for t in self.nice.post_order() {
            let node = &self.nice.nodes[t];
            let table = match node.kind {
                NiceKind::Leaf(v) => records::leaf_table(v, self.terminal_of[v]),
                NiceKind::Introduce(v) => {
                    let child = tables[node.children[0]].as_ref().expect("child first");
                    records::introduce_table(child, v, self.terminal_of[v])
                }
                NiceKind::Forget(v) => {
                    let child = tables[node.children[0]].as_ref().expect("child first");
                    let reach: Vec<(EdgeId, VertexId)> = inc[v]
                        .iter()
                        .filter(|(w, _)| node.bag.binary_search(w).is_ok())
                        .map(|&(w, e)| (e, w))
                        .collect();
                    records::forget_table(child, v, &reach)
                }
                NiceKind::Join => {
                    let l = tables[node.children[0]].as_ref().expect("child first");
                    let r = tables[node.children[1]].as_ref().expect("child first");
                    records::join_table(l, r, delta)
                }
            };
            tables[t] = Some(table);
        }
        tables.into_iter().map(Option::unwrap_or_default).collect()
    }

    /// Decides the instance; on yes the paths refer to the caller's edges.
    pub fn solve(&self) -> Option<PathSet> {
        let pairs = &self.inst.pairs;
        let Some(root) = self.nice.root else {
            return pairs.is_empty().then(PathSet::default);
        };
        let tables = self.tables();
        let w = tables[root].get(&TwRecord::default())?;
        let mut paths = vec![Vec::new(); pairs.len()];
        for p in w {
            if let Role::Done(i) = p.role {
                let mut edges: Vec<EdgeId> = p.edges.clone();
                if p.start != pairs[i].s {
                    edges.reverse();
                }
                edges.retain(|&e| e < self.original_edges);
                paths[i] = edges;
            }
        }
        Some(PathSet { paths })
    }
}

/// Explicit cap on a table's size at a bag of `bag` vertices: `used` and
/// `give` each pick a multiplicity in `0..=delta` per vertex pair (loops
/// included), and every open terminal picks one anchor among at most
/// `delta * bag` open terminals.
pub fn table_size_bound(bag: usize, delta: usize) -> u128 {
    let slots = (bag * (bag + 1) / 2) as u32;
    let per = (delta as u128 + 1).saturating_pow(slots);
    let anchors = (bag.max(1) as u128).saturating_pow((delta * bag) as u32);
    per.saturating_mul(per).saturating_mul(anchors)
}

/// Decides `inst` with a decomposition of width at most `k` of its
/// non-terminal part; refuses when exact search shows that width is larger.
pub fn solve_twdp(inst: &EdpInstance, k: usize) -> Result<Option<PathSet>, WidthExceeded> {
    let core = TwdpPlan::core_vertices(inst);
    let td = decompose(&inst.graph, &core, k)?;
    Ok(TwdpPlan::new(inst, &td).solve())
}

/// Decides `inst` over a caller-supplied decomposition.
pub fn solve_twdp_with(inst: &EdpInstance, td: &TreeDecomposition) -> Option<PathSet> {
    TwdpPlan::new(inst, td).solve()
}
