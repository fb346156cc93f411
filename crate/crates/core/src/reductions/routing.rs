//! From relaxed subset sum to directed multi-demand routing, and on to
//! undirected single-path EDP.

use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::instance::{Demand, EdpInstance, MultiDemandInstance, TerminalPair};

use super::subset_sum::MssInstance;
use super::ReductionError;

/// Arc ids of one item's gadget path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemGadget {
    /// `p_1 .. p_l`.
    pub path: Vec<VertexId>,
    pub enter: EdgeId,
    pub leave: EdgeId,
    /// `p_j -> p_{j+1}`, index `j - 1`.
    pub steps: Vec<EdgeId>,
    /// Per dimension, per unit of the item's value: tap-in arc, its gadget
    /// position (1-based `j`), and the tap-out arc from `p_{j+1}`.
    pub taps: Vec<Vec<(EdgeId, usize, EdgeId)>>,
}

/// The directed instance built from a relaxed subset-sum instance.
///
/// Vertex ids: source 1, sink 2, then per dimension `i` (0-based) its source
/// `3 + 2i` and sink `4 + 2i`, then the gadget paths in item order.
/// Demand 0 is the bypass demand, demand `1 + i` the one of dimension `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdedpGadget {
    pub inst: MultiDemandInstance,
    pub gadgets: Vec<ItemGadget>,
    /// Vertices whose removal leaves the augmented underlying graph a forest.
    pub fvs_witness: Vec<VertexId>,
}

pub const SOURCE: VertexId = 1;
pub const SINK: VertexId = 2;

pub fn dimension_source(i: usize) -> VertexId {
    3 + 2 * i
}

pub fn dimension_sink(i: usize) -> VertexId {
    4 + 2 * i
}

/// Relaxed subset sum to acyclic directed multi-demand routing.
///
/// Every item owns a directed path that the bypass demand `(s, t, |S| - c)`
/// runs through unless the item is chosen; a chosen item instead offers its
/// value in each dimension as disjoint two-arc detours `s_i -> p_j -> p_{j+1} -> t_i`.
pub fn mrss_to_mdedp(mrss: &MssInstance) -> Result<MdedpGadget, ReductionError> {
    let c = mrss.cardinality.ok_or(ReductionError::MissingCardinality)?;
    let k = mrss.dimension();
    let mut g = Multigraph::new_directed(2 + 2 * k);
    let mut gadgets = Vec::with_capacity(mrss.items.len());
    let arc = |g: &mut Multigraph, u, v| g.add_edge(u, v).expect("fresh vertices");
    for s in &mrss.items {
        let total: u64 = s.iter().sum();
        let len = 2 * total as usize + 2;
        let path: Vec<VertexId> = (0..len).map(|_| g.add_vertex()).collect();
        let enter = arc(&mut g, SOURCE, path[0]);
        let steps = path.windows(2).map(|w| arc(&mut g, w[0], w[1])).collect();
        let leave = arc(&mut g, path[len - 1], SINK);
        let mut taps = Vec::with_capacity(k);
        let mut before = 0usize;
        for (i, &value) in s.iter().enumerate() {
            let mut dim = Vec::new();
            for unit in 1..=value as usize {
                let j = 2 * before + 2 * unit;
                let tap_in = arc(&mut g, dimension_source(i), path[j - 1]);
                let tap_out = arc(&mut g, path[j], dimension_sink(i));
                dim.push((tap_in, j, tap_out));
            }
            before += value as usize;
            taps.push(dim);
        }
        gadgets.push(ItemGadget {
            path,
            enter,
            leave,
            steps,
            taps,
        });
    }
    let mut demands = vec![Demand {
        s: SOURCE,
        t: SINK,
        count: mrss.items.len().saturating_sub(c),
    }];
    for (i, &t) in mrss.target.iter().enumerate() {
        demands.push(Demand {
            s: dimension_source(i),
            t: dimension_sink(i),
            count: t as usize,
        });
    }
    Ok(MdedpGadget {
        inst: MultiDemandInstance { graph: g, demands },
        gadgets,
        fvs_witness: (1..=2 + 2 * k).collect(),
    })
}

/// Topological order of a directed graph, or `None` if it has a cycle.
pub fn topological_order(g: &Multigraph) -> Option<Vec<VertexId>> {
    let out = g.out_arcs();
    let mut indeg = vec![0usize; g.n() + 1];
    for &(_, v) in g.edges() {
        indeg[v] += 1;
    }
    let mut ready: Vec<VertexId> = g.vertices().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(u) = ready.pop() {
        order.push(u);
        for &(v, _) in &out[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(v);
            }
        }
    }
    (order.len() == g.n()).then_some(order)
}

/// Out-degree minus in-degree of every vertex once each demand `(s, t, n)`
/// contributes `n` back-arcs `t -> s`.
pub fn demand_imbalance(inst: &MultiDemandInstance) -> Vec<i64> {
    let mut bal = vec![0i64; inst.graph.n() + 1];
    for &(u, v) in inst.graph.edges() {
        bal[u] += 1;
        bal[v] -= 1;
    }
    for d in &inst.demands {
        bal[d.t] += d.count as i64;
        bal[d.s] -= d.count as i64;
    }
    bal
}

pub fn is_demand_eulerian(inst: &MultiDemandInstance) -> bool {
    demand_imbalance(inst).iter().all(|&b| b == 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eulerized {
    pub inst: MultiDemandInstance,
    pub source: VertexId,
    pub sink: VertexId,
}

/// Balances the demand-augmented graph with a new source and sink: a vertex
/// with surplus out-degree gets arcs from the source, one with surplus
/// in-degree gets arcs to the sink, and a demand between them absorbs the total.
pub fn eulerize_mdedp(inst: &MultiDemandInstance) -> Result<Eulerized, ReductionError> {
    if !inst.graph.is_directed() {
        return Err(ReductionError::NotDirected);
    }
    if topological_order(&inst.graph).is_none() {
        return Err(ReductionError::Cyclic);
    }
    let bal = demand_imbalance(inst);
    let mut g = inst.graph.clone();
    let source = g.add_vertex();
    let sink = g.add_vertex();
    let mut q = 0usize;
    for v in inst.graph.vertices() {
        for _ in 0..bal[v].max(0) {
            g.add_edge(source, v).expect("fresh vertex");
            q += 1;
        }
    }
    for v in inst.graph.vertices() {
        for _ in 0..(-bal[v]).max(0) {
            g.add_edge(v, sink).expect("fresh vertex");
        }
    }
    let mut demands = inst.demands.clone();
    demands.push(Demand { s: source, t: sink, count: q });
    Ok(Eulerized {
        inst: MultiDemandInstance { graph: g, demands },
        source,
        sink,
    })
}

/// Forgets arc directions; only sound for acyclic, demand-Eulerian input.
pub fn mdedp_to_muedp(inst: &MultiDemandInstance) -> Result<MultiDemandInstance, ReductionError> {
    if !inst.graph.is_directed() {
        return Err(ReductionError::NotDirected);
    }
    if topological_order(&inst.graph).is_none() {
        return Err(ReductionError::Cyclic);
    }
    if !is_demand_eulerian(inst) {
        return Err(ReductionError::NotEulerian);
    }
    Ok(MultiDemandInstance {
        graph: inst.graph.undirected(),
        demands: inst.demands.clone(),
    })
}

/// The EDP instance of a multi-demand instance, plus, per produced pair, the
/// edges tying its two leaves to the original terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafExpansion {
    pub inst: EdpInstance,
    /// Demand index of each pair.
    pub demand_of: Vec<usize>,
    pub leaf_edges: Vec<(EdgeId, EdgeId)>,
}

/// Each unit of a demand `(s, t, n)` becomes its own pair of fresh leaves on
/// `s` and `t`. Per demand, its `n` source leaves come first, then the sink leaves.
pub fn muedp_to_edp(inst: &MultiDemandInstance) -> LeafExpansion {
    let mut g = inst.graph.undirected();
    let mut pairs = Vec::new();
    let mut demand_of = Vec::new();
    let mut leaf_edges = Vec::new();
    for (di, d) in inst.demands.iter().enumerate() {
        let heads: Vec<(VertexId, EdgeId)> = (0..d.count)
            .map(|_| {
                let v = g.add_vertex();
                (v, g.add_edge(v, d.s).expect("fresh vertex"))
            })
            .collect();
        let tails: Vec<(VertexId, EdgeId)> = (0..d.count)
            .map(|_| {
                let v = g.add_vertex();
                (v, g.add_edge(d.t, v).expect("fresh vertex"))
            })
            .collect();
        for (&(a, ea), &(b, eb)) in heads.iter().zip(&tails) {
            pairs.push(TerminalPair::new(a, b));
            demand_of.push(di);
            leaf_edges.push((ea, eb));
        }
    }
    LeafExpansion {
        inst: EdpInstance::new(g, pairs),
        demand_of,
        leaf_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_multi, DEFAULT_BUDGET};

    fn single(target: u64) -> MssInstance {
        MssInstance {
            items: vec![vec![1]],
            target: vec![target],
            cardinality: Some(1),
        }
    }

    #[test]
    fn one_item_gadget() {
        let gd = mrss_to_mdedp(&single(1)).unwrap();
        let gadget = &gd.gadgets[0];
        assert_eq!(gadget.path, vec![5, 6, 7, 8]);
        assert_eq!(
            gd.inst.demands,
            vec![Demand { s: 1, t: 2, count: 0 }, Demand { s: 3, t: 4, count: 1 }]
        );
        let (tap_in, j, tap_out) = gadget.taps[0][0];
        assert_eq!(j, 2);
        assert_eq!(gd.inst.graph.edge(tap_in), (3, 6));
        assert_eq!(gd.inst.graph.edge(tap_out), (7, 4));
        assert!(topological_order(&gd.inst.graph).is_some());
        assert!(brute_force_multi(&gd.inst, DEFAULT_BUDGET).is_yes());
        let no = mrss_to_mdedp(&single(2)).unwrap();
        assert_eq!(brute_force_multi(&no.inst, DEFAULT_BUDGET).decided(), Some(false));
    }

    #[test]
    fn taps_follow_earlier_dimensions() {
        let mrss = MssInstance {
            items: vec![vec![2, 1]],
            target: vec![1, 1],
            cardinality: Some(1),
        };
        let gd = mrss_to_mdedp(&mrss).unwrap();
        let positions: Vec<Vec<usize>> = gd.gadgets[0].taps.iter().map(|d| d.iter().map(|t| t.1).collect()).collect();
        assert_eq!(positions, vec![vec![2, 4], vec![6]]);
        assert_eq!(gd.gadgets[0].path.len(), 8);
    }

    #[test]
    fn balanced_arc_needs_nothing() {
        let mut g = Multigraph::new_directed(2);
        g.add_edge(1, 2).unwrap();
        let inst = MultiDemandInstance {
            graph: g,
            demands: vec![Demand { s: 1, t: 2, count: 1 }],
        };
        let e = eulerize_mdedp(&inst).unwrap();
        assert_eq!(e.inst.demands.last().unwrap().count, 0);
        assert_eq!(e.inst.graph.m(), 1);
        assert_eq!(e.inst.graph.n(), 4);
        assert!(is_demand_eulerian(&e.inst));
    }

    #[test]
    fn eulerize_balances_the_gadget() {
        let gd = mrss_to_mdedp(&single(1)).unwrap();
        let e = eulerize_mdedp(&gd.inst).unwrap();
        assert!(is_demand_eulerian(&e.inst));
        assert!(topological_order(&e.inst.graph).is_some());
        let u = mdedp_to_muedp(&e.inst).unwrap();
        assert_eq!(u.graph.m(), e.inst.graph.m());
        assert!(mdedp_to_muedp(&gd.inst).is_err());
    }

    #[test]
    fn cycles_are_refused() {
        let mut g = Multigraph::new_directed(2);
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 1).unwrap();
        let inst = MultiDemandInstance { graph: g, demands: vec![] };
        assert_eq!(eulerize_mdedp(&inst).unwrap_err(), ReductionError::Cyclic);
    }

    #[test]
    fn parallel_arcs_stay_parallel() {
        let mut g = Multigraph::new_directed(2);
        g.add_edge(1, 2).unwrap();
        g.add_edge(1, 2).unwrap();
        let inst = MultiDemandInstance {
            graph: g,
            demands: vec![Demand { s: 1, t: 2, count: 2 }],
        };
        let u = mdedp_to_muedp(&inst).unwrap();
        assert_eq!(u.graph.edges(), &[(1, 2), (1, 2)]);
        assert!(!u.graph.is_directed());
    }

    #[test]
    fn leaves_per_unit() {
        let g = Multigraph::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        let inst = MultiDemandInstance {
            graph: g,
            demands: vec![Demand { s: 1, t: 2, count: 2 }, Demand { s: 2, t: 1, count: 0 }],
        };
        let x = muedp_to_edp(&inst);
        assert_eq!(x.inst.graph.n(), 6);
        assert_eq!(x.inst.pairs, vec![TerminalPair::new(3, 5), TerminalPair::new(4, 6)]);
        assert_eq!(x.demand_of, vec![0, 0]);
    }
}
