//! Multi-demand routing with a few terminal pairs to EDP whose augmented
//! graph falls apart into one-pair components after deleting a constant set.

use crate::graph::{components_avoiding, Multigraph, VertexId};
use crate::instance::{augmented_graph, EdpInstance, MultiDemandInstance, TerminalPair};

use super::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedpExpansion {
    pub inst: EdpInstance,
    /// Hub pair `(source hub, sink hub)` per demand; together the deletion set.
    pub hubs: Vec<(VertexId, VertexId)>,
    /// Demand index of each pair.
    pub demand_of: Vec<usize>,
}

impl MedpExpansion {
    pub fn deletion_set(&self) -> Vec<VertexId> {
        self.hubs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Every demand `(s, t, n)` gets two hubs; `n` connectors join `s` to the
/// source hub and `n` join `t` to the sink hub, and each unit becomes a pair
/// of leaves, one on each hub.
///
/// Fresh ids: all hubs first (source then sink, per demand), then per demand
/// its source connectors and sink connectors, then per demand and unit the
/// source leaf followed by the sink leaf.
pub fn medp_to_edp(medp: &MultiDemandInstance) -> Result<MedpExpansion, ReductionError> {
    if medp.graph.is_directed() {
        return Err(ReductionError::Directed);
    }
    let mut g: Multigraph = medp.graph.clone();
    let hubs: Vec<(VertexId, VertexId)> = medp.demands.iter().map(|_| (g.add_vertex(), g.add_vertex())).collect();
    let join = |g: &mut Multigraph, a, b| {
        g.add_edge(a, b).expect("fresh vertex");
    };
    for (d, &(hs, ht)) in medp.demands.iter().zip(&hubs) {
        for (end, hub) in [(d.s, hs), (d.t, ht)] {
            for _ in 0..d.count {
                let c = g.add_vertex();
                join(&mut g, end, c);
                join(&mut g, c, hub);
            }
        }
    }
    let mut pairs = Vec::new();
    let mut demand_of = Vec::new();
    for (di, (d, &(hs, ht))) in medp.demands.iter().zip(&hubs).enumerate() {
        for _ in 0..d.count {
            let a = g.add_vertex();
            join(&mut g, a, hs);
            let b = g.add_vertex();
            join(&mut g, b, ht);
            pairs.push(TerminalPair::new(a, b));
            demand_of.push(di);
        }
    }
    Ok(MedpExpansion {
        inst: EdpInstance::new(g, pairs),
        hubs,
        demand_of,
    })
}

/// Largest number of pairs in one component of the augmented graph minus `d`.
pub fn max_pairs_per_component(inst: &EdpInstance, d: &[VertexId]) -> usize {
    let aug = augmented_graph(inst);
    let mut comp_of = vec![usize::MAX; aug.n() + 1];
    for (i, c) in components_avoiding(&aug, d).iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut count = std::collections::BTreeMap::new();
    for p in &inst.pairs {
        if comp_of[p.s] != usize::MAX && comp_of[p.s] == comp_of[p.t] {
            *count.entry(comp_of[p.s]).or_insert(0) += 1;
        }
    }
    count.into_values().max().unwrap_or(0)
}
