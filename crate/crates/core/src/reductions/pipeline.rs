//! Multicolored clique all the way down to EDP, with structural audits and
//! certificate translation in both directions.

use crate::graph::{is_forest, EdgeId, Multigraph, VertexId};
use crate::instance::{MultiDemandInstance, MultiPathSet, PathSet};

use super::routing::{
    eulerize_mdedp, is_demand_eulerian, mdedp_to_muedp, mrss_to_mdedp, muedp_to_edp, topological_order, Eulerized,
    LeafExpansion, MdedpGadget,
};
use super::subset_sum::{is_sidon, mcc_to_mss, mss_to_mrss, MccInstance, MssInstance, MssReduction};
use super::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Audit {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub mcc: MccInstance,
    pub mss: MssReduction,
    pub mrss: MssInstance,
    /// Subset-sum items with no relaxed counterpart.
    pub dropped: Vec<usize>,
    pub mdedp: MdedpGadget,
    pub eulerized: Eulerized,
    pub muedp: MultiDemandInstance,
    pub edp: LeafExpansion,
    /// Feedback vertex set of the final augmented graph.
    pub fvs_witness: Vec<VertexId>,
    pub audits: Vec<Audit>,
}

/// Underlying undirected graph plus one edge per demand with positive count.
fn augmented_multi(inst: &MultiDemandInstance) -> Multigraph {
    let mut g = inst.graph.undirected();
    for d in inst.demands.iter().filter(|d| d.count > 0) {
        g.add_edge(d.s, d.t).expect("demand endpoints exist");
    }
    g
}

fn forest_without(g: &Multigraph, x: &[VertexId]) -> bool {
    let keep: Vec<VertexId> = g.vertices().filter(|v| !x.contains(v)).collect();
    is_forest(&g.induced(&keep).0)
}

fn audit(name: &'static str, passed: bool, detail: String) -> Audit {
    Audit { name, passed, detail }
}

pub fn full_pipeline(mcc: &MccInstance) -> Result<Pipeline, ReductionError> {
    let mss = mcc_to_mss(mcc);
    let (mrss, dropped) = mss_to_mrss(&mss.mss)?;
    let mdedp = mrss_to_mdedp(&mrss)?;
    let eulerized = eulerize_mdedp(&mdedp.inst)?;
    let muedp = mdedp_to_muedp(&eulerized.inst)?;
    let edp = muedp_to_edp(&muedp);

    let n = mcc.graph.n().max(1) as u64;
    let k = mcc.k();
    let dim = mrss.dimension();
    let mut audits = Vec::new();
    let top = mss.sidon.iter().copied().max().unwrap_or(0);
    audits.push(audit(
        "sidon",
        is_sidon(&mss.sidon) && top <= 8 * n * n,
        format!("n={n} max={top} cap={}", 8 * n * n),
    ));
    audits.push(audit(
        "subset-sum-dimension",
        mss.mss.dimension() == k * (k.saturating_sub(1)) + k,
        format!("dimension={} parts={k}", mss.mss.dimension()),
    ));
    audits.push(audit(
        "acyclic",
        topological_order(&eulerized.inst.graph).is_some(),
        format!("vertices={}", eulerized.inst.graph.n()),
    ));
    let directed_fvs = &mdedp.fvs_witness;
    audits.push(audit(
        "fvs-directed",
        directed_fvs.len() <= 2 * dim + 2 && forest_without(&augmented_multi(&mdedp.inst), directed_fvs),
        format!("witness={} bound={}", directed_fvs.len(), 2 * dim + 2),
    ));
    audits.push(audit(
        "eulerian",
        is_demand_eulerian(&eulerized.inst),
        format!("balance demand={}", eulerized.inst.demands.last().map_or(0, |d| d.count)),
    ));
    let mut fvs = directed_fvs.clone();
    fvs.extend([eulerized.source, eulerized.sink]);
    audits.push(audit(
        "fvs-eulerized",
        fvs.len() <= 2 * dim + 4 && forest_without(&augmented_multi(&eulerized.inst), &fvs),
        format!("witness={} bound={}", fvs.len(), 2 * dim + 4),
    ));
    let pairs = edp.inst.pairs.len();
    audits.push(audit(
        "fvs-edp",
        fvs.len() <= 2 * dim + 4 + 2 * pairs
            && forest_without(&crate::instance::augmented_graph(&edp.inst), &fvs),
        format!("witness={} bound={}", fvs.len(), 2 * dim + 4 + 2 * pairs),
    ));
    if let Some(bad) = audits.iter().find(|a| !a.passed) {
        return Err(ReductionError::AuditFailed(format!("{}: {}", bad.name, bad.detail)));
    }
    Ok(Pipeline {
        mcc: mcc.clone(),
        mss,
        mrss,
        dropped,
        mdedp,
        eulerized,
        muedp,
        edp,
        fvs_witness: fvs,
        audits,
    })
}

impl Pipeline {
    /// `c meta` lines describing the chain.
    pub fn meta_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("generator mcc-pipeline parts={} base_vertices={}", self.mcc.k(), self.mcc.graph.n()),
            format!(
                "n={} m={} pairs={}",
                self.edp.inst.graph.n(),
                self.edp.inst.graph.m(),
                self.edp.inst.pairs.len()
            ),
            format!("fvs_witness {}", join(&self.fvs_witness)),
        ];
        out.extend(
            self.audits
                .iter()
                .map(|a| format!("audit {} {} {}", a.name, if a.passed { "pass" } else { "fail" }, a.detail)),
        );
        out
    }

    fn relaxed_index(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        (0..self.mss.mss.items.len())
            .map(|i| {
                if self.dropped.contains(&i) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    }

    /// Directed routing for a choice of relaxed items, if it covers every target.
    pub fn route_items(&self, chosen: &[usize]) -> Option<MultiPathSet> {
        let demands = &self.mdedp.inst.demands;
        let gadgets = &self.mdedp.gadgets;
        let mut paths: Vec<Vec<Vec<EdgeId>>> = vec![Vec::new(); demands.len()];
        let bypass: Vec<Vec<EdgeId>> = (0..gadgets.len())
            .filter(|i| !chosen.contains(i))
            .map(|i| {
                let gd = &gadgets[i];
                std::iter::once(gd.enter).chain(gd.steps.iter().copied()).chain([gd.leave]).collect()
            })
            .collect();
        if bypass.len() < demands[0].count {
            return None;
        }
        paths[0] = bypass.into_iter().take(demands[0].count).collect();
        for (dim, group) in paths.iter_mut().enumerate().skip(1) {
            let units: Vec<Vec<EdgeId>> = chosen
                .iter()
                .flat_map(|&i| {
                    let gd = &gadgets[i];
                    gd.taps[dim - 1].iter().map(move |&(tap_in, j, tap_out)| vec![tap_in, gd.steps[j - 1], tap_out])
                })
                .collect();
            if units.len() < demands[dim].count {
                return None;
            }
            *group = units.into_iter().take(demands[dim].count).collect();
        }
        Some(MultiPathSet { paths })
    }

    /// Extends a directed routing by the balancing demand's paths, which the
    /// unused arcs always contain: they are acyclic and balanced except at
    /// the new source and sink.
    pub fn complete_eulerized(&self, routed: &MultiPathSet) -> Option<MultiPathSet> {
        let g = &self.eulerized.inst.graph;
        let mut used = vec![false; g.m()];
        for e in routed.paths.iter().flatten().flatten() {
            used[*e] = true;
        }
        let out = g.out_arcs();
        let q = self.eulerized.inst.demands.last()?.count;
        let mut extra = Vec::with_capacity(q);
        for _ in 0..q {
            let mut at = self.eulerized.source;
            let mut path = Vec::new();
            while at != self.eulerized.sink {
                let &(next, e) = out[at].iter().find(|&&(_, e)| !used[e])?;
                used[e] = true;
                path.push(e);
                at = next;
            }
            extra.push(path);
        }
        let mut paths = routed.paths.clone();
        paths.push(extra);
        Some(MultiPathSet { paths })
    }

    /// The EDP certificate of a multicolored clique (one vertex per part, in part order).
    pub fn forward_certificate(&self, clique: &[VertexId]) -> Option<PathSet> {
        if !self.mcc.is_clique(clique) {
            return None;
        }
        let relaxed = self.relaxed_index();
        let chosen: Vec<usize> = self
            .mss
            .items_of_clique(&self.mcc, clique)
            .into_iter()
            .map(|i| relaxed[i])
            .collect::<Option<_>>()?;
        let routed = self.route_items(&chosen)?;
        let full = self.complete_eulerized(&routed)?;
        let mut next = vec![0usize; full.paths.len()];
        let paths = self
            .edp
            .demand_of
            .iter()
            .zip(&self.edp.leaf_edges)
            .map(|(&d, &(ea, eb))| {
                let body = &full.paths[d][next[d]];
                next[d] += 1;
                std::iter::once(ea).chain(body.iter().copied()).chain([eb]).collect()
            })
            .collect();
        Some(PathSet { paths })
    }

    /// Reads a clique off an EDP certificate whose paths all run along arc
    /// directions; `None` when they do not or the result is not a clique.
    pub fn backward_certificate(&self, sol: &PathSet) -> Option<Vec<VertexId>> {
        let g = &self.eulerized.inst.graph;
        let demands = &self.eulerized.inst.demands;
        let mut bypass_used = vec![false; g.m()];
        for (p, path) in sol.paths.iter().enumerate() {
            let d = *self.edp.demand_of.get(p)?;
            let body = path.get(1..path.len().checked_sub(1)?)?;
            let mut at = demands[d].s;
            for &e in body {
                let (u, v) = g.edge(e);
                if u != at {
                    return None;
                }
                at = v;
                if d == 0 {
                    bypass_used[e] = true;
                }
            }
        }
        let chosen: Vec<usize> = (0..self.mdedp.gadgets.len())
            .filter(|&i| !bypass_used[self.mdedp.gadgets[i].enter])
            .collect();
        let relaxed = self.relaxed_index();
        let original: Vec<usize> = (0..relaxed.len())
            .filter(|&i| relaxed[i].is_some_and(|r| chosen.contains(&r)))
            .collect();
        let clique = self.mss.clique_of_items(&self.mcc, &original);
        self.mcc.is_clique(&clique).then_some(clique)
    }
}

fn join(v: &[VertexId]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{verify_multi_solution, verify_solution};

    fn path_mcc() -> MccInstance {
        MccInstance::new(Multigraph::from_edges(2, &[(1, 2)]).unwrap(), vec![vec![1], vec![2]]).unwrap()
    }

    #[test]
    fn edge_as_two_part_clique() {
        let p = full_pipeline(&path_mcc()).unwrap();
        assert!(p.audits.iter().all(|a| a.passed));
        assert!(p.dropped.is_empty());
        let sol = p.forward_certificate(&[1, 2]).unwrap();
        assert!(verify_solution(&p.edp.inst, &sol).is_accept());
        assert_eq!(p.backward_certificate(&sol), Some(vec![1, 2]));
        let routed = p.route_items(&[0, 1, 2]).unwrap();
        assert!(verify_multi_solution(&p.mdedp.inst, &routed).is_accept());
        assert!(p.meta_lines().iter().any(|l| l.starts_with("audit eulerian pass")));
    }

    #[test]
    fn non_cliques_have_no_certificate() {
        let p = full_pipeline(&path_mcc()).unwrap();
        assert_eq!(p.forward_certificate(&[2, 1]), None);
        assert_eq!(p.route_items(&[0]), None);
    }
}
