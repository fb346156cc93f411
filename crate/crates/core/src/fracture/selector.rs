//! The selector program over signature classes, and turning a feasible
//! point back into paths.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, VertexId};
use crate::ilp::{IntegerProgram, Row};

use super::signature::{slot_count, Configuration, PairRoute, Signature};

/// Components sharing one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureClass {
    pub configs: Vec<Configuration>,
    /// Component indices, increasing.
    pub members: Vec<usize>,
}

/// Groups components by signature, in order of the signatures' encodings.
pub fn signature_classes(sigs: &[Signature]) -> Vec<SignatureClass> {
    let mut by: BTreeMap<Vec<Configuration>, Vec<usize>> = BTreeMap::new();
    for (i, s) in sigs.iter().enumerate() {
        by.entry(s.keys().cloned().collect()).or_default().push(i);
    }
    by.into_iter()
        .map(|(configs, members)| SignatureClass { configs, members })
        .collect()
}

/// Drops configurations whose demand is at least, and supply at most, that
/// of another one in the class; any selector using them can swap to the
/// dominating one.
pub fn prune_dominated(class: &SignatureClass, x: &[VertexId]) -> SignatureClass {
    let profile: Vec<(Vec<u32>, &Vec<u32>)> = class.configs.iter().map(|c| (c.demand(x), &c.beta)).collect();
    let beats = |a: usize, b: usize| {
        let (da, sa) = &profile[a];
        let (db, sb) = &profile[b];
        da.iter().zip(db).all(|(p, q)| p <= q) && sa.iter().zip(sb.iter()).all(|(p, q)| p >= q)
    };
    let keep = (0..profile.len())
        .filter(|&b| {
            !(0..profile.len()).any(|a| a != b && beats(a, b) && (!beats(b, a) || a < b))
        })
        .map(|b| class.configs[b].clone())
        .collect();
    SignatureClass {
        configs: keep,
        members: class.members.clone(),
    }
}

#[derive(Debug, Clone)]
pub struct SelectorProgram {
    pub program: IntegerProgram,
    /// `(class, configuration)` of each variable.
    pub vars: Vec<(usize, usize)>,
}

/// One variable per class and configuration, counting the class members
/// that select it; per 2-subset of `x`, demand may not exceed supply.
pub fn build_selector_program(classes: &[SignatureClass], x: &[VertexId]) -> SelectorProgram {
    let mut program = IntegerProgram::new();
    let mut vars = Vec::new();
    let mut balance: Vec<Vec<(usize, i64)>> = vec![Vec::new(); slot_count(x.len())];
    for (ci, class) in classes.iter().enumerate() {
        let d = class.members.len() as i64;
        let mut row = Vec::new();
        for (k, c) in class.configs.iter().enumerate() {
            let z = program.add_variable(0, d);
            vars.push((ci, k));
            row.push((z, 1));
            let dem = c.demand(x);
            for (s, bal) in balance.iter_mut().enumerate() {
                let net = i64::from(dem[s]) - i64::from(c.beta[s]);
                if net != 0 {
                    bal.push((z, net));
                }
            }
        }
        program.equalities.push(Row::new(row, d));
    }
    for bal in balance {
        program.inequalities.push(Row::new(bal, 0));
    }
    SelectorProgram { program, vars }
}

/// Configuration chosen for each component: members of a class take the
/// class's configurations in order, as many of each as the point says.
pub fn selection(classes: &[SignatureClass], prog: &SelectorProgram, z: &[i64], components: usize) -> Vec<Configuration> {
    let mut chosen: Vec<Option<Configuration>> = vec![None; components];
    let mut next = vec![0usize; classes.len()];
    for (v, &(ci, k)) in prog.vars.iter().enumerate() {
        for _ in 0..z[v] {
            let member = classes[ci].members[next[ci]];
            next[ci] += 1;
            chosen[member] = Some(classes[ci].configs[k].clone());
        }
    }
    chosen.into_iter().map(|c| c.expect("every component selected")).collect()
}

/// Paths for every pair, by stitching each leaving pair's trace out of
/// supply segments taken greedily in component order.
pub fn stitch(sigs: &[Signature], chosen: &[Configuration], pair_count: usize) -> Vec<Vec<EdgeId>> {
    let mut pool: Vec<(VertexId, VertexId, &[EdgeId], bool)> = Vec::new();
    for (sig, c) in sigs.iter().zip(chosen) {
        for seg in &sig[c].supply {
            pool.push((seg.a, seg.b, &seg.edges, false));
        }
    }
    let mut paths = vec![Vec::new(); pair_count];
    for (sig, c) in sigs.iter().zip(chosen) {
        for route in &sig[c].routes {
            match route {
                PairRoute::Inside { pair, path } => paths[*pair] = path.clone(),
                PairRoute::Out {
                    pair,
                    from_s,
                    from_t,
                    trace,
                } => {
                    let mut p = from_s.clone();
                    for w in trace.windows(2) {
                        let (u, v) = (w[0], w[1]);
                        let seg = pool
                            .iter_mut()
                            .find(|s| !s.3 && ((s.0, s.1) == (u, v) || (s.0, s.1) == (v, u)))
                            .expect("valid selector has enough supply");
                        seg.3 = true;
                        if seg.0 == u {
                            p.extend_from_slice(seg.2);
                        } else {
                            p.extend(seg.2.iter().rev());
                        }
                    }
                    p.extend(from_t.iter().rev());
                    paths[*pair] = p;
                }
            }
        }
    }
    paths
}
