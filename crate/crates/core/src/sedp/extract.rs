//! Rebuilds routing paths from the labels, top-down choice then bottom-up assembly.

use super::labels::{pair_route, ChildClass, LabelSet, NodePartition};
use super::SedpInstance;
use crate::graph::{EdgeId, VertexId};
use crate::instance::PathSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    Empty,
    ToX,
    Pair(usize),
}

#[derive(Default)]
struct Plan {
    /// Children whose pair paths meet at the node.
    meets: Vec<(VertexId, VertexId)>,
    /// Needy child routed through a sibling's x-path.
    detours: Vec<(VertexId, VertexId)>,
    /// Child whose open path continues upward.
    up: Option<VertexId>,
}

/// Open end handed to the parent.
struct Open {
    /// Terminal the path starts at; for x-paths, the subtree root.
    from: VertexId,
    /// Pair paths run terminal to root; x-paths are kept from `x` to root.
    edges: Vec<EdgeId>,
}

fn plan_node(prep: &SedpInstance, labels: &[LabelSet], t: VertexId, need: Need, needs: &mut [Option<Need>]) -> Plan {
    let ch = &prep.children[t];
    let kids: Vec<&LabelSet> = ch.iter().map(|&c| &labels[c]).collect();
    let part = NodePartition::new(&kids);
    let lift = match need {
        Need::Pair(p) => Some(pair_route(&part, &kids, p).expect("pair label was derived")),
        _ => None,
    };
    let (m, _) = part.best_cover(lift);
    let mut plan = Plan::default();
    let mut busy = vec![false; ch.len()];
    if let Some(i) = lift {
        busy[i] = true;
        needs[ch[i]] = Some(need);
        plan.up = Some(ch[i]);
    }
    for &e in &m.edges {
        let (u, v) = part.aux.edge(e);
        let (i, j) = (u - 1, v - 1);
        let p = part.shared[e];
        busy[i] = true;
        busy[j] = true;
        needs[ch[i]] = Some(Need::Pair(p));
        needs[ch[j]] = Some(Need::Pair(p));
        plan.meets.push((ch[i], ch[j]));
    }
    let stranded: Vec<usize> = part.needy().into_iter().filter(|&i| !busy[i]).collect();
    let free_x: Vec<usize> = part.to_x().into_iter().filter(|&i| !busy[i]).collect();
    let mut spare = free_x.into_iter();
    for i in stranded {
        let j = spare.next().expect("enough x-paths below");
        busy[i] = true;
        busy[j] = true;
        needs[ch[i]] = Some(Need::Pair(kids[i].pairs[0]));
        needs[ch[j]] = Some(Need::ToX);
        plan.detours.push((ch[i], ch[j]));
    }
    if need == Need::ToX {
        let j = spare.next().expect("spare x-path below");
        busy[j] = true;
        needs[ch[j]] = Some(Need::ToX);
        plan.up = Some(ch[j]);
    }
    for (i, &c) in ch.iter().enumerate() {
        if !busy[i] {
            debug_assert_ne!(part.class[i], ChildClass::Needy);
            needs[c] = Some(Need::Empty);
        }
    }
    plan
}

pub(super) fn extract_paths(prep: &SedpInstance, labels: &[LabelSet]) -> PathSet {
    let n = prep.inst.graph.n();
    let mut needs: Vec<Option<Need>> = vec![None; n + 1];
    let mut plans: Vec<Option<Plan>> = (0..=n).map(|_| None).collect();
    for &r in &prep.roots {
        needs[r] = Some(Need::Empty);
    }
    for &t in &prep.order {
        if !prep.children[t].is_empty() {
            let need = needs[t].expect("parent assigned a need");
            plans[t] = Some(plan_node(prep, labels, t, need, &mut needs));
        }
    }

    let pairs = &prep.inst.pairs;
    let mut whole: Vec<Option<(VertexId, Vec<EdgeId>)>> = vec![None; pairs.len()];
    let mut to_x: Vec<Option<Vec<EdgeId>>> = vec![None; n + 1];
    let mut open: Vec<Option<Open>> = (0..=n).map(|_| None).collect();
    let pe = |v: VertexId| prep.parent_edge[v].expect("non-root");

    for &t in prep.order.iter().rev() {
        let need = needs[t].expect("need assigned");
        let Some(plan) = plans[t].take() else {
            match need {
                Need::Empty => {
                    if prep.terminal_of[t].is_some() {
                        to_x[t] = Some(vec![prep.x_edge[t].expect("terminal leaf touches x")]);
                    }
                }
                Need::ToX => {
                    open[t] = Some(Open {
                        from: t,
                        edges: vec![prep.x_edge[t].expect("leaf touches x")],
                    })
                }
                Need::Pair(_) => open[t] = Some(Open { from: t, edges: Vec::new() }),
            }
            continue;
        };
        for (a, b) in plan.meets {
            let oa = open[a].take().expect("open pair path");
            let ob = open[b].take().expect("open pair path");
            let mut edges = oa.edges;
            edges.push(pe(a));
            edges.push(pe(b));
            edges.extend(ob.edges.iter().rev());
            let p = prep.terminal_of[oa.from].expect("terminal");
            whole[p] = Some((oa.from, edges));
        }
        for (a, b) in plan.detours {
            let oa = open[a].take().expect("open pair path");
            let ob = open[b].take().expect("open x-path");
            let mut edges = oa.edges;
            edges.push(pe(a));
            edges.push(pe(b));
            edges.extend(ob.edges.iter().rev());
            to_x[oa.from] = Some(edges);
        }
        if let Some(c) = plan.up {
            let mut o = open[c].take().expect("open path");
            o.edges.push(pe(c));
            if need == Need::ToX {
                o.from = t;
            }
            open[t] = Some(o);
        }
    }

    let paths = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| match whole[i].take() {
            Some((from, mut edges)) => {
                if from != p.s {
                    edges.reverse();
                }
                edges
            }
            None => {
                let mut edges = to_x[p.s].take().expect("s reaches x");
                let back = to_x[p.t].take().expect("t reaches x");
                edges.extend(back.iter().rev());
                edges
            }
        })
        .collect();
    PathSet { paths }
}
