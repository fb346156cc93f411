//! Admitted configurations straight from the definition: every partition
//! of a component's edges into paths, read off by endpoint types.

use std::collections::{BTreeMap, BTreeSet};

use edpkit_core::fracture::signature::{beta_cap, slot, slot_count, Component};
use edpkit_core::fracture::Configuration;
use edpkit_core::graph::{Multigraph, VertexId};
use edpkit_core::instance::TerminalPair;

/// Endpoints of a class of edges when it forms a simple path.
fn path_ends(g: &Multigraph, class: &[usize]) -> Option<(VertexId, VertexId)> {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &e in class {
        let (u, v) = g.edge(e);
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    if deg.len() != class.len() + 1 || deg.values().any(|&d| d > 2) {
        return None;
    }
    // a tree with max degree 2 is a path; check connectivity
    let start = *deg.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut grew = true;
    while grew {
        grew = false;
        for &e in class {
            let (u, v) = g.edge(e);
            if seen.contains(&u) != seen.contains(&v) {
                seen.insert(u);
                seen.insert(v);
                grew = true;
            }
        }
    }
    if seen.len() != deg.len() {
        return None;
    }
    let ends: Vec<VertexId> = deg.iter().filter(|(_, &d)| d == 1).map(|(&v, _)| v).collect();
    Some((ends[0], ends[1]))
}

fn sequences(x: &[VertexId], a: VertexId, b: VertexId) -> Vec<Vec<VertexId>> {
    let inner: Vec<VertexId> = x.iter().copied().filter(|&v| v != a && v != b).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << inner.len() {
        let chosen: Vec<VertexId> = (0..inner.len()).filter(|&i| mask >> i & 1 == 1).map(|i| inner[i]).collect();
        let mut perm = chosen.clone();
        perm.sort_unstable();
        loop {
            let mut t = vec![a];
            t.extend(&perm);
            t.push(b);
            out.push(t);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out
}

fn next_permutation(v: &mut [VertexId]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every configuration some path partition of `comp`'s edges gives rise to.
pub fn admitted(g: &Multigraph, pairs: &[TerminalPair], comp: &Component, x: &[VertexId]) -> BTreeSet<Configuration> {
    let cap = beta_cap(g, comp, x);
    let edges = &comp.edges;
    let mut label: Vec<i32> = vec![-1; edges.len()];
    let mut out = BTreeSet::new();
    loop {
        consider(g, pairs, comp, x, cap, &label, &mut out);
        // next restricted-growth labeling: -1 is unused, classes open in order
        let mut i = edges.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            let top = label[..i].iter().copied().max().unwrap_or(-1);
            if label[i] <= top {
                label[i] += 1;
                for l in &mut label[i + 1..] {
                    *l = -1;
                }
                break;
            }
        }
    }
}

fn consider(
    g: &Multigraph,
    pairs: &[TerminalPair],
    comp: &Component,
    x: &[VertexId],
    cap: u32,
    label: &[i32],
    out: &mut BTreeSet<Configuration>,
) {
    let in_x = |v: VertexId| x.binary_search(&v).is_ok();
    let mut classes: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, &l) in label.iter().enumerate() {
        if l >= 0 {
            classes.entry(l).or_default().push(comp.edges[i]);
        }
    }
    let mut beta = vec![0u32; slot_count(x.len())];
    let mut inside = BTreeSet::new();
    let mut half: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for class in classes.values() {
        let Some((u, v)) = path_ends(g, class) else {
            return;
        };
        if in_x(u) && in_x(v) {
            beta[slot(x, u, v)] += 1;
        } else if let Some(&p) = comp.pairs.iter().find(|&&p| (pairs[p].s, pairs[p].t) == (u, v) || (pairs[p].t, pairs[p].s) == (u, v)) {
            inside.insert(p);
        } else if in_x(u) || in_x(v) {
            let (term, xv) = if in_x(u) { (v, u) } else { (u, v) };
            if !comp.pairs.iter().any(|&p| pairs[p].s == term || pairs[p].t == term) {
                return;
            }
            half.insert(term, xv);
        } else {
            return;
        }
    }
    if beta.iter().any(|&b| b > cap) {
        return;
    }
    let mut options: Vec<Vec<Vec<VertexId>>> = Vec::new();
    for &p in &comp.pairs {
        if inside.contains(&p) {
            continue;
        }
        match (half.get(&pairs[p].s), half.get(&pairs[p].t)) {
            (Some(&a), Some(&b)) if a != b => options.push(sequences(x, a, b)),
            _ => return,
        }
    }
    let mut pick = vec![0usize; options.len()];
    loop {
        let mut alpha: Vec<Vec<VertexId>> = options
            .iter()
            .zip(&pick)
            .map(|(o, &k)| {
                let t = &o[k];
                if t[0] > t[t.len() - 1] {
                    t.iter().rev().copied().collect()
                } else {
                    t.clone()
                }
            })
            .collect();
        alpha.sort();
        out.insert(Configuration { alpha, beta: beta.clone() });
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
            return;
        }
    }
}
