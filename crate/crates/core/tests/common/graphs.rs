//! Small graphs up to isomorphism, by vertex-at-a-time augmentation.

use std::collections::BTreeSet;

use edpkit_core::graph::Multigraph;

/// Adjacency rows as bitmasks; vertex `i` is bit `i`.
type Rows = Vec<u32>;

fn canonical(rows: &Rows) -> Rows {
    let n = rows.len();
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    // vertices sorted by degree; only orders respecting this are tried
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut best: Option<Rows> = None;
    let mut perm = order.clone();
    permute_within(&mut perm, 0, &deg, rows, &mut best);
    best.expect("at least one order")
}

fn permute_within(perm: &mut Vec<usize>, i: usize, deg: &[u32], rows: &Rows, best: &mut Option<Rows>) {
    let n = perm.len();
    if i == n {
        let mut pos = vec![0; n];
        for (p, &v) in perm.iter().enumerate() {
            pos[v] = p;
        }
        let mut out = vec![0u32; n];
        for (p, &v) in perm.iter().enumerate() {
            for w in 0..n {
                if rows[v] >> w & 1 == 1 {
                    out[p] |= 1 << pos[w];
                }
            }
        }
        if best.as_ref().is_none_or(|b| out < *b) {
            *best = Some(out);
        }
        return;
    }
    for j in i..n {
        if deg[perm[j]] != deg[perm[i]] {
            break;
        }
        perm.swap(i, j);
        permute_within(perm, i + 1, deg, rows, best);
        perm.swap(i, j);
    }
}

fn connected(rows: &Rows) -> bool {
    if rows.is_empty() {
        return true;
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen.count_ones() as usize == rows.len()
}

/// All graphs on `n` vertices, one per isomorphism class.
fn all_graphs(n: usize) -> BTreeSet<Rows> {
    let mut level: BTreeSet<Rows> = BTreeSet::from([Vec::new()]);
    for k in 0..n {
        let mut next = BTreeSet::new();
        for rows in &level {
            for nb in 0u32..1 << k {
                let mut r = rows.clone();
                for (w, row) in r.iter_mut().enumerate() {
                    if nb >> w & 1 == 1 {
                        *row |= 1 << k;
                    }
                }
                r.push(nb);
                next.insert(canonical(&r));
            }
        }
        level = next;
    }
    level
}

/// Connected simple graphs on exactly `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Multigraph> {
    all_graphs(n)
        .into_iter()
        .filter(connected)
        .map(|rows| {
            let mut g = Multigraph::new(n);
            for v in 0..n {
                for w in v + 1..n {
                    if rows[v] >> w & 1 == 1 {
                        g.add_edge(v + 1, w + 1).expect("simple edge");
                    }
                }
            }
            g
        })
        .collect()
}
