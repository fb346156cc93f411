//! Plain enumeration over item subsets and vertex picks.

use edpkit_core::graph::{Multigraph, VertexId};

fn subsets(n: usize, most: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n)
        .filter(move |mask| mask.count_ones() as usize <= most)
        .map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

fn sum(items: &[Vec<u64>], pick: &[usize], dim: usize) -> Vec<u64> {
    let mut total = vec![0; dim];
    for &i in pick {
        for (t, v) in total.iter_mut().zip(&items[i]) {
            *t += v;
        }
    }
    total
}

/// Exactly `card` items summing to `target`.
pub fn exact_subset_sum(items: &[Vec<u64>], target: &[u64], card: usize) -> bool {
    subsets(items.len(), card).any(|p| p.len() == card && sum(items, &p, target.len()) == target)
}

/// At most `card` items whose sum dominates `target` coordinatewise.
pub fn relaxed_subset_sum(items: &[Vec<u64>], target: &[u64], card: usize) -> bool {
    subsets(items.len(), card).any(|p| sum(items, &p, target.len()).iter().zip(target).all(|(a, b)| a >= b))
}

/// Some choice of one vertex per part that is pairwise adjacent.
pub fn has_multicolored_clique(g: &Multigraph, parts: &[Vec<VertexId>]) -> bool {
    fn go(g: &Multigraph, parts: &[Vec<VertexId>], pick: &mut Vec<VertexId>) -> bool {
        if pick.len() == parts.len() {
            return true;
        }
        for &v in &parts[pick.len()] {
            let adjacent = |u: VertexId| g.edges().iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
            if pick.iter().all(|&u| adjacent(u)) {
                pick.push(v);
                if go(g, parts, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    go(g, parts, &mut Vec::new())
}
