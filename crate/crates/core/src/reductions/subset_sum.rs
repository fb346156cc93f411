//! Sidon sequences, multicolored clique, and the subset-sum variants.

use crate::graph::{EdgeId, Multigraph, VertexId};

use super::ReductionError;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `n` integers with pairwise distinct sums of distinct elements, all at
/// most `8 n^2`: `2 p i + (i^2 mod p)` for the smallest prime `p >= n`.
pub fn sidon_sequence(n: usize) -> Vec<u64> {
    let n = n as u64;
    let p = (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded");
    (0..n).map(|i| 2 * p * i + (i * i) % p).collect()
}

/// True iff all sums of two distinct elements differ.
pub fn is_sidon(seq: &[u64]) -> bool {
    let mut sums = std::collections::BTreeSet::new();
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if !sums.insert(seq[i] + seq[j]) {
                return false;
            }
        }
    }
    true
}

/// A graph whose vertices are split into parts with no edge inside a part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    pub graph: Multigraph,
    pub parts: Vec<Vec<VertexId>>,
}

impl MccInstance {
    pub fn new(graph: Multigraph, parts: Vec<Vec<VertexId>>) -> Result<Self, ReductionError> {
        let mut part_of = vec![usize::MAX; graph.n() + 1];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v == 0 || v > graph.n() || part_of[v] != usize::MAX {
                    return Err(ReductionError::BadPartition(format!("vertex {v} misplaced")));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = graph.vertices().find(|&v| part_of[v] == usize::MAX) {
            return Err(ReductionError::BadPartition(format!("vertex {v} in no part")));
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| part_of[u] == part_of[v]) {
            return Err(ReductionError::BadPartition(format!("edge {u}-{v} inside a part")));
        }
        Ok(MccInstance { graph, parts })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self) -> Vec<usize> {
        let mut part_of = vec![usize::MAX; self.graph.n() + 1];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        part_of
    }

    /// True iff `pick` has one vertex per part, in part order, pairwise adjacent.
    pub fn is_clique(&self, pick: &[VertexId]) -> bool {
        pick.len() == self.k()
            && pick.iter().zip(&self.parts).all(|(v, p)| p.contains(v))
            && (0..pick.len()).all(|i| {
                (i + 1..pick.len()).all(|j| {
                    self.graph
                        .edges()
                        .iter()
                        .any(|&(u, v)| (u, v) == (pick[i], pick[j]) || (v, u) == (pick[i], pick[j]))
                })
            })
    }
}

/// Item vectors and a target; `cardinality` fixes (or, for the relaxed
/// variant, caps) how many items a solution takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MssInstance {
    pub items: Vec<Vec<u64>>,
    pub target: Vec<u64>,
    pub cardinality: Option<usize>,
}

impl MssInstance {
    pub fn dimension(&self) -> usize {
        self.target.len()
    }
}

/// Where a subset-sum item came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItemOrigin {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MssReduction {
    pub mss: MssInstance,
    pub origin: Vec<ItemOrigin>,
    pub sidon: Vec<u64>,
}

impl MssReduction {
    /// Items of a clique: its vertices, then the edges between them.
    pub fn items_of_clique(&self, mcc: &MccInstance, pick: &[VertexId]) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, o) in self.origin.iter().enumerate() {
            let take = match *o {
                ItemOrigin::Vertex(v) => pick.contains(&v),
                ItemOrigin::Edge(e) => {
                    let (u, v) = mcc.graph.edge(e);
                    pick.contains(&u) && pick.contains(&v)
                }
            };
            if take {
                out.push(i);
            }
        }
        out
    }

    /// The vertices among chosen items, in part order.
    pub fn clique_of_items(&self, mcc: &MccInstance, chosen: &[usize]) -> Vec<VertexId> {
        let part_of = mcc.part_of();
        let mut pick: Vec<VertexId> = chosen
            .iter()
            .filter_map(|&i| match self.origin[i] {
                ItemOrigin::Vertex(v) => Some(v),
                ItemOrigin::Edge(_) => None,
            })
            .collect();
        pick.sort_by_key(|&v| part_of[v]);
        pick
    }
}

/// 0-based position of the part pair `i < j` among all pairs of `k` parts.
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    (0..i).map(|l| k - 1 - l).sum::<usize>() + (j - i - 1)
}

/// Subset-sum instance whose exact solutions (with `C(k,2) + k` items) are
/// the multicolored cliques. Layout: `C(k,2)` pair-sum coordinates, then
/// `C(k,2)` edge-choice coordinates, then `k` vertex-choice coordinates.
pub fn mcc_to_mss(mcc: &MccInstance) -> MssReduction {
    let k = mcc.k();
    let pairs = k * k.saturating_sub(1) / 2;
    let dim = 2 * pairs + k;
    let sidon = sidon_sequence(mcc.graph.n().max(1));
    let mut sorted = sidon.clone();
    sorted.sort_unstable();
    let top_sum = match sorted.len() {
        0 | 1 => sorted.last().copied().unwrap_or(0),
        n => sorted[n - 1] + sorted[n - 2],
    };
    let value = |v: VertexId| sidon[v - 1];
    let part_of = mcc.part_of();

    let mut target = vec![top_sum + 1; pairs];
    target.extend(std::iter::repeat_n(1, pairs + k));
    let mut items = Vec::new();
    let mut origin = Vec::new();
    for v in mcc.graph.vertices() {
        let i = part_of[v];
        let mut s = vec![0; dim];
        for other in 0..k {
            if other != i {
                s[pair_index(k, i.min(other), i.max(other))] = value(v);
            }
        }
        s[2 * pairs + i] = 1;
        items.push(s);
        origin.push(ItemOrigin::Vertex(v));
    }
    for (e, &(u, v)) in mcc.graph.edges().iter().enumerate() {
        let (i, j) = (part_of[u].min(part_of[v]), part_of[u].max(part_of[v]));
        let mut s = vec![0; dim];
        s[pair_index(k, i, j)] = top_sum + 1 - (value(u) + value(v));
        s[pairs + pair_index(k, i, j)] = 1;
        items.push(s);
        origin.push(ItemOrigin::Edge(e));
    }
    MssReduction {
        mss: MssInstance {
            items,
            target,
            cardinality: Some(pairs + k),
        },
        origin,
        sidon,
    }
}

/// Relaxed mirror: item `s` becomes `(s, t - s)` and the target
/// `(t, (c - 1) t)` for cardinality `c`. Items exceeding the target in some
/// coordinate can never be chosen and are dropped; their indices are returned.
///
/// The mirror only forces `c` items when the target is nonzero somewhere, so
/// an all-zero target with `c > 0` first gets a coordinate counting items.
pub fn mss_to_mrss(mss: &MssInstance) -> Result<(MssInstance, Vec<usize>), ReductionError> {
    let c = mss.cardinality.ok_or(ReductionError::MissingCardinality)? as u64;
    let counted = c > 0 && mss.target.iter().all(|&v| v == 0);
    let mut t = mss.target.clone();
    if counted {
        t.push(c);
    }
    let mut items = Vec::new();
    let mut dropped = Vec::new();
    for (idx, s) in mss.items.iter().enumerate() {
        let mut s = s.clone();
        if counted {
            s.push(1);
        }
        if s.iter().zip(&t).any(|(a, b)| a > b) {
            dropped.push(idx);
            continue;
        }
        let mirror: Vec<u64> = s.iter().zip(&t).map(|(a, b)| b - a).collect();
        s.extend(mirror);
        items.push(s);
    }
    let mut target = t.clone();
    target.extend(t.iter().map(|&b| c.saturating_sub(1) * b));
    Ok((
        MssInstance {
            items,
            target,
            cardinality: mss.cardinality,
        },
        dropped,
    ))
}
