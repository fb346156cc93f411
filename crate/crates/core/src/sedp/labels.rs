//! Connectivity labels of rooted subtrees of `G - x`.

use crate::graph::Multigraph;
use crate::matching::{matching_max_cover, Matching};

/// Labels of a subtree: `gamma_empty` (all local pairs served), `gamma_x`
/// (additionally a root-to-x path), and the pairs that can hand one terminal
/// up to the subtree root.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LabelSet {
    pub gamma_empty: bool,
    pub gamma_x: bool,
    /// Pair indices, increasing.
    pub pairs: Vec<usize>,
}

impl LabelSet {
    pub fn is_empty(&self) -> bool {
        !self.gamma_empty && !self.gamma_x && self.pairs.is_empty()
    }

    pub fn has_pair(&self, p: usize) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }
}

/// Labels of a tree leaf from its terminal role and whether it touches `x`.
pub fn leaf_labels(pair: Option<usize>, has_x_edge: bool) -> LabelSet {
    LabelSet {
        gamma_empty: pair.is_none() || has_x_edge,
        gamma_x: pair.is_none() && has_x_edge,
        pairs: pair.into_iter().collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildClass {
    /// Not even `gamma_empty`: needs help from a sibling or an x-route.
    Needy,
    /// Has `gamma_x`.
    ToX,
    Plain,
}

/// Child classification plus the auxiliary graph on needy and plain children.
/// Vertex `i + 1` of `aux` is child `i`.
pub struct NodePartition {
    pub class: Vec<ChildClass>,
    pub aux: Multigraph,
    /// For each aux edge, one shared pair label (the lowest).
    pub shared: Vec<usize>,
}

impl NodePartition {
    pub fn new(children: &[&LabelSet]) -> Self {
        let class: Vec<ChildClass> = children
            .iter()
            .map(|l| {
                if !l.gamma_empty {
                    ChildClass::Needy
                } else if l.gamma_x {
                    ChildClass::ToX
                } else {
                    ChildClass::Plain
                }
            })
            .collect();
        let mut holders: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, l) in children.iter().enumerate() {
            if class[i] == ChildClass::ToX {
                continue;
            }
            for &p in &l.pairs {
                holders.entry(p).or_default().push(i);
            }
        }
        let mut seen = std::collections::BTreeMap::new();
        for (&p, hs) in &holders {
            for (a, &i) in hs.iter().enumerate() {
                for &j in &hs[a + 1..] {
                    if class[i] == ChildClass::Plain && class[j] == ChildClass::Plain {
                        continue;
                    }
                    seen.entry((i, j)).or_insert(p);
                }
            }
        }
        let mut aux = Multigraph::new(children.len());
        let mut shared = Vec::with_capacity(seen.len());
        for ((i, j), p) in seen {
            aux.add_edge(i + 1, j + 1).expect("distinct children");
            shared.push(p);
        }
        NodePartition { class, aux, shared }
    }

    pub fn needy(&self) -> Vec<usize> {
        self.members(ChildClass::Needy)
    }

    pub fn to_x(&self) -> Vec<usize> {
        self.members(ChildClass::ToX)
    }

    fn members(&self, c: ChildClass) -> Vec<usize> {
        (0..self.class.len()).filter(|&i| self.class[i] == c).collect()
    }

    /// Matching covering the most needy children, optionally with one child removed.
    /// Returns the matching (on `aux`) and how many needy children stay uncovered,
    /// not counting the removed one.
    pub fn best_cover(&self, without: Option<usize>) -> (Matching, usize) {
        let needy: Vec<usize> = self
            .needy()
            .into_iter()
            .filter(|&i| Some(i) != without)
            .map(|i| i + 1)
            .collect();
        let m = match without {
            Some(r) if self.aux.edges().iter().any(|&(u, v)| u == r + 1 || v == r + 1) => {
                let mut h = Multigraph::new(self.aux.n());
                let mut keep = Vec::new();
                for (e, &(u, v)) in self.aux.edges().iter().enumerate() {
                    if u != r + 1 && v != r + 1 {
                        h.add_edge(u, v).expect("aux edge");
                        keep.push(e);
                    }
                }
                let inner = matching_max_cover(&h, &needy);
                Matching {
                    edges: inner.edges.into_iter().map(|e| keep[e]).collect(),
                }
            }
            _ => matching_max_cover(&self.aux, &needy),
        };
        let covered = m.cover_of(&self.aux, &needy);
        (m, needy.len() - covered)
    }
}

/// Labels of an inner node from the labels of its children.
pub fn inner_labels(children: &[&LabelSet]) -> LabelSet {
    if children.iter().any(|l| l.is_empty()) {
        return LabelSet::default();
    }
    let part = NodePartition::new(children);
    let to_x = part.to_x().len();
    let (_, uncovered) = part.best_cover(None);
    let mut pairs: Vec<usize> = children.iter().flat_map(|l| l.pairs.iter().copied()).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.retain(|&p| pair_route(&part, children, p).is_some());
    LabelSet {
        gamma_empty: uncovered <= to_x,
        gamma_x: uncovered < to_x,
        pairs,
    }
}

/// Lowest child that can carry pair `p` up through the node, if any.
pub fn pair_route(part: &NodePartition, children: &[&LabelSet], p: usize) -> Option<usize> {
    (0..children.len()).filter(|&i| children[i].has_pair(p)).find(|&i| {
        let (_, uncovered) = part.best_cover(Some(i));
        let spare = part.to_x().len() - usize::from(part.class[i] == ChildClass::ToX);
        uncovered <= spare
    })
}

/// Labels of any tree node.
pub fn compute_labels(pair: Option<usize>, has_x_edge: bool, children: &[&LabelSet]) -> LabelSet {
    if children.is_empty() {
        leaf_labels(pair, has_x_edge)
    } else {
        inner_labels(children)
    }
}
