//! Tree decompositions from elimination orders, and their nice form.

use crate::graph::{Multigraph, VertexId};
use std::collections::BTreeSet;

/// Exact search is used up to this many vertices.
pub const EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    /// Sorted bags.
    pub bags: Vec<Vec<VertexId>>,
    /// Edges between bag indices; forms a tree.
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the tree shape, edge coverage, and connectivity of every
    /// vertex's bags, for the vertices of `g` listed in `vertices`.
    pub fn is_valid_for(&self, g: &Multigraph, vertices: &[VertexId]) -> bool {
        let k = self.bags.len();
        if k == 0 {
            return vertices.is_empty();
        }
        if self.tree.len() + 1 != k {
            return false;
        }
        let mut tg = Multigraph::new(k);
        for &(a, b) in &self.tree {
            if a >= k || b >= k || tg.add_edge(a + 1, b + 1).is_err() {
                return false;
            }
        }
        if crate::graph::connected_components(&tg).len() != 1 {
            return false;
        }
        let mut wanted = vec![false; g.n() + 1];
        for &v in vertices {
            wanted[v] = true;
        }
        for &(u, v) in g.edges() {
            if wanted[u] && wanted[v] && !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return false;
            }
        }
        for &v in vertices {
            let holders: Vec<usize> = (0..k).filter(|&i| self.bags[i].contains(&v)).collect();
            if holders.is_empty() {
                return false;
            }
            let sub = tg.induced(&holders.iter().map(|i| i + 1).collect::<Vec<_>>()).0;
            if crate::graph::connected_components(&sub).len() != 1 {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("treewidth is {found}, above the limit {limit}")]
pub struct WidthExceeded {
    pub limit: usize,
    pub found: usize,
}

fn adjacency(g: &Multigraph, vertices: &[VertexId]) -> Vec<BTreeSet<VertexId>> {
    let mut keep = vec![false; g.n() + 1];
    for &v in vertices {
        keep[v] = true;
    }
    let mut adj = vec![BTreeSet::new(); g.n() + 1];
    for &(u, v) in g.edges() {
        if keep[u] && keep[v] && u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

/// Decomposition with one bag per vertex of `order`, from eliminating in that order.
pub fn decomposition_from_order(g: &Multigraph, order: &[VertexId]) -> TreeDecomposition {
    let mut adj = adjacency(g, order);
    let mut pos = vec![usize::MAX; g.n() + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(order.len());
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<VertexId> = adj[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match later.iter().map(|&w| pos[w]).min() {
            Some(p) => tree.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree.push((w[0], w[1]));
    }
    TreeDecomposition { bags, tree }
}

/// Greedy order: fewest fill edges first, ties to the lowest id.
pub fn min_fill_order(g: &Multigraph, vertices: &[VertexId]) -> Vec<VertexId> {
    greedy_order(g, vertices, |adj, v| {
        let nb: Vec<VertexId> = adj[v].iter().copied().collect();
        let mut fill = 0;
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                if !adj[x].contains(&y) {
                    fill += 1;
                }
            }
        }
        fill
    })
}

/// Greedy order: smallest current degree first, ties to the lowest id.
pub fn min_degree_order(g: &Multigraph, vertices: &[VertexId]) -> Vec<VertexId> {
    greedy_order(g, vertices, |adj, v| adj[v].len())
}

fn greedy_order<F>(g: &Multigraph, vertices: &[VertexId], cost: F) -> Vec<VertexId>
where
    F: Fn(&[BTreeSet<VertexId>], VertexId) -> usize,
{
    let mut adj = adjacency(g, vertices);
    let mut left: BTreeSet<VertexId> = vertices.iter().copied().collect();
    let mut order = Vec::with_capacity(left.len());
    while let Some(v) = left.iter().copied().min_by_key(|&v| (cost(&adj, v), v)) {
        let nb: Vec<VertexId> = adj[v].iter().copied().collect();
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        for &x in &nb {
            adj[x].remove(&v);
        }
        adj[v].clear();
        left.remove(&v);
        order.push(v);
    }
    order
}

/// Optimal elimination order by dynamic programming over vertex subsets.
/// Returns the treewidth and an order achieving it.
pub fn exact_order(g: &Multigraph, vertices: &[VertexId]) -> (usize, Vec<VertexId>) {
    let n = vertices.len();
    assert!(n <= 20, "exact search is exponential");
    if n == 0 {
        return (0, Vec::new());
    }
    let adj = adjacency(g, vertices);
    let mut local = vec![usize::MAX; g.n() + 1];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let nbr: Vec<u32> = vertices
        .iter()
        .map(|&v| adj[v].iter().fold(0u32, |m, &w| m | (1 << local[w])))
        .collect();
    // vertices outside `s` and `v` reachable from `v` through `s`
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(u) = stack.pop() {
            let mut rest = nbr[u] & !seen;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                seen |= 1 << w;
                if s >> w & 1 == 1 {
                    stack.push(w);
                } else {
                    out |= 1 << w;
                }
            }
        }
        out
    };
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cost = best[rest as usize].max(q(rest, v).count_ones() as usize);
            if cost < best[s as usize] {
                best[s as usize] = cost;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(vertices[v]);
        s &= !(1 << v);
    }
    order.reverse();
    (best[full as usize], order)
}

/// Decomposition of the listed vertices; exact when there are few of them.
pub fn decompose(g: &Multigraph, vertices: &[VertexId], k: usize) -> Result<TreeDecomposition, WidthExceeded> {
    if vertices.len() <= EXACT_LIMIT {
        let (tw, order) = exact_order(g, vertices);
        if tw > k {
            return Err(WidthExceeded { limit: k, found: tw });
        }
        Ok(decomposition_from_order(g, &order))
    } else {
        Ok(decomposition_from_order(g, &min_fill_order(g, vertices)))
    }
}

/// Decomposition of all of `g`, refusing only when exact search shows width above `k`.
pub fn build_tree_decomposition(g: &Multigraph, k: usize) -> Result<TreeDecomposition, WidthExceeded> {
    let all: Vec<VertexId> = g.vertices().collect();
    decompose(g, &all, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf(VertexId),
    Introduce(VertexId),
    Forget(VertexId),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<VertexId>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    /// `None` only for the decomposition of no vertices.
    pub root: Option<usize>,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<VertexId>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let Some(root) = self.root else {
            return Vec::new();
        };
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(root, false)];
        while let Some((u, done)) = stack.pop() {
            if done {
                out.push(u);
                continue;
            }
            stack.push((u, true));
            for &c in self.nodes[u].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    /// Structural rules of the nice form plus validity of the underlying decomposition.
    pub fn is_valid_for(&self, g: &Multigraph, vertices: &[VertexId]) -> bool {
        let Some(root) = self.root else {
            return vertices.is_empty();
        };
        if !self.nodes[root].bag.is_empty() {
            return false;
        }
        for node in &self.nodes {
            let kids: Vec<&NiceNode> = node.children.iter().map(|&c| &self.nodes[c]).collect();
            let ok = match node.kind {
                NiceKind::Leaf(v) => kids.is_empty() && node.bag == [v],
                NiceKind::Introduce(v) => {
                    kids.len() == 1 && !kids[0].bag.contains(&v) && with(&kids[0].bag, v) == node.bag
                }
                NiceKind::Forget(v) => kids.len() == 1 && kids[0].bag.contains(&v) && with(&node.bag, v) == kids[0].bag,
                NiceKind::Join => kids.len() == 2 && kids.iter().all(|k| k.bag == node.bag),
            };
            if !ok {
                return false;
            }
        }
        let td = TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            tree: self
                .nodes
                .iter()
                .enumerate()
                .flat_map(|(i, n)| n.children.iter().map(move |&c| (i, c)))
                .collect(),
        };
        td.is_valid_for(g, vertices)
    }

    /// Places a degree-one vertex `leaf` hanging off `anchor` by inserting an
    /// introduce/forget pair just below the node that forgets `anchor`.
    pub fn attach_leaf(&mut self, leaf: VertexId, anchor: VertexId) {
        let f = (0..self.nodes.len())
            .find(|&i| self.nodes[i].kind == NiceKind::Forget(anchor))
            .expect("anchor is forgotten somewhere");
        let below = self.nodes[f].children[0];
        let bag = self.nodes[below].bag.clone();
        let intro = self.push(NiceKind::Introduce(leaf), with(&bag, leaf), vec![below]);
        let forget = self.push(NiceKind::Forget(leaf), bag, vec![intro]);
        self.nodes[f].children[0] = forget;
    }
}

fn with(bag: &[VertexId], v: VertexId) -> Vec<VertexId> {
    let mut b = bag.to_vec();
    b.push(v);
    b.sort_unstable();
    b
}

fn without(bag: &[VertexId], v: VertexId) -> Vec<VertexId> {
    bag.iter().copied().filter(|&w| w != v).collect()
}

/// Nice form of `td`, rooted at bag 0, ending in an empty root bag.
pub fn make_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let mut nice = NiceTreeDecomposition::default();
    let k = td.bags.len();
    if k == 0 {
        return nice;
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    // parents before children
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; k];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        i += 1;
        for &b in &adj[a] {
            if parent[b] == usize::MAX {
                parent[b] = a;
                order.push(b);
            }
        }
    }
    // top[a]: nice node whose bag equals bag a, covering a's subtree
    let mut top: Vec<Option<usize>> = vec![None; k];
    for &a in order.iter().rev() {
        let bag = &td.bags[a];
        let kids: Vec<usize> = adj[a].iter().copied().filter(|&b| b != a && parent[b] == a).collect();
        let mut tops = Vec::new();
        for b in kids {
            let Some(mut cur) = top[b] else { continue };
            let mut cur_bag = nice.nodes[cur].bag.clone();
            for &v in td.bags[b].iter().filter(|v| !bag.contains(v)) {
                cur_bag = without(&cur_bag, v);
                cur = nice.push(NiceKind::Forget(v), cur_bag.clone(), vec![cur]);
            }
            for &v in bag.iter().filter(|v| !td.bags[b].contains(v)) {
                cur_bag = with(&cur_bag, v);
                cur = nice.push(NiceKind::Introduce(v), cur_bag.clone(), vec![cur]);
            }
            tops.push(cur);
        }
        if tops.is_empty() {
            let Some((&first, rest)) = bag.split_first() else {
                continue;
            };
            let mut cur = nice.push(NiceKind::Leaf(first), vec![first], vec![]);
            let mut cur_bag = vec![first];
            for &v in rest {
                cur_bag = with(&cur_bag, v);
                cur = nice.push(NiceKind::Introduce(v), cur_bag.clone(), vec![cur]);
            }
            tops.push(cur);
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = nice.push(NiceKind::Join, bag.clone(), vec![acc, t]);
        }
        top[a] = Some(acc);
    }
    let mut cur = top[0].expect("root bag has a node");
    let mut cur_bag = nice.nodes[cur].bag.clone();
    for v in cur_bag.clone() {
        cur_bag = without(&cur_bag, v);
        cur = nice.push(NiceKind::Forget(v), cur_bag.clone(), vec![cur]);
    }
    nice.root = Some(cur);
    nice
}
