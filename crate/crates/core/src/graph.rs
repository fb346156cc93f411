//! Multigraphs addressed by stable edge index.
//!
//! Vertices are `1..=n`. Parallel edges are kept apart by index, which is
//! what paths refer to.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex id {0} out of range 1..={1}")]
    OutOfRange(VertexId, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    directed: bool,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            directed: false,
        }
    }

    pub fn new_directed(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            directed: true,
        }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<VertexId> {
        1..=self.n
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::OutOfRange(w, self.n));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    /// The endpoint of `e` opposite to `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Incidence lists ignoring direction, indexed by vertex id (slot 0 unused).
    /// Each list holds `(neighbor, edge)` in increasing edge order.
    pub fn incidence(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut inc = vec![Vec::new(); self.n + 1];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, e));
            inc[v].push((u, e));
        }
        inc
    }

    /// Outgoing arcs per vertex; for undirected graphs the same as [`incidence`](Self::incidence).
    pub fn out_arcs(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        if !self.directed {
            return self.incidence();
        }
        let mut out = vec![Vec::new(); self.n + 1];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            out[u].push((v, e));
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n + 1];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Same graph with the direction flag cleared.
    pub fn undirected(&self) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.edges.clone(),
            directed: false,
        }
    }

    /// Subgraph induced by `keep`, relabelled to `1..=keep.len()` in the order given.
    /// Returns the graph and, per new edge, the original edge index.
    pub fn induced(&self, keep: &[VertexId]) -> (Multigraph, Vec<EdgeId>) {
        let mut pos = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut g = Multigraph {
            n: keep.len(),
            edges: Vec::new(),
            directed: self.directed,
        };
        let mut origin = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if pos[u] != 0 && pos[v] != 0 {
                g.edges.push((pos[u], pos[v]));
                origin.push(e);
            }
        }
        (g, origin)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Maximal connected vertex sets, direction ignored. Blocks are sorted
/// internally and ordered by their smallest vertex.
pub fn connected_components(g: &Multigraph) -> Vec<Vec<VertexId>> {
    components_avoiding(g, &[])
}

/// Components of `g - removed`.
pub fn components_avoiding(g: &Multigraph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut gone = vec![false; g.n() + 1];
    for &v in removed {
        gone[v] = true;
    }
    let mut uf = UnionFind::new(g.n() + 1);
    for &(u, v) in g.edges() {
        if !gone[u] && !gone[v] {
            uf.union(u, v);
        }
    }
    let mut slot = vec![usize::MAX; g.n() + 1];
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    for v in g.vertices() {
        if gone[v] {
            continue;
        }
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(v);
    }
    blocks
}

/// True iff the graph has no cycle; two parallel edges form a cycle.
pub fn is_forest(g: &Multigraph) -> bool {
    is_forest_without(g, None)
}

/// Forest test on `g - skip`.
pub fn is_forest_without(g: &Multigraph, skip: Option<VertexId>) -> bool {
    let mut uf = UnionFind::new(g.n() + 1);
    g.edges()
        .iter()
        .filter(|&&(u, v)| Some(u) != skip && Some(v) != skip)
        .all(|&(u, v)| uf.union(u, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FvsOne {
    /// The graph has no cycle at all.
    AlreadyForest,
    /// Lowest-id vertex whose removal leaves a forest.
    Vertex(VertexId),
    Absent,
}

impl FvsOne {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            FvsOne::Vertex(x) => Some(x),
            _ => None,
        }
    }
}

/// Finds a single vertex hitting every cycle.
///
/// Such a vertex lies on every cycle, so only the vertices of one cycle are tried.
pub fn find_fvs_one(g: &Multigraph) -> FvsOne {
    let Some(cycle) = find_cycle(g) else {
        return FvsOne::AlreadyForest;
    };
    let mut candidates = cycle;
    candidates.sort_unstable();
    candidates
        .into_iter()
        .find(|&x| is_forest_without(g, Some(x)))
        .map_or(FvsOne::Absent, FvsOne::Vertex)
}

/// Vertices of some cycle, or `None` for a forest.
pub fn find_cycle(g: &Multigraph) -> Option<Vec<VertexId>> {
    let inc = g.incidence();
    let n = g.n();
    let mut parent_edge = vec![usize::MAX; n + 1];
    let mut parent = vec![0usize; n + 1];
    let mut depth = vec![usize::MAX; n + 1];
    for root in g.vertices() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(w, e) in &inc[v] {
                if e == parent_edge[v] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    stack.push(w);
                } else {
                    // non-tree edge closes a cycle through the lowest common ancestor
                    let (mut a, mut b) = (v, w);
                    let mut left = vec![a];
                    let mut right = vec![b];
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = parent[a];
                            left.push(a);
                        } else {
                            b = parent[b];
                            right.push(b);
                        }
                    }
                    right.pop();
                    left.extend(right);
                    left.dedup();
                    return Some(left);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Multigraph {
        Multigraph::from_edges(n, e).unwrap()
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            connected_components(&g(4, &[(1, 2), (3, 4)])),
            vec![vec![1, 2], vec![3, 4]]
        );
        assert_eq!(
            connected_components(&g(3, &[])),
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            connected_components(&g(4, &[(1, 2), (2, 3), (3, 1)])),
            vec![vec![1, 2, 3], vec![4]]
        );
    }

    #[test]
    fn forest_examples() {
        assert!(is_forest(&g(5, &[(1, 2), (2, 3), (3, 4), (4, 5)])));
        assert!(!is_forest(&g(3, &[(1, 2), (2, 3), (3, 1)])));
        assert!(!is_forest(&g(2, &[(1, 2), (1, 2)])));
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        let mut h = Multigraph::new(2);
        assert_eq!(h.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert_eq!(h.add_edge(0, 2), Err(GraphError::OutOfRange(0, 2)));
        assert_eq!(h.add_edge(1, 3), Err(GraphError::OutOfRange(3, 2)));
    }

    #[test]
    fn fvs_one_examples() {
        assert_eq!(find_fvs_one(&g(3, &[(1, 2), (2, 3), (3, 1)])), FvsOne::Vertex(1));
        let two_triangles = g(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]);
        assert_eq!(find_fvs_one(&two_triangles), FvsOne::Absent);
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(find_fvs_one(&k4), FvsOne::Absent);
        assert_eq!(find_fvs_one(&g(3, &[(1, 2)])), FvsOne::AlreadyForest);
        // parallel pair plus a pendant triangle sharing vertex 2
        let h = g(4, &[(1, 2), (1, 2), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(find_fvs_one(&h), FvsOne::Vertex(2));
    }

    #[test]
    fn induced_keeps_origin() {
        let h = g(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let (sub, origin) = h.induced(&[2, 3, 4]);
        assert_eq!(sub.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(origin, vec![1, 2]);
    }
}
