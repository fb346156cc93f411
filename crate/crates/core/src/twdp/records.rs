//! Boundary records and the witness path sets that realize them.

use crate::graph::{EdgeId, VertexId};
use std::collections::BTreeMap;

/// How the partial solution below a bag meets the bag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TwRecord {
    /// For each pair routed to two bag vertices, that vertex pair (smaller first); sorted.
    pub used: Vec<(VertexId, VertexId)>,
    /// Number of bag-to-bag paths per vertex pair; sorted, counts positive.
    pub give: Vec<((VertexId, VertexId), usize)>,
    /// Open terminal (partner not yet seen) and the bag vertex its path reaches; sorted.
    pub single: Vec<(VertexId, VertexId)>,
}

impl TwRecord {
    pub fn is_empty(&self) -> bool {
        self.used.is_empty() && self.give.is_empty() && self.single.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    /// Joins both terminals of the pair.
    Done(usize),
    /// Runs from one terminal of the pair to the bag; the other half exists too.
    Half(usize),
    /// Runs from a terminal whose partner is not yet seen to the bag.
    Single(usize),
    /// Runs between two bag vertices.
    Give,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    pub role: Role,
    /// For terminal paths, the terminal.
    pub start: VertexId,
    pub end: VertexId,
    pub edges: Vec<EdgeId>,
}

impl WitnessPath {
    fn reversed(mut self) -> Self {
        std::mem::swap(&mut self.start, &mut self.end);
        self.edges.reverse();
        self
    }

    pub fn pair(&self) -> Option<usize> {
        match self.role {
            Role::Done(p) | Role::Half(p) | Role::Single(p) => Some(p),
            Role::Give => None,
        }
    }
}

pub type Witness = Vec<WitnessPath>;
pub type RecordTable = BTreeMap<TwRecord, Witness>;

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

/// The record a witness gives rise to.
pub fn record_of(w: &Witness) -> TwRecord {
    let mut halves: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    let mut give: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut single = Vec::new();
    for p in w {
        match p.role {
            Role::Half(i) => halves.entry(i).or_default().push(p.end),
            Role::Single(_) => single.push((p.start, p.end)),
            Role::Give => *give.entry(ordered(p.start, p.end)).or_default() += 1,
            Role::Done(_) => {}
        }
    }
    let mut used: Vec<(VertexId, VertexId)> = halves
        .values()
        .map(|ends| {
            debug_assert_eq!(ends.len(), 2);
            ordered(ends[0], ends[1])
        })
        .collect();
    used.sort_unstable();
    single.sort_unstable();
    TwRecord {
        used,
        give: give.into_iter().collect(),
        single,
    }
}

/// Joins the two halves of any pair that reach the same bag vertex.
fn settle(mut w: Witness) -> Witness {
    loop {
        let mut found = None;
        'outer: for i in 0..w.len() {
            if let Role::Half(p) = w[i].role {
                for j in i + 1..w.len() {
                    if w[j].role == Role::Half(p) && w[j].end == w[i].end {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
        }
        let Some((i, j)) = found else {
            return w;
        };
        let b = w.remove(j);
        let a = w.remove(i);
        let role = Role::Done(a.pair().expect("half carries a pair"));
        w.push(concat(a, b, role));
    }
}

/// `a` then `b` reversed; both must end at the same vertex.
fn concat(a: WitnessPath, b: WitnessPath, role: Role) -> WitnessPath {
    debug_assert_eq!(a.end, b.end);
    let mut edges = a.edges;
    edges.extend(b.edges.iter().rev());
    WitnessPath {
        role,
        start: a.start,
        end: b.start,
        edges,
    }
}

/// Leaf bag `{v}`.
pub fn leaf_table(v: VertexId, pair: Option<usize>) -> RecordTable {
    let w: Witness = match pair {
        Some(p) => vec![WitnessPath {
            role: Role::Single(p),
            start: v,
            end: v,
            edges: Vec::new(),
        }],
        None => Vec::new(),
    };
    RecordTable::from([(record_of(&w), w)])
}

/// Introduces `v`, which has no edges below the bag yet.
pub fn introduce_table(child: &RecordTable, v: VertexId, pair: Option<usize>) -> RecordTable {
    let Some(p) = pair else {
        return child.clone();
    };
    let mut out = RecordTable::new();
    for w in child.values() {
        let mut w = w.clone();
        let mine = WitnessPath {
            role: Role::Single(p),
            start: v,
            end: v,
            edges: Vec::new(),
        };
        if let Some(k) = w.iter().position(|q| q.role == Role::Single(p)) {
            w[k].role = Role::Half(p);
            w.push(WitnessPath {
                role: Role::Half(p),
                ..mine
            });
        } else {
            w.push(mine);
        }
        let w = settle(w);
        out.entry(record_of(&w)).or_insert(w);
    }
    out
}

/// Merges the tables of two subtrees hanging below the same bag.
pub fn join_table(left: &RecordTable, right: &RecordTable, max_degree: usize) -> RecordTable {
    let mut out = RecordTable::new();
    for wl in left.values() {
        for wr in right.values() {
            let mut w: Witness = wl.iter().chain(wr.iter()).cloned().collect();
            // open terminals of one side meeting their partner from the other
            let mut i = 0;
            while i < w.len() {
                if let Role::Single(p) = w[i].role {
                    if let Some(j) = (i + 1..w.len()).find(|&j| w[j].role == Role::Single(p)) {
                        w[i].role = Role::Half(p);
                        w[j].role = Role::Half(p);
                    }
                }
                i += 1;
            }
            let w = settle(w);
            let rec = record_of(&w);
            if rec.give.iter().any(|&(_, c)| c > max_degree) {
                continue;
            }
            out.entry(rec).or_insert(w);
        }
    }
    out
}

/// Forgets `v`; `reach` lists the edges from `v` to the remaining bag, with
/// their far ends.
pub fn forget_table(child: &RecordTable, v: VertexId, reach: &[(EdgeId, VertexId)]) -> RecordTable {
    let mut out = RecordTable::new();
    for w in child.values() {
        for next in forget_options(w, v, reach) {
            out.entry(record_of(&next)).or_insert(next);
        }
    }
    out
}

/// Every way to finish the path ends sitting at `v` with the edges in `reach`.
pub fn forget_options(w: &Witness, v: VertexId, reach: &[(EdgeId, VertexId)]) -> Vec<Witness> {
    // paths with an open end at v, oriented to end there
    let mut open = Vec::new();
    let mut rest = Vec::new();
    for p in w {
        let at_end = p.end == v && !matches!(p.role, Role::Done(_));
        let give_start = p.role == Role::Give && p.start == v;
        if give_start {
            open.push(p.clone().reversed());
        } else if at_end {
            open.push(p.clone());
        } else {
            rest.push(p.clone());
        }
    }
    let mut results = Vec::new();
    let mut taken = vec![false; reach.len()];
    let mut done = vec![false; open.len()];
    let mut built = Vec::new();
    close_ends(&open, 0, reach, &mut taken, &mut done, &mut built, &rest, &mut results);
    results
}

#[allow(clippy::too_many_arguments)]
fn close_ends(
    open: &[WitnessPath],
    i: usize,
    reach: &[(EdgeId, VertexId)],
    taken: &mut Vec<bool>,
    done: &mut Vec<bool>,
    built: &mut Vec<WitnessPath>,
    rest: &[WitnessPath],
    results: &mut Vec<Witness>,
) {
    if i == open.len() {
        fresh_paths(reach, 0, taken, built, rest, results);
        return;
    }
    if done[i] {
        close_ends(open, i + 1, reach, taken, done, built, rest, results);
        return;
    }
    let p = &open[i];
    // extend along one edge to the bag
    for (k, &(e, w)) in reach.iter().enumerate() {
        if taken[k] {
            continue;
        }
        let mut q = p.clone();
        q.edges.push(e);
        q.end = w;
        if q.role == Role::Give && q.start == w {
            continue;
        }
        taken[k] = true;
        built.push(q);
        close_ends(open, i + 1, reach, taken, done, built, rest, results);
        built.pop();
        taken[k] = false;
    }
    // meet another open end at v
    for j in i + 1..open.len() {
        if done[j] {
            continue;
        }
        let q = &open[j];
        let joined = match (p.role, q.role) {
            (Role::Give, Role::Give) if p.start != q.start => Some(concat(p.clone(), q.clone(), Role::Give)),
            (Role::Give, r) if r != Role::Give => Some(concat(q.clone(), p.clone(), r)),
            (r, Role::Give) if r != Role::Give => Some(concat(p.clone(), q.clone(), r)),
            _ => None,
        };
        if let Some(path) = joined {
            done[j] = true;
            built.push(path);
            close_ends(open, i + 1, reach, taken, done, built, rest, results);
            built.pop();
            done[j] = false;
        }
    }
    // an unneeded bag-to-bag path may simply be dropped
    if p.role == Role::Give {
        close_ends(open, i + 1, reach, taken, done, built, rest, results);
    }
}

/// New bag-to-bag paths through `v` from pairs of unused edges.
fn fresh_paths(
    reach: &[(EdgeId, VertexId)],
    from: usize,
    taken: &mut Vec<bool>,
    built: &mut Vec<WitnessPath>,
    rest: &[WitnessPath],
    results: &mut Vec<Witness>,
) {
    let Some(a) = (from..reach.len()).find(|&k| !taken[k]) else {
        let w: Witness = rest.iter().chain(built.iter()).cloned().collect();
        results.push(settle(w));
        return;
    };
    // leave edge a unused
    fresh_paths(reach, a + 1, taken, built, rest, results);
    taken[a] = true;
    for b in a + 1..reach.len() {
        if taken[b] || reach[a].1 == reach[b].1 {
            continue;
        }
        taken[b] = true;
        built.push(WitnessPath {
            role: Role::Give,
            start: reach[a].1,
            end: reach[b].1,
            edges: vec![reach[a].0, reach[b].0],
        });
        fresh_paths(reach, a + 1, taken, built, rest, results);
        built.pop();
        taken[b] = false;
    }
    taken[a] = false;
}
