//! Seeded random instance families for tests and benchmarks.

use crate::graph::{Multigraph, VertexId};
use crate::instance::{normalize_instance, EdpInstance, TerminalPair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x05ee_ded9;

/// `EDPKIT_SEED` if set and numeric, else [`DEFAULT_SEED`].
pub fn corpus_seed() -> u64 {
    std::env::var("EDPKIT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_pairs<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<TerminalPair> {
    (0..count)
        .map(|_| {
            let s = rng.gen_range(1..=n);
            let mut t = rng.gen_range(1..n);
            if t >= s {
                t += 1;
            }
            TerminalPair::new(s, t)
        })
        .collect()
}

/// Normalized instance whose graph has a vertex meeting every cycle, with at
/// most `max_n` vertices after normalization and at most `max_pairs` pairs.
pub fn random_fvs_one<R: Rng>(rng: &mut R, max_n: usize, max_pairs: usize) -> EdpInstance {
    let pairs = rng.gen_range(0..=max_pairs.min(max_n.saturating_sub(3) / 2));
    let core = rng.gen_range(3..=(max_n - 2 * pairs).max(3));
    // vertex 1 is the feedback vertex; 2..=core form a forest
    let mut g = Multigraph::new(core);
    for v in 3..=core {
        if rng.gen_bool(0.8) {
            g.add_edge(rng.gen_range(2..v), v).expect("forest edge");
        }
    }
    for v in 2..=core {
        if rng.gen_bool(0.4) {
            g.add_edge(1, v).expect("x edge");
            if rng.gen_bool(0.05) {
                g.add_edge(1, v).expect("parallel x edge");
            }
        }
    }
    let ps = random_pairs(rng, core, pairs);
    let raw = EdpInstance::new(g, ps);
    normalize_instance(&raw)
}

/// Normalized instance with maximum degree at most `max_degree`.
pub fn random_bounded_degree<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_degree: usize,
    max_pairs: usize,
) -> EdpInstance {
    let pairs = rng.gen_range(0..=max_pairs.min(max_n.saturating_sub(2) / 2));
    let core = rng.gen_range(2..=(max_n - 2 * pairs).max(2));
    let mut g = Multigraph::new(core);
    let mut deg = vec![0usize; core + 1];
    let attempts = rng.gen_range(core..=2 * core);
    for _ in 0..attempts {
        let u = rng.gen_range(1..=core);
        let v = rng.gen_range(1..=core);
        if u != v && deg[u] < max_degree && deg[v] < max_degree {
            g.add_edge(u, v).expect("edge");
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    // normalization adds one edge per offending terminal; keep room for it
    let eligible: Vec<VertexId> = (1..=core).filter(|&v| deg[v] < max_degree).collect();
    let mut ps = Vec::new();
    let mut load = vec![0usize; core + 1];
    for _ in 0..pairs {
        let open: Vec<VertexId> = eligible.iter().copied().filter(|&v| deg[v] + load[v] < max_degree).collect();
        if open.len() < 2 {
            break;
        }
        let chosen: Vec<VertexId> = open.choose_multiple(rng, 2).copied().collect();
        load[chosen[0]] += 1;
        load[chosen[1]] += 1;
        ps.push(TerminalPair::new(chosen[0], chosen[1]));
    }
    normalize_instance(&EdpInstance::new(g, ps))
}

/// Normalized instance built around a small modulator: `modulator` hub
/// vertices joined to several small components. Pairs stay inside one
/// component or join two components through the hubs.
pub fn random_small_modulator<R: Rng>(
    rng: &mut R,
    max_n: usize,
    modulator: usize,
    max_pairs: usize,
) -> EdpInstance {
    let pairs = rng.gen_range(0..=max_pairs);
    let budget = max_n.saturating_sub(modulator + 2 * pairs).max(2);
    let mut g = Multigraph::new(modulator);
    let mut comps: Vec<Vec<VertexId>> = Vec::new();
    let mut left = budget;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        left -= size;
        let vs: Vec<VertexId> = (0..size).map(|_| g.add_vertex()).collect();
        for i in 1..size {
            g.add_edge(vs[rng.gen_range(0..i)], vs[i]).expect("component edge");
        }
        for &v in &vs {
            for h in 1..=modulator {
                if rng.gen_bool(0.35) {
                    g.add_edge(h, v).expect("hub edge");
                }
            }
        }
        comps.push(vs);
    }
    for a in 1..=modulator {
        for b in a + 1..=modulator {
            if rng.gen_bool(0.3) {
                g.add_edge(a, b).expect("hub edge");
            }
        }
    }
    let mut ps = Vec::new();
    for _ in 0..pairs {
        let c1 = &comps[rng.gen_range(0..comps.len())];
        let c2 = &comps[rng.gen_range(0..comps.len())];
        let s = c1[rng.gen_range(0..c1.len())];
        let t = c2[rng.gen_range(0..c2.len())];
        if s != t {
            ps.push(TerminalPair::new(s, t));
        }
    }
    normalize_instance(&EdpInstance::new(g, ps))
}

/// Hub with `arms` paths of `arm_len` edges, each tip joined to a shared
/// vertex `x`; pair `i` joins leaves hung off the middle of arms `2i`, `2i+1`.
/// Vertex 1 is the hub, 2 is `x`.
pub fn star_of_paths(arms: usize, arm_len: usize, pairs: usize) -> EdpInstance {
    assert!(arm_len >= 1);
    let mut g = Multigraph::new(2);
    let (hub, x) = (1, 2);
    let mut first = Vec::with_capacity(arms);
    for _ in 0..arms {
        let mut prev = hub;
        for k in 0..arm_len {
            let v = g.add_vertex();
            if k == 0 {
                first.push(v);
            }
            g.add_edge(prev, v).expect("arm");
            prev = v;
        }
        g.add_edge(prev, x).expect("tip");
    }
    let mut ps = Vec::new();
    for i in 0..pairs.min(arms / 2) {
        let mid = |k: usize| first[k] + arm_len / 2;
        let a = g.add_vertex();
        g.add_edge(mid(2 * i), a).expect("terminal");
        let b = g.add_vertex();
        g.add_edge(mid(2 * i + 1), b).expect("terminal");
        ps.push(TerminalPair::new(a, b));
    }
    EdpInstance::new(g, ps)
}

/// Star-of-paths with exactly `n` vertices (when `n` leaves room for one
/// vertex per arm) and `pairs` pairs; the remainder forms one extra arm.
pub fn star_of_paths_sized(n: usize, pairs: usize) -> EdpInstance {
    let arms = (2 * pairs).max(2);
    let arm_len = ((n.saturating_sub(2 + 2 * pairs)) / arms).max(1);
    let mut inst = star_of_paths(arms, arm_len, pairs);
    let rest = n.saturating_sub(inst.graph.n());
    let mut prev = 1;
    for _ in 0..rest {
        let v = inst.graph.add_vertex();
        inst.graph.add_edge(prev, v).expect("padding arm");
        prev = v;
    }
    if rest > 0 {
        inst.graph.add_edge(prev, 2).expect("padding tip");
    }
    EdpInstance::new(inst.graph, inst.pairs)
}
