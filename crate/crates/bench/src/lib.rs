//! Fixed-seed workloads shared by the benchmark groups.

use edpkit_core::corpus::{random_bounded_degree, random_fvs_one, random_small_modulator, rng, star_of_paths_sized};
use edpkit_core::graph::Multigraph;
use edpkit_core::instance::EdpInstance;
use edpkit_core::reductions::MccInstance;
use rand::Rng;

const SEED: u64 = 0xbe_4c;

pub fn star_of_paths(n: usize) -> EdpInstance {
    star_of_paths_sized(n, 4)
}

pub fn fvs_one_batch(count: usize) -> Vec<EdpInstance> {
    let mut r = rng(SEED);
    (0..count).map(|_| random_fvs_one(&mut r, 13, 4)).collect()
}

pub fn bounded_degree_batch(count: usize) -> Vec<EdpInstance> {
    let mut r = rng(SEED ^ 1);
    (0..count).map(|_| random_bounded_degree(&mut r, 12, 3, 3)).collect()
}

pub fn small_modulator_batch(count: usize) -> Vec<EdpInstance> {
    let mut r = rng(SEED ^ 2);
    (0..count).map(|_| random_small_modulator(&mut r, 12, 2, 3)).collect()
}

/// Random graph on `n` vertices with weights in `1..100`.
pub fn weighted_graph(n: usize, edges: usize) -> (Multigraph, Vec<u64>) {
    let mut r = rng(SEED ^ 3 ^ n as u64);
    let mut g = Multigraph::new(n);
    while g.m() < edges {
        let (u, v) = (r.gen_range(1..=n), r.gen_range(1..=n));
        if u != v {
            g.add_edge(u, v).expect("vertices exist");
        }
    }
    let w = (0..g.m()).map(|_| r.gen_range(1..100)).collect();
    (g, w)
}

/// Three singleton parts on a triangle.
pub fn triangle_mcc() -> MccInstance {
    let g = Multigraph::from_edges(3, &[(1, 2), (1, 3), (2, 3)]).expect("triangle");
    MccInstance::new(g, vec![vec![1], vec![2], vec![3]]).expect("singleton parts")
}
