mod common;

use edpkit_core::corpus::{corpus_seed, random_bounded_degree, random_small_modulator, rng};
use edpkit_core::fracture::signature::beta_cap;
use edpkit_core::fracture::{
    component_signature, components, find_fracture_modulator, prepare_fracture, solve_fracture,
    terminal_free_modulator, ModulatorMode,
};
use edpkit_core::graph::Multigraph;
use edpkit_core::instance::{augmented_graph, verify_solution, EdpInstance};
use edpkit_core::oracle::{brute_force_edp, exhaustive_fracture_number, is_fracture_modulator, DEFAULT_BUDGET};
use rand::Rng;

/// Instances whose augmented graph has fracture number at most 3.
fn low_fracture_corpus(salt: u64, count: usize) -> Vec<EdpInstance> {
    let mut r = rng(corpus_seed() ^ salt);
    let mut out = Vec::new();
    while out.len() < count {
        let m = r.gen_range(1..=3);
        let inst = random_small_modulator(&mut r, 12, m, 3);
        if !inst.pairs.is_empty() && inst.graph.n() <= 12 && exhaustive_fracture_number(&augmented_graph(&inst), 3).is_some() {
            out.push(inst);
        }
    }
    out
}

fn decide(inst: &EdpInstance) -> bool {
    brute_force_edp(inst, DEFAULT_BUDGET).decided().expect("small instance")
}

#[test]
fn agrees_with_brute_force() {
    let mut yes = 0;
    for inst in low_fracture_corpus(0xf7, 300) {
        let got = solve_fracture(&inst, 3).expect("fracture number is at most 3");
        assert_eq!(got.is_some(), decide(&inst), "{inst:?}");
        if let Some(sol) = got {
            assert!(verify_solution(&inst, &sol).is_accept(), "{inst:?} {sol:?}");
            yes += 1;
        }
    }
    assert!(yes > 20 && yes < 280, "corpus is one-sided: {yes} yes");
}

#[test]
fn subdivision_keeps_the_answer() {
    for inst in low_fracture_corpus(0x5b, 60) {
        let x0 = find_fracture_modulator(&augmented_graph(&inst), 3, ModulatorMode::Exact).unwrap();
        let x = terminal_free_modulator(&inst, &x0);
        let prep = prepare_fracture(&inst, &x);
        assert_eq!(decide(&prep.inst), decide(&inst), "{inst:?}");
    }
}

#[test]
fn signatures_match_path_partitions() {
    let mut checked = 0;
    for inst in low_fracture_corpus(0x51, 200) {
        let aug = augmented_graph(&inst);
        let x0 = find_fracture_modulator(&aug, 3, ModulatorMode::Exact).unwrap();
        let x = terminal_free_modulator(&inst, &x0);
        let prep = prepare_fracture(&inst, &x);
        let g = &prep.inst.graph;
        for c in components(&prep.inst, &x) {
            if c.edges.len() > 8 {
                continue;
            }
            let ours: Vec<_> = component_signature(g, &prep.inst.pairs, &c, &x).unwrap().into_keys().collect();
            let want: Vec<_> = common::signature::admitted(g, &prep.inst.pairs, &c, &x).into_iter().collect();
            assert_eq!(ours, want, "component {c:?} of {:?} with x = {x:?}", prep.inst);
            assert!(ours.iter().all(|cfg| cfg.beta.iter().all(|&b| b <= beta_cap(g, &c, &x))));
            checked += 1;
        }
    }
    assert!(checked >= 200, "only {checked} components checked");
}

#[test]
fn terminal_free_modulators_are_valid() {
    let mut r = rng(corpus_seed() ^ 0x7f);
    for _ in 0..100 {
        let inst = random_small_modulator(&mut r, 12, 2, 3);
        let aug = augmented_graph(&inst);
        let Some(x0) = find_fracture_modulator(&aug, 4, ModulatorMode::Exact) else {
            continue;
        };
        let x = terminal_free_modulator(&inst, &x0);
        assert!(x.iter().all(|&v| !inst.is_terminal(v)), "{x:?}");
        let non_terminals = aug.vertices().filter(|&v| !inst.is_terminal(v)).count();
        assert!(is_fracture_modulator(&aug, &x) || x.len() == non_terminals, "{inst:?} {x:?}");
    }
}

fn random_graph<R: Rng>(r: &mut R, n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    let p = r.gen_range(0.1..0.6);
    for u in 1..=n {
        for v in u + 1..=n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[test]
fn exact_and_approx_modulators_match_exhaustive_search() {
    let mut r = rng(corpus_seed() ^ 0xa1);
    for _ in 0..300 {
        let n = r.gen_range(1..=10);
        let g = random_graph(&mut r, n);
        for k in 0..=3 {
            let truth = exhaustive_fracture_number(&g, k).is_some();
            let exact = find_fracture_modulator(&g, k, ModulatorMode::Exact);
            assert_eq!(exact.is_some(), truth, "{g:?} k={k}");
            if let Some(x) = exact {
                assert!(x.len() <= k && is_fracture_modulator(&g, &x));
            }
            match find_fracture_modulator(&g, k, ModulatorMode::Approx) {
                Some(x) => assert!(x.len() <= (k + 1) * k && is_fracture_modulator(&g, &x)),
                None => assert!(!truth, "approx gave up on {g:?} k={k}"),
            }
        }
    }
}

#[test]
fn bounded_degree_instances_too() {
    // a second family, filtered the same way
    let mut r = rng(corpus_seed() ^ 0xbd);
    let mut seen = 0;
    while seen < 60 {
        let inst = random_bounded_degree(&mut r, 10, 3, 2);
        if exhaustive_fracture_number(&augmented_graph(&inst), 3).is_none() {
            continue;
        }
        seen += 1;
        let got = solve_fracture(&inst, 3).unwrap();
        assert_eq!(got.is_some(), decide(&inst), "{inst:?}");
    }
}

#[test]
fn modulators_on_every_small_connected_graph() {
    let counts: Vec<usize> = (1..=7).map(|n| common::graphs::connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    for n in 1..=7 {
        for g in common::graphs::connected_graphs(n) {
            for k in 1..=3 {
                let truth = exhaustive_fracture_number(&g, k).is_some();
                assert_eq!(find_fracture_modulator(&g, k, ModulatorMode::Exact).is_some(), truth);
                if let Some(x) = find_fracture_modulator(&g, k, ModulatorMode::Approx) {
                    assert!(x.len() <= (k + 1) * k);
                }
            }
        }
    }
}
