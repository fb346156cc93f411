//! Solver for instances whose augmented graph has a small fracture
//! modulator: per-component signatures feed an integer program that picks
//! one configuration per component.

pub mod modulator;
pub mod selector;
pub mod signature;

pub use modulator::{find_fracture_modulator, prepare_fracture, terminal_free_modulator, FracturePrep, ModulatorMode};
pub use selector::{build_selector_program, prune_dominated, signature_classes, SelectorProgram, SignatureClass};
pub use signature::{component_signature, components, Component, Configuration, Signature};

use crate::graph::EdgeId;
use crate::ilp::{solve_feasibility, Feasibility};
use crate::instance::{augmented_graph, normalize_instance, EdpInstance, PathSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractureError {
    #[error("fracture number of the augmented graph exceeds {kmax}")]
    NumberAbove { kmax: usize },
    #[error("component owns {edges} edges; at most 128 are supported")]
    ComponentTooLarge { edges: usize },
}

/// Decides `inst` with an exact modulator search up to size `kmax`.
pub fn solve_fracture(inst: &EdpInstance, kmax: usize) -> Result<Option<PathSet>, FractureError> {
    solve_fracture_with(inst, kmax, ModulatorMode::Exact)
}

pub fn solve_fracture_with(
    inst: &EdpInstance,
    kmax: usize,
    mode: ModulatorMode,
) -> Result<Option<PathSet>, FractureError> {
    let norm = normalize_instance(inst);
    let aug = augmented_graph(&norm);
    let x0 = (0..=kmax)
        .find_map(|k| find_fracture_modulator(&aug, k, mode))
        .ok_or(FractureError::NumberAbove { kmax })?;
    let x = terminal_free_modulator(&norm, &x0);
    let prep = prepare_fracture(&norm, &x);
    let Some(paths) = solve_prepared(&prep)? else {
        return Ok(None);
    };
    let m0 = inst.graph.m();
    let paths = paths
        .iter()
        .map(|p| {
            let mut q = prep.unmap_path(p);
            q.retain(|&e| e < m0);
            q
        })
        .collect();
    Ok(Some(PathSet { paths }))
}

/// Runs the selector pipeline on a prepared instance; paths use its edges.
pub fn solve_prepared(prep: &FracturePrep) -> Result<Option<Vec<Vec<EdgeId>>>, FractureError> {
    let inst = &prep.inst;
    let x = &prep.modulator;
    let comps = components(inst, x);
    let sigs = comps
        .iter()
        .map(|c| component_signature(&inst.graph, &inst.pairs, c, x))
        .collect::<Result<Vec<_>, _>>()?;
    let classes: Vec<SignatureClass> = signature_classes(&sigs)
        .iter()
        .map(|c| prune_dominated(c, x))
        .collect();
    let prog = build_selector_program(&classes, x);
    match solve_feasibility(&prog.program) {
        Feasibility::Infeasible => Ok(None),
        Feasibility::Feasible(z) => {
            let chosen = selector::selection(&classes, &prog, &z, comps.len());
            Ok(Some(selector::stitch(&sigs, &chosen, inst.pairs.len())))
        }
    }
}
