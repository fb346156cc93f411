use std::path::PathBuf;

use clap::Args;

use edpkit_core::graph::{find_fvs_one, FvsOne};
use edpkit_core::instance::{augmented_graph, normalize_instance};
use edpkit_core::io::ParsedInstance;
use edpkit_core::oracle::exhaustive_fracture_number;
use edpkit_core::twdp::{min_fill_order, decomposition_from_order, TwdpPlan};

use crate::{read_instance, Failure};

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Largest fracture number tried by exhaustive search.
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    pub file: PathBuf,
}

fn list(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(args: &StatsArgs) -> Result<(), Failure> {
    let inst = match read_instance(&args.file)? {
        ParsedInstance::Edp(i) => i,
        ParsedInstance::Multi(_) => {
            return Err(Failure::Data("stats takes single-path EDP instances".into()));
        }
    };
    println!("n {}", inst.graph.n());
    println!("m {}", inst.graph.m());
    println!("pairs {}", inst.pairs.len());
    println!("max_degree {}", inst.graph.max_degree());
    println!("normalized {}", if inst.normalized { "yes" } else { "no" });
    match find_fvs_one(&inst.graph) {
        FvsOne::AlreadyForest => println!("fvs_one forest"),
        FvsOne::Vertex(x) => println!("fvs_one vertex {x}"),
        FvsOne::Absent => println!("fvs_one none"),
    }
    let aug = augmented_graph(&normalize_instance(&inst));
    match exhaustive_fracture_number(&aug, args.kmax) {
        Some(w) => {
            println!("fracture_number {}", w.number);
            println!("fracture_modulator {}", list(&w.modulator));
        }
        None => println!("fracture_number >{}", args.kmax),
    }
    let core = TwdpPlan::core_vertices(&inst);
    let td = decomposition_from_order(&inst.graph, &min_fill_order(&inst.graph, &core));
    println!("width_heuristic {}", td.width());
    Ok(())
}
