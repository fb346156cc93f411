use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};

use edpkit_core::graph::Multigraph;
use edpkit_core::instance::{Demand, MultiDemandInstance};
use edpkit_core::io::{write_instance_with_comments, write_multi_instance, ParsedInstance};
use edpkit_core::reductions::{
    full_pipeline, is_sidon, max_pairs_per_component, medp_to_edp, sidon_sequence, MccInstance,
};

use crate::{read_file, read_instance, write_file, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// Directed multi-demand gadget.
    Directed,
    /// Directed gadget after balancing.
    Balanced,
    /// Undirected multi-demand instance.
    Undirected,
    /// Single-path EDP instance.
    Edp,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// `n` integers with distinct pairwise sums, each at most 8n^2.
    Sidon {
        n: usize,
    },
    /// EDP instance with a small feedback vertex set from a multicolored-clique
    /// file (`p mcc <n> <m> <parts>`, `e <u> <v>` lines, one `g <vertices>` line per part).
    MccPipeline {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Stage::Edp)]
        stage: Stage,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// EDP instance from three demands with the given multiplicities; the base
    /// file is an instance whose first three pairs or demands give the endpoints.
    Medp {
        n1: usize,
        n2: usize,
        n3: usize,
        base: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn data(path: &Path, line: usize, what: &str) -> Failure {
    Failure::Data(format!("{}: line {line}: {what}", path.display()))
}

pub fn parse_mcc(path: &Path, text: &str) -> Result<MccInstance, Failure> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut parts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>, Failure> {
            fields[from..]
                .iter()
                .map(|f| f.parse().map_err(|_| data(path, line, "not a number")))
                .collect()
        };
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") if fields.get(1) == Some(&"mcc") && fields.len() == 5 && header.is_none() => {
                let v = nums(2)?;
                header = Some((v[0], v[1], v[2]));
            }
            Some("e") if header.is_some() && fields.len() == 3 => {
                let v = nums(1)?;
                edges.push((v[0], v[1]));
            }
            Some("g") if header.is_some() => parts.push(nums(1)?),
            _ => return Err(data(path, line, "malformed line")),
        }
    }
    let (n, m, k) = header.ok_or_else(|| data(path, 1, "missing `p mcc` header"))?;
    if edges.len() != m || parts.len() != k {
        return Err(data(path, text.lines().count(), "edge or part count mismatch"));
    }
    let g = Multigraph::from_edges(n, &edges).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    MccInstance::new(g, parts).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn meta(lines: impl IntoIterator<Item = String>) -> Vec<String> {
    lines.into_iter().map(|l| format!("meta {l}")).collect()
}

pub fn run(cmd: &GenCommand) -> Result<(), Failure> {
    match cmd {
        GenCommand::Sidon { n } => {
            if *n == 0 {
                return Err(Failure::Usage("sidon needs n >= 1".into()));
            }
            let s = sidon_sequence(*n);
            let top = s.iter().max().copied().unwrap_or(0);
            let cap = 8 * (*n as u64).pow(2);
            println!("c meta sidon n={n} max={top} cap={cap}");
            println!("c meta audit sums_distinct {}", if is_sidon(&s) { "pass" } else { "fail" });
            println!("v {}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            Ok(())
        }
        GenCommand::MccPipeline { file, stage, out } => {
            let mcc = parse_mcc(file, &read_file(file)?)?;
            let p = full_pipeline(&mcc).map_err(|e| Failure::Data(e.to_string()))?;
            let comments = meta(p.meta_lines());
            let text = match stage {
                Stage::Directed => write_multi_instance(&p.mdedp.inst, &comments),
                Stage::Balanced => write_multi_instance(&p.eulerized.inst, &comments),
                Stage::Undirected => write_multi_instance(&p.muedp, &comments),
                Stage::Edp => write_instance_with_comments(&p.edp.inst, &comments),
            };
            emit(&text, out.as_deref())
        }
        GenCommand::Medp { n1, n2, n3, base, out } => {
            let (graph, ends): (Multigraph, Vec<(usize, usize)>) = match read_instance(base)? {
                ParsedInstance::Edp(i) => (i.graph, i.pairs.iter().map(|p| (p.s, p.t)).collect()),
                ParsedInstance::Multi(i) => (i.graph.undirected(), i.demands.iter().map(|d| (d.s, d.t)).collect()),
            };
            if ends.len() < 3 {
                return Err(Failure::Data(format!("{}: needs three terminal pairs", base.display())));
            }
            let demands = ends
                .iter()
                .zip([*n1, *n2, *n3])
                .map(|(&(s, t), count)| Demand { s, t, count })
                .collect();
            let x = medp_to_edp(&MultiDemandInstance { graph, demands }).map_err(|e| Failure::Data(e.to_string()))?;
            let d = x.deletion_set();
            let worst = max_pairs_per_component(&x.inst, &d);
            let comments = meta([
                format!("generator medp counts={n1},{n2},{n3}"),
                format!("n={} m={} pairs={}", x.inst.graph.n(), x.inst.graph.m(), x.inst.pairs.len()),
                format!("deletion_set {}", d.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
                format!(
                    "audit pairs_per_component {} max={worst}",
                    if worst <= 1 { "pass" } else { "fail" }
                ),
            ]);
            emit(&write_instance_with_comments(&x.inst, &comments), out.as_deref())
        }
    }
}
