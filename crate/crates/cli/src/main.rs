//! `edpkit`: solve, verify, generate, and inspect edge-disjoint paths instances.

mod gen;
mod solve;
mod stats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use edpkit_core::instance::{verify_multi_solution, verify_solution, MultiPathSet, Verdict};
use edpkit_core::io::{parse_instance, parse_solution, ParsedInstance};

/// Exit codes: 0 yes, 1 no, 2 unknown; 64 and up for usage and I/O trouble.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    NoInput(String),
    CantCreate(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
            Failure::NoInput(_) => 66,
            Failure::CantCreate(_) => 73,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::NoInput(m) | Failure::CantCreate(m) => m,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::NoInput(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> Result<ParsedInstance, Failure> {
    parse_instance(&read_file(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::CantCreate(format!("{}: {e}", path.display())))
}

#[derive(Parser)]
#[command(name = "edpkit", version, about = "Exact structural solvers for edge-disjoint paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide instances and write a solution file next to each yes instance.
    Solve(solve::SolveArgs),
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Generate instances from the hardness constructions.
    Gen {
        #[command(subcommand)]
        what: gen::GenCommand,
    },
    /// Structural parameters of an instance.
    Stats(stats::StatsArgs),
}

fn verify(instance: &Path, solution: &Path) -> Result<u8, Failure> {
    let parsed = read_instance(instance)?;
    let text = read_file(solution)?;
    let (pairs, m) = match &parsed {
        ParsedInstance::Edp(i) => (i.pairs.len(), i.graph.m()),
        ParsedInstance::Multi(i) => (i.demands.iter().map(|d| d.count).sum(), i.graph.m()),
    };
    let sol = parse_solution(&text, pairs, m).map_err(|e| Failure::Data(format!("{}: {e}", solution.display())))?;
    if !sol.yes {
        println!("s unchecked: the solution file claims no");
        return Ok(2);
    }
    let verdict = match &parsed {
        ParsedInstance::Edp(i) => verify_solution(i, &sol.paths),
        ParsedInstance::Multi(i) => {
            let mut units = sol.paths.paths.into_iter();
            let paths = i.demands.iter().map(|d| units.by_ref().take(d.count).collect()).collect();
            verify_multi_solution(i, &MultiPathSet { paths })
        }
    };
    match verdict {
        Verdict::Accept => {
            println!("s accept");
            Ok(0)
        }
        Verdict::Reject(reason) => {
            println!("s reject: {reason}");
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve(args) => solve::run(&args),
        Command::Verify { instance, solution } => verify(&instance, &solution),
        Command::Gen { what } => gen::run(&what).map(|()| 0),
        Command::Stats(args) => stats::run(&args).map(|()| 0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("edpkit: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
