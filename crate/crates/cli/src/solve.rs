use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};

use edpkit_core::fracture::{find_fracture_modulator, solve_fracture_with, ModulatorMode};
use edpkit_core::graph::{find_fvs_one, FvsOne};
use edpkit_core::instance::{augmented_graph, normalize_instance, verify_solution, EdpInstance, PathSet};
use edpkit_core::io::{write_solution, ParsedInstance};
use edpkit_core::oracle::{brute_force_edp, brute_force_multi, Outcome, DEFAULT_BUDGET};
use edpkit_core::sedp::solve_sedp;
use edpkit_core::twdp::{decompose, solve_twdp_with, TwdpPlan};

use crate::{read_instance, write_file, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// sedp when one vertex meets every cycle, else fracture within --kmax,
    /// else twdp within --width-limit, else brute within --budget
    Auto,
    Sedp,
    Twdp,
    Fracture,
    Brute,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    pub engine: Engine,
    /// Largest fracture modulator to search for.
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Largest decomposition width the twdp engine accepts.
    #[arg(long, default_value_t = 4)]
    pub width_limit: usize,
    /// Search-node budget of the brute-force engine.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Instances solved concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Delete whole connected pieces instead of branching (modulator up to (k+1)k).
    #[arg(long)]
    pub approx_modulator: bool,
    /// Solution path for a single input; default `<input>.sol`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

pub enum Answer {
    Yes(PathSet),
    No,
    Unknown(String),
}

impl Answer {
    fn exit_code(&self) -> u8 {
        match self {
            Answer::Yes(_) => 0,
            Answer::No => 1,
            Answer::Unknown(_) => 2,
        }
    }
}

#[derive(Default)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub pairs: usize,
    pub fvs_one: Option<bool>,
    pub fracture_bound: Option<usize>,
    pub width: Option<usize>,
}

pub struct RunReport {
    pub engine: &'static str,
    pub answer: Answer,
    pub wall: Duration,
    pub stats: Stats,
    pub solution: Option<PathBuf>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

impl RunReport {
    pub fn render(&self) -> String {
        let s = &self.stats;
        let mut out = String::new();
        let _ = writeln!(out, "c engine {}", self.engine);
        let _ = writeln!(
            out,
            "c n={} m={} pairs={} fvs_one={} fracture_bound={} width={}",
            s.n,
            s.m,
            s.pairs,
            s.fvs_one.map_or("-", |b| if b { "yes" } else { "no" }),
            opt(&s.fracture_bound),
            opt(&s.width)
        );
        let _ = writeln!(out, "c time_ms {:.3}", self.wall.as_secs_f64() * 1e3);
        if let Some(p) = &self.solution {
            let _ = writeln!(out, "c solution {}", p.display());
        }
        match &self.answer {
            Answer::Yes(_) => out.push_str("s yes\n"),
            Answer::No => out.push_str("s no\n"),
            Answer::Unknown(why) => {
                let _ = writeln!(out, "s unknown: {why}");
            }
        }
        out
    }
}

fn brute(inst: &EdpInstance, budget: u64) -> Answer {
    match brute_force_edp(inst, budget) {
        Outcome::Yes(p) => Answer::Yes(p),
        Outcome::No => Answer::No,
        Outcome::BudgetExceeded => Answer::Unknown(format!("brute-force budget {budget} exhausted")),
    }
}

fn sedp(inst: &EdpInstance) -> Answer {
    match solve_sedp(inst) {
        Ok(Some(p)) => Answer::Yes(p),
        Ok(None) => Answer::No,
        Err(e) => Answer::Unknown(e.to_string()),
    }
}

fn mode(args: &SolveArgs) -> ModulatorMode {
    if args.approx_modulator {
        ModulatorMode::Approx
    } else {
        ModulatorMode::Exact
    }
}

/// Smallest `k <= kmax` with a modulator of the normalized augmented graph.
fn fracture_bound(inst: &EdpInstance, args: &SolveArgs) -> Option<usize> {
    let aug = augmented_graph(&normalize_instance(inst));
    (0..=args.kmax).find(|&k| find_fracture_modulator(&aug, k, mode(args)).is_some())
}

fn fracture(inst: &EdpInstance, args: &SolveArgs) -> Answer {
    match solve_fracture_with(inst, args.kmax, mode(args)) {
        Ok(Some(p)) => Answer::Yes(p),
        Ok(None) => Answer::No,
        Err(e) => Answer::Unknown(e.to_string()),
    }
}

/// Runs twdp only when the decomposition found has width within the limit.
fn twdp(inst: &EdpInstance, limit: usize, stats: &mut Stats) -> Answer {
    let core = TwdpPlan::core_vertices(inst);
    let td = match decompose(&inst.graph, &core, limit) {
        Ok(td) => td,
        Err(e) => return Answer::Unknown(e.to_string()),
    };
    stats.width = Some(td.width());
    if td.width() > limit {
        return Answer::Unknown(format!("decomposition width {} above limit {limit}", td.width()));
    }
    match solve_twdp_with(inst, &td) {
        Some(p) => Answer::Yes(p),
        None => Answer::No,
    }
}

fn decide(inst: &EdpInstance, args: &SolveArgs, stats: &mut Stats) -> (&'static str, Answer) {
    match args.engine {
        Engine::Sedp => ("sedp", sedp(inst)),
        Engine::Fracture => {
            stats.fracture_bound = fracture_bound(inst, args);
            ("fracture", fracture(inst, args))
        }
        Engine::Twdp => ("twdp", twdp(inst, args.width_limit, stats)),
        Engine::Brute => ("brute", brute(inst, args.budget)),
        Engine::Auto => {
            let fvs_one = !matches!(find_fvs_one(&inst.graph), FvsOne::Absent);
            stats.fvs_one = Some(fvs_one);
            if fvs_one {
                return ("sedp", sedp(inst));
            }
            stats.fracture_bound = fracture_bound(inst, args);
            if stats.fracture_bound.is_some() {
                let a = fracture(inst, args);
                if !matches!(a, Answer::Unknown(_)) {
                    return ("fracture", a);
                }
            }
            let a = twdp(inst, args.width_limit, stats);
            if !matches!(a, Answer::Unknown(_)) {
                return ("twdp", a);
            }
            ("brute", brute(inst, args.budget))
        }
    }
}

fn solution_path(file: &Path, args: &SolveArgs) -> PathBuf {
    args.out.clone().unwrap_or_else(|| {
        let mut name = file.as_os_str().to_owned();
        name.push(".sol");
        PathBuf::from(name)
    })
}

pub fn solve_file(file: &Path, args: &SolveArgs) -> Result<RunReport, Failure> {
    let parsed = read_instance(file)?;
    let start = Instant::now();
    let (engine, answer, stats, text) = match parsed {
        ParsedInstance::Edp(inst) => {
            let mut stats = Stats {
                n: inst.graph.n(),
                m: inst.graph.m(),
                pairs: inst.pairs.len(),
                ..Stats::default()
            };
            let (engine, mut answer) = decide(&inst, args, &mut stats);
            if let Answer::Yes(p) = &answer {
                if let edpkit_core::instance::Verdict::Reject(why) = verify_solution(&inst, p) {
                    answer = Answer::Unknown(format!("{engine} produced an invalid solution: {why}"));
                }
            }
            let text = match &answer {
                Answer::Yes(p) => Some(write_solution(Some(p))),
                _ => None,
            };
            (engine, answer, stats, text)
        }
        // multi-demand files only have the exhaustive engine; units are
        // written as consecutive pairs, demand by demand
        ParsedInstance::Multi(inst) => {
            let stats = Stats {
                n: inst.graph.n(),
                m: inst.graph.m(),
                pairs: inst.demands.iter().map(|d| d.count).sum(),
                ..Stats::default()
            };
            let answer = match brute_force_multi(&inst, args.budget) {
                Outcome::Yes(p) => Answer::Yes(PathSet {
                    paths: p.paths.into_iter().flatten().collect(),
                }),
                Outcome::No => Answer::No,
                Outcome::BudgetExceeded => Answer::Unknown(format!("brute-force budget {} exhausted", args.budget)),
            };
            let text = match &answer {
                Answer::Yes(p) => Some(write_solution(Some(p))),
                _ => None,
            };
            ("brute", answer, stats, text)
        }
    };
    let wall = start.elapsed();
    let mut solution = None;
    if let Some(text) = text {
        let path = solution_path(file, args);
        write_file(&path, &text)?;
        solution = Some(path);
    }
    Ok(RunReport {
        engine,
        answer,
        wall,
        stats,
        solution,
    })
}

/// Solves every file, `--jobs` at a time; the exit code is the largest one seen.
pub fn run(args: &SolveArgs) -> Result<u8, Failure> {
    if args.out.is_some() && args.files.len() > 1 {
        return Err(Failure::Usage("--out needs a single input file".into()));
    }
    if args.jobs == 0 {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    let results: Vec<Mutex<Option<Result<RunReport, Failure>>>> = args.files.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.min(args.files.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(file) = args.files.get(i) else {
                    break;
                };
                *results[i].lock().expect("no panics while held") = Some(solve_file(file, args));
            });
        }
    });
    let mut code = 0;
    for (file, slot) in args.files.iter().zip(results) {
        let result = slot.into_inner().expect("no panics while held").expect("every file is taken");
        if args.files.len() > 1 {
            println!("c file {}", file.display());
        }
        match result {
            Ok(report) => {
                print!("{}", report.render());
                code = code.max(report.answer.exit_code());
            }
            Err(f) => {
                if args.files.len() == 1 {
                    return Err(f);
                }
                eprintln!("edpkit: {}", f.message());
                code = code.max(f.code());
            }
        }
    }
    Ok(code)
}
