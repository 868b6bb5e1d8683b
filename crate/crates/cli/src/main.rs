use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use instantia_core::engine::{
    self, EngineKind, EngineResult, InitialPathChoice, Limits, Options, Outcome,
};
use instantia_core::frontend::fuzz::{generate, FuzzConfig};
use instantia_core::frontend::{
    find_falsified_instance, herbrand_oracle, parse_certificate, parse_tptp_cnf, verify_model,
    Problem, RunReport, DEFAULT_GROUND_BOUND,
};
use instantia_core::sat::{self, PropCnf, SatResult};

const EXIT_DEFINITE: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "instantia",
    version,
    about = "Instance-based theorem proving for clause sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engine, or all four, on a TPTP CNF file.
    Prove(ProveArgs),
    /// Decide a function-free problem by full grounding.
    Oracle { file: PathBuf },
    /// Check a model certificate against a problem.
    Verify { file: PathBuf, cert: PathBuf },
    /// Solve a DIMACS CNF file.
    Sat { file: PathBuf },
    /// Run every engine against the oracle on seeded random problems.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        timeout: u64,
    },
}

#[derive(clap::Args)]
struct ProveArgs {
    /// instgen, hyperlink, disconnection, fdpll or all
    #[arg(long, default_value = "all")]
    engine: String,
    /// Wall-clock limit per engine, in seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    /// Cap on clause instances, tableau nodes or tree nodes [default: 100000]
    #[arg(long)]
    max_instances: Option<usize>,
    /// Write the final propositional abstraction (instgen, hyperlink).
    #[arg(long)]
    dump_dimacs: Option<PathBuf>,
    /// Write the final tree (disconnection, fdpll).
    #[arg(long)]
    dump_tree: Option<PathBuf>,
    /// `first` or `random:<seed>`
    #[arg(long)]
    initial_path: Option<InitialPathChoice>,
    /// Shorthand for `--initial-path=random:<N>`.
    #[arg(long, conflicts_with = "initial_path")]
    seed: Option<u64>,
    /// Write the model or proof here.
    #[arg(long)]
    certificate: Option<PathBuf>,
    file: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_DEFINITE
            });
        }
    };
    let result = match cli.command {
        Command::Prove(args) => prove(args),
        Command::Oracle { file } => oracle(&file),
        Command::Verify { file, cert } => verify(&file, &cert),
        Command::Sat { file } => solve_dimacs(&file),
        Command::Fuzz {
            count,
            seed,
            timeout,
        } => fuzz(count, seed, timeout),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("instantia: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load_problem(path: &Path) -> Result<Problem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tptp_cnf(&text).with_context(|| format!("parsing {}", path.display()))
}

fn engines_for(name: &str) -> Result<Vec<EngineKind>> {
    if name == "all" {
        return Ok(EngineKind::ALL.to_vec());
    }
    match name.parse() {
        Ok(kind) => Ok(vec![kind]),
        Err(e) => bail!("{e}"),
    }
}

fn run_all(kinds: &[EngineKind], problem: &Problem, options: &Options) -> Vec<(Outcome, Duration)> {
    let mut runs: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|&kind| {
                s.spawn(move || {
                    let start = Instant::now();
                    let outcome = engine::run(kind, &problem.clauses, options);
                    (outcome, start.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("engine thread panicked"))
            .collect()
    });
    runs.sort_by_key(|(o, _)| o.engine);
    runs
}

// With several engines, per-engine output files get the engine name appended.
fn output_path(base: &Path, kind: EngineKind, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let mut s = base.as_os_str().to_owned();
    s.push(format!(".{kind}"));
    PathBuf::from(s)
}

fn prove(args: ProveArgs) -> Result<u8> {
    let kinds = engines_for(&args.engine)?;
    let problem = load_problem(&args.file)?;
    let mut limits = Limits {
        timeout: Duration::from_secs(args.timeout),
        ..Limits::default()
    };
    if let Some(n) = args.max_instances {
        limits.max_instances = n;
    }
    let initial_path = match (args.initial_path, args.seed) {
        (Some(choice), _) => choice,
        (None, Some(seed)) => InitialPathChoice::Random(seed),
        (None, None) => InitialPathChoice::First,
    };
    let options = Options {
        limits,
        initial_path,
        dump: args.dump_dimacs.is_some() || args.dump_tree.is_some(),
    };

    let many = kinds.len() > 1;
    let runs = run_all(&kinds, &problem, &options);
    let mut statuses = Vec::new();
    for (outcome, wall) in &runs {
        let kind = outcome.engine;
        let dump_target = match kind {
            EngineKind::InstGen | EngineKind::HyperLink => args.dump_dimacs.as_deref(),
            EngineKind::Disconnection | EngineKind::Fdpll => args.dump_tree.as_deref(),
        };
        if let (Some(base), Some(dump)) = (dump_target, &outcome.dump) {
            let path = output_path(base, kind, many);
            fs::write(&path, dump).with_context(|| format!("writing {}", path.display()))?;
        }
        let body = match &outcome.result {
            EngineResult::Unsatisfiable(proof) => Some(proof.text.clone()),
            EngineResult::Satisfiable(model) => Some(model.to_text()),
            EngineResult::ResourceOut(_) => None,
        };
        let certificate = match (&args.certificate, body) {
            (Some(base), Some(body)) => {
                let path = output_path(base, kind, many);
                fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                Some(path)
            }
            _ => None,
        };
        let report = RunReport {
            engine: kind,
            status: outcome.result.status(),
            wall: *wall,
            stats: outcome.stats.clone(),
            certificate,
        };
        if !many {
            println!("% SZS status {} for {}", report.status, args.file.display());
        }
        println!("{report}");
        if let EngineResult::ResourceOut(why) = &outcome.result {
            println!("% {kind}: {why}");
        }
        statuses.push(outcome.result.status());
    }

    let definite: Vec<_> = statuses.iter().filter(|s| **s != "ResourceOut").collect();
    if definite.windows(2).any(|w| w[0] != w[1]) {
        eprintln!("instantia: engines disagree");
        return Ok(EXIT_DISAGREE);
    }
    if definite.len() < statuses.len() {
        return Ok(EXIT_RESOURCE);
    }
    Ok(EXIT_DEFINITE)
}

fn oracle(file: &Path) -> Result<u8> {
    let problem = load_problem(file)?;
    let outcome = herbrand_oracle(&problem, DEFAULT_GROUND_BOUND)?;
    println!("% SZS status {} for {}", outcome.status(), file.display());
    println!("% ground clauses: {}", outcome.ground_clauses);
    Ok(EXIT_DEFINITE)
}

fn verify(file: &Path, cert: &Path) -> Result<u8> {
    let problem = load_problem(file)?;
    let text = fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
    let mut model =
        parse_certificate(&text).with_context(|| format!("parsing {}", cert.display()))?;
    model.domain = problem.domain();
    if verify_model(&problem, &model)? {
        println!("% certificate verified");
        return Ok(EXIT_DEFINITE);
    }
    if let Some(ground) = find_falsified_instance(&problem, &model)? {
        let lits: Vec<String> = ground.iter().map(|l| l.to_string()).collect();
        println!("% falsified: {}", lits.join(" | "));
    }
    println!("% certificate rejected");
    Ok(EXIT_INPUT)
}

fn solve_dimacs(file: &Path) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cnf = PropCnf::from_dimacs(&text).with_context(|| format!("parsing {}", file.display()))?;
    match sat::solve(&cnf) {
        SatResult::Sat(a) => {
            println!("SAT");
            println!("{}", a.to_dimacs_line());
        }
        SatResult::Unsat => println!("UNSAT"),
    }
    Ok(EXIT_DEFINITE)
}

fn fuzz(count: u64, seed: u64, timeout: u64) -> Result<u8> {
    let config = FuzzConfig::default();
    let options = Options {
        limits: Limits {
            timeout: Duration::from_secs(timeout),
            ..Limits::default()
        },
        ..Options::default()
    };
    let mut bad = 0;
    for s in seed..seed + count {
        let problem = generate(s, &config);
        let expected = herbrand_oracle(&problem, DEFAULT_GROUND_BOUND)?.status();
        for (outcome, _) in run_all(&EngineKind::ALL, &problem, &options) {
            let status = outcome.result.status();
            let model_ok = match outcome.result.certificate() {
                Some(m) => verify_model(&problem, m)?,
                None => true,
            };
            if status != expected || !model_ok {
                bad += 1;
                println!(
                    "seed {s}: {}: {status}, oracle {expected}{}",
                    outcome.engine,
                    if model_ok { "" } else { ", model rejected" }
                );
            }
        }
    }
    println!("% {count} problems, {bad} failures");
    Ok(if bad == 0 {
        EXIT_DEFINITE
    } else {
        EXIT_DISAGREE
    })
}
