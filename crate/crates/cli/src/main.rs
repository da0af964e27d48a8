use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use rmc_cli::{bench, check, exit, invariant_dot, load_model, model_files, to_csv, to_table};
use rmc_core::learner::ExactTeacher;
use rmc_core::model_io::parse_regex;
use rmc_core::automata::compile_regex;
use rmc_core::{export_dot, run_learner, Algorithm, Alphabet, LearnConfig, Limits};

#[derive(Parser)]
#[command(name = "rmc", version, about = "Learn regular inductive invariants for parameterised systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a model safe or find a reachable bad configuration.
    Check(CheckArgs),
    /// Learn a regular language from a regex with an exact teacher.
    Learn(LearnArgs),
    /// Run every model in a directory with every learner.
    Bench(BenchArgs),
}

#[derive(Args)]
struct CheckArgs {
    model: PathBuf,
    #[arg(long, default_value = "rs")]
    learner: Algorithm,
    /// Wall-clock limit in seconds; 0 disables it.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
    /// Write the invariant of a safe run as GraphViz.
    #[arg(long, value_name = "PATH")]
    emit_invariant: Option<PathBuf>,
    #[arg(long)]
    stats: bool,
    /// Omit wall-clock time so that output is byte-identical across runs.
    #[arg(long)]
    seedless_deterministic: bool,
}

#[derive(Args)]
struct LearnArgs {
    /// Target language, in model-file regex syntax.
    regex: String,
    /// Symbols, separated by spaces or commas.
    #[arg(long, default_value = "T N")]
    alphabet: String,
    #[arg(long, default_value = "rs")]
    learner: Algorithm,
    /// Print the learned automaton as GraphViz.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "models")]
    dir: PathBuf,
    /// Learners to run, comma-separated; all by default.
    #[arg(long, value_delimiter = ',')]
    learners: Vec<Algorithm>,
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
    /// Also write CSV to this path; `-` prints CSV instead of the table.
    #[arg(long, value_name = "PATH")]
    csv: Option<String>,
}

fn limits(timeout: f64, max_states: usize) -> Limits {
    Limits {
        timeout: (timeout > 0.0).then(|| Duration::from_secs_f64(timeout)),
        max_states,
        ..Limits::default()
    }
}

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(exit::INPUT_ERROR)
}

fn run_check(args: CheckArgs) -> ExitCode {
    let problem = match load_model(&args.model) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let report = match check(&problem, args.learner, &limits(args.timeout, args.max_states)) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    print!("{}", report.render(args.stats, !args.seedless_deterministic));
    if let (Some(path), Some(dot)) = (&args.emit_invariant, invariant_dot(&report)) {
        if let Err(e) = fs::write(path, dot) {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(report.exit_code())
}

fn run_learn(args: LearnArgs) -> ExitCode {
    let symbols = args.alphabet.split([' ', ',']).filter(|s| !s.is_empty());
    let alphabet = match Alphabet::new(symbols) {
        Ok(a) => a,
        Err(e) => return input_error(e),
    };
    let target = match parse_regex(&args.regex, &alphabet).and_then(|r| compile_regex(&r, &alphabet)) {
        Ok(nfa) => nfa.determinize().minimize(),
        Err(e) => return input_error(e),
    };
    let mut teacher = ExactTeacher::new(target.clone());
    let out = run_learner(args.learner, &mut teacher, &LearnConfig::default());
    if !out.hypothesis.language_eq(&target) {
        println!("UNKNOWN");
        println!("reason: learner stopped early ({:?})", out.end);
        return ExitCode::from(exit::UNKNOWN);
    }
    let dfa = out.hypothesis.minimize();
    println!("learned: {} states, {} transitions", dfa.num_states(), dfa.num_transitions());
    println!("learner: {}", args.learner);
    println!("membership queries: {}", out.stats.membership_queries);
    println!("equivalence queries: {}", out.stats.equivalence_queries);
    if args.dot {
        print!("{}", export_dot(&dfa));
    }
    ExitCode::SUCCESS
}

fn run_bench(args: BenchArgs) -> ExitCode {
    let files = match model_files(&args.dir) {
        Ok(f) => f,
        Err(e) => return input_error(format!("{}: {e}", args.dir.display())),
    };
    let learners = if args.learners.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        args.learners
    };
    let rows = bench(&files, &learners, &limits(args.timeout, args.max_states));
    match args.csv.as_deref() {
        Some("-") => print!("{}", to_csv(&rows)),
        Some(path) => {
            print!("{}", to_table(&rows));
            if let Err(e) = fs::write(path, to_csv(&rows)) {
                return input_error(format!("{path}: {e}"));
            }
        }
        None => print!("{}", to_table(&rows)),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::INPUT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Check(args) => run_check(args),
        Command::Learn(args) => run_learn(args),
        Command::Bench(args) => run_bench(args),
    }
}
