//! Report types and command logic behind the `rmc` binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rmc_core::teacher::ProverOutcome;
use rmc_core::{export_dot, parse_model, run_prover, Algorithm, Dfa, Error, LearnerStats, Limits, RmcProblem, Verdict};

/// Process exit codes.
pub mod exit {
    pub const SAFE: u8 = 0;
    pub const UNSAFE: u8 = 1;
    pub const UNKNOWN: u8 = 2;
    pub const INPUT_ERROR: u8 = 3;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Safe { states: usize, transitions: usize },
    Unsafe { witness: String },
    Unknown { reason: String },
}

/// Summary of one prover run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub learner: Algorithm,
    pub verdict: VerdictKind,
    pub stats: LearnerStats,
    pub elapsed: Duration,
    pub invariant: Option<Dfa>,
}

impl RunReport {
    pub fn from_outcome(p: &RmcProblem, learner: Algorithm, out: ProverOutcome) -> Self {
        let (verdict, invariant) = match out.verdict {
            Verdict::Safe(inv) => (
                VerdictKind::Safe {
                    states: inv.num_states(),
                    transitions: inv.num_transitions(),
                },
                Some(inv),
            ),
            Verdict::Unsafe(w) => (
                VerdictKind::Unsafe {
                    witness: p.alphabet().format_word(&w),
                },
                None,
            ),
            Verdict::Unknown(reason) => (VerdictKind::Unknown { reason }, None),
        };
        RunReport {
            learner,
            verdict,
            stats: out.stats,
            elapsed: out.elapsed,
            invariant,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.verdict {
            VerdictKind::Safe { .. } => "SAFE",
            VerdictKind::Unsafe { .. } => "UNSAFE",
            VerdictKind::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            VerdictKind::Safe { .. } => exit::SAFE,
            VerdictKind::Unsafe { .. } => exit::UNSAFE,
            VerdictKind::Unknown { .. } => exit::UNKNOWN,
        }
    }

    /// The verdict line followed by its detail line, and statistics when
    /// asked for. Wall-clock time is left out when `timing` is false.
    pub fn render(&self, stats: bool, timing: bool) -> String {
        let mut out = format!("{}\n", self.label());
        match &self.verdict {
            VerdictKind::Safe { states, transitions } => {
                writeln!(out, "invariant: {states} states, {transitions} transitions").unwrap()
            }
            VerdictKind::Unsafe { witness } => writeln!(out, "witness: {witness}").unwrap(),
            VerdictKind::Unknown { reason } => writeln!(out, "reason: {reason}").unwrap(),
        }
        if stats {
            writeln!(out, "learner: {}", self.learner).unwrap();
            writeln!(out, "membership queries: {}", self.stats.membership_queries).unwrap();
            writeln!(out, "equivalence queries: {}", self.stats.equivalence_queries).unwrap();
            writeln!(out, "iterations: {}", self.stats.iterations).unwrap();
            writeln!(out, "hypothesis states: {}", self.stats.final_states).unwrap();
            if timing {
                writeln!(out, "time: {} ms", self.elapsed.as_millis()).unwrap();
            }
        }
        out
    }
}

/// Reads and parses a model file, with the path in any diagnostic.
pub fn load_model(path: &Path) -> Result<RmcProblem, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_model(&text).map_err(|e| format!("{}:{e}", path.display()))
}

pub fn check(p: &RmcProblem, learner: Algorithm, limits: &Limits) -> Result<RunReport, Error> {
    let out = run_prover(p, learner, limits)?;
    Ok(RunReport::from_outcome(p, learner, out))
}

/// One line of the benchmark table.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub model: String,
    pub learner: Algorithm,
    pub report: Option<RunReport>,
}

pub const CSV_HEADER: &str = "model,learner,verdict,states,transitions,mem_q,equ_q,ms";

impl BenchRow {
    fn cells(&self) -> [String; 8] {
        let learner = self.learner.to_string();
        let Some(r) = &self.report else {
            let blank = String::new;
            return [self.model.clone(), learner, "UNKNOWN".into(), blank(), blank(), blank(), blank(), blank()];
        };
        let (states, transitions) = match r.verdict {
            VerdictKind::Safe { states, transitions } => (states.to_string(), transitions.to_string()),
            _ => (String::new(), String::new()),
        };
        [
            self.model.clone(),
            learner,
            r.label().into(),
            states,
            transitions,
            r.stats.membership_queries.to_string(),
            r.stats.equivalence_queries.to_string(),
            r.elapsed.as_millis().to_string(),
        ]
    }
}

/// Model files (`*.rmc`) in `dir`, sorted by name.
pub fn model_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "rmc"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every learner on every model. A model that fails to load gets one
/// UNKNOWN row per learner.
pub fn bench(files: &[PathBuf], learners: &[Algorithm], limits: &Limits) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for path in files {
        let model = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let problem = load_model(path).ok();
        for &learner in learners {
            let report = problem.as_ref().and_then(|p| check(p, learner, limits).ok());
            rows.push(BenchRow {
                model: model.clone(),
                learner,
                report,
            });
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for row in rows {
        out.push_str(&row.cells().join(","));
        out.push('\n');
    }
    out
}

/// Column-aligned text table with the CSV header as column titles.
pub fn to_table(rows: &[BenchRow]) -> String {
    let header: Vec<String> = CSV_HEADER.split(',').map(String::from).collect();
    let body: Vec<[String; 8]> = rows.iter().map(BenchRow::cells).collect();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for cells in &body {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| if i < 3 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for cells in &body {
        out.push_str(&line(cells));
    }
    out
}

/// GraphViz text for a safe run's invariant.
pub fn invariant_dot(report: &RunReport) -> Option<String> {
    report.invariant.as_ref().map(export_dot)
}
