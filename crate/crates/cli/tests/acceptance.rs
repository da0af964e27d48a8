//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rmc_core::learner::{ExactTeacher, LearnEnd, Teacher};
use rmc_core::teacher::ProverOutcome;
use rmc_core::{
    check_invariant, parse_model, parse_model_doc, run_learner, run_prover, Algorithm, Alphabet, LearnConfig,
    Limits, ModelDoc, RmcProblem, RmcTeacher, Verdict, Word,
};
use rmc_testkit::{brute_reachable, random_dfa};

const ONE_SECOND: Duration = Duration::from_secs(1);
const RANDOM_TARGETS: usize = 120;

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(models_dir().join(name)).unwrap()
}

fn bundled() -> Vec<(String, ModelDoc)> {
    let mut out: Vec<_> = std::fs::read_dir(models_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rmc"))
        .map(|p| {
            let doc = parse_model_doc(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), doc)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn traced() -> Limits {
    Limits {
        record_trace: true,
        ..Limits::default()
    }
}

/// Every prover verdict produced by the suite, for the soundness audit.
#[derive(Default)]
struct Audit {
    runs: Vec<(String, RmcProblem, Verdict)>,
}

impl Audit {
    fn prove(&mut self, label: &str, p: &RmcProblem, alg: Algorithm, limits: &Limits) -> ProverOutcome {
        let out = run_prover(p, alg, limits).unwrap();
        self.runs.push((format!("{label}/{alg}"), p.clone(), out.verdict.clone()));
        out
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(audit: &mut Audit) -> Outcome {
    let mut checked = 0;
    for name in ["herman_linear.rmc", "herman_ring.rmc"] {
        let p = parse_model(&read(name)).unwrap();
        for alg in Algorithm::ALL.into_iter().filter(|a| a.is_deterministic()) {
            let out = audit.prove(name, &p, alg, &Limits::default());
            let Verdict::Safe(inv) = &out.verdict else {
                return Err(format!("{name} {alg}: {:?}", out.verdict));
            };
            let size = (inv.num_states(), inv.num_transitions());
            ensure(size == (2, 4), || format!("{name} {alg}: invariant {size:?}, expected (2, 4)"))?;
            ensure(out.elapsed < ONE_SECOND, || format!("{name} {alg}: took {:?}", out.elapsed))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} runs, all 2 states / 4 transitions under 1 s"))
}

fn criterion_2(audit: &mut Audit) -> Outcome {
    let p = parse_model(&read("israeli_jalfon.rmc")).unwrap();
    let out = audit.prove("israeli_jalfon", &p, Algorithm::RivestSchapire, &traced());
    let Verdict::Safe(inv) = &out.verdict else {
        return Err(format!("verdict {:?}", out.verdict));
    };
    let size = (inv.num_states(), inv.num_transitions());
    let words: Vec<String> = out.counterexamples.iter().map(|c| p.alphabet().format_word(&c.word)).collect();
    let mut problems = Vec::new();
    if size != (4, 8) {
        problems.push(format!("invariant {size:?}, expected (4, 8)"));
    }
    if out.stats.equivalence_queries != 3 {
        problems.push(format!("{} equivalence queries, expected 3", out.stats.equivalence_queries));
    }
    if words != ["TT", "NNN"] {
        problems.push(format!("counterexamples {words:?}, expected [\"TT\", \"NNN\"]"));
    }
    if out.elapsed >= ONE_SECOND {
        problems.push(format!("took {:?}", out.elapsed));
    }
    let detail = format!(
        "{} states / {} transitions, {} equivalence queries, counterexamples {words:?}",
        size.0, size.1, out.stats.equivalence_queries
    );
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; observed {detail}", problems.join("; ")))
    }
}

fn criterion_3(audit: &mut Audit) -> Outcome {
    let mut checked = 0;
    for name in ["herman_linear.rmc", "herman_ring.rmc"] {
        let p = parse_model(&read(name)).unwrap();
        let out = audit.prove(name, &p, Algorithm::RivestSchapire, &traced());
        ensure(matches!(out.verdict, Verdict::Safe(_)), || format!("{name}: {:?}", out.verdict))?;
        ensure(out.stats.equivalence_queries == 1, || {
            format!("{name}: {} equivalence queries", out.stats.equivalence_queries)
        })?;
        let table = out.trace[0].table.as_ref().unwrap();
        let w = |s: &str| p.alphabet().parse_word(s).unwrap();
        ensure(table.prefixes == [w("eps"), w("T")], || format!("{name}: S = {:?}", table.prefixes))?;
        ensure(table.suffixes == [w("eps")], || format!("{name}: E = {:?}", table.suffixes))?;
        for (s, expected) in [("eps", false), ("T", true), ("N", false), ("TT", false), ("TN", true)] {
            let got = table.entry(&w(s));
            ensure(got == Some(expected), || format!("{name}: entry {s} is {got:?}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} Herman variants: S={{λ,T}}, E={{λ}}, entries match, 1 equivalence query"))
}

fn criterion_4() -> Outcome {
    let mut words = 0;
    for (name, doc) in bundled() {
        let p = doc.to_problem().unwrap();
        let mut teacher = RmcTeacher::new(&p);
        for k in 0..=5 {
            let reachable = brute_reachable(&doc, k);
            for w in Word::all_of_length(doc.alphabet.len(), k) {
                let got = teacher.membership(&w);
                ensure(got == reachable.contains(&w), || format!("{name}: membership({w:?}) = {got}"))?;
                words += 1;
            }
        }
    }
    Ok(format!("{words} words across all bundled models agree with explicit BFS"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut targets = 0;
    while targets < RANDOM_TARGETS {
        let k = rng.gen_range(2..=3);
        let sigma = Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap();
        let states = rng.gen_range(1..=6);
        let target = random_dfa(&mut rng, &sigma, states).minimize();
        let n = target.num_states();
        for alg in Algorithm::ALL {
            let mut teacher = ExactTeacher::new(target.clone());
            let out = run_learner(alg, &mut teacher, &LearnConfig::default());
            ensure(out.end == LearnEnd::Equal, || format!("{alg}: ended with {:?}", out.end))?;
            ensure(out.hypothesis.language_eq(teacher.target()), || format!("{alg}: wrong language"))?;
            if matches!(alg, Algorithm::RivestSchapire | Algorithm::KearnsVazirani) {
                ensure(out.stats.equivalence_queries <= n, || {
                    format!("{alg}: {} equivalence queries for {n} states", out.stats.equivalence_queries)
                })?;
            }
        }
        targets += 1;
    }
    Ok(format!("{targets} random minimal targets (≤ 6 states, |Σ| ∈ {{2,3}}), 5 learners each"))
}

fn random_problem(rng: &mut impl Rng) -> RmcProblem {
    let pick = |rng: &mut dyn rand::RngCore, options: &[&str]| options[rng.gen_range(0..options.len())].to_string();
    let init = pick(rng, &["a* b a*", "(a + b)* b", "b (a b)*", "a* b b a*", "(a b + b)*"]);
    let bad = pick(rng, &["a*", "(a + b)* b b (a + b)*", "b b b", "a a (a + b)*"]);
    let step = pick(rng, &["E b/a a/b E", "E a/b b/a E", "E b/a E", "E a/b E", "b/a E a/b"]);
    let text = format!("alphabet: a b\nlet E = (a/a + b/b)*;\ninit: {init}\ntrans: E\ntrans: {step}\nbad: {bad}\n");
    parse_model(&text).unwrap()
}

fn criterion_6(audit: &mut Audit) -> Outcome {
    for (name, doc) in bundled() {
        let p = doc.to_problem().unwrap();
        for alg in Algorithm::ALL {
            audit.prove(&name, &p, alg, &Limits::default());
        }
    }
    let budget = Limits {
        timeout: Some(Duration::from_millis(500)),
        max_states: 64,
        ..Limits::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..40 {
        let p = random_problem(&mut rng);
        for alg in Algorithm::ALL {
            audit.prove(&format!("random{i}"), &p, alg, &budget);
        }
    }
    let (mut safe, mut unsafe_, mut unknown) = (0, 0, 0);
    for (label, p, verdict) in &audit.runs {
        match verdict {
            Verdict::Safe(inv) => {
                check_invariant(p, inv).map_err(|e| format!("{label}: {e}"))?;
                safe += 1;
            }
            Verdict::Unsafe(w) => {
                ensure(p.bad().accepts(w) && p.post_k(w.len()).accepts(w), || {
                    format!("{label}: witness {w:?} is not a reachable bad configuration")
                })?;
                unsafe_ += 1;
            }
            Verdict::Unknown(_) => unknown += 1,
        }
    }
    Ok(format!("{safe} SAFE re-validated, {unsafe_} UNSAFE witnesses re-checked, {unknown} UNKNOWN"))
}

fn criterion_7(audit: &mut Audit) -> Outcome {
    let path = models_dir().join("herman_unsafe_demo.rmc");
    let o = Command::new(env!("CARGO_BIN_EXE_rmc")).arg("check").arg(&path).output().unwrap();
    let out = String::from_utf8_lossy(&o.stdout).into_owned();
    ensure(o.status.code() == Some(1), || format!("exit code {:?}", o.status.code()))?;
    ensure(out == "UNSAFE\nwitness: T\n", || format!("output {out:?}"))?;
    let p = parse_model(&read("herman_unsafe_demo.rmc")).unwrap();
    for alg in Algorithm::ALL {
        let v = audit.prove("herman_unsafe_demo", &p, alg, &Limits::default()).verdict;
        ensure(v == Verdict::Unsafe(p.alphabet().parse_word("T").unwrap()), || format!("{alg}: {v:?}"))?;
    }
    Ok("UNSAFE, witness T, exit code 1 (all learners agree)".into())
}

fn main() {
    let mut audit = Audit::default();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut Audit) -> Outcome>)> = vec![
        ("Herman linear/ring invariant 2 states / 4 transitions", Box::new(criterion_1)),
        ("Israeli-Jalfon RS run", Box::new(criterion_2)),
        ("Herman observation-table replay", Box::new(criterion_3)),
        ("membership agrees with explicit BFS", Box::new(|_: &mut Audit| criterion_4())),
        ("learners against exact teachers", Box::new(|_: &mut Audit| criterion_5())),
        ("soundness audit", Box::new(criterion_6)),
        ("unsafe demo", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run(&mut audit);
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!(
        "criterion 8: OUT OF SCOPE  benchmarks whose transducers are not printed (German, Kanban, Szymanski, \
         Bakery, Burns, Dijkstra, Dining Cryptographers, ...) and the SAT, T(O)RMC and ARMC comparisons are not \
         reproducible; criteria 4-6 stand in for them"
    );
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
