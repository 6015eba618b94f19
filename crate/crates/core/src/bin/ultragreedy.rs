use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ultragreedy::bhargava::{check_equivalence, is_pm_ordering, pm_ordering};
use ultragreedy::constructions::{
    constant_triple, extend_to_full, mod_triple, padic_log_triple, padic_triple, rseq_triple, tree_triple,
};
use ultragreedy::greedoid::{
    bhargava_greedoid, check_greedoid_axioms, check_matroid_bases, level_sets, AxiomReport, Witness,
    DEFAULT_GREEDOID_CAP,
};
use ultragreedy::greedy::{
    all_greedy_permutations, all_greedy_subsequences, greedy_permutation, greedy_subsequence, nu, nu_bar,
    permutation_trace, subsequence_trace, GreedyTrace, DEFAULT_ENUMERATION_CAP,
};
use ultragreedy::io::{parse_tree, Instance, InstanceFile, SetSystemFile};
use ultragreedy::oracle::{random_ultra_triple, MAX_RANDOM_POINTS};
use ultragreedy::rational::{self, format, Rational};
use ultragreedy::{Error, PointSet, UltraTriple};

/// Environment variable overriding the number of sequences `--ties all`
/// may enumerate.
const CAP_VAR: &str = "ULTRAGREEDY_CAP";

#[derive(Parser)]
#[command(name = "ultragreedy", version, about = "Greedy maximum-perimeter analysis of ultra triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the ultrametric inequality; exit 1 if it fails anywhere.
    Validate { instance: PathBuf },
    /// Compute greedy permutations or subsequences.
    Greedy {
        instance: PathBuf,
        /// Comma-separated labels of the candidate set (default: all points).
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Mode::Perm)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Ties::First)]
        ties: Ties,
    },
    /// Compute the k-th greedy increment.
    Nu {
        instance: PathBuf,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Perm)]
        mode: Mode,
    },
    /// List the Bhargava greedoid or check the greedoid and matroid axioms.
    Greedoid {
        /// Instance whose Bhargava greedoid is analysed.
        #[arg(required_unless_present = "system")]
        instance: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Sets)]
        emit: Emit,
        /// Check an explicit set system file instead of an instance.
        #[arg(long, conflicts_with = "instance")]
        system: Option<PathBuf>,
        /// Largest ground set to materialize.
        #[arg(long, default_value_t = DEFAULT_GREEDOID_CAP)]
        cap: usize,
    },
    /// Write an instance from one of the built-in families.
    Generate(GenerateArgs),
    /// Build the leaf instance of a weighted tree file.
    Tree {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute or check (p, m)-orderings of a set of integers.
    Pordering {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Length of the ordering (default: number of distinct points).
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated sequence to check instead of computing one.
        #[arg(long, allow_hyphen_values = true)]
        check: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Perm,
    Subseq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    First,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Sets,
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Constant,
    Mod,
    Padic,
    PadicLog,
    Rseq,
    Random,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of points (constant and random families).
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated integers (mod, padic, padic-log, rseq families).
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Modulus of the mod family.
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// Divisibility chain r0, r1, ... of the rseq family.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Weakly decreasing level values c0, c1, ... of the rseq family.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Comma-separated weights (default: all zero).
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    /// Add this self-distance to every point, producing a full instance.
    #[arg(long, allow_hyphen_values = true)]
    full: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { instance } => cmd_validate(&instance),
        Command::Greedy {
            instance,
            subset,
            m,
            mode,
            ties,
        } => cmd_greedy(&instance, subset.as_deref(), m, mode, ties),
        Command::Nu {
            instance,
            subset,
            k,
            mode,
        } => cmd_nu(&instance, subset.as_deref(), k, mode),
        Command::Greedoid {
            instance,
            emit,
            system,
            cap,
        } => cmd_greedoid(instance.as_deref(), emit, system.as_deref(), cap),
        Command::Generate(args) => cmd_generate(&args),
        Command::Tree { path, out } => cmd_tree(&path, out.as_deref()),
        Command::Pordering { p, points, m, check } => cmd_pordering(p, &points, m, check.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("ultragreedy: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    Ok(InstanceFile::from_json(&read(path)?)?.to_instance()?)
}

/// Loads an instance and rejects it unless it satisfies the ultrametric
/// inequality.
fn load_valid(path: &Path) -> Result<Instance, Failure> {
    let instance = load(path)?;
    let report = match &instance {
        Instance::Plain(t) => t.validate(),
        Instance::Full(f) => f.validate(),
    };
    if let Some(v) = report.violations.first() {
        return Err(usage(format!(
            "{} is not an ultra triple: {}",
            path.display(),
            v.describe(instance.triple().labels())
        )));
    }
    Ok(instance)
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    match out {
        None => {
            let mut stdout = io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            if let Err(e) = writeln!(stdout, "{text}") {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    return Err(usage(format!("cannot write to stdout: {e}")));
                }
            }
        }
        Some(path) => fs::write(path, text + "\n").map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
    }
    Ok(())
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_integers(text: &str) -> Result<Vec<i64>, Failure> {
    split_list(text)
        .map(|s| s.parse().map_err(|_| usage(format!("not an integer: {s:?}"))))
        .collect()
}

fn parse_rationals(text: &str) -> Result<Vec<Rational>, Failure> {
    Ok(split_list(text).map(rational::parse).collect::<Result<Vec<_>, _>>()?)
}

fn candidate_set(t: &UltraTriple, subset: Option<&str>) -> Result<PointSet, Failure> {
    match subset {
        None => Ok(t.ground()?),
        Some(text) => {
            let mut set = PointSet::EMPTY;
            for label in split_list(text) {
                let idx = t.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
                set = set.union(PointSet::singleton(idx)?);
            }
            Ok(set)
        }
    }
}

fn enumeration_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CAP_VAR} must be a nonnegative integer, got {text:?}"))),
    }
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format).collect()
}

fn labelled(t: &UltraTriple, points: impl IntoIterator<Item = usize>) -> Vec<String> {
    points.into_iter().map(|p| t.label(p).to_string()).collect()
}

fn cmd_validate(path: &Path) -> Outcome {
    let instance = load(path)?;
    let report = match &instance {
        Instance::Plain(t) => t.validate(),
        Instance::Full(f) => f.validate(),
    };
    let labels = instance.triple().labels();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "points": v.points.iter().map(|&p| labels[p].clone()).collect::<Vec<_>>(),
                "lhs": format(&v.lhs),
                "rhs": format(&v.rhs),
                "message": v.describe(labels),
            })
        })
        .collect();
    emit(
        &json!({
            "ok": report.ok(),
            "points": labels.len(),
            "full": instance.full().is_some(),
            "violations": violations,
        }),
        None,
    )?;
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn trace_json(t: &UltraTriple, trace: &GreedyTrace) -> Value {
    json!({
        "points": labelled(t, trace.points().iter().copied()),
        "indices": trace.points(),
        "increments": strings(trace.increments()),
        "prefix_perimeters": strings(&trace.prefix_perimeters()),
    })
}

fn full_instance<'a>(instance: &'a Instance, path: &Path) -> Result<&'a ultragreedy::FullUltraTriple, Failure> {
    instance.full().ok_or_else(|| {
        usage(format!(
            "{} has no \"selfdist\"; subsequence mode needs a full instance",
            path.display()
        ))
    })
}

fn cmd_greedy(path: &Path, subset: Option<&str>, m: usize, mode: Mode, ties: Ties) -> Outcome {
    let instance = load_valid(path)?;
    let t = instance.triple();
    let c = candidate_set(t, subset)?;
    let traces: Vec<GreedyTrace> = match (mode, ties) {
        (Mode::Perm, Ties::First) => vec![greedy_permutation(t, c, m)?],
        (Mode::Perm, Ties::All) => {
            all_greedy_permutations(t, c, m, enumeration_cap()?)?
                .iter()
                .map(|seq| permutation_trace(t, seq))
                .collect::<Result<_, _>>()?
        }
        (Mode::Subseq, Ties::First) => vec![greedy_subsequence(full_instance(&instance, path)?, c, m)?],
        (Mode::Subseq, Ties::All) => {
            let full = full_instance(&instance, path)?;
            all_greedy_subsequences(full, c, m, enumeration_cap()?)?
                .iter()
                .map(|seq| subsequence_trace(full, seq))
                .collect::<Result<_, _>>()?
        }
    };
    let mode_name = match mode {
        Mode::Perm => "perm",
        Mode::Subseq => "subseq",
    };
    emit(
        &json!({
            "mode": mode_name,
            "m": m,
            "count": traces.len(),
            "traces": traces.iter().map(|tr| trace_json(t, tr)).collect::<Vec<_>>(),
        }),
        None,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_nu(path: &Path, subset: Option<&str>, k: usize, mode: Mode) -> Outcome {
    let instance = load_valid(path)?;
    let t = instance.triple();
    let c = candidate_set(t, subset)?;
    let (name, value) = match mode {
        Mode::Perm => ("perm", nu_bar(t, c, k)?),
        Mode::Subseq => ("subseq", nu(full_instance(&instance, path)?, c, k)?),
    };
    emit(&json!({ "mode": name, "k": k, "value": format(&value) }), None)?;
    Ok(ExitCode::SUCCESS)
}

fn set_labels(labels: &Option<Vec<String>>, s: PointSet) -> Value {
    match labels {
        Some(labels) => json!(s.iter().map(|p| labels[p].clone()).collect::<Vec<_>>()),
        None => json!(s.to_vec()),
    }
}

fn witness_json(labels: &Option<Vec<String>>, w: &Witness) -> Value {
    let set = |s: PointSet| set_labels(labels, s);
    let point = |p: usize| match labels {
        Some(labels) => json!(labels[p]),
        None => json!(p),
    };
    match *w {
        Witness::MissingEmptySet => json!({ "kind": "missing-empty-set" }),
        Witness::NoDeletion { set: s } => json!({ "kind": "no-deletion", "set": set(s) }),
        Witness::NoAugmentation { a, b } => json!({ "kind": "no-augmentation", "a": set(a), "b": set(b) }),
        Witness::NoSimultaneousExchange { a, b } => {
            json!({ "kind": "no-simultaneous-exchange", "a": set(a), "b": set(b) })
        }
        Witness::NoBasisExchange { b1, b2, x } => {
            json!({ "kind": "no-basis-exchange", "b1": set(b1), "b2": set(b2), "x": point(x) })
        }
        Witness::NoBases => json!({ "kind": "no-bases" }),
    }
}

fn report_json(labels: &Option<Vec<String>>, r: &AxiomReport) -> Value {
    json!({
        "axiom": r.axiom.to_string(),
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|w| witness_json(labels, w)),
    })
}

fn cmd_greedoid(instance: Option<&Path>, mode: Emit, system: Option<&Path>, cap: usize) -> Outcome {
    let (s, labels) = match (instance, system) {
        (_, Some(path)) => (SetSystemFile::from_json(&read(path)?)?.to_system()?, None),
        (Some(path), None) => {
            let instance = load_valid(path)?;
            let t = instance.triple();
            (bhargava_greedoid(t, cap)?, Some(t.labels().to_vec()))
        }
        (None, None) => return Err(usage("an instance or --system is required")),
    };
    match mode {
        Emit::Sets => {
            let levels: Vec<Value> = s
                .by_cardinality()
                .iter()
                .enumerate()
                .map(|(k, sets)| {
                    json!({
                        "k": k,
                        "sets": sets.iter().map(|&m| set_labels(&labels, m)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(&json!({ "ground": s.ground(), "count": s.len(), "levels": levels }), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Emit::Check => {
            let axioms = check_greedoid_axioms(&s);
            let top = s.iter().map(PointSet::len).max().unwrap_or(0);
            let mut matroid = Vec::new();
            for k in 0..=top {
                matroid.push((k, check_matroid_bases(&level_sets(&s, k))?));
            }
            let holds = axioms.iter().all(|r| r.holds) && matroid.iter().all(|(_, r)| r.holds);
            emit(
                &json!({
                    "holds": holds,
                    "axioms": axioms.iter().map(|r| report_json(&labels, r)).collect::<Vec<_>>(),
                    "levels": matroid
                        .iter()
                        .map(|(k, r)| {
                            let mut v = report_json(&labels, r);
                            v["k"] = json!(k);
                            v
                        })
                        .collect::<Vec<_>>(),
                }),
                None,
            )?;
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for the {family} family")))
}

fn cmd_generate(args: &GenerateArgs) -> Outcome {
    let points = args.points.as_deref().map(parse_integers).transpose()?;
    let count = match (&points, args.n) {
        (Some(p), _) => p.len(),
        (None, Some(n)) => n,
        (None, None) => 0,
    };
    let weights = match &args.weights {
        Some(text) => parse_rationals(text)?,
        None => vec![Rational::default(); count],
    };
    let triple = match args.family {
        Family::Constant => constant_triple(require(args.n, "n", "constant")?, weights)?,
        Family::Mod => {
            let eps = rational::parse(&require(args.eps.clone(), "eps", "mod")?)?;
            let alpha = rational::parse(&require(args.alpha.clone(), "alpha", "mod")?)?;
            mod_triple(&require(points, "points", "mod")?, require(args.m, "m", "mod")?, eps, alpha, weights)?
        }
        Family::Padic => padic_triple(&require(points, "points", "padic")?, require(args.p, "p", "padic")?, weights)?,
        Family::PadicLog => padic_log_triple(
            &require(points, "points", "padic-log")?,
            require(args.p, "p", "padic-log")?,
            weights,
        )?,
        Family::Rseq => {
            let r = parse_integers(&require(args.r.clone(), "r", "rseq")?)?;
            let c = parse_rationals(&require(args.c.clone(), "c", "rseq")?)?;
            rseq_triple(&require(points, "points", "rseq")?, &r, &c, weights)?
        }
        Family::Random => {
            let n = require(args.n, "n", "random")?;
            if n > MAX_RANDOM_POINTS {
                return Err(usage(format!("random instances have at most {MAX_RANDOM_POINTS} points")));
            }
            if args.weights.is_some() {
                return Err(usage("the random family draws its own weights"));
            }
            random_ultra_triple(args.seed, n, args.depth)
        }
    };
    let file = match &args.full {
        None => InstanceFile::from_triple(&triple),
        Some(text) => InstanceFile::from_full(&extend_to_full(&triple, rational::parse(text)?)?),
    };
    emit(&serde_json::to_value(&file).expect("instance files serialize"), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tree(path: &Path, out: Option<&Path>) -> Outcome {
    let tree = parse_tree(&read(path)?)?;
    let file = InstanceFile::from_triple(&tree_triple(&tree)?);
    emit(&serde_json::to_value(&file).expect("instance files serialize"), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_pordering(p: u64, points: &str, m: Option<usize>, check: Option<&str>) -> Outcome {
    let mut elements = parse_integers(points)?;
    elements.sort_unstable();
    elements.dedup();
    match check {
        None => {
            let m = m.unwrap_or(elements.len());
            let ordering = pm_ordering(&elements, p, m)?;
            emit(&json!({ "p": p, "points": elements, "m": m, "ordering": ordering }), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Some(text) => {
            let seq = parse_integers(text)?;
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let distinct_members = sorted.len() == seq.len() && seq.iter().all(|x| elements.binary_search(x).is_ok());
            let (verdict, greedy) = if distinct_members {
                let shared = check_equivalence(&elements, p, &seq)?;
                (shared, Some(shared))
            } else {
                (is_pm_ordering(&elements, p, &seq)?, None)
            };
            emit(
                &json!({
                    "p": p,
                    "points": elements,
                    "sequence": seq,
                    "is_pm_ordering": verdict,
                    "is_greedy_permutation": greedy,
                }),
                None,
            )?;
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
