//! The `caucal` command-line front end.
//!
//! Every subcommand writes one artifact to standard output in the configured
//! format. Exit status is 0 on success, 1 when a library call reports an
//! error and 2 for malformed invocations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automaton::WordAutomaton;
use crate::fgh::{
    check_coherent_dom, domination_experiment, fgh_eval, EvalBudget, DEFAULT_MAX_BITS,
    DEFAULT_MAX_STEPS,
};
use crate::funseq::{
    check_bachmann, check_schmidt_coherent, enumerate_paths, greedy_min_path,
    ordinals_below_omega_power, step_down_chain, step_down_reaches, FunSeqError, FunSeqSystem,
    OrderPresentation, PathCode, ShiftedSystem, StandardSystem, TableSystem, DEFAULT_STEP_CAP,
};
use crate::graph::format::{parse_graph, to_adjacency, to_dot, to_text, AdjacencyJson};
use crate::graph::{
    regular_path_query, treegraph, unfold, Color, ColoredGraph, ExploreBound, Regex, VertexKey,
    DEFAULT_MAX_PATH, DEFAULT_MAX_VERTICES,
};
use crate::hopda::{
    accepted_words, configuration_graph, contract_system, pumping_threshold, run_word,
    PushdownSystem,
};
use crate::lextree::{
    bachmannize, check_presentation, construct_cofinal, rank_classification, BachmannCofinal,
    CofinalRelation, ConstructedCofinal, LexTree, OrderAutomaton, StandardRelation,
};
use crate::ordinal::{ElementKind, Ordinal};
use crate::types::{compose_collinear, compose_forked, cone, pair_type, VertexPairType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Text => "text",
        })
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub bound: ExploreBound,
    pub budget: EvalBudget,
    pub seed: u64,
}


/// The optional TOML configuration file; command-line flags override it.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    format: Option<Format>,
    bound_vertices: Option<u64>,
    bound_path: Option<u64>,
    budget_steps: Option<u64>,
    budget_bits: Option<u64>,
    seed: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(name = "caucal", version, about = "Ordinal notations, fast-growing hierarchies and higher-order pushdown graphs")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Vertex bound for explorations of infinite graphs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bound_vertices: Option<u64>,
    /// Path-length bound for explorations of infinite graphs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bound_path: Option<u64>,
    /// Recursion-step budget for hierarchy evaluation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_steps: Option<u64>,
    /// Result-size budget, in bits, for hierarchy evaluation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_bits: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ordinal arithmetic below ε₀.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Descent paths through a fundamental-sequence system.
    #[command(subcommand)]
    Path(PathCmd),
    /// Property checks on fundamental-sequence systems.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Fast-growing hierarchy evaluation and comparisons.
    #[command(subcommand)]
    Fgh(FghCmd),
    /// Colored graphs: unfoldings, treegraphs, path queries.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Higher-order pushdown systems.
    #[command(subcommand)]
    Hopda(HopdaCmd),
    /// Vertex pair types of an automaton over a tree.
    #[command(subcommand)]
    Types(TypesCmd),
    /// Lexicographic trees and their cofinal sequences.
    #[command(subcommand)]
    Lextree(LexCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemName {
    /// Standard sequences.
    St,
    /// Standard sequences shifted by one.
    Shifted,
    /// Sequences read from `--table`.
    Table,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Fundamental-sequence system.
    #[arg(long, value_enum, default_value = "st")]
    system: SystemName,
    /// Table file for `--system table`.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum OrdCmd {
    /// Compare two ordinals.
    Compare {
        #[arg(long)]
        a: Ordinal,
        #[arg(long)]
        b: Ordinal,
    },
    /// Ordinal sum `a + b`.
    Add {
        #[arg(long)]
        a: Ordinal,
        #[arg(long)]
        b: Ordinal,
    },
    /// Entry `s(ordinal, n)` of a fundamental sequence.
    Fundseq {
        #[arg(long)]
        ordinal: Ordinal,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The tower `ω_k`.
    Tower {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
enum PathCmd {
    /// Greedy least path from `--from` down to `--to`.
    Find {
        #[arg(long)]
        from: Ordinal,
        #[arg(long)]
        to: Ordinal,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Every path from `--from` to `--to` with measure at most `--cap`.
    Enumerate {
        #[arg(long)]
        from: Ordinal,
        #[arg(long)]
        to: Ordinal,
        #[arg(long, default_value_t = 40)]
        cap: u64,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// The step-down chain from `--from`, or whether it reaches `--to`.
    Stepdown {
        #[arg(long)]
        from: Ordinal,
        #[arg(long)]
        to: Option<Ordinal>,
        /// Longest chain printed.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Sample limits below `ω^max-exp`.
    #[arg(long, default_value_t = 3)]
    max_exp: u32,
    /// Largest coefficient in sampled ordinals.
    #[arg(long, default_value_t = 4)]
    coef: u64,
    /// Largest index `n` checked.
    #[arg(long, default_value_t = 6)]
    n_cap: u64,
    /// Check a random subset of this many limits, drawn with `--seed`.
    #[arg(long)]
    sample: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    /// The Bachmann property on sampled limits.
    Bachmann {
        #[command(flatten)]
        sample: SampleArgs,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Schmidt coherence on sampled limits.
    Schmidt {
        #[command(flatten)]
        sample: SampleArgs,
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(Debug, Subcommand)]
enum FghCmd {
    /// `F_ordinal(x)`.
    Eval {
        #[arg(long)]
        ordinal: Ordinal,
        #[arg(long)]
        x: BigUint,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Compare `F^{sys2}_b(x)` with `F^{sys1}_a(x)` for `a < b`.
    Dominate {
        #[arg(long)]
        a: Ordinal,
        #[arg(long)]
        b: Ordinal,
        #[arg(long, value_enum, default_value = "st")]
        sys1: SystemName,
        #[arg(long)]
        table1: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "shifted")]
        sys2: SystemName,
        #[arg(long)]
        table2: Option<PathBuf>,
        /// Sample points.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        xs: Vec<u64>,
    },
    /// Check `F_a(x) ≥ F_b(x)` for `x` at least the least path measure.
    Coherent {
        #[arg(long)]
        a: Ordinal,
        #[arg(long)]
        b: Ordinal,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7,8")]
        xs: Vec<u64>,
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCmd {
    /// Unfolding from `--root`, cut at `--depth`.
    Unfold {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
    },
    /// Treegraph with the fresh color `--color`, sequences up to `--depth`.
    Treegraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "e")]
        color: String,
        #[arg(long)]
        depth: usize,
    },
    /// Vertices reached from `--from` along words of a regular language.
    Query {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[command(flatten)]
        language: LanguageArgs,
    },
    /// Re-emit a graph file (DOT by default).
    Dot {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct LanguageArgs {
    /// Regular expression over colors and inverse colors.
    #[arg(long)]
    regex: Option<Regex>,
    /// Automaton file.
    #[arg(long)]
    automaton: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum HopdaCmd {
    /// Configurations reached by reading a word.
    Run {
        #[arg(long)]
        pds: PathBuf,
        /// Space-separated input letters.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// The configuration graph explored within the bounds.
    Graph {
        #[arg(long)]
        pds: PathBuf,
    },
    /// The ε-contracted configuration graph, or its accepted words.
    Contract {
        #[arg(long)]
        pds: PathBuf,
        /// List label words up to this length instead of the graph.
        #[arg(long)]
        words: Option<usize>,
        /// Accepting control states for `--words`; all states when absent.
        #[arg(long)]
        accept: Vec<String>,
    },
    /// The pumping threshold `ℶ_{level−1}((m+1)·c)`.
    Pump {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        c: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComposeMode {
    Collinear,
    Forked,
}

#[derive(Debug, Subcommand)]
enum TypesCmd {
    /// The type of `(v1, v2)`.
    Pair {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Compose types and compare with the direct computation.
    Compose {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        language: LanguageArgs,
        #[arg(long, value_enum)]
        mode: ComposeMode,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
        /// Third vertex for collinear composition.
        #[arg(long, required_if_eq("mode", "collinear"))]
        v3: Option<String>,
        /// Vertex in the cone of `v1` for forked composition.
        #[arg(long, required_if_eq("mode", "forked"))]
        u1: Option<String>,
        /// Vertex in the cone of `v2` for forked composition.
        #[arg(long, required_if_eq("mode", "forked"))]
        u2: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum LexCmd {
    /// The order language of the arity-`k` tree.
    Order {
        #[arg(long)]
        k: usize,
        /// Check the language against the order on the box of exponents ≤ N.
        #[arg(long)]
        verify: Option<u64>,
    },
    /// Cone-chain cofinal sequence of a limit vertex.
    Cofinal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Bachmann refinement of the cone-chain sequence.
    Bachmannize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Standard sequences on the tree, or the rank classification of a box.
    Standard {
        #[arg(long)]
        k: usize,
        /// Defaults to `ω^k`.
        #[arg(long)]
        cap: Option<Ordinal>,
        #[arg(long, conflicts_with = "box_size")]
        vertex: Option<String>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Classify the box of exponents ≤ N.
        #[arg(long = "box", default_value_t = 4)]
        box_size: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// One artifact in every format the command supports.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    dot: Option<String>,
    default: Format,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            csv: None,
            dot: None,
            default: Format::Text,
        }
    }

    fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    fn default_format(mut self, f: Format) -> Self {
        self.default = f;
        self
    }

    fn render(self, format: Option<Format>, command: &str) -> CliResult<String> {
        let format = format.unwrap_or(self.default);
        let unsupported = || {
            CliError::Usage(format!(
                "--format {format} is not supported by `{command}`"
            ))
        };
        let mut s = match format {
            Format::Text => self.text,
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize"),
            Format::Csv => self.csv.ok_or_else(unsupported)?,
            Format::Dot => self.dot.ok_or_else(unsupported)?,
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        Ok(s)
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = resolve_config(&cli.global).and_then(|cfg| {
        let name = command_name(&cli.command);
        dispatch(&cli.command, &cfg).and_then(|o| o.render(cfg.format, &name))
    });
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn command_name(c: &Command) -> String {
    let dbg = format!("{c:?}");
    let mut parts = dbg.split(['(', ' ', '{']).filter(|s| !s.is_empty());
    let top = parts.next().unwrap_or_default().to_lowercase();
    let sub = parts.next().unwrap_or_default().to_lowercase();
    format!("{top} {sub}")
}

fn resolve_config(g: &GlobalArgs) -> CliResult<RunConfig> {
    let file = match &g.config {
        Some(path) => {
            let text = read_input(path, "--config")?;
            toml::from_str::<ConfigFile>(&text)
                .map_err(|e| CliError::Usage(format!("--config {}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };
    let positive = |flag: Option<u64>, file: Option<u64>, key: &str, default: u64| {
        match flag.or(file) {
            Some(0) => Err(CliError::Usage(format!("--config: {key} must be positive"))),
            Some(v) => Ok(v),
            None => Ok(default),
        }
    };
    let to_usize = |v: u64| usize::try_from(v).unwrap_or(usize::MAX);
    let bound = ExploreBound::new(
        to_usize(positive(g.bound_vertices, file.bound_vertices, "bound-vertices", DEFAULT_MAX_VERTICES as u64)?),
        to_usize(positive(g.bound_path, file.bound_path, "bound-path", DEFAULT_MAX_PATH as u64)?),
    );
    let budget = EvalBudget::new(
        positive(g.budget_steps, file.budget_steps, "budget-steps", DEFAULT_MAX_STEPS)?,
        positive(g.budget_bits, file.budget_bits, "budget-bits", DEFAULT_MAX_BITS)?,
    )?;
    Ok(RunConfig {
        format: g.format.or(file.format),
        bound,
        budget,
        seed: g.seed.or(file.seed).unwrap_or(0),
    })
}

fn read_input(path: &Path, flag: &str) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{flag} {}: {e}", path.display())))
}

/// The fundamental-sequence systems selectable from the command line.
enum AnySystem {
    St(StandardSystem),
    Shifted(ShiftedSystem),
    Table(TableSystem),
}

impl AnySystem {
    fn load(name: SystemName, table: Option<&PathBuf>, flag: &str) -> CliResult<Self> {
        match (name, table) {
            (SystemName::St, _) => Ok(AnySystem::St(StandardSystem)),
            (SystemName::Shifted, _) => Ok(AnySystem::Shifted(ShiftedSystem)),
            (SystemName::Table, Some(path)) => {
                Ok(AnySystem::Table(TableSystem::parse(&read_input(path, flag)?)?))
            }
            (SystemName::Table, None) => Err(CliError::Usage(format!(
                "{flag} is required with a table system"
            ))),
        }
    }

    fn from_args(a: &SystemArgs) -> CliResult<Self> {
        AnySystem::load(a.system, a.table.as_ref(), "--table")
    }
}

impl OrderPresentation for AnySystem {
    type Elem = Ordinal;

    fn compare(&self, a: &Ordinal, b: &Ordinal) -> Ordering {
        a.cmp(b)
    }

    fn classify(&self, a: &Ordinal) -> ElementKind<Ordinal> {
        a.classify()
    }

    fn minimum(&self) -> Ordinal {
        Ordinal::zero()
    }
}

impl FunSeqSystem for AnySystem {
    fn fundamental(&self, x: &Ordinal, n: u64) -> Result<Ordinal, FunSeqError> {
        match self {
            AnySystem::St(s) => s.fundamental(x, n),
            AnySystem::Shifted(s) => s.fundamental(x, n),
            AnySystem::Table(s) => s.fundamental(x, n),
        }
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> CliResult<Output> {
    match command {
        Command::Ord(c) => ord(c),
        Command::Path(c) => path(c),
        Command::Check(c) => check(c, cfg),
        Command::Fgh(c) => fgh(c, cfg),
        Command::Graph(c) => graph(c, cfg),
        Command::Hopda(c) => hopda(c, cfg),
        Command::Types(c) => types(c, cfg),
        Command::Lextree(c) => lextree(c),
    }
}

fn value_output(v: impl fmt::Display) -> Output {
    let s = v.to_string();
    Output::new(s.clone(), json!({ "value": s }))
}

fn ord(c: &OrdCmd) -> CliResult<Output> {
    match c {
        OrdCmd::Compare { a, b } => {
            let (sym, word) = match a.compare(b) {
                Ordering::Less => ("<", "less"),
                Ordering::Equal => ("=", "equal"),
                Ordering::Greater => (">", "greater"),
            };
            Ok(Output::new(
                format!("{a} {sym} {b}"),
                json!({ "a": a.to_string(), "b": b.to_string(), "ordering": word }),
            ))
        }
        OrdCmd::Add { a, b } => Ok(value_output(a.add(b))),
        OrdCmd::Fundseq { ordinal, n, system } => {
            let sys = AnySystem::from_args(system)?;
            Ok(value_output(sys.fundamental(ordinal, *n)?))
        }
        OrdCmd::Tower { k } => Ok(value_output(Ordinal::omega_tower(*k)?)),
    }
}

fn path_json(p: &PathCode) -> Value {
    json!({ "path": p.to_string(), "entries": p.0, "measure": p.measure() })
}

fn path(c: &PathCmd) -> CliResult<Output> {
    match c {
        PathCmd::Find { from, to, system } => {
            let sys = AnySystem::from_args(system)?;
            let p = greedy_min_path(&sys, from, to, DEFAULT_STEP_CAP)?;
            let mut j = path_json(&p);
            j["from"] = json!(from.to_string());
            j["to"] = json!(to.to_string());
            Ok(Output::new(format!("{p} measure {}", p.measure()), j))
        }
        PathCmd::Enumerate {
            from,
            to,
            cap,
            system,
        } => {
            let sys = AnySystem::from_args(system)?;
            let paths = enumerate_paths(&sys, from, to, *cap)?;
            let text: Vec<String> = paths
                .iter()
                .map(|p| format!("{p} measure {}", p.measure()))
                .collect();
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record(["path", "measure"]).expect("in-memory write");
            for p in &paths {
                csv.write_record([p.to_string(), p.measure().to_string()])
                    .expect("in-memory write");
            }
            let csv = String::from_utf8(csv.into_inner().expect("in-memory flush")).expect("utf-8");
            Ok(Output::new(
                text.join("\n"),
                json!({
                    "from": from.to_string(),
                    "to": to.to_string(),
                    "cap": cap,
                    "paths": paths.iter().map(path_json).collect::<Vec<_>>(),
                }),
            )
            .csv(csv))
        }
        PathCmd::Stepdown {
            from,
            to,
            limit,
            system,
        } => {
            let sys = AnySystem::from_args(system)?;
            if let Some(target) = to {
                let reaches = step_down_reaches(&sys, from, target, DEFAULT_STEP_CAP)?;
                return Ok(Output::new(
                    reaches.to_string(),
                    json!({ "from": from.to_string(), "to": target.to_string(), "reaches": reaches }),
                ));
            }
            let mut chain = Vec::new();
            let mut truncated = false;
            for item in step_down_chain(&sys, from, DEFAULT_STEP_CAP) {
                if chain.len() == *limit {
                    truncated = true;
                    break;
                }
                chain.push(item?.to_string());
            }
            Ok(Output::new(
                chain.join("\n"),
                json!({ "from": from.to_string(), "chain": chain, "truncated": truncated }),
            ))
        }
    }
}

fn sample_limits(args: &SampleArgs, seed: u64) -> Vec<Ordinal> {
    let mut limits: Vec<Ordinal> = ordinals_below_omega_power(args.max_exp, args.coef)
        .into_iter()
        .filter(Ordinal::is_limit)
        .collect();
    if let Some(k) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        limits.shuffle(&mut rng);
        limits.truncate(k);
        limits.sort();
    }
    limits
}

fn check(c: &CheckCmd, cfg: &RunConfig) -> CliResult<Output> {
    match c {
        CheckCmd::Bachmann { sample, system } => {
            let sys = AnySystem::from_args(system)?;
            let limits = sample_limits(sample, cfg.seed);
            let r = check_bachmann(&sys, &limits, sample.n_cap)?;
            let mut text = format!(
                "{} ({} checked, {} violations)",
                if r.holds() { "holds" } else { "violated" },
                r.checked,
                r.violations.len()
            );
            for v in &r.violations {
                text.push_str(&format!(
                    "\nx={} n={} y={}: s(x,n)={} > s(y,0)={}",
                    v.x, v.n, v.y, v.s_x_n, v.s_y_0
                ));
            }
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["holds"] = json!(r.holds());
            Ok(Output::new(text, j))
        }
        CheckCmd::Schmidt { sample, system } => {
            let sys = AnySystem::from_args(system)?;
            let limits = sample_limits(sample, cfg.seed);
            let r = check_schmidt_coherent(&sys, &limits, sample.n_cap, DEFAULT_STEP_CAP)?;
            let text = format!(
                "{} ({} checked, {} violations)",
                if r.holds() { "holds" } else { "violated" },
                r.checked,
                r.violations.len()
            );
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["holds"] = json!(r.holds());
            Ok(Output::new(text, j))
        }
    }
}

fn fgh(c: &FghCmd, cfg: &RunConfig) -> CliResult<Output> {
    match c {
        FghCmd::Eval { ordinal, x, system } => {
            let sys = AnySystem::from_args(system)?;
            let outcome = fgh_eval(&sys, ordinal, x, cfg.budget)?;
            Ok(Output::new(
                outcome.to_string(),
                json!({ "ordinal": ordinal.to_string(), "x": x.to_string(), "outcome": outcome }),
            ))
        }
        FghCmd::Dominate {
            a,
            b,
            sys1,
            table1,
            sys2,
            table2,
            xs,
        } => {
            let s1 = AnySystem::load(*sys1, table1.as_ref(), "--table1")?;
            let s2 = AnySystem::load(*sys2, table2.as_ref(), "--table2")?;
            let t = domination_experiment(&s1, &s2, a, b, xs, cfg.budget)?;
            let crossover = t
                .crossover
                .map_or("none".to_string(), |x| x.to_string());
            let text = format!("{}crossover: {crossover}", t.to_csv());
            Ok(Output::new(text, serde_json::to_value(&t).expect("table serializes")).csv(t.to_csv()))
        }
        FghCmd::Coherent { a, b, xs, system } => {
            let sys = AnySystem::from_args(system)?;
            let r = check_coherent_dom(&sys, a, b, xs, cfg.budget)?;
            let text = format!(
                "path {} measure {}: {}\n{}",
                r.path,
                r.measure,
                if r.holds() { "holds" } else { "violated" },
                r.to_csv()
            );
            let mut j = serde_json::to_value(&r).expect("report serializes");
            j["path"] = json!(r.path.to_string());
            j["holds"] = json!(r.holds());
            Ok(Output::new(text, j).csv(r.to_csv()))
        }
    }
}

fn load_graph(path: &Path) -> CliResult<ColoredGraph<String>> {
    Ok(parse_graph(&read_input(path, "--graph")?)?)
}

fn load_language(l: &LanguageArgs) -> CliResult<WordAutomaton> {
    match (&l.regex, &l.automaton) {
        (Some(re), _) => Ok(re.compile()),
        (None, Some(path)) => Ok(WordAutomaton::parse(&read_input(path, "--automaton")?)?),
        (None, None) => Err(CliError::Usage("one of --regex or --automaton is required".into())),
    }
}

#[derive(Serialize)]
struct GraphJson {
    #[serde(flatten)]
    adjacency: AdjacencyJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    complete: Option<bool>,
}

fn graph_output<V: VertexKey>(g: &ColoredGraph<V>, name: &str, complete: Option<bool>) -> Output {
    let json = serde_json::to_value(GraphJson {
        adjacency: to_adjacency(g),
        complete,
    })
    .expect("graph serializes");
    Output::new(to_text(g), json)
        .dot(to_dot(g, name))
        .default_format(Format::Dot)
}

fn require_vertex(g: &ColoredGraph<String>, v: &str, flag: &str) -> CliResult<String> {
    if g.contains(&v.to_string()) {
        Ok(v.to_string())
    } else {
        Err(CliError::Domain(format!("{flag}: vertex '{v}' not found")))
    }
}

fn graph(c: &GraphCmd, cfg: &RunConfig) -> CliResult<Output> {
    match c {
        GraphCmd::Unfold { graph, root, depth } => {
            let g = load_graph(graph)?;
            let u = unfold(&g, &root.to_string(), *depth, cfg.bound.max_vertices)?;
            Ok(graph_output(&u, "unfolding", None))
        }
        GraphCmd::Treegraph {
            graph,
            color,
            depth,
        } => {
            let g = load_graph(graph)?;
            let t = treegraph(&g, &Color::new(color.as_str()), *depth, cfg.bound.max_vertices)?;
            Ok(graph_output(&t, "treegraph", None))
        }
        GraphCmd::Query {
            graph,
            from,
            language,
        } => {
            let g = load_graph(graph)?;
            let aut = load_language(language)?;
            let r = regular_path_query(&g, &from.to_string(), &aut, cfg.bound)?;
            let hits: Vec<Value> = r
                .hits
                .iter()
                .map(|(v, w)| json!({ "vertex": v, "witness": w.to_string() }))
                .collect();
            let text: Vec<String> = r.hits.iter().map(|(v, w)| format!("{v}\t{w}")).collect();
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record(["vertex", "witness"]).expect("in-memory write");
            for (v, w) in &r.hits {
                csv.write_record([v.as_str(), &w.to_string()])
                    .expect("in-memory write");
            }
            let csv = String::from_utf8(csv.into_inner().expect("in-memory flush")).expect("utf-8");
            Ok(Output::new(
                text.join("\n"),
                json!({ "from": from, "status": r.status(), "hits": hits }),
            )
            .csv(csv))
        }
        GraphCmd::Dot { graph } => {
            let g = load_graph(graph)?;
            Ok(graph_output(&g, "graph", None))
        }
    }
}

fn load_pds(path: &Path) -> CliResult<PushdownSystem> {
    Ok(PushdownSystem::parse(&read_input(path, "--pds")?)?)
}

fn hopda(c: &HopdaCmd, cfg: &RunConfig) -> CliResult<Output> {
    match c {
        HopdaCmd::Run { pds, word } => {
            let sys = load_pds(pds)?;
            let letters: Vec<&str> = word.split_whitespace().collect();
            let configs = run_word(&sys, &letters, cfg.bound.max_vertices)?;
            let strs: Vec<String> = configs.iter().map(ToString::to_string).collect();
            Ok(Output::new(
                strs.join("\n"),
                json!({ "word": letters, "configurations": strs }),
            ))
        }
        HopdaCmd::Graph { pds } => {
            let sys = load_pds(pds)?;
            let e = configuration_graph(&sys, cfg.bound);
            Ok(graph_output(&e.graph, "configurations", Some(e.complete)))
        }
        HopdaCmd::Contract { pds, words, accept } => {
            let sys = load_pds(pds)?;
            for q in accept {
                if !sys.states.contains(q) {
                    return Err(CliError::Usage(format!("--accept: unknown state '{q}'")));
                }
            }
            let contracted = contract_system(&sys, cfg.bound)?;
            let Some(max_len) = words else {
                return Ok(graph_output(
                    &contracted.graph,
                    "contracted",
                    Some(contracted.complete),
                ));
            };
            let accepting: BTreeSet<&String> = accept.iter().collect();
            let found = accepted_words(&contracted, *max_len, |v| {
                contracted.closures[v]
                    .iter()
                    .any(|w| accepting.is_empty() || accepting.contains(&w.state))
            });
            let lines: Vec<String> = found
                .iter()
                .map(|w| if w.is_empty() { "ε".to_string() } else { w.join(" ") })
                .collect();
            Ok(Output::new(
                lines.join("\n"),
                json!({ "max_length": max_len, "complete": contracted.complete, "words": found }),
            ))
        }
        HopdaCmd::Pump { level, m, c } => Ok(value_output(pumping_threshold(
            *level,
            *m,
            *c,
            cfg.budget.max_result_bits,
        )?)),
    }
}

fn type_json(aut: &WordAutomaton, t: &VertexPairType) -> Value {
    let named = |r: &BTreeSet<(usize, usize)>| -> Vec<[String; 2]> {
        r.iter()
            .map(|(a, b)| [aut.names[*a].clone(), aut.names[*b].clone()])
            .collect()
    };
    json!({ "forward": named(&t.forward), "backward": named(&t.backward), "display": t.to_string() })
}

fn types(c: &TypesCmd, cfg: &RunConfig) -> CliResult<Output> {
    let max = cfg.bound.max_vertices;
    match c {
        TypesCmd::Pair {
            graph,
            language,
            v1,
            v2,
        } => {
            let g = load_graph(graph)?;
            let aut = load_language(language)?;
            let (a, b) = (require_vertex(&g, v1, "--v1")?, require_vertex(&g, v2, "--v2")?);
            let t = pair_type(&aut, &g, &a, &b, max)?;
            Ok(Output::new(t.to_string(), type_json(&aut, &t)))
        }
        TypesCmd::Compose {
            graph,
            language,
            mode,
            v1,
            v2,
            v3,
            u1,
            u2,
        } => {
            let g = load_graph(graph)?;
            let aut = load_language(language)?;
            let a = require_vertex(&g, v1, "--v1")?;
            let b = require_vertex(&g, v2, "--v2")?;
            let (composed, direct) = match mode {
                ComposeMode::Collinear => {
                    let v3 = v3.as_deref().ok_or_else(|| CliError::Usage("--v3 is required".into()))?;
                    let c3 = require_vertex(&g, v3, "--v3")?;
                    let cb = cone(&g, &b);
                    if !cb.contains(&a) || cb.contains(&c3) {
                        return Err(CliError::Domain(
                            "collinear composition needs v1 in the cone of v2 and v3 outside it".into(),
                        ));
                    }
                    let t1 = pair_type(&aut, &g, &a, &b, max)?;
                    let t2 = pair_type(&aut, &g, &b, &c3, max)?;
                    (compose_collinear(&t1, &t2), pair_type(&aut, &g, &a, &c3, max)?)
                }
                ComposeMode::Forked => {
                    let missing = |f: &str| CliError::Usage(format!("{f} is required"));
                    let x1 = require_vertex(&g, u1.as_deref().ok_or_else(|| missing("--u1"))?, "--u1")?;
                    let x2 = require_vertex(&g, u2.as_deref().ok_or_else(|| missing("--u2"))?, "--u2")?;
                    let (ca, cb) = (cone(&g, &a), cone(&g, &b));
                    if !ca.is_disjoint(&cb) || !ca.contains(&x1) || !cb.contains(&x2) {
                        return Err(CliError::Domain(
                            "forked composition needs disjoint cones of v1, v2 holding u1, u2".into(),
                        ));
                    }
                    let t1 = pair_type(&aut, &g, &a, &b, max)?;
                    let t2 = pair_type(&aut, &g, &a, &x1, max)?;
                    let t3 = pair_type(&aut, &g, &b, &x2, max)?;
                    (compose_forked(&t1, &t2, &t3), pair_type(&aut, &g, &x1, &x2, max)?)
                }
            };
            let equal = composed == direct;
            Ok(Output::new(
                format!("composed {composed}\ndirect   {direct}\nequal {equal}"),
                json!({
                    "composed": type_json(&aut, &composed),
                    "direct": type_json(&aut, &direct),
                    "equal": equal,
                }),
            ))
        }
    }
}

fn sequence_output<T: fmt::Display>(entries: &[T]) -> Output {
    let strs: Vec<String> = entries.iter().map(ToString::to_string).collect();
    Output::new(strs.join("\n"), json!(strs))
}

fn lextree(c: &LexCmd) -> CliResult<Output> {
    match c {
        LexCmd::Order { k, verify } => {
            let tree = LexTree::new(*k)?;
            let language = tree.order_language().to_string();
            let mut j = json!({ "k": k, "language": language });
            let mut text = language.clone();
            if let Some(n) = verify {
                let r = check_presentation(&tree, *n)?;
                text.push_str(&format!(
                    "\n{} pairs checked, {} mismatches",
                    r.pairs_checked,
                    r.mismatches.len()
                ));
                j["verified"] = serde_json::to_value(&r).expect("report serializes");
            }
            Ok(Output::new(text, j))
        }
        LexCmd::Cofinal { k, vertex, count } => {
            let tree = LexTree::new(*k)?;
            let v0 = tree.parse_vertex(vertex)?;
            let order = OrderAutomaton::for_tree(&tree);
            Ok(sequence_output(&construct_cofinal(&tree, &v0, *count, &order)?))
        }
        LexCmd::Bachmannize { k, vertex, count } => {
            let tree = LexTree::new(*k)?;
            let v0 = tree.parse_vertex(vertex)?;
            let order = OrderAutomaton::for_tree(&tree);
            let refined = BachmannCofinal::new(ConstructedCofinal::new(tree, order.clone()), order);
            Ok(sequence_output(&bachmannize(&refined, &v0, *count)?))
        }
        LexCmd::Standard {
            k,
            cap,
            vertex,
            count,
            box_size,
        } => {
            let tree = LexTree::new(*k)?;
            let cap = cap
                .clone()
                .unwrap_or_else(|| Ordinal::omega_power(Ordinal::nat(*k as u64)));
            let rel = StandardRelation::new(tree, cap)?;
            if let Some(v) = vertex {
                let v0 = tree.parse_vertex(v)?;
                return Ok(sequence_output(&rel.entries(&v0, *count)?));
            }
            let r = rank_classification(&tree, *box_size)?;
            let mut text: Vec<String> = r
                .ranks
                .iter()
                .map(|(v, rank)| {
                    format!("{v}\t{}", rank.map_or("-".to_string(), |n| n.to_string()))
                })
                .collect();
            text.push(format!("{} mismatches", r.mismatches.len()));
            Ok(Output::new(
                text.join("\n"),
                serde_json::to_value(&r).expect("report serializes"),
            ))
        }
    }
}
