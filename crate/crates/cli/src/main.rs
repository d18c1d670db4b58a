use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbowkit::{load_json, run_campaign, CampaignError, CampaignParams, InputError, Theorem};
use rainbowkit_core::network::{find_multicolored_st_path, NetworkError};
use rainbowkit_core::oracle::{generate, GenKind, GenSpec, Instance, OracleError};
use rainbowkit_core::rainbow::{canonical_cycle_family, classify_family, solve_rainbow, SolveError};
use rainbowkit_core::reductions::{classify_multiset, find_transversal, find_zero_sum_subset, ReductionError};
use rainbowkit_core::{Budget, MatchingFamily, PathGroupFamily, ResidueMultiset, SymbolMatrix, DEFAULT_BUDGET};
use serde::Serialize;

const INFEASIBLE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET_EXCEEDED: u8 = 3;
const VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "rainbowkit", version, about = "Rainbow matchings: solvers, classifiers and verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single instance and print the witness or "infeasible".
    Solve {
        #[command(subcommand)]
        kind: SolveKind,
    },
    /// Run a verification campaign and print its report.
    Verify(VerifyArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Classify an extremal-size instance.
    Classify {
        #[command(subcommand)]
        kind: ClassifyKind,
    },
}

#[derive(Args)]
struct ResidueInput {
    /// Multiset file ({"n": .., "elements": [..]}).
    #[arg(long, conflicts_with_all = ["n", "elements"])]
    input: Option<PathBuf>,
    /// Modulus, together with --elements.
    #[arg(long, requires = "elements")]
    n: Option<usize>,
    /// Comma-separated residues.
    #[arg(long, value_delimiter = ',', requires = "n")]
    elements: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum SolveKind {
    /// Rainbow matching of a given size in a matching family.
    Rainbow {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the common size of a uniform family.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Full transversal of a matrix with distinct symbols per row.
    Transversal {
        #[arg(long)]
        input: PathBuf,
    },
    /// `n` residues summing to zero mod `n`.
    Egz(ResidueInput),
    /// Multicolored s-t path in a path-group network.
    Mcpath {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the number of inner nodes the paths use.
        #[arg(long)]
        inner_count: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ClassifyKind {
    /// 2n - 2 matchings of size n.
    Family {
        #[arg(long)]
        input: PathBuf,
    },
    /// 2n - 2 residues mod n.
    Multiset(ResidueInput),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    max_members: Option<usize>,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long)]
    max_inner: Option<usize>,
    #[arg(long)]
    max_paths: Option<usize>,
    #[arg(long, conflicts_with = "exhaustive")]
    samples: Option<u64>,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Canonical {
    /// The doubled even/odd split of a 2n-cycle.
    C2n,
}

#[derive(Args)]
#[group(id = "what", required = true, multiple = false)]
struct GenerateWhat {
    /// n,m,side
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "N,M,SIDE")]
    family_uniform: Option<Vec<usize>>,
    /// Comma-separated sizes; needs --side.
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "SIZES", requires = "side")]
    family_mixed: Option<Vec<usize>>,
    /// inner_nodes,groups,paths_per_group
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "INNER,GROUPS,PATHS")]
    network: Option<Vec<usize>>,
    /// n,size
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "N,SIZE")]
    multiset: Option<Vec<usize>>,
    /// rows,cols,symbols
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "M,N,SYMBOLS")]
    matrix: Option<Vec<usize>>,
    /// A fixed family; needs --n.
    #[arg(long, value_enum, requires = "n")]
    canonical: Option<Canonical>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    what: GenerateWhat,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A message for standard error and the exit code to leave with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: INPUT_ERROR, message: message.into() }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::Precondition(_) | SolveError::TooLarge(_) => INPUT_ERROR,
            SolveError::Budget(_) => BUDGET_EXCEEDED,
            SolveError::Network(n) => return Failure::from(n.clone()),
            SolveError::NoUnrepresentedColors | SolveError::GuaranteeViolation(_) | SolveError::TheoremViolation(_) => {
                VIOLATION
            }
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<NetworkError> for Failure {
    fn from(e: NetworkError) -> Self {
        let code = match &e {
            NetworkError::InvalidWitness(_)
            | NetworkError::GuaranteeViolation(_)
            | NetworkError::DichotomyViolation(_) => VIOLATION,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        let code = match &e {
            ReductionError::Solve(s) => return Failure::from(s.clone()),
            ReductionError::GuaranteeViolation(_) | ReductionError::TheoremViolation(_) => VIOLATION,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CampaignError> for Failure {
    fn from(e: CampaignError) -> Self {
        let code = match e {
            CampaignError::Budget(_) => BUDGET_EXCEEDED,
            CampaignError::Parameters(_) => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Budget(_) => BUDGET_EXCEEDED,
            OracleError::InfeasibleSpec(_) => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

fn budget_limit() -> Result<u64, Failure> {
    match std::env::var("RAINBOWKIT_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(format!("RAINBOWKIT_BUDGET: not a step count: {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn compact<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("outputs serialize")
}

fn pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("outputs serialize")
}

/// Prints the witness, or "infeasible" with exit code 1.
fn witness<T: Serialize>(found: Option<T>) -> Result<u8, Failure> {
    match found {
        Some(w) => {
            println!("{}", compact(&w));
            Ok(0)
        }
        None => {
            println!("infeasible");
            Ok(INFEASIBLE)
        }
    }
}

fn residues(input: ResidueInput) -> Result<ResidueMultiset, Failure> {
    match (input.input, input.n, input.elements) {
        (Some(path), _, _) => Ok(load_json(&path)?),
        (None, Some(n), Some(elements)) => Ok(ResidueMultiset::new(n, elements)?),
        _ => Err(Failure::input("give --input or both --n and --elements")),
    }
}

fn solve(kind: SolveKind) -> Result<u8, Failure> {
    match kind {
        SolveKind::Rainbow { input, target } => {
            let family: MatchingFamily = load_json(&input)?;
            let target = match target.or_else(|| family.uniform_size()) {
                Some(t) => t,
                None => return Err(Failure::input("--target is required for families of mixed sizes")),
            };
            let out = solve_rainbow(&family, target, &mut Budget::new(budget_limit()?))?;
            witness(out.matching)
        }
        SolveKind::Transversal { input } => {
            let matrix: SymbolMatrix = load_json(&input)?;
            witness(find_transversal(&matrix)?)
        }
        SolveKind::Egz(input) => witness(find_zero_sum_subset(&residues(input)?)?),
        SolveKind::Mcpath { input, inner_count } => {
            let family: PathGroupFamily = load_json(&input)?;
            let count = inner_count.unwrap_or_else(|| family.inner_nodes().len());
            witness(find_multicolored_st_path(&family, count)?)
        }
    }
}

fn classify(kind: ClassifyKind) -> Result<u8, Failure> {
    match kind {
        ClassifyKind::Family { input } => {
            let family: MatchingFamily = load_json(&input)?;
            println!("{}", pretty(&classify_family(&family)?));
        }
        ClassifyKind::Multiset(input) => {
            println!("{}", pretty(&classify_multiset(&residues(input)?)?));
        }
    }
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let params = CampaignParams {
        n: args.n,
        k: args.k,
        side: args.side,
        max_members: args.max_members,
        max_size: args.max_size,
        max_inner: args.max_inner,
        max_paths: args.max_paths,
        samples: args.samples,
        exhaustive: args.exhaustive,
        seed: args.seed,
        budget: budget_limit()?,
    };
    let report = run_campaign(args.theorem, &params)?;
    println!("{}", pretty(&report));
    if let Some(why) = &report.first_violation {
        eprintln!("{} violation(s); first: {why}", report.violations);
    }
    Ok(if report.passed() { 0 } else { VIOLATION })
}

fn triple(v: &[usize], what: &str, count: usize) -> Result<(), Failure> {
    if v.len() == count {
        Ok(())
    } else {
        Err(Failure::input(format!("--{what} takes {count} comma-separated numbers")))
    }
}

fn generated(args: &GenerateArgs) -> Result<Instance, Failure> {
    let w = &args.what;
    if let Some(Canonical::C2n) = w.canonical {
        let n = args.n.filter(|&n| n >= 2).ok_or_else(|| Failure::input("--canonical c2n needs --n >= 2"))?;
        return Ok(Instance::Family(canonical_cycle_family(n)));
    }
    let kind = if let Some(v) = &w.family_uniform {
        triple(v, "family-uniform", 3)?;
        GenKind::FamilyUniform { n: v[0], m: v[1], side: v[2] }
    } else if let Some(sizes) = &w.family_mixed {
        GenKind::FamilyMixed { sizes: sizes.clone(), side: args.side.expect("clap requires --side") }
    } else if let Some(v) = &w.network {
        triple(v, "network", 3)?;
        GenKind::Network { inner_nodes: v[0], groups: v[1], paths_per_group: v[2] }
    } else if let Some(v) = &w.multiset {
        triple(v, "multiset", 2)?;
        GenKind::Multiset { n: v[0], size: v[1] }
    } else if let Some(v) = &w.matrix {
        triple(v, "matrix", 3)?;
        GenKind::Matrix { m: v[0], n: v[1], symbol_count: v[2] }
    } else {
        unreachable!("clap requires one instance kind")
    };
    Ok(generate(&GenSpec::new(kind, args.seed))?)
}

fn generate_cmd(args: GenerateArgs) -> Result<u8, Failure> {
    let text = compact(&generated(&args)?);
    match &args.out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve { kind } => solve(kind),
        Command::Verify(args) => verify(args),
        Command::Generate(args) => generate_cmd(args),
        Command::Classify { kind } => classify(kind),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("rainbowkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
