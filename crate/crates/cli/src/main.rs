//! `tfvs`: solve, verify, generate, enumerate, check and bench weighted FVS
//! instances on tournaments.
//!
//! Exit codes: 0 on success, 1 for usage, parse and precondition errors or a
//! rejected certificate, 2 when an internal invariant is violated.

mod bench;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tournament_fvs::approx::{cdz_unchecked, layers_fvs};
use tournament_fvs::detect::{find_t5_subtournament, find_t7_subtournament, find_triangle};
use tournament_fvs::enumerate::enumerate_family;
use tournament_fvs::generate::{paley_tournament, random_tournament, random_weights};
use tournament_fvs::io::{parse_any, tournament_to_json, write_tournament};
use tournament_fvs::oracle::exact_min_fvs_with_cap;
use tournament_fvs::{
    cdz_t5free_fvs, seven_thirds_fvs, three_approx, verify_fvs, ApproxError, FvsResult, ResultDocument,
    Tournament, VertexSet, Weights,
};

#[derive(Debug, Parser)]
#[command(name = "tfvs", version, about = "Minimum-weight feedback vertex sets in tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an FVS and print it as a result document.
    Solve(SolveArgs),
    /// Check that a vertex set is an FVS of the given tournament.
    Verify(VerifyArgs),
    /// Write a random or Paley tournament.
    Generate(GenerateArgs),
    /// Count isomorphism classes with no transitive subtournament of a given order.
    Enumerate(EnumerateArgs),
    /// Report whether a tournament is transitive, T5-free and T7-free.
    Check(CheckArgs),
    /// Compare the approximations against the exact optimum on random instances.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    SevenThirds,
    ThreeApprox,
    Exact,
    LayersOnly,
    Cdz,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::SevenThirds => "seven-thirds",
            Algorithm::ThreeApprox => "three-approx",
            Algorithm::Exact => "exact",
            Algorithm::LayersOnly => "layers-only",
            Algorithm::Cdz => "cdz",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Uniform,
    Paley,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    /// Tournament file (text or JSON); `-` reads standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "seven-thirds")]
    algorithm: Algorithm,
    /// Skip the T5-freeness scan for `cdz`; a fractional optimum is then an error.
    #[arg(long)]
    check_skip: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Order above which `exact` refuses to run.
    #[arg(long, default_value_t = tournament_fvs::oracle::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Result document (JSON) produced by `solve --format json`.
    #[arg(long, conflicts_with = "fvs", required_unless_present = "fvs")]
    result: Option<PathBuf>,
    /// Comma-separated vertex ids.
    #[arg(long, value_delimiter = ',')]
    fvs: Option<Vec<usize>>,
}

#[derive(Debug, clap::Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "uniform")]
    model: Model,
    /// Integer weights drawn from `0..=max`; unit weights when absent.
    #[arg(long)]
    max_weight: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    /// Order of the forbidden transitive subtournament.
    #[arg(long)]
    forbidden: usize,
    /// Directory receiving one unit-weight tournament file per class.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// A failed run and its exit code.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(anyhow::Error),
    Invariant(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<ApproxError> for Failure {
    fn from(e: ApproxError) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.into())
        } else {
            Failure::Usage(e.into())
        }
    }
}

pub(crate) type CmdResult = Result<(), Failure>;

fn read_input(path: &Path) -> anyhow::Result<(Tournament, Weights)> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).context("reading standard input")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}

pub(crate) fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing standard output"),
    }
}

fn solve(args: &SolveArgs) -> CmdResult {
    let (t, w) = read_input(&args.input)?;
    let result: FvsResult = match args.algorithm {
        Algorithm::SevenThirds => seven_thirds_fvs(&t, &w)?,
        Algorithm::ThreeApprox => three_approx(&t, &w).map_err(anyhow::Error::from)?,
        Algorithm::Exact => {
            let r = exact_min_fvs_with_cap(&t, &w, Some(args.oracle_cap)).map_err(anyhow::Error::from)?;
            FvsResult::tagged(r.witness, &w, tournament_fvs::Stage::Exact)
        }
        Algorithm::LayersOnly => {
            // Vertices on no triangle never need covering.
            let (core, ids) = t.induced(&t.cyclic_vertices());
            let (r, _) = layers_fvs(&core, &w.restrict(&ids))?;
            let mut lifted = FvsResult::tagged(r.fvs.lift(&ids), &w, tournament_fvs::Stage::LayersParity);
            lifted.stage_tags = r.stage_tags.iter().map(|(&v, &s)| (ids[v], s)).collect();
            lifted.stall_restarts = r.stall_restarts;
            lifted
        }
        Algorithm::Cdz if args.check_skip => match cdz_unchecked(&t, &w) {
            Err(ApproxError::IntegralityFailure { .. }) if find_t5_subtournament(&t).is_some() => {
                let witness = find_t5_subtournament(&t).expect("just found");
                return Err(ApproxError::NotT5Free { witness }.into());
            }
            other => other?,
        },
        Algorithm::Cdz => cdz_t5free_fvs(&t, &w)?,
    };
    if !verify_fvs(&t, &result.fvs) {
        return Err(Failure::Invariant(anyhow!(
            "{} returned {}, which is not a feedback vertex set",
            args.algorithm.name(),
            result.fvs
        )));
    }
    let doc = ResultDocument::new(args.algorithm.name(), t.n(), &result);
    if !doc.is_consistent(&w) {
        return Err(Failure::Invariant(anyhow!("reported weight {} does not match the set", doc.weight)));
    }
    let text = match args.format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json() + "\n",
    };
    Ok(emit(args.output.as_deref(), &text)?)
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let (t, w) = read_input(&args.input)?;
    let fvs = match (&args.result, &args.fvs) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let doc = ResultDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            if doc.n != t.n() {
                return Err(anyhow!("result is for order {}, tournament has order {}", doc.n, t.n()).into());
            }
            if !doc.is_consistent(&w) {
                return Err(anyhow!("reported weight {} is not the weight of {}", doc.weight, doc.fvs).into());
            }
            doc.fvs
        }
        (None, Some(ids)) => VertexSet::new(ids.clone()),
        (None, None) => unreachable!("clap requires one of --result and --fvs"),
    };
    fvs.check_range(t.n()).map_err(anyhow::Error::from)?;
    if !verify_fvs(&t, &fvs) {
        let rest = VertexSet::full(t.n()).difference(&fvs);
        let (sub, ids) = t.induced(&rest);
        let triangle = find_triangle(&sub).expect("not transitive").lift(&ids);
        return Err(anyhow!("{fvs} is not an FVS: triangle {triangle} survives").into());
    }
    println!("valid: {fvs} weight {}", w.sum(&fvs));
    Ok(())
}

fn generate(args: &GenerateArgs) -> CmdResult {
    let t = match args.model {
        Model::Uniform => random_tournament(args.n, args.seed),
        Model::Paley => paley_tournament(args.n as u64).map_err(anyhow::Error::from)?,
    };
    let w = match args.max_weight {
        Some(max) => random_weights(args.n, max, tournament_fvs::generate::derive_seed(args.seed, 0)),
        None => Weights::unit(args.n),
    };
    let text = match args.format {
        Format::Text => write_tournament(&t, &w),
        Format::Json => tournament_to_json(&t, &w) + "\n",
    };
    Ok(emit(args.output.as_deref(), &text)?)
}

fn enumerate(args: &EnumerateArgs) -> CmdResult {
    let family = enumerate_family(args.order, args.forbidden).map_err(anyhow::Error::from)?;
    if let Some(dir) = &args.emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, t) in family.representatives().iter().enumerate() {
            let path = dir.join(format!("order{}_no_tt{}_{:03}.txt", args.order, args.forbidden, i));
            fs::write(&path, write_tournament(t, &Weights::unit(t.n())))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let text = match args.format {
        Format::Text => format!(
            "order {} forbidden {}: {} classes ({} labelled)\n",
            family.order,
            family.forbidden_transitive,
            family.count(),
            family.labelled
        ),
        Format::Json => {
            let codes: Vec<u64> = family.classes.iter().map(|c| c.code).collect();
            let doc = json!({
                "order": family.order,
                "forbidden": family.forbidden_transitive,
                "classes": family.count(),
                "labelled": family.labelled,
                "codes": codes,
            });
            doc.to_string() + "\n"
        }
    };
    Ok(emit(None, &text)?)
}

fn check(args: &CheckArgs) -> CmdResult {
    let (t, _) = read_input(&args.input)?;
    let rows = [
        ("transitive", find_triangle(&t)),
        ("t5_free", find_t5_subtournament(&t)),
        ("t7_free", find_t7_subtournament(&t)),
    ];
    let text = match args.format {
        Format::Text => rows
            .iter()
            .map(|(name, witness)| match witness {
                None => format!("{name}: yes\n"),
                Some(s) => format!("{name}: no, witness {s}\n"),
            })
            .collect::<String>(),
        Format::Json => {
            let doc: serde_json::Map<String, serde_json::Value> = rows
                .iter()
                .map(|(name, witness)| {
                    let entry = match witness {
                        None => json!({ "holds": true }),
                        Some(s) => json!({ "holds": false, "witness": s }),
                    };
                    (name.to_string(), entry)
                })
                .collect();
            serde_json::Value::Object(doc).to_string() + "\n"
        }
    };
    Ok(emit(None, &text)?)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Generate(a) => generate(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Check(a) => check(a),
        Command::Bench(a) => bench::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(e)) => {
            eprintln!("invariant violated: {e:#}");
            ExitCode::from(2)
        }
    }
}
