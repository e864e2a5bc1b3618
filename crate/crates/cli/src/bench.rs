//! Ratio audit: random instances, both approximations, exact optimum.

use std::path::PathBuf;

use anyhow::anyhow;
use num_traits::ToPrimitive;
use serde_json::json;

use tournament_fvs::generate::{derive_seed, random_tournament, random_weights};
use tournament_fvs::oracle::{approximation_ratio, exact_min_fvs_with_cap, DEFAULT_ORACLE_CAP};
use tournament_fvs::par::{map_range, Execution};
use tournament_fvs::tournament::{integer, rational};
use tournament_fvs::{seven_thirds_fvs, three_approx, verify_fvs, Rational, Weights};

use super::{emit, CmdResult, Failure, Format};

#[derive(Debug, clap::Args)]
pub(crate) struct BenchArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Fixed order; overrides `--n-min` and `--n-max`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Integer weights drawn from `0..=max`; unit weights when absent.
    #[arg(long)]
    max_weight: Option<u64>,
    /// Run trials one after another instead of in parallel.
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Trial {
    index: usize,
    n: usize,
    seed: u64,
    optimum: Rational,
    three: Rational,
    seven: Rational,
}

impl Trial {
    fn ratios(&self) -> Result<(Rational, Rational), String> {
        let ratio = |found: &Rational, name: &str| {
            approximation_ratio(found, &self.optimum)
                .ok_or_else(|| format!("trial {}: {name} has weight {found} on an acyclic instance", self.index))
        };
        Ok((ratio(&self.three, "three-approx")?, ratio(&self.seven, "seven-thirds")?))
    }
}

fn run_trial(args: &BenchArgs, n_min: usize, n_max: usize, index: usize) -> Result<Trial, String> {
    let seed = derive_seed(args.seed, index as u64);
    let n = n_min + (seed % (n_max - n_min + 1) as u64) as usize;
    let t = random_tournament(n, seed);
    let w = match args.max_weight {
        Some(max) => random_weights(n, max, derive_seed(seed, 0)),
        None => Weights::unit(n),
    };
    let fail = |e: &dyn std::fmt::Display| format!("trial {index}: {e}");
    let three = three_approx(&t, &w).map_err(|e| fail(&e))?;
    let seven = seven_thirds_fvs(&t, &w).map_err(|e| fail(&e))?;
    for (name, r) in [("three-approx", &three), ("seven-thirds", &seven)] {
        if !verify_fvs(&t, &r.fvs) {
            return Err(format!("trial {index}: {name} returned {}, not an FVS", r.fvs));
        }
    }
    let exact = exact_min_fvs_with_cap(&t, &w, Some(args.oracle_cap)).map_err(|e| fail(&e))?;
    Ok(Trial {
        index,
        n,
        seed,
        optimum: exact.optimum,
        three: three.weight,
        seven: seven.weight,
    })
}

fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn run(args: &BenchArgs) -> CmdResult {
    let (n_min, n_max) = args.n.map_or((args.n_min, args.n_max), |n| (n, n));
    if n_min > n_max {
        return Err(anyhow!("--n-min {n_min} exceeds --n-max {n_max}").into());
    }
    if n_max > args.oracle_cap {
        return Err(anyhow!("--n-max {n_max} exceeds the oracle cap {}", args.oracle_cap).into());
    }
    if args.trials == 0 {
        return Err(anyhow!("--trials must be positive").into());
    }
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let outcomes = map_range(exec, 0..args.trials, |i| run_trial(args, n_min, n_max, i));
    let mut trials = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        trials.push(outcome.map_err(|e| Failure::Invariant(anyhow!(e)))?);
    }
    let mut rows = Vec::with_capacity(trials.len());
    for trial in &trials {
        let ratios = trial.ratios().map_err(|e| Failure::Invariant(anyhow!(e)))?;
        rows.push((trial, ratios));
    }

    let count = integer(rows.len() as i64);
    let three_max = rows.iter().map(|(_, (r, _))| r.clone()).max().expect("trials > 0");
    let seven_max = rows.iter().map(|(_, (_, r))| r.clone()).max().expect("trials > 0");
    let three_mean = rows.iter().map(|(_, (r, _))| r.clone()).sum::<Rational>() / &count;
    let seven_mean = rows.iter().map(|(_, (_, r))| r.clone()).sum::<Rational>() / &count;
    let three_ok = three_max <= integer(3);
    let seven_ok = seven_max <= rational(7, 3);

    let text = match args.format {
        Format::Text => {
            let mut out = String::from("trial,n,seed,optimum,three_approx,three_ratio,seven_thirds,seven_ratio\n");
            for (t, (r3, r7)) in &rows {
                out += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    t.index, t.n, t.seed, t.optimum, t.three, r3, t.seven, r7
                );
            }
            out += &format!(
                "# three-approx: max {three_max} ({:.4}), mean {:.4}, bound 3 {}\n",
                approx(&three_max),
                approx(&three_mean),
                if three_ok { "holds" } else { "VIOLATED" }
            );
            out += &format!(
                "# seven-thirds: max {seven_max} ({:.4}), mean {:.4}, bound 7/3 {}\n",
                approx(&seven_max),
                approx(&seven_mean),
                if seven_ok { "holds" } else { "VIOLATED" }
            );
            out
        }
        Format::Json => {
            let table: Vec<_> = rows
                .iter()
                .map(|(t, (r3, r7))| {
                    json!({
                        "trial": t.index,
                        "n": t.n,
                        "seed": t.seed,
                        "optimum": t.optimum.to_string(),
                        "three_approx": t.three.to_string(),
                        "three_ratio": r3.to_string(),
                        "seven_thirds": t.seven.to_string(),
                        "seven_ratio": r7.to_string(),
                    })
                })
                .collect();
            let doc = json!({
                "trials": table,
                "three_approx": { "max_ratio": three_max.to_string(), "mean_ratio": three_mean.to_string(), "bound_holds": three_ok },
                "seven_thirds": { "max_ratio": seven_max.to_string(), "mean_ratio": seven_mean.to_string(), "bound_holds": seven_ok },
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    emit(args.output.as_deref(), &text)?;
    if !(three_ok && seven_ok) {
        return Err(Failure::Invariant(anyhow!(
            "ratio bound violated: three-approx max {three_max}, seven-thirds max {seven_max}"
        )));
    }
    Ok(())
}
