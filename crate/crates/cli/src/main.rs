mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use varseq::oracle::DEFAULT_LIMIT;
use varseq::verify::verify_instance;
use varseq::{
    brute_force, construct_optimal, ctv_screen, dual_transform, local_search, partial_sums,
    sum_n1_transform, sum_n2_transform, CtvOptions, Objective, OracleOptions, Sequence, Strategy,
};

use input::{parse_ranks, read_candidates, read_instance, ParseError};
use report::{
    Arrangement, EvaluateReport, OptimalReport, OracleOutput, Report, ScreenReport, SearchOutput,
    TransformReport,
};

/// Order positive numbers so the variance of their partial sums is maximal.
///
/// Instance files hold one positive number per line. `#` starts a comment.
/// An optional line `order: r1,r2,...,rn` lists 1-based ranks into the
/// ascending set and selects a specific arrangement; without it the numbers
/// are taken in the order listed.
#[derive(Parser)]
#[command(name = "varseq", version)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial sums, their mean and variance.
    Evaluate { file: PathBuf },
    /// The two closed-form maximizers.
    Optimal { file: PathBuf },
    /// Apply one transform and print its trace.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Order spec overriding the file's, e.g. `1,6,2,3`.
        #[arg(long)]
        seq: Option<String>,
    },
    /// Pairwise-interchange local search.
    Search {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "best")]
        strategy: SearchStrategy,
        /// Seed for the random start used when the file has no order line.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate every arrangement and report all optima.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "max")]
        objective: ObjectiveArg,
        /// Fix the smallest value in front (maximization only).
        #[arg(long)]
        pin_first: bool,
        /// Largest instance to enumerate (at most 11).
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Drop candidates dominated for completion time variance.
    CtvScreen {
        file: PathBuf,
        /// One order spec per line.
        #[arg(long)]
        candidates: PathBuf,
        /// Also relate candidates through the sum-n1 transform.
        #[arg(long)]
        include_sum_n1: bool,
    },
    /// Run every property check on the instance.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        oracle_limit: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dual,
    SumN2,
    SumN1,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchStrategy {
    First,
    Best,
    Transforms,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Max,
    Min,
}

fn emit<R: Report>(report: &R, json: bool) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{}", report.text());
    }
    Ok(())
}

fn oracle_threads() -> anyhow::Result<Option<usize>> {
    match std::env::var("VARSEQ_THREADS") {
        Ok(v) => {
            let threads = v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| anyhow!("VARSEQ_THREADS must be a positive integer, got '{v}'"))?;
            Ok(Some(threads))
        }
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Evaluate { file } => {
            let seq = read_instance(&file)?.sequence();
            emit(
                &EvaluateReport {
                    order: seq.order_spec(),
                    stats: partial_sums(&seq),
                    sequence: seq,
                },
                json,
            )
        }
        Command::Optimal { file } => {
            let (c, d) = construct_optimal(read_instance(&file)?.set);
            emit(
                &OptimalReport {
                    primary: Arrangement::of(&c),
                    secondary: Arrangement::of(&d),
                },
                json,
            )
        }
        Command::Transform { file, kind, seq } => {
            let instance = read_instance(&file)?;
            let input = match seq {
                Some(spec) => {
                    let ranks = parse_ranks(&spec).map_err(|m| anyhow!("--seq: {m}"))?;
                    Sequence::from_one_based_ranks(instance.set.clone(), &ranks).context("--seq")?
                }
                None => instance.sequence(),
            };
            let (output, trace) = match kind {
                Kind::Dual => dual_transform(&input),
                Kind::SumN2 => sum_n2_transform(&input),
                Kind::SumN1 => sum_n1_transform(&input),
            };
            emit(
                &TransformReport {
                    input: Arrangement::of(&input),
                    output: Arrangement::of(&output),
                    trace,
                },
                json,
            )
        }
        Command::Search {
            file,
            strategy,
            seed,
        } => {
            let instance = read_instance(&file)?;
            let (start, seed) = match &instance.order {
                Some(seq) => (seq.clone(), None),
                None => {
                    let mut ranks: Vec<usize> = (0..instance.set.len()).collect();
                    ranks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                    (
                        Sequence::from_ranks(instance.set.clone(), ranks)?,
                        Some(seed),
                    )
                }
            };
            let strategy = match strategy {
                SearchStrategy::First => Strategy::FirstImprovement,
                SearchStrategy::Best => Strategy::BestImprovement,
                SearchStrategy::Transforms => Strategy::TransformsFirst,
            };
            let report = local_search(&start, strategy);
            emit(
                &SearchOutput {
                    seed,
                    end_order: report.end.order_spec(),
                    report,
                },
                json,
            )
        }
        Command::Oracle {
            file,
            objective,
            pin_first,
            limit,
        } => {
            let set = read_instance(&file)?.set;
            let objective = match objective {
                ObjectiveArg::Max => Objective::MaxVariance,
                ObjectiveArg::Min => Objective::MinVariance,
            };
            let options = OracleOptions {
                limit_n: limit,
                pin_first,
                threads: oracle_threads()?,
            };
            let result = brute_force(set, objective, &options)?;
            emit(
                &OracleOutput {
                    orders: result.optima.iter().map(Sequence::order_spec).collect(),
                    result,
                },
                json,
            )
        }
        Command::CtvScreen {
            file,
            candidates,
            include_sum_n1,
        } => {
            let set = read_instance(&file)?.set;
            let list = read_candidates(&candidates, &set)?;
            let survivors = ctv_screen(&list, CtvOptions { include_sum_n1 })?;
            emit(
                &ScreenReport {
                    candidates: list.len(),
                    survivors: survivors.iter().map(Arrangement::of).collect(),
                },
                json,
            )
        }
        Command::Verify { file, oracle_limit } => {
            let seq = read_instance(&file)?.sequence();
            emit(&verify_instance(&seq, oracle_limit), json)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<varseq::Error>() {
        Some(varseq::Error::InstanceTooLarge { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.downcast_ref::<ParseError>().is_some() {
                eprintln!("error: {err}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
