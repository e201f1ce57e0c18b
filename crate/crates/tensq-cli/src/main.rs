//! Command-line interface for the tensq engine.
//!
//! Exit codes: 0 when everything passes, 2 on any failure, 3 when the only
//! shortfall is degraded (order-only) verdicts, 64 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tensq::catalog::{build_catalog, verify, VerifyConfig};
use tensq::presentation::{family_table, parse_presentation};
use tensq::report::{
    catalog_json_string, catalog_markdown, report_json_string, report_markdown,
};
use tensq::tensor::{compute_order_only, compute_tensor_square, ComputationMode, TensorConfig};
use tensq::{exec, EnumerationConfig, FiniteAbelianGroup, Parallelism, Strategy};

const EXIT_FAIL: u8 = 2;
const EXIT_DEGRADED: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Parser, Debug)]
#[command(name = "tensq", version, about = "Non-abelian tensor squares of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Live-coset cap for every enumeration.
    #[arg(long, global = true)]
    max_cosets: Option<usize>,

    /// Enumeration strategy (hlt or felsch).
    #[arg(long, global = true)]
    strategy: Option<Strategy>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (1 forces sequential execution).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the tensor square and the full diagram for a presentation.
    Compute {
        /// Presentation text, e.g. "a, b | a^3, b^2, (a b)^2".
        #[arg(long)]
        presentation: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        report: Format,
    },
    /// Run the verification catalog.
    Verify {
        /// Theorem filter: A, B, C, D, remark, all, or a sub-case like B.ii.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Restrict to a single case id, e.g. "B.ii/D20".
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        report: Format,
        /// Compute full structure even for cases that default to order-only.
        #[arg(long)]
        full: bool,
    },
    /// List the catalog cases.
    Catalog {
        /// Only cases with this group order.
        #[arg(long)]
        order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        report: Format,
    },
    /// Evaluate the quadratic functor on an abelian group.
    Gamma {
        /// Comma-separated cyclic orders, e.g. "2,2".
        #[arg(long)]
        invariants: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        report: Format,
    },
    /// Tensor-square order via the index-only enumeration.
    OrderOnly {
        #[arg(long)]
        presentation: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    // Parallelism::default() is already sequential in non-parallel builds.
    let sequential = cli.jobs == Some(1);
    let workers = cli.jobs.filter(|&n| n > 1);
    exec::with_workers(workers, || run(cli, sequential))
}

fn enumeration_config(cli_max: Option<usize>, cli_strategy: Option<Strategy>) -> EnumerationConfig {
    let mut config = EnumerationConfig::default();
    if let Some(m) = cli_max {
        config.max_live_cosets = m;
    }
    if let Some(s) = cli_strategy {
        config.strategy = s;
    }
    config
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli, sequential: bool) -> ExitCode {
    let parallelism = if sequential {
        Parallelism::Sequential
    } else {
        Parallelism::default()
    };
    let enumeration = enumeration_config(cli.max_cosets, cli.strategy);
    let tensor_config = TensorConfig {
        enumeration: enumeration.clone(),
        parallelism,
    };
    let result: Result<(String, u8), String> = match cli.command {
        Command::Compute {
            presentation,
            report,
        } => parse_presentation(&presentation)
            .map_err(|e| format!("presentation: {e}"))
            .and_then(|p| {
                let r = compute_tensor_square(&p, &tensor_config).map_err(|e| e.to_string())?;
                eprintln!(
                    "enumeration: {} cosets defined in {:.3}s",
                    r.stats.enumeration.total_cosets_defined,
                    r.stats.enumeration.wall_time.as_secs_f64()
                );
                let text = match report {
                    Format::Json => report_json_string(&r),
                    Format::Md => report_markdown(&r),
                };
                let code = if !r.all_checks_pass() {
                    EXIT_FAIL
                } else if r.mode == ComputationMode::OrderOnly {
                    EXIT_DEGRADED
                } else {
                    0
                };
                Ok((text, code))
            }),
        Command::Verify {
            theorem,
            case,
            report,
            full,
        } => {
            let config = VerifyConfig {
                tensor: tensor_config,
                full_structure: full,
                parallelism,
            };
            let r = verify(&theorem, case.as_deref(), &config);
            if r.cases.is_empty() {
                Err(format!(
                    "no catalog case matches theorem {theorem:?} case {case:?}"
                ))
            } else {
                let text = match report {
                    Format::Json => catalog_json_string(&r),
                    Format::Md => catalog_markdown(&r),
                };
                Ok((text, r.exit_code() as u8))
            }
        }
        Command::Catalog { order, report } => {
            let rows: Vec<(String, String, String, u64)> = build_catalog()
                .into_iter()
                .filter_map(|c| {
                    let table = family_table(&c.family).ok()?;
                    let n = table.order() as u64;
                    (order.is_none() || order == Some(n)).then(|| {
                        (
                            c.id.clone(),
                            c.theorem.to_string(),
                            c.group_name.clone(),
                            n,
                        )
                    })
                })
                .collect();
            let text = match report {
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(id, theorem, name, n)| {
                            serde_json::json!({
                                "id": id, "theorem": theorem, "group": name, "order": n
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&items).expect("serializable") + "\n"
                }
                Format::Md => {
                    let mut s =
                        String::from("| case | theorem | group | order |\n|---|---|---|---|\n");
                    for (id, theorem, name, n) in &rows {
                        s.push_str(&format!("| {id} | {theorem} | {name} | {n} |\n"));
                    }
                    s
                }
            };
            Ok((text, 0))
        }
        Command::Gamma { invariants, report } => parse_moduli(&invariants).map(|moduli| {
            let a = FiniteAbelianGroup::from_moduli(&moduli);
            let g = tensq::abelian::gamma_whitehead(&a);
            let text = match report {
                Format::Json => {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "input_invariants": a.invariant_factors(),
                        "gamma_invariants": g.invariant_factors(),
                        "order": g.order(),
                        "exponent": g.exponent(),
                    }))
                    .expect("serializable")
                        + "\n"
                }
                Format::Md => format!(
                    "Gamma({a}) = {g}\norder {}, exponent {}\n",
                    g.order(),
                    g.exponent()
                ),
            };
            (text, 0)
        }),
        Command::OrderOnly { presentation } => parse_presentation(&presentation)
            .map_err(|e| format!("presentation: {e}"))
            .and_then(|p| {
                let r = compute_order_only(&p, None, &enumeration).map_err(|e| e.to_string())?;
                let text = serde_json::to_string_pretty(&serde_json::json!({
                    "group_order": r.group_order,
                    "tensor_square_order": r.tensor_order,
                    "nu_order": r.stats.nu_order,
                }))
                .expect("serializable")
                    + "\n";
                Ok((text, 0))
            }),
    };
    match result {
        Ok((text, code)) => {
            if let Err(e) = emit(&cli.out, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            let usage = msg.starts_with("presentation:")
                || msg.starts_with("invariants:")
                || msg.starts_with("no catalog case");
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAIL })
        }
    }
}

fn parse_moduli(text: &str) -> Result<Vec<u64>, String> {
    let moduli: Result<Vec<u64>, _> = text
        .split(',')
        .map(|tok| tok.trim().parse::<u64>())
        .collect();
    match moduli {
        Ok(list) if !list.is_empty() && list.iter().all(|&d| d >= 1) => Ok(list),
        _ => Err(format!(
            "invariants: expected comma-separated positive integers, got {text:?}"
        )),
    }
}
