//! `quasieq`: classify quadratic functional equations, inspect their
//! Krstić graphs and conditions, and search for finite solutions.
//!
//! Exit status: 0 when data is emitted or the checked property holds, 1 when
//! the checked property fails, 2 on usage or input errors.

mod input;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use quasieq::branches::conditions;
use quasieq::finalg::{find_linear_certificate, Table};
use quasieq::krstic::{build_graph, classify_shape, is_three_connected, GraphShape};
use quasieq::solver::{
    check_hyperidentity, exhaustive_search, gemini_refute, represent_hyperalgebra, synthesize,
    verify_equation, GeminiVerdict,
};
use quasieq::{catalog, EquationId};
use serde::Serialize;
use serde_json::{json, Value};

use input::{load_algebra, load_group, load_interpretation, Target};

#[derive(Parser)]
#[command(
    name = "quasieq",
    version,
    about = "Quadratic functional equations on quasigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "4")]
    Four,
    #[value(name = "5")]
    Five,
    Named,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog equations with their ids
    Catalog {
        #[arg(long, value_enum)]
        family: Option<Family>,
    },
    /// Syntactic classification and gemini verdict
    Classify {
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        id: Option<String>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Krstić graph, 3-connectivity and shape
    Graph {
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        id: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Symbolic solvability conditions
    Conditions { id: String },
    /// Linear solutions over a group
    Synthesize {
        id: String,
        #[arg(long)]
        group: String,
        #[arg(long, conflicts_with = "all", default_value_t = 10)]
        limit: usize,
        #[arg(long)]
        all: bool,
    },
    /// Check an equation against tables from a file
    Verify {
        id: String,
        #[arg(long)]
        tables: PathBuf,
    },
    /// All Latin-square solutions of a small order
    Search {
        id: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        certify: bool,
    },
    /// Try to refute the gemini property in Steiner loops
    Gemini {
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        id: Option<String>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Check a hyperidentity on an algebra
    Hyper {
        #[arg(long)]
        algebra: PathBuf,
        id: String,
        #[arg(long)]
        represent: bool,
    },
}

/// Writes to standard output; a closed pipe ends output quietly.
fn out(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(value: &impl Serialize) -> Result<()> {
    out(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_id(id: &str) -> Result<EquationId> {
    Ok(id.parse()?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Catalog { family } => {
            let ids: Vec<EquationId> = match family {
                None => EquationId::family_ids()
                    .chain(EquationId::named_ids())
                    .collect(),
                Some(Family::Four) => EquationId::family_ids()
                    .filter(|i| matches!(i, EquationId::Family4(_)))
                    .collect(),
                Some(Family::Five) => EquationId::family_ids()
                    .filter(|i| matches!(i, EquationId::Family5(_)))
                    .collect(),
                Some(Family::Named) => EquationId::named_ids().collect(),
            };
            let rows = ids
                .into_iter()
                .map(|id| Ok(json!({ "id": id, "equation": catalog(id)?.to_string() })))
                .collect::<Result<Vec<Value>>>()?;
            emit(&rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { id, expr } => {
            let e = Target::resolve(id.as_deref(), expr.as_deref())?.equation()?;
            let quadratic = e.is_quadratic();
            let gemini = if quadratic {
                Some(gemini_refute(&e)?)
            } else {
                None
            };
            emit(&json!({
                "equation": e.to_string(),
                "quadratic": quadratic,
                "balanced": e.is_balanced(),
                "belousov": e.is_belousov().ok(),
                "level": e.is_level().ok(),
                "generalized": e.is_generalized(),
                "gemini_verdict": gemini,
                "variables": e.var_profiles().ok(),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph { id, expr, format } => {
            let e = Target::resolve(id.as_deref(), expr.as_deref())?.equation()?;
            let g = build_graph(&e)?;
            let three_connected = is_three_connected(&g).ok();
            let shape = classify_shape(&g);
            let certificate = match &shape {
                GraphShape::Other(c) => Some(c.clone()),
                _ => None,
            };
            match format {
                GraphFormat::Json => {
                    let graph = g.to_json();
                    emit(&json!({
                        "vertices": graph.vertices,
                        "edges": graph.edges,
                        "threeConnected": three_connected,
                        "shape": shape.name(),
                        "certificate": certificate,
                    }))?;
                }
                GraphFormat::Dot => {
                    let mut text = format!(
                        "// threeConnected: {}\n// shape: {}\n",
                        json!(three_connected),
                        shape.name()
                    );
                    if let Some(c) = certificate {
                        text.push_str(&format!("// certificate: {c}\n"));
                    }
                    text.push_str(&g.to_dot());
                    out(&text)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Conditions { id } => {
            emit(&conditions(parse_id(&id)?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize {
            id,
            group,
            limit,
            all,
        } => {
            let g = load_group(&group)?;
            let sols = synthesize(parse_id(&id)?, &g, (!all).then_some(limit))?;
            emit(&sols)?;
            Ok(status(sols.iter().all(|s| s.verified)))
        }
        Command::Verify { id, tables } => {
            let e = catalog(parse_id(&id)?)?;
            let interp = load_interpretation(&tables, &e)?;
            let verdict = verify_equation(&interp, &e)?;
            emit(&verdict)?;
            Ok(status(verdict.holds()))
        }
        Command::Search { id, order, certify } => {
            let sols = exhaustive_search(parse_id(&id)?, order)?;
            let rows = sols
                .into_iter()
                .map(|i| {
                    let mut row = json!({ "order": i.order, "ops": i.ops });
                    if certify {
                        let tables: Vec<Table> = i.ops.values().cloned().collect();
                        let cert = find_linear_certificate(&tables, false)
                            .context("certificate search")?;
                        row["certificate"] = serde_json::to_value(cert)?;
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<Value>>>()?;
            emit(&rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gemini { id, expr } => {
            let e = Target::resolve(id.as_deref(), expr.as_deref())?.equation()?;
            let verdict = gemini_refute(&e)?;
            emit(&verdict)?;
            Ok(status(matches!(
                verdict,
                GeminiVerdict::GeminiUnknown { .. }
            )))
        }
        Command::Hyper {
            algebra,
            id,
            represent,
        } => {
            let a = load_algebra(&algebra)?;
            let id = parse_id(&id)?;
            let verdict = check_hyperidentity(&a, id)?;
            let holds = verdict.holds();
            let mut out = json!({ "hyperidentity": verdict });
            let mut ok = holds;
            if represent && holds {
                let rep = represent_hyperalgebra(&a, id)?;
                ok = rep.is_some();
                out["representation"] = serde_json::to_value(rep)?;
            }
            emit(&out)?;
            Ok(status(ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
