use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dichotomy_core::bench::{bench_suite, BenchConfig};
use dichotomy_core::clone::{classify_complexity, classify_ramsey, classify_sat};
use dichotomy_core::compile::export_dimacs;
use dichotomy_core::gen::{gen_random_instance, GenKind};
use dichotomy_core::io::{
    parse_csp_file, parse_graph_file, parse_instance_file, parse_oracle_file, parse_tree_file,
    print_instance,
};
use dichotomy_core::lab::{
    dnr_build, graph_to_neq, homog_horn, homog_search, reduce_via_representation, tree_to_sat,
    unlocalize, ConstraintStream, HomogeneityCertificate, DNR_MAX_VARS, HOMOG_SEARCH_BUDGET,
    UNLOCALIZE_BUDGET,
};
use dichotomy_core::relation::relation_properties;
use dichotomy_core::solve::{solve_dispatch, solve_with_engine, Engine};
use dichotomy_core::{Error, Instance, SolveResult};

const EXIT_NEGATIVE: u8 = 10;
const EXIT_INPUT: u8 = 20;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "dichotomy",
    version,
    about = "Boolean constraint classification and solving"
)]
struct Cli {
    /// Seed for `gen`, and for the small cases of `bench`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Work bound for `homog --algo search` (solver calls), `reduce
    /// unlocalize` (entailment checks) and `reduce dnr` (variables).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Complexity,
    Sat,
    Ramsey,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Horn,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Standard,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    Tree2sat,
    Graph2neq,
    Flatten,
    Unlocalize,
    Dnr,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the relations of a constraint file.
    Classify {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
    },
    /// Print the property profile of every relation.
    Props { file: PathBuf },
    /// Decide satisfiability.
    Solve {
        file: PathBuf,
        /// `auto` or an engine name such as `horn`, `two_sat`, `xor`.
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Find a homogeneous subset of the file's `L`.
    Homog {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "search")]
        algo: Algo,
        /// Stages used by `--algo horn`; defaults to all of them.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Run one of the reductions, reading IN and writing a constraint file.
    Reduce {
        #[arg(value_enum)]
        reduction: Reduction,
        input: PathBuf,
        output: PathBuf,
        /// Last stage read from the halting table (`dnr` only).
        #[arg(long)]
        stage: Option<usize>,
    },
    /// Generate a random instance.
    Gen {
        /// `horn`, `2sat`, `xor`, `xorK` or `rel:NAME,NAME,..`.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        constraints: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the instance as DIMACS CNF.
    ExportDimacs {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the benchmark suite and write one JSON line per case.
    Bench {
        #[arg(long, value_enum, default_value = "standard")]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary(inst: &Instance) -> serde_json::Value {
    json!({ "vars": inst.num_vars(), "constraints": inst.constraints().len() })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Classify { mode, file } => {
            let inst = parse_instance_file(&read(&file)?)?;
            let s = inst.relations();
            let line = match mode {
                Mode::Complexity => {
                    let c = classify_complexity(s)?;
                    json!({ "mode": "complexity", "class": c.to_string(), "detail": c })
                }
                Mode::Sat => {
                    let c = classify_sat(s)?;
                    json!({ "mode": "sat", "class": c.to_string(), "detail": c })
                }
                Mode::Ramsey => {
                    let c = classify_ramsey(s)?;
                    json!({ "mode": "ramsey", "class": c.to_string(), "detail": c })
                }
            };
            println!("{line}");
        }
        Command::Props { file } => {
            let inst = parse_instance_file(&read(&file)?)?;
            for r in inst.relations() {
                let p = relation_properties(r)?;
                println!(
                    "{}",
                    json!({ "relation": r.label(), "arity": r.arity(), "tuples": r.len(), "profile": p })
                );
            }
        }
        Command::Solve { file, engine } => {
            let inst = parse_instance_file(&read(&file)?)?;
            let (result, engine) = if engine == "auto" {
                solve_dispatch(&inst)?
            } else {
                let e: Engine = engine.parse()?;
                (solve_with_engine(&inst, e)?, e)
            };
            match result {
                SolveResult::Sat(m) => {
                    let model: String = m
                        .to_bools()?
                        .iter()
                        .map(|&b| if b { '1' } else { '0' })
                        .collect();
                    println!(
                        "{}",
                        json!({ "verdict": "sat", "engine": engine, "model": model })
                    );
                }
                SolveResult::Unsat { failed } => {
                    println!(
                        "{}",
                        json!({ "verdict": "unsat", "engine": engine, "failed": failed })
                    );
                    return Ok(EXIT_NEGATIVE);
                }
            }
        }
        Command::Homog { file, algo, prefix } => {
            let inst = parse_instance_file(&read(&file)?)?;
            let Some(l) = inst.localized().map(<[u32]>::to_vec) else {
                return Err(Error::Invalid("the file has no `L` line".into()).into());
            };
            let cert: HomogeneityCertificate = match algo {
                Algo::Horn => {
                    let stream = ConstraintStream::from_instance(&inst);
                    homog_horn(&stream, &l, prefix.unwrap_or(stream.stages()))?
                }
                Algo::Search => homog_search(&inst, &l, cli.budget.unwrap_or(HOMOG_SEARCH_BUDGET))?,
            };
            println!("{}", serde_json::to_string(&cert)?);
            if !cert.verified {
                return Ok(EXIT_NEGATIVE);
            }
        }
        Command::Reduce {
            reduction,
            input,
            output,
            stage,
        } => {
            let text = read(&input)?;
            let (name, out, extra) = match reduction {
                Reduction::Tree2sat => (
                    "tree2sat",
                    tree_to_sat(&parse_tree_file(&text)?)?,
                    json!(null),
                ),
                Reduction::Graph2neq => (
                    "graph2neq",
                    graph_to_neq(&parse_graph_file(&text)?)?,
                    json!(null),
                ),
                Reduction::Flatten => {
                    let f = parse_csp_file(&text)?;
                    (
                        "flatten",
                        reduce_via_representation(&f.instance, &f.defs)?,
                        json!(null),
                    )
                }
                Reduction::Unlocalize => {
                    let inst = parse_instance_file(&text)?;
                    let budget = cli.budget.map_or(UNLOCALIZE_BUDGET, u128::from);
                    let u = unlocalize(&inst, budget)?;
                    let extra = json!({
                        "entailed": u.entailed.len(),
                        "links": u.links,
                        "tail": u.tail,
                        "tail_verified": u.tail_verified,
                    });
                    ("unlocalize", u.instance, extra)
                }
                Reduction::Dnr => {
                    let oracle = parse_oracle_file(&text)?;
                    let last = oracle.entries().iter().map(|x| x.stage).max().unwrap_or(0);
                    let inst = dnr_build(
                        &oracle,
                        stage.unwrap_or(last),
                        cli.budget.unwrap_or(DNR_MAX_VARS),
                    )?;
                    ("dnr", inst, json!(null))
                }
            };
            write(&output, &print_instance(&out))?;
            let mut line = summary(&out);
            line["reduction"] = json!(name);
            if !extra.is_null() {
                line["detail"] = extra;
            }
            println!("{line}");
        }
        Command::Gen {
            kind,
            vars,
            constraints,
            out,
        } => {
            let kind: GenKind = kind.parse()?;
            let inst = gen_random_instance(&kind, vars, constraints, cli.seed.unwrap_or(0))?;
            emit(out.as_deref(), &print_instance(&inst))?;
        }
        Command::ExportDimacs { file, out } => {
            let inst = parse_instance_file(&read(&file)?)?;
            emit(out.as_deref(), &export_dimacs(&inst))?;
        }
        Command::Bench { suite, out } => {
            let config = match (suite, cli.seed) {
                (Suite::Standard, _) => BenchConfig::standard(),
                (Suite::Mixed, seed) => BenchConfig::mixed(&[seed.unwrap_or(1)]),
            };
            let report = bench_suite(&config)?;
            write(&out, &report.to_json_lines())?;
            let disagreements = report.rows.iter().filter(|r| !r.agrees()).count();
            println!(
                "{}",
                json!({ "cases": report.rows.len(), "disagreements": disagreements, "out": out })
            );
            if disagreements > 0 {
                bail!("{disagreements} cases disagree with brute force");
            }
        }
    }
    Ok(0)
}

/// 20 for bad input or out-of-class instances, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return EXIT_INPUT;
    }
    EXIT_INTERNAL
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
