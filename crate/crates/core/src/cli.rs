//! Command-line frontend. Results go to `out`, diagnostics to `err`.
//! Exit status: 0 success, 1 failed verification or a "no" answer, 2 usage
//! or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{
    collapse_ideal, sample_multiplicities, union_ideal, verify_collapse, verify_matrices,
    verify_multiplicity, verify_union, Check,
};
use crate::error::Error;
use crate::format::{graph_to_json, ideal_to_json, parse_binomial, parse_graph_json};
use crate::graph::Graph;
use crate::groebner::TermOrder;
use crate::matrix::exponent_matrix;
use crate::toric::{membership, toric_ideal, Ideal};

#[derive(Debug, Parser)]
#[command(
    name = "cutideal",
    version,
    about = "Generalised cut ideals of labelled graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exponent matrix.
    Matrix { graph: PathBuf },
    /// Print the cut ideal as a reduced Gröbner basis.
    Ideal {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: Order,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the rank of the exponent matrix.
    Dim { graph: PathBuf },
    /// Collapse vertices i and j.
    Collapse {
        graph: PathBuf,
        i: usize,
        j: usize,
        /// Also write the collapsed graph to this file.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Cut ideal of the collapsed graph computed from the original ideal.
    CollapseIdeal {
        graph: PathBuf,
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cut ideal of a disjoint union assembled from its two factors.
    Union {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree_bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide membership of a binomial in the cut ideal.
    Member { graph: PathBuf, binomial: String },
    /// Check an identity of the calculus against direct computation.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    Collapse {
        graph: PathBuf,
        i: usize,
        j: usize,
    },
    Union {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree_bound: u32,
    },
    /// Random multiplicities on a classical graph.
    Multiplicity {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Matrix identities on random graphs.
    Matrices {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

enum Failure {
    Usage(String),
    No,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_graph_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit_ideal(out: &mut impl Write, ideal: &Ideal, format: Format) -> std::io::Result<()> {
    match format {
        Format::Text => write!(out, "{ideal}"),
        Format::Json => writeln!(out, "{}", ideal_to_json(ideal)),
    }
}

fn report(out: &mut impl Write, checks: &[Check]) -> Result<(), Failure> {
    for c in checks {
        writeln!(out, "{c}").map_err(io)?;
    }
    if checks.iter().all(|c| c.ok) {
        Ok(())
    } else {
        Err(Failure::No)
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("output: {e}"))
}

fn execute(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Matrix { graph } => {
            write!(out, "{}", exponent_matrix(&read_graph(&graph)?)?).map_err(io)?;
        }
        Command::Ideal {
            graph,
            order,
            format,
        } => {
            let ideal = toric_ideal(&read_graph(&graph)?)?;
            let ideal = match order {
                Order::Degrevlex => ideal,
                Order::Lex => ideal.reduced_groebner(&TermOrder::Lex),
            };
            emit_ideal(out, &ideal, format).map_err(io)?;
        }
        Command::Dim { graph } => {
            writeln!(out, "{}", exponent_matrix(&read_graph(&graph)?)?.rank()).map_err(io)?;
        }
        Command::Collapse {
            graph,
            i,
            j,
            emit_graph,
        } => {
            let (g, kind) = read_graph(&graph)?.collapse(i, j)?;
            let json = graph_to_json(&g);
            if let Some(path) = emit_graph {
                std::fs::write(&path, format!("{json}\n"))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            writeln!(out, "{kind}\n{json}").map_err(io)?;
        }
        Command::CollapseIdeal {
            graph,
            i,
            j,
            format,
        } => {
            let ideal = collapse_ideal(&read_graph(&graph)?, i, j)?;
            emit_ideal(out, &ideal.reduced_groebner(&TermOrder::DegRevLex), format).map_err(io)?;
        }
        Command::Union {
            first,
            second,
            degree_bound,
            format,
        } => {
            let ideal = union_ideal(&read_graph(&first)?, &read_graph(&second)?, degree_bound)?;
            emit_ideal(out, &ideal, format).map_err(io)?;
        }
        Command::Member { graph, binomial } => {
            let g = read_graph(&graph)?;
            let b = parse_binomial(&binomial, g.n())?;
            let yes = membership(&g, &b)?;
            writeln!(out, "{}", if yes { "yes" } else { "no" }).map_err(io)?;
            if !yes {
                return Err(Failure::No);
            }
        }
        Command::Verify { what } => {
            let checks = match what {
                Verify::Collapse { graph, i, j } => verify_collapse(&read_graph(&graph)?, i, j)?,
                Verify::Union {
                    first,
                    second,
                    degree_bound,
                } => verify_union(&read_graph(&first)?, &read_graph(&second)?, degree_bound)?,
                Verify::Multiplicity { graph, seed } => {
                    let g = read_graph(&graph)?;
                    let sigma = sample_multiplicities(&mut ChaCha8Rng::seed_from_u64(seed), &g);
                    verify_multiplicity(&g, &sigma)?
                }
                Verify::Matrices { seed, cases } => {
                    verify_matrices(&mut ChaCha8Rng::seed_from_u64(seed), cases)?
                }
            };
            report(out, &checks)?;
        }
    }
    Ok(())
}

/// Runs one invocation; `args` includes the program name.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::No) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
