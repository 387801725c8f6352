//! Command-line driver: reads resolution or plumbing documents, runs the
//! pipeline stages, and emits canonical documents or DOT.
//!
//! Exit codes follow `sysexits` where one applies: 0 on success, 1 when
//! `validate` finds violations, 2 when `construct` or `check` fails
//! verification, 64 for usage errors, 65 for malformed or inconsistent
//! input data, 66 for I/O failures.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mfplumb::calculus::normalize;
use mfplumb::construct::build_plumbing;
use mfplumb::dot::export_dot;
use mfplumb::format::{parse_plumbing, parse_resolution, serialize_plumbing, serialize_resolution};
use mfplumb::plumbing::all_residuals;
use mfplumb::resolution::{check_balance, solve_multiplicities, MultPair, ResolutionGraph};
use mfplumb::tab::gen_tab;
use mfplumb::{Error, Result};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 66;

#[derive(Parser)]
#[command(
    name = "mfplumb",
    version,
    about = "Plumbing graphs for boundaries of Milnor fibers of f + z*g"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a resolution document structurally and, when it carries vertex
    /// multiplicities, for balance
    Validate {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Solve the balance equations for the vertex multiplicities
    Solve {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
        /// Output file, or - for stdout
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Report the vertex partition and the component invariants
    Partition {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Build the boundary plumbing graph with the multiplicity system of z
    Construct {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
        /// Output file, or - for stdout
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Verify the multiplicity identity at every vertex of a plumbing document
    Check {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Blow down removable vertices until none remain
    Simplify {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
        /// Output file, or - for stdout
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Generate decorated resolution graphs for built-in families
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Re-emit a plumbing document in another format
    Export {
        /// Input file, or - for stdin
        #[arg(default_value = "-")]
        input: String,
        /// Output format
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Output file, or - for stdout
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The pair f = x^a + y^b, g = xy (requires 2 <= b <= a)
    Tab {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Output file, or - for stdout
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum ExportFormat {
    /// Graphviz DOT
    Dot,
    /// Canonical JSON
    Native,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate { input } => cmd_validate(&input),
        Command::Solve { input, output } => cmd_solve(&input, output.as_deref()),
        Command::Partition { input } => cmd_partition(&input),
        Command::Construct { input, output } => cmd_construct(&input, output.as_deref()),
        Command::Check { input } => cmd_check(&input),
        Command::Simplify { input, output } => cmd_simplify(&input, output.as_deref()),
        Command::Gen { family } => match family {
            GenCommand::Tab { a, b, output } => cmd_gen_tab(a, b, output.as_deref()),
        },
        Command::Export {
            input,
            format,
            output,
        } => cmd_export(&input, format, output.as_deref()),
    }
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

fn write_output(path: Option<&str>, text: &str) -> io::Result<()> {
    match path {
        None | Some("-") => io::stdout().write_all(text.as_bytes()),
        Some(path) => fs::write(path, text),
    }
}

fn io_fail(path: &str, err: &io::Error) -> u8 {
    eprintln!("error: {path}: {err}");
    EXIT_IO
}

fn data_fail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    match err {
        Error::VerificationFailed(_) => EXIT_VERIFICATION,
        _ => EXIT_DATA,
    }
}

fn emit(output: Option<&str>, text: &str) -> u8 {
    match write_output(output, text) {
        Ok(()) => 0,
        Err(err) => io_fail(output.unwrap_or("-"), &err),
    }
}

/// Reads a resolution document and ensures the vertex multiplicities are
/// present, solving the balance equations when the document omits them.
fn load_solved(text: &str) -> Result<(ResolutionGraph, MultPair)> {
    let (graph, pair) = parse_resolution(text)?;
    if pair.covers_vertices(&graph) {
        graph.validate()?;
        Ok((graph, pair))
    } else {
        let solved = solve_multiplicities(&graph, &pair)?;
        Ok((graph, solved))
    }
}

fn unbalanced_error(graph: &ResolutionGraph, pair: &MultPair) -> Result<Option<Error>> {
    let violations = check_balance(graph, pair)?;
    Ok(violations.first().map(|first| Error::Unbalanced {
        count: violations.len(),
        first: format!("{} of {}", first.family, first.vertex),
    }))
}

fn cmd_validate(input: &str) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let (graph, pair) = match parse_resolution(&text) {
        Ok(parsed) => parsed,
        Err(err @ Error::Json(_)) => return data_fail(&err),
        Err(err) => {
            eprintln!("violation: {err}");
            return EXIT_VIOLATIONS;
        }
    };
    if let Err(err) = graph.validate() {
        eprintln!("violation: {err}");
        return EXIT_VIOLATIONS;
    }
    if !pair.covers_vertices(&graph) {
        println!("ok: structure (no vertex multiplicities to balance)");
        return 0;
    }
    match check_balance(&graph, &pair) {
        Ok(violations) if violations.is_empty() => {
            println!("ok: structure and balance");
            0
        }
        Ok(violations) => {
            for v in &violations {
                eprintln!(
                    "violation: {} balance fails at {} with residual {}",
                    v.family, v.vertex, v.residual
                );
            }
            EXIT_VIOLATIONS
        }
        Err(err) => data_fail(&err),
    }
}

fn cmd_solve(input: &str, output: Option<&str>) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let doc = parse_resolution(&text).and_then(|(graph, pair)| {
        let solved = solve_multiplicities(&graph, &pair)?;
        serialize_resolution(&graph, &solved)
    });
    match doc {
        Ok(doc) => emit(output, &doc),
        Err(err) => data_fail(&err),
    }
}

#[derive(Serialize)]
struct PartitionReport {
    w1: Vec<String>,
    w2: Vec<String>,
    af1: Vec<String>,
    af2: Vec<String>,
    ag1: Vec<String>,
    ag2: Vec<String>,
    components: Vec<ComponentReport>,
}

#[derive(Serialize)]
struct ComponentReport {
    vertices: Vec<String>,
    boundary: Vec<BoundaryReport>,
    d: i64,
    genus: u32,
    euler: i64,
}

#[derive(Serialize)]
struct BoundaryReport {
    inner: String,
    outer: String,
    parallel_index: usize,
    outer_is_arrow: bool,
    m_e: i64,
}

fn partition_report(graph: &ResolutionGraph, pair: &MultPair) -> Result<String> {
    if let Some(err) = unbalanced_error(graph, pair)? {
        return Err(err);
    }
    let part = mfplumb::resolution::partition(graph, pair)?;
    let components = mfplumb::resolution::components_gamma1(graph, pair, &part)?
        .into_iter()
        .map(|c| ComponentReport {
            vertices: c.vertices,
            boundary: c
                .boundary
                .into_iter()
                .map(|b| BoundaryReport {
                    inner: b.inner,
                    outer: b.outer,
                    parallel_index: b.parallel_index,
                    outer_is_arrow: b.outer_is_arrow,
                    m_e: b.m_e,
                })
                .collect(),
            d: c.d,
            genus: c.genus,
            euler: c.euler,
        })
        .collect();
    let report = PartitionReport {
        w1: part.w1.into_iter().collect(),
        w2: part.w2.into_iter().collect(),
        af1: part.af1.into_iter().collect(),
        af2: part.af2.into_iter().collect(),
        ag1: part.ag1.into_iter().collect(),
        ag2: part.ag2.into_iter().collect(),
        components,
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| Error::Json(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn cmd_partition(input: &str) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let report = load_solved(&text).and_then(|(graph, pair)| partition_report(&graph, &pair));
    match report {
        Ok(report) => emit(None, &report),
        Err(err) => data_fail(&err),
    }
}

fn cmd_construct(input: &str, output: Option<&str>) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let doc = load_solved(&text).and_then(|(graph, pair)| {
        let out = build_plumbing(&graph, &pair)?;
        serialize_plumbing(&out.graph, Some(&out.zsys), Some(&out.provenance))
    });
    match doc {
        Ok(doc) => emit(output, &doc),
        Err(err) => data_fail(&err),
    }
}

fn cmd_check(input: &str) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let (graph, sys, _) = match parse_plumbing(&text) {
        Ok(parsed) => parsed,
        Err(err) => return data_fail(&err),
    };
    let Some(sys) = sys else {
        eprintln!("error: the document carries no multiplicity system");
        return EXIT_DATA;
    };
    let residuals = match all_residuals(&graph, &sys) {
        Ok(residuals) => residuals,
        Err(err) => return data_fail(&err),
    };
    let bad: Vec<_> = residuals.into_iter().filter(|(_, r)| *r != 0).collect();
    if bad.is_empty() {
        println!(
            "ok: the multiplicity identity holds at all {} vertices",
            graph.vertex_count()
        );
        0
    } else {
        for (id, residual) in &bad {
            eprintln!("identity fails at {id}: residual {residual}");
        }
        EXIT_VERIFICATION
    }
}

fn cmd_simplify(input: &str, output: Option<&str>) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let (mut graph, mut sys, pieces) = match parse_plumbing(&text) {
        Ok(parsed) => parsed,
        Err(err) => return data_fail(&err),
    };
    let steps = match normalize(&mut graph, sys.as_mut()) {
        Ok(steps) => steps,
        Err(err) => return data_fail(&err),
    };
    eprintln!("blown down {steps} vertices");
    let pieces: BTreeMap<_, _> = pieces
        .into_iter()
        .filter(|(id, _)| graph.contains(id))
        .collect();
    match serialize_plumbing(&graph, sys.as_ref(), Some(&pieces)) {
        Ok(doc) => emit(output, &doc),
        Err(err) => data_fail(&err),
    }
}

fn cmd_gen_tab(a: i64, b: i64, output: Option<&str>) -> u8 {
    let doc = gen_tab(a, b).and_then(|(graph, pair)| serialize_resolution(&graph, &pair));
    match doc {
        Ok(doc) => emit(output, &doc),
        Err(err) => data_fail(&err),
    }
}

fn cmd_export(input: &str, format: ExportFormat, output: Option<&str>) -> u8 {
    let text = match read_input(input) {
        Ok(text) => text,
        Err(err) => return io_fail(input, &err),
    };
    let (graph, sys, pieces) = match parse_plumbing(&text) {
        Ok(parsed) => parsed,
        Err(err) => return data_fail(&err),
    };
    let doc = match format {
        ExportFormat::Dot => Ok(export_dot(&graph, sys.as_ref())),
        ExportFormat::Native => serialize_plumbing(&graph, sys.as_ref(), Some(&pieces)),
    };
    match doc {
        Ok(doc) => emit(output, &doc),
        Err(err) => data_fail(&err),
    }
}
