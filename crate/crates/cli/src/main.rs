use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use central_spectra::invariants::{
    invariants_closed, invariants_oracle, invariants_regular_closed, invariants_spectral,
};
use central_spectra::verify::{run_suite, Status};
use central_spectra::{
    as_regular, check_cospectral, closed_spectrum, direct_spectrum, emit_edge_list, emit_graph6,
    family, kemeny_from_spectrum, parse_graph, regular_nl_spectrum, spectra_equal, Composite,
    Graph, InvariantReport, Route, Spectrum, Transcription,
};
use clap::{Parser, Subcommand, ValueEnum};

mod report;

use report::{cospectral_text, InvariantsReport, Method, SkippedRoute, SpectrumReport};

/// Normalized Laplacian spectra of central graphs and central joins.
#[derive(Parser)]
#[command(name = "cspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Composite to build from the input graph(s).
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    /// Use the input graph as given.
    None,
    Central,
    Cvj,
    Cej,
}

impl Op {
    fn composite(self) -> Option<Composite> {
        match self {
            Op::None => None,
            Op::Central => Some(Composite::Central),
            Op::Cvj => Some(Composite::VertexJoin),
            Op::Cej => Some(Composite::EdgeJoin),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Spectral,
    Closed,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TranscriptionArg {
    Corrected,
    Printed,
}

/// Graph sources are file paths (edge list or graph6, detected from the
/// contents) or `family:NAME`, e.g. `family:complete_bipartite(3,3)`.
#[derive(Subcommand)]
enum Command {
    /// Build a composite graph and write it out.
    Construct {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: Option<String>,
        /// Output path, or `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: OutFormat,
    },
    /// Normalized Laplacian spectrum of a graph or of a composite.
    Spectrum {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "none")]
        op: Op,
        #[arg(long)]
        g2: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Kemeny's constant and the degree Kirchhoff index.
    Invariants {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "none")]
        op: Op,
        #[arg(long)]
        g2: Option<String>,
        #[arg(long, value_enum, default_value = "all")]
        route: RouteArg,
        /// Closed forms to use for the joins.
        #[arg(long, value_enum, default_value = "corrected")]
        transcription: TranscriptionArg,
        #[arg(long)]
        json: bool,
    },
    /// Check whether two graphs share a normalized Laplacian spectrum.
    Cospectral {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in regression suite.
    Verify {
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] central_spectra::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0} verification checks failed")]
    SuiteFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_precondition() => 1,
            CliError::SuiteFailed(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn load(source: &str) -> CliResult<Graph> {
    if let Some(name) = source.strip_prefix("family:") {
        return Ok(family(name)?);
    }
    let text = fs::read_to_string(source).map_err(|e| CliError::Read {
        path: source.to_string(),
        source: e,
    })?;
    Ok(parse_graph(&text)?)
}

/// The graph being analysed plus, for composites, its regular ingredients.
struct Subject {
    graph: Graph,
    op: Option<Composite>,
    g1: Graph,
    g2: Option<Graph>,
    label: String,
}

fn subject(input: &str, op: Op, g2: Option<&str>) -> CliResult<Subject> {
    let g1 = load(input)?;
    let kind = op.composite();
    let needs_partner = kind.is_some_and(Composite::needs_partner);
    let partner_src = g2;
    let g2 = match (needs_partner, g2) {
        (true, Some(src)) => Some(load(src)?),
        (true, None) => return Err(CliError::Usage("this --op needs --g2".into())),
        (false, Some(_)) => return Err(CliError::Usage("--g2 only applies to cvj and cej".into())),
        (false, None) => None,
    };
    let (graph, label) = match kind {
        None => (g1.clone(), input.to_string()),
        Some(k) => (
            k.build(&g1, g2.as_ref())?,
            match partner_src {
                Some(src) => format!("{k}({input}, {src})"),
                None => format!("{k}({input})"),
            },
        ),
    };
    Ok(Subject {
        graph,
        op: kind,
        g1,
        g2,
        label,
    })
}

fn closed_form(s: &Subject) -> CliResult<Spectrum> {
    let rg1 = as_regular(&s.g1)?;
    Ok(match s.op {
        None => regular_nl_spectrum(&rg1)?,
        Some(kind) => {
            let rg2 = s.g2.as_ref().map(as_regular).transpose()?;
            let cf = closed_spectrum::<f64>(kind, &rg1, rg2.as_ref())?;
            if cf.unvalidated_disconnected {
                eprintln!("warning: an input graph is disconnected; compare with --method both");
            }
            cf.assembled
        }
    })
}

fn emit(text: &str, json: Option<String>) {
    match json {
        Some(j) => println!("{j}"),
        None => print!("{text}"),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Construct {
            op,
            g1,
            g2,
            out,
            format,
        } => {
            if op == Op::None {
                return Err(CliError::Usage(
                    "construct needs --op central, cvj or cej".into(),
                ));
            }
            let s = subject(&g1, op, g2.as_deref())?;
            let text = match format {
                OutFormat::Edgelist => emit_edge_list(&s.graph),
                OutFormat::Graph6 => emit_graph6(&s.graph)? + "\n",
            };
            if out.as_os_str() == "-" {
                print!("{text}");
            } else {
                fs::write(&out, text).map_err(|e| CliError::Write {
                    path: out.display().to_string(),
                    source: e,
                })?;
            }
        }
        Command::Spectrum {
            input,
            op,
            g2,
            method,
            json,
        } => {
            let s = subject(&input, op, g2.as_deref())?;
            let (spectrum, method, deviations) = match method {
                MethodArg::Direct => (direct_spectrum::<f64>(&s.graph)?, Method::Direct, None),
                MethodArg::Closed => (closed_form(&s)?, Method::ClosedForm, None),
                MethodArg::Both => {
                    let direct = direct_spectrum::<f64>(&s.graph)?;
                    let closed = closed_form(&s)?;
                    let (_, dev) = spectra_equal(&closed, &direct, 0.0);
                    let devs = [("closed_vs_direct".to_string(), dev)]
                        .into_iter()
                        .collect();
                    (direct, Method::Both, Some(devs))
                }
            };
            let kemeny = kemeny_from_spectrum(&spectrum).ok();
            let report = SpectrumReport {
                source: s.label,
                n: s.graph.n(),
                m: s.graph.m(),
                method,
                eigenvalues: SpectrumReport::entries(&spectrum),
                kemeny,
                degree_kirchhoff: kemeny.map(|k| 2.0 * s.graph.m() as f64 * k),
                deviations,
            };
            emit(&report.to_text(), json.then(|| to_json(&report)));
        }
        Command::Invariants {
            input,
            op,
            g2,
            route,
            transcription,
            json,
        } => {
            let s = subject(&input, op, g2.as_deref())?;
            let transcription = match transcription {
                TranscriptionArg::Corrected => Transcription::Corrected,
                TranscriptionArg::Printed => Transcription::AsPrinted,
            };
            let wanted: Vec<Route> = match route {
                RouteArg::Spectral => vec![Route::Spectral],
                RouteArg::Closed => vec![Route::ClosedForm],
                RouteArg::Oracle => vec![Route::ResistanceOracle],
                RouteArg::All => Route::ALL.to_vec(),
            };
            let mut routes = Vec::new();
            let mut skipped = Vec::new();
            for r in wanted {
                match compute_route(&s, r, transcription) {
                    Ok(rep) => routes.push(rep),
                    // With every route requested, an inapplicable closed form
                    // is reported rather than fatal.
                    Err(CliError::Core(e))
                        if route == RouteArg::All
                            && r == Route::ClosedForm
                            && e.is_precondition() =>
                    {
                        skipped.push(SkippedRoute {
                            route: r,
                            reason: e.to_string(),
                        })
                    }
                    Err(e) => return Err(e),
                }
            }
            let report = InvariantsReport {
                source: s.label,
                n: s.graph.n(),
                m: s.graph.m(),
                deviations: InvariantsReport::pairwise(&routes),
                routes,
                skipped,
            };
            emit(&report.to_text(), json.then(|| to_json(&report)));
        }
        Command::Cospectral { a, b, tol, json } => {
            let outcome = check_cospectral(&load(&a)?, &load(&b)?, tol)?;
            emit(&cospectral_text(&outcome), json.then(|| to_json(&outcome)));
        }
        Command::Verify { suite, json } => {
            if suite != "default" {
                return Err(CliError::Usage(format!(
                    "unknown suite {suite:?}; only \"default\" exists"
                )));
            }
            let results = run_suite();
            let failed = results.iter().filter(|r| r.status == Status::Fail).count();
            if json {
                println!("{}", to_json(&results));
            } else {
                for r in &results {
                    println!("{r}");
                }
                let skipped = results
                    .iter()
                    .filter(|r| r.status == Status::Skipped)
                    .count();
                println!(
                    "{} checks: {} passed, {failed} failed, {skipped} skipped by guards",
                    results.len(),
                    results.len() - failed - skipped
                );
            }
            if failed > 0 {
                return Err(CliError::SuiteFailed(failed));
            }
        }
    }
    Ok(())
}

fn compute_route(
    s: &Subject,
    route: Route,
    transcription: Transcription,
) -> CliResult<InvariantReport> {
    Ok(match route {
        Route::Spectral => invariants_spectral(&s.graph)?,
        Route::ResistanceOracle => invariants_oracle(&s.graph)?,
        Route::ClosedForm => {
            let rg1 = as_regular(&s.g1)?;
            match s.op {
                None => invariants_regular_closed(&rg1)?,
                Some(kind) => {
                    let rg2 = s.g2.as_ref().map(as_regular).transpose()?;
                    invariants_closed(kind, &rg1, rg2.as_ref(), transcription)?
                }
            }
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
