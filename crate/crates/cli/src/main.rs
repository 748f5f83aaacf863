use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use otb_core::{builtin, parse_arrangement, Arrangement, Error};
use serde_json::{json, Value};

mod commands;

use commands::Section;

#[derive(Parser, Debug)]
#[command(name = "otb", version, about = "Orlik-Terao algebras, Betti tables, resonance and nets of plane line arrangements")]
struct Cli {
    /// Built-in arrangement: braid-a3, 9_3_1, 9_3_2, b3, ex-2-4.
    #[arg(long, global = true, conflicts_with = "arrangement")]
    builtin: Option<String>,
    /// JSON file {"name": ..., "forms": [[a,b,c], ...]}.
    #[arg(long, global = true, value_name = "FILE")]
    arrangement: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lines, flats and the double-count identity.
    Info,
    /// Rank-2 flats with incident lines and Möbius values.
    Flats,
    /// Poincaré polynomial of the complement.
    Poincare,
    /// Circuits and their Orlik-Terao relations.
    Circuits {
        #[arg(long, value_name = "N")]
        max_size: Option<usize>,
    },
    /// Hilbert function of the Orlik-Terao algebra against the Poincaré series.
    OtHilbert {
        #[arg(long, value_name = "N", default_value_t = 5)]
        upto: usize,
    },
    /// Graded Betti numbers of the Orlik-Terao algebra.
    Betti {
        /// Also compute strand 3 directly for i <= 4.
        #[arg(long)]
        verify_regularity: bool,
    },
    /// Sections of D_A and their span.
    DivisorDa,
    /// h0, chi and h1 of a divisor m E_0 - sum a_p E_p.
    H0 {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Comma-separated a_p in flat order, or `mu`.
        #[arg(long, value_name = "SPEC")]
        mults: String,
    },
    /// Exhaustive multinet search.
    NetSearch {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        max_weight: u32,
    },
    /// Components of the first resonance variety.
    Resonance,
    /// Multiplication matrix of each net and its determinantal quadrics.
    ScrollCheck,
    /// Partial derivatives of the defining polynomial in the span of the l_i.
    JacobianCheck,
    /// Degree of the gradient projection.
    GradientDegree,
    /// Several computations in one report.
    Report {
        /// Include the expensive sections (Betti table, resonance, scroll).
        #[arg(long)]
        all: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::OracleRejected(_) | Error::Unconfirmed(_) | Error::Degenerate(..) => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("OTB_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("OTB_THREADS must be a positive integer, got '{v}'")))?;
    // a second initialization only happens in tests; ignore it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load(cli: &Cli) -> Result<Arrangement, Failure> {
    match (&cli.builtin, &cli.arrangement) {
        (Some(name), None) => Ok(builtin(name).map_err(|e| {
            Failure::Usage(format!("{e}; available: {}", otb_core::arrangement::BUILTIN_NAMES.join(", ")))
        })?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_arrangement(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?)
        }
        _ => Err(Failure::Usage("give exactly one of --builtin NAME or --arrangement FILE".into())),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Info => "info",
        Command::Flats => "flats",
        Command::Poincare => "poincare",
        Command::Circuits { .. } => "circuits",
        Command::OtHilbert { .. } => "ot-hilbert",
        Command::Betti { .. } => "betti",
        Command::DivisorDa => "divisor-da",
        Command::H0 { .. } => "h0",
        Command::NetSearch { .. } => "net-search",
        Command::Resonance => "resonance",
        Command::ScrollCheck => "scroll-check",
        Command::JacobianCheck => "jacobian-check",
        Command::GradientDegree => "gradient-degree",
        Command::Report { .. } => "report",
    }
}

fn sections(a: &Arrangement, c: &Command) -> Result<Vec<Section>, Failure> {
    let one = |s: otb_core::Result<Section>| -> Result<Vec<Section>, Failure> { Ok(vec![s?]) };
    match c {
        Command::Info => one(Ok(commands::info(a))),
        Command::Flats => one(Ok(commands::flats(a))),
        Command::Poincare => one(Ok(commands::poincare(a))),
        Command::Circuits { max_size } => one(Ok(commands::circuits(a, max_size.unwrap_or(a.len())))),
        Command::OtHilbert { upto } => one(commands::ot_hilbert(a, *upto)),
        Command::Betti { verify_regularity } => one(commands::betti(a, *verify_regularity)),
        Command::DivisorDa => one(commands::divisor_da(a)),
        Command::H0 { m, mults } => {
            let mults = commands::parse_mults(a, mults).map_err(Failure::Usage)?;
            one(commands::h0(a, *m, mults))
        }
        Command::NetSearch { k, max_weight } => one(commands::net_search(a, *k, *max_weight)),
        Command::Resonance => one(commands::resonance(a)),
        Command::ScrollCheck => one(commands::scroll_check(a)),
        Command::JacobianCheck => one(commands::jacobian_check(a)),
        Command::GradientDegree => one(Ok(commands::gradient_degree(a))),
        Command::Report { all } => {
            let mut out = vec![commands::info(a), commands::flats(a), commands::poincare(a), commands::circuits(a, a.len())];
            out.push(commands::ot_hilbert(a, 3)?);
            out.push(commands::divisor_da(a)?);
            out.push(commands::jacobian_check(a)?);
            out.push(commands::gradient_degree(a));
            out.push(commands::hilbert_burch(a));
            if *all {
                out.push(commands::betti(a, false)?);
                out.push(commands::net_search(a, 3, 1)?);
                out.push(commands::resonance(a)?);
                out.push(commands::scroll_check(a)?);
            }
            Ok(out)
        }
    }
}

fn render(cli: &Cli, a: &Arrangement, secs: &[Section]) -> String {
    let verified = secs.iter().all(|s| s.verified);
    let name = a.name().unwrap_or("unnamed");
    let seed = format!("{:#x}", otb_core::rng::SEED);
    match cli.format {
        Format::Json => {
            let mut results = serde_json::Map::new();
            for s in secs {
                results.insert(s.name.to_string(), s.json.clone());
            }
            let report: Value = json!({
                "tool": "otb",
                "version": env!("CARGO_PKG_VERSION"),
                "seed": seed,
                "command": command_name(&cli.command),
                "arrangement": {
                    "name": name,
                    "d": a.len(),
                    "forms": a.to_json()["forms"].clone(),
                },
                "verified": verified,
                "results": Value::Object(results),
            });
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("# otb {} | {} | d = {} | seed {}\n", env!("CARGO_PKG_VERSION"), name, a.len(), seed);
            let titled = secs.len() > 1;
            for sec in secs {
                if titled {
                    s.push_str(&format!("\n== {} ==\n", sec.name));
                }
                s.push_str(&sec.text);
            }
            if !verified {
                let failed: Vec<&str> = secs.iter().filter(|x| !x.verified).map(|x| x.name).collect();
                s.push_str(&format!("\nVERIFICATION FAILED: {}\n", failed.join(", ")));
            }
            s
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let a = load(cli)?;
    let secs = sections(&a, &cli.command)?;
    print!("{}", render(cli, &a, &secs));
    Ok(secs.iter().all(|s| s.verified))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
