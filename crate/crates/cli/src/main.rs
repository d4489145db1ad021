use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use serrelab::commands::{self, Failure};
use serrelab::corpus;
use serrelab::doc::{parse_source, SourceDocument};
use serrelab::json::to_text;
use serrelab_core::{Budget, Settings};

#[derive(Parser)]
#[command(name = "serrelab", version, about = "Tangent cones, Hilbert-Samuel and Serre intersection multiplicities")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, default_value_t = 40)]
    max_degree: u32,
    #[arg(long, global = true, default_value_t = 24)]
    max_n: usize,
    #[arg(long, global = true, default_value_t = 3)]
    window: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Source file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal.
    Gb {
        #[command(flatten)]
        src: Source,
        ideal: String,
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Multiplicity of A/I at the origin.
    Mult {
        #[command(flatten)]
        src: Source,
        ideal: String,
    },
    /// Certified tangent cone of A/I.
    Tangent {
        #[command(flatten)]
        src: Source,
        ideal: String,
    },
    /// Intersection multiplicity chi(A/I, A/J).
    Chi {
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
    },
    /// Full report: chi, multiplicities, excess, tangent dimension, verdicts.
    Report {
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
        /// Assert both quotients are equidimensional.
        #[arg(long)]
        equidim: bool,
    },
    /// Tangent cone of a tensor product over the field against its factors.
    Samuel {
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
    },
    /// Defect of the surjection onto the tangent cone of a tensor product over t.
    Psi {
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
    },
    /// Dimension versus multiplicity comparison for a tensor product over t.
    Dimcut {
        #[command(flatten)]
        src: Source,
        left: String,
        right: String,
    },
    /// Checks a decomposition claim against the multiplicity.
    Additivity {
        #[command(flatten)]
        src: Source,
        claim: String,
    },
    /// Parses a document and prints it in normal form.
    Fmt {
        #[command(flatten)]
        src: Source,
    },
    /// Runs the built-in fixture corpus.
    Corpus {
        /// One of paper, complementary, flat, samuel, equidim; all when omitted.
        #[arg(long)]
        suite: Option<String>,
        /// Append one JSON line per fixture to this file.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
}

fn read_doc(src: &Source) -> Result<SourceDocument, Failure> {
    let text = if src.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&src.file).map_err(|e| Failure::Usage(format!("{}: {e}", src.file.display())))?
    };
    Ok(parse_source(&text)?)
}

fn execute(cli: &Cli, s: &Settings) -> Result<(Value, String), Failure> {
    let simple = |v: Value| {
        let text = to_text(&v);
        (v, text)
    };
    Ok(match &cli.command {
        Command::Gb { src, ideal, order } => {
            simple(commands::gb(&read_doc(src)?, ideal, &commands::parse_order(order)?, s)?)
        }
        Command::Mult { src, ideal } => simple(commands::mult(&read_doc(src)?, ideal, s)?),
        Command::Tangent { src, ideal } => simple(commands::tangent(&read_doc(src)?, ideal, s)?),
        Command::Chi { src, left, right } => simple(commands::chi(&read_doc(src)?, left, right, s)?),
        Command::Report { src, left, right, equidim } => {
            simple(commands::report(&read_doc(src)?, left, right, *equidim, s)?)
        }
        Command::Samuel { src, left, right } => simple(commands::samuel(&read_doc(src)?, left, right, s)?),
        Command::Psi { src, left, right } => simple(commands::psi(&read_doc(src)?, left, right, s)?),
        Command::Dimcut { src, left, right } => simple(commands::dimcut(&read_doc(src)?, left, right, s)?),
        Command::Additivity { src, claim } => simple(commands::additivity(&read_doc(src)?, claim, s)?),
        Command::Fmt { src } => {
            let doc = read_doc(src)?;
            let text = doc.to_string();
            (json!({ "source": text }), text)
        }
        Command::Corpus { suite, ledger } => {
            let fixtures = corpus::load(suite.as_deref())?;
            let outcomes = corpus::run(&fixtures, s);
            if let Some(path) = ledger {
                corpus::append_ledger(path, &outcomes)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name.as_str()).collect();
            let v = json!({
                "suite": suite.as_deref().unwrap_or("all"),
                "summary": corpus::summary(&outcomes),
                "fixtures": outcomes.iter().map(|o| o.record.clone()).collect::<Vec<_>>(),
            });
            let text = corpus::table(&outcomes);
            if !failed.is_empty() {
                if cli.json {
                    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
                } else {
                    print!("{text}");
                }
                return Err(Failure::Mismatch(failed.join(", ")));
            }
            (v, text)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        budget: Budget { max_degree: cli.max_degree, ..Budget::default() },
        max_n: cli.max_n,
        window: cli.window,
        ..Settings::default()
    };
    let clock = Instant::now();
    match execute(&cli, &settings) {
        Ok((value, text)) => {
            if cli.json {
                let args: Vec<String> = std::env::args().skip(1).collect();
                let mut doc = json!({
                    "command": args,
                    "tool": "serrelab",
                    "version": serrelab::VERSION,
                    "result": value,
                });
                if cli.timing {
                    doc["timing_ms"] = json!(clock.elapsed().as_millis() as u64);
                }
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{text}");
                if cli.timing {
                    println!("time: {} ms", clock.elapsed().as_millis());
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
