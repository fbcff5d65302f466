//! `lls`: run named checks on JSON descriptions of curves, bundles and series.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use lls_core::json::{self, Document};
use lls_core::report::{self, Options, FIXTURE_NAMES};
use lls_core::Error;

/// Environment variable naming a directory of `<name>.json` fixtures that
/// take precedence over the built-in ones.
const FIXTURE_DIR_VAR: &str = "LLS_FIXTURE_DIR";

#[derive(Parser)]
#[command(name = "lls", version, about = "Exact checks for limit linear series on trees of rational curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Input document (stdin when omitted).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Candidate supports examined by witness searches.
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    /// Longest path examined by the prelinked condition.
    #[arg(long)]
    path_bound: Option<usize>,
    /// Extra rational sample points for pointwise checks.
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    CheckLinked(Common),
    CheckEht(Common),
    CheckRefined(Common),
    CheckSimple(Common),
    CheckConstrained(Common),
    CheckAdaptable(Common),
    KernelTable(Common),
    EhtToLinked(Common),
    LinkedToEht(Common),
    ChainBases(Common),
    GrassmannianCheck(Common),
    TangentDim(Common),
    VanishingLocus(Common),
    FamilyLocus(Common),
    /// Expected dimensions for genus g, rank r, degree d and k sections.
    Rho {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a named fixture document, or list the names.
    Fixtures {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLinked(_) => "check-linked",
            Command::CheckEht(_) => "check-eht",
            Command::CheckRefined(_) => "check-refined",
            Command::CheckSimple(_) => "check-simple",
            Command::CheckConstrained(_) => "check-constrained",
            Command::CheckAdaptable(_) => "check-adaptable",
            Command::KernelTable(_) => "kernel-table",
            Command::EhtToLinked(_) => "eht-to-linked",
            Command::LinkedToEht(_) => "linked-to-eht",
            Command::ChainBases(_) => "chain-bases",
            Command::GrassmannianCheck(_) => "grassmannian-check",
            Command::TangentDim(_) => "tangent-dim",
            Command::VanishingLocus(_) => "vanishing-locus",
            Command::FamilyLocus(_) => "family-locus",
            Command::Rho { .. } => "rho",
            Command::Fixtures { .. } => "fixtures",
        }
    }

    fn common(&self) -> Option<&Common> {
        match self {
            Command::CheckLinked(c)
            | Command::CheckEht(c)
            | Command::CheckRefined(c)
            | Command::CheckSimple(c)
            | Command::CheckConstrained(c)
            | Command::CheckAdaptable(c)
            | Command::KernelTable(c)
            | Command::EhtToLinked(c)
            | Command::LinkedToEht(c)
            | Command::ChainBases(c)
            | Command::GrassmannianCheck(c)
            | Command::TangentDim(c)
            | Command::VanishingLocus(c)
            | Command::FamilyLocus(c) => Some(c),
            _ => None,
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("sha256:{:x}", h.finalize())
}

fn read_input(path: Option<&PathBuf>) -> Result<Vec<u8>, String> {
    match path {
        Some(p) => std::fs::read(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        None => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| format!("cannot write stdout: {e}")),
    }
}

fn fixture(name: &str) -> Result<Document, Error> {
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
            return json::parse_document(&text);
        }
    }
    report::fixture_document(name).ok_or_else(|| Error::Schema(format!("unknown fixture {name:?}")))
}

/// Emits the text and maps the outcome to an exit status.
fn finish(output: Option<&PathBuf>, text: &str, code: u8) -> ExitCode {
    match write_output(output, text) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn fail(command: &str, dig: &str, output: Option<&PathBuf>, err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    let text = json::to_canonical(&report::error_value(command, dig, err));
    finish(output, &text, 2);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match &cli.command {
        Command::Fixtures { name: fixture_name, output } => match fixture_name {
            None => finish(output.as_ref(), &json::to_canonical(&FIXTURE_NAMES), 0),
            Some(n) => match fixture(n) {
                Ok(doc) => finish(output.as_ref(), &json::to_canonical(&doc), 0),
                Err(e) => fail(name, "", output.as_ref(), &e),
            },
        },
        Command::Rho { g, r, d, k, output } => {
            let opts = Options { rho: Some((*g, *r, *d, *k)), ..Options::default() };
            let dig = digest(format!("g={g} r={r} d={d} k={k}").as_bytes());
            match report::run(name, &Document::default(), &opts) {
                Ok(out) => finish(output.as_ref(), &json::to_canonical(&report::report_value(name, &dig, &opts, &out)), 0),
                Err(e) => fail(name, &dig, output.as_ref(), &e),
            }
        }
        cmd => {
            let c = cmd.common().expect("every other command takes the common flags");
            let opts = Options {
                seed: c.seed,
                budget: c.budget,
                path_bound: c.path_bound,
                samples: c.samples,
                rho: None,
            };
            let bytes = match read_input(c.input.as_ref()) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let dig = digest(&bytes);
            let text = match String::from_utf8(bytes) {
                Ok(t) => t,
                Err(_) => return fail(name, &dig, c.output.as_ref(), &Error::Schema("input is not UTF-8".into())),
            };
            let result = json::parse_document(&text).and_then(|doc| report::run(name, &doc, &opts));
            match result {
                Ok(out) => {
                    let code = if out.gate == Some(false) { 1 } else { 0 };
                    finish(c.output.as_ref(), &json::to_canonical(&report::report_value(name, &dig, &opts, &out)), code)
                }
                Err(e) => fail(name, &dig, c.output.as_ref(), &e),
            }
        }
    }
}
