use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hennings::diagrams::{linking, load};
use hennings::hennings::{crossing_limit, InvariantRecord};
use hennings::lie::{balance, CartanType};
use hennings::suites::{algebra_by_name, run_suite, Suite, SuiteConfig};
use hennings::Error;

/// Links shipped with the crate, found by bare file name.
const BUNDLED_LINKS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/links");

#[derive(Parser)]
#[command(name = "hennings", version, about = "Exact Hennings invariants over cyclotomic rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant of the manifold obtained by surgery on a link.
    Invariant {
        #[arg(long, default_value = "dbz")]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        ell: u32,
        #[arg(long)]
        link: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Reject links with an odd framing.
        #[arg(long)]
        even_framing: bool,
        /// Crossing limit; overrides HENNINGS_MAX_CROSSINGS.
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    /// Runs a named verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 3)]
        ell: u32,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Balancing arithmetic for a simple Lie type.
    Balance {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        ell: i64,
        #[arg(long, default_value_t = 1)]
        scale: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Prints every structure constant of an algebra.
    DumpAlgebra {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        ell: u32,
    },
}

fn emit<T: Serialize>(format: Format, rec: &T, text: String) {
    match format {
        Format::Text => println!("{text}"),
        Format::JsonLines => println!("{}", serde_json::to_string(rec).expect("records serialize")),
    }
}

fn resolve(p: &Path) -> Result<PathBuf, Error> {
    if p.exists() {
        return Ok(p.to_path_buf());
    }
    let bundled = Path::new(BUNDLED_LINKS).join(p);
    if p.components().count() == 1 && bundled.exists() {
        return Ok(bundled);
    }
    Err(Error::Domain(format!("no such link file: {}", p.display())))
}

fn invariant(
    algebra: &str,
    ell: u32,
    link: &Path,
    format: Format,
    even_framing: bool,
    max_crossings: Option<usize>,
) -> Result<(), Error> {
    let path = resolve(link)?;
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
    let d = load(&text)?;
    if !d.is_closed() {
        return Err(Error::Domain("surgery needs a closed link".into()));
    }
    if even_framing {
        let lk = linking(&d)?;
        if let Some(i) = (0..lk.matrix.len()).find(|&i| lk.matrix[i][i] % 2 != 0) {
            return Err(Error::Domain(format!("component {i} has odd framing {}", lk.matrix[i][i])));
        }
    }
    let h = algebra_by_name(algebra, ell)?;
    let limit = match max_crossings {
        Some(m) => Some(m),
        None => crossing_limit(ell)?,
    };
    let file = link.display().to_string();
    let rec = InvariantRecord::compute(&d, &h, algebra, ell, &file, limit)?;
    emit(format, &rec, rec.to_text());
    Ok(())
}

fn verify(suite: &str, cfg: SuiteConfig, format: Format) -> Result<bool, Error> {
    let suite: Suite = suite.parse()?;
    let outcomes = run_suite(suite, &cfg)?;
    for o in &outcomes {
        emit(format, o, o.to_text());
    }
    let pass = outcomes.iter().all(|o| o.pass);
    if let Format::Text = format {
        println!("{suite}: {}", if pass { "pass" } else { "FAIL" });
    }
    Ok(pass)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Invariant { algebra, ell, link, format, even_framing, max_crossings } => {
            invariant(&algebra, ell, &link, format, even_framing, max_crossings).map(|_| true)
        }
        Command::Verify { suite, algebra, ell, max_rank, format } => {
            verify(&suite, SuiteConfig { algebra, ell, max_rank }, format)
        }
        Command::Balance { ty, ell, scale, format } => {
            let t: CartanType = ty.parse()?;
            let rep = balance(t, ell, scale)?;
            emit(format, &rep, rep.to_text());
            Ok(true)
        }
        Command::DumpAlgebra { algebra, ell } => {
            let h = algebra_by_name(&algebra, ell)?;
            let mut s = String::new();
            h.dump(&mut s).expect("writing to a string");
            print!("{s}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Resource(_) => 3,
                Error::Verify(_) => 1,
                _ => 2,
            })
        }
    }
}
