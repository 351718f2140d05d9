//! Front end for `liftable-core`: argument parsing, input loading, report
//! assembly and rendering. [`run`] is the whole program minus the process.

pub mod report;
pub mod text;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use liftable_core::corpus::{self, CORPUS};
use liftable_core::germ::{load_multigerm, Multigerm};
use liftable_core::liftgen::load_fields;

pub use report::{CorpusReport, EntryResult, Failure, GermReport, MinGenReport, Settings, VerifyReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "liftable", version, about = "Liftable vector fields over corank-one multigerms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Highest level K of the reduced maps to evaluate (default ell + 2).
    #[arg(long, global = true, value_name = "K")]
    pub max_index: Option<usize>,

    /// Jet order of the quotient rings; for `verify`, the order of the check.
    #[arg(long, global = true, value_name = "N")]
    pub jet_order: Option<u32>,

    /// Highest degree of the corrections in constructed generators (default level + 3).
    #[arg(long, global = true, value_name = "D")]
    pub degree: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, reduced-map table, indices and generator count.
    Analyze {
        /// Germ file, or the key of a built-in germ.
        germ: String,
    },
    /// Minimal number of generators, computed by rank and by formula.
    Mingen { germ: String },
    /// Explicit generators with their lifting source fields.
    Liftgen { germ: String },
    /// Checks whether each field in a file lifts over the germ.
    Verify { germ: String, fields: PathBuf },
    /// Runs every built-in germ against its expected values.
    Corpus,
}

/// Reads a germ document, falling back to the built-in germ of that key when
/// no such file exists.
pub fn load_germ(arg: &str) -> Result<Multigerm, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(e) = corpus::entry(arg) {
            return Ok(e.germ());
        }
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?;
    let mut g = load_multigerm(&text)?;
    if g.name.is_none() {
        g.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(g)
}

/// Evaluates the corpus on all available cores. Results come back in corpus
/// order whatever the completion order.
pub fn run_corpus(settings: &Settings) -> (CorpusReport, Vec<Duration>) {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(CORPUS.len());
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<(EntryResult, Duration)>>> = Mutex::new(vec![None; CORPUS.len()]);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(e) = CORPUS.get(k) else { break };
                let start = Instant::now();
                let r = report::corpus_entry(e, settings);
                slots.lock().unwrap()[k] = Some((r, start.elapsed()));
            });
        }
    });
    let (entries, times): (Vec<_>, Vec<_>) = slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|x| x.expect("every entry evaluated"))
        .unzip();
    (CorpusReport::new(entries, report::corpus_fixtures(settings)), times)
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(value),
    };
    let _ = out.write_all(body.as_bytes());
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let settings = Settings {
        max_index: cli.max_index,
        jet_order: cli.jet_order,
        degree: cli.degree,
    };
    let start = Instant::now();
    let code = match &cli.command {
        Command::Analyze { germ } => {
            let r = report::analyze(&load_germ(germ)?, &settings)?;
            emit(out, cli.format, &r, text::germ_report);
            0
        }
        Command::Mingen { germ } => {
            let r = report::mingen(&load_germ(germ)?, &settings)?;
            emit(out, cli.format, &r, text::mingen_report);
            if r.is_success() {
                0
            } else {
                1
            }
        }
        Command::Liftgen { germ } => {
            let d = report::liftgen(&load_germ(germ)?, &settings)?;
            emit(out, cli.format, &d, text::generator_set);
            0
        }
        Command::Verify { germ, fields } => {
            let g = load_germ(germ)?;
            let body = fs::read_to_string(fields)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", fields.display())))?;
            let xs = load_fields(&body, g.p)?;
            let r = report::verify(&g, &xs, &settings)?;
            emit(out, cli.format, &r, text::verify_report);
            if r.all_ok {
                0
            } else {
                1
            }
        }
        Command::Corpus => {
            let (r, times) = run_corpus(&settings);
            for (e, t) in r.entries.iter().zip(&times) {
                let _ = writeln!(err, "{:<20} {:>8.3}s", e.key, t.as_secs_f64());
            }
            emit(out, cli.format, &r, text::corpus_report);
            if r.all_passed {
                0
            } else {
                1
            }
        }
    };
    let _ = writeln!(err, "done in {:.3}s", start.elapsed().as_secs_f64());
    Ok(code)
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code: 0 on success, 1 when a mathematical hypothesis fails or a field does
/// not lift, 2 on input errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}
