//! Command-line front end: argument parsing, result documents and the
//! on-disk intersection-number cache.

pub mod args;
pub mod cache;
pub mod commands;
pub mod document;

use std::time::Instant;

use clap::Parser;
use omega_core::genus0::intersect::IntersectionCache;
use omega_core::Error;

use crate::args::Cli;
use crate::cache::CacheFile;
use crate::document::{CacheReport, ResultDocument, Status};

/// Exit status for an error: 2 when the input is at fault, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unstable(_)
        | Error::ModularConstraint(_)
        | Error::InvalidInput(_)
        | Error::UnstableRelationTerm(_)
        | Error::BoundednessViolated(_)
        | Error::Parse(_) => 2,
        Error::NonRemovableSingularity(_) | Error::CapExceeded { .. } | Error::QuasiPolynomiality(_) => 1,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status with the text to print on stdout and on stderr.
pub fn run(argv: Vec<String>) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        // --help and --version print to stdout and succeed
        Err(e) if !e.use_stderr() => return (0, e.to_string(), String::new()),
        Err(e) => return (2, String::new(), e.render().to_string()),
    };
    let start = Instant::now();
    if let Some(t) = cli.threads {
        omega_core::par::set_threads(t);
    }
    let cache = IntersectionCache::global();
    cache.set_enabled(!cli.no_cache);
    let mut report = CacheReport { enabled: !cli.no_cache, ..CacheReport::default() };
    let mut file = None;
    let mut stderr = String::new();
    let mut early = None;
    if let (Some(path), false) = (&cli.cache_path, cli.no_cache) {
        report.path = Some(path.display().to_string());
        match CacheFile::load(path) {
            Ok(f) => {
                report.loaded = f.loaded();
                file = Some(f);
            }
            Err(e) => early = Some(e),
        }
    }
    let (outcome, result) = match early {
        Some(e) => (Default::default(), Err(e)),
        None => commands::execute(&cli.command, cli.max_degree_cap),
    };
    if let Some(f) = file.as_mut() {
        match f.append_new() {
            Ok(n) => report.appended = n,
            Err(e) => stderr.push_str(&format!("warning: cache not written to {}: {e}\n", f.path().display())),
        }
    }
    let stats = cache.stats();
    report.entries = stats.entries;
    report.hits = stats.hits;
    report.misses = stats.misses;
    let (status, code, message) = match &result {
        Ok(()) if outcome.mismatch => (Status::Mismatch, 1, Some("verification mismatch".to_string())),
        Ok(()) => (Status::Ok, 0, None),
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            let code = exit_code(e);
            (if code == 2 { Status::InvalidInput } else { Status::Error }, code, Some(e.to_string()))
        }
    };
    let doc = ResultDocument {
        command: argv.into_iter().skip(1).collect(),
        inputs: outcome.inputs,
        outputs: outcome.outputs,
        status,
        message,
        wall_time_us: start.elapsed().as_micros() as u64,
        cache: report,
    };
    (code, doc.render(cli.format), stderr)
}
