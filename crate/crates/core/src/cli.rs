//! The batch pipeline behind the `upp-elab` binary: read an input signature
//! and an optional constraint file, elaborate entry by entry, re-check the
//! printed result, and write the artifacts.
//!
//! [`translate`] does all of this in memory; [`run`] adds the file handling.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::agda::export_agda_style;
use crate::elab::{elaborate_entry, erase_entry, ElabEntryResult, ElabError, ElabOptions, Pts};
use crate::kernel::{Name, Signature, DEFAULT_FUEL};
use crate::syntax::{parse_constraints, parse_output_entries, parse_signature_with, print_signature};
use crate::unify::Equation;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub constraints: Option<PathBuf>,
    pub output: PathBuf,
    pub agda_out: Option<PathBuf>,
    pub heuristic: bool,
    /// Write the unifier's steps to `<output>.trace`.
    pub trace: bool,
    pub fuel: u64,
    pub pts: Pts,
    /// Print each erased entry instead of writing anything.
    pub dry_run: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, output: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            constraints: None,
            output: output.into(),
            agda_out: None,
            heuristic: false,
            trace: false,
            fuel: DEFAULT_FUEL,
            pts: Pts::default(),
            dry_run: false,
        }
    }

    pub fn trace_path(&self) -> PathBuf {
        let mut p = self.output.clone().into_os_string();
        p.push(".trace");
        p.into()
    }
}

/// A failure with a machine-readable code: `IO`, `PARSE`, or one of the
/// elaboration codes from [`ElabError::code`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: &'static str,
    pub entry: Option<Name>,
    pub message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            entry: None,
            message: message.into(),
        }
    }

    fn at(entry: &Name, e: &ElabError) -> Self {
        let mut message = e.to_string();
        if let ElabError::UnifyStuck { partial, .. } = e {
            if !partial.is_empty() {
                message += &format!(" (after {partial})");
            }
        }
        Failure {
            code: e.code(),
            entry: Some(entry.clone()),
            message,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.entry {
            Some(e) => write!(f, "{} {e}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

/// Everything an in-memory run produces. `failure` is set when elaboration
/// stopped early; `results` then holds the entries done before it.
#[derive(Clone, Debug)]
pub struct Translation {
    pub signature: Signature,
    pub results: Vec<ElabEntryResult>,
    /// The printed output signature; empty unless every entry succeeded.
    pub output: String,
    pub trace: String,
    pub failure: Option<Failure>,
}

impl Translation {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

fn constraints_by_entry(src: &str, entries: &[Name]) -> Result<BTreeMap<String, Vec<Equation>>, Failure> {
    let mut by_entry: BTreeMap<String, Vec<Equation>> = BTreeMap::new();
    for c in parse_constraints(src).map_err(|e| Failure::new("PARSE", format!("constraints {e}")))? {
        if !entries.iter().any(|n| **n == *c.entry) {
            return Err(Failure::new(
                "PARSE",
                format!("constraints {}: no entry named `{}`", c.pos, c.entry),
            ));
        }
        by_entry.entry(c.entry).or_default().push(c.equation);
    }
    Ok(by_entry)
}

/// Re-reads the printed signature and checks every entry from scratch.
fn recheck(text: &str, fuel: u64) -> Result<(), Failure> {
    let base = Signature::upp();
    let entries = parse_output_entries(text, &base)
        .map_err(|e| Failure::new("POSTCHECK_BUG", format!("printed output does not parse: {e}")))?;
    let mut sig = base;
    for e in entries {
        let name = e.name.clone();
        sig.check_and_push(e, fuel).map_err(|err| Failure {
            code: "POSTCHECK_BUG",
            entry: Some(name),
            message: format!("printed output fails the kernel check: {err}"),
        })?;
    }
    Ok(())
}

/// Parses, elaborates and re-checks `input` without touching the file
/// system. Parse errors are returned directly; elaboration failures are
/// reported inside the [`Translation`].
pub fn translate(
    input: &str,
    constraints: Option<&str>,
    pts: &Pts,
    opts: ElabOptions,
) -> Result<Translation, Failure> {
    let inputs = parse_signature_with(input, pts).map_err(|e| Failure::new("PARSE", format!("input {e}")))?;
    let names: Vec<Name> = inputs.iter().map(|e| e.name.clone()).collect();
    let user = match constraints {
        Some(src) => constraints_by_entry(src, &names)?,
        None => BTreeMap::new(),
    };

    let mut out = Translation {
        signature: Signature::upp(),
        results: Vec::new(),
        output: String::new(),
        trace: String::new(),
        failure: None,
    };
    for input in &inputs {
        let eqs = user.get(&*input.name).map(Vec::as_slice).unwrap_or_default();
        let r = elaborate_entry(&out.signature, input, eqs, opts);
        out.trace += &format!("# {}\n", input.name);
        let events = match &r {
            Ok(r) => &r.trace[..],
            Err(e) => e.trace(),
        };
        for ev in events {
            out.trace += &format!("{ev}\n");
        }
        match r {
            Ok(r) => {
                out.signature
                    .push_unchecked(r.entry.clone())
                    .map_err(|e| Failure::at(&input.name, &e.into()))?;
                out.results.push(r);
            }
            Err(e) => {
                out.failure = Some(Failure::at(&input.name, &e));
                return Ok(out);
            }
        }
    }

    let text = print_signature(&out.signature);
    if let Err(f) = recheck(&text, opts.fuel) {
        out.failure = Some(f);
        return Ok(out);
    }
    out.output = text;
    Ok(out)
}

/// The erased form of each entry, with its generated level variables, for
/// writing constraint files. Entries are elaborated as they go so that later
/// ones see the level parameters of earlier ones; the listing stops after
/// the first entry that fails.
pub fn dry_run(
    input: &str,
    constraints: Option<&str>,
    pts: &Pts,
    opts: ElabOptions,
) -> Result<(String, Option<Failure>), Failure> {
    let inputs = parse_signature_with(input, pts).map_err(|e| Failure::new("PARSE", format!("input {e}")))?;
    let names: Vec<Name> = inputs.iter().map(|e| e.name.clone()).collect();
    let user = match constraints {
        Some(src) => constraints_by_entry(src, &names)?,
        None => BTreeMap::new(),
    };
    let mut sig = Signature::upp();
    let mut listing = String::new();
    for input in &inputs {
        let erased = match erase_entry(input, &sig) {
            Ok(e) => e,
            Err(e) => return Ok((listing, Some(Failure::at(&input.name, &e)))),
        };
        listing += &format!("{erased}\n");
        let eqs = user.get(&*input.name).map(Vec::as_slice).unwrap_or_default();
        match elaborate_entry(&sig, input, eqs, opts) {
            Ok(r) => {
                if let Err(e) = sig.push_unchecked(r.entry) {
                    return Ok((listing, Some(Failure::at(&input.name, &e.into()))));
                }
            }
            Err(e) => return Ok((listing, Some(Failure::at(&input.name, &e)))),
        }
    }
    Ok((listing, None))
}

/// What [`run`] did: the process exit code, text for standard output, and
/// diagnostics for standard error.
#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub exit_code: i32,
    pub stdout: String,
    pub diagnostics: Vec<String>,
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::new("IO", format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("IO", format!("{}: {e}", path.display())))
}

/// Runs the whole pipeline. Exit code 0 means the output file was written
/// and the printed signature passed a full kernel re-check; 1 means an entry
/// failed; 2 means the inputs could not be read or parsed.
pub fn run(cfg: &RunConfig) -> RunReport {
    let mut report = RunReport::default();
    if let Err(f) = run_inner(cfg, &mut report) {
        report.exit_code = if matches!(f.code, "IO" | "PARSE") { 2 } else { 1 };
        report.diagnostics.push(f.to_string());
    }
    report
}

fn run_inner(cfg: &RunConfig, report: &mut RunReport) -> Result<(), Failure> {
    if cfg.fuel == 0 {
        return Err(Failure::new("PARSE", "fuel must be at least 1"));
    }
    let input = read(&cfg.input)?;
    let constraints = cfg.constraints.as_deref().map(read).transpose()?;
    let opts = ElabOptions {
        heuristic: cfg.heuristic,
        fuel: cfg.fuel,
    };

    if cfg.dry_run {
        let (listing, failure) = dry_run(&input, constraints.as_deref(), &cfg.pts, opts)?;
        report.stdout = listing;
        return failure.map_or(Ok(()), Err);
    }

    let t = translate(&input, constraints.as_deref(), &cfg.pts, opts)?;
    if cfg.trace {
        write_atomic(&cfg.trace_path(), &t.trace)?;
    }
    for r in t.results.iter().filter(|r| r.heuristic) {
        report
            .diagnostics
            .push(format!("warning {}: levels chosen by the heuristic, not a most general solution", r.entry.name));
    }
    if let Some(f) = t.failure {
        return Err(f);
    }
    write_atomic(&cfg.output, &t.output)?;
    if let Some(path) = &cfg.agda_out {
        write_atomic(path, &export_agda_style(&t.signature))?;
    }
    Ok(())
}
