//! The `engine` command-line front end.
//!
//! `engine <command> [--json] [--threads N] [--cap-m K] [--cap-dim D]
//! [--timings] <instance.json>` runs every task of the given command found in
//! the instance file, in order.
//!
//! Exit codes: 0 success, 2 usage or schema error (including non-injective
//! maps and singular blocks), 3 cap exceeded, 4 verification failure,
//! 5 inapplicable hypotheses.

mod commands;
mod instance;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

pub use instance::{Instance, PowerKind, Task, SCHEMA_VERSION};

use crate::error::Error;
use crate::limits::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_INAPPLICABLE: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Powers,
    Dim,
    Filtration,
    Verify,
    Idempotents,
    Split,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Powers => "powers",
            Command::Dim => "dim",
            Command::Filtration => "filtration",
            Command::Verify => "verify",
            Command::Idempotents => "idempotents",
            Command::Split => "split",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "engine",
    version,
    about = "Exact powers, filtrations and finite-dimensionality checks for rational chain complexes"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file with objects, maps and tasks.
    pub instance: PathBuf,
    /// Machine-readable JSON instead of tables.
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Largest tensor exponent.
    #[arg(long = "cap-m")]
    pub cap_m: Option<usize>,
    /// Largest total dimension of a complex raised to a power.
    #[arg(long = "cap-dim")]
    pub cap_dim: Option<usize>,
    /// Report elapsed time per task.
    #[arg(long)]
    pub timings: bool,
}

impl Args {
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::from_env();
        limits.threads = self.threads as usize;
        if let Some(m) = self.cap_m {
            limits.max_power = m;
        }
        if let Some(d) = self.cap_dim {
            limits.max_dim = d;
        }
        limits
    }
}

/// Exit code for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::MemoryGuard { .. } => EXIT_CAP,
        Error::Inapplicable(_) | Error::MixedParity => EXIT_INAPPLICABLE,
        _ => EXIT_USAGE,
    }
}

/// The result of one task: its JSON record, its table, and whether every
/// verification in it passed.
pub struct Outcome {
    pub record: Value,
    pub table: String,
    pub pass: bool,
}

/// Parses arguments, runs the command and writes the report. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&args) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(args: &Args) -> Result<(String, i32), Error> {
    let text = std::fs::read_to_string(&args.instance)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", args.instance.display())))?;
    let instance = Instance::parse(&text)?;
    let limits = args.limits();
    let name = args.command.name();
    let tasks: Vec<&Task> = instance.tasks.iter().filter(|t| t.command() == name).collect();
    if tasks.is_empty() {
        return Err(Error::Parse(format!("instance has no {name} tasks")));
    }
    let mut outcomes = Vec::new();
    for task in tasks {
        let start = Instant::now();
        let mut outcome = commands::run_task(&instance, task, &limits)?;
        if args.timings {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            if let Value::Object(map) = &mut outcome.record {
                map.insert("elapsed_ms".into(), json!(ms));
            }
            outcome.table.push_str(&format!("elapsed: {ms:.3} ms\n"));
        }
        outcomes.push(outcome);
    }
    Ok(finish(name, &outcomes, args.json))
}

/// Joins the task reports; any failed verification gives exit code 4.
fn finish(name: &str, outcomes: &[Outcome], as_json: bool) -> (String, i32) {
    let pass = outcomes.iter().all(|o| o.pass);
    let text = if as_json {
        let records: Vec<&Value> = outcomes.iter().map(|o| &o.record).collect();
        let doc = json!({ "command": name, "pass": pass, "results": records });
        serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
    } else {
        let mut s = outcomes.iter().map(|o| o.table.as_str()).collect::<Vec<_>>().join("\n");
        s.push_str(if pass { "\nall checks passed\n" } else { "\nverification FAILED\n" });
        s
    };
    (text, if pass { EXIT_OK } else { EXIT_VERIFICATION })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(pass: bool) -> Outcome {
        Outcome { record: json!({ "pass": pass }), table: "row\n".into(), pass }
    }

    #[test]
    fn failed_verification_exits_with_four() {
        let (_, code) = finish("dim", &[outcome(true), outcome(true)], true);
        assert_eq!(code, EXIT_OK);
        let (text, code) = finish("dim", &[outcome(true), outcome(false)], false);
        assert_eq!(code, EXIT_VERIFICATION);
        assert!(text.ends_with("verification FAILED\n"));
        let (text, _) = finish("dim", &[outcome(false)], true);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["pass"], json!(false));
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::CapExceeded { what: "power", value: 6, cap: 5 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::MemoryGuard { bytes: 2, limit: 1 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::Inapplicable("x".into())), EXIT_INAPPLICABLE);
        assert_eq!(exit_code(&Error::MixedParity), EXIT_INAPPLICABLE);
        assert_eq!(exit_code(&Error::NotInjective { degree: 0 }), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NotInvertible { degree: 0 }), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
    }

    #[test]
    fn usage_errors() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["engine", "bogus", "x.json"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["engine", "dim"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["engine", "dim", "--threads", "0", "x.json"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["engine", "dim", "/nonexistent/x.json"], &mut out, &mut err), EXIT_USAGE);
        out.clear();
        assert_eq!(run(["engine", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("--cap-m"));
    }
}
