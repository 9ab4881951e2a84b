//! Command-line front end: argument parsing, dispatch and report formatting.
//!
//! [`run`] never prints; it returns the exit status and both output streams so
//! callers (the binary, tests) decide what to do with them.

mod command;
mod report;

use std::fs;

use binomial_core::binomial::{binomial_report, BinomialReport};
use binomial_core::field::{find_generator, mult_order};
use binomial_core::pseudofinite::{
    divisibility_verdict, equivalence_report, gen_dirichlet_family, gen_paper_family, Family,
};
use binomial_core::tower::{build_tower, closure_check};
use binomial_core::{build_field_for, Error};
use clap::error::ErrorKind;
use clap::Parser;

pub use command::{Cli, Command, GenKind};
pub use report::{format_report, Mode, Report};

/// Exit status plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

enum Failure {
    Usage(String),
    Computation(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut rendered = e.render().to_string();
            if !rendered.contains("Usage:") {
                let name = argv.get(1).and_then(|a| a.to_str()).unwrap_or_default();
                rendered = format!("{rendered}\n{}\n", usage_named(name));
            }
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    status: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    execute(&cli.command)
}

/// Executes an already parsed command.
pub fn execute(command: &Command) -> Outcome {
    let mode = if command.json() {
        Mode::Json
    } else {
        Mode::Text
    };
    match dispatch(command) {
        Ok(report) => Outcome {
            status: EXIT_OK,
            stdout: format_report(&report, mode),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\n{}\n", usage_for(command)),
        },
        Err(Failure::Io(msg)) => Outcome {
            status: EXIT_COMPUTATION,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Computation(e)) => Outcome {
            status: if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_COMPUTATION
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage_for(command: &Command) -> String {
    usage_named(&command.canonical_args()[0])
}

fn usage_named(name: &str) -> String {
    use clap::CommandFactory;
    let mut app = Cli::command();
    app.build();
    match app.find_subcommand_mut(name) {
        Some(sub) => sub.render_usage().to_string(),
        None => app.render_usage().to_string(),
    }
}

fn parse_field(
    q: &binomial_core::PrimePower,
) -> Result<std::sync::Arc<binomial_core::FieldCtx>, Failure> {
    // Field sizes the library cannot represent are bad flag values.
    build_field_for(q).map_err(|e| Failure::Usage(format!("invalid value for --q: {e}")))
}

fn parse_elem(
    ctx: &binomial_core::FieldCtx,
    flag: &str,
    text: &str,
) -> Result<binomial_core::FieldElem, Failure> {
    ctx.parse_elem(text)
        .map_err(|e| Failure::Usage(format!("invalid value for --{flag}: {e}")))
}

fn load_family(path: &std::path::Path) -> Result<Family, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(Family::from_json(&text)?)
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Irr {
            q, g, n, oracle, ..
        } => {
            let ctx = parse_field(q)?;
            let g = parse_elem(&ctx, "g", g)?;
            let report: BinomialReport = binomial_report(&ctx, &g, *n, *oracle)?;
            Ok(Report::Binomial {
                report,
                modulus: extension_modulus(&ctx),
            })
        }
        Command::Order { q, a, .. } => {
            let ctx = parse_field(q)?;
            let a = parse_elem(&ctx, "a", a)?;
            let order = mult_order(&ctx, &a)?;
            Ok(Report::Order {
                q: q.clone(),
                modulus: extension_modulus(&ctx),
                a,
                order,
            })
        }
        Command::Gen { q, .. } => {
            let ctx = parse_field(q)?;
            let generator = find_generator(&ctx)?;
            Ok(Report::Generator {
                q: q.clone(),
                modulus: extension_modulus(&ctx),
                generator,
            })
        }
        Command::FamilyGen {
            kind, count, out, ..
        } => {
            let family = match kind {
                GenKind::Paper => gen_paper_family(*count)?,
                GenKind::Dirichlet => gen_dirichlet_family(*count)?,
            };
            fs::write(out, family.to_json())
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", out.display())))?;
            Ok(Report::Family {
                family,
                path: out.display().to_string(),
            })
        }
        Command::FamilyCheck { file, n, .. } => {
            let family = load_family(file)?;
            let verdict = divisibility_verdict(&family, *n)?;
            Ok(Report::Verdict {
                family_kind: family.kind(),
                n: *n,
                verdict,
            })
        }
        Command::Equiv { file, n, .. } => {
            let family = load_family(file)?;
            Ok(Report::Equivalence(equivalence_report(&family, *n)?))
        }
        Command::Tower { q, g, degrees, .. } => {
            let ctx = parse_field(q)?;
            let g = parse_elem(&ctx, "g", g)?;
            let levels = build_tower(&ctx, &g, degrees)?;
            Ok(Report::Tower {
                base: q.clone(),
                base_modulus: ctx.modulus_text(),
                g,
                levels,
            })
        }
        Command::Closure { q, g, big_n, .. } => {
            let ctx = parse_field(q)?;
            let g = parse_elem(&ctx, "g", g)?;
            Ok(Report::Closure(closure_check(&ctx, &g, *big_n)?))
        }
    }
}

fn extension_modulus(ctx: &binomial_core::FieldCtx) -> Option<String> {
    (!ctx.is_prime_field()).then(|| ctx.modulus_text())
}
