use std::path::PathBuf;

use binomial_core::PrimePower;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser, PartialEq, Eq)]
#[command(
    name = "binomial",
    version,
    about = "Irreducible binomials over finite and pseudofinite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Paper,
    Dirichlet,
}

impl GenKind {
    fn as_str(self) -> &'static str {
        match self {
            GenKind::Paper => "paper",
            GenKind::Dirichlet => "dirichlet",
        }
    }
}

fn parse_prime_power(text: &str) -> Result<PrimePower, String> {
    PrimePower::parse(text).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand, PartialEq, Eq)]
pub enum Command {
    /// Decide irreducibility of x^n - g over F_q.
    Irr {
        #[arg(long, value_parser = parse_prime_power)]
        q: PrimePower,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: u64,
        /// Also run the Rabin test on x^n - g.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Multiplicative order of an element.
    Order {
        #[arg(long, value_parser = parse_prime_power)]
        q: PrimePower,
        #[arg(long)]
        a: String,
        #[arg(long)]
        json: bool,
    },
    /// Canonical generator of F_q^x.
    Gen {
        #[arg(long, value_parser = parse_prime_power)]
        q: PrimePower,
        #[arg(long)]
        json: bool,
    },
    /// Generate a witness family and write it as JSON.
    FamilyGen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Almost-all verdict for the divisibility condition over a family file.
    FamilyCheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Per-index three-way equivalence table over a family file.
    Equiv {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Chain of radical extensions sharing one ambient field.
    Tower {
        #[arg(long, value_parser = parse_prime_power)]
        q: PrimePower,
        #[arg(long)]
        g: String,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Check that radicals of g generate every subfield of F_{q^N}.
    Closure {
        #[arg(long, value_parser = parse_prime_power)]
        q: PrimePower,
        #[arg(long)]
        g: String,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    pub fn json(&self) -> bool {
        match self {
            Command::Irr { json, .. }
            | Command::Order { json, .. }
            | Command::Gen { json, .. }
            | Command::FamilyGen { json, .. }
            | Command::FamilyCheck { json, .. }
            | Command::Equiv { json, .. }
            | Command::Tower { json, .. }
            | Command::Closure { json, .. } => *json,
        }
    }

    /// The canonical argument vector (without the program name).
    pub fn canonical_args(&self) -> Vec<String> {
        let mut args: Vec<String> = Vec::new();
        let mut push = |flag: &str, value: String| {
            args.push(format!("--{flag}"));
            args.push(value);
        };
        let name = match self {
            Command::Irr { q, g, n, .. } => {
                push("q", q.to_string());
                push("g", g.clone());
                push("n", n.to_string());
                "irr"
            }
            Command::Order { q, a, .. } => {
                push("q", q.to_string());
                push("a", a.clone());
                "order"
            }
            Command::Gen { q, .. } => {
                push("q", q.to_string());
                "gen"
            }
            Command::FamilyGen {
                kind, count, out, ..
            } => {
                push("kind", kind.as_str().to_string());
                push("count", count.to_string());
                push("out", out.display().to_string());
                "family-gen"
            }
            Command::FamilyCheck { file, n, .. } => {
                push("file", file.display().to_string());
                push("n", n.to_string());
                "family-check"
            }
            Command::Equiv { file, n, .. } => {
                push("file", file.display().to_string());
                push("n", n.to_string());
                "equiv"
            }
            Command::Tower { q, g, degrees, .. } => {
                push("q", q.to_string());
                push("g", g.clone());
                let list: Vec<String> = degrees.iter().map(u64::to_string).collect();
                push("degrees", list.join(","));
                "tower"
            }
            Command::Closure { q, g, big_n, .. } => {
                push("q", q.to_string());
                push("g", g.clone());
                push("N", big_n.to_string());
                "closure"
            }
        };
        if let Command::Irr { oracle: true, .. } = self {
            args.push("--oracle".to_string());
        }
        if self.json() {
            args.push("--json".to_string());
        }
        args.insert(0, name.to_string());
        args
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("binomial").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn canonical_args_round_trip() {
        let cases: &[&[&str]] = &[
            &["irr", "--q", "13", "--g", "2", "--n", "6"],
            &[
                "irr", "--n", "4", "--q", "3^2", "--g", "1,1", "--json", "--oracle",
            ],
            &["order", "--q", "13", "--a", "2"],
            &["gen", "--q", "25", "--json"],
            &[
                "family-gen",
                "--kind",
                "dirichlet",
                "--count",
                "3",
                "--out",
                "fam.json",
            ],
            &["family-check", "--file", "fam.json", "--n", "6", "--json"],
            &["equiv", "--file", "fam.json", "--n", "6"],
            &["tower", "--q", "13", "--g", "2", "--degrees", "2,4,12"],
            &["closure", "--q", "13", "--g", "2", "--N", "12", "--json"],
        ];
        for case in cases {
            let cli = parse(case);
            let canonical = cli.command.canonical_args();
            let again = parse(&canonical.iter().map(String::as_str).collect::<Vec<_>>());
            assert_eq!(again, cli, "{case:?}");
            assert_eq!(again.command.canonical_args(), canonical);
        }
    }

    #[test]
    fn prime_power_flag_forms() {
        let a = parse(&["gen", "--q", "25"]);
        let b = parse(&["gen", "--q", "5^2"]);
        assert_eq!(a, b);
        assert!(Cli::try_parse_from(["binomial", "gen", "--q", "12"]).is_err());
    }
}
