use std::fmt::Write as _;

use binomial_core::binomial::BinomialReport;
use binomial_core::pseudofinite::{EquivalenceReport, Family, FamilyKind, Verdict};
use binomial_core::tower::{ClosureReport, TowerLevel};
use binomial_core::{FieldElem, PrimePower};
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Text,
    Json,
}

/// Anything a subcommand can print.
#[derive(Debug, Clone)]
pub enum Report {
    Binomial {
        report: BinomialReport,
        /// Set for extension fields only.
        modulus: Option<String>,
    },
    Order {
        q: PrimePower,
        modulus: Option<String>,
        a: FieldElem,
        order: BigUint,
    },
    Generator {
        q: PrimePower,
        modulus: Option<String>,
        generator: FieldElem,
    },
    Family {
        family: Family,
        path: String,
    },
    Verdict {
        family_kind: FamilyKind,
        n: u64,
        verdict: Verdict,
    },
    Equivalence(EquivalenceReport),
    Tower {
        base: PrimePower,
        base_modulus: String,
        g: FieldElem,
        levels: Vec<TowerLevel>,
    },
    Closure(ClosureReport),
}

/// Renders a report. JSON mode yields one object followed by a newline.
pub fn format_report(report: &Report, mode: Mode) -> String {
    match mode {
        Mode::Json => {
            let mut out = match report {
                // The family file format is the family's serialization.
                Report::Family { family, .. } => family.to_json(),
                _ => serde_json::to_string_pretty(&to_json(report))
                    .expect("reports serialize to JSON"),
            };
            if !out.ends_with('\n') {
                out.push('\n');
            }
            out
        }
        Mode::Text => to_text(report),
    }
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn to_json(report: &Report) -> Value {
    match report {
        Report::Binomial { report, .. } => value(report),
        Report::Order {
            q,
            modulus,
            a,
            order,
        } => json!({
            "q": q.q().to_string(),
            "p": q.p().to_string(),
            "t": q.t(),
            "modulus": modulus,
            "a": a,
            "order": order.to_string(),
        }),
        Report::Generator {
            q,
            modulus,
            generator,
        } => json!({
            "q": q.q().to_string(),
            "p": q.p().to_string(),
            "t": q.t(),
            "modulus": modulus,
            "generator": generator,
        }),
        Report::Family { .. } => unreachable!("families use their own file format"),
        Report::Verdict { verdict, .. } => value(verdict),
        Report::Equivalence(r) => value(r),
        Report::Tower {
            base,
            base_modulus,
            g,
            levels,
        } => {
            let ambient = levels.first().map(|l| l.field.clone());
            json!({
                "base": {
                    "q": base.q().to_string(),
                    "p": base.p().to_string(),
                    "t": base.t(),
                    "modulus": base_modulus,
                },
                "g": g,
                "ambient": ambient.map(|f| json!({
                    "q": f.q().to_string(),
                    "p": f.size().p().to_string(),
                    "t": f.degree(),
                    "modulus": f.modulus_text(),
                })),
                "levels": levels.iter().map(|l| json!({
                    "n": l.degree_over_base,
                    "root": l.root,
                    "minimal_poly": l.minimal_poly.to_string(),
                })).collect::<Vec<_>>(),
            })
        }
        Report::Closure(r) => value(r),
    }
}

fn verdict_word(irreducible: bool) -> &'static str {
    if irreducible {
        "irreducible"
    } else {
        "reducible"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn field_name(q: &PrimePower) -> String {
    format!("F_{q}")
}

fn to_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Binomial { report: r, modulus } => {
            let _ = writeln!(out, "{}", verdict_word(r.ln_verdict));
            let _ = writeln!(
                out,
                "polynomial: x^{} - ({}) over {}",
                r.n,
                r.g,
                field_name(&r.q)
            );
            if let Some(m) = modulus {
                let _ = writeln!(out, "modulus: {m}");
            }
            let _ = writeln!(out, "order of g: {}", r.order_e);
            let _ = writeln!(out, "order criterion: {}", verdict_word(r.ln_verdict));
            let _ = writeln!(out, "power criterion: {}", verdict_word(r.karp_verdict));
            if let Some(o) = r.oracle_verdict {
                let _ = writeln!(out, "rabin oracle: {}", verdict_word(o));
            }
            if let Some(c) = r.failed_condition {
                let _ = writeln!(out, "failed: {}", c.as_str());
            }
        }
        Report::Order { modulus, order, .. } => {
            let _ = writeln!(out, "{order}");
            if let Some(m) = modulus {
                let _ = writeln!(out, "modulus: {m}");
            }
        }
        Report::Generator {
            modulus, generator, ..
        } => {
            let _ = writeln!(out, "{generator}");
            if let Some(m) = modulus {
                let _ = writeln!(out, "modulus: {m}");
            }
        }
        Report::Family { family, path } => {
            let qs: Vec<String> = family.entries().iter().map(|e| e.q.to_string()).collect();
            let _ = writeln!(
                out,
                "wrote {} family with {} entries to {path}",
                family.kind().as_str(),
                family.entries().len()
            );
            let _ = writeln!(out, "q: {}", qs.join(", "));
            if let Some(t) = family.tail_guarantee() {
                let _ = writeln!(out, "tail guarantee: {}", t.as_str());
            }
        }
        Report::Verdict {
            family_kind,
            n,
            verdict,
        } => {
            let _ = writeln!(out, "{verdict}");
            let _ = writeln!(out, "family: {}, n = {n}", family_kind.as_str());
            for row in &verdict.per_index {
                let _ = writeln!(out, "  k={} q={} condition: {}", row.k, row.q, row.holds);
            }
            if !verdict.witness_indices.is_empty() {
                let ks: Vec<String> = verdict.witness_indices.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "exceptional indices: {}", ks.join(", "));
            }
        }
        Report::Equivalence(r) => {
            let _ = writeln!(out, "{}", r.verdict);
            let _ = writeln!(out, "n = {}", r.n);
            let _ = writeln!(out, "k\tq\tgenerator\tcondition\texists-g\tgenerator-g");
            for row in &r.rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    row.k,
                    row.q,
                    row.generator,
                    row.divisibility,
                    row.exists_irreducible,
                    row.generator_irreducible
                );
            }
        }
        Report::Tower {
            base,
            base_modulus,
            g,
            levels,
        } => {
            let _ = writeln!(out, "base: {} (modulus {base_modulus})", field_name(base));
            let _ = writeln!(out, "g: {g}");
            if let Some(top) = levels.first() {
                let _ = writeln!(
                    out,
                    "ambient: {} (modulus {})",
                    field_name(top.field.size()),
                    top.field.modulus_text()
                );
            }
            for l in levels {
                let _ = writeln!(out, "n={} root: {}", l.degree_over_base, l.root);
            }
        }
        Report::Closure(r) => {
            let _ = writeln!(out, "hypothesis met: {}", r.hypothesis_met);
            let _ = writeln!(
                out,
                "base: {} (modulus {})",
                field_name(&r.base),
                r.base_modulus
            );
            let _ = writeln!(out, "g: {}", r.g);
            let _ = writeln!(
                out,
                "ambient: {} (modulus {})",
                field_name(&r.ambient),
                r.ambient_modulus
            );
            for row in &r.rows {
                let root = row
                    .root
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    out,
                    "n={} {} root: {root} generates subfield: {}",
                    row.n,
                    verdict_word(row.irreducible),
                    yes_no(row.generates_unique_subfield)
                );
            }
            let obstructions = r.obstructions();
            if !obstructions.is_empty() {
                let ns: Vec<String> = obstructions.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "obstructions: {}", ns.join(", "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use binomial_core::binomial::binomial_report;
    use binomial_core::build_field_for;
    use binomial_core::pseudofinite::{IndexTruth, Outcome};
    use binomial_core::tower::closure_check;

    fn f13() -> std::sync::Arc<binomial_core::FieldCtx> {
        build_field_for(&PrimePower::parse("13").unwrap()).unwrap()
    }

    #[test]
    fn binomial_text_names_failed_condition() {
        let ctx = f13();
        let report = binomial_report(&ctx, &ctx.from_u64(2), 5, false).unwrap();
        let text = format_report(
            &Report::Binomial {
                report,
                modulus: None,
            },
            Mode::Text,
        );
        assert!(text.starts_with("reducible\n"));
        assert!(text.contains("failed: prime-divisor-condition"));
    }

    #[test]
    fn verdict_text_wording() {
        let verdict = Verdict {
            outcome: Outcome::Holds,
            threshold: Some(2),
            witness_indices: vec![1],
            per_index: vec![IndexTruth {
                k: 1,
                q: PrimePower::parse("5").unwrap(),
                holds: false,
            }],
        };
        let text = format_report(
            &Report::Verdict {
                family_kind: FamilyKind::Dirichlet,
                n: 6,
                verdict,
            },
            Mode::Text,
        );
        assert!(text.starts_with("holds for U-almost all k (from k=2)\n"));
    }

    #[test]
    fn closure_json_is_one_object() {
        let ctx = f13();
        let report = closure_check(&ctx, &ctx.from_u64(2), 12).unwrap();
        let out = format_report(&Report::Closure(report), Mode::Json);
        assert!(out.ends_with("}\n"));
        let value: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["hypothesis_met"], Value::Bool(true));
    }
}
