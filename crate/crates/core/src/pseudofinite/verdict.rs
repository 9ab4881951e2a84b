//! "For U-almost all k", decided without choosing U.
//!
//! Every nonprincipal ultrafilter contains the cofinite sets and no finite
//! set. A property that is eventually true therefore holds for every such U,
//! an eventually false one fails for every U, and anything else either
//! depends on U or cannot be decided from a finite prefix.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::family::{prime_index, Family, TailGuarantee};
use crate::arith;
use crate::error::{Error, Result};
use crate::field::PrimePower;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails,
    Mixed,
    UnknownTail,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Mixed => "mixed",
            Outcome::UnknownTail => "unknown-tail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexTruth {
    pub k: u64,
    #[serde(serialize_with = "serialize_display")]
    pub q: PrimePower,
    pub holds: bool,
}

fn serialize_display<S: serde::Serializer>(
    value: &PrimePower,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// First index from which the outcome holds onward.
    pub threshold: Option<u64>,
    /// Listed indices where the per-index value disagrees with the outcome.
    pub witness_indices: Vec<u64>,
    pub per_index: Vec<IndexTruth>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let from = self
            .threshold
            .map(|k| format!(" (from k={k})"))
            .unwrap_or_default();
        match self.outcome {
            Outcome::Holds => write!(f, "holds for U-almost all k{from}"),
            Outcome::Fails => write!(f, "fails for U-almost all k{from}"),
            Outcome::Mixed => f.write_str("mixed: depends on the ultrafilter U"),
            Outcome::UnknownTail => {
                f.write_str("unknown tail: a finite prefix cannot decide U-almost all k")
            }
        }
    }
}

/// What a tail guarantee says about indices past the listed prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailTruth {
    HoldsFrom(u64),
    FailsFrom(u64),
    Recurring,
    Unknown,
}

/// The divisibility condition at one index: every prime divisor of `n` divides `q − 1`,
/// and `4 | n` forces `4 | q − 1`.
pub fn divisibility_at(q: &PrimePower, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroBinomialDegree);
    }
    let q1 = q.q_minus_one();
    for r in arith::factor(&BigUint::from(n))?.primes() {
        if &q1 % r != BigUint::ZERO {
            return Ok(false);
        }
    }
    Ok(!n.is_multiple_of(4) || &q1 % 4u32 == BigUint::ZERO)
}

/// The tail prediction a family's guarantee makes for the divisibility condition.
pub fn predict_tail(family: &Family, n: u64) -> Result<TailTruth> {
    let Some(guarantee) = family.tail_guarantee() else {
        return Ok(TailTruth::Unknown);
    };
    let primes: Vec<BigUint> = arith::factor(&BigUint::from(n))?
        .primes()
        .cloned()
        .collect();
    let from_primes = primes.iter().map(prime_index).max().unwrap_or(1);
    let four = n.is_multiple_of(4);
    Ok(match guarantee {
        TailGuarantee::DirichletSearch => TailTruth::HoldsFrom(from_primes),
        TailGuarantee::FermatLittleTheorem => {
            TailTruth::HoldsFrom(from_primes.max(if four { 2 } else { 1 }))
        }
        TailGuarantee::EvenExponent => {
            // Odd q gives 2 | q − 1; nothing is said about odd primes.
            if primes.iter().all(|r| *r == BigUint::from(2u32)) {
                TailTruth::HoldsFrom(if four { 2 } else { 1 })
            } else {
                TailTruth::Unknown
            }
        }
    })
}

/// Combines per-index evidence with a tail prediction.
pub fn aggregate(per_index: Vec<IndexTruth>, tail: TailTruth) -> Result<Verdict> {
    let exceptions = |value: bool| -> Vec<u64> {
        per_index
            .iter()
            .filter(|row| row.holds != value)
            .map(|row| row.k)
            .collect()
    };
    let first_k = per_index.first().map_or(1, |row| row.k);
    let last_k = per_index.last().map_or(0, |row| row.k);
    let eventual = |value: bool, from: u64| -> Result<(Option<u64>, Vec<u64>)> {
        let witness = exceptions(value);
        if let Some(&k) = witness.iter().find(|&&k| k >= from) {
            return Err(Error::InvalidFamily(format!(
                "index {k} contradicts the family's tail guarantee"
            )));
        }
        let threshold = if from > last_k + 1 {
            from
        } else {
            witness.last().map_or(first_k, |k| k + 1)
        };
        Ok((Some(threshold), witness))
    };
    let (outcome, threshold, witness_indices) = match tail {
        TailTruth::HoldsFrom(from) => {
            let (threshold, witness) = eventual(true, from)?;
            (Outcome::Holds, threshold, witness)
        }
        TailTruth::FailsFrom(from) => {
            let (threshold, witness) = eventual(false, from)?;
            (Outcome::Fails, threshold, witness)
        }
        TailTruth::Recurring => (Outcome::Mixed, None, Vec::new()),
        TailTruth::Unknown => (Outcome::UnknownTail, None, Vec::new()),
    };
    Ok(Verdict {
        outcome,
        threshold,
        witness_indices,
        per_index,
    })
}

/// The divisibility condition across a family.
pub fn divisibility_verdict(family: &Family, n: u64) -> Result<Verdict> {
    if family.entries().is_empty() {
        return Err(Error::EmptyFamily);
    }
    let per_index = family
        .entries()
        .iter()
        .map(|e| {
            Ok(IndexTruth {
                k: e.k,
                q: e.q.clone(),
                holds: divisibility_at(&e.q, n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    aggregate(per_index, predict_tail(family, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudofinite::family::{gen_dirichlet_family, gen_paper_family};

    fn q(n: u64) -> PrimePower {
        PrimePower::from_q(&BigUint::from(n)).unwrap()
    }

    fn truths(values: &[bool]) -> Vec<IndexTruth> {
        values
            .iter()
            .enumerate()
            .map(|(i, &holds)| IndexTruth {
                k: i as u64 + 1,
                q: q(2),
                holds,
            })
            .collect()
    }

    #[test]
    fn dirichlet_examples() {
        let fam = gen_dirichlet_family(5).unwrap();
        let v = divisibility_verdict(&fam, 6).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.threshold, Some(2));
        assert_eq!(v.witness_indices, vec![1]);
        let v = divisibility_verdict(&fam, 4).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.threshold, Some(1));
        assert!(v.witness_indices.is_empty());
    }

    #[test]
    fn explicit_family_is_unknown_tail() {
        let fam = Family::explicit(vec![(1, q(7))]).unwrap();
        let v = divisibility_verdict(&fam, 3).unwrap();
        assert_eq!(v.outcome, Outcome::UnknownTail);
        assert_eq!(
            v.per_index.iter().map(|r| r.holds).collect::<Vec<_>>(),
            vec![true]
        );
    }

    #[test]
    fn paper_family_verdicts() {
        let fam = gen_paper_family(3).unwrap();
        // 4 | n needs k ≥ 2.
        let v = divisibility_verdict(&fam, 4).unwrap();
        assert_eq!((v.outcome, v.threshold), (Outcome::Holds, Some(2)));
        assert_eq!(v.witness_indices, vec![1]);
        // 11 = p_5 is only guaranteed from k = 5, past the prefix.
        let v = divisibility_verdict(&fam, 11).unwrap();
        assert_eq!((v.outcome, v.threshold), (Outcome::Holds, Some(5)));
    }

    #[test]
    fn verdict_wording() {
        let v = aggregate(truths(&[false, true]), TailTruth::HoldsFrom(2)).unwrap();
        assert_eq!(v.to_string(), "holds for U-almost all k (from k=2)");
        let v = aggregate(truths(&[true, false]), TailTruth::FailsFrom(2)).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        assert_eq!(v.threshold, Some(2));
        assert_eq!(v.witness_indices, vec![1]);
        let v = aggregate(truths(&[true, false]), TailTruth::Recurring).unwrap();
        assert_eq!(v.outcome, Outcome::Mixed);
    }

    #[test]
    fn contradicting_evidence_is_rejected() {
        assert!(aggregate(truths(&[true, false, true]), TailTruth::HoldsFrom(2)).is_err());
    }

    #[test]
    fn extending_the_prefix_never_flips() {
        for n in 1..=30 {
            let mut previous: Option<Outcome> = None;
            for count in 1..=6 {
                let fam = gen_dirichlet_family(count).unwrap();
                let v = divisibility_verdict(&fam, n).unwrap();
                if let Some(prev) = previous {
                    assert!(
                        !matches!(
                            (prev, v.outcome),
                            (Outcome::Holds, Outcome::Fails) | (Outcome::Fails, Outcome::Holds)
                        ),
                        "n = {n}, count = {count}"
                    );
                }
                previous = Some(v.outcome);
            }
            for count in 1..=4 {
                let v = divisibility_verdict(&gen_paper_family(count).unwrap(), n).unwrap();
                assert_eq!(v.outcome, Outcome::Holds);
            }
        }
    }
}
