use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{self, build_field_for, FieldElem, PrimePower};

/// Largest prefix `gen_paper_family` will produce.
pub const PAPER_FAMILY_MAX: u64 = 4;

/// Candidates examined per index by `gen_dirichlet_family`.
pub const DIRICHLET_SEARCH_CUTOFF: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Explicit,
    PaperExample,
    Dirichlet,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Explicit => "explicit",
            FamilyKind::PaperExample => "paper-example",
            FamilyKind::Dirichlet => "dirichlet",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Machine-checkable reasons a property extends past the listed prefix.
///
/// * `FermatLittleTheorem`: `q_k = p_{k+1}^{(p_1−1)…(p_k−1)}`, so `p_i | q_k − 1`
///   for `k ≥ i`, and the exponent is even from `k = 2`, giving `4 | q_k − 1`.
/// * `DirichletSearch`: `q_k ≡ 1 mod lcm(4, p_1, …, p_k)`, so `4 | q_k − 1`
///   always and `p_i | q_k − 1` for `k ≥ i`.
/// * `EvenExponent`: only the 4-clause of the power-tower family (`k ≥ 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailGuarantee {
    FermatLittleTheorem,
    DirichletSearch,
    EvenExponent,
}

impl TailGuarantee {
    pub fn as_str(self) -> &'static str {
        match self {
            TailGuarantee::FermatLittleTheorem => "fermat-little-theorem",
            TailGuarantee::DirichletSearch => "dirichlet-search",
            TailGuarantee::EvenExponent => "even-exponent",
        }
    }

    fn fits(self, kind: FamilyKind) -> bool {
        matches!(
            (self, kind),
            (TailGuarantee::FermatLittleTheorem, FamilyKind::PaperExample)
                | (TailGuarantee::EvenExponent, FamilyKind::PaperExample)
                | (TailGuarantee::DirichletSearch, FamilyKind::Dirichlet)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub k: u64,
    pub q: PrimePower,
    /// Divisors `d` with `d | q − 1`, each re-verified on construction.
    pub certificates: Vec<BigUint>,
}

/// A prefix `(q_k)` of an ultraproduct index family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    kind: FamilyKind,
    entries: Vec<FamilyEntry>,
    tail_guarantee: Option<TailGuarantee>,
    generator_choice: Option<Vec<FieldElem>>,
}

/// `{4, p_1, …, p_k}` in that order.
fn spade_divisors(k: u64) -> Vec<BigUint> {
    let k = usize::try_from(k).expect("index fits in usize");
    std::iter::once(4u64)
        .chain(arith::first_primes(k))
        .map(BigUint::from)
        .collect()
}

fn dividing(candidates: Vec<BigUint>, q: &PrimePower) -> Vec<BigUint> {
    let q1 = q.q_minus_one();
    candidates
        .into_iter()
        .filter(|d| (&q1 % d).is_zero())
        .collect()
}

fn lcm_of(values: &[BigUint]) -> BigUint {
    values.iter().fold(BigUint::one(), |acc, v| acc.lcm(v))
}

/// The `k`-th term of the power-tower family, as `(p_{k+1}, (p_1−1)…(p_k−1))`.
fn paper_term(k: u64) -> Result<(BigUint, u32)> {
    let primes = arith::first_primes(k as usize + 1);
    let exponent: u64 = primes[..k as usize].iter().map(|p| p - 1).product();
    let exponent = u32::try_from(exponent)
        .map_err(|_| Error::InvalidFamily(format!("exponent at k = {k} is too large")))?;
    Ok((BigUint::from(primes[k as usize]), exponent))
}

fn dirichlet_term(k: u64, above: &BigUint) -> Result<PrimePower> {
    let modulus = lcm_of(&spade_divisors(k));
    // Least admissible j with 1 + j·m > above.
    let mut j = (above / &modulus) + 1u32;
    if j.is_zero() {
        j = BigUint::one();
    }
    for _ in 0..DIRICHLET_SEARCH_CUTOFF {
        let candidate = &j * &modulus + 1u32;
        if arith::is_prime(&candidate) {
            return PrimePower::new(candidate, 1);
        }
        j += 1u32;
    }
    Err(Error::SearchCutoff {
        modulus,
        cutoff: DIRICHLET_SEARCH_CUTOFF,
    })
}

/// `q_k = p_{k+1}^{(p_1−1)(p_2−1)…(p_k−1)}` for `k = 1..=count`.
pub fn gen_paper_family(count: u64) -> Result<Family> {
    if count == 0 || count > PAPER_FAMILY_MAX {
        return Err(Error::FamilySizeBound {
            requested: count,
            max: PAPER_FAMILY_MAX,
        });
    }
    let entries = (1..=count)
        .map(|k| {
            let (p, t) = paper_term(k)?;
            let q = PrimePower::new(p, t)?;
            Ok(FamilyEntry {
                k,
                certificates: dividing(spade_divisors(k), &q),
                q,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(
        FamilyKind::PaperExample,
        entries,
        Some(TailGuarantee::FermatLittleTheorem),
    )
}

/// `q_k` = least prime `≡ 1 mod lcm(4, p_1, …, p_k)` above `q_{k−1}`.
pub fn gen_dirichlet_family(count: u64) -> Result<Family> {
    if count == 0 {
        return Err(Error::EmptyFamily);
    }
    let mut entries = Vec::with_capacity(count as usize);
    let mut previous = BigUint::zero();
    for k in 1..=count {
        let q = dirichlet_term(k, &previous)?;
        previous = q.q().clone();
        entries.push(FamilyEntry {
            k,
            certificates: dividing(spade_divisors(k), &q),
            q,
        });
    }
    Family::new(
        FamilyKind::Dirichlet,
        entries,
        Some(TailGuarantee::DirichletSearch),
    )
}

impl Family {
    /// Validates and assembles a family; see [`Family::validate`].
    pub fn new(
        kind: FamilyKind,
        entries: Vec<FamilyEntry>,
        tail_guarantee: Option<TailGuarantee>,
    ) -> Result<Self> {
        let family = Family {
            kind,
            entries,
            tail_guarantee,
            generator_choice: None,
        };
        family.validate()?;
        Ok(family)
    }

    /// A user-supplied family; never carries a tail guarantee.
    pub fn explicit(terms: Vec<(u64, PrimePower)>) -> Result<Self> {
        let entries = terms
            .into_iter()
            .map(|(k, q)| FamilyEntry {
                k,
                certificates: dividing(spade_divisors(k), &q),
                q,
            })
            .collect();
        Family::new(FamilyKind::Explicit, entries, None)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn tail_guarantee(&self) -> Option<TailGuarantee> {
        self.tail_guarantee
    }

    pub fn generator_choice(&self) -> Option<&[FieldElem]> {
        self.generator_choice.as_deref()
    }

    pub fn entry(&self, k: u64) -> Result<&FamilyEntry> {
        self.entries
            .iter()
            .find(|e| e.k == k)
            .ok_or(Error::MissingIndex(k))
    }

    /// Attaches the canonical generator of each `F_{q_k}^×`.
    pub fn with_generators(mut self) -> Result<Self> {
        let generators = self
            .entries
            .iter()
            .map(|e| build_field_for(&e.q).and_then(|ctx| field::find_generator(&ctx)))
            .collect::<Result<Vec<_>>>()?;
        self.generator_choice = Some(generators);
        Ok(self)
    }

    /// Checks every structural invariant, re-deriving generated entries.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidFamily(msg));
        if self.entries.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for pair in self.entries.windows(2) {
            if pair[0].k >= pair[1].k {
                return invalid(format!("indices not increasing at k = {}", pair[1].k));
            }
            if pair[0].q.q() >= pair[1].q.q() {
                return invalid(format!("q not strictly increasing at k = {}", pair[1].k));
            }
        }
        for entry in &self.entries {
            if entry.k == 0 {
                return invalid("indices are 1-based".to_string());
            }
            let q1 = entry.q.q_minus_one();
            for d in &entry.certificates {
                if d.is_zero() || !(&q1 % d).is_zero() {
                    return invalid(format!("certificate {d} does not divide q_{} - 1", entry.k));
                }
            }
        }
        match (self.kind, self.tail_guarantee) {
            (FamilyKind::Explicit, Some(g)) => {
                return invalid(format!("explicit families cannot carry {}", g.as_str()));
            }
            (kind, Some(g)) if !g.fits(kind) => {
                return invalid(format!("{} does not apply to {kind} families", g.as_str()));
            }
            _ => {}
        }
        match self.kind {
            FamilyKind::Explicit => {}
            FamilyKind::PaperExample => {
                for entry in &self.entries {
                    let (p, t) = paper_term(entry.k)?;
                    if entry.q.p() != &p || entry.q.t() != t {
                        return invalid(format!("q_{} is not {p}^{t}", entry.k));
                    }
                }
            }
            FamilyKind::Dirichlet => {
                let mut previous = BigUint::zero();
                for (i, entry) in self.entries.iter().enumerate() {
                    if entry.k != i as u64 + 1 {
                        return invalid("dirichlet indices must be 1, 2, 3, ...".to_string());
                    }
                    let expected = dirichlet_term(entry.k, &previous)?;
                    if entry.q != expected {
                        return invalid(format!("q_{} should be {expected}", entry.k));
                    }
                    previous = expected.q().clone();
                }
            }
        }
        if let Some(gens) = &self.generator_choice {
            if gens.len() != self.entries.len() {
                return invalid("generator choice length mismatch".to_string());
            }
            for (entry, g) in self.entries.iter().zip(gens) {
                let ctx = build_field_for(&entry.q)?;
                if !field::is_generator(&ctx, g)? {
                    return invalid(format!("g_{} = {g} is not a generator", entry.k));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = FamilyFile {
            kind: self.kind,
            entries: self
                .entries
                .iter()
                .map(|e| EntryFile {
                    k: e.k,
                    p: e.q.p().to_string(),
                    t: e.q.t(),
                    certificates: e.certificates.iter().map(BigUint::to_string).collect(),
                })
                .collect(),
            tail_guarantee: self.tail_guarantee,
        };
        serde_json::to_string_pretty(&file).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FamilyFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidFamily(e.to_string()))?;
        let entries =
            file.entries
                .into_iter()
                .map(|e| {
                    let p: BigUint = e.p.parse().map_err(|_| {
                        Error::InvalidFamily(format!("p = {:?} is not decimal", e.p))
                    })?;
                    let certificates = e
                        .certificates
                        .iter()
                        .map(|d| {
                            d.parse()
                                .map_err(|_| Error::InvalidFamily(format!("certificate {d:?}")))
                        })
                        .collect::<Result<Vec<BigUint>>>()?;
                    Ok(FamilyEntry {
                        k: e.k,
                        q: PrimePower::new(p, e.t)?,
                        certificates,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
        Family::new(file.kind, entries, file.tail_guarantee)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    kind: FamilyKind,
    entries: Vec<EntryFile>,
    tail_guarantee: Option<TailGuarantee>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    k: u64,
    p: String,
    t: u32,
    certificates: Vec<String>,
}

/// `4 | q_k − 1` and `p_i | q_k − 1` for every `i ≤ k`.
pub fn check_spade(family: &Family, k: u64) -> Result<bool> {
    let entry = family.entry(k)?;
    let q1 = entry.q.q_minus_one();
    Ok(spade_divisors(k).iter().all(|d| (&q1 % d).is_zero()))
}

/// Position of a prime in the sequence 2, 3, 5, … (1-based).
pub(crate) fn prime_index(p: &BigUint) -> u64 {
    let p = p.to_u64().expect("prime divisor of a u64");
    (2..=p).filter(|&m| arith::is_prime_u64(m)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(family: &Family) -> Vec<BigUint> {
        family.entries().iter().map(|e| e.q.q().clone()).collect()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn paper_family_terms() {
        let fam = gen_paper_family(1).unwrap();
        assert_eq!(qs(&fam), vec![big(3)]);
        let fam = gen_paper_family(4).unwrap();
        assert_eq!(
            qs(&fam),
            vec![big(3), big(25), big(5_764_801), big(11).pow(48)]
        );
        assert_eq!(fam.entries()[2].q.to_string(), "7^8");
        assert_eq!(
            fam.tail_guarantee(),
            Some(TailGuarantee::FermatLittleTheorem)
        );
        assert!(matches!(
            gen_paper_family(5),
            Err(Error::FamilySizeBound {
                requested: 5,
                max: 4
            })
        ));
    }

    #[test]
    fn spade_on_paper_family() {
        let fam = gen_paper_family(4).unwrap();
        assert!(!check_spade(&fam, 1).unwrap());
        for k in 2..=4 {
            assert!(check_spade(&fam, k).unwrap());
        }
        assert_eq!(check_spade(&fam, 9), Err(Error::MissingIndex(9)));
        // q_1 − 1 = 2: only p_1 = 2 is certified.
        assert_eq!(fam.entries()[0].certificates, vec![big(2)]);
        assert_eq!(
            fam.entries()[2].certificates,
            vec![big(4), big(2), big(3), big(5)]
        );
    }

    #[test]
    fn dirichlet_family_terms() {
        let fam = gen_dirichlet_family(5).unwrap();
        assert_eq!(qs(&fam), [5, 13, 61, 421, 4621].map(big).to_vec());
        for k in 1..=5 {
            assert!(check_spade(&fam, k).unwrap());
        }
        let fam = gen_dirichlet_family(8).unwrap();
        assert!(qs(&fam).windows(2).all(|w| w[0] < w[1]));
        for e in fam.entries() {
            assert!(check_spade(&fam, e.k).unwrap());
            for d in &e.certificates {
                assert!((e.q.q_minus_one() % d).is_zero());
            }
        }
    }

    #[test]
    fn json_round_trip_and_format() {
        let fam = gen_dirichlet_family(3).unwrap();
        let text = fam.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "dirichlet");
        assert_eq!(v["tail_guarantee"], "dirichlet-search");
        assert_eq!(v["entries"][1]["k"], 2);
        assert_eq!(v["entries"][1]["p"], "13");
        assert_eq!(v["entries"][1]["t"], 1);
        assert_eq!(
            v["entries"][1]["certificates"],
            serde_json::json!(["4", "2", "3"])
        );
        assert_eq!(Family::from_json(&text).unwrap(), fam);

        let paper = gen_paper_family(4).unwrap();
        assert_eq!(Family::from_json(&paper.to_json()).unwrap(), paper);
    }

    #[test]
    fn invalid_files_rejected() {
        let bad_cert = r#"{"kind":"explicit","entries":[{"k":1,"p":"7","t":1,"certificates":["4"]}],"tail_guarantee":null}"#;
        assert!(matches!(
            Family::from_json(bad_cert),
            Err(Error::InvalidFamily(_))
        ));
        let explicit_tail = r#"{"kind":"explicit","entries":[{"k":1,"p":"7","t":1,"certificates":[]}],"tail_guarantee":"dirichlet-search"}"#;
        assert!(Family::from_json(explicit_tail).is_err());
        let forged = r#"{"kind":"dirichlet","entries":[{"k":1,"p":"17","t":1,"certificates":["4","2"]}],"tail_guarantee":"dirichlet-search"}"#;
        assert!(Family::from_json(forged).is_err());
        let decreasing = r#"{"kind":"explicit","entries":[{"k":1,"p":"11","t":1,"certificates":[]},{"k":2,"p":"7","t":1,"certificates":[]}],"tail_guarantee":null}"#;
        assert!(Family::from_json(decreasing).is_err());
        let composite = r#"{"kind":"explicit","entries":[{"k":1,"p":"9","t":1,"certificates":[]}],"tail_guarantee":null}"#;
        assert!(Family::from_json(composite).is_err());
        let empty = r#"{"kind":"explicit","entries":[],"tail_guarantee":null}"#;
        assert_eq!(Family::from_json(empty), Err(Error::EmptyFamily));
    }

    #[test]
    fn generator_choice_has_full_order() {
        let fam = gen_dirichlet_family(4).unwrap().with_generators().unwrap();
        let gens = fam.generator_choice().unwrap();
        assert_eq!(gens.len(), 4);
        for (entry, g) in fam.entries().iter().zip(gens) {
            let ctx = build_field_for(&entry.q).unwrap();
            assert_eq!(&field::mult_order(&ctx, g).unwrap(), ctx.q_minus_one());
        }
        fam.validate().unwrap();
    }

    #[test]
    fn prime_indices() {
        assert_eq!(prime_index(&big(2)), 1);
        assert_eq!(prime_index(&big(3)), 2);
        assert_eq!(prime_index(&big(13)), 6);
    }
}
