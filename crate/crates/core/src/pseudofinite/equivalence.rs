use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::family::Family;
use super::verdict::{divisibility_at, divisibility_verdict, Verdict};
use crate::binomial;
use crate::error::{Error, Result};
use crate::field::{self, build_field_for, FieldCtx, FieldElem, PrimePower};

/// Fields up to this size get an exhaustive search over `g` in column (b).
pub const EXHAUSTIVE_SEARCH_LIMIT: u64 = 343;

/// Whether some `g ∈ F_q^×` makes `x^n − g` irreducible.
pub fn exists_irreducible_binomial(q: &PrimePower, n: u64) -> Result<bool> {
    binomial::diamond(q, n)
}

/// The same question answered by running the Rabin test on every `x^n − g`.
pub fn exists_irreducible_binomial_search(ctx: &FieldCtx, n: u64) -> Result<bool> {
    for g in ctx.elements().skip(1) {
        if binomial::irreducible_rabin(ctx, &g, n)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub k: u64,
    pub q: PrimePower,
    pub generator: FieldElem,
    /// (a) the divisibility condition at `k`.
    pub divisibility: bool,
    /// (b) some `x^n − g` is irreducible over `F_{q_k}`.
    pub exists_irreducible: bool,
    /// (c) `x^n − g_k` is irreducible for the chosen generator `g_k`.
    pub generator_irreducible: bool,
    /// True when (b) came from the exhaustive search rather than the criterion.
    pub exhaustive: bool,
}

impl Serialize for EquivalenceRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EquivalenceRow", 8)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("q", &self.q.q().to_string())?;
        s.serialize_field("p", &self.q.p().to_string())?;
        s.serialize_field("t", &self.q.t())?;
        s.serialize_field("generator", &self.generator)?;
        s.serialize_field("divisibility", &self.divisibility)?;
        s.serialize_field("exists_irreducible", &self.exists_irreducible)?;
        s.serialize_field("generator_irreducible", &self.generator_irreducible)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub n: u64,
    pub rows: Vec<EquivalenceRow>,
    pub verdict: Verdict,
}

/// Evaluates the three equivalent conditions at every listed index.
///
/// A disagreement between columns falsifies this implementation, not the
/// input, and is reported as [`Error::EquivalenceViolation`].
pub fn equivalence_report(family: &Family, n: u64) -> Result<EquivalenceReport> {
    let verdict = divisibility_verdict(family, n)?;
    let mut rows = Vec::with_capacity(family.entries().len());
    for (i, entry) in family.entries().iter().enumerate() {
        let ctx = build_field_for(&entry.q)?;
        let generator = match family.generator_choice() {
            Some(gens) => gens[i].clone(),
            None => field::find_generator(&ctx)?,
        };
        let divisibility = divisibility_at(&entry.q, n)?;
        let exhaustive = *ctx.q() <= BigUint::from(EXHAUSTIVE_SEARCH_LIMIT);
        let exists_irreducible = if exhaustive {
            exists_irreducible_binomial_search(&ctx, n)?
        } else {
            exists_irreducible_binomial(&entry.q, n)?
        };
        let generator_irreducible = binomial::irreducible_ln(&ctx, &generator, n)?.ln_verdict;
        if divisibility != exists_irreducible || divisibility != generator_irreducible {
            return Err(Error::EquivalenceViolation {
                k: entry.k,
                detail: format!(
                    "q = {}, n = {n}: divisibility = {divisibility}, exists = {exists_irreducible}, \
                     generator = {generator_irreducible}",
                    entry.q
                ),
            });
        }
        rows.push(EquivalenceRow {
            k: entry.k,
            q: entry.q.clone(),
            generator,
            divisibility,
            exists_irreducible,
            generator_irreducible,
            exhaustive,
        });
    }
    Ok(EquivalenceReport { n, rows, verdict })
}
