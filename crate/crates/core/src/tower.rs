//! Radical extensions `F_q(√[n]{g})` realized inside canonical fields, and the
//! finite check that such radicals reach every subfield of a given ambient field.
//!
//! Extensions are never built as nested quotients. A level of degree `n` over
//! `F_q = F_{p^t}` lives in the canonical `F_{p^{t·n}}` (or in a larger shared
//! ambient field); the base field is embedded by locating a root of its
//! modulus there.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binomial;
use crate::error::{Error, Result};
use crate::field::{self, build_field, FieldCtx, FieldElem, PrimePower};
use crate::poly::{self, Poly};

/// Largest total degree `t·N` over the prime field accepted here.
pub const DESK_DEGREE_BOUND: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub degree_over_base: u64,
    /// The field the level is realized in: `F_{q^n}` itself, or the shared
    /// ambient field of a tower.
    pub field: Arc<FieldCtx>,
    pub base: PrimePower,
    /// Image of `g` in `field`.
    pub g_image: FieldElem,
    /// The chosen `n`-th root of `g`.
    pub root: FieldElem,
    /// `x^n − g` over the base field.
    pub minimal_poly: Poly,
}

/// Image of the base field's `x` in an ambient field (`None` for prime bases).
struct Embedding {
    image_of_x: Option<FieldElem>,
}

impl Embedding {
    fn new(base: &FieldCtx, ambient: &FieldCtx) -> Result<Self> {
        if base.is_prime_field() {
            return Ok(Embedding { image_of_x: None });
        }
        let modulus = Poly::new(
            base.modulus()
                .iter()
                .map(|&c| ambient.from_u64(c))
                .collect(),
        );
        let image = poly::poly_roots(ambient, &modulus)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotSubfield {
                sub: base.size().to_string(),
                field: ambient.size().to_string(),
            })?;
        Ok(Embedding {
            image_of_x: Some(image),
        })
    }

    fn apply(&self, ambient: &FieldCtx, a: &FieldElem) -> FieldElem {
        match &self.image_of_x {
            None => ambient.from_u64(a.coeffs()[0]),
            Some(beta) => {
                let mut acc = ambient.zero();
                for &c in a.coeffs().iter().rev() {
                    acc = ambient.add_u(&ambient.mul_u(&acc, beta), &ambient.from_u64(c));
                }
                acc
            }
        }
    }
}

fn ambient_for(base: &FieldCtx, degree: u64) -> Result<Arc<FieldCtx>> {
    let total = u64::from(base.degree()) * degree;
    if total > DESK_DEGREE_BOUND {
        return Err(Error::DeskScaleExceeded {
            total,
            bound: DESK_DEGREE_BOUND,
        });
    }
    build_field(&BigUint::from(base.characteristic()), total as u32)
}

fn require_irreducible(base: &FieldCtx, g: &FieldElem, n: u64) -> Result<()> {
    if binomial::irreducible_ln(base, g, n)?.ln_verdict {
        Ok(())
    } else {
        Err(Error::NotIrreducible { n })
    }
}

fn first_root(ambient: &FieldCtx, n: u64, g_image: &FieldElem) -> Result<Option<FieldElem>> {
    let f = Poly::binomial(ambient, n as usize, g_image);
    Ok(poly::poly_roots(ambient, &f)?.into_iter().next())
}

/// Adjoins the canonically smallest root of `x^n − g` to `base`.
pub fn extend_by_binomial(base: &FieldCtx, g: &FieldElem, n: u64) -> Result<TowerLevel> {
    base.check(g)?;
    require_irreducible(base, g, n)?;
    let ambient = ambient_for(base, n)?;
    let g_image = Embedding::new(base, &ambient)?.apply(&ambient, g);
    let root = first_root(&ambient, n, &g_image)?
        .expect("an irreducible degree-n polynomial splits in the degree-n extension");
    Ok(TowerLevel {
        degree_over_base: n,
        minimal_poly: Poly::binomial(base, n as usize, g),
        base: base.size().clone(),
        field: ambient,
        g_image,
        root,
    })
}

/// A chain of radical extensions sharing one ambient field, with
/// `root_i = root_last^{n_last / n_i}`.
pub fn build_tower(base: &FieldCtx, g: &FieldElem, degrees: &[u64]) -> Result<Vec<TowerLevel>> {
    base.check(g)?;
    let describe = || format!("{degrees:?}");
    let Some(&top) = degrees.last() else {
        return Err(Error::NotAChain(describe()));
    };
    if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1] || w[1] % w[0] != 0) {
        return Err(Error::NotAChain(describe()));
    }
    for &n in degrees {
        require_irreducible(base, g, n)?;
    }
    let ambient = ambient_for(base, top)?;
    let g_image = Embedding::new(base, &ambient)?.apply(&ambient, g);
    let top_root = first_root(&ambient, top, &g_image)?
        .expect("an irreducible polynomial splits in the extension of its degree");
    Ok(degrees
        .iter()
        .map(|&n| TowerLevel {
            degree_over_base: n,
            field: Arc::clone(&ambient),
            base: base.size().clone(),
            g_image: g_image.clone(),
            root: ambient.pow_u(&top_root, &BigUint::from(top / n)),
            minimal_poly: Poly::binomial(base, n as usize, g),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureRow {
    pub n: u64,
    pub irreducible: bool,
    pub root_found: bool,
    pub generates_unique_subfield: bool,
    pub root: Option<FieldElem>,
}

impl ClosureRow {
    pub fn fully_verified(&self) -> bool {
        self.irreducible && self.root_found && self.generates_unique_subfield
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub base: PrimePower,
    pub base_modulus: String,
    pub g: FieldElem,
    pub ambient_degree: u64,
    pub ambient: PrimePower,
    pub ambient_modulus: String,
    pub rows: Vec<ClosureRow>,
    pub hypothesis_met: bool,
}

impl ClosureReport {
    /// Reducible divisors all of whose proper divisors are irreducible.
    ///
    /// If `x^d − g` is reducible then so is `x^n − g` for every multiple `n`
    /// of `d`, so these are the degrees that explain every failing row.
    pub fn obstructions(&self) -> Vec<u64> {
        let failing: Vec<u64> = self
            .rows
            .iter()
            .filter(|r| !r.irreducible)
            .map(|r| r.n)
            .collect();
        failing
            .iter()
            .copied()
            .filter(|&n| !failing.iter().any(|&d| d < n && n % d == 0))
            .collect()
    }
}

fn field_descriptor(size: &PrimePower, modulus: &str) -> serde_json::Value {
    serde_json::json!({
        "q": size.q().to_string(),
        "p": size.p().to_string(),
        "t": size.t(),
        "modulus": modulus,
    })
}

impl Serialize for ClosureReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClosureReport", 7)?;
        s.serialize_field("base", &field_descriptor(&self.base, &self.base_modulus))?;
        s.serialize_field("g", &self.g)?;
        s.serialize_field("N", &self.ambient_degree)?;
        s.serialize_field(
            "ambient",
            &field_descriptor(&self.ambient, &self.ambient_modulus),
        )?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("hypothesis_met", &self.hypothesis_met)?;
        s.serialize_field("obstructions", &self.obstructions())?;
        s.end()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// For each `n | N`: is `x^n − g` irreducible, does it have a root `r` in
/// `F_{q^N}`, and does `r` have degree exactly `n` over `F_q`? The subfield of
/// size `q^n` is unique, so a root of degree `n` generates all of it.
pub fn closure_check(base: &FieldCtx, g: &FieldElem, big_n: u64) -> Result<ClosureReport> {
    base.check(g)?;
    if big_n == 0 {
        return Err(Error::ZeroBinomialDegree);
    }
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ambient = ambient_for(base, big_n)?;
    let g_image = Embedding::new(base, &ambient)?.apply(&ambient, g);
    let rows = divisors(big_n)
        .into_iter()
        .map(|n| {
            let irreducible = binomial::irreducible_ln(base, g, n)?.ln_verdict;
            let root = first_root(&ambient, n, &g_image)?;
            let generates_unique_subfield = match &root {
                Some(r) => field::degree_over_subfield(&ambient, r, base.size())? as u64 == n,
                None => false,
            };
            Ok(ClosureRow {
                n,
                irreducible,
                root_found: root.is_some(),
                generates_unique_subfield,
                root,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hypothesis_met = rows.iter().all(|r| r.irreducible);
    if rows.iter().any(|r| r.irreducible && !r.fully_verified()) {
        return Err(Error::CriteriaDisagree(format!(
            "an irreducible x^n - g over F_{} lacks a generating root in F_{}",
            base.size(),
            ambient.size()
        )));
    }
    Ok(ClosureReport {
        base: base.size().clone(),
        base_modulus: base.modulus_text(),
        g: g.clone(),
        ambient_degree: big_n,
        ambient: ambient.size().clone(),
        ambient_modulus: ambient.modulus_text(),
        rows,
        hypothesis_met,
    })
}
