//! Concrete finite fields F_{p^t} in a polynomial basis over F_p.
//!
//! A field is identified by `(p, t)`: the modulus is always the
//! lexicographically smallest monic irreducible of degree `t` over F_p, so two
//! contexts with the same `(p, t)` are identical and [`build_field`] memoizes
//! them. Elements carry only that identity, never a pointer to their context.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// A field size `q = p^t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: BigUint,
    t: u32,
    q: BigUint,
}

impl PrimePower {
    pub fn new(p: BigUint, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroDegree);
        }
        if !arith::is_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.pow(t);
        Ok(PrimePower { p, t, q })
    }

    /// Recognizes `q` as a prime power.
    pub fn from_q(q: &BigUint) -> Result<Self> {
        if *q < BigUint::from(2u32) {
            return Err(Error::NotPrimePower(q.clone()));
        }
        let (p, t) =
            arith::prime_power_decompose(q)?.ok_or_else(|| Error::NotPrimePower(q.clone()))?;
        Ok(PrimePower { p, t, q: q.clone() })
    }

    /// Accepts either a plain integer (`"25"`) or `p^t` syntax (`"5^2"`).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidElement {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        match text.split_once('^') {
            Some((p, t)) => {
                let p: BigUint = p
                    .trim()
                    .parse()
                    .map_err(|_| bad("base is not an integer"))?;
                let t: u32 = t
                    .trim()
                    .parse()
                    .map_err(|_| bad("exponent is not an integer"))?;
                PrimePower::new(p, t)
            }
            None => {
                let q: BigUint = text.trim().parse().map_err(|_| bad("not an integer"))?;
                PrimePower::from_q(&q)
            }
        }
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn q_minus_one(&self) -> BigUint {
        &self.q - 1u32
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.t)
        }
    }
}

/// Identity of a field: characteristic and degree over the prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    pub p: u64,
    pub t: u32,
}

/// An element of F_{p^t}: `t` residues mod `p`, little-endian in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: FieldId,
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn field_id(&self) -> FieldId {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

/// Canonical enumeration order: coefficients read as a base-p number with
/// the `x^{t-1}` coefficient most significant.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text encoding: a decimal residue for prime fields, comma-separated
/// little-endian residues otherwise (`"2,0,1"` is `2 + x^2`).
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The field F_{p^t} with its canonical modulus.
#[derive(Debug)]
pub struct FieldCtx {
    size: PrimePower,
    id: FieldId,
    /// Monic, `t + 1` little-endian residues. For `t = 1` this is `x`.
    modulus: Vec<u64>,
    q_minus_one: BigUint,
    q_minus_two: BigUint,
    order_factors: OnceLock<Result<Factorization>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn field_cache() -> &'static Mutex<HashMap<FieldId, Arc<FieldCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldId, Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds (or fetches) the canonical context for F_{p^t}.
pub fn build_field(p: &BigUint, t: u32) -> Result<Arc<FieldCtx>> {
    let size = PrimePower::new(p.clone(), t)?;
    // Residues are added in u64 and multiplied in u128.
    let p_word = p
        .to_u64()
        .filter(|&w| w < 1 << 63)
        .ok_or_else(|| Error::CharacteristicTooLarge(p.clone()))?;
    let id = FieldId { p: p_word, t };
    if let Some(ctx) = field_cache().lock().expect("field cache").get(&id) {
        return Ok(Arc::clone(ctx));
    }
    let modulus = if t == 1 {
        vec![0, 1]
    } else {
        canonical_modulus(p_word, t)?
    };
    let ctx = Arc::new(FieldCtx::with_modulus(size, id, modulus));
    let mut cache = field_cache().lock().expect("field cache");
    Ok(Arc::clone(cache.entry(id).or_insert(ctx)))
}

/// Builds the context for a field size already decomposed.
pub fn build_field_for(size: &PrimePower) -> Result<Arc<FieldCtx>> {
    build_field(size.p(), size.t())
}

fn canonical_modulus(p: u64, t: u32) -> Result<Vec<u64>> {
    let base = build_field(&BigUint::from(p), 1)?;
    let t = t as usize;
    // Low coefficients vary fastest; a zero constant term means x divides f.
    let mut digits = vec![0u64; t];
    loop {
        if digits[0] != 0 {
            let mut coeffs: Vec<FieldElem> = digits.iter().map(|&c| base.from_u64(c)).collect();
            coeffs.push(base.one());
            if poly::rabin_irreducible(&base, &Poly::new(coeffs))? {
                let mut modulus = digits.clone();
                modulus.push(1);
                return Ok(modulus);
            }
        }
        // Irreducibles of every degree exist, so this terminates before overflow.
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

impl FieldCtx {
    fn with_modulus(size: PrimePower, id: FieldId, modulus: Vec<u64>) -> Self {
        let q_minus_one = size.q_minus_one();
        let q_minus_two = if q_minus_one.is_zero() {
            BigUint::zero()
        } else {
            &q_minus_one - 1u32
        };
        FieldCtx {
            size,
            id,
            modulus,
            q_minus_one,
            q_minus_two,
            order_factors: OnceLock::new(),
        }
    }

    pub fn size(&self) -> &PrimePower {
        &self.size
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn characteristic(&self) -> u64 {
        self.id.p
    }

    pub fn degree(&self) -> u32 {
        self.id.t
    }

    pub fn is_prime_field(&self) -> bool {
        self.id.t == 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The modulus in the comma-separated little-endian text form.
    pub fn modulus_text(&self) -> String {
        let parts: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        parts.join(",")
    }

    pub fn q(&self) -> &BigUint {
        self.size.q()
    }

    pub fn q_minus_one(&self) -> &BigUint {
        &self.q_minus_one
    }

    /// Factorization of q − 1, computed once per context.
    pub fn order_factorization(&self) -> Result<&Factorization> {
        self.order_factors
            .get_or_init(|| arith::factor(&self.q_minus_one))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        a.field == self.id
    }

    pub(crate) fn check(&self, a: &FieldElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedContext)
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.id,
            coeffs: vec![0; self.id.t as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// The image of an integer under Z → F_p ⊆ F.
    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = c % self.id.p;
        e
    }

    /// The class of `x` (for prime fields this is 0, the placeholder modulus' root).
    pub fn generator_x(&self) -> FieldElem {
        if self.id.t == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    /// Builds an element from up to `t` little-endian residues, zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        let t = self.id.t as usize;
        let invalid = |reason: String| Error::InvalidElement {
            text: format!("{coeffs:?}"),
            reason,
        };
        if coeffs.len() > t {
            return Err(invalid(format!("more than {t} coefficients")));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.id.p) {
            return Err(invalid(format!("residue {c} is not below {}", self.id.p)));
        }
        let mut e = self.zero();
        e.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let invalid = |reason: &str| Error::InvalidElement {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let coeffs = text
            .split(',')
            .map(|part| part.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| invalid("expected comma-separated decimal residues"))?;
        self.from_coeffs(&coeffs).map_err(|err| match err {
            Error::InvalidElement { reason, .. } => invalid(&reason),
            other => other,
        })
    }

    /// Position of `a` in the canonical enumeration order.
    pub fn index_of(&self, a: &FieldElem) -> BigUint {
        a.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * self.id.p + c)
    }

    /// The element at position `index` of the canonical enumeration order.
    pub fn element_at(&self, index: &BigUint) -> Result<FieldElem> {
        if index >= self.q() {
            return Err(Error::InvalidElement {
                text: index.to_string(),
                reason: format!("index not below q = {}", self.q()),
            });
        }
        let mut rest = index.clone();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            let (quot, digit) = rest.div_rem(&BigUint::from(self.id.p));
            *c = digit.to_u64().expect("digit below p");
            rest = quot;
        }
        Ok(e)
    }

    /// All elements in canonical order. Only meaningful for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let t = self.id.t as usize;
        let p = self.id.p;
        let total = self.q().to_u64().expect("enumeration requires q < 2^64");
        let mut digits = vec![0u64; t];
        (0..total).map(move |i| {
            if i > 0 {
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < p {
                        break;
                    }
                    *d = 0;
                }
            }
            FieldElem {
                field: self.id,
                coeffs: digits.clone(),
            }
        })
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_u(a, b))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_u(a, b))
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        Ok(self.neg_u(a))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_u(a, b))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_u(a))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let b_inv = self.inv(b)?;
        self.mul(a, &b_inv)
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> Result<FieldElem> {
        self.check(a)?;
        Ok(self.pow_u(a, e))
    }

    pub(crate) fn add_u(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.id.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElem {
            field: self.id,
            coeffs,
        }
    }

    pub(crate) fn sub_u(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.id.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect();
        FieldElem {
            field: self.id,
            coeffs,
        }
    }

    pub(crate) fn neg_u(&self, a: &FieldElem) -> FieldElem {
        let p = self.id.p;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { p - x })
            .collect();
        FieldElem {
            field: self.id,
            coeffs,
        }
    }

    pub(crate) fn mul_u(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.id.p;
        let t = self.id.t as usize;
        if t == 1 {
            return FieldElem {
                field: self.id,
                coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], p)],
            };
        }
        let mut wide = vec![0u128; 2 * t - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                wide[i + j] += mul_mod(x, y, p) as u128;
            }
        }
        let mut r: Vec<u64> = wide.iter().map(|&w| (w % p as u128) as u64).collect();
        for k in (t..2 * t - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            r[k] = 0;
            for j in 0..t {
                let m = self.modulus[j];
                if m != 0 {
                    let s = mul_mod(c, m, p);
                    let cell = &mut r[k - t + j];
                    *cell = if *cell >= s { *cell - s } else { *cell + p - s };
                }
            }
        }
        r.truncate(t);
        FieldElem {
            field: self.id,
            coeffs: r,
        }
    }

    pub(crate) fn inv_u(&self, a: &FieldElem) -> FieldElem {
        if self.id.t == 1 {
            return FieldElem {
                field: self.id,
                coeffs: vec![inv_mod(a.coeffs[0], self.id.p)],
            };
        }
        self.pow_u(a, &self.q_minus_two)
    }

    pub(crate) fn pow_u(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul_u(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_u(&acc, a);
            }
        }
        acc
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

/// Multiplicative order of a nonzero element.
///
/// Starts from `e = q − 1` and strips each prime factor `r` while `a^{e/r} = 1`.
pub fn mult_order(ctx: &FieldCtx, a: &FieldElem) -> Result<BigUint> {
    ctx.check(a)?;
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let factors = ctx.order_factorization()?;
    let mut e = ctx.q_minus_one().clone();
    for (r, m) in factors.pairs() {
        for _ in 0..*m {
            let candidate = &e / r;
            if ctx.pow_u(a, &candidate).is_one() {
                e = candidate;
            } else {
                break;
            }
        }
    }
    Ok(e)
}

/// True when `a` generates the multiplicative group.
pub fn is_generator(ctx: &FieldCtx, a: &FieldElem) -> Result<bool> {
    ctx.check(a)?;
    if a.is_zero() {
        return Ok(false);
    }
    let factors = ctx.order_factorization()?;
    let n = ctx.q_minus_one();
    Ok(factors.primes().all(|r| !ctx.pow_u(a, &(n / r)).is_one()))
}

/// The first generator of F^× in canonical enumeration order.
pub fn find_generator(ctx: &FieldCtx) -> Result<FieldElem> {
    let mut index = BigUint::one();
    loop {
        let candidate = ctx.element_at(&index)?;
        if is_generator(ctx, &candidate)? {
            return Ok(candidate);
        }
        index += 1u32;
    }
}

/// Degree of `a` over the subfield of size `q0`: the least `d` with `a^{q0^d} = a`.
pub fn degree_over_subfield(ctx: &FieldCtx, a: &FieldElem, q0: &PrimePower) -> Result<u32> {
    ctx.check(a)?;
    let t = ctx.degree();
    if q0.p() != ctx.size().p() || !t.is_multiple_of(q0.t()) {
        return Err(Error::NotSubfield {
            sub: q0.to_string(),
            field: ctx.size().to_string(),
        });
    }
    let mut image = a.clone();
    for d in 1..=t / q0.t() {
        image = ctx.pow_u(&image, q0.q());
        if image == *a {
            return Ok(d);
        }
    }
    unreachable!("a^(q^t) = a holds in F_(p^t)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn field(p: u64, t: u32) -> Arc<FieldCtx> {
        build_field(&big(p), t).unwrap()
    }

    #[test]
    fn build_field_examples() {
        let f13 = field(13, 1);
        assert_eq!(f13.q(), &big(13));
        assert!(f13.is_prime_field());
        let f9 = field(3, 2);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(
            build_field(&big(4), 1).unwrap_err(),
            Error::NotPrime(big(4))
        );
        assert_eq!(build_field(&big(5), 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn build_field_is_deterministic() {
        for (p, t) in [(2, 8), (3, 5), (7, 3), (11, 4)] {
            let a = field(p, t);
            let b = field(p, t);
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.modulus().len(), t as usize + 1);
            assert_eq!(*a.modulus().last().unwrap(), 1);
        }
        // Known small cases.
        assert_eq!(field(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(field(2, 3).modulus(), &[1, 1, 0, 1]);
        assert_eq!(field(2, 8).modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn element_arithmetic_examples() {
        let f13 = field(13, 1);
        let two = f13.from_u64(2);
        assert_eq!(f13.mul(&two, &f13.from_u64(7)).unwrap(), f13.one());
        assert_eq!(f13.pow(&two, &big(12)).unwrap(), f13.one());
        let f9 = field(3, 2);
        let x = f9.generator_x();
        assert_eq!(f9.mul(&x, &x).unwrap(), f9.from_u64(2));
    }

    #[test]
    fn mixed_context_and_zero_inverse_rejected() {
        let f13 = field(13, 1);
        let f9 = field(3, 2);
        assert_eq!(
            f13.mul(&f13.one(), &f9.one()).unwrap_err(),
            Error::MixedContext
        );
        assert_eq!(f9.inv(&f9.zero()).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn field_axioms_in_small_extension() {
        let f = field(2, 4);
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len(), 16);
        for a in &all {
            if !a.is_zero() {
                assert!(f.mul(a, &f.inv(a).unwrap()).unwrap().is_one());
            }
            for b in &all {
                assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                assert_eq!(f.sub(&f.add(a, b).unwrap(), b).unwrap(), *a);
                for c in all.iter().step_by(5) {
                    let lhs = f.mul(a, &f.add(b, c).unwrap()).unwrap();
                    let rhs = f.add(&f.mul(a, b).unwrap(), &f.mul(a, c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        let f13 = field(13, 1);
        assert_eq!(mult_order(&f13, &f13.from_u64(2)).unwrap(), big(12));
        assert_eq!(mult_order(&f13, &f13.from_u64(3)).unwrap(), big(3));
        assert_eq!(mult_order(&f13, &f13.one()).unwrap(), big(1));
        assert_eq!(
            mult_order(&field(3, 3), &field(3, 3).one()).unwrap(),
            big(1)
        );
        assert_eq!(
            mult_order(&f13, &f13.zero()).unwrap_err(),
            Error::ZeroElement
        );
    }

    #[test]
    fn find_generator_examples() {
        assert_eq!(find_generator(&field(13, 1)).unwrap().coeffs(), &[2]);
        assert_eq!(find_generator(&field(2, 1)).unwrap().coeffs(), &[1]);
        assert_eq!(find_generator(&field(5, 1)).unwrap().coeffs(), &[2]);
    }

    #[test]
    fn order_properties_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sizes: Vec<(u64, u32)> = (2..10_000u64)
            .filter_map(|q| arith::prime_power_decompose(&big(q)).unwrap())
            .map(|(p, t)| (p.to_u64().unwrap(), t))
            .collect();
        for _ in 0..50 {
            let (p, t) = sizes[rng.gen_range(0..sizes.len())];
            let f = field(p, t);
            let index = big(rng.gen_range(1..f.q().to_u64().unwrap()));
            let a = f.element_at(&index).unwrap();
            let e = mult_order(&f, &a).unwrap();
            assert!((f.q_minus_one() % &e).is_zero());
            assert!(f.pow(&a, &e).unwrap().is_one());
            for r in arith::factor(&e).unwrap().primes() {
                assert!(!f.pow(&a, &(&e / r)).unwrap().is_one());
            }
        }
    }

    #[test]
    fn enumeration_order_matches_index() {
        let f = field(3, 3);
        for (i, a) in f.elements().enumerate() {
            assert_eq!(f.index_of(&a), big(i as u64));
            assert_eq!(f.element_at(&big(i as u64)).unwrap(), a);
        }
        let all: Vec<_> = f.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn element_text_encoding() {
        let f = field(3, 3);
        let a = f.parse_elem("2,0,1").unwrap();
        assert_eq!(a.coeffs(), &[2, 0, 1]);
        assert_eq!(a.to_string(), "2,0,1");
        assert_eq!(f.parse_elem("2").unwrap().to_string(), "2,0,0");
        assert!(f.parse_elem("3").is_err());
        assert!(f.parse_elem("1,1,1,1").is_err());
        assert!(f.parse_elem("a").is_err());
        assert_eq!(field(13, 1).parse_elem("7").unwrap().to_string(), "7");
    }

    #[test]
    fn degree_over_subfield_examples() {
        let f13 = field(13, 1);
        let base = PrimePower::new(big(13), 1).unwrap();
        for a in f13.elements() {
            assert_eq!(degree_over_subfield(&f13, &a, &base).unwrap(), 1);
        }
        let f169 = field(13, 2);
        // Square roots of 2 exist in F_169 but not in F_13.
        let two = f169.from_u64(2);
        let root = f169
            .elements()
            .find(|a| f169.mul(a, a).unwrap() == two)
            .unwrap();
        assert_eq!(degree_over_subfield(&f169, &root, &base).unwrap(), 2);

        let f = field(13, 4);
        let sub = PrimePower::new(big(13), 2).unwrap();
        // b = a^((q^4-1)/(q^2-1)) lies in the size-13^2 subfield.
        let a = f.generator_x();
        let cofactor = (big(13).pow(4) - 1u32) / (big(13).pow(2) - 1u32);
        let b = f.pow(&a, &cofactor).unwrap();
        let d = degree_over_subfield(&f, &b, &base).unwrap();
        assert_eq!(2 % d, 0);
        assert_eq!(degree_over_subfield(&f, &b, &sub).unwrap(), 1);

        let bad = PrimePower::new(big(13), 3).unwrap();
        assert!(degree_over_subfield(&f, &b, &bad).is_err());
    }

    #[test]
    fn prime_power_parsing() {
        let a = PrimePower::parse("25").unwrap();
        let b = PrimePower::parse("5^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "5^2");
        assert!(PrimePower::parse("12").is_err());
        assert!(PrimePower::parse("4^2").is_err());
    }
}
