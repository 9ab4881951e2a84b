//! Univariate polynomials over a [`FieldCtx`], with the Rabin irreducibility
//! test and root finding by equal-degree splitting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Seed for the splitting stream in [`poly_roots`].
pub const ROOT_SPLITTING_SEED: u64 = 0x5eed_0fc0_ffee;

/// Little-endian coefficients, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Poly::new(vec![ctx.zero(), ctx.one()])
    }

    /// `x^n − g`.
    pub fn binomial(ctx: &FieldCtx, n: usize, g: &FieldElem) -> Self {
        let mut coeffs = vec![ctx.zero(); n + 1];
        coeffs[0] = ctx.neg_u(g);
        coeffs[n] = ctx.add_u(&coeffs[n], &ctx.one());
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElem::is_one)
    }
}

/// Prime-field coefficients print as `c0,c1,...`; extension coefficients
/// are parenthesized in their own element encoding.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let extension = self.coeffs[0].coeffs().len() > 1;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| {
                if extension {
                    format!("({c})")
                } else {
                    c.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses the comma-separated little-endian form over a prime field.
pub fn parse_poly(ctx: &FieldCtx, text: &str) -> Result<Poly> {
    if !ctx.is_prime_field() {
        return Err(Error::InvalidElement {
            text: text.to_string(),
            reason: "polynomial text form is defined over prime fields".to_string(),
        });
    }
    text.split(',')
        .map(|part| ctx.parse_elem(part))
        .collect::<Result<Vec<_>>>()
        .map(Poly::new)
}

fn check_poly(ctx: &FieldCtx, f: &Poly) -> Result<()> {
    f.coeffs.iter().try_for_each(|c| ctx.check(c))
}

pub fn add(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<Poly> {
    check_poly(ctx, a)?;
    check_poly(ctx, b)?;
    Ok(add_u(ctx, a, b))
}

pub fn sub(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<Poly> {
    check_poly(ctx, a)?;
    check_poly(ctx, b)?;
    Ok(sub_u(ctx, a, b))
}

pub fn mul(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<Poly> {
    check_poly(ctx, a)?;
    check_poly(ctx, b)?;
    Ok(mul_u(ctx, a, b))
}

/// Quotient and remainder; the divisor must be nonzero.
pub fn divrem(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    check_poly(ctx, a)?;
    check_poly(ctx, b)?;
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(divrem_u(ctx, a, b))
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<Poly> {
    check_poly(ctx, a)?;
    check_poly(ctx, b)?;
    Ok(gcd_u(ctx, a, b))
}

/// `base^e mod m`.
pub fn powmod(ctx: &FieldCtx, base: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
    check_poly(ctx, base)?;
    check_poly(ctx, m)?;
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(powmod_u(ctx, base, e, m))
}

/// Horner evaluation.
pub fn eval(ctx: &FieldCtx, f: &Poly, a: &FieldElem) -> Result<FieldElem> {
    check_poly(ctx, f)?;
    ctx.check(a)?;
    Ok(eval_u(ctx, f, a))
}

pub(crate) fn eval_u(ctx: &FieldCtx, f: &Poly, a: &FieldElem) -> FieldElem {
    f.coeffs
        .iter()
        .rev()
        .fold(ctx.zero(), |acc, c| ctx.add_u(&ctx.mul_u(&acc, a), c))
}

fn add_u(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
    let (long, short) = if a.coeffs.len() >= b.coeffs.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut coeffs = long.coeffs.clone();
    for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
        *c = ctx.add_u(c, s);
    }
    Poly::new(coeffs)
}

fn sub_u(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
    let len = a.coeffs.len().max(b.coeffs.len());
    let zero = ctx.zero();
    let coeffs = (0..len)
        .map(|i| {
            let x = a.coeffs.get(i).unwrap_or(&zero);
            let y = b.coeffs.get(i).unwrap_or(&zero);
            ctx.sub_u(x, y)
        })
        .collect();
    Poly::new(coeffs)
}

fn mul_u(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut coeffs = vec![ctx.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = ctx.add_u(&coeffs[i + j], &ctx.mul_u(x, y));
        }
    }
    Poly::new(coeffs)
}

fn divrem_u(ctx: &FieldCtx, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.coeffs.len() - 1;
    if a.coeffs.len() <= db {
        return (Poly::zero(), a.clone());
    }
    let lead = b.leading().expect("nonzero divisor");
    let lead_inv = (!lead.is_one()).then(|| ctx.inv_u(lead));
    let mut rem = a.coeffs.clone();
    let mut quot = vec![ctx.zero(); a.coeffs.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = match &lead_inv {
            Some(inv) => ctx.mul_u(&rem[k], inv),
            None => rem[k].clone(),
        };
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                rem[k - db + j] = ctx.sub_u(&rem[k - db + j], &ctx.mul_u(&c, bj));
            }
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (Poly::new(quot), Poly::new(rem))
}

fn rem_u(ctx: &FieldCtx, a: &Poly, m: &Poly) -> Poly {
    divrem_u(ctx, a, m).1
}

fn mulmod_u(ctx: &FieldCtx, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem_u(ctx, &mul_u(ctx, a, b), m)
}

fn powmod_u(ctx: &FieldCtx, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
    let base = rem_u(ctx, base, m);
    let mut acc = rem_u(ctx, &Poly::constant(ctx.one()), m);
    for i in (0..e.bits()).rev() {
        acc = mulmod_u(ctx, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod_u(ctx, &acc, &base, m);
        }
    }
    acc
}

fn make_monic_u(ctx: &FieldCtx, f: &Poly) -> Poly {
    match f.leading() {
        Some(lead) if !lead.is_one() => {
            let inv = ctx.inv_u(lead);
            Poly::new(f.coeffs.iter().map(|c| ctx.mul_u(c, &inv)).collect())
        }
        _ => f.clone(),
    }
}

fn gcd_u(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = rem_u(ctx, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    make_monic_u(ctx, &r0)
}

/// Rabin's test: monic `f` of degree `n` is irreducible iff
/// `f | x^{q^n} − x` and `gcd(f, x^{q^{n/r}} − x) = 1` for each prime `r | n`.
pub fn rabin_irreducible(ctx: &FieldCtx, f: &Poly) -> Result<bool> {
    check_poly(ctx, f)?;
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    match n {
        0 => return Ok(false),
        1 => return Ok(true),
        _ => {}
    }
    let prime_divisors: Vec<usize> = arith::factor(&BigUint::from(n))?
        .primes()
        .map(|r| r.to_usize().expect("divisor of a usize"))
        .collect();
    let x = Poly::x(ctx);
    let mut frob = x.clone();
    let mut checkpoints = Vec::new();
    for m in 1..=n {
        frob = powmod_u(ctx, &frob, ctx.q(), f);
        if prime_divisors.iter().any(|&r| n / r == m) {
            checkpoints.push(frob.clone());
        }
    }
    if frob != x {
        return Ok(false);
    }
    Ok(checkpoints
        .iter()
        .all(|xm| gcd_u(ctx, f, &sub_u(ctx, xm, &x)).degree() == Some(0)))
}

/// All roots of `f` in the field, in canonical element order.
pub fn poly_roots(ctx: &FieldCtx, f: &Poly) -> Result<Vec<FieldElem>> {
    check_poly(ctx, f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let f = make_monic_u(ctx, f);
    let x = Poly::x(ctx);
    let frob = powmod_u(ctx, &x, ctx.q(), &f);
    let linear_part = gcd_u(ctx, &f, &sub_u(ctx, &frob, &x));
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SPLITTING_SEED);
    let mut roots = Vec::new();
    split_linear(ctx, &linear_part, &mut rng, &mut roots);
    roots.sort();
    Ok(roots)
}

fn random_elem(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElem {
    let p = ctx.characteristic();
    let coeffs: Vec<u64> = (0..ctx.degree()).map(|_| rng.gen_range(0..p)).collect();
    ctx.from_coeffs(&coeffs).expect("residues below p")
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear(ctx: &FieldCtx, h: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElem>) {
    let d = match h.degree() {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        out.push(ctx.neg_u(&h.coeffs[0]));
        return;
    }
    let x = Poly::x(ctx);
    loop {
        let a = random_elem(ctx, rng);
        let probe = if ctx.characteristic() == 2 {
            // Trace of a·x: sum of (a·x)^{2^i} for i < t.
            let ax = rem_u(ctx, &Poly::new(vec![ctx.zero(), a]), h);
            let mut acc = ax.clone();
            let mut term = ax;
            for _ in 1..ctx.degree() {
                term = mulmod_u(ctx, &term, &term, h);
                acc = add_u(ctx, &acc, &term);
            }
            acc
        } else {
            let shifted = add_u(ctx, &x, &Poly::constant(a));
            let half = (ctx.q() - 1u32) >> 1;
            sub_u(
                ctx,
                &powmod_u(ctx, &shifted, &half, h),
                &Poly::constant(ctx.one()),
            )
        };
        let factor = gcd_u(ctx, h, &probe);
        if let Some(fd) = factor.degree() {
            if fd > 0 && fd < d {
                let (cofactor, _) = divrem_u(ctx, h, &factor);
                split_linear(ctx, &factor, rng, out);
                split_linear(ctx, &cofactor, rng, out);
                return;
            }
        }
    }
}
