//! Irreducibility of `x^n − g` over a finite field, decided three ways: the
//! order criterion (gcd, prime divisors of `n` against `ord(g)`, the 4-clause),
//! the power criterion (`g` not a p-th power for `p | n`, `g ∉ −4F^4` when
//! `4 | n`), and the Rabin test on the polynomial itself.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{self, FieldCtx, FieldElem, PrimePower};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedCondition {
    GcdCondition,
    PrimeDivisorCondition,
    FourCondition,
    PthPower,
    Minus4FourthPower,
}

impl FailedCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            FailedCondition::GcdCondition => "gcd-condition",
            FailedCondition::PrimeDivisorCondition => "prime-divisor-condition",
            FailedCondition::FourCondition => "four-condition",
            FailedCondition::PthPower => "pth-power",
            FailedCondition::Minus4FourthPower => "minus4-fourth-power",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialReport {
    pub q: PrimePower,
    pub g: FieldElem,
    pub n: u64,
    pub order_e: BigUint,
    pub ln_verdict: bool,
    pub karp_verdict: bool,
    pub oracle_verdict: Option<bool>,
    pub failed_condition: Option<FailedCondition>,
}

impl BinomialReport {
    /// The report's own invariants: criteria agree and `e | q − 1`.
    pub fn is_consistent(&self) -> bool {
        self.ln_verdict == self.karp_verdict
            && self.oracle_verdict.is_none_or(|v| v == self.ln_verdict)
            && (self.q.q_minus_one() % &self.order_e).is_zero()
            && self.failed_condition.is_some() != self.ln_verdict
    }
}

impl Serialize for BinomialReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BinomialReport", 10)?;
        s.serialize_field("q", &self.q.q().to_string())?;
        s.serialize_field("p", &self.q.p().to_string())?;
        s.serialize_field("t", &self.q.t())?;
        s.serialize_field("g", &self.g)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("order_e", &self.order_e.to_string())?;
        s.serialize_field("ln_verdict", &self.ln_verdict)?;
        s.serialize_field("karp_verdict", &self.karp_verdict)?;
        s.serialize_field("oracle_verdict", &self.oracle_verdict)?;
        s.serialize_field("failed_condition", &self.failed_condition)?;
        s.end()
    }
}

/// Outcome of the order criterion alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCriterion {
    pub order_e: BigUint,
    pub failed: Option<FailedCondition>,
}

impl OrderCriterion {
    pub fn verdict(&self) -> bool {
        self.failed.is_none()
    }
}

fn check_inputs(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<()> {
    ctx.check(g)?;
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n == 0 {
        return Err(Error::ZeroBinomialDegree);
    }
    Ok(())
}

fn divides(d: u64, n: &BigUint) -> bool {
    (n % d).is_zero()
}

/// The order criterion, reporting the first violated clause.
pub fn order_criterion(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<OrderCriterion> {
    check_inputs(ctx, g, n)?;
    let order_e = field::mult_order(ctx, g)?;
    let failed = if n == 1 {
        None
    } else {
        let n_big = BigUint::from(n);
        let cofactor = ctx.q_minus_one() / &order_e;
        let n_primes = arith::factor(&n_big)?;
        if !cofactor.gcd(&n_big).is_one() {
            Some(FailedCondition::GcdCondition)
        } else if !n_primes.primes().all(|r| (&order_e % r).is_zero()) {
            Some(FailedCondition::PrimeDivisorCondition)
        } else if n.is_multiple_of(4) && !divides(4, ctx.q_minus_one()) {
            Some(FailedCondition::FourCondition)
        } else {
            None
        }
    };
    Ok(OrderCriterion { order_e, failed })
}

/// Order-criterion report (the power criterion is computed alongside and must agree).
pub fn irreducible_ln(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<BinomialReport> {
    binomial_report(ctx, g, n, false)
}

/// Whether `g = h^p` for some `h` in the field.
pub fn is_pth_power(ctx: &FieldCtx, g: &FieldElem, p: &BigUint) -> Result<bool> {
    ctx.check(g)?;
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if *p == BigUint::from(ctx.characteristic()) {
        // Frobenius is onto.
        return Ok(true);
    }
    let (index, rem) = ctx.q_minus_one().div_rem(p);
    if !rem.is_zero() {
        return Ok(true);
    }
    Ok(ctx.pow_u(g, &index).is_one())
}

/// Whether `g ∈ −4F^4 = {−4h^4 : h ∈ F}`.
pub fn in_minus4_fourth_powers(ctx: &FieldCtx, g: &FieldElem) -> Result<bool> {
    ctx.check(g)?;
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    if ctx.characteristic() == 2 {
        // −4 = 0, so the set is {0}.
        return Ok(false);
    }
    let minus_four = ctx.neg_u(&ctx.from_u64(4));
    let target = ctx.mul_u(g, &ctx.inv_u(&minus_four));
    let q1 = ctx.q_minus_one();
    let d = q1.gcd(&BigUint::from(4u32));
    Ok(ctx.pow_u(&target, &(q1 / d)).is_one())
}

/// First violated clause of the power criterion, if any.
pub fn power_criterion(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<Option<FailedCondition>> {
    check_inputs(ctx, g, n)?;
    if n == 1 {
        return Ok(None);
    }
    for r in arith::factor(&BigUint::from(n))?.primes() {
        if is_pth_power(ctx, g, r)? {
            return Ok(Some(FailedCondition::PthPower));
        }
    }
    if n.is_multiple_of(4) && in_minus4_fourth_powers(ctx, g)? {
        return Ok(Some(FailedCondition::Minus4FourthPower));
    }
    Ok(None)
}

pub fn irreducible_karp(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<bool> {
    Ok(power_criterion(ctx, g, n)?.is_none())
}

/// `x^n − g` by the Rabin test.
pub fn irreducible_rabin(ctx: &FieldCtx, g: &FieldElem, n: u64) -> Result<bool> {
    check_inputs(ctx, g, n)?;
    let n = usize::try_from(n).map_err(|_| Error::DeskScaleExceeded {
        total: n,
        bound: usize::MAX as u64,
    })?;
    poly::rabin_irreducible(ctx, &Poly::binomial(ctx, n, g))
}

/// Full report; a disagreement between routes is an internal error.
pub fn binomial_report(
    ctx: &FieldCtx,
    g: &FieldElem,
    n: u64,
    with_oracle: bool,
) -> Result<BinomialReport> {
    let ln = order_criterion(ctx, g, n)?;
    let karp_verdict = irreducible_karp(ctx, g, n)?;
    let oracle_verdict = if with_oracle {
        Some(irreducible_rabin(ctx, g, n)?)
    } else {
        None
    };
    let report = BinomialReport {
        q: ctx.size().clone(),
        g: g.clone(),
        n,
        ln_verdict: ln.verdict(),
        order_e: ln.order_e,
        karp_verdict,
        oracle_verdict,
        failed_condition: ln.failed,
    };
    if !report.is_consistent() {
        return Err(Error::CriteriaDisagree(format!(
            "x^{n} - ({g}) over F_{}: order={} power={} rabin={:?}",
            report.q, report.ln_verdict, report.karp_verdict, report.oracle_verdict
        )));
    }
    Ok(report)
}

/// Every prime divisor of `n` divides `q − 1`, and `4 | n` forces `4 | q − 1`.
pub fn diamond(q: &PrimePower, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroBinomialDegree);
    }
    let q1 = q.q_minus_one();
    let primes_ok = arith::factor(&BigUint::from(n))?
        .primes()
        .all(|r| (&q1 % r).is_zero());
    Ok(primes_ok && (!n.is_multiple_of(4) || divides(4, &q1)))
}
