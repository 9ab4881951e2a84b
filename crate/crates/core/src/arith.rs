//! Exact natural-number arithmetic: primality, factorization, prime
//! enumeration and prime-power recognition.
//!
//! Values are `BigUint`; anything that fits in a `u64` takes a machine-word
//! path. Factorization is trial division by the primes below 10^6 followed by
//! Pollard's rho with Brent's cycle detection on whatever cofactor remains.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Miller–Rabin witnesses that make the test deterministic below 3.3·10^24.
const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic bound for [`MR_WITNESSES`]: 3317044064679887385961981.
const MR_DETERMINISTIC_BOUND: &str = "3317044064679887385961981";

/// Extra random rounds above the deterministic bound; 4^-64 = 2^-128.
const MR_EXTRA_ROUNDS: usize = 64;
const MR_SEED: u64 = 0x6d69_6c6c_6572_7261;

const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Iterations of the rho map allowed per polynomial constant.
const RHO_BUDGET: u64 = 1 << 22;
const RHO_CONSTANTS: u64 = 8;

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_unsorted(mut primes: Vec<BigUint>) -> Self {
        primes.sort();
        let mut pairs: Vec<(BigUint, u32)> = Vec::new();
        for p in primes {
            match pairs.last_mut() {
                Some((last, m)) if *last == p => *m += 1,
                _ => pairs.push((p, 1)),
            }
        }
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(BigUint, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.pairs.iter().map(|(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn multiplicity(&self, p: &BigUint) -> u32 {
        self.pairs
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }

    /// Product of `prime^multiplicity` over all pairs.
    pub fn value(&self) -> BigUint {
        self.pairs
            .iter()
            .fold(BigUint::one(), |acc, (p, m)| acc * p.pow(*m))
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_DIVISION_LIMIT))
}

fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, witness: u64, d: u64, s: u32) -> bool {
    let a = witness % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    MR_WITNESSES.iter().all(|&w| miller_rabin_u64(n, w, d, s))
}

fn miller_rabin_big(n: &BigUint, witness: &BigUint, d: &BigUint, s: u64) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut x = witness.modpow(d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Primality test: exact below 3.3·10^24, error below 2^-128 above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let deterministic = MR_WITNESSES
        .iter()
        .all(|&w| miller_rabin_big(n, &BigUint::from(w), &d, s));
    if !deterministic {
        return false;
    }
    let bound: BigUint = MR_DETERMINISTIC_BOUND.parse().expect("constant");
    if *n < bound {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MR_SEED);
    let two = BigUint::from(2u32);
    let span = n - 3u32;
    (0..MR_EXTRA_ROUNDS).all(|_| {
        let w = &two + random_below(&mut rng, &span);
        miller_rabin_big(n, &w, &d, s)
    })
}

fn random_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    // Rejection sampling on the bit length of `bound`.
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
        let excess = (words as u64) * 32 - bits;
        if let Some(top) = digits.last_mut() {
            *top >>= excess;
        }
        let candidate = BigUint::new(digits);
        if candidate < *bound {
            return candidate;
        }
    }
}

/// Prime factorization of `n >= 1`; `factor(1)` is empty.
pub fn factor(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut rest = n.clone();
    let mut primes = Vec::new();
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            primes.push(p_big.clone());
        }
    }
    if rest.is_one() {
        return Ok(Factorization::from_unsorted(primes));
    }
    let mut pending = vec![rest];
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        if let Some(root) = exact_square_root(&m) {
            pending.push(root.clone());
            pending.push(root);
            continue;
        }
        let d = pollard_brent(&m).ok_or_else(|| Error::FactorizationTooHard(m.clone()))?;
        pending.push(&m / &d);
        pending.push(d);
    }
    Ok(Factorization::from_unsorted(primes))
}

fn exact_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nontrivial divisor of a composite `n` by Brent's variant of Pollard's rho.
fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let batch: u64 = 128;
    for c in 1..=RHO_CONSTANTS {
        let c = BigUint::from(c);
        let step = |v: &BigUint| (v * v + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut spent: u64 = 0;
        while g.is_one() && spent < RHO_BUDGET {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            spent += r;
            r *= 2;
        }
        if g == *n {
            // The batch overshot; retrace one step at a time.
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Decomposes `n = p^t` with `p` prime, or `None` when `n` is not a prime power.
pub fn prime_power_decompose(n: &BigUint) -> Result<Option<(BigUint, u32)>> {
    if *n < BigUint::from(2u32) {
        return Err(Error::TooSmall(n.clone()));
    }
    let max_t = n.bits() as u32;
    for t in (1..=max_t).rev() {
        let root = n.nth_root(t);
        if root < BigUint::from(2u32) || root.pow(t) != *n {
            continue;
        }
        return Ok(is_prime(&root).then_some((root, t)));
    }
    Ok(None)
}

/// The first `k` primes, starting from 2.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while out.len() < k {
        if is_prime_u64(candidate) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(2)));
        assert!(is_prime(&big(13)));
        assert_eq!(big(7).pow(8), big(5_764_801));
        assert!(!is_prime(&big(5_764_801)));
        assert!(!is_prime(&big(0)));
        assert!(!is_prime(&big(1)));
    }

    #[test]
    fn primality_matches_trial_division_below_a_million() {
        let sieved = sieve(1_000_000);
        let mut expected = vec![false; 1_000_001];
        for p in sieved {
            expected[p as usize] = true;
        }
        for n in 0..=1_000_000u64 {
            assert_eq!(is_prime_u64(n), expected[n as usize], "n = {n}");
        }
        for n in (0..=20_000u64).chain(999_000..=1_000_000) {
            assert_eq!(expected[n as usize], trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn primality_on_big_values() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // Carmichael number well above the word size.
        let carmichael: BigUint = "3825123056546413051".parse().unwrap();
        assert!(!is_prime(&carmichael));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&big(12)).unwrap();
        assert_eq!(f.pairs(), &[(big(2), 2), (big(3), 1)]);
        assert!(factor(&big(1)).unwrap().is_empty());
        let f = factor(&big(5_764_800)).unwrap();
        for p in [2, 3, 5] {
            assert!(f.multiplicity(&big(p)) > 0);
        }
        assert_eq!(f.value(), big(5_764_800));
        assert_eq!(factor(&big(0)), Err(Error::FactorZero));
    }

    #[test]
    fn factor_reconstructs_small_values() {
        for n in 2..10_000u64 {
            let f = factor(&big(n)).unwrap();
            assert_eq!(f.value(), big(n));
            assert!(f.primes().all(is_prime));
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.pairs().iter().all(|(_, m)| *m >= 1));
        }
    }

    #[test]
    fn factor_beyond_trial_division() {
        // Two primes above the trial-division limit.
        let p = big(1_000_003);
        let q = big(998_244_353);
        let f = factor(&(&p * &q * &q)).unwrap();
        assert_eq!(f.pairs(), &[(p.clone(), 1), (q.clone(), 2)]);
        // 11^48 - 1, the fourth term of the power-tower family minus one.
        let n = big(11).pow(48) - 1u32;
        let f = factor(&n).unwrap();
        assert_eq!(f.value(), n);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_decompose(&big(25)).unwrap(), Some((big(5), 2)));
        assert_eq!(prime_power_decompose(&big(13)).unwrap(), Some((big(13), 1)));
        assert_eq!(prime_power_decompose(&big(12)).unwrap(), None);
        assert_eq!(prime_power_decompose(&big(64)).unwrap(), Some((big(2), 6)));
        assert!(prime_power_decompose(&big(1)).is_err());
    }

    #[test]
    fn prime_powers_of_first_twenty_primes() {
        for p in first_primes(20) {
            for t in 1..=5u32 {
                let n = big(p).pow(t);
                assert_eq!(prime_power_decompose(&n).unwrap(), Some((big(p), t)));
            }
        }
    }

    #[test]
    fn first_primes_examples() {
        assert_eq!(first_primes(1), vec![2]);
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
        assert_eq!(*first_primes(6).last().unwrap(), 13);
    }

    proptest::proptest! {
        #[test]
        fn natural_decimal_round_trip(digits in proptest::collection::vec(proptest::num::u32::ANY, 0..8)) {
            let n = BigUint::new(digits);
            let back: BigUint = n.to_string().parse().unwrap();
            proptest::prop_assert_eq!(back, n);
        }
    }
}
