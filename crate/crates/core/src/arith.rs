//! Exact 64-bit integer arithmetic: factorization, prime divisor sets and
//! Zsigmondy primitive prime divisors.
//!
//! Factorization trial-divides by the primes below 2^20 and hands whatever
//! cofactor remains to Brent's variant of Pollard rho. Every prime factor is
//! certified by a deterministic Miller-Rabin test, so results are exact for
//! the whole `u64` range.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Initial seed for [`factorize`]. Pollard rho polynomials are derived from it.
pub const DEFAULT_SEED: u64 = 0x5eed_c4a2_9e1d_0001;

static RHO_SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Witnesses that make Miller-Rabin deterministic below 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot factorize zero")]
    Zero,
    #[error("{base}^{exponent} does not fit in 64 bits")]
    Overflow { base: u64, exponent: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Prime factorization of a positive integer.
///
/// Entries are `(prime, exponent)` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The support of the factorization, `π(n)`.
    pub fn primes(&self) -> BTreeSet<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Returns `(p, f)` when `n = p^f` with `f ≥ 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.n)?;
        if self.factors.is_empty() {
            return write!(f, " 1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            let sep = if i == 0 { " " } else { " * " };
            if e == 1 {
                write!(f, "{sep}{p}")?;
            } else {
                write!(f, "{sep}{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `base^exponent`, or an overflow error past 64 bits.
pub fn checked_pow(base: u64, exponent: u32) -> Result<u64, ArithError> {
    base.checked_pow(exponent)
        .ok_or(ArithError::Overflow { base, exponent })
}

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// SplitMix64 step, used to derive rho parameters from a seed.
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Finds a non-trivial divisor of an odd composite `n` (Brent's cycle
/// detection with batched gcds).
fn pollard_brent(n: u64, seed: &mut u64) -> u64 {
    loop {
        let c = splitmix(seed) % (n - 1) + 1;
        let mut y = splitmix(seed) % n;
        let m = 128u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut x = y;
        let mut ys = y;
        let f = |v: u64| ((u128::from(mul_mod(v, v, n)) + u128::from(c)) % u128::from(n)) as u64;

        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; replay one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn split_into(n: u64, seed: &mut u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split_into(r, seed, out);
        split_into(r, seed, out);
        return;
    }
    let d = pollard_brent(n, seed);
    split_into(d, seed, out);
    split_into(n / d, seed, out);
}

/// Replaces the Pollard rho seed used by [`factorize`] for the rest of the
/// process. Factorizations are unique, so this only changes running time.
pub fn set_rho_seed(seed: u64) {
    RHO_SEED.store(seed, Ordering::Relaxed);
}

pub fn rho_seed() -> u64 {
    RHO_SEED.load(Ordering::Relaxed)
}

/// Factorizes `n` using the process-wide Pollard rho seed.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    factorize_with_seed(n, rho_seed())
}

/// Factorizes `n`; `seed` only affects running time, never the result.
pub fn factorize_with_seed(n: u64, seed: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rest = n;
    let mut primes: Vec<u64> = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        if rest < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT || is_prime(rest) {
            // every prime factor below 2^20 is gone, so `rest` is prime
            primes.push(rest);
        } else {
            let mut state = seed;
            split_into(rest, &mut state, &mut primes);
        }
    }
    primes.sort_unstable();

    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { n, factors })
}

/// `π(n)`, the set of primes dividing `n`.
pub fn prime_divisors(n: u64) -> Result<BTreeSet<u64>, ArithError> {
    Ok(factorize(n)?.primes())
}

/// Decomposes `q` as `p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    factorize(q).ok()?.as_prime_power()
}

/// Smallest primitive prime divisor of `base^n − 1`: a prime dividing it that
/// divides no `base^k − 1` with `1 ≤ k < n`.
///
/// Returns `Ok(None)` exactly in the Zsigmondy exceptions.
pub fn zsigmondy(base: u64, n: u32) -> Result<Option<u64>, ArithError> {
    if base < 2 {
        return Err(ArithError::InvalidArgument(format!("base {base} < 2")));
    }
    if n == 0 {
        return Err(ArithError::InvalidArgument("n must be at least 1".into()));
    }
    let value = checked_pow(base, n)? - 1;
    if value == 1 {
        // base = 2, n = 1
        return Ok(None);
    }
    let candidates = factorize(value)?;
    for &(p, _) in candidates.factors() {
        // p | base^k - 1 iff base^k ≡ 1 (mod p)
        let primitive = (1..n).all(|k| pow_mod(base, u64::from(k), p) != 1);
        if primitive {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Whether `(base, n)` is one of the classical Zsigmondy exceptions.
pub fn is_zsigmondy_exception(base: u64, n: u32) -> bool {
    match n {
        1 => base == 2,
        2 => (base + 1).is_power_of_two(),
        6 => base == 2,
        _ => false,
    }
}
