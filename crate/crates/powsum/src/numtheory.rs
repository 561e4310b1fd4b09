//! Exact integer primitives consumed by the theorem engines: factorization,
//! totients of prime powers, p-adic valuations of n!, integer roots, and
//! power-residue alphabets. Everything here is exact; no floating point.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Witness set proven deterministic for all inputs below 3.317e24
/// (covers every u64 and the default factoring budget).
const MILLER_RABIN_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// base^exp mod m with u128 intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn miller_rabin_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let mut x = mod_pow(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..(n - 1).trailing_zeros() {
        x = ((x as u128 * x as u128) % n as u128) as u64;
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    MILLER_RABIN_BASES.iter().all(|&b| miller_rabin_u64(n, b))
}

fn miller_rabin_big(n: &BigUint, base: u64) -> bool {
    let n_minus_1 = n - 1u32;
    let a = BigUint::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality check. Deterministic for every value the factoring budget admits;
/// the same witness set is applied (as a strong test) beyond that range.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if !n.bit(0) {
        return false;
    }
    MILLER_RABIN_BASES.iter().all(|&b| miller_rabin_big(n, b))
}

/// Primes up to and including `limit`, by sieve.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let size = limit as usize + 1;
    let mut sieve = vec![true; size];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p < size {
        if sieve[p] {
            for q in (p * p..size).step_by(p) {
                sieve[q] = false;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &keep)| keep.then_some(i as u64))
        .collect()
}

/// Canonical prime factorization: strictly increasing primes, positive
/// exponents, and the product of p^e recomposes the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Recompose the factored integer.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Budget knobs for `factorize`. Inputs whose unresolved cofactor has no
/// prime factor up to `trial_limit` and more than `cofactor_digit_budget`
/// decimal digits are rejected rather than left running indefinitely.
#[derive(Debug, Clone)]
pub struct FactorConfig {
    pub trial_limit: u64,
    pub cofactor_digit_budget: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_limit: 1_000_000,
            cofactor_digit_budget: 24,
        }
    }
}

pub fn factorize(n: &BigUint) -> Result<Factorization, Error> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigUint, cfg: &FactorConfig) -> Result<Factorization, Error> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("factorize requires n >= 1"));
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    if n.is_one() {
        return Ok(Factorization { factors });
    }

    let mut cofactor = n.clone();

    // Strip small primes while the cofactor is too wide for machine words.
    // Any cofactor still wider than u128 after this phase has no factor
    // below the trial limit.
    if cofactor.to_u128().is_none() {
        let mut p = 2u64;
        while p <= cfg.trial_limit {
            if (&cofactor % p).is_zero() {
                let mut e = 0u32;
                while (&cofactor % p).is_zero() {
                    cofactor /= p;
                    e += 1;
                }
                factors.push((BigUint::from(p), e));
                if cofactor.to_u128().is_some() {
                    break;
                }
            }
            p = if p == 2 { 3 } else { p + 2 };
        }
    }

    match cofactor.to_u128() {
        Some(small) => {
            let (more, rest) = trial_divide_u128(small, cfg.trial_limit);
            for (p, e) in more {
                merge_factor(&mut factors, BigUint::from(p), e);
            }
            if rest > 1 {
                resolve_cofactor(&mut factors, BigUint::from(rest), cfg)?;
            }
        }
        None => {
            if !cofactor.is_one() {
                resolve_cofactor(&mut factors, cofactor, cfg)?;
            }
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert_eq!(
        Factorization {
            factors: factors.clone()
        }
        .value(),
        *n
    );
    Ok(Factorization { factors })
}

fn merge_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        factors.push((p, e));
    }
}

/// Trial division up to min(trial_limit, sqrt(n)). If the loop runs past
/// sqrt(n) the returned cofactor is 1 or prime; otherwise it has no prime
/// factor at or below the limit.
fn trial_divide_u128(mut n: u128, trial_limit: u64) -> (Vec<(u64, u32)>, u128) {
    let mut out = Vec::new();
    let mut p = 2u64;
    while (p as u128) * (p as u128) <= n {
        if p > trial_limit {
            return (out, n);
        }
        if n.is_multiple_of(p as u128) {
            let mut e = 0u32;
            while n.is_multiple_of(p as u128) {
                n /= p as u128;
                e += 1;
            }
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
        n = 1;
    }
    (out, n)
}

/// The cofactor has no prime factor below the trial limit. Accept it when it
/// is itself prime or a prime power within the digit budget; refuse otherwise.
fn resolve_cofactor(
    factors: &mut Vec<(BigUint, u32)>,
    cofactor: BigUint,
    cfg: &FactorConfig,
) -> Result<(), Error> {
    let digits = cofactor.to_str_radix(10).len();
    if digits > cfg.cofactor_digit_budget {
        return Err(Error::FactorBudget {
            cofactor,
            trial_limit: cfg.trial_limit,
            digit_budget: cfg.cofactor_digit_budget,
        });
    }
    if is_prime(&cofactor) {
        merge_factor(factors, cofactor, 1);
        return Ok(());
    }
    let max_e = cofactor.bits() as u32;
    for e in (2..=max_e).rev() {
        let root = integer_nth_root(&cofactor, e);
        if root > BigUint::one() && root.pow(e) == cofactor && is_prime(&root) {
            merge_factor(factors, root, e);
            return Ok(());
        }
    }
    Err(Error::FactorBudget {
        cofactor,
        trial_limit: cfg.trial_limit,
        digit_budget: cfg.cofactor_digit_budget,
    })
}

/// phi(p^k) = p^(k-1) * (p - 1). Rejects non-prime p.
pub fn euler_phi_prime_power(p: u64, k: u32) -> Result<BigUint, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("phi(p^k) requires k >= 1"));
    }
    Ok(BigUint::from(p).pow(k - 1) * (p - 1))
}

/// Exponent of the prime p in n!, by the floor sum over powers of p.
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    debug_assert!(is_prime_u64(p));
    let mut total = 0u64;
    let mut q = p as u128;
    while q <= n as u128 {
        total += n / q as u64;
        q *= p as u128;
    }
    total
}

/// True iff p^(k+1) divides C(n,j) * p^(n-j) for every j in [1, n-1].
/// Requires p^k | n.
pub fn verify_binomial_divisibility(p: u64, k: u32, n: u64) -> Result<bool, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let pk = (p as u128).checked_pow(k);
    match pk {
        Some(pk) if (n as u128).is_multiple_of(pk) => {}
        _ => return Err(Error::BinomialHypothesis { p, k, n }),
    }
    let modulus = BigUint::from(p).pow(k + 1);
    let big_p = BigUint::from(p);
    // C(n,j) built incrementally: C(n,j+1) = C(n,j) * (n-j) / (j+1).
    let mut binom = BigUint::one();
    for j in 1..n {
        binom = binom * (n - j + 1) / j;
        let term = &binom * big_p.pow((n - j) as u32);
        if !(term % &modulus).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Floor of the n-th root, by binary search on the exact power predicate.
pub fn integer_nth_root(d: &BigUint, n: u32) -> BigUint {
    assert!(n >= 1, "root index must be positive");
    if n == 1 || d.is_zero() || d.is_one() {
        return d.clone();
    }
    let bits = d.bits();
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (bits / n as u64 + 1);
    debug_assert!(hi.pow(n) > *d);
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(n) <= *d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Floor n-th root on machine words, same predicate as `integer_nth_root`.
pub(crate) fn nth_root_u128(d: u128, n: u32) -> u128 {
    if n == 1 || d <= 1 {
        return d;
    }
    let bits = 128 - d.leading_zeros() as u64;
    let mut lo: u128 = 0;
    let mut hi: u128 = 1u128 << (bits / n as u64 + 1).min(127);
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match checked_pow_u128(mid, n) {
            Some(v) if v <= d => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

pub(crate) fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut b = base;
    let mut e = exp;
    loop {
        if e & 1 == 1 {
            acc = acc.checked_mul(b)?;
        }
        e >>= 1;
        if e == 0 {
            return Some(acc);
        }
        b = b.checked_mul(b)?;
    }
}

/// The set {x^n mod c : x in [0, c)} for a fixed modulus c >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }

    pub fn contains(&self, r: u64) -> bool {
        self.residues.contains(&r)
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Residues contained in {0, 1}.
    pub fn is_zero_one(&self) -> bool {
        self.residues.iter().all(|&r| r <= 1)
    }

    /// Residues contained in {0, 1, c-1}.
    pub fn is_zero_plus_minus_one(&self) -> bool {
        self.residues
            .iter()
            .all(|&r| r <= 1 || r == self.modulus - 1)
    }

    /// First residue class not in the set, if any.
    pub fn first_missing(&self) -> Option<u64> {
        (0..self.modulus).find(|r| !self.residues.contains(r))
    }
}

/// Enumerate {x^n mod c : x in [0, c)} by square-and-multiply.
pub fn power_residues(n: u32, c: u64) -> ResidueSet {
    assert!(c >= 2, "modulus must be at least 2");
    let residues = (0..c).map(|x| mod_pow(x, n as u64, c)).collect();
    ResidueSet {
        modulus: c,
        residues,
    }
}

/// Binomial coefficient C(n, k) as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}
