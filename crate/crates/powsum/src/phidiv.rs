//! Phi-divisors of an even exponent n: primes p admitting a degree k with
//! phi(p^k) | n and p^k >= 3. These are exactly the primes whose powers can
//! be stripped from the right-hand side without changing solution counts.

use crate::error::Error;
use crate::numtheory::{is_prime_u64, small_primes};

/// A prime together with its maximal phi-divisor degree for some exponent n:
/// phi(p^degree) | n, p^degree >= 3, and phi(p^(degree+1)) does not divide n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiDivisor {
    pub p: u64,
    pub degree: u32,
    /// p^degree, cached.
    pub prime_power: u64,
}

/// Maximal k with phi(p^k) | n and p^k >= 3, if any. Always absent for odd n
/// since phi(p^k) is even once p^k >= 3.
pub fn phi_divisor_degree(p: u64, n: u32) -> Result<Option<u32>, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let n = n as u128;
    let mut best = None;
    let mut k = 1u32;
    // phi(p^k) grows geometrically, so this terminates within log_p(n) + 2.
    loop {
        let phi = (p as u128).pow(k - 1) * (p as u128 - 1);
        if phi > n || !n.is_multiple_of(phi) {
            break;
        }
        if (p as u128).pow(k) >= 3 {
            best = Some(k);
        }
        k += 1;
    }
    Ok(best)
}

/// Every phi-divisor of n at its maximal degree, in increasing prime order.
/// Complete: phi(p^k) | n forces (p-1) | n, so p <= n + 1.
pub fn all_phi_divisors(n: u32) -> Vec<PhiDivisor> {
    if !n.is_multiple_of(2) {
        return Vec::new();
    }
    small_primes(n as u64 + 1)
        .into_iter()
        .filter_map(|p| {
            let degree = phi_divisor_degree(p, n).expect("sieve yields primes")?;
            Some(PhiDivisor {
                p,
                degree,
                prime_power: p.pow(degree),
            })
        })
        .collect()
}
