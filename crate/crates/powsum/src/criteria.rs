//! The insolvability certificate engine.
//!
//! Each criterion inspects x1^n + ... + xm^n = b for a raw right-hand side b
//! and either produces a named certificate or stays silent:
//!
//! - gap criterion (Theorem 3): b falls strictly between m*l^n and (l+1)^n;
//! - zero-one residue criteria (Theorems 4-6): x^n mod c lands in {0,1}, so
//!   an m-fold sum cannot reach a remainder above m;
//! - plus-minus residue criterion (Theorem 7): x^n mod p^k lands in {0,+1,-1},
//!   excluding remainders in [m+1, p^k-m-1];
//! - general residue sumset: the remainder is unreachable as an m-fold sum of
//!   actual n-th power residues, computed exactly. Subsumes the above lemmas
//!   and the classic three-squares obstruction mod 8.
//!
//! The dispatcher reduces the equation first (phi-divisor stripping preserves
//! counts), tries the criteria in a fixed cheap-first order, then falls back
//! to the exact counting oracle within budget, and otherwise answers Unknown.
//! Unknown is an honest outcome: the criteria are sufficient, never complete.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::numtheory::{factorize_with, power_residues, small_primes, FactorConfig};
use crate::oracle::{count_solutions_with, OracleConfig};
use crate::phidiv::{all_phi_divisors, phi_divisor_degree};
use crate::reduction::{is_standard_with, reduce_fully, Equation, FullReduction, Mode, RhsStep};

/// Which hypothesis route admitted a zero-one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroOneSource {
    /// c = p^k with phi(p^k) | n.
    PhiPrimePower,
    /// c = 2^(k+2) with 2^k | n, k >= 2.
    TwoAdic,
    /// Admitted by direct residue computation only.
    Computed,
}

/// A machine-checkable record of which criterion established a verdict,
/// with the parameters it fired on. Built only by the checking functions,
/// so every field satisfies its criterion's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// copies * value^n = rhs with copies <= slots: the witness places
    /// `copies` components equal to `value` and zeros elsewhere.
    TrivialSolvable {
        copies: u32,
        value: BigUint,
        slots: u32,
    },
    /// m < (1+1/l)^n - 1 and b in [m*l^n + 1, (l+1)^n - 1].
    GapInterval { l: u64 },
    /// x^n mod modulus is {0,1}-valued, terms < modulus - 1, remainder > terms.
    ResidueZeroOne {
        modulus: u64,
        remainder: u64,
        terms: u32,
        source: ZeroOneSource,
    },
    /// x^n mod p^k is {0,1,-1}-valued, terms < (p^k-1)/2, remainder in
    /// [terms+1, p^k-terms-1].
    ResiduePlusMinus {
        p: u64,
        k: u32,
        modulus: u64,
        remainder: u64,
        terms: u32,
    },
    /// The remainder is outside the m-fold sumset of the n-th power residues.
    GeneralResidue {
        modulus: u64,
        remainder: u64,
        attainable: u64,
    },
    /// Standard equation with b < m admits no natural solution.
    StandardNaturalBound { b: BigUint, m: u32 },
    /// x1^n + x2^n = (p^s)^n has no natural solution for n >= 3.
    PrimePowerFermat { p: BigUint, s: u32, n: u32 },
    /// x1^n + x2^n = (p^s * q1^s1 * ...)^n with even n >= 4 and every q_i a
    /// phi-divisor of n: stripping the q_i reduces to the prime-power case.
    PhiAugmentedFermat {
        p: BigUint,
        s: u32,
        stripped: Vec<(u64, u32)>,
    },
    /// Exhaustive count of the (reduced) right-hand side came out zero.
    ExhaustiveCount { rhs: BigUint },
    /// A certificate for the reduced equation, together with the strips that
    /// connect it to the original right-hand side.
    ReducedBy {
        original_rhs: BigUint,
        reduced_rhs: BigUint,
        stripped: Vec<RhsStep>,
        inner: Box<Certificate>,
    },
}

impl Certificate {
    /// The criterion label, named after the theorem the verdict is audited
    /// against. Reduction wrappers report their innermost criterion.
    pub fn theorem(&self) -> &'static str {
        match self {
            Certificate::TrivialSolvable { .. } => "trivial witness",
            Certificate::GapInterval { .. } => "Theorem 3",
            Certificate::ResidueZeroOne {
                modulus,
                terms,
                source,
                ..
            } => match source {
                ZeroOneSource::TwoAdic => "Theorem 6",
                ZeroOneSource::PhiPrimePower => {
                    if *modulus == 4 && *terms == 2 {
                        "Theorem 5"
                    } else {
                        "Theorem 4"
                    }
                }
                ZeroOneSource::Computed => "Lemma 3.1",
            },
            Certificate::ResiduePlusMinus { .. } => "Theorem 7",
            Certificate::GeneralResidue { .. } => "residue sumset",
            Certificate::StandardNaturalBound { .. } => "Theorem 11",
            Certificate::PrimePowerFermat { .. } => "Theorem 12",
            Certificate::PhiAugmentedFermat { .. } => "Theorem 13",
            Certificate::ExhaustiveCount { .. } => "exhaustive count",
            Certificate::ReducedBy { inner, .. } => inner.theorem(),
        }
    }

    /// Innermost certificate, unwrapping reduction layers.
    pub fn innermost(&self) -> &Certificate {
        match self {
            Certificate::ReducedBy { inner, .. } => inner.innermost(),
            other => other,
        }
    }
}

/// Outcome of an analysis. Insoluble verdicts always carry a certificate;
/// Solvable carries a witness certificate, an exact count, or both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Solvable {
        certificate: Option<Certificate>,
        count: Option<BigUint>,
    },
    Insoluble {
        certificate: Certificate,
    },
    Unknown,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Solvable { .. } => "solvable",
            Verdict::Insoluble { .. } => "insoluble",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Solvable { certificate, .. } => certificate.as_ref(),
            Verdict::Insoluble { certificate } => Some(certificate),
            Verdict::Unknown => None,
        }
    }
}

/// Engine knobs shared by the dispatchers.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeConfig {
    pub oracle: OracleConfig,
    pub factor: FactorConfig,
    pub modulus_cap: ModulusCap,
}

#[derive(Debug, Clone)]
pub struct ModulusCap(pub u64);

impl Default for ModulusCap {
    fn default() -> Self {
        ModulusCap(4096)
    }
}

/// Gap criterion: search l >= 1 with (m+1)*l^n < (l+1)^n (exact integer form
/// of m < (1+1/l)^n - 1) and m*l^n < b < (l+1)^n. Both conditions are
/// monotone against l, so the scan stops at the first structural failure.
pub fn check_gap(n: u32, m: u32, b: &BigUint) -> Option<Certificate> {
    if *b <= BigUint::from(m) {
        return None;
    }
    let m_big = BigUint::from(m);
    let mut l = 1u64;
    loop {
        let l_pow = BigUint::from(l).pow(n);
        let l1_pow = BigUint::from(l + 1).pow(n);
        // width condition fails for every larger l once it fails here
        if (&m_big + 1u32) * &l_pow >= l1_pow {
            return None;
        }
        let lower = &m_big * &l_pow;
        // intervals start beyond b from here on
        if &lower >= b {
            return None;
        }
        if *b < l1_pow {
            return Some(Certificate::GapInterval { l });
        }
        l += 1;
    }
}

/// Zero-one residue criterion at a verified modulus: requires the computed
/// residue alphabet to be inside {0,1}, then fires iff m < c-1 and
/// r_(b;c) > m.
pub fn check_zero_one_residue(
    n: u32,
    m: u32,
    b: &BigUint,
    modulus: u64,
) -> Result<Option<Certificate>, Error> {
    let residues = power_residues(n, modulus);
    if !residues.is_zero_one() {
        let found = residues.residues().find(|&r| r > 1).unwrap();
        return Err(Error::ResiduesNotZeroOne { n, modulus, found });
    }
    if (m as u64) + 1 >= modulus {
        return Ok(None);
    }
    let r = remainder(b, modulus);
    if r > m as u64 {
        return Ok(Some(Certificate::ResidueZeroOne {
            modulus,
            remainder: r,
            terms: m,
            source: classify_zero_one(n, modulus),
        }));
    }
    Ok(None)
}

fn classify_zero_one(n: u32, modulus: u64) -> ZeroOneSource {
    if let Some((p, k)) = as_prime_power(modulus) {
        let phi = (p as u128).pow(k - 1) * (p as u128 - 1);
        if (n as u128).is_multiple_of(phi) {
            return ZeroOneSource::PhiPrimePower;
        }
        if p == 2 && k >= 4 && n.is_multiple_of(1u32 << (k - 2)) {
            return ZeroOneSource::TwoAdic;
        }
    }
    ZeroOneSource::Computed
}

fn as_prime_power(c: u64) -> Option<(u64, u32)> {
    if c < 2 {
        return None;
    }
    let mut p = c;
    for q in 2..=3u64 {
        if c.is_multiple_of(q) {
            p = q;
            break;
        }
    }
    if p == c {
        let mut q = 5u64;
        while q * q <= c {
            if c.is_multiple_of(q) {
                p = q;
                break;
            }
            q += 2;
        }
    }
    let mut k = 0u32;
    let mut rest = c;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn remainder(b: &BigUint, modulus: u64) -> u64 {
    (b % modulus)
        .to_u64()
        .expect("remainder below a u64 modulus")
}

/// Moduli at which the zero-one criterion is justified by hypothesis:
/// every p^k >= 3 with phi(p^k) | n and m < p^k - 1, plus 2^(k+2) for each
/// k >= 2 with 2^k | n and m < 2^(k+2) - 1. Sorted ascending.
pub fn candidate_zero_one_moduli(n: u32, m: u32) -> Vec<(u64, ZeroOneSource)> {
    let mut out: Vec<(u64, ZeroOneSource)> = Vec::new();
    for d in all_phi_divisors(n) {
        for k in 1..=d.degree {
            let pk = d.p.pow(k);
            if pk >= 3 && (m as u64) < pk - 1 {
                out.push((pk, ZeroOneSource::PhiPrimePower));
            }
        }
    }
    let mut k = 2u32;
    while k < 32 && n.is_multiple_of(1u32 << k) {
        let modulus = 1u64 << (k + 2);
        if (m as u64) < modulus - 1 && !out.iter().any(|(c, _)| *c == modulus) {
            out.push((modulus, ZeroOneSource::TwoAdic));
        }
        k += 1;
    }
    out.sort_by_key(|(c, _)| *c);
    out
}

/// Plus-minus residue criterion at p^k, p >= 3: requires phi(p^k)/2 to
/// divide n with odd quotient, then fires iff m < (p^k - 1)/2 and
/// r_(b;p^k) lies in [m+1, p^k - m - 1].
pub fn check_plus_minus_residue(
    n: u32,
    m: u32,
    b: &BigUint,
    p: u64,
    k: u32,
) -> Result<Option<Certificate>, Error> {
    if !crate::numtheory::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 || !plus_minus_exponent_ok(n, p, k) {
        return Err(Error::PlusMinusExponent { p, k, n });
    }
    let modulus = p.pow(k);
    if 2 * (m as u64) >= modulus - 1 {
        return Ok(None);
    }
    let r = remainder(b, modulus);
    if r > m as u64 && r < modulus - m as u64 {
        return Ok(Some(Certificate::ResiduePlusMinus {
            p,
            k,
            modulus,
            remainder: r,
            terms: m,
        }));
    }
    Ok(None)
}

fn plus_minus_exponent_ok(n: u32, p: u64, k: u32) -> bool {
    let Some(pk_minus) = (p as u128).checked_pow(k - 1) else {
        return false;
    };
    let half_phi = pk_minus * (p as u128 - 1) / 2;
    half_phi >= 1
        && half_phi <= n as u128
        && (n as u128).is_multiple_of(half_phi)
        && (n as u128 / half_phi) % 2 == 1
}

/// (p, k) pairs admitted by the plus-minus hypothesis with m below the
/// firing bound. Sorted by modulus.
pub fn candidate_plus_minus_moduli(n: u32, m: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in small_primes(2 * n as u64 + 1) {
        if p < 3 {
            continue;
        }
        for k in 1..=40 {
            let Some(pk) = p.checked_pow(k) else { break };
            let half_phi = (p as u128).pow(k - 1) * (p as u128 - 1) / 2;
            if half_phi > n as u128 {
                break;
            }
            if plus_minus_exponent_ok(n, p, k) && 2 * (m as u64) < pk - 1 {
                out.push((p, k));
            }
        }
    }
    out.sort_by_key(|(p, k)| p.pow(*k));
    out
}

/// Sound for any modulus: compute the m-fold modular sumset of the actual
/// n-th power residues and fire iff the remainder of b is unreachable.
pub fn check_general_residue(n: u32, m: u32, b: &BigUint, modulus: u64) -> Option<Certificate> {
    let attainable = attainable_sums(n, m, modulus);
    let r = remainder(b, modulus);
    if attainable[r as usize] {
        return None;
    }
    Some(Certificate::GeneralResidue {
        modulus,
        remainder: r,
        attainable: attainable.iter().filter(|&&x| x).count() as u64,
    })
}

/// m-fold sumset of {x^n mod c}. Since 0 is always a residue the fold is
/// monotone, so iteration stops at the fixpoint if it arrives before m.
pub fn attainable_sums(n: u32, m: u32, modulus: u64) -> Vec<bool> {
    let residues: Vec<u64> = power_residues(n, modulus).residues().collect();
    let size = modulus as usize;
    let mut current = vec![false; size];
    for &r in &residues {
        current[r as usize] = true;
    }
    for _ in 1..m {
        let mut next = current.clone();
        let mut changed = false;
        for a in current
            .iter()
            .enumerate()
            .filter_map(|(a, &hit)| hit.then_some(a))
        {
            for &r in &residues {
                let idx = (a as u64 + r) as usize % size;
                if !next[idx] {
                    next[idx] = true;
                    changed = true;
                }
            }
        }
        current = next;
        if !changed {
            break;
        }
    }
    current
}

/// Moduli worth probing with the general sumset criterion: prime powers p^k
/// up to the cap with (p-1) | 2n, plus powers of two up to 2^(v2(n)+2).
pub fn candidate_general_moduli(n: u32, cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in small_primes(2 * n as u64 + 1) {
        if p == 2 {
            continue;
        }
        if !(2 * n as u64).is_multiple_of(p - 1) {
            continue;
        }
        let mut pk = p;
        while pk <= cap {
            out.push(pk);
            let Some(next) = pk.checked_mul(p) else { break };
            pk = next;
        }
    }
    let two_max = n.trailing_zeros() + 2;
    let mut k = 2u32;
    while k <= two_max && (1u64 << k) <= cap {
        out.push(1u64 << k);
        k += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Fixed criterion precedence: gap, zero-one, plus-minus, general sumset.
/// Cheapest and most citable certificates first; ordering makes the
/// dispatcher deterministic.
pub fn first_criterion(n: u32, m: u32, b: &BigUint, cap: u64) -> Option<Certificate> {
    if let Some(cert) = check_gap(n, m, b) {
        return Some(cert);
    }
    for (modulus, _) in candidate_zero_one_moduli(n, m) {
        if let Ok(Some(cert)) = check_zero_one_residue(n, m, b, modulus) {
            return Some(cert);
        }
    }
    for (p, k) in candidate_plus_minus_moduli(n, m) {
        if let Ok(Some(cert)) = check_plus_minus_residue(n, m, b, p, k) {
            return Some(cert);
        }
    }
    for modulus in candidate_general_moduli(n, cap) {
        if let Some(cert) = check_general_residue(n, m, b, modulus) {
            return Some(cert);
        }
    }
    None
}

fn wrap_reduced(cert: Certificate, red: &FullReduction) -> Certificate {
    if red.steps.is_empty() {
        cert
    } else {
        Certificate::ReducedBy {
            original_rhs: red.original_rhs.clone(),
            reduced_rhs: red.effective_rhs.clone(),
            stripped: red.steps.clone(),
            inner: Box::new(cert),
        }
    }
}

/// Decide solvability of the equation. Natural-mode equations route through
/// `analyze_natural`; non-negative mode runs the pipeline: reduce, trivial
/// witness, criteria in precedence order, oracle within budget, Unknown.
pub fn analyze(eq: &Equation) -> Verdict {
    analyze_with(eq, &AnalyzeConfig::default())
}

pub fn analyze_with(eq: &Equation, cfg: &AnalyzeConfig) -> Verdict {
    match eq.mode {
        Mode::Natural => analyze_natural_with(eq, cfg).expect("mode is Natural by construction"),
        Mode::NonNegative => analyze_nonnegative(eq, cfg),
    }
}

fn analyze_nonnegative(eq: &Equation, cfg: &AnalyzeConfig) -> Verdict {
    // b copies of c among the m slots solve the equation outright
    if eq.b <= BigUint::from(eq.m) {
        let copies = eq.b.to_u32().expect("bounded by m");
        return Verdict::Solvable {
            certificate: Some(Certificate::TrivialSolvable {
                copies,
                value: eq.c.clone(),
                slots: eq.m,
            }),
            count: None,
        };
    }

    let red = reduce_fully(eq, &cfg.factor);
    let b_eff = &red.effective_rhs;

    // the reduced coefficient may fall below m even when b did not
    if *b_eff <= BigUint::from(eq.m) {
        let copies = b_eff.to_u32().expect("bounded by m");
        return Verdict::Solvable {
            certificate: Some(Certificate::TrivialSolvable {
                copies,
                value: red.scale.clone(),
                slots: eq.m,
            }),
            count: None,
        };
    }

    if let Some(cert) = first_criterion(eq.n, eq.m, b_eff, cfg.modulus_cap.0) {
        return Verdict::Insoluble {
            certificate: wrap_reduced(cert, &red),
        };
    }

    match count_solutions_with(eq.n, eq.m, b_eff, Mode::NonNegative, &cfg.oracle) {
        Ok(result) if result.count.is_zero() => Verdict::Insoluble {
            certificate: wrap_reduced(Certificate::ExhaustiveCount { rhs: b_eff.clone() }, &red),
        },
        Ok(result) => Verdict::Solvable {
            certificate: None,
            count: Some(result.count),
        },
        Err(_) => Verdict::Unknown,
    }
}

/// Natural-solution analysis: the standard bound b < m, the prime-power
/// two-term criterion, its phi-augmented extension, then reduction plus the
/// oracle in Natural mode.
pub fn analyze_natural(eq: &Equation) -> Result<Verdict, Error> {
    analyze_natural_with(eq, &AnalyzeConfig::default())
}

pub fn analyze_natural_with(eq: &Equation, cfg: &AnalyzeConfig) -> Result<Verdict, Error> {
    if eq.mode != Mode::Natural {
        return Err(Error::WrongMode);
    }
    let m_big = BigUint::from(eq.m);

    // m copies of c are a natural witness when b = m
    if eq.b == m_big {
        return Ok(Verdict::Solvable {
            certificate: Some(Certificate::TrivialSolvable {
                copies: eq.m,
                value: eq.c.clone(),
                slots: eq.m,
            }),
            count: None,
        });
    }

    // the two-term prime-power case outranks the standard bound: both can
    // apply when p is itself a phi-divisor, and the sharper certificate wins
    if eq.m == 2 && eq.n >= 3 && eq.b.is_one() && !eq.c.is_one() {
        if let Ok(factored) = factorize_with(&eq.c, &cfg.factor) {
            if factored.factors().len() == 1 {
                let (p, s) = factored.factors()[0].clone();
                return Ok(Verdict::Insoluble {
                    certificate: Certificate::PrimePowerFermat { p, s, n: eq.n },
                });
            }
        }
    }

    if eq.b < m_big && matches!(is_standard_with(eq, &cfg.factor), Ok(true)) {
        return Ok(Verdict::Insoluble {
            certificate: Certificate::StandardNaturalBound {
                b: eq.b.clone(),
                m: eq.m,
            },
        });
    }

    if eq.m == 2 && eq.n >= 3 && eq.b.is_one() && !eq.c.is_one() {
        if let Ok(factored) = factorize_with(&eq.c, &cfg.factor) {
            if eq.n.is_multiple_of(2) && eq.n >= 4 {
                let mut stripped: Vec<(u64, u32)> = Vec::new();
                let mut rest: Vec<(BigUint, u32)> = Vec::new();
                for (p, e) in factored.factors() {
                    let is_phi = p
                        .to_u64()
                        .and_then(|p| phi_divisor_degree(p, eq.n).ok().flatten().map(|_| p));
                    match is_phi {
                        Some(p) => stripped.push((p, *e)),
                        None => rest.push((p.clone(), *e)),
                    }
                }
                if rest.len() == 1 && !stripped.is_empty() {
                    let (p, s) = rest.into_iter().next().unwrap();
                    return Ok(Verdict::Insoluble {
                        certificate: Certificate::PhiAugmentedFermat { p, s, stripped },
                    });
                }
            }
        }
    }

    let red = reduce_fully(eq, &cfg.factor);
    match count_solutions_with(eq.n, eq.m, &red.effective_rhs, Mode::Natural, &cfg.oracle) {
        Ok(result) if result.count.is_zero() => Ok(Verdict::Insoluble {
            certificate: wrap_reduced(
                Certificate::ExhaustiveCount {
                    rhs: red.effective_rhs.clone(),
                },
                &red,
            ),
        }),
        Ok(result) => Ok(Verdict::Solvable {
            certificate: None,
            count: Some(result.count),
        }),
        Err(_) => Ok(Verdict::Unknown),
    }
}
