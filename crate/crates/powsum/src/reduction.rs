//! Count-preserving reduction: detecting standard equations and stripping
//! phi-divisor prime powers from the right-hand side of
//! x1^n + ... + xm^n = b*c^n. A prime power p^(e*n) may be removed whenever
//! the phi-divisor degree k of p satisfies m <= p^k - 1; the number of
//! solutions (in both counting modes) is unchanged.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::numtheory::{factorize_with, FactorConfig};
use crate::phidiv::{all_phi_divisors, PhiDivisor};

/// Which tuples count as solutions: all components >= 0, or all >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    NonNegative,
    Natural,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::NonNegative => "non-negative",
            Mode::Natural => "natural",
        }
    }
}

/// The equation x1^n + ... + xm^n = b * c^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub n: u32,
    pub m: u32,
    pub b: BigUint,
    pub c: BigUint,
    pub mode: Mode,
}

impl Equation {
    pub fn new(n: u32, m: u32, b: BigUint, c: BigUint, mode: Mode) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidEquation("exponent n must be at least 2"));
        }
        if m < 2 {
            return Err(Error::InvalidEquation("term count m must be at least 2"));
        }
        if c.is_zero() {
            return Err(Error::InvalidEquation("scale c must be positive"));
        }
        Ok(Equation { n, m, b, c, mode })
    }

    /// The combined right-hand side b * c^n.
    pub fn rhs(&self) -> BigUint {
        &self.b * self.c.pow(self.n)
    }
}

/// Phi-divisors of n whose degree k admits m terms: m <= p^k - 1.
pub fn eligible_divisors(n: u32, m: u32) -> Vec<PhiDivisor> {
    all_phi_divisors(n)
        .into_iter()
        .filter(|d| (m as u64) < d.prime_power)
        .collect()
}

/// True iff n is even, every prime of c is a phi-divisor of n, and
/// 2 <= m <= min(p_i^(k_i) - 1). c = 1 is standard for any even n, m >= 2.
pub fn is_standard(eq: &Equation) -> Result<bool, Error> {
    is_standard_with(eq, &FactorConfig::default())
}

pub fn is_standard_with(eq: &Equation, cfg: &FactorConfig) -> Result<bool, Error> {
    if !eq.n.is_multiple_of(2) {
        return Ok(false);
    }
    if eq.c.is_one() {
        return Ok(true);
    }
    let eligible = eligible_divisors(eq.n, eq.m);
    let factored = factorize_with(&eq.c, cfg)?;
    Ok(factored.factors().iter().all(|(p, _)| {
        p.to_u64()
            .map(|p| eligible.iter().any(|d| d.p == p))
            .unwrap_or(false)
    }))
}

/// One prime power removed from c: p^exponent, with the phi-divisor that
/// justified it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrippedPower {
    pub divisor: PhiDivisor,
    /// Exponent removed from c, so the right-hand side lost p^(exponent * n).
    pub exponent: u32,
}

/// Result of stripping eligible prime powers from c. The invariants
/// reduced.c * prod(p^exponent) = original.c and reduced.b = original.b hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub original: Equation,
    pub reduced: Equation,
    pub stripped: Vec<StrippedPower>,
}

impl ReductionTrace {
    pub fn is_identity(&self) -> bool {
        self.stripped.is_empty()
    }
}

/// Remove from c the full power of every eligible phi-divisor prime.
/// Solution counts are preserved in both modes.
pub fn reduce_equation(eq: &Equation) -> Result<ReductionTrace, Error> {
    reduce_equation_with(eq, &FactorConfig::default())
}

pub fn reduce_equation_with(eq: &Equation, cfg: &FactorConfig) -> Result<ReductionTrace, Error> {
    let identity = ReductionTrace {
        original: eq.clone(),
        reduced: eq.clone(),
        stripped: Vec::new(),
    };
    if eq.c.is_one() || !eq.n.is_multiple_of(2) {
        return Ok(identity);
    }
    let eligible = eligible_divisors(eq.n, eq.m);
    if eligible.is_empty() {
        return Ok(identity);
    }
    let factored = factorize_with(&eq.c, cfg)?;
    let mut stripped = Vec::new();
    let mut reduced_c = BigUint::one();
    for (p, e) in factored.factors() {
        let divisor = p
            .to_u64()
            .and_then(|p| eligible.iter().find(|d| d.p == p).copied());
        match divisor {
            Some(divisor) => stripped.push(StrippedPower {
                divisor,
                exponent: *e,
            }),
            None => reduced_c *= p.pow(*e),
        }
    }
    let reduced = Equation {
        c: reduced_c,
        ..eq.clone()
    };
    debug_assert_eq!(
        stripped.iter().fold(reduced.c.clone(), |acc, s| acc
            * BigUint::from(s.divisor.p).pow(s.exponent)),
        eq.c
    );
    Ok(ReductionTrace {
        original: eq.clone(),
        reduced,
        stripped,
    })
}

/// One descent applied `steps` times: (p^n)^steps divided out of a raw
/// right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsStep {
    pub divisor: PhiDivisor,
    pub steps: u32,
}

/// Raw right-hand-side reduction: reduced * prod((p^n)^steps) = original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsReduction {
    pub original: BigUint,
    pub reduced: BigUint,
    pub steps: Vec<RhsStep>,
}

/// Divide every eligible p^n out of N while it divides N. The solution count
/// of x1^n + ... + xm^n = N equals the count at the reduced value.
pub fn reduce_rhs(n: u32, m: u32, rhs: &BigUint) -> Result<RhsReduction, Error> {
    reduce_rhs_with(n, m, rhs, &FactorConfig::default())
}

pub fn reduce_rhs_with(
    n: u32,
    m: u32,
    rhs: &BigUint,
    cfg: &FactorConfig,
) -> Result<RhsReduction, Error> {
    if rhs.is_zero() {
        return Err(Error::InvalidArgument("rhs reduction requires N >= 1"));
    }
    let identity = RhsReduction {
        original: rhs.clone(),
        reduced: rhs.clone(),
        steps: Vec::new(),
    };
    if !n.is_multiple_of(2) {
        return Ok(identity);
    }
    let eligible = eligible_divisors(n, m);
    if eligible.is_empty() {
        return Ok(identity);
    }
    let factored = factorize_with(rhs, cfg)?;
    let mut steps = Vec::new();
    let mut reduced = rhs.clone();
    for (p, e) in factored.factors() {
        let divisor = p
            .to_u64()
            .and_then(|p| eligible.iter().find(|d| d.p == p).copied());
        if let Some(divisor) = divisor {
            // one p^n at a time, so partial powers keep their remainder
            let step_count = e / n;
            if step_count > 0 {
                reduced /= p.pow(step_count * n);
                steps.push(RhsStep {
                    divisor,
                    steps: step_count,
                });
            }
        }
    }
    Ok(RhsReduction {
        original: rhs.clone(),
        reduced,
        steps,
    })
}

/// Both reduction stages composed: strip eligible primes from c, then strip
/// eligible p^n factors out of the remaining right-hand side. Budget failures
/// (an unfactorable c or rhs) degrade to the unreduced form instead of
/// erroring, since every later consumer can still work from residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullReduction {
    pub original_rhs: BigUint,
    /// What remains of the right-hand side after all strips.
    pub effective_rhs: BigUint,
    /// effective_rhs * scale^n = original_rhs.
    pub scale: BigUint,
    pub steps: Vec<RhsStep>,
}

pub fn reduce_fully(eq: &Equation, cfg: &FactorConfig) -> FullReduction {
    let original_rhs = eq.rhs();
    let mut merged: Vec<RhsStep> = Vec::new();
    let mut scale = BigUint::one();

    let after_c = match reduce_equation_with(eq, cfg) {
        Ok(trace) => {
            for s in &trace.stripped {
                scale *= BigUint::from(s.divisor.p).pow(s.exponent);
                merged.push(RhsStep {
                    divisor: s.divisor,
                    steps: s.exponent,
                });
            }
            trace.reduced
        }
        Err(_) => eq.clone(),
    };

    let mut effective_rhs = after_c.rhs();
    if !effective_rhs.is_zero() {
        if let Ok(r) = reduce_rhs_with(eq.n, eq.m, &effective_rhs, cfg) {
            for step in r.steps {
                scale *= BigUint::from(step.divisor.p).pow(step.steps);
                match merged.iter_mut().find(|s| s.divisor.p == step.divisor.p) {
                    Some(existing) => existing.steps += step.steps,
                    None => merged.push(step),
                }
            }
            effective_rhs = r.reduced;
        }
    }
    merged.sort_by_key(|s| s.divisor.p);

    debug_assert_eq!(&effective_rhs * scale.pow(eq.n), original_rhs);
    FullReduction {
        original_rhs,
        effective_rhs,
        scale,
        steps: merged,
    }
}
