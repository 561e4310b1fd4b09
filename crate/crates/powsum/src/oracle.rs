//! Exact ground truth: the number of ordered m-tuples with
//! x1^n + ... + xm^n = d, in non-negative or natural components.
//!
//! Two independent algorithms cross-check each other: pruned depth-first
//! enumeration over non-increasing tuples (ordered counts recovered through
//! multinomial coefficients), and a convolution table built row by row from
//! P_m(d) = sum over x^n <= d of P_(m-1)(d - x^n).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::numtheory::{checked_pow_u128, nth_root_u128};
use crate::phidiv::phi_divisor_degree;
use crate::reduction::Mode;

/// Work limits. A query is refused (never silently truncated) when the
/// enumeration-state estimate (root+1)^m exceeds `node_limit` and the
/// convolution table would need more than `table_entry_limit` entries
/// ((d+1) cells times (m+1) rows).
#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub node_limit: u64,
    pub table_entry_limit: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            node_limit: 100_000_000,
            table_entry_limit: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Enumeration,
    Convolution,
}

/// An exact ordered-tuple count for one right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub n: u32,
    pub m: u32,
    pub d: BigUint,
    pub mode: Mode,
    pub count: BigUint,
    pub method: CountMethod,
}

pub fn count_solutions(n: u32, m: u32, d: &BigUint, mode: Mode) -> Result<CountResult, Error> {
    count_solutions_with(n, m, d, mode, &OracleConfig::default())
}

pub fn count_solutions_with(
    n: u32,
    m: u32,
    d: &BigUint,
    mode: Mode,
    cfg: &OracleConfig,
) -> Result<CountResult, Error> {
    assert!(n >= 2, "exponent must be at least 2");
    let done = |count: BigUint, method: CountMethod| CountResult {
        n,
        m,
        d: d.clone(),
        mode,
        count,
        method,
    };
    if m == 0 {
        let count = if d.is_zero() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        return Ok(done(count, CountMethod::Enumeration));
    }
    if d.is_zero() {
        let count = match mode {
            Mode::NonNegative => BigUint::one(),
            Mode::Natural => BigUint::zero(),
        };
        return Ok(done(count, CountMethod::Enumeration));
    }

    let budget_error = |estimate: String, entries: String| Error::OracleBudget {
        rhs: d.clone(),
        m,
        estimate,
        node_limit: cfg.node_limit,
        entries,
        entry_limit: cfg.table_entry_limit,
    };

    let Some(d128) = d.to_u128() else {
        return Err(budget_error("overflow".into(), "overflow".into()));
    };
    let root = nth_root_u128(d128, n);
    let estimate = checked_pow_u128(root + 1, m);
    let entries = (d128 + 1).checked_mul(m as u128 + 1);

    if estimate.is_some_and(|e| e <= cfg.node_limit as u128) {
        let count = dfs_count(n, m, d128, mode, cfg.node_limit)?;
        return Ok(done(count, CountMethod::Enumeration));
    }
    if entries.is_some_and(|e| e <= cfg.table_entry_limit as u128) {
        let count = rolling_convolution(n, m, d128 as u64, mode);
        return Ok(done(count, CountMethod::Convolution));
    }
    Err(budget_error(
        estimate.map_or("overflow".into(), |e| e.to_string()),
        entries.map_or("overflow".into(), |e| e.to_string()),
    ))
}

/// Depth-first enumeration over non-increasing value tuples. Each chosen
/// value v is taken with some multiplicity e; the ordered count of a leaf is
/// the product of binomials C(slots_remaining, e) along the path.
struct Dfs {
    mode: Mode,
    pows: Vec<u128>,
    /// Pascal triangle up to m, reused at every leaf.
    choose: Vec<Vec<BigUint>>,
    nodes: u64,
    node_limit: u64,
    total: BigUint,
}

fn dfs_count(n: u32, m: u32, d: u128, mode: Mode, node_limit: u64) -> Result<BigUint, Error> {
    let root = nth_root_u128(d, n);
    let pows: Vec<u128> = (0..=root)
        .map(|v| checked_pow_u128(v, n).expect("v^n <= d"))
        .collect();
    let mm = m as usize;
    let mut choose = vec![vec![BigUint::zero(); mm + 1]; mm + 1];
    for i in 0..=mm {
        choose[i][0] = BigUint::one();
        for j in 1..=i {
            let mut v = choose[i - 1][j - 1].clone();
            if j < i {
                v += &choose[i - 1][j];
            }
            choose[i][j] = v;
        }
    }
    let mut dfs = Dfs {
        mode,
        pows,
        choose,
        nodes: 0,
        node_limit,
        total: BigUint::zero(),
    };
    let mult = BigUint::one();
    dfs.recurse(root, m, d, &mult)?;
    Ok(dfs.total)
}

impl Dfs {
    /// Values descend inside the loop; recursion happens only when a value
    /// is actually taken, so the depth is bounded by the slot count.
    fn recurse(&mut self, max_v: u128, slots: u32, rem: u128, mult: &BigUint) -> Result<(), Error> {
        if rem == 0 {
            // remaining slots are zeros, which Natural mode forbids
            match self.mode {
                Mode::NonNegative => self.total += mult,
                Mode::Natural => {
                    if slots == 0 {
                        self.total += mult;
                    }
                }
            }
            return Ok(());
        }
        if slots == 0 {
            return Ok(());
        }
        // jump straight to the largest value whose power fits
        let mut v = max_v.min(largest_value(&self.pows, rem));
        loop {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Error::OracleBudget {
                    rhs: BigUint::from(rem),
                    m: slots,
                    estimate: format!(">{}", self.node_limit),
                    node_limit: self.node_limit,
                    entries: "-".into(),
                    entry_limit: 0,
                });
            }
            if v == 0 {
                return Ok(());
            }
            let vpow = self.pows[v as usize];
            // slots copies of v^n cannot reach rem, nor can smaller values
            match vpow.checked_mul(slots as u128) {
                Some(max) if max >= rem => {}
                _ => return Ok(()),
            }
            if v == 1 {
                // rem ones fill the remaining slots exactly
                if rem <= slots as u128 {
                    let ones = rem as usize;
                    match self.mode {
                        Mode::NonNegative => {
                            self.total += mult * &self.choose[slots as usize][ones];
                        }
                        Mode::Natural => {
                            if rem == slots as u128 {
                                self.total += mult;
                            }
                        }
                    }
                }
                return Ok(());
            }
            let e_max = (slots as u128).min(rem / vpow) as u32;
            for e in 1..=e_max {
                let next = mult * &self.choose[slots as usize][e as usize];
                self.recurse(v - 1, slots - e, rem - vpow * e as u128, &next)?;
            }
            v -= 1;
        }
    }
}

/// Largest v with pows[v] <= rem, assuming pows is strictly increasing.
fn largest_value(pows: &[u128], rem: u128) -> u128 {
    (pows.partition_point(|&p| p <= rem) - 1) as u128
}

/// Final row of the convolution recurrence with only two rows resident.
fn rolling_convolution(n: u32, m: u32, d: u64, mode: Mode) -> BigUint {
    let size = d as usize + 1;
    let mut prev = vec![BigUint::zero(); size];
    prev[0] = BigUint::one();
    let x_start: u64 = match mode {
        Mode::NonNegative => 0,
        Mode::Natural => 1,
    };
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); size];
        let mut x = x_start;
        while let Some(xp) = checked_pow_u128(x as u128, n) {
            if xp > d as u128 {
                break;
            }
            let xp = xp as usize;
            for t in xp..size {
                if !prev[t - xp].is_zero() {
                    next[t] += &prev[t - xp];
                }
            }
            x += 1;
        }
        prev = next;
    }
    prev[d as usize].clone()
}

/// All counts for m in [0, m_max] and d in [0, d_max] at once.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub n: u32,
    pub mode: Mode,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn count(&self, m: u32, d: u64) -> &BigUint {
        &self.rows[m as usize][d as usize]
    }

    pub fn m_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn d_max(&self) -> u64 {
        self.rows[0].len() as u64 - 1
    }
}

pub fn count_table(n: u32, m_max: u32, d_max: u64, mode: Mode) -> Result<CountTable, Error> {
    count_table_with(n, m_max, d_max, mode, &OracleConfig::default())
}

pub fn count_table_with(
    n: u32,
    m_max: u32,
    d_max: u64,
    mode: Mode,
    cfg: &OracleConfig,
) -> Result<CountTable, Error> {
    assert!(n >= 2, "exponent must be at least 2");
    let entries = (d_max as u128 + 1) * (m_max as u128 + 1);
    if entries > cfg.table_entry_limit as u128 {
        return Err(Error::OracleBudget {
            rhs: BigUint::from(d_max),
            m: m_max,
            estimate: "-".into(),
            node_limit: cfg.node_limit,
            entries: entries.to_string(),
            entry_limit: cfg.table_entry_limit,
        });
    }
    let size = d_max as usize + 1;
    let mut rows = Vec::with_capacity(m_max as usize + 1);
    let mut row0 = vec![BigUint::zero(); size];
    row0[0] = BigUint::one();
    rows.push(row0);
    let x_start: u64 = match mode {
        Mode::NonNegative => 0,
        Mode::Natural => 1,
    };
    for mi in 1..=m_max as usize {
        let mut next = vec![BigUint::zero(); size];
        {
            let prev = &rows[mi - 1];
            let mut x = x_start;
            while let Some(xp) = checked_pow_u128(x as u128, n) {
                if xp > d_max as u128 {
                    break;
                }
                let xp = xp as usize;
                for t in xp..size {
                    if !prev[t - xp].is_zero() {
                        next[t] += &prev[t - xp];
                    }
                }
                x += 1;
            }
        }
        rows.push(next);
    }
    Ok(CountTable { n, mode, rows })
}

/// Check the single-step count identity behind the reduction: with p a
/// phi-divisor of n at degree k and m <= p^k - 1, the number of solutions at
/// b*(p^n)^s equals the number at b*(p^n)^(s-1).
pub fn verify_descent_step(n: u32, m: u32, b: &BigUint, p: u64, s: u32) -> Result<bool, Error> {
    verify_descent_step_with(n, m, b, p, s, &OracleConfig::default())
}

pub fn verify_descent_step_with(
    n: u32,
    m: u32,
    b: &BigUint,
    p: u64,
    s: u32,
    cfg: &OracleConfig,
) -> Result<bool, Error> {
    if s == 0 {
        return Err(Error::InvalidArgument("descent step requires s >= 1"));
    }
    let degree = phi_divisor_degree(p, n)?;
    let admits = degree.map(|k| (m as u64) < p.pow(k)).unwrap_or(false);
    if !admits {
        return Err(Error::DescentHypothesis { p, n, m });
    }
    let big_p = BigUint::from(p);
    let high = b * big_p.pow(n * s);
    let low = b * big_p.pow(n * (s - 1));
    let high_count = count_solutions_with(n, m, &high, Mode::NonNegative, cfg)?;
    let low_count = count_solutions_with(n, m, &low, Mode::NonNegative, cfg)?;
    Ok(high_count.count == low_count.count)
}

/// Ordered solution tuples, for small counts only. Values are emitted
/// slot by slot in lexicographically decreasing order.
pub fn list_solutions(
    n: u32,
    m: u32,
    d: &BigUint,
    mode: Mode,
    cap: usize,
) -> Result<Vec<Vec<u64>>, Error> {
    let Some(d128) = d.to_u128() else {
        return Err(Error::InvalidArgument("rhs too large to enumerate"));
    };
    let root = nth_root_u128(d128, n);
    if root > u64::MAX as u128 {
        return Err(Error::InvalidArgument("rhs too large to enumerate"));
    }
    let mut out = Vec::new();
    let mut tuple = Vec::with_capacity(m as usize);
    fn rec(
        n: u32,
        slots: u32,
        rem: u128,
        mode: Mode,
        cap: usize,
        tuple: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) -> Result<(), Error> {
        if slots == 0 {
            if rem == 0 {
                if out.len() >= cap {
                    return Err(Error::InvalidArgument("solution list exceeds cap"));
                }
                out.push(tuple.clone());
            }
            return Ok(());
        }
        let hi = nth_root_u128(rem, n) as u64;
        let lo = match mode {
            Mode::NonNegative => 0u64,
            Mode::Natural => 1,
        };
        if hi < lo {
            return Ok(());
        }
        let mut v = hi;
        loop {
            let vp = checked_pow_u128(v as u128, n).expect("v^n <= rem");
            tuple.push(v);
            rec(n, slots - 1, rem - vp, mode, cap, tuple, out)?;
            tuple.pop();
            if v == lo {
                break;
            }
            v -= 1;
        }
        Ok(())
    }
    rec(n, m, d128, mode, cap, &mut tuple, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::binomial;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn nn(n: u32, m: u32, d: u64) -> BigUint {
        count_solutions(n, m, &big(d), Mode::NonNegative)
            .unwrap()
            .count
    }

    fn nat(n: u32, m: u32, d: u64) -> BigUint {
        count_solutions(n, m, &big(d), Mode::Natural).unwrap().count
    }

    /// Independent oracle: count ordered tuples one by one.
    fn brute_count(n: u32, m: u32, d: u64, mode: Mode) -> u64 {
        fn rec(n: u32, slots: u32, rem: i128, lo: u64) -> u64 {
            if slots == 0 {
                return (rem == 0) as u64;
            }
            let mut total = 0;
            let mut x = lo;
            loop {
                let xp = (x as i128).pow(n);
                if xp > rem {
                    break;
                }
                total += rec(n, slots - 1, rem - xp, lo);
                x += 1;
            }
            total
        }
        let lo = match mode {
            Mode::NonNegative => 0,
            Mode::Natural => 1,
        };
        rec(n, m, d as i128, lo)
    }

    #[test]
    fn paper_count_values() {
        assert_eq!(nn(4, 7, 73728), big(105));
        assert_eq!(nn(6, 3, 233280), big(0));
        assert_eq!(nn(2, 2, 25), big(4));
    }

    #[test]
    fn zero_rhs_counts() {
        assert_eq!(nn(3, 5, 0), big(1));
        assert_eq!(nat(3, 5, 0), big(0));
    }

    #[test]
    fn single_term_counts_perfect_powers() {
        for d in 0u64..=100 {
            let is_square = (0u64..=10).any(|r| r * r == d);
            assert_eq!(nn(2, 1, d), big(is_square as u64), "d = {d}");
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 2u32..=4 {
            for m in 1u32..=4 {
                for d in 0u64..=200 {
                    let expected = brute_count(n, m, d, Mode::NonNegative);
                    assert_eq!(nn(n, m, d), big(expected), "n={n} m={m} d={d}");
                    let expected = brute_count(n, m, d, Mode::Natural);
                    assert_eq!(nat(n, m, d), big(expected), "n={n} m={m} d={d} natural");
                }
            }
        }
    }

    #[test]
    fn table_matches_enumeration() {
        for n in 2u32..=5 {
            for mode in [Mode::NonNegative, Mode::Natural] {
                let table = count_table(n, 4, 300, mode).unwrap();
                for m in 0u32..=4 {
                    for d in 0u64..=300 {
                        let direct = count_solutions(n, m, &big(d), mode).unwrap().count;
                        assert_eq!(table.count(m, d), &direct, "n={n} m={m} d={d} {mode:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn table_rows_from_examples() {
        let table = count_table(2, 3, 8, Mode::NonNegative).unwrap();
        assert_eq!(table.count(3, 7), &big(0)); // 7 = 4^0 * (8*0 + 7)
        let table = count_table(2, 2, 2, Mode::NonNegative).unwrap();
        assert_eq!(table.count(2, 2), &big(1)); // only (1,1)
    }

    #[test]
    fn nonnegative_expands_over_natural_by_binomials() {
        for n in 2u32..=3 {
            for m in 1u32..=4 {
                for d in 0u64..=150 {
                    let mut expected = BigUint::zero();
                    for j in 0..=m {
                        let natural = if j == 0 {
                            if d == 0 {
                                big(1)
                            } else {
                                big(0)
                            }
                        } else {
                            nat(n, j, d)
                        };
                        expected += binomial(m as u64, j as u64) * natural;
                    }
                    assert_eq!(nn(n, m, d), expected, "n={n} m={m} d={d}");
                }
            }
        }
    }

    #[test]
    fn count_grows_with_m() {
        for d in 0u64..=120 {
            for m in 1u32..=3 {
                assert!(nn(2, m + 1, d) >= nn(2, m, d), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn budget_refusal_is_an_error() {
        let cfg = OracleConfig {
            node_limit: 10,
            table_entry_limit: 10,
        };
        let err = count_solutions_with(2, 3, &big(1_000_000), Mode::NonNegative, &cfg);
        assert!(matches!(err, Err(Error::OracleBudget { .. })));
    }

    #[test]
    fn convolution_kicks_in_when_enumeration_estimate_blows_up() {
        // (root+1)^m far beyond the node limit, table still affordable
        let cfg = OracleConfig {
            node_limit: 1_000,
            table_entry_limit: 2_000_000,
        };
        let res = count_solutions_with(4, 7, &big(73728), Mode::NonNegative, &cfg).unwrap();
        assert_eq!(res.method, CountMethod::Convolution);
        assert_eq!(res.count, big(105));
    }

    #[test]
    fn descent_step_examples() {
        // counts at 45 and 5 agree (both 2)
        assert_eq!(nn(2, 2, 45), big(2));
        assert_eq!(nn(2, 2, 5), big(2));
        assert!(verify_descent_step(2, 2, &big(5), 3, 1).unwrap());
        // counts at 16 and 1 agree (both 3)
        assert_eq!(nn(4, 3, 16), big(3));
        assert_eq!(nn(4, 3, 1), big(3));
        assert!(verify_descent_step(4, 3, &big(1), 2, 1).unwrap());
        // zero rhs on both sides
        assert!(verify_descent_step(2, 2, &big(0), 3, 1).unwrap());
    }

    #[test]
    fn descent_step_rejects_bad_hypotheses() {
        // 5 is not a phi-divisor of 2
        assert!(matches!(
            verify_descent_step(2, 2, &big(1), 5, 1),
            Err(Error::DescentHypothesis { .. })
        ));
        // m = 4 exceeds 2^2 - 1 = 3 for n = 2
        assert!(matches!(
            verify_descent_step(2, 4, &big(1), 2, 1),
            Err(Error::DescentHypothesis { .. })
        ));
    }

    #[test]
    fn descent_at_the_m_boundary() {
        // m = p^k - 1 exactly: still count-preserving
        assert!(verify_descent_step(2, 3, &big(7), 2, 1).unwrap());
        assert!(verify_descent_step(2, 3, &big(7), 2, 2).unwrap());
        // exponent 4n with p = 5 at m = 4 = 5 - 1
        assert!(verify_descent_step(4, 4, &big(3), 5, 1).unwrap());
    }

    #[test]
    fn descent_sweep_over_eligible_divisors() {
        // every eligible (n, m, p) pair preserves counts across one descent
        use crate::reduction::eligible_divisors;
        let cfg = OracleConfig {
            node_limit: 1_000_000_000,
            ..OracleConfig::default()
        };
        for n in [2u32, 4, 6] {
            for m in 2u32..=4 {
                for d in eligible_divisors(n, m) {
                    for s in 1u32..=2 {
                        for b in 0u64..=12 {
                            let high = big(b) * BigUint::from(d.p).pow(n * s);
                            if high > big(5_000_000) {
                                continue;
                            }
                            assert!(
                                verify_descent_step_with(n, m, &big(b), d.p, s, &cfg)
                                    .unwrap(),
                                "descent failed: n={n} m={m} p={} s={s} b={b}",
                                d.p
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn list_solutions_small() {
        let sols = list_solutions(2, 2, &big(25), Mode::NonNegative, 100).unwrap();
        assert_eq!(sols.len(), 4);
        assert!(sols.contains(&vec![3, 4]));
        assert!(sols.contains(&vec![5, 0]));
        let sols = list_solutions(2, 2, &big(25), Mode::Natural, 100).unwrap();
        assert_eq!(sols.len(), 2);
    }
}
