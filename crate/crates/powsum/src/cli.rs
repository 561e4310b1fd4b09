//! Command-line front end. One thin binary dispatches here; all engine work
//! lives in the library modules.
//!
//! Exit codes: 0 solvable, 1 insoluble, 2 unknown, 3 budget refusal,
//! 64 usage error. The code is a function of the verdict alone, never of
//! formatting flags.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::criteria::{analyze_with, AnalyzeConfig, ModulusCap, Verdict};
use crate::error::Error;
use crate::numtheory::FactorConfig;
use crate::oracle::{count_solutions_with, list_solutions, OracleConfig};
use crate::phidiv::all_phi_divisors;
use crate::reduction::{reduce_fully, reduce_rhs_with, Equation, Mode};
use crate::report::{input_echo, verdict_report, Report, StripEntry, TraceReport};

pub const EXIT_SOLVABLE: i32 = 0;
pub const EXIT_INSOLUBLE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "powsum",
    version,
    about = "Decide solvability of x1^n + ... + xm^n = b*c^n with certificate-backed verdicts"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an equation: verdict plus a named certificate
    Analyze(AnalyzeArgs),
    /// Count ordered solutions of x1^n + ... + xm^n = rhs exactly
    Count(CountArgs),
    /// Strip count-preserving prime-power factors from a right-hand side
    Reduce(ReduceArgs),
    /// List the phi-divisors of an exponent with their degrees
    Phidiv(PhidivArgs),
    /// Replay the bundled worked-example suite against expected outcomes
    VerifyPaper(VerifyPaperArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Exponent n >= 2
    #[arg(long = "n")]
    n: u32,
    /// Number of terms m >= 2
    #[arg(long = "m")]
    m: u32,
    /// Coefficient b (decimal or power form like 2^5*3^2); requires --c
    #[arg(long = "b")]
    b: Option<String>,
    /// Scale c (decimal or power form); requires --b
    #[arg(long = "c")]
    c: Option<String>,
    /// Raw right-hand side; mutually exclusive with --b/--c
    #[arg(long = "rhs")]
    rhs: Option<String>,
    /// Require natural (all-positive) solutions
    #[arg(long)]
    natural: bool,
    /// Emit one line of JSON instead of text
    #[arg(long)]
    json: bool,
    /// Override the oracle node budget
    #[arg(long = "oracle-budget")]
    oracle_budget: Option<u64>,
    /// Override the largest modulus probed by the residue sumset criterion
    #[arg(long = "modulus-cap")]
    modulus_cap: Option<u64>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long = "n")]
    n: u32,
    #[arg(long = "m")]
    m: u32,
    /// Right-hand side (decimal or power form)
    #[arg(long = "rhs")]
    rhs: String,
    /// Count natural (all-positive) solutions
    #[arg(long)]
    natural: bool,
    /// List the tuples when the count is at most 1000
    #[arg(long)]
    list: bool,
    #[arg(long)]
    json: bool,
    #[arg(long = "oracle-budget")]
    oracle_budget: Option<u64>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long = "n")]
    n: u32,
    #[arg(long = "m")]
    m: u32,
    #[arg(long = "rhs")]
    rhs: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PhidivArgs {
    #[arg(long = "n")]
    n: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyPaperArgs {
    /// Run only cases whose id or group contains this substring
    #[arg(long)]
    filter: Option<String>,
    /// JSON file of {"case-id": "expected-outcome"} overriding the bundled
    /// expectations
    #[arg(long)]
    expect: Option<PathBuf>,
}

/// Integers in decimal or factored power form: `233280`, `2^5*3^2`, `4^3*31`.
pub fn parse_integer_expr(s: &str) -> Result<BigUint, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty integer expression".into());
    }
    let mut acc = BigUint::one();
    for part in s.split('*') {
        let part = part.trim();
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => {
                let exp: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad exponent in '{part}'"))?;
                (b.trim(), exp)
            }
            None => (part, 1),
        };
        let base = BigUint::parse_bytes(base.as_bytes(), 10)
            .ok_or_else(|| format!("bad integer '{base}'"))?;
        acc *= base.pow(exp);
    }
    Ok(acc)
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Count(args) => cmd_count(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Phidiv(args) => cmd_phidiv(args),
        Command::VerifyPaper(args) => cmd_verify_paper(args),
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn analyze_config(oracle_budget: Option<u64>, modulus_cap: Option<u64>) -> AnalyzeConfig {
    let mut cfg = AnalyzeConfig::default();
    if let Some(nodes) = oracle_budget {
        cfg.oracle.node_limit = nodes;
    }
    if let Some(cap) = modulus_cap {
        cfg.modulus_cap = ModulusCap(cap);
    }
    cfg
}

fn cmd_analyze(args: AnalyzeArgs) -> i32 {
    if args.n < 2 {
        return usage_error("--n must be at least 2");
    }
    if args.m < 2 {
        return usage_error("--m must be at least 2");
    }
    let mode = if args.natural {
        Mode::Natural
    } else {
        Mode::NonNegative
    };
    let (b, c, rhs_echo) = match (&args.b, &args.c, &args.rhs) {
        (Some(b), Some(c), None) => {
            let b = match parse_integer_expr(b) {
                Ok(v) => v,
                Err(e) => return usage_error(&e),
            };
            let c = match parse_integer_expr(c) {
                Ok(v) => v,
                Err(e) => return usage_error(&e),
            };
            (b, c, None)
        }
        (None, None, Some(rhs)) => match parse_integer_expr(rhs) {
            Ok(v) => (v.clone(), BigUint::one(), Some(v)),
            Err(e) => return usage_error(&e),
        },
        _ => {
            return usage_error("provide either --b with --c, or --rhs");
        }
    };
    let eq = match Equation::new(args.n, args.m, b, c, mode) {
        Ok(eq) => eq,
        Err(err) => return usage_error(&err.to_string()),
    };
    let cfg = analyze_config(args.oracle_budget, args.modulus_cap);

    let start = Instant::now();
    let verdict = analyze_with(&eq, &cfg);
    let elapsed = start.elapsed().as_millis() as u64;

    let reduction = reduce_fully(&eq, &cfg.factor);
    let echo = match rhs_echo {
        Some(rhs) => input_echo(args.n, args.m, None, None, Some(&rhs), mode),
        None => input_echo(args.n, args.m, Some(&eq.b), Some(&eq.c), None, mode),
    };
    let report = verdict_report(echo, &verdict, Some(&reduction), elapsed);
    emit(&report, args.json);
    match verdict {
        Verdict::Solvable { .. } => EXIT_SOLVABLE,
        Verdict::Insoluble { .. } => EXIT_INSOLUBLE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_count(args: CountArgs) -> i32 {
    if args.n < 2 {
        return usage_error("--n must be at least 2");
    }
    if args.m < 2 {
        return usage_error("--m must be at least 2");
    }
    let rhs = match parse_integer_expr(&args.rhs) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let mode = if args.natural {
        Mode::Natural
    } else {
        Mode::NonNegative
    };
    let mut oracle_cfg = OracleConfig::default();
    if let Some(nodes) = args.oracle_budget {
        oracle_cfg.node_limit = nodes;
    }

    let start = Instant::now();
    let result = count_solutions_with(args.n, args.m, &rhs, mode, &oracle_cfg);
    let elapsed = start.elapsed().as_millis() as u64;

    let result = match result {
        Ok(r) => r,
        Err(err @ Error::OracleBudget { .. }) => {
            eprintln!("error: {err}");
            return EXIT_BUDGET;
        }
        Err(err) => return usage_error(&err.to_string()),
    };

    let solutions = if args.list && result.count <= BigUint::from(1000u32) {
        list_solutions(args.n, args.m, &rhs, mode, 1000).ok()
    } else {
        if args.list {
            eprintln!("note: count exceeds 1000, skipping --list");
        }
        None
    };

    let report = Report {
        input: input_echo(args.n, args.m, None, None, Some(&rhs), mode),
        verdict: if result.count.is_zero() {
            "insoluble".into()
        } else {
            "solvable".into()
        },
        certificate: None,
        trace: None,
        count: Some(result.count.to_string()),
        solutions,
        elapsed_ms: elapsed,
    };
    emit(&report, args.json);
    EXIT_SOLVABLE
}

fn cmd_reduce(args: ReduceArgs) -> i32 {
    if args.n < 2 {
        return usage_error("--n must be at least 2");
    }
    if args.m < 2 {
        return usage_error("--m must be at least 2");
    }
    let rhs = match parse_integer_expr(&args.rhs) {
        Ok(v) => v,
        Err(e) => return usage_error(&e),
    };
    let start = Instant::now();
    let reduction = match reduce_rhs_with(args.n, args.m, &rhs, &FactorConfig::default()) {
        Ok(r) => r,
        Err(err @ Error::FactorBudget { .. }) => {
            eprintln!("error: {err}");
            return EXIT_BUDGET;
        }
        Err(err) => return usage_error(&err.to_string()),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let report = Report {
        input: input_echo(args.n, args.m, None, None, Some(&rhs), Mode::NonNegative),
        verdict: "reduced".into(),
        certificate: None,
        trace: Some(TraceReport {
            original: reduction.original.to_string(),
            reduced: reduction.reduced.to_string(),
            stripped: reduction
                .steps
                .iter()
                .map(|s| StripEntry {
                    p: s.divisor.p,
                    degree: s.divisor.degree,
                    steps: s.steps,
                })
                .collect(),
        }),
        count: None,
        solutions: None,
        elapsed_ms: elapsed,
    };
    emit(&report, args.json);
    EXIT_SOLVABLE
}

fn cmd_phidiv(args: PhidivArgs) -> i32 {
    if args.n < 2 {
        return usage_error("--n must be at least 2");
    }
    let divisors = all_phi_divisors(args.n);
    if args.json {
        let rows: Vec<serde_json::Value> = divisors
            .iter()
            .map(|d| {
                serde_json::json!({
                    "p": d.p,
                    "degree": d.degree,
                    "prime_power": d.prime_power,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({ "n": args.n, "phi_divisors": rows })
        );
    } else if divisors.is_empty() {
        println!("n = {}: no phi-divisors (n is odd)", args.n);
    } else {
        println!("phi-divisors of {}:", args.n);
        for d in &divisors {
            println!(
                "  p = {:<3} degree = {}  (p^k = {})",
                d.p, d.degree, d.prime_power
            );
        }
    }
    EXIT_SOLVABLE
}

// ---------------------------------------------------------------------------
// Bundled worked-example suite
// ---------------------------------------------------------------------------

enum CaseKind {
    /// analyze --n --m --rhs
    AnalyzeRhs {
        n: u32,
        m: u32,
        rhs: &'static str,
    },
    /// analyze --n --m --b --c [--natural]
    AnalyzeEq {
        n: u32,
        m: u32,
        b: &'static str,
        c: &'static str,
        natural: bool,
    },
    Count {
        n: u32,
        m: u32,
        rhs: &'static str,
    },
    Reduce {
        n: u32,
        m: u32,
        rhs: &'static str,
    },
    Phidiv {
        n: u32,
    },
}

struct SuiteCase {
    id: &'static str,
    group: &'static str,
    kind: CaseKind,
    expected: &'static str,
}

fn suite_cases() -> Vec<SuiteCase> {
    use CaseKind::*;
    vec![
        SuiteCase {
            id: "sixth-powers-233280-analyze",
            group: "thm2",
            kind: AnalyzeRhs {
                n: 6,
                m: 3,
                rhs: "233280",
            },
            expected: "insoluble:Theorem 3",
        },
        SuiteCase {
            id: "sixth-powers-233280-count",
            group: "thm2",
            kind: Count {
                n: 6,
                m: 3,
                rhs: "233280",
            },
            expected: "count:0",
        },
        SuiteCase {
            id: "sixth-powers-233280-reduce",
            group: "thm2",
            kind: Reduce {
                n: 6,
                m: 3,
                rhs: "233280",
            },
            expected: "reduce:5",
        },
        SuiteCase {
            id: "fourth-powers-73728-count",
            group: "thm2",
            kind: Count {
                n: 4,
                m: 7,
                rhs: "73728",
            },
            expected: "count:105",
        },
        SuiteCase {
            id: "fourth-powers-73728-reduce",
            group: "thm2",
            kind: Reduce {
                n: 4,
                m: 7,
                rhs: "73728",
            },
            expected: "reduce:18",
        },
        SuiteCase {
            id: "three-squares-7",
            group: "three-squares",
            kind: AnalyzeRhs {
                n: 2,
                m: 3,
                rhs: "7",
            },
            expected: "insoluble:residue sumset",
        },
        SuiteCase {
            id: "three-squares-4^2*23",
            group: "three-squares",
            kind: AnalyzeRhs {
                n: 2,
                m: 3,
                rhs: "4^2*23",
            },
            expected: "insoluble:residue sumset",
        },
        SuiteCase {
            id: "twelfth-powers-32015",
            group: "thm6",
            kind: AnalyzeRhs {
                n: 12,
                m: 14,
                rhs: "32015",
            },
            expected: "insoluble:Theorem 6",
        },
        SuiteCase {
            id: "sixth-powers-7028",
            group: "thm4",
            kind: AnalyzeRhs {
                n: 6,
                m: 7,
                rhs: "7028",
            },
            expected: "insoluble:Theorem 4",
        },
        SuiteCase {
            id: "cubes-9005",
            group: "thm7",
            kind: AnalyzeRhs {
                n: 3,
                m: 3,
                rhs: "9005",
            },
            expected: "insoluble:Theorem 7",
        },
        SuiteCase {
            id: "cubes-9005-count",
            group: "thm7",
            kind: Count {
                n: 3,
                m: 3,
                rhs: "9005",
            },
            expected: "count:0",
        },
        SuiteCase {
            id: "sixth-powers-45399",
            group: "thm5",
            kind: AnalyzeRhs {
                n: 6,
                m: 2,
                rhs: "45399",
            },
            expected: "insoluble:Theorem 5",
        },
        SuiteCase {
            id: "fifteenth-powers-23607",
            group: "thm3",
            kind: AnalyzeRhs {
                n: 15,
                m: 127,
                rhs: "23607",
            },
            expected: "insoluble:Theorem 3",
        },
        SuiteCase {
            id: "standard-n2-residue",
            group: "thm9",
            kind: AnalyzeEq {
                n: 2,
                m: 2,
                b: "7",
                c: "6",
                natural: false,
            },
            expected: "insoluble:Theorem 5",
        },
        SuiteCase {
            id: "standard-n2-gap",
            group: "thm9",
            kind: AnalyzeEq {
                n: 2,
                m: 2,
                b: "3",
                c: "6",
                natural: false,
            },
            expected: "insoluble:Theorem 3",
        },
        SuiteCase {
            id: "standard-n12-residue",
            group: "thm9",
            kind: AnalyzeEq {
                n: 12,
                m: 4,
                b: "4102",
                c: "3*5*7",
                natural: false,
            },
            expected: "insoluble:Theorem 4",
        },
        SuiteCase {
            id: "standard-n30-plus-minus",
            group: "thm9",
            kind: AnalyzeEq {
                n: 30,
                m: 3,
                b: "1289001483",
                c: "2*7*11",
                natural: false,
            },
            expected: "insoluble:Theorem 7",
        },
        SuiteCase {
            id: "natural-smooth-scale",
            group: "thm11",
            kind: AnalyzeEq {
                n: 4,
                m: 2,
                b: "1",
                c: "2^3*3^2",
                natural: true,
            },
            expected: "insoluble:Theorem 11",
        },
        SuiteCase {
            id: "thm12-cube",
            group: "thm12",
            kind: AnalyzeEq {
                n: 3,
                m: 2,
                b: "1",
                c: "5^3",
                natural: true,
            },
            expected: "insoluble:Theorem 12",
        },
        SuiteCase {
            id: "thm12-fifth",
            group: "thm12",
            kind: AnalyzeEq {
                n: 5,
                m: 2,
                b: "1",
                c: "2^5",
                natural: true,
            },
            expected: "insoluble:Theorem 12",
        },
        SuiteCase {
            id: "natural-mixed-scale",
            group: "thm13",
            kind: AnalyzeEq {
                n: 4,
                m: 2,
                b: "1",
                c: "2*3*7^3",
                natural: true,
            },
            expected: "insoluble:Theorem 13",
        },
        SuiteCase {
            id: "natural-n36-standard",
            group: "thm11",
            kind: AnalyzeEq {
                n: 36,
                m: 4,
                b: "2",
                c: "2*3*5*7*13*19*37",
                natural: true,
            },
            expected: "insoluble:Theorem 11",
        },
        SuiteCase {
            id: "natural-n30-mixed",
            group: "thm13",
            kind: AnalyzeEq {
                n: 30,
                m: 2,
                b: "1",
                c: "2^2*3*5^2*7*11",
                natural: true,
            },
            expected: "insoluble:Theorem 13",
        },
        SuiteCase {
            id: "standard-n12-gap",
            group: "thm9",
            kind: AnalyzeEq {
                n: 12,
                m: 4,
                b: "100",
                c: "3*5*7",
                natural: false,
            },
            expected: "insoluble:Theorem 3",
        },
        SuiteCase {
            id: "count-two-squares-25",
            group: "count",
            kind: Count {
                n: 2,
                m: 2,
                rhs: "25",
            },
            expected: "count:4",
        },
        SuiteCase {
            id: "phidiv-120",
            group: "phidiv",
            kind: Phidiv { n: 120 },
            expected: "phidiv:(2,4)(3,2)(5,2)(7,1)(11,1)(13,1)(31,1)(41,1)(61,1)",
        },
        SuiteCase {
            id: "phidiv-2",
            group: "phidiv",
            kind: Phidiv { n: 2 },
            expected: "phidiv:(2,2)(3,1)",
        },
    ]
}

fn run_case(kind: &CaseKind) -> String {
    let cfg = AnalyzeConfig::default();
    match kind {
        CaseKind::AnalyzeRhs { n, m, rhs } => {
            let rhs = parse_integer_expr(rhs).expect("suite rhs parses");
            let eq = Equation::new(*n, *m, rhs, BigUint::one(), Mode::NonNegative)
                .expect("suite equation is valid");
            verdict_outcome(&analyze_with(&eq, &cfg))
        }
        CaseKind::AnalyzeEq {
            n,
            m,
            b,
            c,
            natural,
        } => {
            let b = parse_integer_expr(b).expect("suite b parses");
            let c = parse_integer_expr(c).expect("suite c parses");
            let mode = if *natural {
                Mode::Natural
            } else {
                Mode::NonNegative
            };
            let eq = Equation::new(*n, *m, b, c, mode).expect("suite equation is valid");
            verdict_outcome(&analyze_with(&eq, &cfg))
        }
        CaseKind::Count { n, m, rhs } => {
            let rhs = parse_integer_expr(rhs).expect("suite rhs parses");
            match count_solutions_with(*n, *m, &rhs, Mode::NonNegative, &cfg.oracle) {
                Ok(result) => format!("count:{}", result.count),
                Err(err) => format!("error:{err}"),
            }
        }
        CaseKind::Reduce { n, m, rhs } => {
            let rhs = parse_integer_expr(rhs).expect("suite rhs parses");
            match reduce_rhs_with(*n, *m, &rhs, &cfg.factor) {
                Ok(r) => format!("reduce:{}", r.reduced),
                Err(err) => format!("error:{err}"),
            }
        }
        CaseKind::Phidiv { n } => {
            let pairs: Vec<String> = all_phi_divisors(*n)
                .iter()
                .map(|d| format!("({},{})", d.p, d.degree))
                .collect();
            format!("phidiv:{}", pairs.join(""))
        }
    }
}

fn verdict_outcome(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Solvable { .. } => "solvable".to_string(),
        Verdict::Insoluble { certificate } => {
            format!("insoluble:{}", certificate.theorem())
        }
        Verdict::Unknown => "unknown".to_string(),
    }
}

fn cmd_verify_paper(args: VerifyPaperArgs) -> i32 {
    let overrides: BTreeMap<String, String> = match &args.expect {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(err) => return usage_error(&format!("cannot read {}: {err}", path.display())),
            };
            match serde_json::from_str(&text) {
                Ok(map) => map,
                Err(err) => return usage_error(&format!("cannot parse {}: {err}", path.display())),
            }
        }
        None => BTreeMap::new(),
    };

    let cases = suite_cases();
    let mut known_ids: Vec<&str> = cases.iter().map(|c| c.id).collect();
    known_ids.sort_unstable();
    let mut failures = 0usize;
    for key in overrides.keys() {
        if known_ids.binary_search(&key.as_str()).is_err() {
            println!("FAIL {key}: no such case in the suite");
            failures += 1;
        }
    }

    let mut ran = 0usize;
    for case in &cases {
        if let Some(filter) = &args.filter {
            if !case.id.contains(filter.as_str()) && !case.group.contains(filter.as_str()) {
                continue;
            }
        }
        ran += 1;
        let expected = overrides
            .get(case.id)
            .map(String::as_str)
            .unwrap_or(case.expected);
        let got = run_case(&case.kind);
        if got == expected {
            println!(
                "pass {id} [{group}] {got}",
                id = case.id,
                group = case.group
            );
        } else {
            println!(
                "FAIL {id} [{group}] expected {expected}, got {got}",
                id = case.id,
                group = case.group
            );
            failures += 1;
        }
    }
    println!(
        "{ran} case(s) run, {failures} failure(s){}",
        if args.filter.is_some() {
            " (filtered)"
        } else {
            ""
        }
    );
    if failures == 0 {
        EXIT_SOLVABLE
    } else {
        EXIT_INSOLUBLE
    }
}
