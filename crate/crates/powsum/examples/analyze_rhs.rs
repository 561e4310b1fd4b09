//! Analyze raw right-hand sides end to end: reduction, certificate, verdict.
//!
//! ```bash
//! cargo run -p powsum --example analyze_rhs
//! ```

use num_bigint::BigUint;
use powsum::reduction::reduce_fully;
use powsum::report::{input_echo, verdict_report};
use powsum::{analyze, AnalyzeConfig, Equation, Mode};

fn main() {
    // (n, m, rhs): the first is insoluble because 233280 = 5 * 6^6 reduces
    // to 5, which no three sixth powers can reach; the last is a solvable
    // control.
    let cases: [(u32, u32, u64); 4] = [
        (6, 3, 233280),
        (2, 3, 112), // 112 = 4^2 * 7
        (12, 14, 32015),
        (2, 2, 8450), // 8450 = 2 * 5^2 * 169: solvable, count via oracle
    ];

    for (n, m, rhs) in cases {
        let rhs = BigUint::from(rhs);
        let eq = Equation::new(n, m, rhs.clone(), BigUint::from(1u32), Mode::NonNegative)
            .expect("valid equation");
        let verdict = analyze(&eq);
        let reduction = reduce_fully(&eq, &AnalyzeConfig::default().factor);
        let report = verdict_report(
            input_echo(n, m, None, None, Some(&rhs), Mode::NonNegative),
            &verdict,
            Some(&reduction),
            0,
        );
        println!("{}", report.render_text());
    }
}
