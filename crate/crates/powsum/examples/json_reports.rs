//! Machine-readable reports: the line-delimited JSON the CLI emits, built
//! and parsed through the library. The serialized form round-trips.
//!
//! ```bash
//! cargo run -p powsum --example json_reports
//! ```

use num_bigint::BigUint;
use powsum::reduction::reduce_fully;
use powsum::report::{input_echo, verdict_report, Report};
use powsum::{analyze, AnalyzeConfig, Equation, Mode};

fn main() {
    let cfg = AnalyzeConfig::default();
    for (n, m, rhs) in [(6u32, 3u32, 233280u64), (2, 3, 7), (2, 2, 25)] {
        let rhs = BigUint::from(rhs);
        let eq = Equation::new(n, m, rhs.clone(), BigUint::from(1u32), Mode::NonNegative).unwrap();
        let verdict = analyze(&eq);
        let reduction = reduce_fully(&eq, &cfg.factor);
        let report = verdict_report(
            input_echo(n, m, None, None, Some(&rhs), Mode::NonNegative),
            &verdict,
            Some(&reduction),
            0,
        );

        let line = report.to_json();
        println!("{line}");

        let parsed = Report::from_json(&line).expect("well-formed JSON");
        assert_eq!(parsed, report);
    }
}
