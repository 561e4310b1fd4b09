//! Count-preserving reduction of right-hand sides: every phi-divisor p of n
//! whose degree k satisfies m <= p^k - 1 can be divided out n-th power by
//! n-th power.
//!
//! ```bash
//! cargo run -p powsum --example reduce_rhs
//! ```

use num_bigint::BigUint;
use powsum::oracle::count_solutions;
use powsum::reduction::{reduce_rhs, Mode};

fn main() {
    let cases: [(u32, u32, u64); 3] = [
        (6, 3, 233280), // 5 * (2*3)^6
        (4, 7, 73728),  // 18 * (2^3)^4
        (2, 3, 240),    // 15 * 4^2
    ];

    for (n, m, rhs) in cases {
        let rhs = BigUint::from(rhs);
        let r = reduce_rhs(n, m, &rhs).expect("factorable input");
        println!("n = {n}, m = {m}: {} -> {}", r.original, r.reduced);
        for step in &r.steps {
            println!(
                "  divided by ({}^{})^{}   [phi-divisor of degree {}]",
                step.divisor.p, n, step.steps, step.divisor.degree
            );
        }

        // the whole point: the ordered solution count is unchanged
        let before = count_solutions(n, m, &r.original, Mode::NonNegative)
            .expect("within budget")
            .count;
        let after = count_solutions(n, m, &r.reduced, Mode::NonNegative)
            .expect("within budget")
            .count;
        assert_eq!(before, after);
        println!("  count at both sides: {before}");
        println!();
    }
}
