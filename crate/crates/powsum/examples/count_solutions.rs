//! The exact counting oracle: single queries, batch tables, solution
//! listings, and the descent identity it verifies empirically.
//!
//! ```bash
//! cargo run -p powsum --example count_solutions
//! ```

use num_bigint::BigUint;
use powsum::oracle::{count_solutions, count_table, list_solutions, verify_descent_step};
use powsum::reduction::Mode;

fn main() {
    // 73728 = 18 * (2^3)^4: all solutions are the 7!/(1!2!4!) = 105 orderings
    // of (16, 8, 8, 0, 0, 0, 0)
    let r = count_solutions(4, 7, &BigUint::from(73728u32), Mode::NonNegative).unwrap();
    println!(
        "x1^4 + ... + x7^4 = 73728: {} ordered solutions ({:?})",
        r.count, r.method
    );

    let r = count_solutions(2, 2, &BigUint::from(25u32), Mode::NonNegative).unwrap();
    println!("x1^2 + x2^2 = 25: {} ordered solutions:", r.count);
    for tuple in list_solutions(2, 2, &BigUint::from(25u32), Mode::NonNegative, 100).unwrap() {
        println!("  {tuple:?}");
    }

    // batch table: counts for every m and d at once
    let table = count_table(2, 3, 20, Mode::NonNegative).unwrap();
    println!("\nP(x1^2 + x2^2 + x3^2 = d) for d = 0..20:");
    let row: Vec<String> = (0..=20).map(|d| table.count(3, d).to_string()).collect();
    println!("  [{}]", row.join(", "));

    // the count identity behind the reduction, checked by two oracle runs:
    // counts at b*(p^n)^s and b*(p^n)^(s-1) must agree when p is a
    // phi-divisor of n at degree k with m <= p^k - 1
    for (n, m, b, p, s) in [
        (2u32, 2u32, 5u64, 3u64, 1u32),
        (4, 3, 1, 2, 1),
        (2, 3, 7, 2, 2),
    ] {
        let equal = verify_descent_step(n, m, &BigUint::from(b), p, s).unwrap();
        println!("descent n={n} m={m} b={b} p={p} s={s}: counts equal = {equal}");
        assert!(equal);
    }
}
