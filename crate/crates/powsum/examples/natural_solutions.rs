//! Natural-mode analysis: equations x1^n + ... + xm^n = b*c^n that admit no
//! all-positive solution, certified without search.
//!
//! ```bash
//! cargo run -p powsum --example natural_solutions
//! ```

use num_bigint::BigUint;
use powsum::{analyze_natural, Equation, Mode, Verdict};

fn show(label: &str, eq: &Equation) {
    match analyze_natural(eq).expect("natural-mode input") {
        Verdict::Insoluble { certificate } => {
            println!("{label}: insoluble by {}", certificate.theorem());
        }
        Verdict::Solvable { count, .. } => {
            let detail = count
                .map(|c| format!(" ({c} solutions)"))
                .unwrap_or_default();
            println!("{label}: solvable{detail}");
        }
        Verdict::Unknown => println!("{label}: unknown"),
    }
}

fn main() {
    let nat = |n: u32, m: u32, b: u64, c: BigUint| {
        Equation::new(n, m, BigUint::from(b), c, Mode::Natural).unwrap()
    };

    // standard equation with b < m: no natural solution at all
    let c = BigUint::from(2u32).pow(7) * BigUint::from(3u32).pow(5);
    show("x1^4 + x2^4 = (2^7 * 3^5)^4", &nat(4, 2, 1, c));

    // two n-th powers never sum to a prime-power n-th power for n >= 3
    show(
        "x1^3 + x2^3 = (5^3)^3",
        &nat(3, 2, 1, BigUint::from(125u32)),
    );
    show("x1^5 + x2^5 = (2^4)^5", &nat(5, 2, 1, BigUint::from(16u32)));

    // mixed scale: strip the phi-divisors 2 and 3, leaving a prime power
    show(
        "x1^4 + x2^4 = (2*3*7^3)^4",
        &nat(4, 2, 1, BigUint::from(2u32 * 3 * 343)),
    );

    // controls: natural witnesses and oracle counts still appear
    show("x1^2 + x2^2 = 2 * 5^2", &nat(2, 2, 2, BigUint::from(5u32)));
    show("x1^2 + x2^2 = 50", &nat(2, 2, 50, BigUint::from(1u32)));
}
