//! Phi-divisor tables: for an even exponent n, the primes p with
//! phi(p^k) | n for some k with p^k >= 3, at their maximal degree.
//!
//! ```bash
//! cargo run -p powsum --example phi_divisors
//! ```

use powsum::all_phi_divisors;

fn main() {
    for n in [2u32, 4, 6, 10, 12, 30, 120] {
        let divisors = all_phi_divisors(n);
        let rendered: Vec<String> = divisors
            .iter()
            .map(|d| format!("{}^{}", d.p, d.degree))
            .collect();
        println!("n = {n:>3}: {}", rendered.join(", "));
    }

    // odd exponents admit none: phi(p^k) is even once p^k >= 3
    assert!(all_phi_divisors(9).is_empty());
    println!("n =   9: (none)");
}
