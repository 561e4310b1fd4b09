//! The individual insolvability criteria, applied directly at their firing
//! parameters: interval gap, zero-one residues, plus-minus residues, and the
//! general residue sumset.
//!
//! ```bash
//! cargo run -p powsum --example residue_criteria
//! ```

use num_bigint::BigUint;
use powsum::criteria::{
    candidate_plus_minus_moduli, candidate_zero_one_moduli, check_gap, check_general_residue,
    check_plus_minus_residue, check_zero_one_residue,
};

fn main() {
    // sum of 127 fifteenth powers = 23607: trapped between 127*1 and 2^15
    let b = BigUint::from(23607u32);
    if let Some(cert) = check_gap(15, 127, &b) {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // sum of 7 sixth powers = 7028: each x^6 is 0 or 1 mod 9, but 7028 = 8 (mod 9)
    let b = BigUint::from(7028u32);
    if let Some(cert) = check_zero_one_residue(6, 7, &b, 9).expect("9 is a valid modulus") {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // sum of 14 twelfth powers = 32015: 2^2 | 12 puts x^12 in {0,1} mod 16
    let b = BigUint::from(32015u32);
    if let Some(cert) = check_zero_one_residue(12, 14, &b, 16).expect("16 is a valid modulus") {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // sum of 3 cubes = 9005: x^3 is 0, 1 or -1 mod 9 and 9005 = 5 (mod 9)
    let b = BigUint::from(9005u32);
    if let Some(cert) = check_plus_minus_residue(3, 3, &b, 3, 2).expect("exponent fits") {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // two sixth powers = 45399: 45399 = 3 (mod 4)
    let b = BigUint::from(45399u32);
    if let Some(cert) = check_zero_one_residue(6, 2, &b, 4).expect("4 is a valid modulus") {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // three squares = 15: the 3-fold sumset of {0,1,4} mod 8 misses 7
    let b = BigUint::from(15u32);
    if let Some(cert) = check_general_residue(2, 3, &b, 8) {
        println!("{}: {:?}", cert.theorem(), cert);
    }

    // where do the candidate moduli come from?
    println!();
    println!(
        "zero-one moduli for n=12, m=4:    {:?}",
        candidate_zero_one_moduli(12, 4)
            .iter()
            .map(|(c, _)| *c)
            .collect::<Vec<_>>()
    );
    println!(
        "plus-minus moduli for n=30, m=3:  {:?}",
        candidate_plus_minus_moduli(30, 3)
            .iter()
            .map(|(p, k)| p.pow(*k))
            .collect::<Vec<_>>()
    );
}
