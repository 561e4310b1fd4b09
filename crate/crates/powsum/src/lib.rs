//! Certificate-backed solvability analysis for power-sum Diophantine
//! equations x1^n + ... + xm^n = b*c^n over non-negative or natural integers.
//!
//! The engine rests on three legs:
//!
//! - **reduction**: when the scale c is built from *phi-divisors* of n
//!   (primes p with phi(p^k) | n, p^k >= 3) whose degrees admit m terms,
//!   the right-hand side can be divided by p^n repeatedly without changing
//!   the solution count. Equations whose c strips away entirely are
//!   *standard* and collapse to x1^n + ... + xm^n = b.
//! - **criteria**: interval-gap and residue arguments that certify
//!   insolvability of the reduced equation, each verdict carrying a named,
//!   machine-checkable [`Certificate`].
//! - **oracle**: exact ordered-solution counting (pruned enumeration
//!   cross-checked against a convolution table) that grounds every claim
//!   empirically and settles small instances the criteria miss.
//!
//! ```
//! use num_bigint::BigUint;
//! use powsum::{analyze, Equation, Mode, Verdict};
//!
//! // 233280 = 5 * (2*3)^6 reduces to 5, which falls in the gap (3, 2^6)
//! let eq = Equation::new(
//!     6,
//!     3,
//!     BigUint::from(233280u32),
//!     BigUint::from(1u32),
//!     Mode::NonNegative,
//! )
//! .unwrap();
//! assert!(matches!(analyze(&eq), Verdict::Insoluble { .. }));
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `powsum` binary exposes the
//! same engine as `analyze`, `count`, `reduce`, `phidiv`, and `verify-paper`
//! subcommands.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod phidiv;
pub mod reduction;
pub mod report;

pub use criteria::{
    analyze, analyze_natural, analyze_natural_with, analyze_with, AnalyzeConfig, Certificate,
    Verdict,
};
pub use error::Error;
pub use oracle::{count_solutions, count_table, verify_descent_step, CountResult, OracleConfig};
pub use phidiv::{all_phi_divisors, phi_divisor_degree, PhiDivisor};
pub use reduction::{
    is_standard, reduce_equation, reduce_fully, reduce_rhs, Equation, Mode, ReductionTrace,
};
