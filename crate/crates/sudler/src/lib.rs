//! Products of the form P_N(α) = ∏_{r=1}^N |2 sin(π r α)| evaluated along the
//! best-approximation denominators q_n of an irrational α, together with the
//! machinery that explains their behaviour: the exact split
//! P_{q_n} = A_n·B_n·C_n, Ostrowski numeration in the rational bases
//! q_{n-1}/q_n, the discrepancy sums D_t driving the B factor, and
//! convergence experiments along index subsequences.
//!
//! α is always described by a rule for its continued fraction coefficients
//! (an [`AlphaSpec`]), never by a decimal literal; all derived quantities
//! carry certified error bounds. Denominators are indexed with q_0 = 0,
//! q_1 = 1, which is offset by one from the most common convention — with it
//! the golden ratio has q_n equal to the n-th Fibonacci number.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `sudler` binary exposes the same operations as subcommands.

pub mod alpha;
pub mod analysis;
pub mod cf;
pub mod error;
pub mod interval;
pub mod ostrowski;
pub mod phase;
pub mod product;
pub mod report;
pub mod selfcheck;

pub use alpha::AlphaSpec;
pub use analysis::{
    convergence_probe, euler_trichotomy, figure_data, limit_c_product, ConvergenceReport,
    FigureData, FigureId, SubsequenceSelector, Verdict, DESK_BOUND_Q,
};
pub use cf::{
    alpha_plus, approx_alpha, tail_head_pair, ConvergentTable, HighPrecisionAlpha, TailHeadPair,
};
pub use error::{Error, Result};
pub use ostrowski::{
    d_t_bruteforce, d_t_formula, d_t_log_bound_check, decode, encode, OstrowskiBase,
    OstrowskiDigits,
};
pub use product::{
    b_star, c_asymptotic, decompose, decompose_detailed, estimate, estimate_with_log_p,
    log_b_asymptotic, log_p_direct, sin_product_identity, sudler_direct, EstimateReport,
    SudlerParams, SudlerPoint, DEFAULT_PRECISION_BITS,
};
