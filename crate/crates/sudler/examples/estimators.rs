//! The discrepancy-driven estimate c_n·exp(-2·c_n·S_n) next to the actual
//! P_{q_n}, the digit functional Y_n, and the truncated asymptotic forms of
//! log B_n and C_n.
//!
//! Run with: cargo run --example estimators

use sudler::alpha::AlphaSpec;
use sudler::product::{
    b_star, c_asymptotic, decompose, estimate_with_log_p, log_b_asymptotic,
    DEFAULT_PRECISION_BITS as BITS,
};

fn main() {
    let spec = AlphaSpec::golden();
    println!("golden ratio: estimate vs actual");
    println!(
        "{:>3} {:>9} {:>10} {:>10} {:>8} {:>10}",
        "n", "q_n", "core", "P_{q_n}", "ratio", "Y_n"
    );
    for n in (8..=28).step_by(4) {
        let point = decompose(&spec, n, BITS).unwrap();
        let est = estimate_with_log_p(&spec, n, BITS, point.log_p).unwrap();
        println!(
            "{n:3} {:9} {:10.6} {:10.6} {:8.4} {:+10.6}",
            est.q_n,
            est.core,
            point.p(),
            est.ratio,
            est.y_n
        );
    }
    println!("(the ratio staying in a tight band is the boundedness claim)");

    // Truncated asymptotic forms approach the exact factors as n grows.
    println!("\nasymptotic forms at n = 14 and n = 26:");
    for n in [14usize, 26] {
        let point = decompose(&spec, n, BITS).unwrap();
        let ba = log_b_asymptotic(&spec, n, None, BITS).unwrap();
        let ca = c_asymptotic(&spec, n, None, BITS).unwrap();
        println!(
            "  n={n}: log B exact {:+.6} truncated {:+.6} | C exact {:.6} truncated {:.6}",
            point.log_b_factor, ba, point.c_factor, ca
        );
    }

    // The simplified product ∏(1 - h_{nt}) tracks B_n to within O(|Λ_n|).
    for n in [10usize, 20, 30] {
        let point = decompose(&spec, n, BITS).unwrap();
        let star = b_star(&spec, n, BITS).unwrap();
        println!(
            "  n={n}: log B = {:+.8}, log B* = {:+.8}, gap = {:.2e}",
            point.log_b_factor,
            star.log_b_star,
            (point.log_b_factor - star.log_b_star).abs()
        );
    }

    // For Euler's number the growing coefficients push the unbounded-case
    // form (1/a_n)·exp(Y_n/a_n) instead.
    let e = AlphaSpec::Euler;
    println!("\n{{e}} at n = 3i (growing subsequence):");
    for n in [9usize, 12, 15, 18] {
        let point = decompose(&e, n, BITS).unwrap();
        let est = estimate_with_log_p(&e, n, BITS, point.log_p).unwrap();
        println!(
            "  n={n:2}: P = {:8.4}  Y_n = {:+8.4}  (1/a_n)·exp(Y_n/a_n) = {:8.4}",
            point.p(),
            est.y_n,
            est.unbounded_estimate
        );
    }
}
