//! The limit form of the C factor: when the tails and heads converge to
//! α_∞⁺ and α_∞⁻, C_n tends to ∏ (1 - 1/u_∞(t)²) with
//! u_∞(t) = 2(t(α_∞⁺ + α_∞⁻) - {t·α_∞⁻} + 1/2).
//!
//! Run with: cargo run --example limit_product

use sudler::alpha::AlphaSpec;
use sudler::analysis::limit_c_product;
use sudler::product::{decompose, DEFAULT_PRECISION_BITS as BITS};

fn main() {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    println!("golden ratio: α_∞⁺ = 1 + φ, α_∞⁻ = φ");
    for cutoff in [10u64, 100, 10_000] {
        let lp = limit_c_product(1.0 + phi, phi, cutoff).unwrap();
        println!(
            "  cutoff {cutoff:6}: product = {:.10}, tail bound = {:.2e}",
            lp.value, lp.tail_bound
        );
    }

    let lp = limit_c_product(1.0 + phi, phi, 10_000).unwrap();
    for n in [10usize, 14, 18] {
        let point = decompose(&AlphaSpec::golden(), n, BITS).unwrap();
        println!(
            "  C_{n} = {:.8} vs limit {:.8} (gap {:.2e})",
            point.c_factor,
            lp.value,
            (point.c_factor - lp.value).abs()
        );
    }

    // The product is always above 3/5, whatever the limits are.
    let worst = limit_c_product(1.0 + 1e-9, 1.0 - 1e-9, 100_000).unwrap();
    println!(
        "\nnear-extreme limits (α_∞⁺→1, α_∞⁻→1): product = {:.6} (> 3/5)",
        worst.value
    );
}
