//! Direct evaluation of log P_N(α) by exact fixed-point phase stepping, and
//! the rational identity ∏_{r<q} |2 sin(π r p/q)| = q.
//!
//! Run with: cargo run --example direct_product

use std::time::Instant;

use sudler::alpha::AlphaSpec;
use sudler::cf::approx_alpha;
use sudler::product::{sin_product_identity, sudler_direct};

fn main() {
    let alpha = approx_alpha(&AlphaSpec::golden(), 160).unwrap();
    println!("P_N(φ) for the golden ratio:");
    for n_terms in [1u64, 2, 10, 1_000, 100_000, 10_000_000] {
        let t0 = Instant::now();
        let log_p = sudler_direct(&alpha, n_terms).unwrap();
        println!(
            "  N = {n_terms:9}: log P = {log_p:+.12}  P = {:<22} ({:?})",
            log_p.exp(),
            t0.elapsed()
        );
    }

    println!("\nrational identity ∏_{{r<q}} |2 sin(π r p/q)| = q:");
    for (p, q) in [(1u64, 5u64), (2, 5), (1, 2), (355, 1009), (7, 9973)] {
        let value = sin_product_identity(p, q).unwrap();
        println!("  p={p:4} q={q:5}: product = {value:.8}");
    }
}
