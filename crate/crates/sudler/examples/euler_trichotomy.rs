//! The three Euler subsequences: P_{q_{3i}}(e) climbs, P_{q_{3i+1}}(e) and
//! P_{q_{3i+2}}(e) fall, while a single plot of P_{q_n}(e) looks deceptively
//! periodic.
//!
//! Run with: cargo run --example euler_trichotomy

use sudler::analysis::euler_trichotomy;
use sudler::product::DEFAULT_PRECISION_BITS as BITS;

fn main() {
    let reports = euler_trichotomy(7, BITS).unwrap();
    for (k, report) in reports.iter().enumerate() {
        println!("class n ≡ {k} (mod 3): verdict = {}", report.verdict);
        for i in 0..report.p.len() {
            println!(
                "  n={:2} q={:8} P={:.6}",
                report.indices[i], report.q[i], report.p[i]
            );
        }
    }

    // The climbing class grows like the cube root of i.
    let up = &reports[0];
    println!("\ngrowth of the climbing class against i^(1/3):");
    for (i, p) in up.p.iter().enumerate() {
        let x = ((i + 1) as f64).powf(1.0 / 3.0);
        println!("  i={} i^(1/3)={x:.4} P={p:.4} P/i^(1/3)={:.4}", i + 1, p / x);
    }
}
