//! Certified fixed-point approximations of α drawn from the convergents.
//!
//! Run with: cargo run --example high_precision

use num_traits::ToPrimitive;
use sudler::alpha::AlphaSpec;
use sudler::cf::approx_alpha;

fn main() {
    for bits in [64u32, 128, 192] {
        let hp = approx_alpha(&AlphaSpec::golden(), bits).unwrap();
        println!(
            "golden, target 2^-{bits}: convergent index m = {}, F = {} fractional bits, \
             certified error ≤ {:.3e}",
            hp.source_convergent_index(),
            hp.frac_bits(),
            hp.error_bound().to_f64().unwrap(),
        );
    }

    let hp = approx_alpha(&AlphaSpec::Euler, 160).unwrap();
    println!(
        "\n{{e}} to 2^-160: value ≈ {:.18}, enclosure width {:.3e}",
        hp.to_f64(),
        hp.enclosure().width().to_f64().unwrap(),
    );
    println!("exact fractional part of e starts 0.718281828459045235...");
}
