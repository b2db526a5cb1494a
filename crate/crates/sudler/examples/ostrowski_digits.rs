//! Ostrowski digit expansions in the rational bases α_n⁻ = q_{n-1}/q_n.
//!
//! Run with: cargo run --example ostrowski_digits

use sudler::alpha::AlphaSpec;
use sudler::ostrowski::{decode, encode, OstrowskiBase};

fn main() {
    // Base of the golden ratio at n = 5: coefficients (1,1,1,1), value 3/5,
    // denominators q_1..q_4 = 1,1,2,3, validity range t < 5.
    let base = OstrowskiBase::head_base(&AlphaSpec::golden(), 5).unwrap();
    println!(
        "golden head base at n=5: coeffs {:?}, value {}, limit {}",
        base.coeffs(),
        base.value(),
        base.limit()
    );
    for t in 0..5u64 {
        let digits = encode(&base, t).unwrap();
        println!("  t={t} -> digits ({})", digits.render());
    }

    // A wider base from Euler's number; every t below the limit round-trips.
    let e_base = OstrowskiBase::head_base(&AlphaSpec::Euler, 9).unwrap();
    println!(
        "\n{{e}} head base at n=9: coeffs {:?}, limit {}",
        e_base.coeffs(),
        e_base.limit()
    );
    let limit = 465u64;
    for t in [1u64, 37, 234, 464] {
        let digits = encode(&e_base, t).unwrap();
        assert_eq!(decode(&e_base, &digits.v).unwrap(), t);
        println!("  t={t:3} -> ({})", digits.render());
    }
    println!("  all {limit} values round-trip");

    // Digits of the denominators themselves are unit vectors.
    let digits = encode(&e_base, 71).unwrap();
    println!("  t=q_8=71 -> ({})", digits.render());
}
