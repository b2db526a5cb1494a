//! Tail values [a_n; a_{n+1}, ...], head values q_{n-1}/q_n, the signed
//! errors Λ_n = q_n·α - p_n, and c_n = 1/(tail + head), all with certified
//! enclosures.
//!
//! Run with: cargo run --example tails_and_heads

use sudler::alpha::AlphaSpec;
use sudler::cf::{tail_head_pair, ConvergentTable};
use sudler::product::DEFAULT_PRECISION_BITS as BITS;

fn main() {
    let spec = AlphaSpec::golden();
    let table = ConvergentTable::for_spec(&spec, 26).unwrap();
    println!("golden ratio:");
    for n in [2usize, 5, 10, 20, 25] {
        let pair = tail_head_pair(&spec, &table, n, BITS).unwrap();
        println!(
            "  n={n:2} head={:>12} tail≈{:.12} Λ_n≈{:+.3e} c_n≈{:.12}",
            pair.alpha_minus.to_string(),
            pair.alpha_plus.to_f64(),
            pair.lambda.to_f64(),
            pair.c.to_f64(),
        );
    }
    println!("  (c_n tends to 1/√5 = {:.12})", 1.0 / 5f64.sqrt());

    // Two independent routes to c_n: 1/(tail + head) and q_n·|Λ_n|.
    let pair = tail_head_pair(&spec, &table, 20, BITS).unwrap();
    let via_sum = pair.c.to_f64();
    let via_lambda = pair.c_from_lambda().to_f64();
    println!(
        "\nc_20 via 1/(tail+head) = {via_sum:.15}\n     via q_20·|Λ_20|   = {via_lambda:.15}"
    );

    // For Euler's number the tails at n ≡ 2 (mod 3) blow up with the growing
    // coefficient, which is what drives P_{q_n}(e) apart.
    let e = AlphaSpec::Euler;
    let te = ConvergentTable::for_spec(&e, 20).unwrap();
    for n in [5usize, 8, 11, 14, 17] {
        let pair = tail_head_pair(&e, &te, n, BITS).unwrap();
        println!(
            "e: n={n:2} a_n={:2} tail≈{:9.5} c_n≈{:.6}",
            e.coefficient(n as u64),
            pair.alpha_plus.to_f64(),
            pair.c.to_f64()
        );
    }
}
