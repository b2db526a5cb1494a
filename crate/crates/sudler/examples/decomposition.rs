//! The exact split P_{q_n} = A_n·B_n·C_n and its residual against the
//! independent direct evaluation, plus the symmetries of the driving
//! sequences s_{nt} and ξ_{nt}.
//!
//! Run with: cargo run --example decomposition

use sudler::alpha::AlphaSpec;
use sudler::cf::ConvergentTable;
use sudler::product::{decompose_detailed, s_value, xi, DEFAULT_PRECISION_BITS as BITS};

fn main() {
    println!("golden ratio:");
    println!(
        "{:>3} {:>9} {:>12} {:>10} {:>12} {:>10} {:>10}",
        "n", "q_n", "P_{q_n}", "A_n", "log B_n", "C_n", "residual"
    );
    for n in [6usize, 10, 14, 18, 22, 26, 30] {
        let (point, pair) = decompose_detailed(&AlphaSpec::golden(), n, BITS).unwrap();
        println!(
            "{n:3} {:9} {:12.8} {:10.6} {:+12.3e} {:10.8} {:10.2e}",
            point.q_n,
            point.p(),
            point.a_factor,
            point.log_b_factor,
            point.c_factor,
            point.residual
        );
        // A_n approaches 2π·c_n as the signed error Λ_n shrinks.
        if n == 30 {
            let c = pair.c.to_f64();
            println!(
                "    A_30/(2π·c_30) = {:.10}",
                point.a_factor / (2.0 * std::f64::consts::PI * c)
            );
        }
    }

    // ξ is exactly antisymmetric about q_n/2 and s is symmetric.
    let spec: AlphaSpec = "quad:|1,1,2".parse().unwrap();
    let table = ConvergentTable::for_spec(&spec, 9).unwrap();
    let (_, pair) = decompose_detailed(&spec, 8, BITS).unwrap();
    let q = 43u64; // q_8 of this spec
    println!("\nquad:|1,1,2 at n=8 (q_8 = {q}):");
    for t in [1u64, 7, 20] {
        println!(
            "  ξ({t}) = {} = -ξ({})  s({t}) = {:.12} = s({})",
            xi(&table, 8, t).unwrap(),
            q - t,
            s_value(&pair, t).unwrap(),
            q - t
        );
        assert_eq!(xi(&table, 8, t).unwrap(), -xi(&table, 8, q - t).unwrap());
    }
}
