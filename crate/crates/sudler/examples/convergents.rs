//! Coefficient rules and convergent tables.
//!
//! Run with: cargo run --example convergents

use sudler::alpha::AlphaSpec;
use sudler::cf::ConvergentTable;

fn main() {
    for spec_str in ["golden", "e", "quad:|1,1,2", "twos:2", "tm:1,2"] {
        let spec: AlphaSpec = spec_str.parse().unwrap();
        println!("{spec_str}: a_1..a_12 = {:?}", spec.coefficients(12));
        let table = ConvergentTable::for_spec(&spec, 10).unwrap();
        print!("  q_0..q_10 =");
        for n in 0..=10 {
            print!(" {}", table.q(n));
        }
        println!();
    }

    // The golden ratio's denominators are the Fibonacci numbers under this
    // indexing (q_0 = 0, q_1 = 1).
    let table = ConvergentTable::for_spec(&AlphaSpec::golden(), 30).unwrap();
    println!("\ngolden q_30 = {} (Fibonacci)", table.q(30));

    // p_n·q_{n+1} - p_{n+1}·q_n alternates between +1 and -1.
    let e = ConvergentTable::for_spec(&AlphaSpec::Euler, 12).unwrap();
    for n in 0..6 {
        println!(
            "e: p_{n}·q_{} - p_{}·q_{n} = {}",
            n + 1,
            n + 1,
            e.p(n) * e.q(n + 1) - e.p(n + 1) * e.q(n)
        );
    }
}
