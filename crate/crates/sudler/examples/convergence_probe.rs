//! Convergence probes along index subsequences: evaluate P_{q_{n_i}},
//! classify the trend, and watch the coefficients on both sides of n_i
//! stabilize (or not).
//!
//! Run with: cargo run --example convergence_probe

use sudler::alpha::AlphaSpec;
use sudler::analysis::{convergence_probe, SubsequenceSelector};
use sudler::product::DEFAULT_PRECISION_BITS as BITS;

fn print_report(label: &str, report: &sudler::analysis::ConvergenceReport) {
    println!("{label}: verdict = {}", report.verdict);
    for i in 0..report.p.len() {
        println!(
            "  i={} n={:3} q={:9} P={:.8}{}",
            i + 1,
            report.indices[i],
            report.q[i],
            report.p[i],
            if i > 0 {
                format!("  |ΔP| = {:.3e}", report.diffs[i - 1])
            } else {
                String::new()
            }
        );
    }
    let fmt = |s: &[sudler::analysis::OffsetStability]| {
        s.iter()
            .map(|o| format!("{}:{}", o.offset, o.last_change_i))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("  last change per +offset: {}", fmt(&report.stab_plus));
    println!("  last change per -offset: {}", fmt(&report.stab_minus));
}

fn main() {
    // Along the positions of the twos, both coefficient neighborhoods
    // stabilize and P_{q_{n_i}} settles (oscillating) onto a plateau.
    let spec = AlphaSpec::TwosRule { start: 2 };
    let report = convergence_probe(
        &spec,
        &SubsequenceSelector::TwosPositions { start: 2 },
        10,
        BITS,
    )
    .unwrap();
    print_report("twos:2 along its two positions", &report);

    // A purely periodic spec converges on every residue class.
    let quad: AlphaSpec = "quad:|1,1,2".parse().unwrap();
    for k in 0..3 {
        let report = convergence_probe(
            &quad,
            &SubsequenceSelector::ResidueClass {
                modulus: 3,
                residue: k,
            },
            10,
            BITS,
        )
        .unwrap();
        println!(
            "\nquad:|1,1,2 on n ≡ {k} (mod 3): verdict = {}, plateau ≈ {:.6}",
            report.verdict,
            report.p.last().unwrap()
        );
    }

    // Along n ≡ 2 (mod 3) the coefficient a_{n_i} of {e} keeps growing: the
    // offset-0 entry never stabilizes and the products die off.
    let e_report = convergence_probe(
        &AlphaSpec::Euler,
        &SubsequenceSelector::ResidueClass {
            modulus: 3,
            residue: 2,
        },
        8,
        BITS,
    )
    .unwrap();
    println!();
    print_report("{e} on n ≡ 2 (mod 3)", &e_report);
}
