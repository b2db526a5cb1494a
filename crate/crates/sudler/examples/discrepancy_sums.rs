//! The discrepancy sums D_t(β) = Σ_{s<=t} ({βs} - 1/2): digit closed form
//! against the direct sum, and the logarithmic growth bound.
//!
//! Run with: cargo run --example discrepancy_sums

use num_traits::ToPrimitive;
use sudler::alpha::AlphaSpec;
use sudler::ostrowski::{d_t_bruteforce, d_t_formula, d_t_log_bound_check, OstrowskiBase};

fn main() {
    // β = 3/5, the head value of the golden ratio at n = 5.
    let base = OstrowskiBase::head_base(&AlphaSpec::golden(), 5).unwrap();
    let beta = base.value();
    println!("β = {beta}:");
    for t in 1..5u64 {
        println!(
            "  D_{t} closed form = {:6} direct = {}",
            d_t_formula(&base, t).unwrap().to_string(),
            d_t_bruteforce(&beta, t)
        );
    }

    // Exact equality over a whole validity range.
    let wide = OstrowskiBase::head_base(&AlphaSpec::Euler, 9).unwrap();
    let wide_beta = wide.value();
    let mut checked = 0u64;
    for t in 1..465u64 {
        assert_eq!(d_t_formula(&wide, t).unwrap(), d_t_bruteforce(&wide_beta, t));
        checked += 1;
    }
    println!("\n{{e}} base at n=9 (β = {wide_beta}): {checked} values agree exactly");

    // |D_t| stays under (3/2)·Σ coefficients and grows like log t.
    let deep = OstrowskiBase::head_base(&AlphaSpec::golden(), 17).unwrap();
    let report = d_t_log_bound_check(&deep, 1000).unwrap();
    println!(
        "\ngolden base at n=17, t <= 1000: digit-sum bound holds = {}, \
         max |D_t| = {:.4}, max |D_t|/log(t+1) = {:.4} (at t = {})",
        report.all_bounded, report.max_abs_dt, report.max_log_ratio, report.argmax_t
    );
    let qk = deep.q(10).to_u64().unwrap();
    println!(
        "single-digit t = q_10 = {qk}: D_t = {} (within ±3/2)",
        d_t_formula(&deep, qk).unwrap()
    );
}
