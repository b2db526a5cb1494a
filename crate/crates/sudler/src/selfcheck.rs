//! The built-in invariant suite behind the `selfcheck` subcommand.
//!
//! Each check is a fast, deterministic cut-down of one of the full test-suite
//! properties; the whole run takes seconds. Randomized inputs use a fixed
//! seed so two runs produce identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alpha::AlphaSpec;
use crate::cf::{tail_head_pair, ConvergentTable};
use crate::interval::pow2_neg;
use crate::ostrowski::{d_t_bruteforce, d_t_formula, decode, encode, OstrowskiBase};
use crate::product::{
    decompose_detailed, h_value, s_value, sin_product_identity, u_value, xi, isqrt,
    xi_power_double_sum, DEFAULT_PRECISION_BITS,
};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> CheckOutcome {
    match run() {
        Ok(detail) => CheckOutcome {
            name,
            pass: true,
            detail,
        },
        Err(detail) => CheckOutcome {
            name,
            pass: false,
            detail,
        },
    }
}

fn test_specs() -> Vec<AlphaSpec> {
    vec![
        AlphaSpec::golden(),
        AlphaSpec::Euler,
        "quad:|1,1,2".parse().unwrap(),
        AlphaSpec::TwosRule { start: 2 },
        AlphaSpec::ThueMorse { a: 1, b: 2 },
    ]
}

/// Runs the whole suite; the caller renders the outcomes.
pub fn run_all() -> Vec<CheckOutcome> {
    let bits = DEFAULT_PRECISION_BITS;
    vec![
        check("convergent determinant identity", || {
            for spec in test_specs() {
                let t = ConvergentTable::for_spec(&spec, 60).map_err(|e| e.to_string())?;
                for n in 0..60 {
                    let det = t.p(n) * t.q(n + 1) - t.p(n + 1) * t.q(n);
                    let expect = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
                    if det != expect {
                        return Err(format!("{spec}: det at n={n} is {det}"));
                    }
                }
            }
            Ok("p_n·q_(n+1) - p_(n+1)·q_n = (-1)^n for n <= 60, 5 specs".into())
        }),
        check("signed-error bounds and c agreement", || {
            for spec in test_specs() {
                let t = ConvergentTable::for_spec(&spec, 32).map_err(|e| e.to_string())?;
                for n in 1..=30 {
                    let pair =
                        tail_head_pair(&spec, &t, n, bits + 40).map_err(|e| e.to_string())?;
                    let abs = pair.lambda_abs();
                    let lo = pow2_neg(1) / num_rational::BigRational::from(t.q(n + 1).clone());
                    let hi = num_rational::BigRational::new(BigInt::from(1), t.q(n + 1).clone());
                    if abs.hi() < &lo || abs.lo() > &hi {
                        return Err(format!("{spec} n={n}: |Λ| outside [1/(2q),1/q]"));
                    }
                    let gap = (pair.c.midpoint() - pair.c_from_lambda().midpoint()).abs();
                    if gap.to_f64().unwrap() > 1e-20 {
                        return Err(format!("{spec} n={n}: c mismatch {gap}"));
                    }
                }
            }
            Ok("1/(2q_(n+1)) <= |Λ_n| <= 1/q_(n+1), |q_n|Λ_n| - c_n| < 1e-20".into())
        }),
        check("ostrowski round trip", || {
            for spec in test_specs() {
                let base = OstrowskiBase::head_base(&spec, 10).map_err(|e| e.to_string())?;
                let limit = base.limit().to_u64().unwrap();
                for t in 0..limit {
                    let digits = encode(&base, t).map_err(|e| e.to_string())?;
                    let back = decode(&base, &digits.v).map_err(|e| e.to_string())?;
                    if back != t {
                        return Err(format!("{spec}: {t} -> {back}"));
                    }
                }
            }
            Ok("encode/decode identity over the full validity range, 5 bases".into())
        }),
        check("discrepancy formula vs direct sum", || {
            for spec in test_specs() {
                let base = OstrowskiBase::head_base(&spec, 9).map_err(|e| e.to_string())?;
                let beta = base.value();
                let limit = base.limit().to_u64().unwrap().min(600);
                for t in 1..limit {
                    let a = d_t_formula(&base, t).map_err(|e| e.to_string())?;
                    let b = d_t_bruteforce(&beta, t);
                    if a != b {
                        return Err(format!("{spec} t={t}: {a} != {b}"));
                    }
                }
            }
            Ok("digit closed form equals the direct sum exactly, 5 bases".into())
        }),
        check("rational sine-product identity", || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let q = rng.gen_range(5..=2000u64);
                let mut p = rng.gen_range(1..q);
                while p.gcd(&q) != 1 {
                    p = rng.gen_range(1..q);
                }
                let value = sin_product_identity(p, q).map_err(|e| e.to_string())?;
                if ((value - q as f64) / q as f64).abs() >= 1e-8 {
                    return Err(format!("p={p} q={q}: {value}"));
                }
            }
            Ok("∏|2sin(πrp/q)| = q within 1e-8 relative, 20 seeded pairs".into())
        }),
        check("decomposition identity", || {
            let mut worst = 0.0f64;
            for (spec, n_hi) in [
                (AlphaSpec::golden(), 18usize),
                ("quad:|1,1,2".parse().unwrap(), 14),
                (AlphaSpec::Euler, 11),
                (AlphaSpec::TwosRule { start: 2 }, 16),
            ] {
                for n in 6..=n_hi {
                    let (point, _) =
                        decompose_detailed(&spec, n, bits).map_err(|e| e.to_string())?;
                    worst = worst.max(point.residual);
                    if point.residual >= 1e-8 {
                        return Err(format!("{spec} n={n}: residual {}", point.residual));
                    }
                    if !(point.c_factor > 2.0 / 3.0 && point.c_factor < 1.0) {
                        return Err(format!("{spec} n={n}: C = {}", point.c_factor));
                    }
                }
            }
            Ok(format!("|log P - log(A·B·C)| worst {worst:.2e}"))
        }),
        check("symmetries of s, h, ξ", || {
            let spec = AlphaSpec::golden();
            let t_table = ConvergentTable::for_spec(&spec, 17).map_err(|e| e.to_string())?;
            let n = 16;
            let q = t_table.q_u64(n).unwrap();
            let pair = tail_head_pair(&spec, &t_table, n, bits).map_err(|e| e.to_string())?;
            for t in 1..q {
                let xa = xi(&t_table, n, t).map_err(|e| e.to_string())?;
                let xb = xi(&t_table, n, q - t).map_err(|e| e.to_string())?;
                if xa != -xb {
                    return Err(format!("ξ asymmetry broken at t={t}"));
                }
                let (sa, sb) = (
                    s_value(&pair, t).map_err(|e| e.to_string())?,
                    s_value(&pair, q - t).map_err(|e| e.to_string())?,
                );
                if (sa - sb).abs() >= 1e-12 {
                    return Err(format!("s symmetry broken at t={t}"));
                }
                let (ha, hb) = (
                    h_value(&pair, t).map_err(|e| e.to_string())?,
                    h_value(&pair, q - t).map_err(|e| e.to_string())?,
                );
                if (ha - hb).abs() >= 1e-12 {
                    return Err(format!("h symmetry broken at t={t}"));
                }
            }
            Ok(format!("all t < q_{n} = {q} symmetric within 1e-12 (ξ exact)"))
        }),
        check("u_n(t) > 1 and double-sum bound", || {
            for spec in test_specs() {
                let t_table = ConvergentTable::for_spec(&spec, 15).map_err(|e| e.to_string())?;
                let n = 14;
                let q = t_table.q_u64(n).unwrap();
                let pair = tail_head_pair(&spec, &t_table, n, bits).map_err(|e| e.to_string())?;
                let tau = isqrt(q);
                for t in 1..=tau {
                    if u_value(&pair, t).map_err(|e| e.to_string())? <= 1.0 {
                        return Err(format!("{spec}: u({t}) <= 1"));
                    }
                }
                let qprev = pair.q_prev.to_u64().unwrap();
                let ds = xi_power_double_sum(q, qprev, pair.c.to_f64(), tau);
                if ds.abs() > 0.5 * 2f64.ln() + 1e-12 {
                    return Err(format!("{spec}: double sum {ds}"));
                }
            }
            Ok("u > 1 up to τ and |ΣΣ(1/j)(cξ/t)^j| <= log(2)/2, 5 specs".into())
        }),
    ]
}

/// True when every check passed.
pub fn all_pass(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|c| c.pass)
}
