//! The product P_N(α) = ∏_{r=1}^N |2 sin(π r α)|: direct certified
//! evaluation, the exact three-factor split at N = q_n, and the digit-driven
//! asymptotic estimators.
//!
//! At N = q_n the product factors exactly as A_n·B_n·C_n with
//!   A_n = |2 q_n sin(π Λ_n)|,
//!   B_n = ∏_{t=1}^{q_n-1} s_{nt} / (2 sin(π t/q_n)),
//!   C_n = ∏_{t=1}^{q_n-1} (1 - s_{n0}²/s_{nt}²)^{1/2},
//! where s_{nt} = 2 sin(π[t/q_n - |Λ_n|·ξ_{nt}]) and
//! ξ_{nt} = {t·q_{n-1}/q_n} - 1/2. The direct evaluation and the split are
//! computed independently so the residual between them is a genuine check.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::alpha::AlphaSpec;
use crate::cf::{
    approx_alpha, tail_head_pair, ConvergentTable, HighPrecisionAlpha, TailHeadPair,
};
use crate::error::{Error, Result};
use crate::interval::pow2_neg;
use crate::ostrowski::{scan_digit_functionals, OstrowskiBase};
use crate::phase::{Frac256, Neumaier};

/// Default certified precision, in bits, for α and everything derived from it.
pub const DEFAULT_PRECISION_BITS: u32 = 160;

const CHUNK: u64 = 1 << 16;

/// Truncation lengths for one index n: M_n = ⌊(q_n-1)/2⌋ and the default
/// τ_n = κ_n = ⌊√q_n⌋.
#[derive(Debug, Clone, Copy)]
pub struct SudlerParams {
    pub n: usize,
    pub q_n: u64,
    pub m_n: u64,
    pub tau: u64,
    pub kappa: u64,
}

impl SudlerParams {
    pub fn defaults(n: usize, q_n: u64) -> Self {
        let root = isqrt(q_n);
        SudlerParams {
            n,
            q_n,
            m_n: (q_n - 1) / 2,
            tau: root,
            kappa: root,
        }
    }

    /// Overrides stay within 4·√q_n; larger values leave the regime in which
    /// the truncation error is O(τ^{-1}).
    pub fn with_tau(mut self, tau: u64) -> Result<Self> {
        let cap = 4 * isqrt(self.q_n);
        if tau == 0 || tau > cap {
            return Err(Error::InvalidArgument(format!(
                "tau must be in 1..={cap} for q_n = {}",
                self.q_n
            )));
        }
        self.tau = tau;
        Ok(self)
    }

    pub fn with_kappa(mut self, kappa: u64) -> Result<Self> {
        let cap = 4 * isqrt(self.q_n);
        if kappa == 0 || kappa > cap {
            return Err(Error::InvalidArgument(format!(
                "kappa must be in 1..={cap} for q_n = {}",
                self.q_n
            )));
        }
        self.kappa = kappa;
        Ok(self)
    }
}

pub fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// 2 sin(π·x) for x ∈ (0,1), taking the complement so the argument handed to
/// the libm sine is never close to π.
#[inline]
fn two_sinpi(x: f64, one_minus_x: f64) -> f64 {
    2.0 * (PI * x.min(one_minus_x)).sin()
}

/// log P_N(α) = Σ_{r=1}^N ln|2 sin(π r α)| by exact fixed-point phase
/// stepping: {rα} is carried as a 256-bit fraction, so the only f64 work per
/// term is one sine and one log.
///
/// The α approximation must satisfy error·N·2^20 < 2^-53, which certifies
/// every distance ‖rα‖ to well below double precision.
pub fn sudler_direct(alpha: &HighPrecisionAlpha, n_terms: u64) -> Result<f64> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("need at least one factor".into()));
    }
    if n_terms >= 1u64 << 40 {
        return Err(Error::InvalidArgument("N must be below 2^40".into()));
    }
    let budget = pow2_neg(53) / BigRational::from(BigInt::from(n_terms) << 20);
    if alpha.error_bound() >= &budget {
        return Err(Error::InsufficientPrecision(format!(
            "alpha error bound too large for N = {n_terms} (need < 2^-53/(N·2^20))"
        )));
    }
    let step = Frac256::from_scaled(alpha.value(), alpha.frac_bits());
    let n_chunks = n_terms.div_ceil(CHUNK);
    let partials: Result<Vec<f64>> = (0..n_chunks)
        .into_par_iter()
        .map(|k| {
            let r_lo = k * CHUNK + 1;
            let r_hi = n_terms.min((k + 1) * CHUNK);
            // Each chunk seeds its own phase as {r_lo·α}, computed exactly,
            // so totals do not depend on how chunks are scheduled.
            let mut phase = step.wrapping_mul_u64(r_lo);
            let mut acc = Neumaier::new();
            for _ in r_lo..=r_hi {
                let d = phase.distance_to_int();
                if d <= 0.0 {
                    return Err(Error::InsufficientPrecision(
                        "phase collapsed onto an integer".into(),
                    ));
                }
                acc.add((2.0 * (PI * d).sin()).ln());
                phase = phase.wrapping_add(step);
            }
            Ok(acc.total())
        })
        .collect();
    let mut total = Neumaier::new();
    for part in partials? {
        total.add(part);
    }
    Ok(total.total())
}

/// Convenience: log P_N for a spec, approximating α to `bits`.
pub fn log_p_direct(spec: &AlphaSpec, n_terms: u64, bits: u32) -> Result<f64> {
    sudler_direct(&approx_alpha(spec, bits)?, n_terms)
}

/// ∏_{r=1}^{q-1} |2 sin(π r p/q)| for coprime p, q; equals q exactly.
/// (The signed product is ±q; the absolute value matches the convention
/// used for P_N.)
pub fn sin_product_identity(p: u64, q: u64) -> Result<f64> {
    if q < 2 || p == 0 || p >= q {
        return Err(Error::InvalidArgument("need 1 <= p < q".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({p},{q}) != 1")));
    }
    let mut m = 0u64;
    let mut acc = Neumaier::new();
    let qf = q as f64;
    for _ in 1..q {
        m += p;
        if m >= q {
            m -= q;
        }
        let d = m.min(q - m) as f64 / qf;
        acc.add((2.0 * (PI * d).sin()).ln());
    }
    Ok(acc.total().exp())
}

/// ξ_{nt} = {t·q_{n-1}/q_n} - 1/2 as an exact rational, for 0 <= t < q_n.
pub fn xi(table: &ConvergentTable, n: usize, t: u64) -> Result<BigRational> {
    let q_n = table.q(n);
    if BigInt::from(t) >= *q_n {
        return Err(Error::InvalidArgument(format!("t = {t} must be < q_n")));
    }
    let m = (BigInt::from(t) * table.q(n - 1)).mod_floor(q_n);
    Ok(BigRational::new(
        BigInt::from(2) * m - q_n,
        BigInt::from(2) * q_n,
    ))
}

/// s_{nt} = 2 sin(π[t/q_n - |Λ_n|·ξ_{nt}]), for 0 <= t < q_n.
pub fn s_value(pair: &TailHeadPair, t: u64) -> Result<f64> {
    let q = pair
        .q_n
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("q_n exceeds 64 bits".into()))?;
    if t >= q {
        return Err(Error::InvalidArgument(format!("t = {t} must be < q_n")));
    }
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let lam = pair.lambda_abs().to_f64();
    let m = ((t as u128 * qprev as u128) % q as u128) as u64;
    let xi = m as f64 / q as f64 - 0.5;
    let x = t as f64 / q as f64 - lam * xi;
    let omx = (q - t) as f64 / q as f64 + lam * xi;
    Ok(two_sinpi(x, omx))
}

/// h_{nt} = cot(π t/q_n)·sin(π |Λ_n|·ξ_{nt}), for 1 <= t < q_n.
pub fn h_value(pair: &TailHeadPair, t: u64) -> Result<f64> {
    let q = pair
        .q_n
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("q_n exceeds 64 bits".into()))?;
    if t == 0 || t >= q {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be in 1..q_n"
        )));
    }
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let lam = pair.lambda_abs().to_f64();
    let m = ((t as u128 * qprev as u128) % q as u128) as u64;
    let xi = m as f64 / q as f64 - 0.5;
    let angle = PI * t as f64 / q as f64;
    Ok(angle.cos() / angle.sin() * (PI * lam * xi).sin())
}

/// u_n(t) = 2(t/c_n - ξ_{nt}), for 1 <= t < q_n.
pub fn u_value(pair: &TailHeadPair, t: u64) -> Result<f64> {
    let q = pair
        .q_n
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("q_n exceeds 64 bits".into()))?;
    if t == 0 || t >= q {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be in 1..q_n"
        )));
    }
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let c = pair.c.to_f64();
    let m = ((t as u128 * qprev as u128) % q as u128) as u64;
    let xi = m as f64 / q as f64 - 0.5;
    Ok(2.0 * (t as f64 / c - xi))
}

/// One evaluated index: the direct log-product, the three factors, and the
/// residual |log P - log(A·B·C)| between the two independent routes.
#[derive(Debug, Clone)]
pub struct SudlerPoint {
    pub n: usize,
    pub q_n: u64,
    pub log_p: f64,
    pub a_factor: f64,
    pub log_b_factor: f64,
    pub c_factor: f64,
    pub residual: f64,
}

impl SudlerPoint {
    pub fn p(&self) -> f64 {
        self.log_p.exp()
    }

    pub fn log_split(&self) -> f64 {
        self.a_factor.ln() + self.log_b_factor + self.c_factor.ln()
    }
}

/// Splits P_{q_n} into A_n·B_n·C_n and cross-checks against the direct
/// evaluation. Needs q_n >= 3.
pub fn decompose(spec: &AlphaSpec, n: usize, bits: u32) -> Result<SudlerPoint> {
    Ok(decompose_detailed(spec, n, bits)?.0)
}

/// Like [`decompose`], also returning the tail/head data for the index.
pub fn decompose_detailed(
    spec: &AlphaSpec,
    n: usize,
    bits: u32,
) -> Result<(SudlerPoint, TailHeadPair)> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 3 {
        return Err(Error::InvalidArgument(format!(
            "decompose needs q_n >= 3 (q_{n} = {q_n})"
        )));
    }
    let pair = tail_head_pair(spec, &table, n, bits)?;
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let lam = pair.lambda_abs().to_f64();
    let a_factor = 2.0 * q_n as f64 * (PI * lam).sin();
    let s0 = 2.0 * (PI * lam / 2.0).sin();

    let n_chunks = (q_n - 1).div_ceil(CHUNK);
    let partials: Result<Vec<(f64, f64)>> = (0..n_chunks)
        .into_par_iter()
        .map(|k| {
            let t_lo = k * CHUNK + 1;
            let t_hi = (q_n - 1).min((k + 1) * CHUNK);
            decompose_chunk(q_n, qprev, lam, s0, t_lo, t_hi)
        })
        .collect();
    let mut log_b = Neumaier::new();
    let mut log_c = Neumaier::new();
    for (b, c) in partials? {
        log_b.add(b);
        log_c.add(c);
    }
    let log_b_factor = log_b.total();
    let c_factor = log_c.total().exp();

    let alpha = approx_alpha(spec, bits)?;
    let log_p = sudler_direct(&alpha, q_n)?;
    let residual = (log_p - (a_factor.ln() + log_b_factor + c_factor.ln())).abs();
    Ok((
        SudlerPoint {
            n,
            q_n,
            log_p,
            a_factor,
            log_b_factor,
            c_factor,
            residual,
        },
        pair,
    ))
}

fn decompose_chunk(
    q: u64,
    qprev: u64,
    lam: f64,
    s0: f64,
    t_lo: u64,
    t_hi: u64,
) -> Result<(f64, f64)> {
    let qf = q as f64;
    let mut m = ((t_lo as u128 * qprev as u128) % q as u128) as u64;
    let mut log_b = Neumaier::new();
    let mut log_c = Neumaier::new();
    for t in t_lo..=t_hi {
        let xi = m as f64 / qf - 0.5;
        let x = t as f64 / qf - lam * xi;
        let omx = (q - t) as f64 / qf + lam * xi;
        let s = two_sinpi(x, omx);
        let plain = 2.0 * (PI * (t.min(q - t) as f64 / qf)).sin();
        log_b.add((s / plain).ln());
        let ratio = s0 / s;
        if !(ratio < 1.0) {
            return Err(Error::InsufficientPrecision(format!(
                "s_nt <= s_n0 at t = {t}; the square-root factor degenerates"
            )));
        }
        log_c.add(0.5 * (-ratio * ratio).ln_1p());
        m += qprev;
        if m >= q {
            m -= q;
        }
    }
    Ok((log_b.total(), log_c.total()))
}

/// Asymptotic form of log B_n:
/// -2π²(c_n/q_n²)·Σ_{t<M_n} D_t(α_n⁻)/(sin(πt/q_n)·sin(π(t+1)/q_n))
/// - 2·Σ_{t<=τ}Σ_{j=2}^{τ} (1/j)(c_n·ξ_{nt}/t)^j,
/// with D_t evaluated exactly in the rational base α_n⁻.
pub fn log_b_asymptotic(spec: &AlphaSpec, n: usize, tau: Option<u64>, bits: u32) -> Result<f64> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 9 {
        return Err(Error::InvalidArgument("needs q_n >= 9".into()));
    }
    let mut params = SudlerParams::defaults(n, q_n);
    if let Some(t) = tau {
        params = params.with_tau(t)?;
    }
    let pair = tail_head_pair(spec, &table, n, bits)?;
    let c = pair.c.to_f64();
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let qf = q_n as f64;

    let base = OstrowskiBase::head_base(spec, n)?.small()?;
    let mut first = Neumaier::new();
    scan_digit_functionals(&base, params.m_n - 1, |t, dt, _| {
        let s1 = (PI * t as f64 / qf).sin();
        let s2 = (PI * (t + 1) as f64 / qf).sin();
        first.add(dt / (s1 * s2));
    })?;
    let double = xi_power_double_sum(q_n, qprev, c, params.tau);
    Ok(-2.0 * PI * PI * c / (qf * qf) * first.total() - 2.0 * double)
}

/// Σ_{t=1}^{τ} Σ_{j=2}^{τ} (1/j)·(c·ξ_{nt}/t)^j. Bounded by log(2)/2 in
/// absolute value.
pub fn xi_power_double_sum(q_n: u64, qprev: u64, c: f64, tau: u64) -> f64 {
    let qf = q_n as f64;
    let mut outer = Neumaier::new();
    let mut m = 0u64;
    for t in 1..=tau {
        m += qprev;
        if m >= q_n {
            m -= q_n;
        }
        let xi = m as f64 / qf - 0.5;
        let x = c * xi / t as f64;
        let mut pow = x * x;
        let mut inner = 0.0;
        for j in 2..=tau {
            let term = pow / j as f64;
            inner += term;
            if term.abs() < 1e-22 {
                break;
            }
            pow *= x;
        }
        outer.add(inner);
    }
    outer.total()
}

/// Truncated product form of C_n: ∏_{t=1}^{κ} (1 - 1/(4(t/c_n - ξ_{nt})²)).
pub fn c_asymptotic(spec: &AlphaSpec, n: usize, kappa: Option<u64>, bits: u32) -> Result<f64> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 9 {
        return Err(Error::InvalidArgument("needs q_n >= 9".into()));
    }
    let mut params = SudlerParams::defaults(n, q_n);
    if let Some(k) = kappa {
        params = params.with_kappa(k)?;
    }
    let pair = tail_head_pair(spec, &table, n, bits)?;
    let c = pair.c.to_f64();
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let qf = q_n as f64;
    let mut log_prod = Neumaier::new();
    let mut m = 0u64;
    for t in 1..=params.kappa.min(q_n - 1) {
        m += qprev;
        if m >= q_n {
            m -= q_n;
        }
        let xi = m as f64 / qf - 0.5;
        let u = 2.0 * (t as f64 / c - xi);
        debug_assert!(u > 1.0);
        log_prod.add((-1.0 / (u * u)).ln_1p());
    }
    Ok(log_prod.total().exp())
}

/// The discrepancy-driven estimate of P_{q_n} and its digit-functional
/// variant, with the measured ratio to the actual value.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub n: usize,
    pub q_n: u64,
    pub c_n: f64,
    /// Σ_{t=1}^{M_n-1} D_t(α_n⁻)/(t(t+1)).
    pub s_n: f64,
    /// c_n·exp(-2·c_n·s_n).
    pub core: f64,
    pub log_p: f64,
    /// P_{q_n} / core.
    pub ratio: f64,
    /// Σ_{t=1}^{M_n-1} (1/(t(t+1)))·Σ_j (-1)^{j-1} v_j(t)(1 - v_j(t)·c_j(α_n⁻)).
    pub y_n: f64,
    /// (1/a_n)·exp(y_n/a_n), the unbounded-coefficient form.
    pub unbounded_estimate: f64,
}

/// Builds the estimate from an already-computed log P_{q_n}.
pub fn estimate_with_log_p(
    spec: &AlphaSpec,
    n: usize,
    bits: u32,
    log_p: f64,
) -> Result<EstimateReport> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 9 {
        return Err(Error::InvalidArgument("needs q_n >= 9".into()));
    }
    let pair = tail_head_pair(spec, &table, n, bits)?;
    let c_n = pair.c.to_f64();
    let m_n = (q_n - 1) / 2;
    let base = OstrowskiBase::head_base(spec, n)?.small()?;
    let mut s_acc = Neumaier::new();
    let mut y_acc = Neumaier::new();
    scan_digit_functionals(&base, m_n - 1, |t, dt, y| {
        let w = 1.0 / (t as f64 * (t + 1) as f64);
        s_acc.add(dt * w);
        y_acc.add(y * w);
    })?;
    let s_n = s_acc.total();
    let y_n = y_acc.total();
    let core = c_n * (-2.0 * c_n * s_n).exp();
    let a_n = spec.coefficient(n as u64) as f64;
    Ok(EstimateReport {
        n,
        q_n,
        c_n,
        s_n,
        core,
        log_p,
        ratio: log_p.exp() / core,
        y_n,
        unbounded_estimate: (1.0 / a_n) * (y_n / a_n).exp(),
    })
}

/// Full estimate, evaluating P_{q_n} by decomposition first.
pub fn estimate(spec: &AlphaSpec, n: usize, bits: u32) -> Result<EstimateReport> {
    let point = decompose(spec, n, bits)?;
    estimate_with_log_p(spec, n, bits, point.log_p)
}

/// The digit functional Y_n on its own, plus the unbounded-coefficient form
/// (1/a_n)·exp(Y_n/a_n). Cheaper than [`estimate`]: no product evaluation.
#[derive(Debug, Clone, Copy)]
pub struct DigitEstimate {
    pub n: usize,
    pub q_n: u64,
    pub y_n: f64,
    pub unbounded_estimate: f64,
}

pub fn digit_estimate(spec: &AlphaSpec, n: usize) -> Result<DigitEstimate> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 9 {
        return Err(Error::InvalidArgument("needs q_n >= 9".into()));
    }
    let base = OstrowskiBase::head_base(spec, n)?.small()?;
    let mut y_acc = Neumaier::new();
    scan_digit_functionals(&base, (q_n - 1) / 2 - 1, |t, _dt, y| {
        y_acc.add(y / (t as f64 * (t + 1) as f64));
    })?;
    let y_n = y_acc.total();
    let a_n = spec.coefficient(n as u64) as f64;
    Ok(DigitEstimate {
        n,
        q_n,
        y_n,
        unbounded_estimate: (1.0 / a_n) * (y_n / a_n).exp(),
    })
}

/// The simplified product ∏_{t=1}^{q_n-1}(1 - h_{nt}) and the even-q_n
/// correction factor θ_n.
#[derive(Debug, Clone)]
pub struct BStarReport {
    pub n: usize,
    pub q_n: u64,
    pub log_b_star: f64,
    /// 1 for odd q_n, otherwise 1 - β_{n,q_n/2} with β_{nt} = 2sin²(π|Λ_n|ξ_{nt}/2).
    pub theta: f64,
}

pub fn b_star(spec: &AlphaSpec, n: usize, bits: u32) -> Result<BStarReport> {
    let table = ConvergentTable::for_spec(spec, n + 1)?;
    let q_n = table.q_u64(n)?;
    if q_n < 3 {
        return Err(Error::InvalidArgument("needs q_n >= 3".into()));
    }
    let pair = tail_head_pair(spec, &table, n, bits)?;
    let lam = pair.lambda_abs().to_f64();
    let qprev = pair.q_prev.to_u64().expect("q_{n-1} < q_n");
    let qf = q_n as f64;
    let mut acc = Neumaier::new();
    let mut m = 0u64;
    for t in 1..q_n {
        m += qprev;
        if m >= q_n {
            m -= q_n;
        }
        let xi = m as f64 / qf - 0.5;
        let angle = PI * t as f64 / qf;
        let h = angle.cos() / angle.sin() * (PI * lam * xi).sin();
        acc.add((-h).ln_1p());
    }
    let theta = if q_n % 2 == 1 {
        1.0
    } else {
        let m_half = ((q_n as u128 / 2 * qprev as u128) % q_n as u128) as u64;
        let xi = m_half as f64 / qf - 0.5;
        let b = 2.0 * (PI * lam * xi / 2.0).sin().powi(2);
        1.0 - b
    };
    Ok(BStarReport {
        n,
        q_n,
        log_b_star: acc.total(),
        theta,
    })
}

/// Indices n in ascending order with 3 <= q_n <= bound, skipping the
/// degenerate duplicated 1s at the start of the denominator sequence.
pub fn indices_within(spec: &AlphaSpec, bound: u64) -> (Vec<usize>, ConvergentTable) {
    let (n_max, table) = crate::cf::max_index_with_q_at_most(spec, bound);
    let three = BigInt::from(3);
    let mut out = Vec::new();
    for n in 1..=n_max {
        if table.q(n) >= &three {
            out.push(n);
        }
    }
    (out, table)
}
