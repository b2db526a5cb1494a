//! Ostrowski numeration and the discrepancy sum D_t.
//!
//! A base is a finite coefficient list b_1..b_L; its value β = [0; b_1..b_L]
//! is the exact rational p_{L+1}/q_{L+1} of its own convergent recurrence.
//! Every t < q_{L+1} has a unique digit expansion t = Σ v_i·q_i with
//! 0 <= v_1 < b_1, 0 <= v_i <= b_i, and v_i = b_i forcing v_{i-1} = 0.
//! The discrepancy sum D_t(β) = Σ_{s<=t} ({βs} - 1/2) has a closed form in
//! those digits which this module evaluates exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::alpha::AlphaSpec;
use crate::cf::ConvergentTable;
use crate::error::{Error, Result};
use crate::phase::Frac256;

/// A finite Ostrowski base: coefficients, their convergents, and the exact
/// signed errors Λ_i(β) = q_i·β - p_i.
#[derive(Debug, Clone)]
pub struct OstrowskiBase {
    coeffs: Vec<u64>,
    table: ConvergentTable,
}

impl OstrowskiBase {
    pub fn from_coeffs(coeffs: &[u64]) -> Result<Self> {
        // The validity limit q_{L+1} = b_L·q_L + q_{L-1} needs one table
        // index past the coefficient count; the appended 1 is never read.
        let mut padded = coeffs.to_vec();
        padded.push(1);
        Ok(OstrowskiBase {
            coeffs: coeffs.to_vec(),
            table: ConvergentTable::from_coeffs(&padded)?,
        })
    }

    /// The base α_n⁻ of `spec`: the reversed coefficient prefix
    /// a_{n-1}, ..., a_1, whose value is exactly q_{n-1}(α)/q_n(α).
    pub fn head_base(spec: &AlphaSpec, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "head base needs n >= 2 (the coefficient prefix must be nonempty)".into(),
            ));
        }
        let coeffs: Vec<u64> = (1..n as u64).rev().map(|i| spec.coefficient(i)).collect();
        OstrowskiBase::from_coeffs(&coeffs)
    }

    /// Number of digit positions L.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Denominator q_i(β), 0 <= i <= L+1.
    pub fn q(&self, i: usize) -> &BigInt {
        self.table.q(i)
    }

    /// Exclusive upper end of the validity range: q_{L+1}.
    pub fn limit(&self) -> &BigInt {
        self.table.q(self.len() + 1)
    }

    /// The exact rational value β = [0; b_1, ..., b_L].
    pub fn value(&self) -> BigRational {
        BigRational::new(
            self.table.p(self.len() + 1).clone(),
            self.table.q(self.len() + 1).clone(),
        )
    }

    /// Exact Λ_i(β) = q_i·β - p_i.
    pub fn lambda(&self, i: usize) -> BigRational {
        let limit = self.len() + 1;
        BigRational::new(
            self.table.q(i) * self.table.p(limit) - self.table.p(i) * self.table.q(limit),
            self.table.q(limit).clone(),
        )
    }

    /// c_i(β) = q_i·|Λ_i(β)|.
    pub fn c(&self, i: usize) -> BigRational {
        self.lambda(i).abs() * BigRational::from(self.table.q(i).clone())
    }

    /// Fixed-width view for million-term scans; fails when the denominators
    /// exceed 64 bits.
    pub fn small(&self) -> Result<SmallBase> {
        let len = self.len();
        let mut q = Vec::with_capacity(len + 2);
        for i in 0..=len + 1 {
            q.push(self.table.q(i).to_u64().ok_or_else(|| {
                Error::InvalidArgument("base denominators exceed 64 bits".into())
            })?);
        }
        let modulus = q[len + 1];
        let mut lam_num = vec![0i64; len + 1];
        let mut c = vec![0.0f64; len + 1];
        for i in 1..=len {
            let num = self.table.q(i) * self.table.p(len + 1)
                - self.table.p(i) * self.table.q(len + 1);
            lam_num[i] = num.to_i64().ok_or_else(|| {
                Error::InvalidArgument("base error numerators exceed 64 bits".into())
            })?;
            c[i] = q[i] as f64 * lam_num[i].unsigned_abs() as f64 / modulus as f64;
        }
        Ok(SmallBase {
            coeffs: self.coeffs.clone(),
            q,
            lam_num,
        })
    }
}

/// Digit string of one integer in a base; v[0] is v_1 (the digit of q_1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstrowskiDigits {
    pub t: u64,
    pub v: Vec<u64>,
}

impl OstrowskiDigits {
    /// Index of the highest nonzero digit, i.e. N(t); zero for t = 0.
    pub fn significant_len(&self) -> usize {
        self.v
            .iter()
            .rposition(|&d| d != 0)
            .map(|i| i + 1)
            .unwrap_or(0)
    }

    /// Digits rendered most-significant-last: "v1,v2,...,vN" with N = N(t),
    /// so trailing zeros are dropped ("0" for t = 0).
    pub fn render(&self) -> String {
        let len = self.significant_len().max(1);
        self.v[..len]
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn validity_limit_u64(base: &OstrowskiBase) -> u64 {
    base.limit().to_u64().unwrap_or(u64::MAX)
}

/// Greedy digit expansion of t; valid for t < q_{L+1}.
pub fn encode(base: &OstrowskiBase, t: u64) -> Result<OstrowskiDigits> {
    let limit = validity_limit_u64(base);
    if t >= limit {
        return Err(Error::OutOfValidity { t, limit });
    }
    let len = base.len();
    // Denominators past u64 can never divide a u64 remainder; saturating
    // keeps deep bases usable for small t.
    let q: Vec<u64> = (0..=len)
        .map(|i| base.q(i).to_u64().unwrap_or(u64::MAX))
        .collect();
    let mut v = vec![0u64; len];
    let mut rest = t;
    let mut i = len;
    while rest > 0 {
        while q[i] > rest {
            i -= 1;
        }
        debug_assert!(i >= 1);
        v[i - 1] = rest / q[i];
        rest %= q[i];
    }
    debug_assert!(check_digits(base, &v).is_ok());
    Ok(OstrowskiDigits { t, v })
}

/// Checks the digit constraints: v_1 < b_1, v_i <= b_i, and v_i = b_i only
/// above a zero digit.
pub fn check_digits(base: &OstrowskiBase, v: &[u64]) -> Result<()> {
    if v.len() > base.len() {
        return Err(Error::DigitConstraint(format!(
            "{} digits but the base has {} positions",
            v.len(),
            base.len()
        )));
    }
    for (idx, &digit) in v.iter().enumerate() {
        let i = idx + 1;
        let b = base.coeffs[idx];
        let max = if i == 1 { b - 1 } else { b };
        if digit > max {
            return Err(Error::DigitConstraint(format!(
                "digit v_{i}={digit} exceeds its bound {max}"
            )));
        }
        if i > 1 && digit == b && v[idx - 1] != 0 {
            return Err(Error::DigitConstraint(format!(
                "v_{i} = b_{i} = {b} requires v_{} = 0",
                i - 1
            )));
        }
    }
    Ok(())
}

/// Σ v_i·q_i for a constraint-valid digit string.
pub fn decode(base: &OstrowskiBase, v: &[u64]) -> Result<u64> {
    check_digits(base, v)?;
    let mut total: u64 = 0;
    for (idx, &digit) in v.iter().enumerate() {
        if digit == 0 {
            continue;
        }
        let q = base.q(idx + 1).to_u64().ok_or_else(|| {
            Error::InvalidArgument("base denominators exceed 64 bits".into())
        })?;
        total = total
            .checked_add(digit.checked_mul(q).ok_or_else(|| {
                Error::InvalidArgument("decoded value exceeds 64 bits".into())
            })?)
            .ok_or_else(|| Error::InvalidArgument("decoded value exceeds 64 bits".into()))?;
    }
    Ok(total)
}

/// D_t(β) from the digit expansion, exact:
/// (1/2)·Σ_i (v_i·Λ_i·(v_i·q_i + 1) + (-1)^i·v_i) + Σ_{i<j} v_i·v_j·q_i·Λ_j.
pub fn d_t_formula(base: &OstrowskiBase, t: u64) -> Result<BigRational> {
    if t < 1 {
        return Err(Error::InvalidArgument("d_t needs t >= 1".into()));
    }
    let digits = encode(base, t)?;
    let len = base.len();
    let big_q = base.limit(); // denominator of every Λ_i
    let mut main = BigInt::zero(); // Σ v_i·l_i·(v_i·q_i + 1) + 2·Σ_j v_j·l_j·(Σ_{i<j} v_i·q_i)
    let mut alternating = BigInt::zero(); // Σ (-1)^i·v_i
    let mut prefix = BigInt::zero(); // Σ_{i<j} v_i·q_i while walking j upward
    for (idx, &digit) in digits.v.iter().enumerate() {
        let i = idx + 1;
        if digit == 0 {
            continue;
        }
        let v = BigInt::from(digit);
        let q_i = base.q(i);
        let l_i = base.q(i) * base.table.p(len + 1) - base.table.p(i) * big_q;
        main += &v * &l_i * (&v * q_i + 1) + BigInt::from(2) * &v * &l_i * &prefix;
        if i % 2 == 0 {
            alternating += &v;
        } else {
            alternating -= &v;
        }
        prefix += &v * q_i;
    }
    Ok(BigRational::new(
        main + alternating * big_q,
        BigInt::from(2) * big_q,
    ))
}

/// D_t(β) summed directly: Σ_{s=1}^t ({β·s} - 1/2), exact for rational β.
/// A multiple of the denominator contributes {βs} = 0, hence -1/2.
pub fn d_t_bruteforce(beta: &BigRational, t: u64) -> BigRational {
    let a = beta.numer();
    let b = beta.denom();
    let mut m = BigInt::zero();
    let mut acc = BigInt::zero();
    for _ in 0..t {
        m += a;
        if &m >= b {
            m = &m % b;
        }
        acc += &m;
    }
    // Σ m_s / b - t/2
    BigRational::new(BigInt::from(2) * acc - BigInt::from(t) * b, BigInt::from(2) * b)
}

/// Direct D_t for a value carried as a 256-bit phase step.
pub fn d_t_bruteforce_phase(step: Frac256, t: u64) -> f64 {
    let mut phase = Frac256::ZERO;
    let mut acc = crate::phase::Neumaier::new();
    for _ in 0..t {
        phase = phase.wrapping_add(step);
        acc.add(phase.value_f64() - 0.5);
    }
    acc.total()
}

/// Outcome of checking |D_t| <= (3/2)·Σ_{i <= N(t)} b_i over 1 <= t <= t_max.
#[derive(Debug, Clone)]
pub struct DtBoundReport {
    pub t_max: u64,
    pub all_bounded: bool,
    pub max_abs_dt: f64,
    /// max over t of |D_t| / log(t+1).
    pub max_log_ratio: f64,
    pub argmax_t: u64,
}

/// Verifies the digit-sum bound on |D_t| and measures |D_t|/log(t+1).
pub fn d_t_log_bound_check(base: &OstrowskiBase, t_max: u64) -> Result<DtBoundReport> {
    let limit = validity_limit_u64(base);
    if t_max >= limit {
        return Err(Error::OutOfValidity { t: t_max, limit });
    }
    let mut all_bounded = true;
    let mut max_abs = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut argmax = 1u64;
    for t in 1..=t_max {
        let digits = encode(base, t)?;
        let dt = d_t_formula(base, t)?;
        let coeff_sum: u64 = base.coeffs[..digits.significant_len()].iter().sum();
        let bound = BigRational::new(BigInt::from(3 * coeff_sum), BigInt::from(2));
        if dt.abs() > bound {
            all_bounded = false;
        }
        let dt_f = dt.to_f64().unwrap();
        max_abs = max_abs.max(dt_f.abs());
        let ratio = dt_f.abs() / ((t + 1) as f64).ln();
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = t;
        }
    }
    Ok(DtBoundReport {
        t_max,
        all_bounded,
        max_abs_dt: max_abs,
        max_log_ratio: max_ratio,
        argmax_t: argmax,
    })
}

/// u64 view of a base for long scans.
#[derive(Debug, Clone)]
pub struct SmallBase {
    /// b_1..b_L.
    pub coeffs: Vec<u64>,
    /// q_0..q_{L+1}.
    pub q: Vec<u64>,
    /// Λ_i numerators over q_{L+1}: Λ_i = lam_num[i]/q_{L+1}; index 0 unused.
    pub lam_num: Vec<i64>,
}

impl SmallBase {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn limit(&self) -> u64 {
        self.q[self.len() + 1]
    }

    /// c_i(β) as f64.
    pub fn c(&self, i: usize) -> f64 {
        self.q[i] as f64 * self.lam_num[i].unsigned_abs() as f64 / self.limit() as f64
    }
}

/// Streams (t, D_t, y_t) for t = 1..=t_max, where y_t is the alternating
/// digit functional Σ_j (-1)^{j-1}·v_j·(1 - v_j·c_j(β)). D_t comes from the
/// digit closed form with exact integer arithmetic scaled by 2·q_{L+1}.
pub fn scan_digit_functionals(
    base: &SmallBase,
    t_max: u64,
    mut f: impl FnMut(u64, f64, f64),
) -> Result<()> {
    if t_max >= base.limit() {
        return Err(Error::OutOfValidity {
            t: t_max,
            limit: base.limit(),
        });
    }
    let len = base.len();
    let big_q = base.q[len + 1];
    let inv_two_q = 1.0 / (2.0 * big_q as f64);
    let c: Vec<f64> = (0..=len).map(|i| if i == 0 { 0.0 } else { base.c(i) }).collect();
    let mut nonzero: Vec<(usize, u64)> = Vec::with_capacity(64);
    for t in 1..=t_max {
        nonzero.clear();
        let mut rest = t;
        let mut i = len;
        while rest > 0 {
            while base.q[i] > rest {
                i -= 1;
            }
            nonzero.push((i, rest / base.q[i]));
            rest %= base.q[i];
        }
        // Accumulate in increasing digit index.
        let mut main: i128 = 0;
        let mut alternating: i64 = 0;
        let mut prefix: i64 = 0;
        let mut y = 0.0f64;
        for &(i, v) in nonzero.iter().rev() {
            let vi = v as i128;
            let li = base.lam_num[i] as i128;
            let qi = base.q[i] as i128;
            main += vi * li * (vi * qi + 1) + 2 * vi * li * prefix as i128;
            alternating += if i % 2 == 0 { v as i64 } else { -(v as i64) };
            prefix += (v * base.q[i]) as i64;
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            y += sign * v as f64 * (1.0 - v as f64 * c[i]);
        }
        let dt = (main as f64 + alternating as f64 * big_q as f64) * inv_two_q;
        f(t, dt, y);
    }
    Ok(())
}
