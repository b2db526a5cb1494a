//! Convergents, tails/heads, signed approximation errors, and certified
//! high-precision values of α.
//!
//! Indexing convention used throughout: q_0 = 0, q_1 = 1 and
//! q_{n+1} = a_n·q_n + q_{n-1} (likewise p_0 = 1, p_1 = 0). This is offset by
//! one from the convention most references use; with it, q_n of the golden
//! ratio is exactly the n-th Fibonacci number and the head value
//! [0; a_{n-1}, ..., a_1] equals q_{n-1}/q_n.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alpha::AlphaSpec;
use crate::error::{Error, Result};
use crate::interval::{pow2_neg, RatInterval};

/// Convergent numerators and denominators for a coefficient prefix.
///
/// A table built from k coefficients stores indices 0..=k (k+1 entries), so
/// q_k is the deepest denominator and the k-th coefficient is recorded but
/// feeds no further entry. Callers that need q_{n+1} pass n+1 coefficients.
#[derive(Debug, Clone)]
pub struct ConvergentTable {
    coeffs: Vec<u64>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl ConvergentTable {
    /// Builds the table for an explicit coefficient list a_1..a_k.
    pub fn from_coeffs(coeffs: &[u64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "need at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|&a| a == 0) {
            return Err(Error::InvalidArgument(
                "coefficients must be positive".into(),
            ));
        }
        let mut p = vec![BigInt::one(), BigInt::zero()];
        let mut q = vec![BigInt::zero(), BigInt::one()];
        for i in 1..coeffs.len() {
            let a = BigInt::from(coeffs[i - 1]);
            p.push(&a * &p[i] + &p[i - 1]);
            q.push(&a * &q[i] + &q[i - 1]);
        }
        Ok(ConvergentTable {
            coeffs: coeffs.to_vec(),
            p,
            q,
        })
    }

    /// Builds the table for the first `count` coefficients of `spec`.
    pub fn for_spec(spec: &AlphaSpec, count: usize) -> Result<Self> {
        ConvergentTable::from_coeffs(&spec.coefficients(count))
    }

    /// Largest stored index (the table holds 0..=max_index()).
    pub fn max_index(&self) -> usize {
        self.q.len() - 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn p(&self, n: usize) -> &BigInt {
        &self.p[n]
    }

    pub fn q(&self, n: usize) -> &BigInt {
        &self.q[n]
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_index() {
            Err(Error::IndexOutOfRange {
                index: n,
                max: self.max_index(),
            })
        } else {
            Ok(())
        }
    }

    pub fn q_u64(&self, n: usize) -> Result<u64> {
        self.check(n)?;
        self.q[n].to_u64().ok_or_else(|| {
            Error::InvalidArgument(format!("q_{n} does not fit in 64 bits"))
        })
    }

    /// The n-th convergent p_n/q_n as an exact rational (n >= 1).
    pub fn convergent(&self, n: usize) -> Result<BigRational> {
        self.check(n)?;
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        Ok(BigRational::new(self.p[n].clone(), self.q[n].clone()))
    }

    /// Head value [0; a_{n-1}, ..., a_1] = q_{n-1}/q_n in lowest terms.
    pub fn alpha_minus(&self, n: usize) -> Result<BigRational> {
        if n < 1 {
            return Err(Error::InvalidArgument("alpha_minus needs n >= 1".into()));
        }
        self.check(n)?;
        Ok(BigRational::new(self.q[n - 1].clone(), self.q[n].clone()))
    }
}

/// Largest n with q_n <= bound, together with a table that covers a few
/// indices beyond it.
pub fn max_index_with_q_at_most(spec: &AlphaSpec, bound: u64) -> (usize, ConvergentTable) {
    let bound = BigInt::from(bound);
    let mut count = 16usize;
    loop {
        let table = ConvergentTable::for_spec(spec, count).expect("valid spec");
        if table.q(table.max_index()) > &bound {
            let mut n = table.max_index();
            while table.q(n) > &bound {
                n -= 1;
            }
            // Re-build with a couple of spare indices for Λ_n / tail work.
            let table = ConvergentTable::for_spec(spec, n + 4).expect("valid spec");
            return (n, table);
        }
        count *= 2;
    }
}

/// Exact enclosure of α between two consecutive convergents, with width
/// below 2^-bits.
pub fn alpha_enclosure(spec: &AlphaSpec, bits: u32) -> RatInterval {
    let target: BigInt = BigInt::one() << bits;
    let mut count = 8usize;
    loop {
        let table = ConvergentTable::for_spec(spec, count).expect("valid spec");
        for m in 1..table.max_index() {
            if table.q(m) * table.q(m + 1) > target {
                let a = table.convergent(m).unwrap();
                let b = table.convergent(m + 1).unwrap();
                return if a <= b {
                    RatInterval::new(a, b)
                } else {
                    RatInterval::new(b, a)
                };
            }
        }
        count *= 2;
    }
}

/// Certified fixed-point approximation of α ∈ (0,1).
///
/// `value`/2^frac_bits approximates α with |error| <= error_bound; the bound
/// is exact (approximation term 1/(q_m·q_{m+1}) plus one rounding ulp).
#[derive(Debug, Clone)]
pub struct HighPrecisionAlpha {
    value: BigUint,
    frac_bits: u32,
    error_bound: BigRational,
    source_convergent_index: usize,
    enclosure: RatInterval,
}

impl HighPrecisionAlpha {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn error_bound(&self) -> &BigRational {
        &self.error_bound
    }

    pub fn source_convergent_index(&self) -> usize {
        self.source_convergent_index
    }

    pub fn enclosure(&self) -> &RatInterval {
        &self.enclosure
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.to_f64()
    }
}

/// Fixed-point approximation with target error 2^-error_bits.
///
/// Selects the minimal m with q_m·q_{m+1} > 2^error_bits and rounds p_m/q_m to
/// F = max(128, error_bits + 16) fractional bits, so the grid is strictly
/// finer than the certified error.
pub fn approx_alpha(spec: &AlphaSpec, error_bits: u32) -> Result<HighPrecisionAlpha> {
    if error_bits < 64 {
        return Err(Error::InvalidArgument(
            "approx_alpha needs error_bits >= 64".into(),
        ));
    }
    let frac_bits = 128u32.max(error_bits + 16);
    let target: BigInt = BigInt::one() << error_bits;
    let mut count = 8usize;
    loop {
        let table = ConvergentTable::for_spec(spec, count).expect("valid spec");
        for m in 1..table.max_index() {
            if table.q(m) * table.q(m + 1) > target {
                let p = table.p(m).to_biguint().expect("p_m >= 0");
                let q = table.q(m).to_biguint().expect("q_m > 0");
                let value = (p << frac_bits) / &q;
                let a = table.convergent(m).unwrap();
                let b = table.convergent(m + 1).unwrap();
                let enclosure = if a <= b {
                    RatInterval::new(a, b)
                } else {
                    RatInterval::new(b, a)
                };
                let error_bound = BigRational::new(
                    BigInt::one(),
                    table.q(m) * table.q(m + 1),
                ) + pow2_neg(frac_bits);
                return Ok(HighPrecisionAlpha {
                    value,
                    frac_bits,
                    error_bound,
                    source_convergent_index: m,
                    enclosure,
                });
            }
        }
        count *= 2;
    }
}

/// Tail value [a_n; a_{n+1}, a_{n+2}, ...] enclosed to width < 2^-bits.
pub fn alpha_plus(spec: &AlphaSpec, n: usize, bits: u32) -> RatInterval {
    assert!(n >= 1, "tail values are defined for n >= 1");
    let limit = pow2_neg(bits);
    // Convergents of the tail expansion alternate around its value.
    let mut h_prev = BigInt::one();
    let mut h = BigInt::from(spec.coefficient(n as u64));
    let mut k_prev = BigInt::zero();
    let mut k = BigInt::one();
    let mut depth = 1u64;
    loop {
        let a = BigInt::from(spec.coefficient(n as u64 + depth));
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        depth += 1;
        let x = BigRational::new(h_prev.clone(), k_prev.clone());
        let y = BigRational::new(h.clone(), k.clone());
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        if &hi - &lo < limit {
            return RatInterval::new(lo, hi);
        }
    }
}

/// One index worth of tail/head data: exact head q_{n-1}/q_n, enclosed tail,
/// the signed error Λ_n = q_n·α - p_n, and c_n = 1/(tail + head).
#[derive(Debug, Clone)]
pub struct TailHeadPair {
    pub n: usize,
    pub q_n: BigInt,
    pub q_prev: BigInt,
    pub alpha_minus: BigRational,
    pub alpha_plus: RatInterval,
    pub lambda: RatInterval,
    pub c: RatInterval,
}

impl TailHeadPair {
    /// |Λ_n| as an interval.
    pub fn lambda_abs(&self) -> RatInterval {
        self.lambda.abs()
    }

    /// c_n computed the second way, as q_n·|Λ_n|.
    pub fn c_from_lambda(&self) -> RatInterval {
        self.lambda.abs().scale_int(&self.q_n)
    }
}

/// Builds the tail/head pair at index n with every interval certified to
/// width < 2^-bits.
pub fn tail_head_pair(
    spec: &AlphaSpec,
    table: &ConvergentTable,
    n: usize,
    bits: u32,
) -> Result<TailHeadPair> {
    if n < 1 {
        return Err(Error::InvalidArgument("tail_head_pair needs n >= 1".into()));
    }
    if n + 1 > table.max_index() {
        return Err(Error::IndexOutOfRange {
            index: n + 1,
            max: table.max_index(),
        });
    }
    let alpha_minus = table.alpha_minus(n)?;
    let alpha_plus = alpha_plus(spec, n, bits + 2);
    // Λ_n needs the α enclosure scaled by q_n, so ask for extra bits.
    let extra = table.q(n).bits() as u32 + 2;
    let alpha = alpha_enclosure(spec, bits + extra);
    let lambda = alpha
        .scale_int(table.q(n))
        .sub_rat(&BigRational::from(table.p(n).clone()));
    let c = alpha_plus.add_rat(&alpha_minus).recip();
    Ok(TailHeadPair {
        n,
        q_n: table.q(n).clone(),
        q_prev: table.q(n - 1).clone(),
        alpha_minus,
        alpha_plus,
        lambda,
        c,
    })
}

/// Canonical continued fraction of a rational in [0,1): the Euclidean
/// expansion, normalized so a length > 1 expansion never ends in 1.
pub fn canonical_cf_of_rational(x: &BigRational) -> Vec<u64> {
    // x = 1 is allowed: the head value q_{n-1}/q_n equals 1 at n = 2 when
    // a_1 = 1, and expands to [0; 1].
    assert!(!x.is_negative() && x <= &BigRational::one());
    if x.is_zero() {
        return vec![];
    }
    let mut num = x.denom().clone();
    let mut den = x.numer().clone();
    // Expand 1/x = [a_1; a_2, ...] by repeated division.
    let mut out = Vec::new();
    while !den.is_zero() {
        let (quot, rem) = num.div_rem(&den);
        out.push(quot.to_u64().expect("coefficient fits u64"));
        num = den;
        den = rem;
    }
    if out.len() > 1 && out.last() == Some(&1) {
        out.pop();
        *out.last_mut().unwrap() += 1;
    }
    out
}

/// Normalizes a finite coefficient list the same way as
/// [`canonical_cf_of_rational`].
pub fn canonicalize_cf(coeffs: &[u64]) -> Vec<u64> {
    let mut out = coeffs.to_vec();
    if out.len() > 1 && out.last() == Some(&1) {
        out.pop();
        *out.last_mut().unwrap() += 1;
    }
    out
}
