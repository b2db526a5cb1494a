//! 256-bit fixed-point phase arithmetic and compensated summation.
//!
//! A phase is a fraction in [0,1) stored as a 256-bit integer; addition wraps
//! mod 2^256, which is exactly reduction mod 1. Stepping the accumulator by a
//! fixed increment walks the orbit {rα} with no error growth beyond the
//! initial quantization of α.

use num_bigint::BigUint;

pub const FRAC_BITS: u32 = 256;

/// Fraction in [0,1) with 256 bits, little-endian 64-bit limbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac256([u64; 4]);

impl Frac256 {
    pub const ZERO: Frac256 = Frac256([0; 4]);

    /// Builds value/2^bits, left-aligned into the 256-bit word.
    /// Requires bits <= 256 and value < 2^bits.
    pub fn from_scaled(value: &BigUint, bits: u32) -> Frac256 {
        assert!(bits <= FRAC_BITS, "at most 256 fractional bits");
        let shifted = value << (FRAC_BITS - bits);
        let digits = shifted.to_u64_digits();
        assert!(digits.len() <= 4, "value must be below 2^bits");
        let mut limbs = [0u64; 4];
        limbs[..digits.len()].copy_from_slice(&digits);
        Frac256(limbs)
    }

    #[inline]
    pub fn wrapping_add(self, other: Frac256) -> Frac256 {
        let mut out = [0u64; 4];
        let mut carry = 0u64;
        for i in 0..4 {
            let (s1, c1) = self.0[i].overflowing_add(other.0[i]);
            let (s2, c2) = s1.overflowing_add(carry);
            out[i] = s2;
            carry = (c1 as u64) + (c2 as u64);
        }
        Frac256(out)
    }

    /// self * k mod 1 (the integer part wraps away, as it should for {k·α}).
    pub fn wrapping_mul_u64(self, k: u64) -> Frac256 {
        let mut out = [0u64; 4];
        let mut carry = 0u128;
        for i in 0..4 {
            let prod = self.0[i] as u128 * k as u128 + carry;
            out[i] = prod as u64;
            carry = prod >> 64;
        }
        Frac256(out)
    }

    fn wrapping_neg(self) -> Frac256 {
        let mut out = [0u64; 4];
        let mut carry = 1u64;
        for i in 0..4 {
            let (s, c) = (!self.0[i]).overflowing_add(carry);
            out[i] = s;
            carry = c as u64;
        }
        Frac256(out)
    }

    fn to_f64(self) -> f64 {
        // Horner over the limbs; relative error a few ulps.
        let mut x = 0.0f64;
        for limb in self.0.iter().rev() {
            x = x * 1.8446744073709552e19 + *limb as f64;
        }
        x * 2.0f64.powi(-(FRAC_BITS as i32))
    }

    /// Fractional value as f64 (rounded).
    pub fn value_f64(self) -> f64 {
        self.to_f64()
    }

    /// Distance to the nearest integer, in [0, 1/2].
    pub fn distance_to_int(self) -> f64 {
        if self.0[3] >> 63 == 0 {
            self.to_f64()
        } else {
            self.wrapping_neg().to_f64()
        }
    }
}

/// Neumaier-compensated accumulator: error stays O(ε·Σ|x|) independent of
/// the term count.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Neumaier::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn add_wraps_mod_one() {
        // 3/4 + 1/2 = 1/4 (mod 1)
        let three_q = Frac256::from_scaled(&BigUint::from(3u32), 2);
        let half = Frac256::from_scaled(&BigUint::from(1u32), 1);
        let sum = three_q.wrapping_add(half);
        assert!((sum.value_f64() - 0.25).abs() < 1e-30);
    }

    #[test]
    fn mul_matches_repeated_add() {
        let x = Frac256::from_scaled(&BigUint::from(0x9e3779b97f4a7c15u64), 64);
        let mut acc = Frac256::ZERO;
        for _ in 0..1000 {
            acc = acc.wrapping_add(x);
        }
        assert_eq!(acc, x.wrapping_mul_u64(1000));
    }

    #[test]
    fn distance_is_symmetric() {
        let x = Frac256::from_scaled(&BigUint::from(7u32), 3); // 7/8
        assert!((x.distance_to_int() - 0.125).abs() < 1e-30);
        let y = Frac256::from_scaled(&BigUint::from(1u32), 3); // 1/8
        assert!((y.distance_to_int() - 0.125).abs() < 1e-30);
    }

    #[test]
    fn neumaier_beats_naive() {
        let mut acc = Neumaier::new();
        let mut naive = 0.0f64;
        for _ in 0..1_000_000 {
            acc.add(0.1);
            naive += 0.1;
        }
        assert!((acc.total() - 100_000.0).abs() < 1e-9);
        assert!((naive - 100_000.0).abs() > (acc.total() - 100_000.0).abs());
    }
}
