//! Exact rational enclosures.
//!
//! All certified quantities are carried as closed intervals with `BigRational`
//! endpoints, so every arithmetic step keeps a rigorous bound instead of a
//! rounding model.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Closed interval [lo, hi] with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(value: BigRational) -> Self {
        RatInterval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &RatInterval) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rat(&self, x: &BigRational) -> Self {
        RatInterval {
            lo: &self.lo + x,
            hi: &self.hi + x,
        }
    }

    pub fn sub_rat(&self, x: &BigRational) -> Self {
        RatInterval {
            lo: &self.lo - x,
            hi: &self.hi - x,
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Multiplication by an exact integer (either sign).
    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from(k.clone());
        let a = &self.lo * &k;
        let b = &self.hi * &k;
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Interval of absolute values.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if -&self.lo > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            RatInterval {
                lo: BigRational::zero(),
                hi,
            }
        }
    }

    /// The sign when it is certain: +1 if lo > 0, -1 if hi < 0, else None.
    pub fn certain_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().expect("rational out of f64 range")
    }
}

/// Convenience: 2^-bits as an exact rational.
pub fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}
