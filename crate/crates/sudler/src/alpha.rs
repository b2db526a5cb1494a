//! Generator descriptions of continued fraction coefficients.
//!
//! An irrational in (0,1) is always described by a rule for its continued
//! fraction coefficients, never by a decimal literal: every quantity computed
//! here is driven by the coefficients, and a decimal cannot certify them.
//! The length of a coefficient list is unbounded; `coefficient(i)` is a pure
//! function of the index, so any prefix is stable under extension.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Rule generating the continued fraction coefficients a_1, a_2, ... of an
/// irrational α = [0; a_1, a_2, ...].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlphaSpec {
    /// Eventually periodic coefficients: a quadratic irrational.
    Periodic { preperiod: Vec<u64>, period: Vec<u64> },
    /// Fractional part of Euler's number: coefficients 1, 2, 1, 1, 4, 1, 1, 6, 1, ...
    Euler,
    /// All ones except twos at positions n_1 = start, n_i = n_{i-1} + i + 1.
    TwosRule { start: u64 },
    /// The Thue–Morse word over the alphabet {a, b}: the n-th coefficient is
    /// `a` when the binary digit sum of n-1 is even, `b` otherwise.
    ThueMorse { a: u64, b: u64 },
    /// Explicit leading coefficients followed by a constant tail.
    Explicit { digits: Vec<u64>, fill: u64 },
}

impl AlphaSpec {
    /// Golden ratio fractional part, [0; 1, 1, 1, ...].
    pub fn golden() -> Self {
        AlphaSpec::Periodic {
            preperiod: vec![],
            period: vec![1],
        }
    }

    pub fn euler() -> Self {
        AlphaSpec::Euler
    }

    /// Checks that every generated coefficient will be a positive integer.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Parse(what.to_string()));
        match self {
            AlphaSpec::Periodic { preperiod, period } => {
                if period.is_empty() {
                    return bad("quad spec needs a nonempty period");
                }
                if preperiod.iter().chain(period).any(|&a| a == 0) {
                    return bad("continued fraction coefficients must be >= 1");
                }
            }
            AlphaSpec::Euler => {}
            AlphaSpec::TwosRule { start } => {
                if *start == 0 {
                    return bad("twos spec needs start index >= 1");
                }
            }
            AlphaSpec::ThueMorse { a, b } => {
                if *a == 0 || *b == 0 {
                    return bad("tm spec needs positive alphabet letters");
                }
            }
            AlphaSpec::Explicit { digits, fill } => {
                if digits.is_empty() {
                    return bad("explicit spec needs at least one digit");
                }
                if digits.iter().any(|&a| a == 0) || *fill == 0 {
                    return bad("continued fraction coefficients must be >= 1");
                }
            }
        }
        Ok(())
    }

    /// The i-th coefficient a_i, indexed from 1.
    pub fn coefficient(&self, i: u64) -> u64 {
        assert!(i >= 1, "coefficients are indexed from 1");
        match self {
            AlphaSpec::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if i <= pre {
                    preperiod[(i - 1) as usize]
                } else {
                    period[((i - pre - 1) % period.len() as u64) as usize]
                }
            }
            AlphaSpec::Euler => {
                // a_{3k+2} = 2(k+1); all other coefficients are 1.
                if i % 3 == 2 {
                    2 * (i / 3 + 1)
                } else {
                    1
                }
            }
            AlphaSpec::TwosRule { start } => {
                if two_position_rank(*start, i).is_some() {
                    2
                } else {
                    1
                }
            }
            AlphaSpec::ThueMorse { a, b } => {
                if (i - 1).count_ones() % 2 == 0 {
                    *a
                } else {
                    *b
                }
            }
            AlphaSpec::Explicit { digits, fill } => {
                if i <= digits.len() as u64 {
                    digits[(i - 1) as usize]
                } else {
                    *fill
                }
            }
        }
    }

    /// The coefficients a_1 ..= a_count. Any shorter call returns a prefix of
    /// any longer one.
    pub fn coefficients(&self, count: usize) -> Vec<u64> {
        (1..=count as u64).map(|i| self.coefficient(i)).collect()
    }

    /// Whether the coefficient sequence is bounded.
    pub fn bounded_coefficients(&self) -> bool {
        !matches!(self, AlphaSpec::Euler)
    }

    /// The positions of the twos for a `TwosRule` spec, while <= `max_index`.
    pub fn two_positions(start: u64, max_index: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut pos = start;
        let mut i = 1u64;
        while pos <= max_index {
            out.push(pos);
            i += 1;
            pos += i + 1;
        }
        out
    }
}

/// If `n` is one of the positions start, start + 3, start + 3 + 4, ...
/// returns its 1-based rank in that sequence.
fn two_position_rank(start: u64, n: u64) -> Option<u64> {
    if n < start {
        return None;
    }
    // Position of rank i is start + (i^2 + 3i)/2 - 2 for i >= 1; invert with
    // an integer square root so the test is exact for any index.
    let target = 2 * (n - start + 2);
    let i = (isqrt_u64(4 * target + 9).saturating_sub(3)) / 2;
    for cand in i.saturating_sub(1)..=i + 1 {
        if cand >= 1 && cand * cand + 3 * cand == target {
            return Some(cand);
        }
    }
    None
}

fn isqrt_u64(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |s| s > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= x) {
        r += 1;
    }
    r
}

impl fmt::Display for AlphaSpec {
    /// Canonical DSL form. `quad:|1` and `golden` denote the same spec and
    /// print as `golden`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            AlphaSpec::Periodic { preperiod, period } => {
                if preperiod.is_empty() && period == &[1] {
                    write!(f, "golden")
                } else {
                    write!(f, "quad:{}|{}", join(preperiod), join(period))
                }
            }
            AlphaSpec::Euler => write!(f, "e"),
            AlphaSpec::TwosRule { start } => write!(f, "twos:{start}"),
            AlphaSpec::ThueMorse { a, b } => write!(f, "tm:{a},{b}"),
            AlphaSpec::Explicit { digits, fill } => {
                write!(f, "explicit:{};fill={}", join(digits), fill)
            }
        }
    }
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer {part:?} in {what}")))
        })
        .collect()
}

impl FromStr for AlphaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if s == "golden" {
            AlphaSpec::golden()
        } else if s == "e" {
            AlphaSpec::Euler
        } else if let Some(rest) = s.strip_prefix("quad:") {
            let (pre, per) = rest
                .split_once('|')
                .ok_or_else(|| Error::Parse("quad spec needs '<pre>|<period>'".into()))?;
            AlphaSpec::Periodic {
                preperiod: parse_u64_list(pre, "quad preperiod")?,
                period: parse_u64_list(per, "quad period")?,
            }
        } else if let Some(rest) = s.strip_prefix("twos:") {
            AlphaSpec::TwosRule {
                start: rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad twos start {rest:?}")))?,
            }
        } else if let Some(rest) = s.strip_prefix("tm:") {
            let parts = parse_u64_list(rest, "tm alphabet")?;
            if parts.len() != 2 {
                return Err(Error::Parse("tm spec needs exactly two letters".into()));
            }
            AlphaSpec::ThueMorse {
                a: parts[0],
                b: parts[1],
            }
        } else if let Some(rest) = s.strip_prefix("explicit:") {
            let (digits, fill) = rest
                .split_once(";fill=")
                .ok_or_else(|| Error::Parse("explicit spec needs ';fill=<k>'".into()))?;
            AlphaSpec::Explicit {
                digits: parse_u64_list(digits, "explicit digits")?,
                fill: fill
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad fill value {fill:?}")))?,
            }
        } else {
            return Err(Error::Parse(format!("unknown alpha spec {s:?}")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_is_all_ones() {
        assert_eq!(AlphaSpec::golden().coefficients(6), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn euler_prefix() {
        assert_eq!(
            AlphaSpec::Euler.coefficients(9),
            vec![1, 2, 1, 1, 4, 1, 1, 6, 1]
        );
    }

    #[test]
    fn twos_rule_prefix() {
        let spec = AlphaSpec::TwosRule { start: 2 };
        assert_eq!(spec.coefficients(10), vec![1, 2, 1, 1, 2, 1, 1, 1, 2, 1]);
        assert_eq!(AlphaSpec::two_positions(2, 30), vec![2, 5, 9, 14, 20, 27]);
        assert_eq!(AlphaSpec::two_positions(1, 20), vec![1, 4, 8, 13, 19]);
    }

    #[test]
    fn thue_morse_prefix() {
        // The word over {1,2} starts 1,2,2,1,2,1,1,2,2,1,1,2,1,2,2,1.
        let spec = AlphaSpec::ThueMorse { a: 1, b: 2 };
        assert_eq!(
            spec.coefficients(16),
            vec![1, 2, 2, 1, 2, 1, 1, 2, 2, 1, 1, 2, 1, 2, 2, 1]
        );
    }

    #[test]
    fn explicit_tail_fill() {
        let spec = AlphaSpec::Explicit {
            digits: vec![3, 1],
            fill: 7,
        };
        assert_eq!(spec.coefficients(5), vec![3, 1, 7, 7, 7]);
    }

    #[test]
    fn prefix_stability() {
        let specs = [
            AlphaSpec::golden(),
            AlphaSpec::Euler,
            AlphaSpec::TwosRule { start: 3 },
            AlphaSpec::ThueMorse { a: 2, b: 5 },
            AlphaSpec::Explicit {
                digits: vec![1, 2, 3],
                fill: 2,
            },
        ];
        for spec in specs {
            let long = spec.coefficients(120);
            for k in [1usize, 7, 40, 119] {
                assert_eq!(spec.coefficients(k), long[..k]);
            }
        }
    }

    #[test]
    fn dsl_round_trip() {
        for s in [
            "golden",
            "e",
            "quad:|1,1,2",
            "quad:2,1|3",
            "twos:2",
            "tm:1,2",
            "explicit:1,2,3;fill=1",
        ] {
            let spec: AlphaSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            let again: AlphaSpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
        }
        // Non-canonical input normalizes.
        assert_eq!("quad:|1".parse::<AlphaSpec>().unwrap().to_string(), "golden");
    }

    #[test]
    fn dsl_rejects_garbage() {
        for s in ["", "gold", "quad:1,1,2", "quad:|", "twos:0", "tm:1", "explicit:;fill=2"] {
            assert!(s.parse::<AlphaSpec>().is_err(), "{s:?} should not parse");
        }
    }
}
