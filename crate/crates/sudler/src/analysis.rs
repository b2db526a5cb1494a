//! Experiment drivers: convergence probes along index subsequences, the
//! three-way split of the Euler subsequences, the limit form of the C factor,
//! and figure data.
//!
//! Nothing here proves a limit. A probe reports trends at desk scale
//! (q_n <= 10^7) under documented, deterministic thresholds.

use std::fmt;
use std::str::FromStr;

use crate::alpha::AlphaSpec;
use crate::cf::ConvergentTable;
use crate::error::{Error, Result};
use crate::product::{decompose, log_p_direct};

/// Largest q_n any experiment evaluates; chosen so every driver finishes in
/// seconds to minutes on one workstation.
pub const DESK_BOUND_Q: u64 = 10_000_000;

/// How far the index subsequence n_i is generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsequenceSelector {
    /// n ≡ residue (mod modulus), ascending.
    ResidueClass { modulus: u64, residue: u64 },
    /// A fixed list of indices.
    ExplicitIndices(Vec<u64>),
    /// n_1 = start, n_i = n_{i-1} + i + 1 (the positions of the twos in a
    /// `twos:<start>` spec).
    TwosPositions { start: u64 },
    /// n_i = 2^{2i} = 4, 16, 64, ...
    PowersOfFour,
}

impl SubsequenceSelector {
    /// The first `count` indices of the subsequence (all >= 1, strictly
    /// increasing).
    pub fn indices(&self, count: usize) -> Vec<u64> {
        match self {
            SubsequenceSelector::ResidueClass { modulus, residue } => {
                let first = if *residue == 0 { *modulus } else { *residue };
                (0..count as u64).map(|k| first + k * modulus).collect()
            }
            SubsequenceSelector::ExplicitIndices(list) => {
                list.iter().take(count).copied().collect()
            }
            SubsequenceSelector::TwosPositions { start } => {
                let mut out = Vec::with_capacity(count);
                let mut pos = *start;
                for i in 1..=count as u64 {
                    if i > 1 {
                        pos += i + 1;
                    }
                    out.push(pos);
                }
                out
            }
            SubsequenceSelector::PowersOfFour => {
                (1..=count as u32).map(|i| 1u64 << (2 * i)).collect()
            }
        }
    }
}

impl fmt::Display for SubsequenceSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsequenceSelector::ResidueClass { modulus, residue } => {
                write!(f, "mod:{modulus},{residue}")
            }
            SubsequenceSelector::ExplicitIndices(list) => {
                let s: Vec<String> = list.iter().map(|n| n.to_string()).collect();
                write!(f, "indices:{}", s.join(","))
            }
            SubsequenceSelector::TwosPositions { start } => write!(f, "twos:{start}"),
            SubsequenceSelector::PowersOfFour => write!(f, "pow4"),
        }
    }
}

impl FromStr for SubsequenceSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("mod:") {
            let (m, k) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse("mod selector needs 'mod:<l>,<k>'".into()))?;
            let modulus: u64 = m
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus {m:?}")))?;
            let residue: u64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {k:?}")))?;
            if modulus == 0 || residue >= modulus {
                return Err(Error::Parse("need modulus >= 1 and residue < modulus".into()));
            }
            Ok(SubsequenceSelector::ResidueClass { modulus, residue })
        } else if s == "twos" {
            Ok(SubsequenceSelector::TwosPositions { start: 2 })
        } else if let Some(rest) = s.strip_prefix("twos:") {
            let start: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad twos start {rest:?}")))?;
            if start == 0 {
                return Err(Error::Parse("twos start must be >= 1".into()));
            }
            Ok(SubsequenceSelector::TwosPositions { start })
        } else if let Some(rest) = s.strip_prefix("indices:") {
            let list: Result<Vec<u64>> = rest
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad index {p:?}")))
                })
                .collect();
            let list = list?;
            if list.is_empty() || list.windows(2).any(|w| w[0] >= w[1]) || list[0] == 0 {
                return Err(Error::Parse(
                    "indices must be >= 1 and strictly increasing".into(),
                ));
            }
            Ok(SubsequenceSelector::ExplicitIndices(list))
        } else if s == "pow4" {
            Ok(SubsequenceSelector::PowersOfFour)
        } else {
            Err(Error::Parse(format!("unknown selector {s:?}")))
        }
    }
}

/// Trend classification of a probed subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    DivergingToZero,
    DivergingToInfinity,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Converging => "converging",
            Verdict::DivergingToZero => "diverging-to-zero",
            Verdict::DivergingToInfinity => "diverging-to-infinity",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Deterministic verdict rules over the value sequence.
///
/// diverging-to-zero — strictly decreasing over the last four points and the
/// final value below half the first; diverging-to-infinity — mirror image;
/// converging — the last three successive |differences| are strictly
/// decreasing and either all below 1e-2 or alternating in sign (the signature
/// of oscillatory approach to a plateau, which a monotone divergent sequence
/// can never show); anything else is inconclusive. The divergence rules are
/// checked first: they demand a halving/doubling of the value over the run,
/// which a plateau sequence does not exhibit at desk scale.
pub fn classify(values: &[f64]) -> Verdict {
    if values.len() >= 4 {
        let tail = &values[values.len() - 4..];
        let first = values[0];
        let last = *values.last().unwrap();
        if tail.windows(2).all(|w| w[1] < w[0]) && last < first / 2.0 {
            return Verdict::DivergingToZero;
        }
        if tail.windows(2).all(|w| w[1] > w[0]) && last > first * 2.0 {
            return Verdict::DivergingToInfinity;
        }
        let d: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let k = d.len();
        if k >= 3 {
            let last3 = &d[k - 3..];
            let shrinking =
                last3[0].abs() > last3[1].abs() && last3[1].abs() > last3[2].abs();
            let small = last3.iter().all(|&x| x.abs() < 1e-2);
            let alternating = last3[0] * last3[1] < 0.0 && last3[1] * last3[2] < 0.0;
            if shrinking && (small || alternating) {
                return Verdict::Converging;
            }
        }
    }
    Verdict::Inconclusive
}

/// Last probe step at which the coefficient at a fixed offset from n_i
/// changed; 0 means it never changed over the observed steps.
#[derive(Debug, Clone, Copy)]
pub struct OffsetStability {
    pub offset: u64,
    pub last_change_i: usize,
}

/// Offsets tracked on each side of n_i.
pub const STABILITY_OFFSETS: u64 = 6;

fn stability_table(
    spec: &AlphaSpec,
    indices: &[u64],
    side_plus: bool,
) -> Vec<OffsetStability> {
    let offsets: Vec<u64> = if side_plus {
        (0..=STABILITY_OFFSETS).collect()
    } else {
        (1..=STABILITY_OFFSETS).collect()
    };
    offsets
        .into_iter()
        .map(|j| {
            let mut last_change = 0usize;
            let mut prev: Option<u64> = None;
            for (step, &n) in indices.iter().enumerate() {
                let coeff_index = if side_plus {
                    Some(n + j)
                } else if n > j {
                    Some(n - j)
                } else {
                    None
                };
                if let Some(idx) = coeff_index {
                    let value = spec.coefficient(idx);
                    if let Some(p) = prev {
                        if p != value {
                            last_change = step + 1;
                        }
                    }
                    prev = Some(value);
                }
            }
            OffsetStability {
                offset: j,
                last_change_i: last_change,
            }
        })
        .collect()
}

/// Result of probing P_{q_{n_i}} along a subsequence.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub spec: AlphaSpec,
    pub selector: SubsequenceSelector,
    /// Indices actually evaluated (q_{n_i} within the desk bound, q >= 3).
    pub indices: Vec<u64>,
    pub q: Vec<u64>,
    pub p: Vec<f64>,
    /// |P_{i+1} - P_i|; one shorter than `p`.
    pub diffs: Vec<f64>,
    pub stab_plus: Vec<OffsetStability>,
    pub stab_minus: Vec<OffsetStability>,
    pub verdict: Verdict,
    /// Largest decomposition residual seen while evaluating.
    pub max_residual: f64,
    /// Set when the desk bound cut the subsequence short.
    pub truncated: bool,
}

impl ConvergenceReport {
    /// True when every tracked offset up to `max_offset` stopped changing at
    /// least `margin` steps before the end of the probe.
    pub fn stabilized_within(&self, max_offset: u64, margin: usize) -> bool {
        let steps = self.indices.len();
        self.stab_plus
            .iter()
            .chain(&self.stab_minus)
            .filter(|s| s.offset <= max_offset)
            .all(|s| s.last_change_i + margin <= steps)
    }
}

/// Evaluates P_{q_{n_i}} along the selector, classifies the trend, and
/// tracks coefficient stabilization on both sides of n_i.
pub fn convergence_probe(
    spec: &AlphaSpec,
    selector: &SubsequenceSelector,
    i_max: usize,
    bits: u32,
) -> Result<ConvergenceReport> {
    let raw = selector.indices(i_max);
    let mut indices = Vec::new();
    let mut truncated = false;
    // Build one table deep enough to read off q for every candidate index.
    let deepest = raw.iter().copied().max().unwrap_or(1) as usize;
    let table = ConvergentTable::for_spec(spec, deepest + 1)?;
    for &n in &raw {
        match table.q_u64(n as usize) {
            Ok(q) if q <= DESK_BOUND_Q => {
                if q >= 3 {
                    indices.push(n);
                }
            }
            _ => {
                truncated = true;
                break;
            }
        }
    }
    if indices.is_empty() {
        return Err(Error::InvalidArgument(
            "no evaluable indices (q_n >= 3 within the desk bound)".into(),
        ));
    }
    let mut q = Vec::with_capacity(indices.len());
    let mut p = Vec::with_capacity(indices.len());
    let mut max_residual = 0.0f64;
    for &n in &indices {
        let point = decompose(spec, n as usize, bits)?;
        q.push(point.q_n);
        p.push(point.p());
        max_residual = max_residual.max(point.residual);
    }
    let diffs: Vec<f64> = p.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let verdict = classify(&p);
    Ok(ConvergenceReport {
        spec: spec.clone(),
        selector: selector.clone(),
        stab_plus: stability_table(spec, &indices, true),
        stab_minus: stability_table(spec, &indices, false),
        indices,
        q,
        p,
        diffs,
        verdict,
        max_residual,
        truncated,
    })
}

/// The three residue classes of the Euler subsequence, probed as far as the
/// desk bound allows.
pub fn euler_trichotomy(i_max: usize, bits: u32) -> Result<[ConvergenceReport; 3]> {
    let spec = AlphaSpec::Euler;
    let mut out = Vec::with_capacity(3);
    for k in 0..3u64 {
        out.push(convergence_probe(
            &spec,
            &SubsequenceSelector::ResidueClass {
                modulus: 3,
                residue: k,
            },
            i_max,
            bits,
        )?);
    }
    Ok(out.try_into().expect("three reports"))
}

/// Truncated limit product of the C factor.
#[derive(Debug, Clone, Copy)]
pub struct LimitProduct {
    pub value: f64,
    /// Rigorous bound on Σ_{t>cutoff} 1/(u_∞(t)² - 1), controlling the
    /// omitted tail factors.
    pub tail_bound: f64,
}

/// ∏_{t=1}^{cutoff} (1 - 1/u_∞(t)²) with
/// u_∞(t) = 2(t(α_∞⁺ + α_∞⁻) - {t·α_∞⁻} + 1/2).
pub fn limit_c_product(
    alpha_plus_inf: f64,
    alpha_minus_inf: f64,
    cutoff: u64,
) -> Result<LimitProduct> {
    if !(alpha_plus_inf > 1.0) || !(0.0 < alpha_minus_inf && alpha_minus_inf < 1.0) {
        return Err(Error::InvalidArgument(
            "need tail limit > 1 and head limit in (0,1)".into(),
        ));
    }
    let s = alpha_plus_inf + alpha_minus_inf;
    let u = |t: u64| 2.0 * (t as f64 * s - (t as f64 * alpha_minus_inf).fract() + 0.5);
    let mut acc = crate::phase::Neumaier::new();
    for t in 1..=cutoff {
        let ut = u(t);
        acc.add((-1.0 / (ut * ut)).ln_1p());
    }
    // u(t) >= 2st - 1, so u² - 1 >= 4s²·t(t-1) for t >= 2 and the tail past
    // cutoff >= 1 telescopes to 1/(4s²·cutoff).
    let tail_bound = if cutoff == 0 {
        let u1 = u(1);
        1.0 / (u1 * u1 - 1.0) + 1.0 / (4.0 * s * s)
    } else {
        1.0 / (4.0 * s * s * cutoff as f64)
    };
    Ok(LimitProduct {
        value: acc.total().exp(),
        tail_bound,
    })
}

/// Diagnostic for the presence of a convergent-looking subsubsequence: the
/// smallest diameter over windows of `k` consecutive values after sorting.
/// Shrinking diameter as more indices arrive is a hint, not a proof.
pub fn min_cluster_diameter(values: &[f64], k: usize) -> Option<f64> {
    if k < 2 || values.len() < k {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted
        .windows(k)
        .map(|w| w[k - 1] - w[0])
        .min_by(|a, b| a.partial_cmp(b).unwrap())
}

/// Which reproduction figure to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [
        FigureId::Fig1a,
        FigureId::Fig1b,
        FigureId::Fig2a,
        FigureId::Fig2b,
    ];
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureId::Fig1a => "fig1a",
            FigureId::Fig1b => "fig1b",
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
        };
        write!(f, "{s}")
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fig1a" => Ok(FigureId::Fig1a),
            "fig1b" => Ok(FigureId::Fig1b),
            "fig2a" => Ok(FigureId::Fig2a),
            "fig2b" => Ok(FigureId::Fig2b),
            other => Err(Error::Parse(format!("unknown figure id {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FigureRow {
    pub series: String,
    pub n: u64,
    pub q_n: u64,
    pub p: f64,
}

#[derive(Debug, Clone)]
pub struct FigureData {
    pub id: FigureId,
    pub spec: AlphaSpec,
    pub rows: Vec<FigureRow>,
    pub truncated: bool,
}

/// P_{q_n} for one index, using the decomposition when it applies and the
/// direct product for the degenerate small denominators.
fn p_at_index(spec: &AlphaSpec, table: &ConvergentTable, n: usize, bits: u32) -> Result<f64> {
    let q_n = table.q_u64(n)?;
    if q_n >= 3 {
        Ok(decompose(spec, n, bits)?.p())
    } else {
        Ok(log_p_direct(spec, q_n, bits)?.exp())
    }
}

/// Data behind the four reproduction figures:
/// fig1a — P_{q_n} of Euler's number, n = 1..19;
/// fig1b — P_{q_n} of [0; 1,1,2 repeated], n = 1..19;
/// fig2a — P_{q_n} of twos:2, n = 1..30;
/// fig2b — P_{q_{n_i}} of twos:2 along the twos-position subsequences with
/// start 1, 2 and 3, overlaid.
pub fn figure_data(id: FigureId, bits: u32) -> Result<FigureData> {
    match id {
        FigureId::Fig1a => simple_range_figure(id, &AlphaSpec::Euler, 19, bits),
        FigureId::Fig1b => simple_range_figure(id, &"quad:|1,1,2".parse()?, 19, bits),
        FigureId::Fig2a => simple_range_figure(id, &AlphaSpec::TwosRule { start: 2 }, 30, bits),
        FigureId::Fig2b => {
            let spec = AlphaSpec::TwosRule { start: 2 };
            let mut rows = Vec::new();
            let mut truncated = false;
            for start in 1..=3u64 {
                let selector = SubsequenceSelector::TwosPositions { start };
                let report = convergence_probe(&spec, &selector, 12, bits)?;
                truncated |= report.truncated;
                for ((&n, &q_n), &p) in report
                    .indices
                    .iter()
                    .zip(&report.q)
                    .zip(&report.p)
                {
                    rows.push(FigureRow {
                        series: format!("start={start}"),
                        n,
                        q_n,
                        p,
                    });
                }
            }
            Ok(FigureData {
                id,
                spec,
                rows,
                truncated,
            })
        }
    }
}

fn simple_range_figure(
    id: FigureId,
    spec: &AlphaSpec,
    n_max: usize,
    bits: u32,
) -> Result<FigureData> {
    let table = ConvergentTable::for_spec(spec, n_max + 1)?;
    let label = spec.to_string();
    let mut rows = Vec::new();
    let mut truncated = false;
    for n in 1..=n_max {
        let q_n = match table.q_u64(n) {
            Ok(q) if q <= DESK_BOUND_Q => q,
            _ => {
                truncated = true;
                break;
            }
        };
        rows.push(FigureRow {
            series: label.clone(),
            n: n as u64,
            q_n,
            p: p_at_index(spec, &table, n, bits)?,
        });
    }
    Ok(FigureData {
        id,
        spec: spec.clone(),
        rows,
        truncated,
    })
}
