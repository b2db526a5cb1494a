//! CSV and SVG emission.
//!
//! CSV is the canonical artifact: a `#` comment line recording the spec
//! string, the precision, and the tool version, then a header row, then data.
//! Floats are printed with the shortest round-trip representation, so output
//! bytes are reproducible. The SVG writer is a minimal self-contained
//! scatter/line plot for quick looks; no external renderer is involved.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::analysis::{ConvergenceReport, FigureData};
use crate::product::{EstimateReport, SudlerPoint};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The leading comment line: `# spec=<dsl> precision_bits=<bits> version=<v>`.
pub fn comment_line(spec: &str, precision_bits: u32) -> String {
    format!("# spec={spec} precision_bits={precision_bits} version={TOOL_VERSION}")
}

pub fn write_csv<W: Write>(
    mut w: W,
    comment: &str,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    writeln!(w, "{comment}")?;
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Shortest round-trip rendering; exponent form below 1e-4 keeps residual
/// columns readable. Both branches are deterministic.
pub fn f(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Columns for one decomposition row.
pub const SUDLER_HEADER: [&str; 13] = [
    "spec", "n", "q_n", "log_P", "A_n", "log_B_n", "C_n", "residual", "c_n", "S_n", "core",
    "ratio", "Y_n",
];

pub fn sudler_row(spec: &str, point: &SudlerPoint, est: Option<&EstimateReport>) -> Vec<String> {
    let mut row = vec![
        spec.to_string(),
        point.n.to_string(),
        point.q_n.to_string(),
        f(point.log_p),
        f(point.a_factor),
        f(point.log_b_factor),
        f(point.c_factor),
        f(point.residual),
    ];
    match est {
        Some(e) => row.extend([f(e.c_n), f(e.s_n), f(e.core), f(e.ratio), f(e.y_n)]),
        None => row.extend(std::iter::repeat(String::new()).take(5)),
    }
    row
}

pub const PROBE_HEADER: [&str; 9] = [
    "i",
    "n_i",
    "q_ni",
    "P",
    "diff",
    "stabilized_offsets_plus",
    "stabilized_offsets_minus",
    "verdict",
    "truncated",
];

fn stab_cell(stabs: &[crate::analysis::OffsetStability]) -> String {
    stabs
        .iter()
        .map(|s| format!("{}:{}", s.offset, s.last_change_i))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn probe_rows(report: &ConvergenceReport) -> Vec<Vec<String>> {
    let plus = stab_cell(&report.stab_plus);
    let minus = stab_cell(&report.stab_minus);
    report
        .indices
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            vec![
                (i + 1).to_string(),
                n.to_string(),
                report.q[i].to_string(),
                f(report.p[i]),
                if i == 0 {
                    String::new()
                } else {
                    f(report.diffs[i - 1])
                },
                plus.clone(),
                minus.clone(),
                report.verdict.to_string(),
                report.truncated.to_string(),
            ]
        })
        .collect()
}

pub const FIGURE_HEADER: [&str; 4] = ["series", "n", "q_n", "P"];

pub fn figure_rows(data: &FigureData) -> Vec<Vec<String>> {
    data.rows
        .iter()
        .map(|r| {
            vec![
                r.series.clone(),
                r.n.to_string(),
                r.q_n.to_string(),
                f(r.p),
            ]
        })
        .collect()
}

/// One plotted series: a label and (x, y) points in data coordinates.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Renders series as connected scatter plots into a standalone SVG document.
pub fn scatter_svg(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (width, height) = (640.0, 420.0);
    let (ml, mr, mt, mb) = (62.0, 16.0, 34.0, 46.0);
    let pts: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let (mut x0, mut x1) = bounds(pts.iter().map(|p| p.0));
    let (mut y0, mut y1) = bounds(pts.iter().map(|p| p.1));
    if x0 == x1 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y0 == y1 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = (y1 - y0) * 0.06;
    y0 -= pad;
    y1 += pad;
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * (width - ml - mr);
    let sy = |y: f64| height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    );
    let _ = write!(
        svg,
        "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        width / 2.0,
        escape(title)
    );
    // Axes.
    let _ = write!(
        svg,
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n\
         <line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        height - mb,
        width - mr,
        height - mb,
        height - mb
    );
    // Tick labels at the corners plus midpoints.
    for frac in [0.0, 0.5, 1.0] {
        let xv = x0 + (x1 - x0) * frac;
        let yv = y0 + (y1 - y0) * frac;
        let _ = write!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.4}</text>\n\
             <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.4}</text>\n",
            sx(xv),
            height - mb + 16.0,
            xv,
            ml - 6.0,
            sy(yv) + 4.0,
            yv
        );
    }
    let _ = write!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n\
         <text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{}</text>\n",
        (ml + width - mr) / 2.0,
        height - 10.0,
        escape(x_label),
        (mt + height - mb) / 2.0,
        (mt + height - mb) / 2.0,
        escape(y_label)
    );
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        if s.points.len() > 1 {
            let path: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = write!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" \
                 stroke-opacity=\"0.6\"/>\n",
                path.join(" ")
            );
        }
        for &(x, y) in &s.points {
            let _ = write!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                sx(x),
                sy(y)
            );
        }
        let ly = mt + 14.0 * k as f64;
        let _ = write!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\
             <text x=\"{}\" y=\"{}\">{}</text>\n",
            width - mr - 110.0,
            ly,
            width - mr - 100.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &comment_line("golden", 160),
            &["a", "b"],
            vec![vec!["1".into(), "2".into()]],
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let comment = lines.next().unwrap();
        assert!(comment.starts_with("# spec=golden precision_bits=160 version="));
        assert_eq!(lines.next().unwrap(), "a,b");
        assert_eq!(lines.next().unwrap(), "1,2");
    }

    #[test]
    fn svg_is_self_contained() {
        let svg = scatter_svg(
            "t",
            "n",
            "P",
            &[Series {
                label: "demo".into(),
                points: vec![(1.0, 2.0), (2.0, 2.5), (3.0, 2.4)],
            }],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("polyline"));
        assert!(!svg.contains("http://") || svg.contains("xmlns"));
    }
}
